//! Bipolar frameworks, derived indirect attacks, reduction to Dung
//! frameworks, and flow-respecting graph augmentation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dung::ArgumentFramework;
use crate::error::{Error, Result};
use crate::tripolar::{EdgeClass, TripolarGraph};

type Pair = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AttackKind {
    #[serde(rename = "supported")]
    Supported,
    #[serde(rename = "secondary")]
    Secondary,
    #[serde(rename = "extended")]
    Extended,
    #[serde(rename = "mediated")]
    Mediated,
    #[serde(rename = "super-mediated")]
    SuperMediated,
    #[serde(rename = "super-extended")]
    SuperExtended,
}

impl AttackKind {
    pub const ALL: [AttackKind; 6] = [
        AttackKind::Supported,
        AttackKind::Secondary,
        AttackKind::Extended,
        AttackKind::Mediated,
        AttackKind::SuperMediated,
        AttackKind::SuperExtended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AttackKind::Supported => "supported",
            AttackKind::Secondary => "secondary",
            AttackKind::Extended => "extended",
            AttackKind::Mediated => "mediated",
            AttackKind::SuperMediated => "super-mediated",
            AttackKind::SuperExtended => "super-extended",
        }
    }

    pub fn all() -> BTreeSet<AttackKind> {
        Self::ALL.into_iter().collect()
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AttackKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        AttackKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::domain(format!("unknown attack kind `{s}`")))
    }
}

/// Parses a comma-separated kind list; `all` selects every kind and an
/// empty string selects none.
pub fn parse_kinds(list: &str) -> Result<BTreeSet<AttackKind>> {
    let mut kinds = BTreeSet::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item.eq_ignore_ascii_case("all") {
            kinds.extend(AttackKind::ALL);
        } else {
            kinds.insert(item.parse()?);
        }
    }
    Ok(kinds)
}

/// Position of each statement in a dialogue: (step, utterance index).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowOrder {
    positions: BTreeMap<String, (u32, u32)>,
}

impl FlowOrder {
    /// Builds the order, rejecting repeated arguments and shared positions.
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, u32, u32)>) -> Result<Self> {
        let mut positions = BTreeMap::new();
        let mut used = BTreeMap::new();
        for (arg, step, index) in entries {
            let arg = arg.into();
            if step == 0 || index == 0 {
                return Err(Error::domain(format!(
                    "flow position of `{arg}` must be positive"
                )));
            }
            if let Some(other) = used.insert((step, index), arg.clone()) {
                return Err(Error::domain(format!(
                    "`{other}` and `{arg}` share flow position ({step},{index})"
                )));
            }
            if positions.insert(arg.clone(), (step, index)).is_some() {
                return Err(Error::DuplicateArgument(arg));
            }
        }
        Ok(Self { positions })
    }

    pub fn position(&self, arg: &str) -> Option<(u32, u32)> {
        self.positions.get(arg).copied()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Whether `a` comes strictly after `b`.
    pub fn is_later(&self, a: &str, b: &str) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(x), Some(y)) => x > y,
            _ => false,
        }
    }

    /// Arguments sorted by flow position.
    pub fn sorted(&self) -> Vec<&str> {
        let mut args: Vec<(&(u32, u32), &String)> =
            self.positions.iter().map(|(a, p)| (p, a)).collect();
        args.sort();
        args.into_iter().map(|(_, a)| a.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, (u32, u32))> {
        self.positions.iter().map(|(a, &p)| (a.as_str(), p))
    }

    /// Errors unless every argument has a position.
    pub fn require_covers<'a>(&self, args: impl IntoIterator<Item = &'a String>) -> Result<()> {
        for arg in args {
            if !self.positions.contains_key(arg) {
                return Err(Error::domain(format!(
                    "flow order has no position for `{arg}`"
                )));
            }
        }
        Ok(())
    }
}

/// Arguments with disjoint attack and support relations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipolarFramework {
    af: ArgumentFramework,
    supports: BTreeSet<Pair>,
}

impl BipolarFramework {
    pub fn new<A, S, T>(
        args: A,
        attacks: impl IntoIterator<Item = (T, T)>,
        supports: impl IntoIterator<Item = (T, T)>,
    ) -> Result<Self>
    where
        A: IntoIterator<Item = S>,
        S: Into<String>,
        T: AsRef<str>,
    {
        let af = ArgumentFramework::new(args, attacks)?;
        let mut baf = Self {
            af,
            supports: BTreeSet::new(),
        };
        for (from, to) in supports {
            baf.add_support(from.as_ref(), to.as_ref())?;
        }
        Ok(baf)
    }

    pub fn add_support(&mut self, from: &str, to: &str) -> Result<()> {
        let f = self.af.index_of(from)?;
        let t = self.af.index_of(to)?;
        if self.af.attack_indices().contains(&(f, t)) {
            return Err(Error::OverlappingRelation(from.to_string(), to.to_string()));
        }
        self.supports.insert((f, t));
        Ok(())
    }

    pub fn from_tripolar(t: &TripolarGraph) -> Result<Self> {
        if !t.is_clarified() {
            return Err(Error::domain(
                "a bipolar framework cannot carry dependency edges",
            ));
        }
        Self::new(
            t.arguments().iter().cloned(),
            t.attacks().iter().map(|(a, b)| (a.as_str(), b.as_str())),
            t.supports().iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    pub fn framework(&self) -> &ArgumentFramework {
        &self.af
    }

    pub fn arguments(&self) -> &[String] {
        self.af.arguments()
    }

    pub fn supports(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.supports
            .iter()
            .map(|&(f, t)| (self.af.name(f), self.af.name(t)))
    }

    /// A nonempty chain of supports leads from `a` to `b`.
    pub fn support_reachable(&self, a: &str, b: &str) -> Result<bool> {
        let (a, b) = (self.af.index_of(a)?, self.af.index_of(b)?);
        Ok(reach_matrix(self.af.len(), &self.supports)[a][b])
    }

    /// Derived attacks of the requested kinds, ordered by kind then by pair.
    ///
    /// When a plain kind and its super variant are both requested, a pair
    /// derived by both is reported only once, under the super variant.
    pub fn indirect_attacks(
        &self,
        kinds: &BTreeSet<AttackKind>,
    ) -> Vec<(AttackKind, (String, String))> {
        let derived = derive(
            self.af.len(),
            self.af.attack_indices(),
            &self.supports,
            kinds,
        );
        let mut out = Vec::new();
        for (&kind, pairs) in &derived {
            let shadow = match kind {
                AttackKind::Mediated => derived.get(&AttackKind::SuperMediated),
                AttackKind::Extended => derived.get(&AttackKind::SuperExtended),
                _ => None,
            };
            for &(f, t) in pairs {
                if shadow.is_some_and(|s| s.contains(&(f, t))) {
                    continue;
                }
                out.push((
                    kind,
                    (self.af.name(f).to_string(), self.af.name(t).to_string()),
                ));
            }
        }
        out
    }

    /// The Dung framework whose attacks are the direct attacks plus the
    /// derived attacks of the requested kinds.
    pub fn to_dung(&self, kinds: &BTreeSet<AttackKind>) -> ArgumentFramework {
        let mut af = self.af.clone();
        for pairs in derive(
            self.af.len(),
            self.af.attack_indices(),
            &self.supports,
            kinds,
        )
        .values()
        {
            for &(f, t) in pairs {
                af.add_attack_idx(f, t);
            }
        }
        af
    }
}

/// `reach[a][b]`: a nonempty chain of edges leads from `a` to `b`.
fn reach_matrix(n: usize, edges: &BTreeSet<Pair>) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for &(f, t) in edges {
        reach[f][t] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

fn supported(n: usize, reach: &[Vec<bool>], attacks: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let mut out = BTreeSet::new();
    for x in 0..n {
        for &(c, y) in attacks {
            if reach[x][c] {
                out.insert((x, y));
            }
        }
    }
    out
}

fn secondary(n: usize, reach: &[Vec<bool>], attacks: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let mut out = BTreeSet::new();
    for &(x, c) in attacks {
        for y in 0..n {
            if reach[c][y] {
                out.insert((x, y));
            }
        }
    }
    out
}

fn extended(n: usize, reach: &[Vec<bool>], base: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let mut out = BTreeSet::new();
    for &(c, y) in base {
        for x in 0..n {
            if reach[c][x] {
                out.insert((x, y));
            }
        }
    }
    out
}

fn mediated(n: usize, reach: &[Vec<bool>], base: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let mut out = BTreeSet::new();
    for &(x, c) in base {
        for y in 0..n {
            if reach[y][c] {
                out.insert((x, y));
            }
        }
    }
    out
}

fn derive(
    n: usize,
    attacks: &BTreeSet<Pair>,
    supports: &BTreeSet<Pair>,
    kinds: &BTreeSet<AttackKind>,
) -> BTreeMap<AttackKind, BTreeSet<Pair>> {
    let reach = reach_matrix(n, supports);
    let mut out = BTreeMap::new();
    for &kind in kinds {
        let pairs = match kind {
            AttackKind::Supported => supported(n, &reach, attacks),
            AttackKind::Secondary => secondary(n, &reach, attacks),
            AttackKind::Extended => extended(n, &reach, attacks),
            AttackKind::Mediated => mediated(n, &reach, attacks),
            AttackKind::SuperMediated => {
                let base: BTreeSet<Pair> = attacks
                    .union(&supported(n, &reach, attacks))
                    .copied()
                    .collect();
                mediated(n, &reach, &base)
            }
            AttackKind::SuperExtended => {
                let base: BTreeSet<Pair> = attacks
                    .union(&secondary(n, &reach, attacks))
                    .copied()
                    .collect();
                extended(n, &reach, &base)
            }
        };
        out.insert(kind, pairs);
    }
    out
}

/// Index-based view of a tripolar graph's attacks and supports.
struct Indexed {
    af: ArgumentFramework,
    supports: BTreeSet<Pair>,
}

impl Indexed {
    fn from_tripolar(t: &TripolarGraph) -> Self {
        let af = t.attack_framework();
        let supports = t
            .supports()
            .iter()
            .map(|(a, b)| (af.index_of(a).unwrap(), af.index_of(b).unwrap()))
            .collect();
        Self { af, supports }
    }

    fn to_tripolar(&self) -> TripolarGraph {
        let mut t = TripolarGraph::from_framework(&self.af);
        for &(f, s) in &self.supports {
            t.insert(
                (self.af.name(f).to_string(), self.af.name(s).to_string()),
                EdgeClass::Support,
            )
            .expect("augmentation keeps supports disjoint from attacks");
        }
        t
    }
}

fn flow_positions(af: &ArgumentFramework, flow: &FlowOrder) -> Result<Vec<(u32, u32)>> {
    flow.require_covers(af.arguments())?;
    Ok(af
        .arguments()
        .iter()
        .map(|a| flow.position(a).unwrap())
        .collect())
}

/// Pairs reachable by a nonzero even walk, with the source later in the flow.
fn defence_supports(af: &ArgumentFramework, pos: &[(u32, u32)]) -> BTreeSet<Pair> {
    let closure = af.parity_closure();
    let n = af.len();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && pos[x] > pos[y] && closure.even(x, y) {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Adds flow-respecting indirect attacks (odd walks) and indirect defences
/// (even walks) as attacks and supports respectively.
///
/// A pair reachable both ways becomes an attack.
pub fn augment_prudent(af: &ArgumentFramework, flow: &FlowOrder) -> Result<TripolarGraph> {
    let pos = flow_positions(af, flow)?;
    let closure = af.parity_closure();
    let n = af.len();
    let mut out = Indexed {
        af: af.clone(),
        supports: BTreeSet::new(),
    };
    for x in 0..n {
        for y in 0..n {
            if x == y || pos[x] <= pos[y] {
                continue;
            }
            if closure.odd(x, y) {
                out.af.add_attack_idx(x, y);
            } else if closure.even(x, y) {
                out.supports.insert((x, y));
            }
        }
    }
    Ok(out.to_tripolar())
}

/// Repeats, up to `passes` times: add defence-based supports over the current
/// attacks, then add derived attacks of the requested kinds over the current
/// supports. Only flow-respecting, non-self pairs are added, and a pair
/// already related by the other class is left alone. Stops early once a pass
/// adds nothing.
pub fn augment_bipolar(
    t: &TripolarGraph,
    kinds: &BTreeSet<AttackKind>,
    flow: &FlowOrder,
    passes: usize,
) -> Result<TripolarGraph> {
    if !t.is_clarified() {
        return Err(Error::domain(
            "augmentation requires a clarified graph (no dependencies)",
        ));
    }
    let mut g = Indexed::from_tripolar(t);
    let pos = flow_positions(&g.af, flow)?;
    let n = g.af.len();
    let admissible = |&(x, y): &Pair| x != y && pos[x] > pos[y];
    for _ in 0..passes {
        let mut changed = false;
        for pair in defence_supports(&g.af, &pos) {
            if !g.af.attack_indices().contains(&pair) && g.supports.insert(pair) {
                changed = true;
            }
        }
        let derived = derive(n, g.af.attack_indices(), &g.supports, kinds);
        let new_attacks: BTreeSet<Pair> = derived
            .values()
            .flatten()
            .filter(|p| admissible(p))
            .filter(|p| !g.supports.contains(p) && !g.af.attack_indices().contains(p))
            .copied()
            .collect();
        for (x, y) in new_attacks {
            g.af.add_attack_idx(x, y);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    Ok(g.to_tripolar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dung::Semantics;

    fn bipolar_five() -> BipolarFramework {
        BipolarFramework::new(
            ["A", "B", "C", "D", "E"],
            [("C", "B"), ("C", "D"), ("D", "C"), ("E", "E")],
            [("A", "B"), ("D", "E")],
        )
        .unwrap()
    }

    fn pairs(v: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        v.iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn attack_set(af: &ArgumentFramework) -> BTreeSet<(String, String)> {
        af.attacks()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn support_reachability() {
        let baf = bipolar_five();
        assert!(baf.support_reachable("D", "E").unwrap());
        assert!(baf.support_reachable("A", "B").unwrap());
        assert!(!baf.support_reachable("A", "E").unwrap());
        assert!(!baf.support_reachable("A", "A").unwrap());
    }

    #[test]
    fn derived_attacks_all_kinds() {
        let got = bipolar_five().indirect_attacks(&AttackKind::all());
        let expected: Vec<(AttackKind, (String, String))> = [
            (AttackKind::Supported, ("D", "E")),
            (AttackKind::Secondary, ("C", "E")),
            (AttackKind::SuperMediated, ("C", "A")),
            (AttackKind::SuperMediated, ("D", "D")),
            (AttackKind::SuperMediated, ("E", "D")),
            (AttackKind::SuperExtended, ("E", "C")),
        ]
        .into_iter()
        .map(|(k, (a, b))| (k, (a.to_string(), b.to_string())))
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn supported_attack_shape() {
        let baf = BipolarFramework::new(["A", "B", "C"], [("C", "B")], [("A", "C")]).unwrap();
        let got = baf.indirect_attacks(&[AttackKind::Supported].into());
        assert_eq!(
            got,
            vec![(AttackKind::Supported, ("A".to_string(), "B".to_string()))]
        );
        let none =
            BipolarFramework::new(["A", "B"], [("A", "B")], Vec::<(&str, &str)>::new()).unwrap();
        assert!(none.indirect_attacks(&AttackKind::all()).is_empty());
    }

    #[test]
    fn reductions() {
        let baf = bipolar_five();
        let base = [("C", "B"), ("C", "D"), ("D", "C"), ("E", "E")];
        let all = baf.to_dung(&AttackKind::all());
        let mut expected = base.to_vec();
        expected.extend([
            ("C", "A"),
            ("C", "E"),
            ("D", "D"),
            ("D", "E"),
            ("E", "C"),
            ("E", "D"),
        ]);
        assert_eq!(attack_set(&all), pairs(&expected));
        assert_eq!(all.extensions(Semantics::Grounded), vec![BTreeSet::new()]);
        assert_eq!(
            all.extensions(Semantics::Stable),
            vec![["C".to_string()].into()]
        );

        let partial = baf.to_dung(&[AttackKind::Secondary, AttackKind::SuperExtended].into());
        let mut expected = base.to_vec();
        expected.extend([("C", "E"), ("E", "C")]);
        assert_eq!(attack_set(&partial), pairs(&expected));
        let set = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(partial.extensions(Semantics::Grounded), vec![set(&["A"])]);
        assert_eq!(
            partial.extensions(Semantics::Stable),
            vec![set(&["A", "C"])]
        );
        assert_eq!(
            partial.extensions(Semantics::Preferred),
            vec![set(&["A", "B", "D"]), set(&["A", "C"])]
        );

        assert_eq!(baf.to_dung(&BTreeSet::new()), *baf.framework());
    }

    #[test]
    fn overlapping_support_rejected() {
        let err = BipolarFramework::new(["A", "B"], [("A", "B")], [("A", "B")]).unwrap_err();
        assert_eq!(err, Error::OverlappingRelation("A".into(), "B".into()));
    }

    fn chain_flow(args: &[&str]) -> FlowOrder {
        FlowOrder::new(args.iter().enumerate().map(|(i, a)| (*a, i as u32 + 1, 1))).unwrap()
    }

    #[test]
    fn prudent_chain() {
        let af = ArgumentFramework::new(["A", "B", "C", "D"], [("B", "A"), ("C", "B"), ("D", "C")])
            .unwrap();
        let t = augment_prudent(&af, &chain_flow(&["A", "B", "C", "D"])).unwrap();
        assert_eq!(
            *t.attacks(),
            pairs(&[("B", "A"), ("C", "B"), ("D", "C"), ("D", "A")])
        );
        assert_eq!(*t.supports(), pairs(&[("C", "A"), ("D", "B")]));
        assert!(t.is_clarified());
    }

    #[test]
    fn prudent_excludes_self_pairs() {
        let single = ArgumentFramework::new(["A", "B"], [("B", "A")]).unwrap();
        let t = augment_prudent(&single, &chain_flow(&["A", "B"])).unwrap();
        assert_eq!(*t.attacks(), pairs(&[("B", "A")]));
        assert!(t.supports().is_empty());

        let cycle = ArgumentFramework::new(["C", "D"], [("C", "D"), ("D", "C")]).unwrap();
        let t = augment_prudent(&cycle, &chain_flow(&["C", "D"])).unwrap();
        assert_eq!(*t.attacks(), pairs(&[("C", "D"), ("D", "C")]));
        assert!(t.supports().is_empty());
    }

    #[test]
    fn augment_requires_clarified_and_flow() {
        let t =
            TripolarGraph::new(["A", "B"], [], [], [("A".to_string(), "B".to_string())]).unwrap();
        assert!(augment_bipolar(&t, &AttackKind::all(), &chain_flow(&["A", "B"]), 1).is_err());
        let af = ArgumentFramework::new(["A", "B"], [("B", "A")]).unwrap();
        assert!(augment_prudent(&af, &chain_flow(&["A"])).is_err());
    }

    #[test]
    fn augment_identity_without_kinds_or_passes() {
        let af = ArgumentFramework::new(["A", "B", "C"], [("B", "A"), ("C", "B")]).unwrap();
        let t = TripolarGraph::from_framework(&af);
        let flow = chain_flow(&["A", "B", "C"]);
        assert_eq!(augment_bipolar(&t, &BTreeSet::new(), &flow, 0).unwrap(), t);
    }

    #[test]
    fn flow_order_validation() {
        assert!(FlowOrder::new([("A", 1, 1), ("B", 1, 1)]).is_err());
        assert!(FlowOrder::new([("A", 1, 1), ("A", 1, 2)]).is_err());
        assert!(FlowOrder::new([("A", 0, 1)]).is_err());
        let flow = FlowOrder::new([("B", 1, 2), ("A", 1, 1), ("C", 2, 1)]).unwrap();
        assert_eq!(flow.sorted(), vec!["A", "B", "C"]);
        assert!(flow.is_later("C", "B"));
        assert!(!flow.is_later("A", "A"));
    }

    #[test]
    fn kind_names() {
        for kind in AttackKind::ALL {
            assert_eq!(kind.name().parse::<AttackKind>().unwrap(), kind);
        }
        assert_eq!(parse_kinds("all").unwrap(), AttackKind::all());
        assert!(parse_kinds("").unwrap().is_empty());
        assert!(parse_kinds("supported,bogus").is_err());
    }
}
