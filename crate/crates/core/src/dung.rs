//! Dung argumentation frameworks: extension and labeling semantics, plus the
//! indirect attack/defence relations used by prudent and careful reasoning.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of arguments. Ordering is by name; use
/// [`ArgumentFramework::render_set`] to print in framework order.
pub type Extension = BTreeSet<String>;

/// The classical semantics shared by the extension and labeling views.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Semantics {
    #[serde(rename = "cf")]
    ConflictFree,
    #[serde(rename = "ad")]
    Admissible,
    #[serde(rename = "co")]
    Complete,
    #[serde(rename = "gr")]
    Grounded,
    #[serde(rename = "pr")]
    Preferred,
    #[serde(rename = "st")]
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::ConflictFree,
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Stable,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Semantics::ConflictFree => "cf",
            Semantics::Admissible => "ad",
            Semantics::Complete => "co",
            Semantics::Grounded => "gr",
            Semantics::Preferred => "pr",
            Semantics::Stable => "st",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.short_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown semantics `{s}` (expected cf, ad, co, gr, pr or st)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Undec,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "undec",
        })
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "in" | "i" => Ok(Label::In),
            "out" | "o" => Ok(Label::Out),
            "undec" | "u" => Ok(Label::Undec),
            _ => Err(Error::domain(format!("unknown label `{s}`"))),
        }
    }
}

/// A total assignment of labels to arguments.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Labeling(BTreeMap<String, Label>);

impl Labeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, arg: &str) -> Option<Label> {
        self.0.get(arg).copied()
    }

    pub fn insert(&mut self, arg: impl Into<String>, label: Label) {
        self.0.insert(arg.into(), label);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Label)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn with_label(&self, label: Label) -> Extension {
        self.0
            .iter()
            .filter(|(_, l)| **l == label)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn in_set(&self) -> Extension {
        self.with_label(Label::In)
    }

    pub fn out_set(&self) -> Extension {
        self.with_label(Label::Out)
    }

    pub fn undec_set(&self) -> Extension {
        self.with_label(Label::Undec)
    }
}

impl<S: Into<String>> FromIterator<(S, Label)> for Labeling {
    fn from_iter<T: IntoIterator<Item = (S, Label)>>(iter: T) -> Self {
        Labeling(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (arg, label) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{arg}:{label}")?;
        }
        Ok(())
    }
}

/// Result of [`ArgumentFramework::indirect_relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IndirectRelation {
    /// An odd-length attack walk exists.
    pub attacks: bool,
    /// An even-length attack walk of nonzero length exists.
    pub defends: bool,
}

/// Walk-parity reachability for every ordered pair of arguments.
#[derive(Debug, Clone)]
pub struct ParityClosure {
    n: usize,
    odd: Vec<bool>,
    even: Vec<bool>,
}

impl ParityClosure {
    pub fn odd(&self, from: usize, to: usize) -> bool {
        self.odd[from * self.n + to]
    }

    pub fn even(&self, from: usize, to: usize) -> bool {
        self.even[from * self.n + to]
    }
}

/// A finite set of arguments together with an attack relation.
///
/// Arguments keep their insertion order, which is also the canonical order
/// used for every enumeration this type produces.
#[derive(Debug, Clone, Default)]
pub struct ArgumentFramework {
    args: Vec<String>,
    index: HashMap<String, usize>,
    attacks: BTreeSet<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl PartialEq for ArgumentFramework {
    fn eq(&self, other: &Self) -> bool {
        self.args == other.args && self.attacks == other.attacks
    }
}

impl Eq for ArgumentFramework {}

impl ArgumentFramework {
    pub fn new<A, S, T>(args: A, attacks: impl IntoIterator<Item = (T, T)>) -> Result<Self>
    where
        A: IntoIterator<Item = S>,
        S: Into<String>,
        T: AsRef<str>,
    {
        let mut af = Self::default();
        for arg in args {
            af.add_argument(arg)?;
        }
        for (from, to) in attacks {
            af.add_attack(from.as_ref(), to.as_ref())?;
        }
        Ok(af)
    }

    pub fn add_argument(&mut self, arg: impl Into<String>) -> Result<usize> {
        let arg = arg.into();
        if self.index.contains_key(&arg) {
            return Err(Error::DuplicateArgument(arg));
        }
        let idx = self.args.len();
        self.index.insert(arg.clone(), idx);
        self.args.push(arg);
        self.attackers.push(Vec::new());
        self.targets.push(Vec::new());
        Ok(idx)
    }

    /// Adds an attack; repeated attacks are merged.
    pub fn add_attack(&mut self, from: &str, to: &str) -> Result<()> {
        let f = self.index_of(from)?;
        let t = self.index_of(to)?;
        self.add_attack_idx(f, t);
        Ok(())
    }

    pub(crate) fn add_attack_idx(&mut self, from: usize, to: usize) {
        if self.attacks.insert((from, to)) {
            self.attackers[to].push(from);
            self.attackers[to].sort_unstable();
            self.targets[from].push(to);
            self.targets[from].sort_unstable();
        }
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn arguments(&self) -> &[String] {
        &self.args
    }

    pub fn contains(&self, arg: &str) -> bool {
        self.index.contains_key(arg)
    }

    pub fn index_of(&self, arg: &str) -> Result<usize> {
        self.index
            .get(arg)
            .copied()
            .ok_or_else(|| Error::UnknownArgument(arg.to_string()))
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.args[idx]
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    /// Attacks as name pairs, ordered by the insertion index of their endpoints.
    pub fn attacks(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.attacks
            .iter()
            .map(|&(f, t)| (self.args[f].as_str(), self.args[t].as_str()))
    }

    pub fn attack_indices(&self) -> &BTreeSet<(usize, usize)> {
        &self.attacks
    }

    pub fn has_attack(&self, from: &str, to: &str) -> bool {
        match (self.index.get(from), self.index.get(to)) {
            (Some(&f), Some(&t)) => self.attacks.contains(&(f, t)),
            _ => false,
        }
    }

    pub fn attackers_of(&self, idx: usize) -> &[usize] {
        &self.attackers[idx]
    }

    pub fn targets_of(&self, idx: usize) -> &[usize] {
        &self.targets[idx]
    }

    pub fn is_initial(&self, idx: usize) -> bool {
        self.attackers[idx].is_empty()
    }

    /// Every `b` with `(b, a)` in the attack relation, in framework order.
    pub fn attackers(&self, arg: &str) -> Result<Vec<&str>> {
        let idx = self.index_of(arg)?;
        Ok(self.attackers[idx].iter().map(|&b| self.name(b)).collect())
    }

    /// Converts a set of names into a membership mask.
    pub fn mask<I>(&self, set: I) -> Result<Vec<bool>>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let mut mask = vec![false; self.len()];
        for arg in set {
            mask[self.index_of(arg.as_ref())?] = true;
        }
        Ok(mask)
    }

    pub fn set_from_mask(&self, mask: &[bool]) -> Extension {
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.args[i].clone())
            .collect()
    }

    /// Renders a set as `{A,B}` in framework order. Unknown names go last.
    pub fn render_set(&self, set: &Extension) -> String {
        let mut members: Vec<&String> = set.iter().collect();
        members.sort_by_key(|a| self.index.get(a.as_str()).copied().unwrap_or(usize::MAX));
        let names: Vec<&str> = members.iter().map(|s| s.as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Whether every attacker of `arg` is attacked by a member of `set`.
    pub fn defends<I>(&self, set: I, arg: &str) -> Result<bool>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let mask = self.mask(set)?;
        let a = self.index_of(arg)?;
        let out = self.attacked_by(&mask);
        Ok(self.attackers[a].iter().all(|&b| out[b]))
    }

    /// `S⁺`: every argument attacked by some member of the mask.
    pub(crate) fn attacked_by(&self, mask: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.len()];
        for &(f, t) in &self.attacks {
            if mask[f] {
                out[t] = true;
            }
        }
        out
    }

    fn is_conflict_free_mask(&self, mask: &[bool]) -> bool {
        self.attacks.iter().all(|&(f, t)| !(mask[f] && mask[t]))
    }

    fn is_admissible_mask(&self, mask: &[bool]) -> bool {
        if !self.is_conflict_free_mask(mask) {
            return false;
        }
        let out = self.attacked_by(mask);
        (0..self.len())
            .filter(|&a| mask[a])
            .all(|a| self.attackers[a].iter().all(|&b| out[b]))
    }

    fn is_complete_mask(&self, mask: &[bool]) -> bool {
        if !self.is_conflict_free_mask(mask) {
            return false;
        }
        let out = self.attacked_by(mask);
        // admissible and closed under defence: members are exactly the defended arguments
        (0..self.len()).all(|a| mask[a] == self.attackers[a].iter().all(|&b| out[b]))
    }

    fn is_stable_mask(&self, mask: &[bool]) -> bool {
        if !self.is_conflict_free_mask(mask) {
            return false;
        }
        let out = self.attacked_by(mask);
        (0..self.len()).all(|a| mask[a] || out[a])
    }

    /// Grounded extension as the least fixpoint of the characteristic function.
    pub fn grounded(&self) -> Extension {
        self.set_from_mask(&self.grounded_mask())
    }

    pub(crate) fn grounded_mask(&self) -> Vec<bool> {
        let n = self.len();
        let mut mask = vec![false; n];
        let mut out = vec![false; n];
        // number of attackers of each argument not yet known to be attacked by the set
        let mut undefeated: Vec<usize> = self.attackers.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&a| undefeated[a] == 0).collect();
        while let Some(a) = queue.pop_front() {
            if mask[a] {
                continue;
            }
            mask[a] = true;
            for &t in &self.targets[a] {
                if !out[t] {
                    out[t] = true;
                    for &u in &self.targets[t] {
                        undefeated[u] -= 1;
                        if undefeated[u] == 0 {
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        mask
    }

    /// All conflict-free sets, by include/exclude backtracking in framework order.
    fn conflict_free_masks(&self) -> Vec<Vec<bool>> {
        fn go(af: &ArgumentFramework, i: usize, mask: &mut Vec<bool>, acc: &mut Vec<Vec<bool>>) {
            if i == af.len() {
                acc.push(mask.clone());
                return;
            }
            let compatible = !af.attacks.contains(&(i, i))
                && af.attackers[i].iter().all(|&b| !mask[b])
                && af.targets[i].iter().all(|&t| !mask[t]);
            if compatible {
                mask[i] = true;
                go(af, i + 1, mask, acc);
                mask[i] = false;
            }
            go(af, i + 1, mask, acc);
        }
        let mut acc = Vec::new();
        go(self, 0, &mut vec![false; self.len()], &mut acc);
        acc
    }

    fn extension_masks(&self, sem: Semantics) -> Vec<Vec<bool>> {
        match sem {
            Semantics::Grounded => vec![self.grounded_mask()],
            Semantics::ConflictFree => self.conflict_free_masks(),
            Semantics::Admissible => self
                .conflict_free_masks()
                .into_iter()
                .filter(|m| self.is_admissible_mask(m))
                .collect(),
            Semantics::Complete => self
                .conflict_free_masks()
                .into_iter()
                .filter(|m| self.is_complete_mask(m))
                .collect(),
            Semantics::Stable => self
                .conflict_free_masks()
                .into_iter()
                .filter(|m| self.is_stable_mask(m))
                .collect(),
            Semantics::Preferred => {
                // preferred = maximal admissible = maximal complete
                let complete = self.extension_masks(Semantics::Complete);
                complete
                    .iter()
                    .filter(|m| !complete.iter().any(|o| strict_subset(m, o)))
                    .cloned()
                    .collect()
            }
        }
    }

    /// Every σ-extension, sorted by the sequence of member positions.
    pub fn extensions(&self, sem: Semantics) -> Vec<Extension> {
        let mut masks = self.extension_masks(sem);
        masks.sort_by_key(|m| mask_positions(m));
        masks.iter().map(|m| self.set_from_mask(m)).collect()
    }

    /// Whether `set` is a σ-extension. Names outside the framework are an error.
    pub fn is_extension<I>(&self, set: I, sem: Semantics) -> Result<bool>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let mask = self.mask(set)?;
        Ok(self.is_extension_mask(&mask, sem))
    }

    pub(crate) fn is_extension_mask(&self, mask: &[bool], sem: Semantics) -> bool {
        match sem {
            Semantics::ConflictFree => self.is_conflict_free_mask(mask),
            Semantics::Admissible => self.is_admissible_mask(mask),
            Semantics::Complete => self.is_complete_mask(mask),
            Semantics::Stable => self.is_stable_mask(mask),
            Semantics::Grounded => self.grounded_mask() == mask,
            Semantics::Preferred => {
                self.is_admissible_mask(mask)
                    && !self
                        .extension_masks(Semantics::Complete)
                        .iter()
                        .any(|o| strict_subset(mask, o))
            }
        }
    }

    /// `(E, E⁺, rest)` for a set of arguments.
    pub fn extension_to_labeling<I>(&self, set: I) -> Result<Labeling>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let mask = self.mask(set)?;
        Ok(self.labeling_from_labels(&self.labels_of_mask(&mask)))
    }

    fn labels_of_mask(&self, mask: &[bool]) -> Vec<Label> {
        let out = self.attacked_by(mask);
        (0..self.len())
            .map(|a| {
                if mask[a] {
                    Label::In
                } else if out[a] {
                    Label::Out
                } else {
                    Label::Undec
                }
            })
            .collect()
    }

    fn labeling_from_labels(&self, labels: &[Label]) -> Labeling {
        self.args
            .iter()
            .cloned()
            .zip(labels.iter().copied())
            .collect()
    }

    /// Positional labels for a labeling; partial or foreign labelings are rejected.
    pub fn labels_of(&self, labeling: &Labeling) -> Result<Vec<Label>> {
        if let Some((extra, _)) = labeling.iter().find(|(a, _)| !self.contains(a)) {
            return Err(Error::UnknownArgument(extra.to_string()));
        }
        self.args
            .iter()
            .map(|a| {
                labeling.get(a).ok_or_else(|| {
                    Error::domain(format!("labeling is not total: `{a}` has no label"))
                })
            })
            .collect()
    }

    fn legally_in(&self, labels: &[Label], a: usize) -> bool {
        self.attackers[a].iter().all(|&b| labels[b] == Label::Out)
    }

    fn legally_out(&self, labels: &[Label], a: usize) -> bool {
        self.attackers[a].iter().any(|&b| labels[b] == Label::In)
    }

    fn legally_undec(&self, labels: &[Label], a: usize) -> bool {
        !self.legally_in(labels, a) && !self.legally_out(labels, a)
    }

    /// Local condition for argument `a` under the legality-based semantics.
    /// Only valid once `a` and all of its attackers carry a label.
    fn locally_ok(&self, labels: &[Label], a: usize, sem: Semantics) -> bool {
        match (sem, labels[a]) {
            (Semantics::ConflictFree, Label::In) => {
                self.attackers[a].iter().all(|&b| labels[b] != Label::In)
            }
            (Semantics::ConflictFree, Label::Out) => self.legally_out(labels, a),
            (Semantics::ConflictFree, Label::Undec) => true,
            (_, Label::In) => self.legally_in(labels, a),
            (_, Label::Out) => self.legally_out(labels, a),
            (Semantics::Admissible, Label::Undec) => true,
            (_, Label::Undec) => self.legally_undec(labels, a),
        }
    }

    /// Ternary backtracking with legality pruning for cf, ad and co.
    fn legal_labelings(&self, sem: Semantics) -> Vec<Vec<Label>> {
        debug_assert!(matches!(
            sem,
            Semantics::ConflictFree | Semantics::Admissible | Semantics::Complete
        ));
        let n = self.len();
        // argument `a` can be checked once everything up to ready[a] is labeled
        let mut ready_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in 0..n {
            let ready = self.attackers[a]
                .iter()
                .copied()
                .chain([a])
                .max()
                .unwrap_or(a);
            ready_at[ready].push(a);
        }
        fn go(
            af: &ArgumentFramework,
            sem: Semantics,
            ready_at: &[Vec<usize>],
            i: usize,
            labels: &mut Vec<Label>,
            acc: &mut Vec<Vec<Label>>,
        ) {
            if i == af.len() {
                acc.push(labels.clone());
                return;
            }
            for label in [Label::In, Label::Out, Label::Undec] {
                labels[i] = label;
                if ready_at[i].iter().all(|&a| af.locally_ok(labels, a, sem)) {
                    go(af, sem, ready_at, i + 1, labels, acc);
                }
            }
            labels[i] = Label::Undec;
        }
        let mut acc = Vec::new();
        go(
            self,
            sem,
            &ready_at,
            0,
            &mut vec![Label::Undec; n],
            &mut acc,
        );
        acc
    }

    fn labeling_vectors(&self, sem: Semantics) -> Vec<Vec<Label>> {
        match sem {
            Semantics::ConflictFree | Semantics::Admissible | Semantics::Complete => {
                self.legal_labelings(sem)
            }
            Semantics::Stable => self
                .legal_labelings(Semantics::Complete)
                .into_iter()
                .filter(|l| !l.contains(&Label::Undec))
                .collect(),
            Semantics::Preferred | Semantics::Grounded => {
                let complete = self.legal_labelings(Semantics::Complete);
                let ins: Vec<Vec<bool>> = complete
                    .iter()
                    .map(|l| l.iter().map(|&x| x == Label::In).collect())
                    .collect();
                complete
                    .iter()
                    .zip(&ins)
                    .filter(|(_, m)| {
                        ins.iter().all(|o| {
                            if sem == Semantics::Preferred {
                                !strict_subset(m, o)
                            } else {
                                !strict_subset(o, m)
                            }
                        })
                    })
                    .map(|(l, _)| l.clone())
                    .collect()
            }
        }
    }

    /// Every σ-labeling, sorted lexicographically over framework order with
    /// `in < out < undec`.
    pub fn labelings(&self, sem: Semantics) -> Vec<Labeling> {
        let mut vecs = self.labeling_vectors(sem);
        vecs.sort();
        vecs.iter().map(|l| self.labeling_from_labels(l)).collect()
    }

    /// Whether a total labeling is a σ-labeling.
    pub fn check_labeling(&self, labeling: &Labeling, sem: Semantics) -> Result<bool> {
        let labels = self.labels_of(labeling)?;
        let legal = |s: Semantics| (0..self.len()).all(|a| self.locally_ok(&labels, a, s));
        Ok(match sem {
            Semantics::ConflictFree | Semantics::Admissible | Semantics::Complete => legal(sem),
            Semantics::Stable => legal(Semantics::Complete) && !labels.contains(&Label::Undec),
            Semantics::Preferred | Semantics::Grounded => {
                if !legal(Semantics::Complete) {
                    return Ok(false);
                }
                let mask: Vec<bool> = labels.iter().map(|&l| l == Label::In).collect();
                let others = self.extension_masks(Semantics::Complete);
                if sem == Semantics::Preferred {
                    !others.iter().any(|o| strict_subset(&mask, o))
                } else {
                    !others.iter().any(|o| strict_subset(o, &mask))
                }
            }
        })
    }

    /// Walk-parity reachability for every pair, by BFS on a two-layer graph.
    pub fn parity_closure(&self) -> ParityClosure {
        let n = self.len();
        let mut odd = vec![false; n * n];
        let mut even = vec![false; n * n];
        for src in 0..n {
            // state (node, parity): parity 1 means an odd number of edges walked
            let mut seen = vec![[false; 2]; n];
            let mut queue = VecDeque::new();
            for &t in &self.targets[src] {
                if !seen[t][1] {
                    seen[t][1] = true;
                    queue.push_back((t, 1usize));
                }
            }
            while let Some((v, p)) = queue.pop_front() {
                let q = 1 - p;
                for &t in &self.targets[v] {
                    if !seen[t][q] {
                        seen[t][q] = true;
                        queue.push_back((t, q));
                    }
                }
            }
            for (v, s) in seen.iter().enumerate() {
                odd[src * n + v] = s[1];
                even[src * n + v] = s[0];
            }
        }
        ParityClosure { n, odd, even }
    }

    /// Indirect attack (odd walk) and indirect defence (even nonzero walk) from `a` to `b`.
    pub fn indirect_relation(&self, a: &str, b: &str) -> Result<IndirectRelation> {
        let (a, b) = (self.index_of(a)?, self.index_of(b)?);
        let closure = self.parity_closure();
        Ok(IndirectRelation {
            attacks: closure.odd(a, b),
            defends: closure.even(a, b),
        })
    }

    /// `a` both indirectly attacks and indirectly defends `b`.
    pub fn is_controversial(&self, a: &str, b: &str) -> Result<bool> {
        let rel = self.indirect_relation(a, b)?;
        Ok(rel.attacks && rel.defends)
    }

    /// `a` indirectly attacks `c` while `b` indirectly defends `c`.
    pub fn is_super_controversial(&self, a: &str, b: &str, c: &str) -> Result<bool> {
        Ok(self.indirect_relation(a, c)?.attacks && self.indirect_relation(b, c)?.defends)
    }
}

fn strict_subset(a: &[bool], b: &[bool]) -> bool {
    a != b && a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn mask_positions(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i)
        .collect()
}
