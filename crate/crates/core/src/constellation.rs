//! Constellation probabilities: distributions over the subgraphs of a base
//! framework, with exact and sampled acceptance probabilities.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dung::{ArgumentFramework, Extension, Label, Semantics};
use crate::error::{Error, Result};
use crate::rational::{format_rational, is_probability, Rational};

pub const DEFAULT_CAP: usize = 12;

/// Draws per sampling chunk; each chunk has its own stream so the result
/// does not depend on how chunks are spread over threads.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgraphMode {
    General,
    Full,
    Spanning,
}

impl SubgraphMode {
    pub fn name(self) -> &'static str {
        match self {
            SubgraphMode::General => "general",
            SubgraphMode::Full => "full",
            SubgraphMode::Spanning => "spanning",
        }
    }
}

impl fmt::Display for SubgraphMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgraphMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SubgraphMode::General,
            SubgraphMode::Full,
            SubgraphMode::Spanning,
        ]
        .into_iter()
        .find(|m| m.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| Error::domain(format!("unknown subgraph mode `{s}`")))
    }
}

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::SizeLimit {
            what,
            size,
            limit: cap,
        })
    } else {
        Ok(())
    }
}

/// Subsets of `0..n` as membership masks, largest binary value first with
/// item 0 as the most significant bit.
fn descending_masks(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << n)
        .rev()
        .map(move |bits| (0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect())
}

fn subgraph(
    af: &ArgumentFramework,
    args: &[bool],
    attacks: &[(usize, usize)],
) -> ArgumentFramework {
    let names = (0..af.len())
        .filter(|&i| args[i])
        .map(|i| af.name(i).to_string());
    ArgumentFramework::new(
        names,
        attacks.iter().map(|&(f, t)| (af.name(f), af.name(t))),
    )
    .expect("subgraph of a valid framework")
}

/// Every subgraph of `af` of the given mode, in canonical order: argument
/// subsets from largest to smallest binary value (first argument most
/// significant), and within each, attack subsets likewise.
///
/// General and full enumeration require at most `cap` arguments; general
/// and spanning enumeration require at most `cap` attacks in each argument
/// subset considered.
pub fn enumerate_subgraphs(
    af: &ArgumentFramework,
    mode: SubgraphMode,
    cap: usize,
) -> Result<Vec<ArgumentFramework>> {
    let all_attacks: Vec<(usize, usize)> = af.attack_indices().iter().copied().collect();
    let mut out = Vec::new();
    match mode {
        SubgraphMode::Spanning => {
            check_cap("attacks", all_attacks.len(), cap)?;
            let full = vec![true; af.len()];
            for pick in descending_masks(all_attacks.len()) {
                let atts: Vec<_> = all_attacks
                    .iter()
                    .zip(&pick)
                    .filter(|(_, &p)| p)
                    .map(|(a, _)| *a)
                    .collect();
                out.push(subgraph(af, &full, &atts));
            }
        }
        SubgraphMode::Full | SubgraphMode::General => {
            check_cap("arguments", af.len(), cap)?;
            for args in descending_masks(af.len()) {
                let induced: Vec<_> = all_attacks
                    .iter()
                    .filter(|&&(f, t)| args[f] && args[t])
                    .copied()
                    .collect();
                if mode == SubgraphMode::Full {
                    out.push(subgraph(af, &args, &induced));
                    continue;
                }
                check_cap("attacks", induced.len(), cap)?;
                for pick in descending_masks(induced.len()) {
                    let atts: Vec<_> = induced
                        .iter()
                        .zip(&pick)
                        .filter(|(_, &p)| p)
                        .map(|(a, _)| *a)
                        .collect();
                    out.push(subgraph(af, &args, &atts));
                }
            }
        }
    }
    Ok(out)
}

/// Checks one distribution entry against the base and mode.
pub(crate) fn check_entry(
    base: &ArgumentFramework,
    g: &ArgumentFramework,
    mass: &Rational,
    mode: SubgraphMode,
) -> std::result::Result<(), String> {
    if !is_probability(mass) {
        return Err(format!("mass {} outside [0,1]", format_rational(mass)));
    }
    if !is_subgraph_of(g, base) {
        return Err("not a subgraph of the base".into());
    }
    match mode {
        SubgraphMode::Full if !is_full_in(g, base) => Err("not a full subgraph".into()),
        SubgraphMode::Spanning if g.len() != base.len() => Err("not a spanning subgraph".into()),
        _ => Ok(()),
    }
}

fn is_subgraph_of(sub: &ArgumentFramework, base: &ArgumentFramework) -> bool {
    sub.arguments().iter().all(|a| base.contains(a))
        && sub.attacks().all(|(a, b)| base.has_attack(a, b))
}

fn is_full_in(sub: &ArgumentFramework, base: &ArgumentFramework) -> bool {
    base.attacks()
        .filter(|(a, b)| sub.contains(a) && sub.contains(b))
        .count()
        == sub.attack_count()
}

/// A probability distribution over subgraphs of a base framework. Only
/// subgraphs with positive mass are stored.
#[derive(Debug, Clone)]
pub struct SubgraphDistribution {
    base: ArgumentFramework,
    entries: Vec<(ArgumentFramework, Rational)>,
    mode: SubgraphMode,
}

impl SubgraphDistribution {
    /// Validates the entries against the base and the mode. Zero-mass
    /// entries are dropped; masses must sum to exactly one and a subgraph
    /// may appear only once.
    pub fn new(
        base: ArgumentFramework,
        entries: impl IntoIterator<Item = (ArgumentFramework, Rational)>,
        mode: SubgraphMode,
    ) -> Result<Self> {
        let mut kept: Vec<(ArgumentFramework, Rational)> = Vec::new();
        let mut total = Rational::zero();
        for (i, (g, mass)) in entries.into_iter().enumerate() {
            let which = i + 1;
            check_entry(&base, &g, &mass, mode)
                .map_err(|msg| Error::validation(format!("subgraph {which}: {msg}")))?;
            if kept.iter().any(|(h, _)| same_graph(h, &g)) {
                return Err(Error::validation(format!(
                    "subgraph {which} appears more than once"
                )));
            }
            total += &mass;
            if !mass.is_zero() {
                kept.push((g, mass));
            }
        }
        if !total.is_one() {
            return Err(Error::validation(format!(
                "subgraph probabilities sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(Self {
            base,
            entries: kept,
            mode,
        })
    }

    pub fn base(&self) -> &ArgumentFramework {
        &self.base
    }

    pub fn mode(&self) -> SubgraphMode {
        self.mode
    }

    pub fn entries(&self) -> &[(ArgumentFramework, Rational)] {
        &self.entries
    }

    fn require_known(&self, arg: &str) -> Result<()> {
        if self.base.contains(arg) {
            Ok(())
        } else {
            Err(Error::UnknownArgument(arg.to_string()))
        }
    }

    /// Total mass of the subgraphs in which `e` is a σ-extension.
    pub fn prob_extension(&self, e: &Extension, sem: Semantics) -> Result<Rational> {
        for a in e {
            self.require_known(a)?;
        }
        let mut total = Rational::zero();
        for (g, mass) in &self.entries {
            if e.iter().all(|a| g.contains(a)) && g.is_extension(e, sem)? {
                total += mass;
            }
        }
        Ok(total)
    }

    /// Total mass of the subgraphs with at least one σ-labeling putting `a`
    /// in. Each subgraph counts once.
    pub fn prob_argument_in(&self, a: &str, sem: Semantics) -> Result<Rational> {
        self.require_known(a)?;
        Ok(self
            .entries
            .iter()
            .filter(|(g, _)| accepts(g, a, sem))
            .map(|(_, m)| m.clone())
            .sum())
    }

    /// Sum over (subgraph, σ-labeling) pairs with `a` in of the subgraph's
    /// mass. Exceeds one when several labelings accept `a` in the same graph.
    pub fn prob_argument_in_per_labeling(&self, a: &str, sem: Semantics) -> Result<Rational> {
        self.require_known(a)?;
        let mut total = Rational::zero();
        for (g, mass) in &self.entries {
            if !g.contains(a) {
                continue;
            }
            let count = g
                .labelings(sem)
                .iter()
                .filter(|l| l.get(a) == Some(Label::In))
                .count();
            total += mass * Rational::from_integer(count.into());
        }
        Ok(total)
    }

    /// Monte-Carlo estimate of [`Self::prob_argument_in`] from `samples`
    /// draws. The result depends only on `seed`, never on `jobs`.
    pub fn estimate_prob_argument(
        &self,
        a: &str,
        sem: Semantics,
        samples: u64,
        seed: u64,
        jobs: usize,
    ) -> Result<Rational> {
        self.require_known(a)?;
        if samples == 0 {
            return Err(Error::domain("sample count must be positive"));
        }
        let accepted: Vec<bool> = self
            .entries
            .iter()
            .map(|(g, _)| accepts(g, a, sem))
            .collect();
        let thresholds = self.thresholds();
        let chunks = samples.div_ceil(CHUNK);
        let run = || -> u64 {
            (0..chunks)
                .into_par_iter()
                .map(|chunk| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(chunk);
                    let draws = CHUNK.min(samples - chunk * CHUNK);
                    (0..draws)
                        .filter(|_| accepted[pick(&thresholds, rng.next_u64())])
                        .count() as u64
                })
                .sum()
        };
        let hits = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?
            .install(run);
        Ok(Rational::new(hits.into(), samples.into()))
    }

    /// Cumulative mass thresholds scaled to the u64 range; the last entry
    /// catches everything above the preceding thresholds.
    fn thresholds(&self) -> Vec<u64> {
        let scale = BigInt::one() << 64;
        let mut cum = Rational::zero();
        let mut out = Vec::with_capacity(self.entries.len());
        for (i, (_, mass)) in self.entries.iter().enumerate() {
            cum += mass;
            if i + 1 == self.entries.len() {
                out.push(u64::MAX);
            } else {
                let scaled: BigInt = (cum.numer() * &scale) / cum.denom();
                out.push(scaled.to_u64().unwrap_or(u64::MAX));
            }
        }
        out
    }
}

fn same_graph(a: &ArgumentFramework, b: &ArgumentFramework) -> bool {
    a.len() == b.len()
        && a.arguments().iter().all(|x| b.contains(x))
        && a.attack_count() == b.attack_count()
        && a.attacks().all(|(x, y)| b.has_attack(x, y))
}

fn accepts(g: &ArgumentFramework, a: &str, sem: Semantics) -> bool {
    if !g.contains(a) {
        return false;
    }
    match sem {
        Semantics::Grounded => g.grounded().contains(a),
        _ => g.extensions(sem).iter().any(|e| e.contains(a)),
    }
}

fn pick(thresholds: &[u64], draw: u64) -> usize {
    let i = thresholds.partition_point(|&t| t <= draw);
    i.min(thresholds.len() - 1)
}
