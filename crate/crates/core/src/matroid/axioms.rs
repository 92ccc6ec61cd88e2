//! Matroid axiom checks on enumerated bases and circuits, with witnesses.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::subset::{self, Subset};
use super::Matroid;

#[derive(Clone, Debug)]
pub struct AxiomOptions {
    /// Checks whose exhaustive form needs more steps than this are sampled.
    pub exhaustive_limit: u64,
    /// Number of samples drawn by sampled checks.
    pub samples: usize,
    /// Random (S, T) pairs for the submodularity check.
    pub submodular_pairs: usize,
    pub seed: u64,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { exhaustive_limit: 20_000_000, samples: 20_000, submodular_pairs: 1_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub exhaustive: bool,
    /// Number of instances examined.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn fmt(s: Subset) -> String {
    format!("{:?}", subset::to_indices(s))
}

struct Check {
    name: &'static str,
    exhaustive: bool,
    checked: u64,
    witness: Option<String>,
}

impl Check {
    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            name: self.name,
            passed: self.witness.is_none(),
            exhaustive: self.exhaustive,
            checked: self.checked,
            witness: self.witness,
        }
    }
}

/// Runs every check applicable to the enumerated data.
pub fn verify_axioms(m: &Matroid, opts: &AxiomOptions) -> AxiomReport {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if let Some(bases) = &m.bases {
        checks.push(equicardinality(bases, m.rank));
        checks.push(basis_exchange(bases, opts, &mut rng));
        checks.push(submodularity(m, bases, opts, &mut rng));
    }
    if let Some(circuits) = &m.circuits {
        checks.push(circuit_minimality(circuits, opts, &mut rng));
        checks.push(circuit_elimination(circuits, m.rank, opts, &mut rng));
        if let Some(bases) = &m.bases {
            checks.push(bases_avoid_circuits(bases, circuits, m.rank, m.ground.len(), opts, &mut rng));
        }
    }
    AxiomReport { checks }
}

fn equicardinality(bases: &[Subset], rank: usize) -> AxiomCheck {
    let mut c = Check { name: "equicardinality", exhaustive: true, checked: bases.len() as u64, witness: None };
    if bases.is_empty() {
        c.witness = Some("no bases".into());
    } else if let Some(&b) = bases.iter().find(|&&b| subset::size(b) != rank) {
        c.witness = Some(format!("basis {} has size {} but the rank is {rank}", fmt(b), subset::size(b)));
    }
    c.finish()
}

fn exchange_witness(set: &HashSet<Subset>, a: Subset, b: Subset) -> Option<String> {
    for x in subset::to_indices(a & !b) {
        let ok = subset::to_indices(b & !a).into_iter().any(|y| set.contains(&(a & !(1 << x) | 1 << y)));
        if !ok {
            return Some(format!("A = {}, B = {}, a = {x}: no exchange element", fmt(a), fmt(b)));
        }
    }
    None
}

fn pairs<R: Rng>(len: usize, exhaustive: bool, samples: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if exhaustive {
        (0..len).flat_map(|i| (0..len).filter(move |&j| j != i).map(move |j| (i, j))).collect()
    } else if len < 2 {
        Vec::new()
    } else {
        (0..samples)
            .map(|_| {
                let i = rng.gen_range(0..len);
                let j = (i + rng.gen_range(1..len)) % len;
                (i, j)
            })
            .collect()
    }
}

fn basis_exchange<R: Rng>(bases: &[Subset], opts: &AxiomOptions, rng: &mut R) -> AxiomCheck {
    let set: HashSet<Subset> = bases.iter().copied().collect();
    let total = (bases.len() as u64).saturating_mul(bases.len() as u64);
    let exhaustive = total <= opts.exhaustive_limit;
    let work = pairs(bases.len(), exhaustive, opts.samples, rng);
    let witness = work.par_iter().find_map_first(|&(i, j)| exchange_witness(&set, bases[i], bases[j]));
    Check { name: "basis exchange", exhaustive, checked: work.len() as u64, witness }.finish()
}

fn submodularity<R: Rng>(m: &Matroid, bases: &[Subset], opts: &AxiomOptions, rng: &mut R) -> AxiomCheck {
    let full = m.ground.full();
    let work: Vec<(Subset, Subset)> =
        (0..opts.submodular_pairs).map(|_| (rng.gen::<u64>() & full, rng.gen::<u64>() & full)).collect();
    let rk = |s: Subset| bases.iter().map(|&b| subset::size(b & s)).max().unwrap_or(0);
    let witness = work.par_iter().find_map_first(|&(s, t)| {
        let (a, b, u, i) = (rk(s), rk(t), rk(s | t), rk(s & t));
        (a + b < u + i).then(|| format!("S = {}, T = {}: {a} + {b} < {u} + {i}", fmt(s), fmt(t)))
    });
    Check { name: "submodularity", exhaustive: false, checked: work.len() as u64, witness }.finish()
}

fn circuit_minimality<R: Rng>(circuits: &[Subset], opts: &AxiomOptions, rng: &mut R) -> AxiomCheck {
    let total = (circuits.len() as u64).saturating_mul(circuits.len() as u64);
    let exhaustive = total <= opts.exhaustive_limit;
    let mut witness = circuits.iter().find(|&&c| c == 0).map(|_| "empty circuit".to_string());
    let checked;
    if exhaustive {
        checked = total;
        witness = witness.or_else(|| {
            circuits.par_iter().find_map_first(|&a| {
                circuits
                    .iter()
                    .find(|&&b| b != a && b & !a == 0)
                    .map(|&b| format!("circuit {} contains circuit {}", fmt(a), fmt(b)))
            })
        });
    } else {
        let work = pairs(circuits.len(), false, opts.samples, rng);
        checked = work.len() as u64;
        witness = witness.or_else(|| {
            work.par_iter().find_map_first(|&(i, j)| {
                let (a, b) = (circuits[i], circuits[j]);
                (b & !a == 0).then(|| format!("circuit {} contains circuit {}", fmt(a), fmt(b)))
            })
        });
    }
    Check { name: "circuit minimality", exhaustive, checked, witness }.finish()
}

fn circuit_elimination<R: Rng>(circuits: &[Subset], rank: usize, opts: &AxiomOptions, rng: &mut R) -> AxiomCheck {
    let total = (circuits.len() as u64).saturating_mul(circuits.len() as u64);
    let exhaustive = total.saturating_mul(circuits.len() as u64) <= opts.exhaustive_limit;
    let work = pairs(circuits.len(), exhaustive, opts.samples, rng);
    let witness = work.par_iter().find_map_first(|&(i, j)| {
        let (a, b) = (circuits[i], circuits[j]);
        subset::to_indices(a & b).into_iter().find_map(|e| {
            let u = (a | b) & !(1 << e);
            // Sets larger than the rank are dependent in any matroid.
            let dependent = subset::size(u) > rank || circuits.iter().any(|&c| c & !u == 0);
            (!dependent).then(|| format!("C1 = {}, C2 = {}, e = {e}: no circuit in the union", fmt(a), fmt(b)))
        })
    });
    Check { name: "circuit elimination", exhaustive, checked: work.len() as u64, witness }.finish()
}

/// A basis contains no circuit, and every circuit minus one element extends
/// to a basis.
fn bases_avoid_circuits<R: Rng>(
    bases: &[Subset],
    circuits: &[Subset],
    rank: usize,
    n: usize,
    opts: &AxiomOptions,
    rng: &mut R,
) -> AxiomCheck {
    let total = (bases.len() as u64).saturating_mul(circuits.len() as u64);
    let exhaustive = total <= opts.exhaustive_limit;
    let (bs, cs): (Vec<Subset>, Vec<Subset>) = if exhaustive {
        (bases.to_vec(), circuits.to_vec())
    } else {
        let k = opts.samples.min(2_000);
        (
            (0..k.min(bases.len())).map(|_| bases[rng.gen_range(0..bases.len())]).collect(),
            (0..k.min(circuits.len())).map(|_| circuits[rng.gen_range(0..circuits.len())]).collect(),
        )
    };
    let mut witness = bs.par_iter().find_map_first(|&b| {
        circuits.iter().find(|&&c| c & !b == 0).map(|&c| format!("basis {} contains circuit {}", fmt(b), fmt(c)))
    });
    if witness.is_none() {
        witness = cs.par_iter().find_map_first(|&c| {
            if subset::size(c) > rank + 1 || subset::size(c) > n {
                return Some(format!("circuit {} is larger than rank + 1", fmt(c)));
            }
            let e = c.trailing_zeros();
            let facet = c & !(1 << e);
            (!bases.iter().any(|&b| facet & !b == 0)).then(|| format!("circuit {} has a dependent facet", fmt(c)))
        });
    }
    // Every rank-sized set containing no circuit is a basis.
    if witness.is_none() && exhaustive && subset::binomial(n, rank) <= opts.exhaustive_limit / 8 {
        let set: HashSet<Subset> = bases.iter().copied().collect();
        let candidates: Vec<Subset> = subset::k_subsets(n, rank).collect();
        witness = candidates.par_iter().find_map_first(|&s| {
            let free = !circuits.iter().any(|&c| c & !s == 0);
            (free != set.contains(&s)).then(|| {
                format!("{} is rank-sized, {} a circuit, but {} a basis", fmt(s), if free { "contains no" } else { "contains" }, if set.contains(&s) { "is" } else { "is not" })
            })
        });
    }
    Check { name: "bases and circuits agree", exhaustive, checked: (bs.len() + cs.len()) as u64, witness }.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::GroundSet;

    fn ground(n: usize) -> GroundSet {
        GroundSet::new((1..=n).map(|i| i.to_string()).collect()).unwrap()
    }

    #[test]
    fn uniform_matroid_passes() {
        let m = Matroid::new(ground(5), 2)
            .with_bases(subset::k_subsets(5, 2).collect())
            .with_circuits(subset::k_subsets(5, 3).collect());
        let r = verify_axioms(&m, &AxiomOptions::default());
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.exhaustive || c.name == "submodularity"));
    }

    #[test]
    fn unequal_bases_fail() {
        // {1}, {1,2} on ground {1,2}.
        let m = Matroid::new(ground(2), 1).with_bases(vec![0b01, 0b11]);
        let r = verify_axioms(&m, &AxiomOptions::default());
        let eq = r.checks.iter().find(|c| c.name == "equicardinality").unwrap();
        assert!(!eq.passed);
        assert!(eq.witness.as_ref().unwrap().contains("[0, 1]"));
    }

    #[test]
    fn nested_circuits_fail() {
        // {1,2} and {1}.
        let m = Matroid::new(ground(2), 1).with_circuits(vec![0b11, 0b01]);
        let r = verify_axioms(&m, &AxiomOptions::default());
        let c = r.checks.iter().find(|c| c.name == "circuit minimality").unwrap();
        assert!(!c.passed);
        assert!(c.witness.is_some());
    }

    #[test]
    fn corrupted_basis_list_breaks_exchange() {
        let mut bases: Vec<Subset> = subset::k_subsets(4, 2).collect();
        bases.retain(|&b| b != 0b0011 && b != 0b0101);
        let m = Matroid::new(ground(4), 2).with_bases(bases);
        let r = verify_axioms(&m, &AxiomOptions::default());
        let c = r.checks.iter().find(|c| c.name == "basis exchange").unwrap();
        assert!(!c.passed, "{r:?}");
    }

    #[test]
    fn sampling_kicks_in_for_large_families() {
        let m = Matroid::new(ground(12), 6).with_bases(subset::k_subsets(12, 6).collect());
        let opts = AxiomOptions { exhaustive_limit: 1_000, samples: 500, ..Default::default() };
        let r = verify_axioms(&m, &opts);
        let c = r.checks.iter().find(|c| c.name == "basis exchange").unwrap();
        assert!(c.passed && !c.exhaustive && c.checked == 500);
    }
}
