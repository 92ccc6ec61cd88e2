//! Exhaustive base and circuit enumeration against a rank oracle.

use std::collections::HashSet;

use rayon::prelude::*;

use super::oracle::RankOracle;
use super::orbit::GroundSetAction;
use super::subset::{self, Subset};
use super::sort_family;
use crate::error::{Error, Result};

/// Refuse scans larger than this many candidate subsets.
pub const MAX_SCAN: u64 = 200_000_000;

/// All `S` with `|S| = ρ(E)` and `ρ(S) = |S|`, sorted by index tuple.
pub fn enumerate_bases<O: RankOracle + ?Sized>(oracle: &O) -> Result<Vec<Subset>> {
    let n = oracle.ground_size();
    let r = oracle.full_rank()?;
    if subset::binomial(n, r) > MAX_SCAN {
        return Err(Error::Budget(format!("C({n},{r}) candidate bases exceed the scan limit")));
    }
    let candidates: Vec<Subset> = subset::k_subsets(n, r).collect();
    let flags = candidates
        .par_iter()
        .map(|&s| oracle.is_independent(s))
        .collect::<Result<Vec<bool>>>()?;
    let mut bases: Vec<Subset> = candidates.into_iter().zip(flags).filter(|(_, b)| *b).map(|(s, _)| s).collect();
    sort_family(&mut bases);
    Ok(bases)
}

/// Base enumeration querying one representative per orbit of the action.
pub fn enumerate_bases_by_orbits<O: RankOracle + ?Sized>(
    oracle: &O,
    action: &GroundSetAction,
) -> Result<Vec<Subset>> {
    let n = oracle.ground_size();
    let r = oracle.full_rank()?;
    if subset::binomial(n, r) > MAX_SCAN {
        return Err(Error::Budget(format!("C({n},{r}) candidate bases exceed the scan limit")));
    }
    let group = action.elements()?;
    let reps: Vec<Subset> = subset::k_subsets(n, r)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&s| group.canonical(s) == s)
        .collect();
    let independent = reps
        .par_iter()
        .map(|&s| oracle.is_independent(s))
        .collect::<Result<Vec<bool>>>()?;
    let mut bases: Vec<Subset> = reps
        .iter()
        .zip(independent)
        .filter(|(_, b)| *b)
        .flat_map(|(&s, _)| group.orbit(s))
        .collect();
    sort_family(&mut bases);
    bases.dedup();
    Ok(bases)
}

/// Minimal dependent sets of size at most `max_size` (default `ρ(E) + 1`),
/// found level by level: a `k`-set is a candidate only when all its
/// `(k−1)`-subsets are independent, so supersets of circuits are never
/// queried. Candidates larger than `ρ(E)` are dependent without a query.
pub fn enumerate_circuits_naive<O: RankOracle + ?Sized>(oracle: &O, max_size: Option<usize>) -> Result<Vec<Subset>> {
    let n = oracle.ground_size();
    let r = oracle.full_rank()?;
    let max_size = max_size.unwrap_or(r + 1).min(n);
    let mut circuits: Vec<Subset> = Vec::new();
    let mut independent: Vec<Subset> = vec![0];
    let mut scanned: u64 = 0;
    for k in 1..=max_size {
        let prev: HashSet<Subset> = independent.iter().copied().collect();
        // Extend each independent (k−1)-set by a larger element; this
        // produces every candidate exactly once.
        let candidates: Vec<Subset> = independent
            .par_iter()
            .flat_map_iter(|&s| {
                let start = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
                let prev = &prev;
                (start..n).map(move |e| s | 1 << e).filter(move |&t| {
                    let mut rest = t & !(1u64 << (63 - t.leading_zeros()));
                    // The facet dropping the top element is `s` itself.
                    while rest != 0 {
                        let b = rest & rest.wrapping_neg();
                        rest &= rest - 1;
                        if !prev.contains(&(t & !b)) {
                            return false;
                        }
                    }
                    true
                })
            })
            .collect();
        scanned += candidates.len() as u64;
        if scanned > MAX_SCAN {
            return Err(Error::Budget("circuit scan exceeded the candidate limit".into()));
        }
        if candidates.is_empty() {
            break;
        }
        let verdicts = candidates
            .par_iter()
            .map(|&s| -> Result<bool> {
                if k > r {
                    return Ok(false);
                }
                oracle.is_independent(s)
            })
            .collect::<Result<Vec<bool>>>()?;
        independent = Vec::new();
        for (&s, indep) in candidates.iter().zip(verdicts) {
            if indep {
                independent.push(s);
            } else {
                circuits.push(s);
            }
        }
    }
    confirm_all(oracle, &circuits)?;
    sort_family(&mut circuits);
    Ok(circuits)
}

/// Runs the backend's independent circuit check where one exists.
pub(crate) fn confirm_all<O: RankOracle + ?Sized>(oracle: &O, circuits: &[Subset]) -> Result<()> {
    circuits.par_iter().try_for_each(|&c| match oracle.confirm_circuit(c)? {
        Some(false) => Err(Error::NotCircuit(format!(
            "rank oracle reports {:?} minimal dependent but the circuit check disagrees",
            subset::to_indices(c)
        ))),
        _ => Ok(()),
    })
}
