//! Circuit generation from one basis by closing fundamental circuits under
//! circuit elimination.

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::confirm_all;
use super::oracle::RankOracle;
use super::sort_family;
use super::subset::{self, Subset};
use crate::error::{Error, Result};

/// Search-tree nodes allowed when enumerating maximal circuit-free sets.
pub const CERTIFICATE_NODE_LIMIT: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeCertificate {
    /// Every reported circuit is dependent with independent facets.
    pub minimal: bool,
    /// Number of maximal sets containing no reported circuit.
    pub maximal_free_sets: u64,
    /// Every maximal circuit-free set is a basis, so no circuit is missing.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeResult {
    pub circuits: Vec<Subset>,
    pub certificate: ExchangeCertificate,
}

/// Shrinks a dependent set to a circuit by dropping, in label order, every
/// element whose removal keeps the set dependent.
pub fn extract_circuit<O: RankOracle + ?Sized>(oracle: &O, s: Subset, keep: Subset) -> Result<Subset> {
    if oracle.is_independent(s)? {
        return Err(Error::NotCircuit(format!("{:?} is independent", subset::to_indices(s))));
    }
    let mut t = s;
    for i in subset::to_indices(s) {
        if keep >> i & 1 == 1 {
            continue;
        }
        let smaller = t & !(1 << i);
        if !oracle.is_independent(smaller)? {
            t = smaller;
        }
    }
    Ok(t)
}

/// The unique circuit inside `basis ∪ {e}`.
pub fn fundamental_circuit<O: RankOracle + ?Sized>(oracle: &O, basis: Subset, e: usize) -> Result<Subset> {
    if basis >> e & 1 == 1 {
        return Err(Error::Invalid(format!("element {e} lies in the basis")));
    }
    // Dropping `e` leaves the independent basis, so it is never removed.
    extract_circuit(oracle, basis | 1 << e, 1 << e)
}

/// All circuits, starting from the fundamental circuits of `basis` and
/// adding a circuit inside `(C₁ ∪ C₂) ∖ {e}` whenever that set contains none
/// of the circuits found so far. The result carries a completeness check.
pub fn circuits_by_exchange<O: RankOracle + ?Sized>(oracle: &O, basis: Subset) -> Result<ExchangeResult> {
    let n = oracle.ground_size();
    let r = oracle.full_rank()?;
    if subset::size(basis) != r || !oracle.is_independent(basis)? {
        return Err(Error::Invalid(format!("{:?} is not a basis", subset::to_indices(basis))));
    }
    let outside: Vec<usize> = (0..n).filter(|&e| basis >> e & 1 == 0).collect();
    let mut circuits: Vec<Subset> =
        outside.par_iter().map(|&e| fundamental_circuit(oracle, basis, e)).collect::<Result<_>>()?;
    circuits.sort_unstable();
    circuits.dedup();
    let mut seen: std::collections::HashSet<Subset> = circuits.iter().copied().collect();

    let contains_known = |found: &[Subset], u: Subset| found.iter().any(|&c| c & !u == 0);
    let mut done = 0;
    while done < circuits.len() {
        // Pair the next unprocessed circuit with all earlier ones.
        let i = done;
        let ci = circuits[i];
        let candidates: Vec<Subset> = (0..i)
            .flat_map(|j| {
                let cj = circuits[j];
                subset::to_indices(ci & cj).into_iter().map(move |e| (ci | cj) & !(1 << e))
            })
            .filter(|&u| !contains_known(&circuits, u))
            .collect();
        let mut fresh: Vec<Subset> =
            candidates.par_iter().map(|&u| extract_circuit(oracle, u, 0)).collect::<Result<_>>()?;
        fresh.sort_unstable();
        fresh.dedup();
        for c in fresh {
            if seen.insert(c) {
                circuits.push(c);
            }
        }
        done += 1;
    }
    confirm_all(oracle, &circuits)?;
    let certificate = certify(oracle, &circuits, r)?;
    sort_family(&mut circuits);
    Ok(ExchangeResult { circuits, certificate })
}

fn certify<O: RankOracle + ?Sized>(oracle: &O, circuits: &[Subset], r: usize) -> Result<ExchangeCertificate> {
    let minimal = circuits
        .par_iter()
        .map(|&c| -> Result<bool> {
            if oracle.is_independent(c)? {
                return Ok(false);
            }
            for i in subset::to_indices(c) {
                if !oracle.is_independent(c & !(1 << i))? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    // A missing circuit would lie in some maximal set free of the found
    // circuits, and that set would then be dependent.
    let free = maximal_free_sets(oracle.ground_size(), circuits)?;
    let all_bases = free
        .par_iter()
        .map(|&m| -> Result<bool> { Ok(subset::size(m) == r && oracle.is_independent(m)?) })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(ExchangeCertificate { minimal, maximal_free_sets: free.len() as u64, complete: minimal && all_bases })
}

/// Inclusion-maximal subsets of `{0..n}` containing none of `family`.
pub fn maximal_free_sets(n: usize, family: &[Subset]) -> Result<Vec<Subset>> {
    let mut by_elem: Vec<Vec<Subset>> = vec![Vec::new(); n];
    for &c in family {
        // Index each set by its largest element: it becomes complete exactly
        // when that element is added in increasing order.
        by_elem[63 - c.leading_zeros() as usize].push(c);
    }
    let mut out = Vec::new();
    let mut nodes = 0u64;
    dfs(n, family, &by_elem, 0, 0, &mut out, &mut nodes)?;
    Ok(out)
}

fn dfs(
    n: usize,
    family: &[Subset],
    by_elem: &[Vec<Subset>],
    i: usize,
    t: Subset,
    out: &mut Vec<Subset>,
    nodes: &mut u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > CERTIFICATE_NODE_LIMIT {
        return Err(Error::Budget("maximal circuit-free set search exceeded its node limit".into()));
    }
    if i == n {
        let maximal = (0..n).filter(|&j| t >> j & 1 == 0).all(|j| {
            let u = t | 1 << j;
            family.iter().any(|&c| c >> j & 1 == 1 && c & !u == 0)
        });
        if maximal {
            out.push(t);
        }
        return Ok(());
    }
    let with = t | 1 << i;
    if !by_elem[i].iter().any(|&c| c & !with == 0) {
        dfs(n, family, by_elem, i + 1, with, out, nodes)?;
    }
    // Leaving `i` out only helps if some later choice blocks it.
    let low = subset::full(i + 1);
    let blocked_now = by_elem[i].iter().any(|&c| c & !with == 0);
    if blocked_now || family.iter().any(|&c| c >> i & 1 == 1 && c >> (i + 1) != 0 && c & low & !with == 0) {
        dfs(n, family, by_elem, i + 1, t, out, nodes)?;
    }
    Ok(())
}
