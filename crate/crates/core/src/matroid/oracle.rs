use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;

use super::subset::{self, Subset};
use crate::error::Result;

/// A matroid rank function on subsets of `{0..ground_size()}`.
pub trait RankOracle: Send + Sync {
    fn ground_size(&self) -> usize;

    fn rank(&self, s: Subset) -> Result<usize>;

    /// Independent confirmation that `s` is a circuit, for backends that can
    /// produce one (`None` when unsupported).
    fn confirm_circuit(&self, _s: Subset) -> Result<Option<bool>> {
        Ok(None)
    }

    fn is_independent(&self, s: Subset) -> Result<bool> {
        Ok(self.rank(s)? == subset::size(s))
    }

    fn full_rank(&self) -> Result<usize> {
        self.rank(subset::full(self.ground_size()))
    }
}

/// Memoizing wrapper; safe for concurrent queries.
pub struct Memoized<O> {
    inner: O,
    memo: DashMap<Subset, usize>,
    misses: AtomicU64,
}

impl<O: RankOracle> Memoized<O> {
    pub fn new(inner: O) -> Self {
        Memoized { inner, memo: DashMap::new(), misses: AtomicU64::new(0) }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    /// Number of queries that reached the backend.
    pub fn evaluations(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

impl<O: RankOracle> RankOracle for Memoized<O> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn rank(&self, s: Subset) -> Result<usize> {
        if let Some(r) = self.memo.get(&s) {
            return Ok(*r);
        }
        let r = self.inner.rank(s)?;
        self.misses.fetch_add(1, Ordering::Relaxed);
        self.memo.insert(s, r);
        Ok(r)
    }

    fn confirm_circuit(&self, s: Subset) -> Result<Option<bool>> {
        self.inner.confirm_circuit(s)
    }
}

impl<T: RankOracle + ?Sized> RankOracle for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, s: Subset) -> Result<usize> {
        (**self).rank(s)
    }
    fn confirm_circuit(&self, s: Subset) -> Result<Option<bool>> {
        (**self).confirm_circuit(s)
    }
}

impl<T: RankOracle + ?Sized> RankOracle for Box<T> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, s: Subset) -> Result<usize> {
        (**self).rank(s)
    }
    fn confirm_circuit(&self, s: Subset) -> Result<Option<bool>> {
        (**self).confirm_circuit(s)
    }
}

/// Rank function of a matroid given by its bases: `ρ(S) = max |S ∩ B|`.
#[derive(Clone, Debug)]
pub struct BasesOracle {
    n: usize,
    bases: Vec<Subset>,
}

impl BasesOracle {
    pub fn new(n: usize, bases: Vec<Subset>) -> Self {
        BasesOracle { n, bases }
    }
}

impl RankOracle for BasesOracle {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, s: Subset) -> Result<usize> {
        Ok(self.bases.iter().map(|&b| subset::size(b & s)).max().unwrap_or(0))
    }
}

/// Rank function of a uniform matroid `U_{r,n}`.
#[derive(Clone, Copy, Debug)]
pub struct UniformOracle {
    pub rank: usize,
    pub n: usize,
}

impl RankOracle for UniformOracle {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, s: Subset) -> Result<usize> {
        Ok(subset::size(s).min(self.rank))
    }
}
