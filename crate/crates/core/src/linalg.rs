//! Exact column-subset ranks of matrices over a field.

use std::any::Any;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{mulmod, powmod, random_prime, Field};
use crate::matroid::subset::{self, Subset};
use crate::rational::Rational;

/// Rank of any set of columns of a fixed matrix.
pub trait ColumnRank: Send + Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn rank(&self, cols: Subset) -> usize;
}

/// Rank over GF(p) of the selected columns; `p` must be prime.
pub fn rank_mod_p(rows: &[Vec<u64>], cols: Subset, p: u64) -> usize {
    let idx = subset::to_indices(cols);
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| idx.iter().map(|&j| r[j]).collect()).collect();
    let mut rank = 0;
    for c in 0..idx.len() {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = powmod(a[rank][c], p - 2, p);
        for i in rank + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let f = mulmod(a[i][c], inv, p);
            for j in c..idx.len() {
                let s = mulmod(f, a[rank][j], p);
                a[i][j] = if a[i][j] >= s { a[i][j] - s } else { a[i][j] + p - s };
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Exact rank over ℤ of the selected columns by fraction-free elimination.
pub fn bareiss_rank(rows: &[Vec<BigInt>], cols: Subset) -> usize {
    let idx = subset::to_indices(cols);
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..idx.len() {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for i in rank + 1..a.len() {
            for j in c + 1..idx.len() {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Rank over an arbitrary field by Gaussian elimination.
pub fn field_rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], cols: Subset) -> usize {
    let idx = subset::to_indices(cols);
    let mut a: Vec<Vec<F::Elem>> = rows.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect();
    let mut rank = 0;
    for c in 0..idx.len() {
        let Some(piv) = (rank..a.len()).find(|&i| !field.is_zero(&a[i][c])) else { continue };
        a.swap(rank, piv);
        let inv = field.inv(&a[rank][c]).expect("pivot is nonzero");
        for i in rank + 1..a.len() {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for j in c..idx.len() {
                let s = field.mul(&f, &a[rank][j]);
                a[i][j] = field.sub(&a[i][j], &s);
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// A rational matrix, stored with each row scaled to integers. Ranks are
/// first computed modulo a random 62-bit prime; that value is a lower bound,
/// and it is final whenever it reaches `min(|cols|, rank of the matrix)`.
/// Otherwise the exact integer elimination decides.
pub struct RationalMatrix {
    rows: Vec<Vec<BigInt>>,
    reduced: Vec<Vec<u64>>,
    p: u64,
    full_rank: usize,
    exact_calls: AtomicU64,
}

impl RationalMatrix {
    pub fn new(rows: &[Vec<Rational>], seed: u64) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
                r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_prime(&mut rng);
        let pb = BigInt::from(p);
        let reduced = rows
            .iter()
            .map(|r| r.iter().map(|x| u64::try_from(x.mod_floor(&pb)).expect("reduced below p")).collect())
            .collect();
        let full_rank = bareiss_rank(&rows, subset::full(ncols));
        RationalMatrix { rows, reduced, p, full_rank, exact_calls: AtomicU64::new(0) }
    }

    /// Number of rank queries the modular bound could not settle.
    pub fn exact_calls(&self) -> u64 {
        self.exact_calls.load(Ordering::Relaxed)
    }

    pub fn full_rank(&self) -> usize {
        self.full_rank
    }
}

impl ColumnRank for RationalMatrix {
    fn nrows(&self) -> usize {
        self.rows.len()
    }

    fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    fn rank(&self, cols: Subset) -> usize {
        let bound = subset::size(cols).min(self.full_rank);
        if rank_mod_p(&self.reduced, cols, self.p) == bound {
            return bound;
        }
        self.exact_calls.fetch_add(1, Ordering::Relaxed);
        bareiss_rank(&self.rows, cols)
    }
}

/// A matrix over a general field.
pub struct FieldMatrix<F: Field> {
    field: F,
    rows: Vec<Vec<F::Elem>>,
    ncols: usize,
}

impl<F: Field> FieldMatrix<F> {
    pub fn new(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        FieldMatrix { field, rows, ncols }
    }
}

impl<F: Field> ColumnRank for FieldMatrix<F> {
    fn nrows(&self) -> usize {
        self.rows.len()
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    fn rank(&self, cols: Subset) -> usize {
        field_rank(&self.field, &self.rows, cols)
    }
}

/// The fastest exact rank structure available for a matrix over `field`.
pub fn column_rank_matrix<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, seed: u64) -> Box<dyn ColumnRank> {
    let any: &dyn Any = &rows;
    if let Some(q) = any.downcast_ref::<Vec<Vec<Rational>>>() {
        return Box::new(RationalMatrix::new(q, seed));
    }
    Box::new(FieldMatrix::new(field.clone(), rows))
}
