//! Packed exponent vectors and monomial orders.
//!
//! A monomial stores one byte per variable in six 64-bit words, so rings are
//! limited to [`MAX_VARS`] variables and exponents to [`MAX_EXPONENT`]. With
//! exponents below 128, divisibility, products and lcms reduce to a handful of
//! word-parallel operations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORDS: usize = 6;
pub const MAX_VARS: usize = WORDS * 8;
pub const MAX_EXPONENT: u32 = 127;

const HIGH: u64 = 0x8080_8080_8080_8080;
const LOW7: u64 = 0x7F7F_7F7F_7F7F_7F7F;

#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct Monomial {
    w: [u64; WORDS],
    deg: u32,
}

#[inline]
fn byte_sum(w: u64) -> u32 {
    let pairs = (w & 0x00FF_00FF_00FF_00FF) + ((w >> 8) & 0x00FF_00FF_00FF_00FF);
    (pairs.wrapping_mul(0x0001_0001_0001_0001) >> 48) as u32
}

/// High bit of each byte set iff the byte is nonzero.
#[inline]
fn nonzero_bytes(w: u64) -> u64 {
    (((w & LOW7) + LOW7) | w) & HIGH
}

#[inline]
fn byte_at(w: u64, byte: u32) -> u32 {
    ((w >> (byte * 8)) & 0xFF) as u32
}

/// Mask of the bytes of word `i` belonging to variables `< limit`.
#[inline]
fn prefix_mask(i: usize, limit: usize) -> u64 {
    let lo = i * 8;
    if limit >= lo + 8 {
        u64::MAX
    } else if limit <= lo {
        0
    } else {
        (1u64 << ((limit - lo) * 8)) - 1
    }
}

impl std::hash::Hash for Monomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Mix the packed words into one; the degree is implied by them.
        let mut h = 0u64;
        for w in self.w {
            h = (h.rotate_left(5) ^ w).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
        state.write_u64(h);
    }
}

/// Pass-through hasher for keys that already hash to one mixed `u64`.
#[derive(Default, Clone, Copy)]
pub struct PassThroughHasher(u64);

impl std::hash::Hasher for PassThroughHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u64(&mut self, v: u64) {
        self.0 ^= v;
    }
}

pub type MonomialMap<V> = std::collections::HashMap<Monomial, V, std::hash::BuildHasherDefault<PassThroughHasher>>;

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            m.w[i / 8] |= (e as u64) << ((i % 8) * 8);
            m.deg += e;
        }
        Ok(m)
    }

    /// The monomial `x_i^e`.
    pub fn var_power(i: usize, e: u32) -> Result<Self> {
        if i >= MAX_VARS {
            return Err(Error::TooManyVariables(i + 1));
        }
        if e > MAX_EXPONENT {
            return Err(Error::ExponentOverflow);
        }
        let mut m = Monomial::one();
        m.w[i / 8] = (e as u64) << ((i % 8) * 8);
        m.deg = e;
        Ok(m)
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        byte_at(self.w[i / 8], (i % 8) as u32)
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product, or `None` when some exponent would exceed [`MAX_EXPONENT`].
    #[inline]
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut out = Monomial { w: [0; WORDS], deg: self.deg + other.deg };
        let mut overflow = 0;
        for i in 0..WORDS {
            let s = self.w[i] + other.w[i];
            overflow |= s & HIGH;
            out.w[i] = s;
        }
        (overflow == 0).then_some(out)
    }

    /// Panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        if self.deg > other.deg {
            return false;
        }
        (0..WORDS).all(|i| ((other.w[i] | HIGH) - self.w[i]) & HIGH == HIGH)
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let mut out = Monomial { w: [0; WORDS], deg: self.deg - other.deg };
        for i in 0..WORDS {
            out.w[i] = self.w[i] - other.w[i];
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = Monomial::one();
        for i in 0..WORDS {
            let (a, b) = (self.w[i], other.w[i]);
            let ge = (((a | HIGH) - b) & HIGH) >> 7;
            let mask = ge * 0xFF;
            out.w[i] = (a & mask) | (b & !mask);
            out.deg += byte_sum(out.w[i]);
        }
        out
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut out = Monomial::one();
        for i in 0..WORDS {
            let (a, b) = (self.w[i], other.w[i]);
            let ge = (((a | HIGH) - b) & HIGH) >> 7;
            let mask = ge * 0xFF;
            out.w[i] = (b & mask) | (a & !mask);
            out.deg += byte_sum(out.w[i]);
        }
        out
    }

    /// No variable occurs in both.
    #[inline]
    pub fn is_coprime(&self, other: &Self) -> bool {
        (0..WORDS).all(|i| nonzero_bytes(self.w[i]) & nonzero_bytes(other.w[i]) == 0)
    }

    /// Bit `i` set iff variable `i` occurs.
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for i in 0..WORDS {
            let mut nz = nonzero_bytes(self.w[i]);
            while nz != 0 {
                let byte = nz.trailing_zeros() / 8;
                mask |= 1 << (i * 8 + byte as usize);
                nz &= nz - 1;
            }
        }
        mask
    }

    /// Sum of exponents of variables `< limit`.
    pub fn prefix_degree(&self, limit: usize) -> u32 {
        (0..WORDS).map(|i| byte_sum(self.w[i] & prefix_mask(i, limit))).sum()
    }

    /// Rebuilds the monomial with variable `i` moved to position `map[i]`.
    pub fn permute(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Monomial::one();
        for i in 0..nvars {
            let e = self.exponent(i) as u64;
            if e != 0 {
                let j = map[i];
                out.w[j / 8] |= e << ((j % 8) * 8);
            }
        }
        out.deg = self.deg;
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.exponent(i) != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", self.exponents(last))
    }
}

/// A monomial order on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Elimination order: grevlex on the first `front` variables, ties broken
    /// by grevlex on the rest.
    Block { front: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => {
                for i in 0..WORDS {
                    let x = a.w[i] ^ b.w[i];
                    if x != 0 {
                        let byte = x.trailing_zeros() / 8;
                        return byte_at(a.w[i], byte).cmp(&byte_at(b.w[i], byte));
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Grevlex => {
                a.deg.cmp(&b.deg).then_with(|| revlex_tail(a, b, |_| u64::MAX))
            }
            MonomialOrder::Block { front } => {
                let fa = a.prefix_degree(front);
                let fb = b.prefix_degree(front);
                fa.cmp(&fb)
                    .then_with(|| revlex_tail(a, b, |i| prefix_mask(i, front)))
                    .then_with(|| (a.deg - fa).cmp(&(b.deg - fb)))
                    .then_with(|| revlex_tail(a, b, |i| !prefix_mask(i, front)))
            }
        }
    }

    /// Whether every monomial involving a front variable exceeds every
    /// monomial free of them.
    pub fn eliminates(&self, nfront: usize) -> bool {
        match *self {
            MonomialOrder::Lex => true,
            MonomialOrder::Grevlex => nfront == 0,
            MonomialOrder::Block { front } => front >= nfront,
        }
    }
}

/// Reverse-lexicographic tiebreak restricted to the bytes selected by `mask`:
/// the monomial with the smaller exponent in the last differing variable wins.
#[inline]
fn revlex_tail(a: &Monomial, b: &Monomial, mask: impl Fn(usize) -> u64) -> Ordering {
    for i in (0..WORDS).rev() {
        let m = mask(i);
        let x = (a.w[i] ^ b.w[i]) & m;
        if x != 0 {
            let byte = (63 - x.leading_zeros()) / 8;
            return byte_at(b.w[i], byte).cmp(&byte_at(a.w[i], byte));
        }
    }
    Ordering::Equal
}
