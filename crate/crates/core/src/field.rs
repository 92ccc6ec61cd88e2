//! Coefficient fields: ℚ, prime fields GF(p), and small extensions GF(pᵏ).

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest prime accepted by [`PrimeField`].
pub const MAX_PRIME: u64 = 1 << 62;
/// Largest extension-field cardinality accepted by [`ExtensionField`].
pub const MAX_EXTENSION_ORDER: u64 = 1 << 16;

/// Field arithmetic over an element type. Implementors are cheap-to-clone
/// contexts; elements carry no back-reference to their field.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// 0 for ℚ.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration of a finite field.
    fn nth_element(&self, i: u64) -> Self::Elem;
    /// Named generator of an extension field, e.g. `("L", λ)`.
    fn generator(&self) -> Option<(&str, Self::Elem)> {
        None
    }
    fn format(&self, a: &Self::Elem) -> String;
    /// Whether [`Field::format`] renders a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }
    /// A random element; over ℚ an integer in `[-window, window]`.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, window: u64) -> Self::Elem;
    /// Image under the reduction map to GF(p), when the element is p-integral.
    fn reduce_mod(&self, _a: &Self::Elem, _p: u64) -> Option<u64> {
        None
    }
    /// Unit that brings a coefficient vector to canonical form given its
    /// distinguished `lead` entry (nonzero). Defaults to making `lead` one.
    fn unit_normalizer(&self, _coeffs: &[&Self::Elem], lead: &Self::Elem) -> Self::Elem {
        self.inv(lead).expect("lead coefficient is nonzero")
    }
}

/// Serializable description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Rationals,
    PrimeField { p: u64 },
    /// `modulus` holds coefficients of the defining polynomial, constant term first.
    ExtensionField { p: u64, modulus: Vec<u64>, generator: String },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField { p } => write!(f, "GF({p})"),
            FieldSpec::ExtensionField { p, modulus, generator } => {
                let q = p.pow(modulus.len() as u32 - 1);
                write!(f, "GF({q}, {})", format_digits(modulus, *p, generator))
            }
        }
    }
}

fn format_digits(digits: &[u64], _p: u64, gen: &str) -> String {
    let mut out = String::new();
    for (i, &c) in digits.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        let mono = match i {
            0 => String::new(),
            1 => gen.to_string(),
            _ => format!("{gen}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&c.to_string());
        } else if c == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{c}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

// ---------------------------------------------------------------------------
// Modular helpers
// ---------------------------------------------------------------------------

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^61, 2^62)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(c) {
            return c;
        }
    }
}

// ---------------------------------------------------------------------------
// ℚ
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_int(n)
    }
    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_bigint(n)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn nth_element(&self, i: u64) -> Rational {
        // 0, 1, -1, 2, -2, ...
        let k = i.div_ceil(2) as i64;
        Rational::from_int(if i % 2 == 1 { k } else { -k })
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &Rational) -> bool {
        a.is_negative()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, window: u64) -> Rational {
        let w = window.min(i64::MAX as u64) as i64;
        Rational::from_int(rng.gen_range(-w..=w))
    }
    fn reduce_mod(&self, a: &Rational, p: u64) -> Option<u64> {
        a.mod_p(p)
    }
    /// Scales to coprime integers with `lead` positive.
    fn unit_normalizer(&self, coeffs: &[&Rational], lead: &Rational) -> Rational {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in coeffs {
            den = den.lcm(&c.denom());
            num = num.gcd(&c.numer());
        }
        let u = Rational::new(den, num);
        if lead.is_negative() { u.neg() } else { u }
    }
}

// ---------------------------------------------------------------------------
// GF(p)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^62")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(powmod(*a, self.p - 2, self.p))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn nth_element(&self, i: u64) -> u64 {
        i % self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _window: u64) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn reduce_mod(&self, a: &u64, p: u64) -> Option<u64> {
        (p == self.p).then_some(*a)
    }
}

// ---------------------------------------------------------------------------
// GF(p^k) = GF(p)[λ]/(modulus)
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct ExtTables {
    p: u64,
    degree: usize,
    q: u64,
    modulus: Vec<u64>,
    generator: String,
    /// `exp[i] = g^i` for a primitive element `g`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
}

/// Elements are encoded as integers `Σ cᵢ pⁱ` where `Σ cᵢ λⁱ` is the
/// reduced representative.
#[derive(Clone, Debug)]
pub struct ExtensionField {
    tables: Arc<ExtTables>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.tables.p == other.tables.p
                && self.tables.modulus == other.tables.modulus
                && self.tables.generator == other.tables.generator)
    }
}

fn digits_of(mut a: u64, p: u64, k: usize) -> Vec<u64> {
    let mut d = vec![0; k];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn encode_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p), coefficient
/// vectors with constant term first.
fn poly_rem_mod_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = mulmod(lead, c, p);
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
        }
    }
    r
}

/// Irreducibility of a monic polynomial over GF(p) by trial division with
/// every monic polynomial of degree at most half.
pub fn is_irreducible_mod_p(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut f = digits_of(code, p, d);
            f.push(1);
            if poly_rem_mod_p(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtensionField {
    /// `modulus` lists coefficients constant-term first; it must be monic and
    /// irreducible over GF(p).
    pub fn new(p: u64, modulus: Vec<u64>, generator: &str) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 {
            return Err(Error::InvalidField("modulus must have positive degree".into()));
        }
        let lead = *modulus.last().unwrap();
        if lead != 1 {
            let inv = powmod(lead, p - 2, p);
            for c in modulus.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
        let q = (p as u128).pow(degree as u32);
        if q > MAX_EXTENSION_ORDER as u128 {
            return Err(Error::InvalidField(format!("GF({p}^{degree}) is too large")));
        }
        let q = q as u64;
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "{} is reducible over GF({p})",
                format_digits(&modulus, p, generator)
            )));
        }
        let mul_raw = |a: u64, b: u64| -> u64 {
            let prod = poly_mul_mod_p(&digits_of(a, p, degree), &digits_of(b, p, degree), p);
            encode_digits(&poly_rem_mod_p(&prod, &modulus, p), p)
        };
        // Find a primitive element by brute force; q is small.
        let mut exp = Vec::new();
        for g in 1..q {
            let mut powers = vec![1u32];
            let mut x = g;
            while x != 1 {
                powers.push(x as u32);
                x = mul_raw(x, g);
            }
            if powers.len() as u64 == q - 1 {
                exp = powers;
                break;
            }
        }
        debug_assert_eq!(exp.len() as u64, q - 1);
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        Ok(ExtensionField {
            tables: Arc::new(ExtTables {
                p,
                degree,
                q,
                modulus,
                generator: generator.to_string(),
                exp: doubled,
                log,
            }),
        })
    }

    pub fn degree(&self) -> usize {
        self.tables.degree
    }

    pub fn prime(&self) -> u64 {
        self.tables.p
    }

    pub fn digits(&self, a: u32) -> Vec<u64> {
        digits_of(a as u64, self.tables.p, self.tables.degree)
    }
}

impl Field for ExtensionField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::ExtensionField {
            p: self.tables.p,
            modulus: self.tables.modulus.clone(),
            generator: self.tables.generator.clone(),
        }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let t = &self.tables;
        if t.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y) = (*a as u64, *b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..t.degree {
            out += ((x % t.p + y % t.p) % t.p) * place;
            x /= t.p;
            y /= t.p;
            place *= t.p;
        }
        out as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        let t = &self.tables;
        if t.p == 2 {
            return *a;
        }
        let d: Vec<u64> = digits_of(*a as u64, t.p, t.degree)
            .into_iter()
            .map(|c| (t.p - c) % t.p)
            .collect();
        encode_digits(&d, t.p) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let t = &self.tables;
        t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let t = &self.tables;
        let n = (t.q - 1) as u32;
        Some(t.exp[((n - t.log[*a as usize]) % n) as usize])
    }
    fn from_i64(&self, n: i64) -> u32 {
        (n as i128).rem_euclid(self.tables.p as i128) as u32
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        n.mod_floor(&BigInt::from(self.tables.p)).to_u32().unwrap()
    }
    fn characteristic(&self) -> u64 {
        self.tables.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.tables.q)
    }
    fn nth_element(&self, i: u64) -> u32 {
        (i % self.tables.q) as u32
    }
    fn generator(&self) -> Option<(&str, u32)> {
        let t = &self.tables;
        let g = if t.degree == 1 {
            // λ is the root of a linear modulus λ + c.
            ((t.p - t.modulus[0]) % t.p) as u32
        } else {
            t.p as u32
        };
        Some((t.generator.as_str(), g))
    }
    fn format(&self, a: &u32) -> String {
        let t = &self.tables;
        if t.degree == 1 {
            return a.to_string();
        }
        format_digits(&digits_of(*a as u64, t.p, t.degree), t.p, &t.generator)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _window: u64) -> u32 {
        rng.gen_range(0..self.tables.q) as u32
    }
}

/// A runtime-selected field, for front ends that dispatch on [`FieldSpec`].
#[derive(Clone, Debug)]
pub enum AnyField {
    Rationals(Rationals),
    Prime(PrimeField),
    Extension(ExtensionField),
}

impl AnyField {
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Ok(match spec {
            FieldSpec::Rationals => AnyField::Rationals(Rationals),
            FieldSpec::PrimeField { p } => AnyField::Prime(PrimeField::new(*p)?),
            FieldSpec::ExtensionField { p, modulus, generator } => {
                AnyField::Extension(ExtensionField::new(*p, modulus.clone(), generator)?)
            }
        })
    }
}
