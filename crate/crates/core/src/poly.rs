//! Sparse multivariate polynomials over a [`Field`].
//!
//! A polynomial is a list of `(monomial, coefficient)` pairs sorted strictly
//! descending in its ring's monomial order, with no zero coefficients. This
//! makes structural equality coincide with mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// A polynomial ring `k[x₁,…,xₙ]` with a fixed monomial order.
#[derive(Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring<F> = Arc<PolyRing<F>>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: Into<String>>(
        field: F,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Ring<F>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !valid_identifier(v) {
                return Err(Error::Invalid(format!("`{v}` is not a valid variable name")));
            }
            if field.generator().is_some_and(|(g, _)| g == v) {
                return Err(Error::Invalid(format!("`{v}` names the field generator")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring<F> {
        Arc::new(PolyRing { field: self.field.clone(), vars: self.vars.clone(), order })
    }

    pub fn same_as(&self, other: &PolyRing<F>) -> bool {
        std::ptr::eq(self, other)
            || (self.order == other.order && self.vars == other.vars && self.field == other.field)
    }
}

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// Per-variable degree statistics of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSummary {
    pub total_degree: u32,
    pub per_variable: Vec<u32>,
    /// Exponent vectors with nonzero coefficient, sorted ascending.
    pub support: Vec<Vec<u32>>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        let terms = if ring.field.is_zero(&c) { vec![] } else { vec![(Monomial::one(), c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Ring<F>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var_power(i, 1).unwrap(), ring.field.one())],
        }
    }

    pub fn var_named(ring: &Ring<F>, name: &str) -> Result<Self> {
        ring.var_index(name)
            .map(|i| Self::var(ring, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn term(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(ring, [(m, c)])
    }

    /// Collects arbitrary terms: sums duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &Ring<F>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let field = &ring.field;
        let order = ring.order;
        let mut v: Vec<(Monomial, F::Elem)> = terms.into_iter().collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusts that `terms` are sorted, distinct and nonzero.
    pub(crate) fn from_sorted_unchecked(ring: &Ring<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field.is_zero(c)));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<F::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.ring.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let field = &self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { field.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { field.sub(&a[i].1, &b[j].1) } else { field.add(&a[i].1, &b[j].1) };
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if subtract { field.neg(&t.1) } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let field = &self.ring.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                acc.entry(m)
                    .and_modify(|e| *e = field.add(e, &c))
                    .or_insert(c);
            }
        }
        Self::from_terms(&self.ring, acc)
    }

    /// `self · c · m`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), field.mul(tc, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    /// `self − c · m · g` in one merge pass.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let field = &self.ring.field;
        let order = self.ring.order;
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let next_b = |j: usize| (b[j].0.mul(m), field.mul(&b[j].1, c));
        let mut pending = (j < b.len()).then(|| next_b(j));
        while let Some((bm, bc)) = pending.as_ref() {
            if i < a.len() {
                match order.compare(&a[i].0, bm) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let v = field.sub(&a[i].1, bc);
                        if !field.is_zero(&v) {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                    }
                    Ordering::Less => out.push((*bm, field.neg(bc))),
                }
            } else {
                out.push((*bm, field.neg(bc)));
            }
            j += 1;
            pending = (j < b.len()).then(|| next_b(j));
        }
        out.extend_from_slice(&a[i..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let field = &self.ring.field;
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc).unwrap()),
        }
    }

    /// Canonical associate: integer coprime coefficients with a positive
    /// lex-leading coefficient over ℚ, monic under lex over finite fields.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lex_lead = self
            .terms
            .iter()
            .max_by(|a, b| MonomialOrder::Lex.compare(&a.0, &b.0))
            .map(|(_, c)| c)
            .unwrap();
        let coeffs: Vec<&F::Elem> = self.terms.iter().map(|(_, c)| c).collect();
        let u = self.field().unit_normalizer(&coeffs, lex_lead);
        self.scale(&u)
    }

    /// Formal partial derivative; exponents divisible by the characteristic
    /// annihilate their term.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.ring.nvars() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        let field = &self.ring.field;
        let x = Monomial::var_power(var, 1)?;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(var);
                if e == 0 {
                    return None;
                }
                let c = field.mul(c, &field.from_i64(e as i64));
                (!field.is_zero(&c)).then(|| (m.div(&x).unwrap(), c))
            })
            .collect();
        // Dividing by x is monotone and injective on monomials containing x,
        // so order and distinctness are preserved.
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn partial_derivative_named(&self, var: &str) -> Result<Self> {
        let i = self.ring.var_index(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        self.partial_derivative(i)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: point.len() });
        }
        let field = &self.ring.field;
        let mut powers: Vec<Vec<F::Elem>> = vec![vec![field.one()]; n];
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, table) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while table.len() <= e {
                    let next = field.mul(table.last().unwrap(), &point[i]);
                    table.push(next);
                }
                t = field.mul(&t, &table[e]);
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes constants for the variables marked `Some`, keeping the ring.
    pub fn substitute(&self, values: &[Option<F::Elem>]) -> Self {
        let field = &self.ring.field;
        let n = self.ring.nvars();
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut exps = m.exponents(n);
            let mut coeff = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    let e = exps[i];
                    if e > 0 {
                        let mut p = field.one();
                        for _ in 0..e {
                            p = field.mul(&p, v);
                        }
                        coeff = field.mul(&coeff, &p);
                        exps[i] = 0;
                    }
                }
            }
            terms.push((Monomial::from_exponents(&exps).unwrap(), coeff));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    /// Variables mapped to `None` must not occur.
    pub fn map_into(&self, target: &Ring<F>, map: &[Option<usize>]) -> Result<Self> {
        let n = self.ring.nvars();
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, slot) in map.iter().enumerate().take(n) {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                match slot {
                    Some(j) => exps[*j] += e,
                    None => {
                        return Err(Error::Invalid(format!(
                            "variable `{}` has no image in the target ring",
                            self.ring.vars[i]
                        )))
                    }
                }
            }
            terms.push((Monomial::from_exponents(&exps)?, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Moves into a ring whose variables are a superset (matched by name).
    pub fn map_by_name(&self, target: &Ring<F>) -> Result<Self> {
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.var_index(v)).collect();
        self.map_into(target, &map)
    }

    /// Re-sorts under the same variables with another order.
    pub fn reorder(&self, target: &Ring<F>) -> Self {
        debug_assert_eq!(self.ring.vars, target.vars);
        let mut terms = self.terms.clone();
        let order = target.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Substitutes polynomials (all in one ring) for every variable.
    pub fn compose(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: images.len() });
        }
        let target = images.first().map(|p| p.ring.clone()).ok_or(Error::LengthMismatch { expected: n, got: 0 })?;
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(&target)]; n];
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for i in 0..n {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.mul_impl(&powers[i][e]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading_term()?;
        let dinv = self.field().inv(dc).unwrap();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm)?;
            let qc = self.field().mul(rc, &dinv);
            rem = rem.sub_mul_term(&qc, &qm, d);
            quot.push((qm, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// Bit mask of the variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn degree_summary(&self) -> Result<DegreeSummary> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("degree"));
        }
        let n = self.ring.nvars();
        let mut support: Vec<Vec<u32>> = self.terms.iter().map(|(m, _)| m.exponents(n)).collect();
        support.sort();
        Ok(DegreeSummary {
            total_degree: self.total_degree().unwrap(),
            per_variable: (0..n).map(|i| self.degree_in(i)).collect(),
            support,
        })
    }
}

fn fmt_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(v.clone()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        let minus_one = field.neg(&field.one());
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = fmt_monomial(m, &self.ring.vars);
            let piece = if mono.is_empty() {
                field.format(c)
            } else if field.is_one(c) {
                mono
            } else if *c == minus_one && field.characteristic() != 2 {
                format!("-{mono}")
            } else {
                let s = field.format(c);
                let compound = s.chars().skip(1).any(|ch| ch == '+' || ch == '-');
                if compound {
                    format!("({s})*{mono}")
                } else {
                    format!("{s}*{mono}")
                }
            };
            if k > 0 && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(&piece);
        }
        f.write_str(&out)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> ops::$tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                self.$checked(&rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}
