//! Quotients of polynomials, used for rational parametrizations.
//!
//! No gcd cancellation is attempted; constant denominators are folded into
//! the numerator so that polynomial inputs stay polynomial.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Polynomial, Ring};

#[derive(Clone)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("({num})/0")));
        }
        num.checked_add(&Polynomial::zero(den.ring()))?;
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        if num.is_zero() {
            let one = Polynomial::one(den.ring());
            return RationalFunction { num, den: one };
        }
        if let Some(c) = den.constant_value() {
            let inv = den.field().inv(&c).unwrap();
            let one = Polynomial::one(den.ring());
            return RationalFunction { num: num.scale(&inv), den: one };
        }
        // Keep the denominator monic so equal inputs print identically.
        let lc = den.leading_coefficient().unwrap().clone();
        let inv = den.field().inv(&lc).unwrap();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_polynomial(p: Polynomial<F>) -> Self {
        let one = Polynomial::one(p.ring());
        RationalFunction { num: p, den: one }
    }

    pub fn ring(&self) -> &Ring<F> {
        self.num.ring()
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn into_polynomial(self) -> Option<Polynomial<F>> {
        if self.den.is_constant() {
            Some(self.num)
        } else {
            self.num.div_exact(&self.den)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return Ok(Self::normalized(self.num.checked_add(&o.num)?, self.den.clone()));
        }
        let num = self.num.checked_mul(&o.den)?.checked_add(&o.num.checked_mul(&self.den)?)?;
        Ok(Self::normalized(num, self.den.checked_mul(&o.den)?))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(Self::normalized(self.num.checked_mul(&o.num)?, self.den.checked_mul(&o.den)?))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator(format!("({self})/0")));
        }
        Ok(Self::normalized(self.num.checked_mul(&o.den)?, self.den.checked_mul(&o.num)?))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    /// Quotient rule.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        let dn = self.num.partial_derivative(var)?;
        let dd = self.den.partial_derivative(var)?;
        if dd.is_zero() {
            return Ok(Self::normalized(dn, self.den.clone()));
        }
        let num = dn.checked_mul(&self.den)?.checked_sub(&self.num.checked_mul(&dd)?)?;
        Ok(Self::normalized(num, self.den.pow(2)))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let d = self.den.evaluate(point)?;
        let n = self.num.evaluate(point)?;
        self.num
            .field()
            .div(&n, &d)
            .ok_or_else(|| Error::ZeroDenominator(self.den.to_string()))
    }

    /// Equality as functions (cross multiplication).
    pub fn equals(&self, o: &Self) -> bool {
        match (self.num.checked_mul(&o.den), o.num.checked_mul(&self.den)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl<F: Field> Polynomial<F> {
    /// Substitutes rational functions (all in one ring) for every variable.
    pub fn compose_rational(&self, images: &[RationalFunction<F>]) -> Result<RationalFunction<F>> {
        let n = self.ring().nvars();
        if images.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: images.len() });
        }
        let target = match images.first() {
            Some(r) => r.ring().clone(),
            None => return Ok(RationalFunction::from_polynomial(Polynomial::zero(self.ring()))),
        };
        // Common denominator D = ∏ den_i^{deg_i f}; each term becomes a
        // polynomial multiple of D⁻¹.
        let degs: Vec<u32> = (0..n).map(|i| self.degree_in(i)).collect();
        let mut den = Polynomial::one(&target);
        for (img, &d) in images.iter().zip(&degs) {
            if d > 0 && !img.den.is_constant() {
                den = den.checked_mul(&img.den.pow(d))?;
            }
        }
        let mut num_pows: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(&target)]; n];
        let mut den_pows: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(&target)]; n];
        let mut acc = Polynomial::zero(&target);
        for (m, c) in self.terms() {
            let mut t = Polynomial::constant(&target, c.clone());
            for i in 0..n {
                let e = m.exponent(i) as usize;
                let img = &images[i];
                if img.den.is_constant() {
                    if e == 0 {
                        continue;
                    }
                } else if degs[i] as usize - e > 0 {
                    let k = degs[i] as usize - e;
                    while den_pows[i].len() <= k {
                        let next = den_pows[i].last().unwrap().checked_mul(&img.den)?;
                        den_pows[i].push(next);
                    }
                    t = t.checked_mul(&den_pows[i][k])?;
                }
                if e > 0 {
                    while num_pows[i].len() <= e {
                        let next = num_pows[i].last().unwrap().checked_mul(&img.num)?;
                        num_pows[i].push(next);
                    }
                    t = t.checked_mul(&num_pows[i][e])?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        RationalFunction::new(acc, den)
    }
}
