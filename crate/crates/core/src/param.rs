//! Rational parametrizations `t ↦ (g₁(t), …, gₙ(t))`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::parse::parse_rational_function;
use crate::poly::Ring;
use crate::ratfun::RationalFunction;

#[derive(Clone, Debug)]
pub struct Parametrization<F: Field> {
    param_ring: Ring<F>,
    labels: Vec<String>,
    coords: Vec<RationalFunction<F>>,
}

impl<F: Field> Parametrization<F> {
    pub fn new(param_ring: Ring<F>, labels: Vec<String>, coords: Vec<RationalFunction<F>>) -> Result<Self> {
        if labels.len() != coords.len() {
            return Err(Error::LengthMismatch { expected: labels.len(), got: coords.len() });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Invalid(format!("duplicate coordinate label `{l}`")));
            }
            if param_ring.var_index(l).is_some() {
                return Err(Error::Invalid(format!("coordinate label `{l}` is also a parameter")));
            }
        }
        for c in &coords {
            if !c.ring().same_as(&param_ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Parametrization { param_ring, labels, coords })
    }

    /// Parses `coords[i]` as a rational function of the parameters.
    pub fn parse(param_ring: Ring<F>, entries: &[(String, String)]) -> Result<Self> {
        let coords = entries
            .iter()
            .map(|(_, text)| parse_rational_function(text, &param_ring))
            .collect::<Result<Vec<_>>>()?;
        let labels = entries.iter().map(|(l, _)| l.clone()).collect();
        Self::new(param_ring, labels, coords)
    }

    pub fn param_ring(&self) -> &Ring<F> {
        &self.param_ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coords(&self) -> &[RationalFunction<F>] {
        &self.coords
    }

    pub fn nparams(&self) -> usize {
        self.param_ring.nvars()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates at a parameter point; fails where a denominator vanishes.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.coords.iter().map(|c| c.evaluate(point)).collect()
    }

    /// Keeps only the coordinates with the given indices.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        Parametrization {
            param_ring: self.param_ring.clone(),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            coords: indices.iter().map(|&i| self.coords[i].clone()).collect(),
        }
    }
}
