//! Rank oracles from elimination: `ρ(S) = |S| − ht(P ∩ k[S])`.

use crate::error::Result;
use crate::field::Field;
use crate::groebner::{buchberger, elimination_gb, implicitize, Budget, GroebnerBasis, IdealPresentation};
use crate::matroid::oracle::RankOracle;
use crate::matroid::subset::{self, Subset};
use crate::monomial::MonomialOrder;
use crate::param::Parametrization;

/// Elimination oracle for a prime ideal. Eliminations start from a grevlex
/// Gröbner basis of the ideal, computed once.
pub struct IdealOracle<F: Field> {
    seed: IdealPresentation<F>,
    budget: Budget,
}

impl<F: Field> IdealOracle<F> {
    pub fn new(ideal: &IdealPresentation<F>, budget: Budget) -> Result<Self> {
        let gb = buchberger(ideal, MonomialOrder::Grevlex, budget)?;
        if gb.is_unit() {
            return Err(crate::Error::UnitIdeal);
        }
        Ok(IdealOracle { seed: gb.to_ideal(), budget })
    }

    pub fn ideal(&self) -> &IdealPresentation<F> {
        &self.seed
    }

    /// Gröbner basis of `P ∩ k[S]` in the subring on `S`.
    pub fn elimination(&self, s: Subset) -> Result<GroebnerBasis<F>> {
        elimination_gb(&self.seed, &subset::to_indices(s), self.budget)
    }
}

impl<F: Field> RankOracle for IdealOracle<F> {
    fn ground_size(&self) -> usize {
        self.seed.ring().nvars()
    }

    fn rank(&self, s: Subset) -> Result<usize> {
        if s == 0 {
            return Ok(0);
        }
        self.elimination(s)?.dimension()
    }

    fn confirm_circuit(&self, s: Subset) -> Result<Option<bool>> {
        Ok(Some(is_principal_full_support(&self.elimination(s)?)))
    }
}

/// Elimination oracle for a parametrization: `P ∩ k[S]` is the ideal of the
/// closure of the image of the coordinates in `S`.
pub struct ParamOracle<F: Field> {
    param: Parametrization<F>,
    budget: Budget,
}

impl<F: Field> ParamOracle<F> {
    pub fn new(param: &Parametrization<F>, budget: Budget) -> Self {
        ParamOracle { param: param.clone(), budget }
    }

    /// Generators of `P ∩ k[S]` in a grevlex ring on the labels in `S`.
    pub fn elimination(&self, s: Subset) -> Result<GroebnerBasis<F>> {
        let sub = self.param.restrict(&subset::to_indices(s));
        let ideal = implicitize(&sub, self.budget)?;
        buchberger(&ideal, MonomialOrder::Grevlex, self.budget)
    }
}

impl<F: Field> RankOracle for ParamOracle<F> {
    fn ground_size(&self) -> usize {
        self.param.len()
    }

    fn rank(&self, s: Subset) -> Result<usize> {
        if s == 0 {
            return Ok(0);
        }
        self.elimination(s)?.dimension()
    }

    fn confirm_circuit(&self, s: Subset) -> Result<Option<bool>> {
        Ok(Some(is_principal_full_support(&self.elimination(s)?)))
    }
}

/// A reduced basis with one element that involves every variable.
pub fn is_principal_full_support<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    match gb.basis() {
        [g] => g.support_mask() == subset::full(gb.ring().nvars()),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::matroid::enumerate::{enumerate_bases, enumerate_circuits_naive};
    use crate::poly::PolyRing;

    #[test]
    fn circle_ranks() {
        let r = PolyRing::new(Rationals, ["x", "y"], MonomialOrder::Grevlex).unwrap();
        let ideal = IdealPresentation::parse(r, &["x^2+y^2-1"]).unwrap();
        let o = IdealOracle::new(&ideal, Budget::default()).unwrap();
        assert_eq!(o.rank(0b01).unwrap(), 1);
        assert_eq!(o.rank(0b11).unwrap(), 1);
        assert_eq!(o.rank(0).unwrap(), 0);
        assert_eq!(enumerate_bases(&o).unwrap(), vec![0b01, 0b10]);
        assert_eq!(enumerate_circuits_naive(&o, None).unwrap(), vec![0b11]);
        assert_eq!(o.confirm_circuit(0b11).unwrap(), Some(true));
    }

    #[test]
    fn parametrized_plane() {
        let r = PolyRing::new(Rationals, ["s", "t"], MonomialOrder::Grevlex).unwrap();
        let phi = Parametrization::parse(
            r,
            &[("x".into(), "s".into()), ("y".into(), "t".into()), ("z".into(), "s+t".into()), ("w".into(), "s^2".into())],
        )
        .unwrap();
        let o = ParamOracle::new(&phi, Budget::default());
        assert_eq!(o.full_rank().unwrap(), 2);
        let circuits = enumerate_circuits_naive(&o, None).unwrap();
        // {x,w} plus the 3-sets avoiding it.
        assert_eq!(circuits, vec![0b1001, 0b0111, 0b1110]);
    }

    #[test]
    fn char_two_line() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), ["a", "b", "c"], MonomialOrder::Grevlex).unwrap();
        let ideal = IdealPresentation::parse(r, &["a+b+c"]).unwrap();
        let o = IdealOracle::new(&ideal, Budget::default()).unwrap();
        assert_eq!(o.full_rank().unwrap(), 2);
        assert_eq!(enumerate_circuits_naive(&o, None).unwrap(), vec![0b111]);
    }
}
