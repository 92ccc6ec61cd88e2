//! Buchberger's algorithm with Gebauer–Möller pair pruning and sugar
//! selection, plus the ideal-theoretic queries built on top of it:
//! elimination, Krull dimension, zero-dimensional degree and
//! implicitization.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialMap, MonomialOrder};
use crate::param::Parametrization;
use crate::poly::{PolyRing, Polynomial, Ring};

/// Resource caps for a single Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// S-pairs reduced (including pairs reducing to zero).
    pub max_pairs: u64,
    /// Polynomials ever added to the basis.
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 2_000_000, max_basis: 100_000 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_pairs: u64::MAX, max_basis: usize::MAX }
    }
}

/// Generators of an ideal. An empty generator list denotes the zero ideal.
#[derive(Clone, Debug)]
pub struct IdealPresentation<F: Field> {
    ring: Ring<F>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(ring: Ring<F>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &generators {
            if !g.ring().same_as(&ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                return Err(Error::Invalid("ideal generators must be nonzero".into()));
            }
        }
        Ok(IdealPresentation { ring, generators })
    }

    pub fn zero(ring: Ring<F>) -> Self {
        IdealPresentation { ring, generators: Vec::new() }
    }

    pub fn parse(ring: Ring<F>, texts: &[impl AsRef<str>]) -> Result<Self> {
        let gens = texts
            .iter()
            .map(|t| crate::parse::parse_polynomial(t.as_ref(), &ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }
}

/// A reduced Gröbner basis: monic, interreduced, sorted by ascending
/// leading monomial. `[1]` is the unit ideal and `[]` the zero ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    basis: Vec<Polynomial<F>>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.basis == other.basis
    }
}

impl<F: Field> Eq for GroebnerBasis<F> {}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<F: Field> {
    ring: Ring<F>,
    polys: Vec<Polynomial<F>>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    budget: Budget,
    reduced_pairs: u64,
}

/// Heap entry ordered by a monomial order.
struct Key(Monomial, MonomialOrder);

impl PartialEq for Key {
    fn eq(&self, o: &Self) -> bool {
        self.0 == o.0
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.1.compare(&self.0, &o.0)
    }
}

/// Full reduction of `p` modulo the reducers returned by `find`.
///
/// The running remainder is a coefficient map plus a max-heap of its
/// monomials, so each reduction step costs the reducer's length rather than
/// the remainder's.
fn reduce_full<'a, F: Field>(
    p: Polynomial<F>,
    mut find: impl FnMut(&Monomial) -> Option<&'a Polynomial<F>>,
) -> Polynomial<F> {
    let ring = p.ring().clone();
    let field = ring.field().clone();
    let order = ring.order();
    let mut coeffs: MonomialMap<F::Elem> = MonomialMap::default();
    let mut heap = BinaryHeap::with_capacity(p.len());
    for (m, c) in p.into_terms() {
        heap.push(Key(m, order));
        coeffs.insert(m, c);
    }
    let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some(Key(m, _)) = heap.pop() {
        let Some(c) = coeffs.remove(&m) else { continue };
        match find(&m) {
            Some(g) => {
                let (gm, gc) = g.leading_term().unwrap();
                let q = m.div(gm).unwrap();
                let coef = if field.is_one(gc) { c } else { field.div(&c, gc).unwrap() };
                for (tm, tc) in &g.terms()[1..] {
                    let nm = tm.mul(&q);
                    let v = field.mul(&coef, tc);
                    match coeffs.entry(nm) {
                        Entry::Occupied(mut e) => {
                            let nv = field.sub(e.get(), &v);
                            if field.is_zero(&nv) {
                                e.remove();
                            } else {
                                *e.get_mut() = nv;
                            }
                        }
                        Entry::Vacant(e) => {
                            e.insert(field.neg(&v));
                            heap.push(Key(nm, order));
                        }
                    }
                }
            }
            None => {
                rem.push((m, c));
            }
        }
    }
    Polynomial::from_sorted_unchecked(&ring, rem)
}

impl<F: Field> Engine<F> {
    fn find_reducer(&self, m: &Monomial, skip: Option<usize>) -> Option<&Polynomial<F>> {
        let mask = m.support_mask();
        self.active.iter().filter(|&&k| Some(k) != skip).map(|&k| &self.polys[k]).find(|g| {
            let lm = g.leading_monomial().unwrap();
            lm.support_mask() & !mask == 0 && lm.divides(m)
        })
    }

    fn reduce(&self, p: Polynomial<F>) -> Polynomial<F> {
        reduce_full(p, |m| self.find_reducer(m, None))
    }

    fn add(&mut self, h: Polynomial<F>, sugar: u32) -> Result<()> {
        if self.polys.len() >= self.budget.max_basis {
            return Err(Error::Budget(format!("basis size exceeded {}", self.budget.max_basis)));
        }
        let h = h.monic();
        let idx = self.polys.len();
        let lm_h = *h.leading_monomial().unwrap();
        self.polys.push(h);
        self.sugar.push(sugar);

        // Gebauer–Möller update (Becker–Weispfenning formulation).
        let mut c: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lm_h.lcm(self.polys[g].leading_monomial().unwrap())))
            .collect();
        let mut d: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g1, l1)) = c.pop() {
            let coprime = lm_h.is_coprime(self.polys[g1].leading_monomial().unwrap());
            if coprime
                || (!c.iter().any(|(_, l2)| l2.divides(&l1)) && !d.iter().any(|(_, l2, _)| l2.divides(&l1)))
            {
                d.push((g1, l1, coprime));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = polys[p.i].leading_monomial().unwrap();
            let lj = polys[p.j].leading_monomial().unwrap();
            !(lm_h.divides(&p.lcm) && lm_h.lcm(li) != p.lcm && lm_h.lcm(lj) != p.lcm)
        });
        for (g, l, coprime) in d {
            if coprime {
                continue;
            }
            let lg = self.polys[g].leading_monomial().unwrap();
            let s1 = self.sugar[g] + l.degree() - lg.degree();
            let s2 = sugar + l.degree() - lm_h.degree();
            self.pairs.push(Pair { i: g, j: idx, lcm: l, sugar: s1.max(s2) });
        }
        self.active.retain(|&g| !lm_h.divides(polys[g].leading_monomial().unwrap()));
        self.active.push(idx);
        Ok(())
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar.cmp(&pb.sugar).then_with(|| order.compare(&pa.lcm, &pb.lcm))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Polynomial<F> {
        let field = self.ring.field();
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = p.lcm.div(f.leading_monomial().unwrap()).unwrap();
        let mg = p.lcm.div(g.leading_monomial().unwrap()).unwrap();
        f.mul_term(&mf, &field.one()).sub_mul_term(&field.one(), &mg, g)
    }

    fn run(mut self, gens: Vec<Polynomial<F>>) -> Result<GroebnerBasis<F>> {
        let mut gens = gens;
        let order = self.ring.order();
        gens.sort_by(|a, b| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then_with(|| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
        });
        for g in gens {
            let sugar = g.total_degree().unwrap_or(0);
            let h = self.reduce(g);
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(GroebnerBasis::unit(&self.ring));
            }
            self.add(h, sugar)?;
        }
        while let Some(pair) = self.select() {
            self.reduced_pairs += 1;
            if self.reduced_pairs > self.budget.max_pairs {
                return Err(Error::Budget(format!("S-pair reductions exceeded {}", self.budget.max_pairs)));
            }
            let h = self.reduce(self.spoly(&pair));
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(GroebnerBasis::unit(&self.ring));
            }
            self.add(h, pair.sugar)?;
        }
        // Active elements form a minimal basis; interreduce tails.
        let mut basis = Vec::with_capacity(self.active.len());
        for &k in &self.active {
            let g = &self.polys[k];
            let (lm, lc) = g.leading_term().unwrap().clone();
            let tail = Polynomial::from_sorted_unchecked(&self.ring, g.terms()[1..].to_vec());
            let tail = reduce_full(tail, |m| self.find_reducer(m, Some(k)));
            let mut terms = vec![(lm, lc)];
            terms.extend(tail.into_terms());
            basis.push(Polynomial::from_sorted_unchecked(&self.ring, terms).monic());
        }
        basis.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Ok(GroebnerBasis { ring: self.ring, basis })
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger<F: Field>(
    ideal: &IdealPresentation<F>,
    order: MonomialOrder,
    budget: Budget,
) -> Result<GroebnerBasis<F>> {
    let ring = if ideal.ring.order() == order { ideal.ring.clone() } else { ideal.ring.with_order(order) };
    let gens = ideal.generators.iter().map(|g| g.reorder(&ring)).collect();
    groebner_in(&ring, gens, budget)
}

fn groebner_in<F: Field>(ring: &Ring<F>, gens: Vec<Polynomial<F>>, budget: Budget) -> Result<GroebnerBasis<F>> {
    let engine = Engine {
        ring: ring.clone(),
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        budget,
        reduced_pairs: 0,
    };
    engine.run(gens)
}

impl<F: Field> GroebnerBasis<F> {
    fn unit(ring: &Ring<F>) -> Self {
        GroebnerBasis { ring: ring.clone(), basis: vec![Polynomial::one(ring)] }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.first().is_some_and(|g| g.is_constant())
    }

    pub fn to_ideal(&self) -> IdealPresentation<F> {
        IdealPresentation { ring: self.ring.clone(), generators: self.basis.clone() }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    fn find(&self, m: &Monomial) -> Option<&Polynomial<F>> {
        let mask = m.support_mask();
        self.basis.iter().find(|g| {
            let lm = g.leading_monomial().unwrap();
            lm.support_mask() & !mask == 0 && lm.divides(m)
        })
    }

    /// Remainder of `f` on division by the basis. `f` may live in any ring
    /// with the same variables and field; the result is in the basis ring.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        let f = if f.ring().same_as(&self.ring) {
            f.clone()
        } else if f.ring().vars() == self.ring.vars() && f.ring().field() == self.ring.field() {
            f.reorder(&self.ring)
        } else {
            return Err(Error::RingMismatch);
        };
        Ok(reduce_full(f, |m| self.find(m)))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let one = self.ring.field().one();
        for (a, f) in self.basis.iter().enumerate() {
            for g in &self.basis[a + 1..] {
                let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
                let l = lf.lcm(lg);
                let s = f
                    .mul_term(&l.div(lf).unwrap(), &one)
                    .sub_mul_term(&one, &l.div(lg).unwrap(), g);
                if !reduce_full(s, |m| self.find(m)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Krull dimension of `k[x]/I`: the largest set of variables containing
    /// no leading-monomial support.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.nvars();
        let mut edges: Vec<u64> = self.basis.iter().map(|g| g.leading_monomial().unwrap().support_mask()).collect();
        edges.sort_by_key(|e| e.count_ones());
        let mut minimal: Vec<u64> = Vec::new();
        for e in edges {
            if !minimal.iter().any(|&m| m & e == m) {
                minimal.push(e);
            }
        }
        let cover = min_hitting_set(&minimal, 0, n as u32 + 1);
        Ok(n - cover as usize)
    }

    pub fn height(&self) -> Result<usize> {
        Ok(self.ring.nvars() - self.dimension()?)
    }

    /// Number of standard monomials of a zero-dimensional ideal.
    pub fn zero_dim_degree(&self) -> Result<u64> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        for i in 0..n {
            let pure = lms.iter().any(|m| m.support_mask() == 1u64 << i);
            if !pure {
                return Err(Error::PositiveDimensional(self.dimension()?));
            }
        }
        fn count(lms: &[Monomial], exps: &mut Vec<u32>, i: usize) -> u64 {
            if i == exps.len() {
                return 1;
            }
            let mut total = 0;
            loop {
                let m = Monomial::from_exponents(exps).unwrap();
                if lms.iter().any(|l| l.divides(&m)) {
                    break;
                }
                total += count(lms, exps, i + 1);
                exps[i] += 1;
            }
            exps[i] = 0;
            total
        }
        Ok(count(&lms, &mut vec![0; n], 0))
    }

    /// Basis elements involving only the variables in `mask`.
    pub fn elements_within(&self, mask: u64) -> impl Iterator<Item = &Polynomial<F>> {
        self.basis.iter().filter(move |g| g.support_mask() & !mask == 0)
    }
}

/// Size of a smallest vertex set meeting every edge (bitmask hypergraph),
/// or `bound` if none smaller than `bound` exists.
fn min_hitting_set(edges: &[u64], chosen: u64, bound: u32) -> u32 {
    let used = chosen.count_ones();
    if used >= bound {
        return bound;
    }
    let Some(&e) = edges.iter().find(|&&e| e & chosen == 0) else {
        return used;
    };
    let mut best = bound;
    let mut rest = e;
    while rest != 0 {
        let v = rest & rest.wrapping_neg();
        rest &= rest - 1;
        best = best.min(min_hitting_set(edges, chosen | v, best));
    }
    best
}

/// Gröbner basis of `ideal ∩ k[keep]` in a fresh grevlex ring on the kept
/// variables (in their original relative order).
pub fn elimination_gb<F: Field>(
    ideal: &IdealPresentation<F>,
    keep: &[usize],
    budget: Budget,
) -> Result<GroebnerBasis<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&i| i >= n) {
        return Err(Error::UnknownVariable(format!("#{bad}")));
    }
    let keep_mask: u64 = keep.iter().fold(0, |m, &i| m | 1 << i);
    let drop: Vec<usize> = (0..n).filter(|i| keep_mask >> i & 1 == 0).collect();
    let sub = PolyRing::new(
        ring.field().clone(),
        keep.iter().map(|&i| ring.vars()[i].clone()),
        MonomialOrder::Grevlex,
    )?;
    if ideal.is_zero_ideal() {
        return Ok(GroebnerBasis { ring: sub, basis: Vec::new() });
    }
    // Work ring: eliminated variables first, then the kept ones.
    let order_vars: Vec<usize> = drop.iter().chain(keep.iter()).copied().collect();
    let mut map = vec![None; n];
    for (pos, &v) in order_vars.iter().enumerate() {
        map[v] = Some(pos);
    }
    let work = PolyRing::new(
        ring.field().clone(),
        order_vars.iter().map(|&i| ring.vars()[i].clone()),
        if drop.is_empty() { MonomialOrder::Grevlex } else { MonomialOrder::Block { front: drop.len() } },
    )?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.map_into(&work, &map))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner_in(&work, gens, budget)?;
    let back_mask: u64 = if keep.len() == 64 { !0 } else { ((1u64 << keep.len()) - 1) << drop.len() };
    let to_sub: Vec<Option<usize>> = (0..n).map(|pos| pos.checked_sub(drop.len())).collect();
    let basis = gb
        .elements_within(back_mask)
        .map(|g| g.map_into(&sub, &to_sub))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroebnerBasis { ring: sub, basis })
}

/// Generators of `ideal ∩ k[keep]`, expressed in the subring on `keep`.
pub fn eliminate<F: Field>(
    ideal: &IdealPresentation<F>,
    keep: &[usize],
    budget: Budget,
) -> Result<IdealPresentation<F>> {
    Ok(elimination_gb(ideal, keep, budget)?.to_ideal())
}

pub fn dimension<F: Field>(ideal: &IdealPresentation<F>, budget: Budget) -> Result<usize> {
    buchberger(ideal, MonomialOrder::Grevlex, budget)?.dimension()
}

pub fn zero_dim_degree<F: Field>(ideal: &IdealPresentation<F>, budget: Budget) -> Result<u64> {
    buchberger(ideal, MonomialOrder::Grevlex, budget)?.zero_dim_degree()
}

/// Prime ideal of the closure of the image of a rational parametrization,
/// in a grevlex ring on the coordinate labels.
pub fn implicitize<F: Field>(param: &Parametrization<F>, budget: Budget) -> Result<IdealPresentation<F>> {
    let pr = param.param_ring();
    let d = pr.nvars();
    let n = param.len();
    let field = pr.field().clone();
    let target = PolyRing::new(field.clone(), param.labels().iter().cloned(), MonomialOrder::Grevlex)?;
    let mut names: Vec<String> = pr.vars().to_vec();
    let mut aux = String::from("_u");
    while names.contains(&aux) || param.labels().contains(&aux) {
        aux.push('_');
    }
    names.push(aux);
    names.extend(param.labels().iter().cloned());
    let work = PolyRing::new(field.clone(), names, MonomialOrder::Block { front: d + 1 })?;
    let tmap: Vec<Option<usize>> = (0..d).map(Some).collect();
    let mut gens = Vec::with_capacity(n + 1);
    let mut den_product = Polynomial::one(&work);
    for (j, c) in param.coords().iter().enumerate() {
        if c.denominator().is_zero() {
            return Err(Error::ZeroDenominator(param.labels()[j].clone()));
        }
        let p = c.numerator().map_into(&work, &tmap)?;
        let q = c.denominator().map_into(&work, &tmap)?;
        let x = Polynomial::var(&work, d + 1 + j);
        let g = x.checked_mul(&q)?.checked_sub(&p)?;
        if !q.is_constant() {
            den_product = den_product.checked_mul(&q)?;
        }
        if !g.is_zero() {
            gens.push(g);
        }
    }
    if !den_product.is_constant() {
        let u = Polynomial::var(&work, d);
        gens.push(u.checked_mul(&den_product)?.checked_sub(&Polynomial::one(&work))?);
    }
    let gb = groebner_in(&work, gens, budget)?;
    let back_mask: u64 = if n == 64 { !0 } else { ((1u64 << n) - 1) << (d + 1) };
    let to_target: Vec<Option<usize>> = (0..work.nvars()).map(|pos| pos.checked_sub(d + 1)).collect();
    let generators = gb
        .elements_within(back_mask)
        .map(|g| g.map_into(&target, &to_target))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealPresentation { ring: target, generators })
}

/// Sorts polynomials by leading monomial in their ring's order.
pub fn sort_by_leading<F: Field>(polys: &mut [Polynomial<F>]) {
    polys.sort_by(|a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => a.ring().order().compare(x, y),
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;
    use crate::rational::Rational;
    use proptest::prelude::*;

    fn qring(vars: &[&str], order: MonomialOrder) -> Ring<Rationals> {
        PolyRing::new(Rationals, vars.iter().copied(), order).unwrap()
    }

    fn ideal(ring: &Ring<Rationals>, gens: &[&str]) -> IdealPresentation<Rationals> {
        IdealPresentation::parse(ring.clone(), gens).unwrap()
    }

    #[test]
    fn linear_chain_lex() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Lex);
        let gb = buchberger(&ideal(&r, &["x-y", "y-z"]), MonomialOrder::Lex, Budget::default()).unwrap();
        let expect: Vec<_> = ["y-z", "x-z"].iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        assert_eq!(gb.basis(), expect.as_slice());
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn principal_is_already_reduced() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let gb = buchberger(&ideal(&r, &["x^2+y^2-1"]), MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert_eq!(gb.basis(), &[parse_polynomial("x^2+y^2-1", &r).unwrap()]);
        let f = parse_polynomial("x^2+y^2-1", &r).unwrap();
        assert!(gb.normal_form(&f).unwrap().is_zero());
        assert_eq!(gb.dimension().unwrap(), 1);
        assert_eq!(gb.height().unwrap(), 1);
        let gy = buchberger(&ideal(&r, &["y"]), MonomialOrder::Grevlex, Budget::default()).unwrap();
        let x = parse_polynomial("x", &r).unwrap();
        assert_eq!(gy.normal_form(&x).unwrap(), x);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let gb = buchberger(&ideal(&r, &["x*y-1", "x"]), MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.dimension(), Err(Error::UnitIdeal));
        let z = buchberger(&IdealPresentation::zero(r.clone()), MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert_eq!(z.dimension().unwrap(), 3);
        let one = buchberger(&ideal(&r, &["x*y+z^3"]), MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert_eq!(one.dimension().unwrap(), 2);
    }

    #[test]
    fn elimination_examples() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let e = eliminate(&ideal(&r, &["x-y^2"]), &[0], Budget::default()).unwrap();
        assert!(e.is_zero_ideal());
        assert_eq!(e.ring().vars(), &["x".to_string()]);

        let r = qring(&["t", "x", "y"], MonomialOrder::Grevlex);
        let e = eliminate(&ideal(&r, &["x-t", "y-t^2"]), &[1, 2], Budget::default()).unwrap();
        assert_eq!(e.generators().len(), 1);
        let g = &e.generators()[0];
        assert_eq!(g.normalize_unit(), parse_polynomial("y-x^2", e.ring()).unwrap().normalize_unit());
    }

    #[test]
    fn zero_dimensional_degrees() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        assert_eq!(zero_dim_degree(&ideal(&r, &["x^2+y^2-1", "x-1/3"]), Budget::default()).unwrap(), 2);
        assert_eq!(zero_dim_degree(&ideal(&r, &["x-5", "y-7"]), Budget::default()).unwrap(), 1);
        assert_eq!(
            zero_dim_degree(&ideal(&r, &["x^2+y^2-1"]), Budget::default()),
            Err(Error::PositiveDimensional(1))
        );
    }

    #[test]
    fn torus_fiber_has_four_points() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
        for (a, b) in [("2/7", "3/5"), ("-1", "4/3")] {
            let torus = format!("(x^2+y^2+z^2+3)^2-16*(x^2+y^2)");
            let fx = format!("x-({a})");
            let fy = format!("y-({b})");
            let deg = zero_dim_degree(&ideal(&r, &[torus.as_str(), fx.as_str(), fy.as_str()]), Budget::default());
            assert_eq!(deg.unwrap(), 4);
        }
    }

    #[test]
    fn degree_is_order_independent() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let i = ideal(&r, &["x^2+y*z-2", "y^2-x*z+1", "z^2-x+y"]);
        let d1 = buchberger(&i, MonomialOrder::Grevlex, Budget::default()).unwrap().zero_dim_degree().unwrap();
        let d2 = buchberger(&i, MonomialOrder::Lex, Budget::default()).unwrap().zero_dim_degree().unwrap();
        assert_eq!(d1, d2);
        assert_eq!(d1, 8);
    }

    #[test]
    fn budget_is_reported() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let i = ideal(&r, &["x^2+y*z-2", "y^2-x*z+1", "z^2-x+y"]);
        let err = buchberger(&i, MonomialOrder::Lex, Budget { max_pairs: 1, max_basis: 1000 }).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn implicitization_examples() {
        let t = qring(&["t"], MonomialOrder::Grevlex);
        let p = Parametrization::parse(t, &[("x".into(), "t".into()), ("y".into(), "t^2".into())]).unwrap();
        let i = implicitize(&p, Budget::default()).unwrap();
        assert_eq!(i.generators().len(), 1);
        assert_eq!(i.generators()[0], parse_polynomial("x^2-y", i.ring()).unwrap());

        let st = qring(&["s", "t"], MonomialOrder::Grevlex);
        let p = Parametrization::parse(
            st,
            &[("x".into(), "s".into()), ("y".into(), "t".into()), ("z".into(), "s+t".into())],
        )
        .unwrap();
        let i = implicitize(&p, Budget::default()).unwrap();
        assert_eq!(i.generators().len(), 1);
        assert_eq!(i.generators()[0].normalize_unit(), parse_polynomial("x+y-z", i.ring()).unwrap());

        let t = qring(&["t"], MonomialOrder::Grevlex);
        let p = Parametrization::parse(
            t,
            &[("x".into(), "(1-t^2)/(1+t^2)".into()), ("y".into(), "2*t/(1+t^2)".into())],
        )
        .unwrap();
        let i = implicitize(&p, Budget::default()).unwrap();
        assert_eq!(i.generators(), &[parse_polynomial("x^2+y^2-1", i.ring()).unwrap()]);
    }

    #[test]
    fn char_two_elimination() {
        let f = PrimeField::new(2).unwrap();
        let r = PolyRing::new(f, ["t", "x", "y"], MonomialOrder::Grevlex).unwrap();
        let i = IdealPresentation::parse(r, &["x-t^2", "y-t^4"]).unwrap();
        let e = eliminate(&i, &[1, 2], Budget::default()).unwrap();
        assert_eq!(e.generators(), &[parse_polynomial("x^2+y", e.ring()).unwrap()]);
    }

    fn small_poly(r: Ring<Rationals>) -> impl Strategy<Value = Polynomial<Rationals>> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..4), 1..4).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), Rational::from_int(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_ideals_satisfy_criterion(
            gens in prop::collection::vec(small_poly(qring(&["x", "y", "z"], MonomialOrder::Grevlex)), 1..4),
            which in 0usize..3,
        ) {
            let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
            prop_assume!(!gens.is_empty());
            let r = gens[0].ring().clone();
            let i = IdealPresentation::new(r, gens.clone()).unwrap();
            let order = [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Block { front: 1 }][which];
            let budget = Budget { max_pairs: 5_000, max_basis: 500 };
            let Ok(gb) = buchberger(&i, order, budget) else { return Ok(()) };
            prop_assert!(gb.satisfies_buchberger_criterion());
            for g in &gens {
                prop_assert!(gb.contains(g).unwrap());
            }
            let again = buchberger(&i, order, budget).unwrap();
            prop_assert_eq!(&again, &gb);
            // Elimination output lies in the ideal.
            if let Ok(e) = elimination_gb(&i, &[1, 2], budget) {
                for g in e.basis() {
                    let lifted = g.map_by_name(&gb.ring().clone()).unwrap();
                    prop_assert!(gb.contains(&lifted).unwrap());
                }
            }
        }
    }
}
