//! Jacobian representations: the ideal Jacobian `(∂f_i/∂x_j)` represents
//! the dual matroid over `Frac(k[x]/P)`, the parametrization Jacobian
//! `(∂g_j/∂t_i)` represents the matroid itself over `k(t)` (characteristic 0).

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, elimination_gb, Budget, GroebnerBasis, IdealPresentation};
use crate::linalg::{column_rank_matrix, ColumnRank};
use crate::matroid::oracle::RankOracle;
use crate::matroid::subset::{self, Subset};
use crate::monomial::MonomialOrder;
use crate::param::Parametrization;
use crate::poly::{PolyRing, Polynomial, Ring};
use crate::ratfun::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Rows are generators, columns are variables; represents the dual.
    Ideal,
    /// Rows are parameters, columns are coordinates; represents the matroid.
    Param,
}

/// A matrix of rational functions whose columns are the ground set.
#[derive(Clone, Debug)]
pub struct JacobianMatrix<F: Field> {
    orientation: Orientation,
    ring: Ring<F>,
    labels: Vec<String>,
    entries: Vec<Vec<RationalFunction<F>>>,
}

pub fn jacobian_of_ideal<F: Field>(ideal: &IdealPresentation<F>) -> Result<JacobianMatrix<F>> {
    let ring = ideal.ring().clone();
    let entries = ideal
        .generators()
        .iter()
        .map(|f| {
            (0..ring.nvars())
                .map(|j| Ok(RationalFunction::from_polynomial(f.partial_derivative(j)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JacobianMatrix { orientation: Orientation::Ideal, labels: ring.vars().to_vec(), ring, entries })
}

pub fn jacobian_of_param<F: Field>(param: &Parametrization<F>) -> Result<JacobianMatrix<F>> {
    let ring = param.param_ring().clone();
    let entries = (0..ring.nvars())
        .map(|i| param.coords().iter().map(|g| g.partial_derivative(i)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(JacobianMatrix { orientation: Orientation::Param, labels: param.labels().to_vec(), ring, entries })
}

impl<F: Field> JacobianMatrix<F> {
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.labels.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction<F> {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<RationalFunction<F>>] {
        &self.entries
    }

    /// Entries evaluated at a point of the entry ring.
    pub fn specialize(&self, point: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.evaluate(point)).collect()).collect()
    }

    /// Polynomial entries; `None` if some entry has a denominator.
    pub fn polynomial_entries(&self) -> Option<Vec<Vec<Polynomial<F>>>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.clone().into_polynomial()).collect()).collect()
    }

    /// Determinant of the square submatrix on `rows × cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<RationalFunction<F>> {
        if rows.len() != cols.len() {
            return Err(Error::LengthMismatch { expected: rows.len(), got: cols.len() });
        }
        // Scale each column by the product of its distinct denominators.
        let mut den_total = Polynomial::one(&self.ring);
        let mut m: Vec<Vec<Polynomial<F>>> = vec![Vec::with_capacity(cols.len()); rows.len()];
        for &c in cols {
            let mut dens: Vec<Polynomial<F>> = Vec::new();
            for &r in rows {
                let d = self.entries[r][c].denominator();
                if !d.is_constant() && !dens.contains(d) {
                    dens.push(d.clone());
                }
            }
            let prod = dens.iter().try_fold(Polynomial::one(&self.ring), |a, d| a.checked_mul(d))?;
            for (k, &r) in rows.iter().enumerate() {
                let e = &self.entries[r][c];
                let scale = prod.div_exact(e.denominator()).expect("denominator divides the column product");
                m[k].push(e.numerator().checked_mul(&scale)?);
            }
            den_total = den_total.checked_mul(&prod)?;
        }
        let det = polynomial_determinant(m)?;
        RationalFunction::new(det, den_total)
    }
}

/// Fraction-free determinant of a square polynomial matrix.
pub fn polynomial_determinant<F: Field>(mut a: Vec<Vec<Polynomial<F>>>) -> Result<Polynomial<F>> {
    let n = a.len();
    let Some(ring) = a.first().and_then(|r| r.first()).map(|p| p.ring().clone()) else {
        return Err(Error::Invalid("determinant of an empty matrix".into()));
    };
    let mut prev = Polynomial::one(&ring);
    let mut sign_flip = false;
    for k in 0..n {
        let Some(piv) = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len()) else {
            return Ok(Polynomial::zero(&ring));
        };
        if piv != k {
            a.swap(piv, k);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].checked_mul(&a[i][j])?.checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if sign_flip { prev.neg() } else { prev })
}

/// Rank of a specialized column submatrix.
pub fn specialized_rank<F: Field>(j: &JacobianMatrix<F>, point: &[F::Elem], cols: Subset) -> Result<usize> {
    let rows = j.specialize(point)?;
    Ok(column_rank_matrix(j.ring().field(), rows, 0).rank(cols))
}

/// Polynomial matrix over `k[x]/P`, with entries in normal form.
pub struct QuotientMatrix<F: Field> {
    gb: Arc<GroebnerBasis<F>>,
    entries: Vec<Vec<Polynomial<F>>>,
    ncols: usize,
}

impl<F: Field> QuotientMatrix<F> {
    /// The ideal Jacobian of `P` reduced modulo `P`.
    pub fn for_ideal(ideal: &IdealPresentation<F>, budget: Budget) -> Result<Self> {
        let j = jacobian_of_ideal(ideal)?;
        let gb = Arc::new(buchberger(ideal, MonomialOrder::Grevlex, budget)?);
        if gb.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Self::new(&j, gb)
    }

    pub fn new(j: &JacobianMatrix<F>, gb: Arc<GroebnerBasis<F>>) -> Result<Self> {
        let entries = j
            .polynomial_entries()
            .ok_or_else(|| Error::Invalid("quotient ranks need polynomial entries".into()))?
            .iter()
            .map(|r| r.iter().map(|e| gb.normal_form(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientMatrix { gb, entries, ncols: j.ncols() })
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    /// Rank over `Frac(k[x]/P)` by fraction-free elimination with normal
    /// forms; relies on `P` being prime.
    pub fn try_rank(&self, cols: Subset) -> Result<usize> {
        let idx = subset::to_indices(cols);
        let mut a: Vec<Vec<Polynomial<F>>> =
            self.entries.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect();
        let mut rank = 0;
        for c in 0..idx.len() {
            let Some(piv) = (rank..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].len()) else {
                continue;
            };
            a.swap(rank, piv);
            for i in rank + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                for k in c + 1..idx.len() {
                    let v = a[rank][c].checked_mul(&a[i][k])?.checked_sub(&a[i][c].checked_mul(&a[rank][k])?)?;
                    a[i][k] = self.gb.normal_form(&v)?;
                }
                a[i][c] = Polynomial::zero(a[i][c].ring());
            }
            rank += 1;
            if rank == a.len() {
                break;
            }
        }
        Ok(rank)
    }
}

impl<F: Field> ColumnRank for QuotientMatrix<F> {
    fn nrows(&self) -> usize {
        self.entries.len()
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    fn rank(&self, cols: Subset) -> usize {
        self.try_rank(cols).expect("normal forms stay in the ring of the basis")
    }
}

/// Rank of the columns `cols` of the ideal Jacobian over `Frac(k[x]/P)`.
pub fn symbolic_rank_mod_p<F: Field>(ideal: &IdealPresentation<F>, cols: Subset, budget: Budget) -> Result<usize> {
    QuotientMatrix::for_ideal(ideal, budget)?.try_rank(cols)
}

/// A rank oracle backed by a column matroid, dualized for ideal Jacobians
/// through `ρ(S) = |S| + rk(E∖S) − rk(E)`.
pub struct LinearOracle {
    matrix: Arc<dyn ColumnRank>,
    orientation: Orientation,
    full: usize,
    certified: bool,
}

impl LinearOracle {
    pub fn new(matrix: Arc<dyn ColumnRank>, orientation: Orientation, certified: bool) -> Self {
        let full = matrix.rank(subset::full(matrix.ncols()));
        LinearOracle { matrix, orientation, full, certified }
    }

    /// False when the field has positive characteristic, where the linear
    /// representation need not give the algebraic matroid.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Rank of the whole matrix.
    pub fn matrix_rank(&self) -> usize {
        self.full
    }

    pub fn matrix(&self) -> &Arc<dyn ColumnRank> {
        &self.matrix
    }
}

impl RankOracle for LinearOracle {
    fn ground_size(&self) -> usize {
        self.matrix.ncols()
    }

    fn rank(&self, s: Subset) -> Result<usize> {
        Ok(match self.orientation {
            Orientation::Param => self.matrix.rank(s),
            Orientation::Ideal => {
                let rest = subset::full(self.ground_size()) & !s;
                subset::size(s) + self.matrix.rank(rest) - self.full
            }
        })
    }
}

/// The linear oracle of an ideal: its Jacobian taken modulo `P`.
pub fn linear_oracle_for_ideal<F: Field>(ideal: &IdealPresentation<F>, budget: Budget) -> Result<LinearOracle> {
    let certified = ideal.ring().field().characteristic() == 0;
    let m = QuotientMatrix::for_ideal(ideal, budget)?;
    Ok(LinearOracle::new(Arc::new(m), Orientation::Ideal, certified))
}

/// Oracle from a Jacobian specialized at an explicit point.
pub fn linear_oracle_at_point<F: Field>(j: &JacobianMatrix<F>, point: &[F::Elem]) -> Result<LinearOracle> {
    let rows = j.specialize(point)?;
    let certified = j.ring().field().characteristic() == 0;
    Ok(LinearOracle::new(Arc::from(column_rank_matrix(j.ring().field(), rows, 0)), j.orientation(), certified))
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    /// Integer sampling window `[-window, window]` over ℚ.
    pub window: u64,
    pub retries: usize,
    /// Random subsets compared between the two sample points.
    pub probes: usize,
    pub seed: u64,
    /// Permit positive characteristic; the oracle is then marked uncertified.
    pub allow_uncertified: bool,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { window: 1_000_000, retries: 32, probes: 50, seed: 0, allow_uncertified: false }
    }
}

/// A point of parameter space avoiding all denominators and the given
/// NM-locus.
pub fn sample_valid_point<F: Field, R: Rng + ?Sized>(
    param: &Parametrization<F>,
    nm: Option<&NmLocus<F>>,
    window: u64,
    retries: usize,
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    let field = param.param_ring().field();
    for _ in 0..retries.max(1) {
        let point: Vec<F::Elem> = (0..param.nparams()).map(|_| field.sample(rng, window)).collect();
        let mut ok = true;
        for g in param.coords() {
            if field.is_zero(&g.denominator().evaluate(&point)?) {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(nm) = nm {
                ok = !nm.contains(&point)?;
            }
        }
        if ok {
            return Ok(point);
        }
    }
    Err(Error::RetryLimit(format!("no valid sample point after {retries} attempts")))
}

/// A parametrization oracle together with the sample points behind it.
pub struct ParamSample<F: Field> {
    pub oracle: LinearOracle,
    pub points: [Vec<F::Elem>; 2],
    pub attempts: usize,
}

/// The linear oracle of a parametrization, from a Jacobian specialized at a
/// random point. A second independent point must give the same rank on the
/// full ground set and on `probes` random subsets; since specialization can
/// only lower ranks, a disagreement means a non-generic point and both are
/// resampled.
pub fn linear_oracle_for_param<F: Field>(param: &Parametrization<F>, cfg: &SampleConfig) -> Result<ParamSample<F>> {
    let field = param.param_ring().field();
    let certified = field.characteristic() == 0;
    if !certified && !cfg.allow_uncertified {
        return Err(Error::Characteristic(
            field.characteristic(),
            "the Jacobian represents the algebraic matroid only in characteristic 0".into(),
        ));
    }
    let j = jacobian_of_param(param)?;
    let n = j.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for attempt in 1..=cfg.retries.max(1) {
        let p1 = sample_valid_point(param, None, cfg.window, cfg.retries, &mut rng)?;
        let p2 = sample_valid_point(param, None, cfg.window, cfg.retries, &mut rng)?;
        let m1: Arc<dyn ColumnRank> = Arc::from(column_rank_matrix(field, j.specialize(&p1)?, rng.gen()));
        let m2 = column_rank_matrix(field, j.specialize(&p2)?, rng.gen());
        let full = subset::full(n);
        let r = m1.rank(full);
        if r != m2.rank(full) {
            continue;
        }
        let mut idx: Vec<usize> = (0..n).collect();
        let agree = (0..cfg.probes).all(|_| {
            let k = rng.gen_range(1..=n.min(r + 1).max(1));
            idx.shuffle(&mut rng);
            let s = subset::from_indices(&idx[..k.min(n)]);
            m1.rank(s) == m2.rank(s)
        });
        if agree {
            return Ok(ParamSample {
                oracle: LinearOracle::new(m1, Orientation::Param, certified),
                points: [p1, p2],
                attempts: attempt,
            });
        }
    }
    Err(Error::RetryLimit(format!("sample points disagreed in {} attempts", cfg.retries)))
}

/// The non-matroidal locus: where specializing the Jacobian changes the
/// matroid. Principal with `generator` in the special cases, otherwise a
/// union of the zero sets of `components`.
#[derive(Clone, Debug)]
pub struct NmLocus<F: Field> {
    pub ring: Ring<F>,
    pub generator: Option<Polynomial<F>>,
    pub components: Vec<IdealPresentation<F>>,
}

impl<F: Field> NmLocus<F> {
    /// Whether the locus is empty because its ideal is the unit ideal.
    pub fn is_empty_locus(&self) -> bool {
        match &self.generator {
            Some(g) => g.is_constant() && !g.is_zero(),
            None => self.components.iter().all(|c| c.generators().iter().any(|g| g.is_constant() && !g.is_zero())),
        }
    }

    pub fn contains(&self, point: &[F::Elem]) -> Result<bool> {
        let field = self.ring.field();
        if let Some(g) = &self.generator {
            return Ok(field.is_zero(&g.evaluate(point)?));
        }
        for c in &self.components {
            let mut all = true;
            for g in c.generators() {
                if !field.is_zero(&g.evaluate(point)?) {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Input the Jacobian was built from.
pub enum NmContext<'a, F: Field> {
    Ideal(&'a IdealPresentation<F>),
    Param(&'a Parametrization<F>),
}

/// NM-locus from the bases of the matroid. For a parametrization it is the
/// lcm of the nonzero maximal minors; for an ideal with `n − d` generators
/// the lcm of the nonzero cobase minors reduced modulo `P`; otherwise one
/// minor ideal per cobase.
pub fn nm_locus<F: Field>(
    j: &JacobianMatrix<F>,
    ctx: NmContext<'_, F>,
    bases: &[Subset],
    budget: Budget,
) -> Result<NmLocus<F>> {
    if bases.is_empty() {
        return Err(Error::Missing("the NM-locus needs the bases of the matroid".into()));
    }
    let n = j.ncols();
    let ring = j.ring().clone();
    match (j.orientation(), ctx) {
        (Orientation::Param, NmContext::Param(_)) => {
            let rows: Vec<usize> = (0..j.nrows()).collect();
            let mut minors = Vec::new();
            for &b in bases {
                let cols = subset::to_indices(b);
                if cols.len() != rows.len() {
                    // Degenerate case: fewer independent parameters than rows.
                    return Err(Error::Invalid("bases are smaller than the number of parameters".into()));
                }
                let m = j.minor(&rows, &cols)?;
                if !m.is_zero() {
                    minors.push(m.numerator().clone());
                }
            }
            let g = lcm_all(minors, &ring, budget)?;
            Ok(NmLocus { ring, generator: Some(g), components: Vec::new() })
        }
        (Orientation::Ideal, NmContext::Ideal(ideal)) => {
            let gb = buchberger(ideal, MonomialOrder::Grevlex, budget)?;
            let r = subset::size(bases[0]);
            let codim = n - r;
            let full = subset::full(n);
            if j.nrows() == codim {
                let rows: Vec<usize> = (0..codim).collect();
                let mut minors = Vec::new();
                for &b in bases {
                    let cols = subset::to_indices(full & !b);
                    let m = j.minor(&rows, &cols)?.into_polynomial().expect("ideal Jacobians are polynomial");
                    if !gb.normal_form(&m)?.is_zero() {
                        minors.push(m);
                    }
                }
                let l = lcm_all(minors, &ring, budget)?;
                let g = gb.normal_form(&l)?.normalize_unit();
                Ok(NmLocus { ring, generator: Some(g), components: Vec::new() })
            } else {
                let mut components = Vec::new();
                for &b in bases {
                    let cols = subset::to_indices(full & !b);
                    let mut gens: Vec<Polynomial<F>> = ideal.generators().to_vec();
                    for rows in subset::k_subsets(j.nrows(), codim) {
                        let m = j.minor(&subset::to_indices(rows), &cols)?.into_polynomial().expect("polynomial");
                        let m = gb.normal_form(&m)?;
                        if !m.is_zero() {
                            gens.push(m.normalize_unit());
                        }
                    }
                    components.push(IdealPresentation::new(ring.clone(), gens)?);
                }
                Ok(NmLocus { ring, generator: None, components })
            }
        }
        _ => Err(Error::Invalid("Jacobian orientation does not match its input".into())),
    }
}

/// Least common multiple of nonzero polynomials, normalized to a canonical
/// associate; the lcm of no polynomials is 1.
pub fn lcm_all<F: Field>(polys: Vec<Polynomial<F>>, ring: &Ring<F>, budget: Budget) -> Result<Polynomial<F>> {
    let mut seen = HashSet::new();
    let mut acc = Polynomial::one(ring);
    for p in polys {
        let p = p.normalize_unit();
        if p.is_constant() || !seen.insert(p.clone()) {
            continue;
        }
        acc = lcm(&acc, &p, budget)?;
    }
    Ok(acc.normalize_unit())
}

/// Whether `f` divides `g`.
pub fn divides<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<bool> {
    if f.is_zero() {
        return Ok(g.is_zero());
    }
    if f.is_constant() {
        return Ok(true);
    }
    let gb = buchberger(&IdealPresentation::new(f.ring().clone(), vec![f.clone()])?, f.ring().order(), Budget::unlimited())?;
    Ok(gb.normal_form(g)?.is_zero())
}

/// `lcm(f, g)` as the generator of `⟨f⟩ ∩ ⟨g⟩ = (⟨t·f, (1−t)·g⟩) ∩ k[x]`.
pub fn lcm<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, budget: Budget) -> Result<Polynomial<F>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("lcm"));
    }
    if divides(f, g)? {
        return Ok(g.normalize_unit());
    }
    if divides(g, f)? {
        return Ok(f.normalize_unit());
    }
    let ring = f.ring();
    let mut t = String::from("_t");
    while ring.vars().contains(&t) {
        t.push('_');
    }
    let mut names = vec![t];
    names.extend(ring.vars().iter().cloned());
    let work = PolyRing::new(ring.field().clone(), names, MonomialOrder::Grevlex)?;
    let shift: Vec<Option<usize>> = (1..=ring.nvars()).map(Some).collect();
    let fw = f.map_into(&work, &shift)?;
    let gw = g.map_into(&work, &shift)?;
    let tv = Polynomial::var(&work, 0);
    let one = Polynomial::one(&work);
    let ideal = IdealPresentation::new(work.clone(), vec![tv.checked_mul(&fw)?, one.checked_sub(&tv)?.checked_mul(&gw)?])?;
    let keep: Vec<usize> = (1..=ring.nvars()).collect();
    let gb = elimination_gb(&ideal, &keep, budget)?;
    match gb.basis() {
        [l] => Ok(l.map_by_name(ring)?.normalize_unit()),
        other => Err(Error::Invalid(format!("intersection of principal ideals has {} generators", other.len()))),
    }
}

/// `gcd(f, g) = f·g / lcm(f, g)`.
pub fn gcd<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, budget: Budget) -> Result<Polynomial<F>> {
    let l = lcm(f, g, budget)?;
    let prod = f.checked_mul(g)?;
    Ok(prod.div_exact(&l).expect("lcm divides the product").normalize_unit())
}
