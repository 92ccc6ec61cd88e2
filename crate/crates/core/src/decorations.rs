//! Circuit polynomials and base degrees.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, implicitize, Budget, GroebnerBasis, IdealPresentation};
use crate::matroid::orbit::{orbit_reduce, Group};
use crate::matroid::subset::{self, Subset};
use crate::matroid::Matroid;
use crate::monomial::MonomialOrder;
use crate::param::Parametrization;
use crate::poly::{PolyRing, Polynomial};
use crate::symbolic::{IdealOracle, ParamOracle};

/// A circuit with its polynomial: the normalized generator of `P ∩ k[C]`.
#[derive(Clone, Debug)]
pub struct DecoratedCircuit<F: Field> {
    pub circuit: Subset,
    /// Lives in a grevlex ring on the circuit's labels.
    pub polynomial: Polynomial<F>,
    pub degree: u32,
    /// Degree in each ground-set element; zero outside the circuit.
    pub top_degree: Vec<u32>,
    /// Exponent vectors over the circuit's labels, sorted.
    pub support: Vec<Vec<u32>>,
}

/// A base with the size of its generic fiber.
#[derive(Clone, Debug)]
pub struct DecoratedBase<F: Field> {
    pub base: Subset,
    pub base_degree: u64,
    /// The target point, one value per base element in label order.
    pub lambda: Vec<F::Elem>,
}

/// The input a matroid came from.
pub enum Source<'a, F: Field> {
    Ideal(&'a IdealPresentation<F>),
    Param(&'a Parametrization<F>),
}

impl<F: Field> Clone for Source<'_, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<F: Field> Copy for Source<'_, F> {}

impl<F: Field> Source<'_, F> {
    pub fn field(&self) -> &F {
        match self {
            Source::Ideal(i) => i.ring().field(),
            Source::Param(p) => p.param_ring().field(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            Source::Ideal(i) => i.ring().vars(),
            Source::Param(p) => p.labels(),
        }
    }
}

/// Circuit polynomial from the elimination basis of `P ∩ k[C]`, which must be
/// a single polynomial involving every variable of `C`.
pub fn decorate_elimination<F: Field>(gb: &GroebnerBasis<F>, circuit: Subset, n: usize) -> Result<DecoratedCircuit<F>> {
    let names = || format!("{:?}", gb.ring().vars());
    let g = match gb.basis() {
        [] => return Err(Error::NotCircuit(format!("{} is independent", names()))),
        [g] => g.normalize_unit(),
        many => return Err(Error::NotCircuit(format!("elimination ideal of {} has {} generators", names(), many.len()))),
    };
    if g.support_mask() != subset::full(gb.ring().nvars()) {
        return Err(Error::NotCircuit(format!("generator {g} does not involve every variable of {}", names())));
    }
    let summary = g.degree_summary()?;
    let mut top_degree = vec![0; n];
    for (k, i) in subset::to_indices(circuit).into_iter().enumerate() {
        top_degree[i] = summary.per_variable[k];
    }
    Ok(DecoratedCircuit { circuit, degree: summary.total_degree, top_degree, support: summary.support, polynomial: g })
}

pub fn circuit_polynomial<F: Field>(ideal: &IdealPresentation<F>, c: Subset, budget: Budget) -> Result<DecoratedCircuit<F>> {
    let oracle = IdealOracle::new(ideal, budget)?;
    decorate_elimination(&oracle.elimination(c)?, c, ideal.ring().nvars())
}

/// Circuit polynomial of a parametrization, by implicitizing only the
/// coordinates in `c`.
pub fn circuit_polynomial_param<F: Field>(
    param: &Parametrization<F>,
    c: Subset,
    budget: Budget,
) -> Result<DecoratedCircuit<F>> {
    let oracle = ParamOracle::new(param, budget);
    decorate_elimination(&oracle.elimination(c)?, c, param.len())
}

#[derive(Clone, Debug)]
pub struct BaseDegreeConfig {
    /// λ coordinates are drawn from `[-window, window]`.
    pub window: u64,
    /// Samples allowed before giving up.
    pub retries: usize,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for BaseDegreeConfig {
    fn default() -> Self {
        BaseDegreeConfig { window: 97, retries: 12, seed: 0, budget: Budget::default() }
    }
}

/// Degree of `P + ⟨x_b − λ_b : b ∈ B⟩` for random integer λ. The fiber is
/// sampled until two consecutive zero-dimensional samples give the same
/// count.
pub fn base_degree<F: Field>(ideal: &IdealPresentation<F>, b: Subset, cfg: &BaseDegreeConfig) -> Result<DecoratedBase<F>> {
    let ring = ideal.ring();
    let field = ring.field();
    if field.characteristic() != 0 {
        return Err(Error::Characteristic(
            field.characteristic(),
            "base degrees are defined only in characteristic 0".into(),
        ));
    }
    let n = ring.nvars();
    let rest: Vec<usize> = (0..n).filter(|&i| b >> i & 1 == 0).collect();
    let fiber_ring = PolyRing::new(field.clone(), rest.iter().map(|&i| ring.vars()[i].clone()), MonomialOrder::Grevlex)?;
    let mut to_fiber = vec![None; n];
    for (k, &i) in rest.iter().enumerate() {
        to_fiber[i] = Some(k);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ b.rotate_left(17));
    let mut last: Option<u64> = None;
    let mut first_lambda = None;
    let mut note = String::new();
    for _ in 0..cfg.retries.max(2) {
        let lambda: Vec<F::Elem> = subset::to_indices(b).iter().map(|_| field.sample(&mut rng, cfg.window)).collect();
        let mut values = vec![None; n];
        for (k, i) in subset::to_indices(b).into_iter().enumerate() {
            values[i] = Some(lambda[k].clone());
        }
        let gens = ideal
            .generators()
            .iter()
            .map(|g| g.substitute(&values).map_into(&fiber_ring, &to_fiber))
            .collect::<Result<Vec<_>>>()?;
        let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let gb = buchberger(&IdealPresentation::new(fiber_ring.clone(), gens)?, MonomialOrder::Grevlex, cfg.budget)?;
        if gb.is_unit() {
            note = "empty fiber".into();
            last = None;
            continue;
        }
        let dim = gb.dimension()?;
        if dim != 0 {
            note = format!("fiber of dimension {dim}");
            last = None;
            continue;
        }
        let d = gb.zero_dim_degree()?;
        if last == Some(d) {
            return Ok(DecoratedBase { base: b, base_degree: d, lambda: first_lambda.unwrap_or(lambda) });
        }
        last = Some(d);
        first_lambda = Some(lambda);
    }
    Err(Error::RetryLimit(format!(
        "no two agreeing fiber samples for {:?} in {} tries{}",
        subset::to_indices(b),
        cfg.retries,
        if note.is_empty() { String::new() } else { format!(" (last: {note})") }
    )))
}

#[derive(Clone, Debug)]
pub struct DecorateOptions {
    pub circuits: bool,
    pub bases: bool,
    pub base_degree: BaseDegreeConfig,
    pub budget: Budget,
}

impl Default for DecorateOptions {
    fn default() -> Self {
        DecorateOptions { circuits: true, bases: true, base_degree: BaseDegreeConfig::default(), budget: Budget::default() }
    }
}

/// Per-item outcome; a failure on one item does not abort the batch.
#[derive(Clone, Debug)]
pub struct Item<T> {
    pub set: Subset,
    pub result: Result<T>,
}

#[derive(Clone, Debug)]
pub struct DecoratedMatroid<F: Field> {
    pub circuits: Vec<Item<DecoratedCircuit<F>>>,
    pub bases: Vec<Item<DecoratedBase<F>>>,
    pub notes: Vec<String>,
}

impl<F: Field> DecoratedMatroid<F> {
    pub fn circuit_degree_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for c in self.circuits.iter().filter_map(|i| i.result.as_ref().ok()) {
            *h.entry(c.degree).or_default() += 1;
        }
        h
    }

    pub fn base_degree_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for b in self.bases.iter().filter_map(|i| i.result.as_ref().ok()) {
            *h.entry(b.base_degree).or_default() += 1;
        }
        h
    }

    pub fn errors(&self) -> usize {
        self.circuits.iter().filter(|i| i.result.is_err()).count()
            + self.bases.iter().filter(|i| i.result.is_err()).count()
    }
}

/// Decorates the enumerated circuits and bases of `m`. With a group, one
/// representative per orbit is computed and the rest are obtained by
/// relabeling.
pub fn decorate<F: Field>(
    source: Source<'_, F>,
    m: &Matroid,
    group: Option<&Group>,
    opts: &DecorateOptions,
) -> Result<DecoratedMatroid<F>> {
    let n = m.ground.len();
    let mut notes = Vec::new();
    let char0 = source.field().characteristic() == 0;

    // Relabeling is only sound when the action preserves the ideal, not
    // just the matroid (signed coordinate permutations are common).
    let mut group = group;
    if let (Some(g), Source::Ideal(i)) = (group, source) {
        if !preserves_ideal(i, g, opts.budget)? {
            notes.push("the action does not preserve the ideal; every item is decorated directly".into());
            group = None;
        }
    }

    let circuits = if opts.circuits {
        let all = m.circuits()?;
        // One seed basis for all eliminations of an ideal.
        let seeded = match source {
            Source::Ideal(i) => Some(IdealOracle::new(i, opts.budget)?),
            Source::Param(_) => None,
        };
        let one = |c: Subset| -> Result<DecoratedCircuit<F>> {
            match (&seeded, source) {
                (Some(o), _) => decorate_elimination(&o.elimination(c)?, c, n),
                (None, Source::Param(p)) => circuit_polynomial_param(p, c, opts.budget),
                (None, Source::Ideal(i)) => circuit_polynomial(i, c, opts.budget),
            }
        };
        // For a parametrization, each relabeled polynomial must vanish at a
        // random point of the variety; otherwise it is computed directly.
        let witness = match (group, source) {
            (Some(_), Source::Param(p)) => variety_point(p, opts.base_degree.seed)?,
            _ => None,
        };
        let circuit_group = match source {
            Source::Param(_) if group.is_some() && witness.is_none() => {
                notes.push("no usable point on the variety; every circuit is decorated directly".into());
                None
            }
            _ => group,
        };
        let labels = source.labels();
        let relabel = |d: &DecoratedCircuit<F>, k: usize, g: &Group| -> Result<DecoratedCircuit<F>> {
            let r = relabel_circuit(d, k, g, labels)?;
            if let Some(x) = &witness {
                let at: Vec<F::Elem> = subset::to_indices(r.circuit).iter().map(|&i| x[i].clone()).collect();
                if !r.polynomial.field().is_zero(&r.polynomial.evaluate(&at)?) {
                    return one(r.circuit);
                }
            }
            Ok(r)
        };
        let items = per_orbit(all, circuit_group, one, relabel)?;
        for it in &items {
            if let Ok(d) = &it.result {
                if subset::size(d.circuit) == 1 && d.degree > 1 && char0 {
                    notes.push(format!(
                        "loop {} has a circuit polynomial of degree {}",
                        m.ground.names(d.circuit).join(","),
                        d.degree
                    ));
                }
            }
        }
        items
    } else {
        Vec::new()
    };

    let bases = if opts.bases && char0 {
        let all = m.bases()?;
        let implicit: OnceLock<Result<IdealPresentation<F>>> = OnceLock::new();
        let ideal = match source {
            Source::Ideal(i) => Ok(i.clone()),
            Source::Param(p) => implicit.get_or_init(|| implicitize(p, opts.budget)).clone(),
        }?;
        if let (Some(g), Source::Param(_)) = (group, source) {
            if !preserves_ideal(&ideal, g, opts.budget)? {
                notes.push("the action does not preserve the implicit ideal; every base is decorated directly".into());
                group = None;
            }
        }
        per_orbit(all, group, |b| base_degree(&ideal, b, &opts.base_degree), relabel_base)?
    } else {
        if opts.bases && !char0 {
            notes.push("base degrees are not defined in positive characteristic; bases left undecorated".into());
        }
        Vec::new()
    };
    Ok(DecoratedMatroid { circuits, bases, notes })
}

/// Whether every element of the group maps the ideal into itself.
pub fn preserves_ideal<F: Field>(ideal: &IdealPresentation<F>, group: &Group, budget: Budget) -> Result<bool> {
    let gb = buchberger(ideal, MonomialOrder::Grevlex, budget)?;
    for perm in group.permutations() {
        let map: Vec<Option<usize>> = perm.iter().map(|&j| Some(j)).collect();
        for g in ideal.generators() {
            if !gb.normal_form(&g.map_into(gb.ring(), &map)?)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coordinates of a random point in the image of `param`, when the field is
/// large enough for a vanishing test there to be meaningful.
fn variety_point<F: Field>(param: &Parametrization<F>, seed: u64) -> Result<Option<Vec<F::Elem>>> {
    let field = param.param_ring().field();
    if field.order().is_some_and(|q| q < 1 << 20) {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    match crate::jacobian::sample_valid_point(param, None, 1 << 30, 32, &mut rng) {
        Ok(t) => Ok(Some(param.evaluate(&t)?)),
        Err(Error::RetryLimit(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn per_orbit<T: Send + Sync, C, R>(family: &[Subset], group: Option<&Group>, compute: C, relabel: R) -> Result<Vec<Item<T>>>
where
    C: Fn(Subset) -> Result<T> + Sync,
    R: Fn(&T, usize, &Group) -> Result<T> + Sync,
{
    let Some(group) = group else {
        return Ok(family.par_iter().map(|&s| Item { set: s, result: compute(s) }).collect());
    };
    let classes = orbit_reduce(family, group)?;
    let reps: Vec<(Subset, Result<T>)> =
        classes.par_iter().map(|c| (c.representative, compute(c.representative))).collect();
    let by_rep: BTreeMap<Subset, &Result<T>> = reps.iter().map(|(s, r)| (*s, r)).collect();
    Ok(family
        .par_iter()
        .map(|&s| {
            let rep = group.canonical(s);
            let k = (0..group.order()).find(|&k| group.apply(k, rep) == s).expect("s lies in the orbit of rep");
            let result = match by_rep[&rep] {
                Ok(t) => relabel(t, k, group),
                Err(e) => Err(e.clone()),
            };
            Item { set: s, result }
        })
        .collect())
}

fn relabel_circuit<F: Field>(
    d: &DecoratedCircuit<F>,
    k: usize,
    group: &Group,
    labels: &[String],
) -> Result<DecoratedCircuit<F>> {
    let perm = &group.permutations()[k];
    let image = group.apply(k, d.circuit);
    let dst = subset::to_indices(image);
    let target = PolyRing::new(
        d.polynomial.ring().field().clone(),
        dst.iter().map(|&i| labels[i].clone()),
        MonomialOrder::Grevlex,
    )?;
    let map: Vec<Option<usize>> =
        subset::to_indices(d.circuit).iter().map(|&i| dst.iter().position(|&j| j == perm[i])).collect();
    let g = d.polynomial.map_into(&target, &map)?.normalize_unit();
    let summary = g.degree_summary()?;
    let mut top_degree = vec![0; labels.len()];
    for (pos, &i) in dst.iter().enumerate() {
        top_degree[i] = summary.per_variable[pos];
    }
    Ok(DecoratedCircuit { circuit: image, degree: summary.total_degree, top_degree, support: summary.support, polynomial: g })
}

fn relabel_base<F: Field>(d: &DecoratedBase<F>, k: usize, group: &Group) -> Result<DecoratedBase<F>> {
    let perm = &group.permutations()[k];
    let image = group.apply(k, d.base);
    let dst = subset::to_indices(image);
    let mut lambda = d.lambda.clone();
    for (pos, &i) in subset::to_indices(d.base).iter().enumerate() {
        let at = dst.iter().position(|&j| j == perm[i]).expect("image of a base element");
        lambda[at] = d.lambda[pos].clone();
    }
    Ok(DecoratedBase { base: image, base_degree: d.base_degree, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::matroid::{enumerate_bases, enumerate_circuits_naive, GroundSet, GroundSetAction};
    use crate::parse::parse_polynomial;
    use crate::symbolic::IdealOracle;

    fn ideal(vars: &[&str], gens: &[&str]) -> IdealPresentation<Rationals> {
        let r = PolyRing::new(Rationals, vars.iter().copied(), MonomialOrder::Grevlex).unwrap();
        IdealPresentation::parse(r, gens).unwrap()
    }

    const TORUS: &str = "(x^2+y^2+z^2+3)^2-16*(x^2+y^2)";

    #[test]
    fn circle_circuit() {
        let p = ideal(&["x", "y"], &["x^2+y^2-1"]);
        let d = circuit_polynomial(&p, 0b11, Budget::default()).unwrap();
        let expected = parse_polynomial("x^2+y^2-1", d.polynomial.ring()).unwrap();
        assert_eq!(d.polynomial, expected);
        assert_eq!(d.degree, 2);
        assert_eq!(d.top_degree, vec![2, 2]);
        assert_eq!(d.support, vec![vec![0, 0], vec![0, 2], vec![2, 0]]);
        assert!(matches!(circuit_polynomial(&p, 0b01, Budget::default()), Err(Error::NotCircuit(_))));
    }

    #[test]
    fn base_degrees() {
        let circle = ideal(&["x", "y"], &["x^2+y^2-1"]);
        let cfg = BaseDegreeConfig::default();
        assert_eq!(base_degree(&circle, 0b01, &cfg).unwrap().base_degree, 2);
        let torus = ideal(&["x", "y", "z"], &[TORUS]);
        let b = base_degree(&torus, 0b011, &cfg).unwrap();
        assert_eq!(b.base_degree, 4);
        assert_eq!(b.lambda.len(), 2);
        // {x,y,z} is dependent: every fiber is empty.
        assert!(base_degree(&torus, 0b111, &cfg).is_err());
    }

    #[test]
    fn positive_characteristic_bases_are_left_undecorated() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), ["a", "b", "c"], MonomialOrder::Grevlex).unwrap();
        let p = IdealPresentation::parse(r, &["a+b+c"]).unwrap();
        let o = IdealOracle::new(&p, Budget::default()).unwrap();
        let ground = GroundSet::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let m = Matroid::new(ground, 2)
            .with_bases(enumerate_bases(&o).unwrap())
            .with_circuits(enumerate_circuits_naive(&o, None).unwrap());
        let d = decorate(Source::Ideal(&p), &m, None, &DecorateOptions::default()).unwrap();
        assert!(d.bases.is_empty());
        assert_eq!(d.notes.len(), 1);
        assert_eq!(d.circuit_degree_histogram(), BTreeMap::from([(1, 1)]));
        assert!(matches!(base_degree(&p, 0b011, &BaseDegreeConfig::default()), Err(Error::Characteristic(2, _))));
    }

    #[test]
    fn orbit_decoration_matches_direct() {
        // x^2+y^2+z^2-1 on the sphere, symmetric under all of S3.
        let p = ideal(&["x", "y", "z", "w"], &["x^2+y^2+z^2-1", "w-x*y*z"]);
        let o = IdealOracle::new(&p, Budget::default()).unwrap();
        let ground = GroundSet::new(["x", "y", "z", "w"].map(String::from).to_vec()).unwrap();
        let m = Matroid::new(ground, 2)
            .with_bases(enumerate_bases(&o).unwrap())
            .with_circuits(enumerate_circuits_naive(&o, None).unwrap());
        let group = GroundSetAction::from_cycles(4, &[vec![vec![0, 1, 2]], vec![vec![0, 1]]]).unwrap().elements().unwrap();
        let opts = DecorateOptions::default();
        let direct = decorate(Source::Ideal(&p), &m, None, &opts).unwrap();
        let reduced = decorate(Source::Ideal(&p), &m, Some(&group), &opts).unwrap();
        assert_eq!(direct.errors(), 0);
        for (a, b) in direct.circuits.iter().zip(&reduced.circuits) {
            let (a, b) = (a.result.as_ref().unwrap(), b.result.as_ref().unwrap());
            assert_eq!(a.circuit, b.circuit);
            assert_eq!(a.polynomial, b.polynomial);
            assert_eq!(a.top_degree, b.top_degree);
        }
        assert_eq!(direct.base_degree_histogram(), reduced.base_degree_histogram());
        assert_eq!(direct.circuit_degree_histogram(), reduced.circuit_degree_histogram());
    }

    #[test]
    fn action_that_moves_the_ideal_is_not_used_for_relabeling() {
        // Swapping x and y fixes the matroid U(1,2) but not the ideal.
        let p = ideal(&["x", "y"], &["x^2 + y"]);
        let ground = GroundSet::new(vec!["x".into(), "y".into()]).unwrap();
        let m = Matroid::new(ground, 1).with_bases(vec![0b01, 0b10]).with_circuits(vec![0b11]);
        let group = GroundSetAction::from_cycles(2, &[vec![vec![0, 1]]]).unwrap().elements().unwrap();
        let d = decorate(Source::Ideal(&p), &m, Some(&group), &DecorateOptions::default()).unwrap();
        assert!(d.notes.iter().any(|n| n.contains("does not preserve")));
        let c = d.circuits[0].result.as_ref().unwrap();
        assert_eq!(c.polynomial, parse_polynomial("x^2+y", c.polynomial.ring()).unwrap());
        assert_eq!(d.base_degree_histogram(), BTreeMap::from([(1, 1), (2, 1)]));
    }

    #[test]
    fn parametric_circuit_matches_implicit() {
        let r = PolyRing::new(Rationals, ["t"], MonomialOrder::Grevlex).unwrap();
        let phi = Parametrization::parse(
            r,
            &[("x".into(), "t".into()), ("y".into(), "t^2".into()), ("z".into(), "t^3".into())],
        )
        .unwrap();
        let d = circuit_polynomial_param(&phi, 0b101, Budget::default()).unwrap();
        assert_eq!(d.polynomial, parse_polynomial("x^3-z", d.polynomial.ring()).unwrap());
        assert_eq!(d.top_degree, vec![3, 0, 1]);
    }
}
