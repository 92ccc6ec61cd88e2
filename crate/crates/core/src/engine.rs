//! Engine selection and the end-to-end matroid computation for a problem.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Budget;
use crate::jacobian::{linear_oracle_for_ideal, linear_oracle_for_param, SampleConfig};
use crate::matroid::enumerate::confirm_all;
use crate::matroid::subset::{self, Subset};
use crate::matroid::{
    circuits_by_exchange, enumerate_bases, enumerate_bases_by_orbits, enumerate_circuits_naive, BasesOracle,
    ExchangeCertificate, Matroid, Memoized, RankOracle,
};
use crate::problem::{Input, Problem};
use crate::symbolic::{IdealOracle, ParamOracle};

/// Which rank oracle to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Elimination ideals.
    Symbolic,
    /// Jacobian ranks.
    Linear,
    /// Linear for parametrizations in characteristic 0, symbolic otherwise.
    Auto,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Symbolic => "symbolic",
            Engine::Linear => "linear",
            Engine::Auto => "auto",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircuitMethod {
    /// Level-wise scan over all candidate sets.
    Naive,
    /// Closure of the fundamental circuits of one basis, with a certificate.
    Exchange,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub engine: Engine,
    pub budget: Budget,
    /// Also carries the seed used for every random choice.
    pub sample: SampleConfig,
    pub circuit_method: CircuitMethod,
    /// Enumerate bases one orbit at a time when the problem has an action.
    pub use_action: bool,
    /// Re-derive each circuit with the engine's own circuit test.
    pub confirm_circuits: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            engine: Engine::Auto,
            budget: Budget::default(),
            sample: SampleConfig::default(),
            circuit_method: CircuitMethod::Naive,
            use_action: true,
            confirm_circuits: false,
        }
    }
}

impl EngineConfig {
    pub fn seed(&self) -> u64 {
        self.sample.seed
    }
}

/// The concrete engine for an input, or an error when the request cannot be
/// honored in this characteristic.
pub fn resolve_engine<F: Field>(requested: Engine, input: &Input<F>, allow_uncertified: bool) -> Result<Engine> {
    let char0 = input.field().characteristic() == 0;
    match requested {
        Engine::Symbolic => Ok(Engine::Symbolic),
        Engine::Auto if char0 && matches!(input, Input::Param(_)) => Ok(Engine::Linear),
        Engine::Auto => Ok(Engine::Symbolic),
        Engine::Linear if char0 || allow_uncertified => Ok(Engine::Linear),
        Engine::Linear => Err(Error::Characteristic(
            input.field().characteristic(),
            "the Jacobian does not certify the algebraic matroid here; use the symbolic engine".into(),
        )),
    }
}

/// A rank oracle with a record of how it was built.
pub struct BuiltOracle {
    pub oracle: Box<dyn RankOracle>,
    pub engine: Engine,
    /// False for linear oracles in positive characteristic.
    pub certified: bool,
    /// Sample points behind a parametrization's linear oracle, as text.
    pub sample_points: Option<[Vec<String>; 2]>,
}

pub fn build_oracle<F: Field>(input: &Input<F>, cfg: &EngineConfig) -> Result<BuiltOracle> {
    let engine = resolve_engine(cfg.engine, input, cfg.sample.allow_uncertified)?;
    let field = input.field();
    Ok(match (engine, input) {
        (Engine::Symbolic, Input::Ideal(i)) => BuiltOracle {
            oracle: Box::new(IdealOracle::new(i, cfg.budget)?),
            engine,
            certified: true,
            sample_points: None,
        },
        (Engine::Symbolic, Input::Param(p)) => BuiltOracle {
            oracle: Box::new(ParamOracle::new(p, cfg.budget)),
            engine,
            certified: true,
            sample_points: None,
        },
        (_, Input::Ideal(i)) => {
            let o = linear_oracle_for_ideal(i, cfg.budget)?;
            let certified = o.is_certified();
            BuiltOracle { oracle: Box::new(o), engine: Engine::Linear, certified, sample_points: None }
        }
        (_, Input::Param(p)) => {
            let s = linear_oracle_for_param(p, &cfg.sample)?;
            let certified = s.oracle.is_certified();
            let text = |pt: &[F::Elem]| pt.iter().map(|x| field.format(x)).collect::<Vec<_>>();
            let points = [text(&s.points[0]), text(&s.points[1])];
            BuiltOracle { oracle: Box::new(s.oracle), engine: Engine::Linear, certified, sample_points: Some(points) }
        }
    })
}

/// What to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wanted {
    pub bases: bool,
    pub circuits: bool,
}

impl Wanted {
    pub const ALL: Wanted = Wanted { bases: true, circuits: true };
    pub const BASES: Wanted = Wanted { bases: true, circuits: false };
    pub const CIRCUITS: Wanted = Wanted { bases: false, circuits: true };
}

pub struct Computed {
    pub matroid: Matroid,
    pub engine: Engine,
    pub certified: bool,
    pub sample_points: Option<[Vec<String>; 2]>,
    /// Present when circuits came from the exchange closure.
    pub exchange_certificate: Option<ExchangeCertificate>,
    /// Rank queries that reached the engine.
    pub evaluations: u64,
}

/// Lexicographically first basis, built greedily.
pub fn greedy_basis<O: RankOracle + ?Sized>(oracle: &O) -> Result<Subset> {
    let mut b: Subset = 0;
    for e in 0..oracle.ground_size() {
        if oracle.is_independent(b | 1 << e)? {
            b |= 1 << e;
        }
    }
    Ok(b)
}

/// Rank, bases and circuits of a problem's matroid.
///
/// When the bases are known and the engine is symbolic, the circuit scan
/// runs against the rank function the bases define instead of computing
/// further elimination ideals.
pub fn compute_matroid<F: Field>(problem: &Problem<F>, cfg: &EngineConfig, wanted: Wanted) -> Result<Computed> {
    let built = build_oracle(&problem.input, cfg)?;
    let oracle = Memoized::new(built.oracle);
    let ground = problem.input.ground_set()?;
    let n = ground.len();
    let rank = oracle.full_rank()?;

    let need_bases = wanted.bases || (wanted.circuits && cfg.circuit_method == CircuitMethod::Naive && built.engine == Engine::Symbolic);
    let bases = if need_bases {
        Some(match (&problem.action, cfg.use_action) {
            (Some(a), true) => enumerate_bases_by_orbits(&oracle, a)?,
            _ => enumerate_bases(&oracle)?,
        })
    } else {
        None
    };

    let mut certificate = None;
    let circuits = if wanted.circuits {
        Some(match cfg.circuit_method {
            CircuitMethod::Naive => match (&bases, built.engine) {
                (Some(b), Engine::Symbolic) => {
                    let c = enumerate_circuits_naive(&BasesOracle::new(n, b.clone()), None)?;
                    if cfg.confirm_circuits {
                        confirm_all(&oracle, &c)?;
                    }
                    c
                }
                _ => enumerate_circuits_naive(&oracle, None)?,
            },
            CircuitMethod::Exchange => {
                let b = match bases.as_ref().and_then(|b| b.first()) {
                    Some(&b) => b,
                    None => greedy_basis(&oracle)?,
                };
                let res = circuits_by_exchange(&oracle, b)?;
                if cfg.confirm_circuits {
                    confirm_all(&oracle, &res.circuits)?;
                }
                if !res.certificate.complete {
                    return Err(Error::Invalid(format!(
                        "exchange closure found {} circuits but could not certify completeness",
                        res.circuits.len()
                    )));
                }
                certificate = Some(res.certificate);
                res.circuits
            }
        })
    } else {
        None
    };

    let mut m = Matroid::new(ground, rank);
    if wanted.bases {
        m = m.with_bases(bases.unwrap_or_default());
    }
    if let Some(c) = circuits {
        m = m.with_circuits(c);
    }
    Ok(Computed {
        matroid: m,
        engine: built.engine,
        certified: built.certified,
        sample_points: built.sample_points,
        exchange_certificate: certificate,
        evaluations: oracle.evaluations(),
    })
}

/// Outcome of comparing two engines on random subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub subsets: usize,
    /// First disagreement: the subset and the two ranks.
    pub mismatch: Option<(Vec<usize>, usize, usize)>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Up to `count` distinct random subsets of size at most `ρ(E) + 1`, plus
/// the full set.
pub fn probe_subsets(n: usize, rank: usize, count: usize, seed: u64) -> Vec<Subset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![subset::full(n)];
    let mut idx: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::HashSet::from([subset::full(n)]);
    let mut tries = 0;
    while out.len() < count && tries < 20 * count {
        tries += 1;
        let k = rng.gen_range(0..=(rank + 1).min(n));
        idx.shuffle(&mut rng);
        let s = subset::from_indices(&idx[..k]);
        if seen.insert(s) {
            out.push(s);
        }
    }
    out
}

/// Compares the symbolic and linear ranks of `probes` random subsets.
pub fn cross_check<F: Field>(input: &Input<F>, cfg: &EngineConfig, probes: usize) -> Result<CrossCheck> {
    let sym = build_oracle(input, &EngineConfig { engine: Engine::Symbolic, ..cfg.clone() })?;
    let lin = build_oracle(input, &EngineConfig { engine: Engine::Linear, ..cfg.clone() })?;
    let n = input.labels().len();
    let rank = lin.oracle.full_rank()?;
    let subsets = probe_subsets(n, rank, probes, cfg.seed() ^ 0x5eed);
    use rayon::prelude::*;
    let ranks = subsets
        .par_iter()
        .map(|&s| Ok((sym.oracle.rank(s)?, lin.oracle.rank(s)?)))
        .collect::<Result<Vec<(usize, usize)>>>()?;
    let mismatch = subsets
        .iter()
        .zip(&ranks)
        .find(|(_, (a, b))| a != b)
        .map(|(&s, &(a, b))| (subset::to_indices(s), a, b));
    Ok(CrossCheck { subsets: subsets.len(), mismatch })
}
