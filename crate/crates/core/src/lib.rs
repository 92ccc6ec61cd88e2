//! Algebraic matroids of prime ideals and rational parametrizations.

pub mod error;
pub mod field;
pub mod decorations;
pub mod engine;
pub mod groebner;
pub mod jacobian;
pub mod linalg;
pub mod matroid;
pub mod monomial;
pub mod param;
pub mod parse;
pub mod poly;
pub mod problem;
pub mod ratfun;
pub mod rational;
pub mod report;
pub mod symbolic;

pub use decorations::{
    decorate, BaseDegreeConfig, DecorateOptions, DecoratedBase, DecoratedCircuit, DecoratedMatroid, Item, Source,
};
pub use error::{Error, Result};
pub use field::{AnyField, ExtensionField, Field, FieldSpec, PrimeField, Rationals};
pub use groebner::{Budget, GroebnerBasis, IdealPresentation};
pub use jacobian::{JacobianMatrix, LinearOracle, NmLocus, Orientation, SampleConfig};
pub use matroid::{GroundSet, GroundSetAction, Matroid, RankOracle, Subset};
pub use monomial::{Monomial, MonomialOrder};
pub use param::Parametrization;
pub use parse::{parse_polynomial, parse_rational_function};
pub use poly::{DegreeSummary, PolyRing, Polynomial, Ring};
pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use symbolic::{IdealOracle, ParamOracle};
pub use problem::{AnyProblem, Input, Problem};
pub use engine::{compute_matroid, CircuitMethod, Computed, Engine, EngineConfig, Wanted};
