//! Versioned JSON reports. Every list is sorted and every map ordered, so a
//! fixed input and seed serialize to identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decorations::DecoratedMatroid;
use crate::error::Result;
use crate::engine::{Computed, CrossCheck, Engine};
use crate::field::{Field, FieldSpec};
use crate::jacobian::NmLocus;
use crate::matroid::orbit::{orbit_reduce, orbit_size_profile, Group};
use crate::matroid::subset::{self, Subset};
use crate::matroid::{AxiomReport, ExchangeCertificate, Matroid, MatroidJson};

pub const SCHEMA: &str = "algmatroid-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub field: String,
    /// `ideal` or `parametrization`.
    pub input: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<Engine>,
    /// False when a linear engine ran in positive characteristic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    pub seed: u64,
    #[serde(flatten)]
    pub matroid: MatroidJson,
    #[serde(skip_serializing_if = "Histograms::is_empty")]
    pub histograms: Histograms,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Orbits>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exchange_certificate: Option<ExchangeCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_points: Option<[Vec<String>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decorations: Option<Decorations>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nm_locus: Option<NmLocusJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckJson>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Histograms {
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub circuit_sizes: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub circuit_degrees: BTreeMap<u32, usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub base_degrees: BTreeMap<u64, usize>,
}

impl Histograms {
    pub fn is_empty(&self) -> bool {
        self.circuit_sizes.is_empty() && self.circuit_degrees.is_empty() && self.base_degrees.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitJson {
    pub representative: Vec<usize>,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbits {
    pub group_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<OrbitJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuits: Option<Vec<OrbitJson>>,
    /// Orbit sizes of circuit classes, by circuit size.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub circuit_profile: BTreeMap<usize, Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CircuitDecoration {
    pub circuit: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<Vec<u32>>,
    /// Exponent vectors over the circuit's elements, in index order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseDecoration {
    pub base: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decorations {
    pub circuits: Vec<CircuitDecoration>,
    pub bases: Vec<BaseDecoration>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum NmLocusJson {
    Principal { generator: String, empty: bool },
    Components { components: Vec<Vec<String>>, empty: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub passed: bool,
    pub axioms: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_engine: Option<CrossCheck>,
    /// Naive and exchange enumeration found the same circuits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub naive_matches_exchange: Option<bool>,
    /// Dualizing twice returns the original bases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality_involution: Option<bool>,
}

fn indices(s: Subset) -> Vec<usize> {
    subset::to_indices(s)
}

impl Report {
    pub fn new(field: &FieldSpec, is_param: bool, seed: u64, matroid: &Matroid) -> Self {
        let mut histograms = Histograms::default();
        if let Ok(c) = matroid.circuits() {
            for &s in c {
                *histograms.circuit_sizes.entry(subset::size(s)).or_default() += 1;
            }
        }
        Report {
            schema: SCHEMA,
            field: field.to_string(),
            input: if is_param { "parametrization" } else { "ideal" },
            engine: None,
            certified: None,
            seed,
            matroid: matroid.to_json(),
            histograms,
            orbits: None,
            exchange_certificate: None,
            sample_points: None,
            decorations: None,
            nm_locus: None,
            check: None,
        }
    }

    pub fn from_computed(field: &FieldSpec, is_param: bool, seed: u64, c: &Computed) -> Self {
        let mut r = Report::new(field, is_param, seed, &c.matroid);
        r.engine = Some(c.engine);
        r.certified = Some(c.certified);
        r.sample_points = c.sample_points.clone();
        r.exchange_certificate = c.exchange_certificate.clone();
        r
    }

    /// Orbit classes of whatever families the matroid carries.
    pub fn with_orbits(mut self, m: &Matroid, group: &Group) -> Result<Self> {
        let classes = |fam: &[Subset]| -> Result<Vec<OrbitJson>> {
            Ok(orbit_reduce(fam, group)?
                .into_iter()
                .map(|c| OrbitJson { representative: indices(c.representative), size: c.size })
                .collect())
        };
        let bases = m.bases.as_deref().map(classes).transpose()?;
        let (circuits, circuit_profile) = match m.circuits.as_deref() {
            Some(c) => {
                let cl = orbit_reduce(c, group)?;
                let json = cl.iter().map(|c| OrbitJson { representative: indices(c.representative), size: c.size }).collect();
                (Some(json), orbit_size_profile(&cl))
            }
            None => (None, BTreeMap::new()),
        };
        self.orbits = Some(Orbits { group_order: group.order(), bases, circuits, circuit_profile });
        Ok(self)
    }

    /// Adds decorations; `summary_only` omits polynomials and supports.
    pub fn with_decorations<F: Field>(mut self, d: &DecoratedMatroid<F>, field: &F, summary_only: bool) -> Self {
        self.histograms.circuit_degrees = d.circuit_degree_histogram();
        self.histograms.base_degrees = d.base_degree_histogram();
        let circuits = d
            .circuits
            .iter()
            .map(|it| match &it.result {
                Ok(c) => CircuitDecoration {
                    circuit: indices(it.set),
                    polynomial: (!summary_only).then(|| c.polynomial.to_string()),
                    terms: Some(c.polynomial.len()),
                    degree: Some(c.degree),
                    top_degree: Some(c.top_degree.clone()),
                    support: (!summary_only).then(|| c.support.clone()),
                    error: None,
                },
                Err(e) => CircuitDecoration {
                    circuit: indices(it.set),
                    polynomial: None,
                    terms: None,
                    degree: None,
                    top_degree: None,
                    support: None,
                    error: Some(e.to_string()),
                },
            })
            .collect();
        let bases = d
            .bases
            .iter()
            .map(|it| match &it.result {
                Ok(b) => BaseDecoration {
                    base: indices(it.set),
                    base_degree: Some(b.base_degree),
                    lambda: Some(b.lambda.iter().map(|x| field.format(x)).collect()),
                    error: None,
                },
                Err(e) => BaseDecoration { base: indices(it.set), base_degree: None, lambda: None, error: Some(e.to_string()) },
            })
            .collect();
        self.decorations = Some(Decorations { circuits, bases, notes: d.notes.clone() });
        self
    }
}

impl NmLocusJson {
    pub fn new<F: Field>(nm: &NmLocus<F>) -> Self {
        let empty = nm.is_empty_locus();
        match &nm.generator {
            Some(g) => NmLocusJson::Principal { generator: g.to_string(), empty },
            None => NmLocusJson::Components {
                components: nm.components.iter().map(|c| c.generators().iter().map(|g| g.to_string()).collect()).collect(),
                empty,
            },
        }
    }
}
