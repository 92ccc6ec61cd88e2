//! Matroids given by rank oracles: enumeration, orbit reduction, exchange
//! closure and axiom checks.

pub mod axioms;
pub mod enumerate;
pub mod exchange;
pub mod oracle;
pub mod orbit;
pub mod subset;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use axioms::{verify_axioms, AxiomCheck, AxiomOptions, AxiomReport};
pub use enumerate::{enumerate_bases, enumerate_bases_by_orbits, enumerate_circuits_naive};
pub use exchange::{circuits_by_exchange, fundamental_circuit, ExchangeCertificate, ExchangeResult};
pub use oracle::{BasesOracle, Memoized, RankOracle, UniformOracle};
pub use orbit::{orbit_reduce, Group, GroundSetAction, OrbitClass};
pub use subset::Subset;

/// Ordered, distinct element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() > subset::MAX_GROUND {
            return Err(Error::Invalid(format!("{} elements exceed the limit of {}", labels.len(), subset::MAX_GROUND)));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Invalid(format!("duplicate ground-set label `{dup}`")));
        }
        Ok(GroundSet { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolves labels to a subset.
    pub fn subset_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels.iter().try_fold(0, |s, l| {
            let l = l.as_ref();
            self.index_of(l).map(|i| s | 1 << i).ok_or_else(|| Error::UnknownVariable(l.to_string()))
        })
    }

    pub fn names(&self, s: Subset) -> Vec<&str> {
        subset::to_indices(s).into_iter().map(|i| self.labels[i].as_str()).collect()
    }

    pub fn full(&self) -> Subset {
        subset::full(self.len())
    }
}

impl TryFrom<Vec<String>> for GroundSet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        GroundSet::new(v)
    }
}

impl From<GroundSet> for Vec<String> {
    fn from(g: GroundSet) -> Self {
        g.labels
    }
}

/// A matroid with optionally enumerated bases and circuits, each kept
/// sorted by index tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    pub ground: GroundSet,
    pub rank: usize,
    pub bases: Option<Vec<Subset>>,
    pub circuits: Option<Vec<Subset>>,
}

impl Matroid {
    pub fn new(ground: GroundSet, rank: usize) -> Self {
        Matroid { ground, rank, bases: None, circuits: None }
    }

    pub fn with_bases(mut self, mut bases: Vec<Subset>) -> Self {
        sort_family(&mut bases);
        self.bases = Some(bases);
        self
    }

    pub fn with_circuits(mut self, mut circuits: Vec<Subset>) -> Self {
        sort_family(&mut circuits);
        self.circuits = Some(circuits);
        self
    }

    pub fn bases(&self) -> Result<&[Subset]> {
        self.bases.as_deref().ok_or_else(|| Error::Missing("bases have not been enumerated".into()))
    }

    pub fn circuits(&self) -> Result<&[Subset]> {
        self.circuits.as_deref().ok_or_else(|| Error::Missing("circuits have not been enumerated".into()))
    }

    /// Rank of `s` computed from the bases.
    pub fn rank_of(&self, s: Subset) -> Result<usize> {
        Ok(self.bases()?.iter().map(|&b| subset::size(b & s)).max().unwrap_or(0))
    }

    /// The dual matroid: bases are complements of bases. Circuits of the dual
    /// are not derived.
    pub fn dualize(&self) -> Result<Matroid> {
        let full = self.ground.full();
        let bases = self.bases()?.iter().map(|&b| full & !b).collect();
        Ok(Matroid::new(self.ground.clone(), self.ground.len() - self.rank).with_bases(bases))
    }

    pub fn to_json(&self) -> MatroidJson {
        let lists = |v: &Option<Vec<Subset>>| v.as_ref().map(|v| v.iter().map(|&s| subset::to_indices(s)).collect());
        MatroidJson {
            ground: self.ground.labels().to_vec(),
            rank: self.rank,
            bases: lists(&self.bases),
            circuits: lists(&self.circuits),
        }
    }

    pub fn from_json(j: &MatroidJson) -> Result<Matroid> {
        let ground = GroundSet::new(j.ground.clone())?;
        let n = ground.len();
        let conv = |v: &Vec<Vec<usize>>| -> Result<Vec<Subset>> {
            v.iter()
                .map(|ix| {
                    if let Some(&bad) = ix.iter().find(|&&i| i >= n) {
                        return Err(Error::Invalid(format!("index {bad} outside the ground set")));
                    }
                    Ok(subset::from_indices(ix))
                })
                .collect()
        };
        let mut m = Matroid::new(ground, j.rank);
        if let Some(b) = &j.bases {
            m = m.with_bases(conv(b)?);
        }
        if let Some(c) = &j.circuits {
            m = m.with_circuits(conv(c)?);
        }
        Ok(m)
    }
}

/// Serialized matroid: 0-based sorted index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub ground: Vec<String>,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuits: Option<Vec<Vec<usize>>>,
}

/// Sorts by cardinality, then by index tuple.
pub fn sort_family(v: &mut [Subset]) {
    v.sort_by(|a, b| subset::size(*a).cmp(&subset::size(*b)).then(subset::lex_cmp(*a, *b)));
}
