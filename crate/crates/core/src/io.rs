//! JSON file formats for every instance kind.
//!
//! | kind      | shape |
//! |-----------|-------|
//! | space     | `{"n": 3, "dist": [[..]], "labels": [..]?}` |
//! | cover     | `{"elements": [{"label": "a", "points": [0, 1]}]}` |
//! | graph     | `{"n": 4, "edges": [[0, 1], ..]}` |
//! | group     | `{"order": 2, "table": [[..]], "identity": 0, "generators": [1]}` |
//! | partition | `{"labels": ["a"], "values": {"0": {"a": 1.0}}}` |
//! | witness   | `{"S_bound": 2.0, "A": {"0": [[0, 1]]}}` |
//! | measure   | `{"weights": [0.5, 0.5]}` |
//!
//! Schema errors carry a JSON pointer to the offending value.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{Cover, CoverElement, FiniteMetricSpace};
use crate::pou::{PartitionOfUnity, PropertyAWitness, SparseL1Vector};

/// Deserializes `text`, reporting failures with a JSON pointer.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer: String = e
            .path()
            .iter()
            .map(|seg| match seg {
                serde_path_to_error::Segment::Seq { index } => format!("/{index}"),
                serde_path_to_error::Segment::Map { key } => format!("/{key}"),
                serde_path_to_error::Segment::Enum { variant } => format!("/{variant}"),
                serde_path_to_error::Segment::Unknown => "/?".to_string(),
            })
            .collect();
        Error::Schema {
            pointer: if pointer.is_empty() { "/".into() } else { pointer },
            message: e.into_inner().to_string(),
        }
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("instance types serialize")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub n: usize,
    pub dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SpaceFile {
    pub fn from_space(space: &FiniteMetricSpace) -> Self {
        SpaceFile {
            n: space.len(),
            dist: space.rows(),
            labels: space.labels().map(<[String]>::to_vec),
        }
    }

    pub fn build(self, tol: f64) -> Result<FiniteMetricSpace> {
        if self.dist.len() != self.n {
            return Err(Error::InvalidMetric(format!(
                "n = {} but dist has {} rows",
                self.n,
                self.dist.len()
            )));
        }
        let space = FiniteMetricSpace::with_tolerance(self.dist, tol)?;
        match self.labels {
            Some(l) => space.with_labels(l),
            None => Ok(space),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverFile {
    pub elements: Vec<CoverElement>,
}

impl CoverFile {
    pub fn from_cover(cover: &Cover) -> Self {
        CoverFile {
            elements: cover.elements().to_vec(),
        }
    }

    pub fn build(self, space: &FiniteMetricSpace) -> Result<Cover> {
        Cover::new(space, self.elements)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionFile {
    pub labels: Vec<String>,
    pub values: BTreeMap<String, BTreeMap<String, f64>>,
}

fn point_key(key: &str, n: usize) -> Result<usize> {
    let x: usize = key.parse().map_err(|_| Error::Schema {
        pointer: format!("/values/{key}"),
        message: "point keys must be decimal indices".into(),
    })?;
    if x >= n {
        return Err(Error::PointOutOfRange { index: x, n });
    }
    Ok(x)
}

impl PartitionFile {
    pub fn from_partition<L: crate::pou::Label + ToString>(f: &PartitionOfUnity<L>) -> Self {
        PartitionFile {
            labels: f.universe().iter().map(ToString::to_string).collect(),
            values: f
                .values()
                .iter()
                .enumerate()
                .map(|(x, v)| (x.to_string(), v.iter().map(|(l, w)| (l.to_string(), w)).collect()))
                .collect(),
        }
    }

    /// Requires a value for every point of `space` and labels drawn from
    /// the declared universe.
    pub fn build(self, space: &FiniteMetricSpace) -> Result<PartitionOfUnity<String>> {
        let n = space.len();
        let universe: BTreeSet<String> = self.labels.into_iter().collect();
        let mut values: Vec<Option<SparseL1Vector<String>>> = vec![None; n];
        for (key, entries) in self.values {
            let x = point_key(&key, n)?;
            if let Some(l) = entries.keys().find(|l| !universe.contains(*l)) {
                return Err(Error::InvalidPartition(format!(
                    "label {l:?} at point {x} is not in the declared labels"
                )));
            }
            values[x] = Some(entries.into_iter().collect());
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::InvalidPartition(format!("no value for point {x}"))))
            .collect::<Result<Vec<_>>>()?;
        PartitionOfUnity::new(values, universe, space.tol().max(1e-9))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFile {
    #[serde(rename = "S_bound")]
    pub s_bound: f64,
    #[serde(rename = "A")]
    pub a: BTreeMap<String, Vec<[usize; 2]>>,
}

impl WitnessFile {
    pub fn from_witness(w: &PropertyAWitness) -> Self {
        WitnessFile {
            s_bound: w.s_bound,
            a: w
                .sets
                .iter()
                .enumerate()
                .map(|(x, set)| (x.to_string(), set.iter().map(|&(p, i)| [p, i]).collect()))
                .collect(),
        }
    }

    pub fn build(self, space: &FiniteMetricSpace) -> Result<PropertyAWitness> {
        let n = space.len();
        let mut sets = vec![BTreeSet::new(); n];
        for (key, pairs) in self.a {
            let x = point_key(&key, n)?;
            sets[x] = pairs.into_iter().map(|[p, i]| (p, i)).collect();
        }
        Ok(PropertyAWitness {
            s_bound: self.s_bound,
            sets,
        })
    }
}
