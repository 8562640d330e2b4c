use std::fmt;
use std::path::Path;

use coarse_core::graph::{FiniteGroup, Graph};
use coarse_core::io::{from_json, CoverFile, PartitionFile, SpaceFile, WitnessFile};
use coarse_core::measures::ProbabilityMeasure;
use coarse_core::metric::{Cover, FiniteMetricSpace};
use coarse_core::pou::{PartitionOfUnity, PropertyAWitness};
use coarse_core::Error;

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable files, schema or invariant violations. Exit 2.
    Usage(String),
    /// A verified guarantee did not hold. Exit 1.
    Bug(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Bug(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let bug = match &e {
            Error::Inconsistency(_) => true,
            Error::FinderFailed { source, .. } => matches!(**source, Error::Inconsistency(_)),
            _ => false,
        };
        if bug {
            Failure::Bug(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn located<T>(path: &Path, r: coarse_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        bug => bug,
    })
}

pub fn space(path: &Path, tol: f64) -> CliResult<FiniteMetricSpace> {
    located(path, parse::<SpaceFile>(path)?.build(tol))
}

pub fn graph(path: &Path) -> CliResult<Graph> {
    parse(path)
}

pub fn group(path: &Path) -> CliResult<FiniteGroup> {
    parse(path)
}

pub fn cover(path: &Path, space: &FiniteMetricSpace) -> CliResult<Cover> {
    located(path, parse::<CoverFile>(path)?.build(space))
}

pub fn partition(path: &Path, space: &FiniteMetricSpace) -> CliResult<PartitionOfUnity<String>> {
    located(path, parse::<PartitionFile>(path)?.build(space))
}

pub fn witness(path: &Path, space: &FiniteMetricSpace) -> CliResult<PropertyAWitness> {
    located(path, parse::<WitnessFile>(path)?.build(space))
}

pub fn measure(path: &Path, space: &FiniteMetricSpace) -> CliResult<ProbabilityMeasure> {
    let m: ProbabilityMeasure = parse(path)?;
    located(path, m.check_space(space).map(|_| m))
}
