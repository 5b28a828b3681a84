//! Datasets, network topologies, file loading and descriptive statistics.

mod dataset;
mod topology;

use std::fs;
use std::path::Path;

use indexmap::IndexMap;

pub use dataset::{read_dataset, read_score_column, write_dataset, Dataset};
pub use topology::{BlackBoxRoles, ChainRoles, Link, NetworkTopology, ProcessSpec, Shape, TwoStageRoles};

use crate::error::{Error, Result};

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a data file and a topology and checks them against each other.
/// Returns epsilon-substitution warnings alongside.
pub fn load_dataset(
    data_path: &Path,
    topology_path: &Path,
    min_epsilon: Option<f64>,
) -> Result<(Dataset, NetworkTopology, Vec<String>)> {
    let (dataset, warnings) = load_data_file(data_path, min_epsilon)?;
    let topology = load_topology(topology_path)?;
    topology.check_against(&dataset)?;
    Ok((dataset, topology, warnings))
}

pub fn load_data_file(path: &Path, min_epsilon: Option<f64>) -> Result<(Dataset, Vec<String>)> {
    let text = read_file(path)?;
    read_dataset(text.as_bytes(), &path.display().to_string(), min_epsilon)
}

pub fn load_topology(path: &Path) -> Result<NetworkTopology> {
    NetworkTopology::from_json(&read_file(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSummary {
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single DMU.
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

pub type SummaryStats = IndexMap<String, MeasureSummary>;

pub fn summarize(dataset: &Dataset) -> SummaryStats {
    dataset
        .measures()
        .iter()
        .map(|(name, v)| {
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let sd = if v.len() > 1 {
                (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            } else {
                0.0
            };
            let min = v.iter().copied().fold(f64::INFINITY, f64::min);
            let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            // keep min <= mean <= max despite summation rounding
            let mean = mean.clamp(min, max);
            (name.clone(), MeasureSummary { mean, sd, min, max })
        })
        .collect()
}
