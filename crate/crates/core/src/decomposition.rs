//! Tandem (series-of-parallel) form of a two-stage network and the additive
//! split of its MPSS into weighted stage scores.
//!
//! Each stage of the tandem form holds the real process and, where needed, a
//! dummy process that passes measures through unchanged. A dummy produces
//! exactly what it consumes, so its MPSS is zero by construction and is
//! never solved for.

use crate::error::{Error, Result};
use crate::general_network::{blackbox_mpss, lexicographic_stages, network_mpss_variable};
use crate::model_io::{Dataset, Link, NetworkTopology, ProcessSpec, Shape};

pub const DEFAULT_STAGE_WEIGHT: f64 = 0.5;

/// Scores below this are treated as solver noise around zero.
const NEGATIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TandemStage {
    pub real: ProcessSpec,
    pub dummy: Option<ProcessSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TandemTopology {
    pub stages: [TandemStage; 2],
    pub links: Vec<Link>,
    /// Weight of the real process within each stage; the dummy holds the rest.
    pub weights: (f64, f64),
}

impl TandemTopology {
    pub fn with_weights(mut self, w1: f64, w2: f64) -> Result<Self> {
        check_weights((w1, w2))?;
        self.weights = (w1, w2);
        for (stage, w) in self.stages.iter_mut().zip([w1, w2]) {
            stage.real.importance_weight = w;
            if let Some(d) = &mut stage.dummy {
                d.importance_weight = 1.0 - w;
            }
        }
        Ok(self)
    }

    pub fn to_topology(&self) -> NetworkTopology {
        let processes = self
            .stages
            .iter()
            .flat_map(|s| std::iter::once(s.real.clone()).chain(s.dummy.clone()))
            .collect();
        NetworkTopology {
            shape: Shape::Tandem,
            processes,
            links: self.links.clone(),
        }
    }
}

fn check_weights(w: (f64, f64)) -> Result<()> {
    if [w.0, w.1].iter().all(|v| (0.0..=1.0).contains(v)) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("stage weights must lie in [0, 1], got {w:?}")))
    }
}

/// Inserts dummy processes so that stage-2 exogenous inputs enter at stage 1
/// and stage-1 final outputs leave at stage 2. Weights default to 0.5.
pub fn to_tandem(topology: &NetworkTopology) -> Result<TandemTopology> {
    if topology.shape == Shape::Tandem {
        return Err(Error::UnsupportedTopology("topology is already in tandem form".into()));
    }
    let r = topology.two_stage_roles()?;
    let name1 = &topology.processes.iter().find(|p| p.stage == 1).expect("validated").name;
    let name2 = &topology.processes.iter().find(|p| p.stage == 2).expect("validated").name;
    let process = |name: &str, stage| ProcessSpec {
        name: name.to_string(),
        stage,
        exogenous_inputs: Vec::new(),
        intermediate_outputs: Vec::new(),
        intermediate_inputs: Vec::new(),
        final_outputs: Vec::new(),
        importance_weight: 0.0,
    };

    let mut real1 = process(name1, 1);
    real1.exogenous_inputs = r.stage1_inputs.clone();
    real1.intermediate_outputs = r.intermediates.iter().chain(&r.stage1_outputs).cloned().collect();
    let mut real2 = process(name2, 2);
    real2.intermediate_inputs = r.stage2_inputs.iter().chain(&r.intermediates).cloned().collect();
    real2.final_outputs = r.stage2_outputs.clone();

    let mut links: Vec<Link> = r
        .intermediates
        .iter()
        .map(|m| Link {
            from: name1.clone(),
            to: name2.clone(),
            measure: m.clone(),
        })
        .collect();
    let dummy1 = (!r.stage2_inputs.is_empty()).then(|| {
        let mut d = process(&format!("{name2}_carry"), 1);
        d.exogenous_inputs = r.stage2_inputs.clone();
        d.intermediate_outputs = r.stage2_inputs.clone();
        for m in &r.stage2_inputs {
            links.push(Link {
                from: d.name.clone(),
                to: name2.clone(),
                measure: m.clone(),
            });
        }
        d
    });
    let dummy2 = (!r.stage1_outputs.is_empty()).then(|| {
        let mut d = process(&format!("{name1}_carry"), 2);
        d.intermediate_inputs = r.stage1_outputs.clone();
        d.final_outputs = r.stage1_outputs.clone();
        for m in &r.stage1_outputs {
            links.push(Link {
                from: name1.clone(),
                to: d.name.clone(),
                measure: m.clone(),
            });
        }
        d
    });

    TandemTopology {
        stages: [
            TandemStage {
                real: real1,
                dummy: dummy1,
            },
            TandemStage {
                real: real2,
                dummy: dummy2,
            },
        ],
        links,
        weights: (DEFAULT_STAGE_WEIGHT, DEFAULT_STAGE_WEIGHT),
    }
    .with_weights(DEFAULT_STAGE_WEIGHT, DEFAULT_STAGE_WEIGHT)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionReport {
    pub process_scores: (f64, f64),
    pub stage_scores: (f64, f64),
    pub tandem_score: f64,
    pub weights: (f64, f64),
}

/// Stage score = weight x real-process score (the dummy adds zero); the
/// tandem score is their sum.
pub fn decompose(process_scores: (f64, f64), weights: (f64, f64)) -> Result<DecompositionReport> {
    check_weights(weights)?;
    let (p1, p2) = process_scores;
    if !(p1 >= -NEGATIVE_TOL && p2 >= -NEGATIVE_TOL) {
        return Err(Error::InvalidArgument(format!(
            "process scores must be nonnegative, got {process_scores:?}"
        )));
    }
    let stage_scores = (weights.0 * p1, weights.1 * p2);
    Ok(DecompositionReport {
        process_scores,
        stage_scores,
        tandem_score: stage_scores.0 + stage_scores.1,
        weights,
    })
}

/// Every score reported for one DMU of a two-stage network.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkDecomposition {
    pub dmu: String,
    pub black_box: f64,
    pub system_variable: f64,
    pub system_radial: f64,
    pub process_scores: (f64, f64),
    /// `None` when a process score is negative and the split is undefined.
    pub decomposition: Option<DecompositionReport>,
    /// `process_1 + process_2 - system_radial`; the split is additive only
    /// when this is zero.
    pub additivity_gap: f64,
}

pub fn decompose_network(
    dataset: &Dataset,
    topology: &NetworkTopology,
    dmu: &str,
    weights: (f64, f64),
) -> Result<NetworkDecomposition> {
    check_weights(weights)?;
    let black_box = blackbox_mpss(dataset, &topology.black_box_roles()?, dmu)?.score;
    let system_variable = network_mpss_variable(dataset, topology, dmu)?.score;
    let [system, first, second] = lexicographic_stages(dataset, topology, dmu)?;
    let process_scores = (first.score, second.score);
    let decomposition = decompose(process_scores, weights).ok();
    Ok(NetworkDecomposition {
        dmu: dmu.to_string(),
        black_box,
        system_variable,
        system_radial: system.score,
        process_scores,
        decomposition,
        additivity_gap: first.score + second.score - system.score,
    })
}
