//! Black-box and two-stage network MPSS models.
//!
//! Every model maximises an output expansion factor minus an input
//! contraction factor under variable returns to scale (each stage's reference
//! weights sum to one). Scores are zero exactly for DMUs at their most
//! productive scale size.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::lp::{LpBuilder, LpSolution, Relation, Sense, Var};
use crate::model_io::{BlackBoxRoles, Dataset, NetworkTopology};
use crate::optimum::{convexity, face_ranges, linear, scaled_row, solve_optimal, FIXING_BAND};

/// A score at or below this magnitude classifies the DMU as MPSS.
pub const MPSS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    BlackBox,
    SystemVariable,
    SystemRadial,
    Stage1,
    Stage2,
}

/// How intermediates enter the system model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Intermediates {
    /// Free target levels between stage-1 supply and stage-2 use.
    Variable,
    /// Scaled with the stage's own output and input factors.
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MpssResult {
    pub dmu: String,
    pub scope: Scope,
    pub score: f64,
    /// Keys `input`/`output` for the black box, `stage{1,2}_{input,output}`
    /// for the network models.
    pub scale_factors: IndexMap<&'static str, f64>,
    /// One reference-weight vector per stage.
    pub reference_weights: Vec<Vec<f64>>,
    /// Target intermediate levels (variable-intermediate model only).
    pub optimal_intermediates: IndexMap<String, f64>,
    /// Range of each target over all optimal solutions.
    pub intermediate_ranges: IndexMap<String, (f64, f64)>,
}

impl MpssResult {
    pub fn is_mpss(&self) -> bool {
        self.score.abs() <= MPSS_TOL
    }

    /// True when some target intermediate is not pinned down by the optimum.
    pub fn has_alternate_intermediates(&self) -> bool {
        self.intermediate_ranges
            .values()
            .any(|&(lo, hi)| hi - lo > MPSS_TOL * hi.abs().max(1.0))
    }
}

pub fn blackbox_mpss(dataset: &Dataset, roles: &BlackBoxRoles, dmu: &str) -> Result<MpssResult> {
    let o = dataset.dmu_index(dmu)?;
    let x = dataset.matrix(&roles.inputs)?;
    let y = dataset.matrix(&roles.outputs)?;
    let n = dataset.num_dmus();

    let mut b = LpBuilder::new(Sense::Maximize);
    let t_in = b.var("input");
    let t_out = b.var("output");
    let lam = b.vars("lambda", n);
    for row in &x {
        scaled_row(&mut b, &lam, row, t_in, -row[o], Relation::Le);
    }
    for row in &y {
        scaled_row(&mut b, &lam, row, t_out, -row[o], Relation::Ge);
    }
    convexity(&mut b, &lam);
    b.objective([(t_out, 1.0), (t_in, -1.0)]);

    let sol = solve_optimal(&b, "black-box MPSS model", dmu)?;
    let v = &sol.variable_values;
    Ok(MpssResult {
        dmu: dmu.to_string(),
        scope: Scope::BlackBox,
        score: sol.objective_value,
        scale_factors: [("input", v[t_in.0]), ("output", v[t_out.0])].into_iter().collect(),
        reference_weights: vec![values(v, &lam)],
        optimal_intermediates: IndexMap::new(),
        intermediate_ranges: IndexMap::new(),
    })
}

struct TwoStageData {
    n: usize,
    intermediates: Vec<String>,
    x1: Vec<Vec<f64>>,
    z: Vec<Vec<f64>>,
    y1: Vec<Vec<f64>>,
    x2: Vec<Vec<f64>>,
    y2: Vec<Vec<f64>>,
}

impl TwoStageData {
    fn new(dataset: &Dataset, topology: &NetworkTopology) -> Result<Self> {
        let r = topology.two_stage_roles()?;
        Ok(Self {
            n: dataset.num_dmus(),
            x1: dataset.matrix(&r.stage1_inputs)?,
            z: dataset.matrix(&r.intermediates)?,
            y1: dataset.matrix(&r.stage1_outputs)?,
            x2: dataset.matrix(&r.stage2_inputs)?,
            y2: dataset.matrix(&r.stage2_outputs)?,
            intermediates: r.intermediates,
        })
    }
}

struct TwoStageLp {
    b: LpBuilder,
    in1: Var,
    out1: Var,
    in2: Var,
    out2: Var,
    lam1: Vec<Var>,
    lam2: Vec<Var>,
    targets: Vec<Var>,
}

impl TwoStageLp {
    fn new(d: &TwoStageData, o: usize, mode: Intermediates) -> Self {
        let mut b = LpBuilder::new(Sense::Maximize);
        let in1 = b.var("stage1_input");
        let out1 = b.var("stage1_output");
        let in2 = b.var("stage2_input");
        let out2 = b.var("stage2_output");
        let lam1 = b.vars("lambda1", d.n);
        let lam2 = b.vars("lambda2", d.n);
        let targets = match mode {
            Intermediates::Variable => d.intermediates.iter().map(|m| b.var(format!("target[{m}]"))).collect(),
            Intermediates::Radial => Vec::new(),
        };

        for row in &d.x1 {
            scaled_row(&mut b, &lam1, row, in1, -row[o], Relation::Le);
        }
        for (k, row) in d.z.iter().enumerate() {
            match mode {
                Intermediates::Variable => {
                    scaled_row(&mut b, &lam1, row, targets[k], -1.0, Relation::Ge);
                    scaled_row(&mut b, &lam2, row, targets[k], -1.0, Relation::Le);
                }
                Intermediates::Radial => {
                    scaled_row(&mut b, &lam1, row, out1, -row[o], Relation::Ge);
                    scaled_row(&mut b, &lam2, row, in2, -row[o], Relation::Le);
                }
            }
        }
        for row in &d.y1 {
            scaled_row(&mut b, &lam1, row, out1, -row[o], Relation::Ge);
        }
        for row in &d.x2 {
            scaled_row(&mut b, &lam2, row, in2, -row[o], Relation::Le);
        }
        for row in &d.y2 {
            scaled_row(&mut b, &lam2, row, out2, -row[o], Relation::Ge);
        }
        convexity(&mut b, &lam1);
        convexity(&mut b, &lam2);
        Self {
            b,
            in1,
            out1,
            in2,
            out2,
            lam1,
            lam2,
            targets,
        }
    }

    fn system_objective(&self) -> [(Var, f64); 2] {
        [(self.out2, 1.0), (self.in1, -1.0)]
    }

    fn stage1_objective(&self) -> [(Var, f64); 2] {
        [(self.out1, 1.0), (self.in1, -1.0)]
    }

    fn stage2_objective(&self) -> [(Var, f64); 2] {
        [(self.out2, 1.0), (self.in2, -1.0)]
    }

    fn result(&self, dmu: &str, scope: Scope, sol: &LpSolution) -> MpssResult {
        let v = &sol.variable_values;
        MpssResult {
            dmu: dmu.to_string(),
            scope,
            score: sol.objective_value,
            scale_factors: [
                ("stage1_input", v[self.in1.0]),
                ("stage1_output", v[self.out1.0]),
                ("stage2_input", v[self.in2.0]),
                ("stage2_output", v[self.out2.0]),
            ]
            .into_iter()
            .collect(),
            reference_weights: vec![values(v, &self.lam1), values(v, &self.lam2)],
            optimal_intermediates: IndexMap::new(),
            intermediate_ranges: IndexMap::new(),
        }
    }
}

fn values(v: &[f64], vars: &[Var]) -> Vec<f64> {
    vars.iter().map(|&Var(j)| v[j]).collect()
}

/// System MPSS with free target intermediates.
pub fn network_mpss_variable(dataset: &Dataset, topology: &NetworkTopology, dmu: &str) -> Result<MpssResult> {
    let d = TwoStageData::new(dataset, topology)?;
    let o = dataset.dmu_index(dmu)?;
    let mut m = TwoStageLp::new(&d, o, Intermediates::Variable);
    let objective = m.system_objective();
    m.b.objective(objective);
    let model = "network MPSS model (variable intermediates)";
    let sol = solve_optimal(&m.b, model, dmu)?;
    let mut res = m.result(dmu, Scope::SystemVariable, &sol);
    let ranges = face_ranges(&m.b, &objective, sol.objective_value, &m.targets, model, dmu)?;
    for (k, name) in d.intermediates.iter().enumerate() {
        res.optimal_intermediates.insert(name.clone(), sol.variable_values[m.targets[k].0]);
        res.intermediate_ranges.insert(name.clone(), ranges[k]);
    }
    Ok(res)
}

/// System MPSS with intermediates scaled radially.
pub fn network_mpss_radial(dataset: &Dataset, topology: &NetworkTopology, dmu: &str) -> Result<MpssResult> {
    let d = TwoStageData::new(dataset, topology)?;
    let o = dataset.dmu_index(dmu)?;
    let mut m = TwoStageLp::new(&d, o, Intermediates::Radial);
    m.b.objective(m.system_objective());
    let sol = solve_optimal(&m.b, "network MPSS model (radial intermediates)", dmu)?;
    Ok(m.result(dmu, Scope::SystemRadial, &sol))
}

pub fn network_mpss(
    dataset: &Dataset,
    topology: &NetworkTopology,
    dmu: &str,
    mode: Intermediates,
) -> Result<MpssResult> {
    match mode {
        Intermediates::Variable => network_mpss_variable(dataset, topology, dmu),
        Intermediates::Radial => network_mpss_radial(dataset, topology, dmu),
    }
}

/// Stage MPSS on the radial model, holding the system score (and for the
/// second stage also the first-stage score) within [`FIXING_BAND`].
pub fn stage_mpss(
    dataset: &Dataset,
    topology: &NetworkTopology,
    dmu: &str,
    system_score: f64,
    stage: Stage,
    stage1_score: Option<f64>,
) -> Result<MpssResult> {
    let d = TwoStageData::new(dataset, topology)?;
    let o = dataset.dmu_index(dmu)?;
    let mut m = TwoStageLp::new(&d, o, Intermediates::Radial);
    let system = m.system_objective();
    m.b.band(&system, system_score - FIXING_BAND, system_score + FIXING_BAND);
    let (objective, scope, model) = match stage {
        Stage::First => (m.stage1_objective(), Scope::Stage1, "stage 1 MPSS model"),
        Stage::Second => {
            let s1 = stage1_score.ok_or_else(|| {
                Error::InvalidArgument("the second-stage model needs the first-stage score".into())
            })?;
            let first = m.stage1_objective();
            m.b.band(&first, s1 - FIXING_BAND, s1 + FIXING_BAND);
            (m.stage2_objective(), Scope::Stage2, "stage 2 MPSS model")
        }
    };
    m.b.objective(objective);
    let sol = solve_optimal(&m.b, model, dmu)?;
    debug_assert!((linear(&system, &sol.variable_values) - system_score).abs() <= 2.0 * FIXING_BAND);
    Ok(m.result(dmu, scope, &sol))
}

/// System, first-stage and second-stage scores of one DMU, solved in order.
pub fn lexicographic_stages(
    dataset: &Dataset,
    topology: &NetworkTopology,
    dmu: &str,
) -> Result<[MpssResult; 3]> {
    let system = network_mpss_radial(dataset, topology, dmu)?;
    let first = stage_mpss(dataset, topology, dmu, system.score, Stage::First, None)?;
    let second = stage_mpss(dataset, topology, dmu, system.score, Stage::Second, Some(first.score))?;
    Ok([system, first, second])
}
