//! R&D value chain: operation and R&D processes in parallel feed a market
//! stage through intermediate measures.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::general_network::MPSS_TOL;
use crate::lp::{LpBuilder, Relation, Sense, Var};
use crate::model_io::{Dataset, NetworkTopology};
use crate::optimum::{convexity, face_ranges, scaled_row, solve_optimal, FIXING_BAND};

/// Relative tolerance for calling a target gap zero.
pub const GAP_TOL: f64 = 1e-6;

/// Objective weights: market expansion, operation contraction, R&D
/// contraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainWeights {
    pub market: f64,
    pub operation: f64,
    pub rd: f64,
}

impl Default for ChainWeights {
    fn default() -> Self {
        Self {
            market: 1.0,
            operation: 1.0,
            rd: 1.0,
        }
    }
}

impl ChainWeights {
    pub fn new(market: f64, operation: f64, rd: f64) -> Result<Self> {
        if [market, operation, rd].iter().all(|w| w.is_finite() && *w >= 0.0) {
            Ok(Self { market, operation, rd })
        } else {
            Err(Error::InvalidArgument(format!(
                "chain weights must be nonnegative, got ({market}, {operation}, {rd})"
            )))
        }
    }

    /// Halves the two parallel contraction weights so that a DMU evaluated
    /// against itself alone scores zero.
    pub fn normalized() -> Self {
        Self {
            market: 1.0,
            operation: 0.5,
            rd: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainEfficiency {
    pub dmu: String,
    pub objective: f64,
    /// Input contraction of the operation process, at most 1.
    pub operation: f64,
    /// Input contraction of the R&D process, at most 1.
    pub rd: f64,
    /// Output expansion of the market stage, at least 1.
    pub market_expansion: f64,
    /// `1 / market_expansion`.
    pub marketability: f64,
    pub intermediates: IndexMap<String, f64>,
}

impl ChainEfficiency {
    pub fn is_efficient(&self, weights: ChainWeights) -> bool {
        (self.objective - (weights.operation + weights.rd - weights.market)).abs() <= MPSS_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainMpss {
    pub dmu: String,
    pub score: f64,
    pub operation: f64,
    pub rd: f64,
    pub market: f64,
    /// Appropriate intermediate levels.
    pub intermediates: IndexMap<String, f64>,
    /// Range of each appropriate level over all optimal solutions.
    pub intermediate_ranges: IndexMap<String, (f64, f64)>,
}

impl ChainMpss {
    pub fn is_mpss(&self) -> bool {
        self.score.abs() <= MPSS_TOL
    }

    pub fn has_alternate_intermediates(&self) -> bool {
        self.intermediate_ranges
            .values()
            .any(|&(lo, hi)| hi - lo > MPSS_TOL * hi.abs().max(1.0))
    }
}

/// Radial factors of the profitability-stage model and the stage scores
/// derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct StageFactors {
    pub dmu: String,
    pub operation_input: f64,
    pub operation_output: f64,
    pub rd_input: f64,
    pub rd_output: f64,
    pub market_output: f64,
    pub operation_mpss: f64,
    pub rd_mpss: f64,
    pub profitability_mpss: f64,
    /// Chain score minus profitability score; no model of its own.
    pub marketability_mpss: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Decrease,
    Increase,
    Maintain,
}

impl Direction {
    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Decrease => "↓",
            Direction::Increase => "↑",
            Direction::Maintain => "maintain",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTarget {
    pub measure: String,
    pub current: f64,
    pub appropriate: f64,
    pub gap: f64,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TargetReport {
    pub targets: Vec<MeasureTarget>,
    /// e.g. `Sales↓, Patents↑`, or `maintain` when nothing moves.
    pub strategy: String,
    /// The appropriate levels are one of several optimal choices.
    pub alternate_optima: bool,
}

struct ChainData {
    n: usize,
    op_out_names: Vec<String>,
    rd_out_names: Vec<String>,
    xo: Vec<Vec<f64>>,
    zo: Vec<Vec<f64>>,
    xr: Vec<Vec<f64>>,
    zr: Vec<Vec<f64>>,
    y: Vec<Vec<f64>>,
}

impl ChainData {
    fn new(dataset: &Dataset, topology: &NetworkTopology) -> Result<Self> {
        let r = topology.chain_roles()?;
        Ok(Self {
            n: dataset.num_dmus(),
            xo: dataset.matrix(&r.operation_inputs)?,
            zo: dataset.matrix(&r.operation_outputs)?,
            xr: dataset.matrix(&r.rd_inputs)?,
            zr: dataset.matrix(&r.rd_outputs)?,
            y: dataset.matrix(&r.market_outputs)?,
            op_out_names: r.operation_outputs,
            rd_out_names: r.rd_outputs,
        })
    }

    fn intermediate_names(&self) -> impl Iterator<Item = &String> {
        self.op_out_names.iter().chain(&self.rd_out_names)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChainModel {
    Efficiency,
    Mpss,
    Profitability,
}

struct ChainLp {
    b: LpBuilder,
    op_in: Var,
    rd_in: Var,
    market_out: Var,
    /// Only in the profitability model.
    op_out: Option<Var>,
    rd_out: Option<Var>,
    /// Operation then R&D targets; empty in the profitability model.
    targets: Vec<Var>,
}

impl ChainLp {
    fn new(d: &ChainData, o: usize, model: ChainModel) -> Self {
        let mut b = LpBuilder::new(Sense::Maximize);
        let op_in = b.var("operation_input");
        let rd_in = b.var("rd_input");
        let market_out = match model {
            ChainModel::Efficiency => b.var_with_lower("market_output", 1.0),
            _ => b.var("market_output"),
        };
        let (op_out, rd_out) = match model {
            ChainModel::Profitability => (Some(b.var("operation_output")), Some(b.var("rd_output"))),
            _ => (None, None),
        };
        let lam = b.vars("lambda", d.n);
        let mu = b.vars("mu", d.n);
        let phi = b.vars("phi", d.n);
        let targets: Vec<Var> = match model {
            ChainModel::Profitability => Vec::new(),
            _ => d.intermediate_names().map(|m| b.var(format!("target[{m}]"))).collect(),
        };

        for row in &d.xo {
            scaled_row(&mut b, &lam, row, op_in, -row[o], Relation::Le);
        }
        for row in &d.xr {
            scaled_row(&mut b, &mu, row, rd_in, -row[o], Relation::Le);
        }
        let p = d.zo.len();
        for (k, row) in d.zo.iter().chain(&d.zr).enumerate() {
            let supply = if k < p { &lam } else { &mu };
            match (op_out, rd_out) {
                (Some(a), Some(r)) => {
                    let factor = if k < p { a } else { r };
                    scaled_row(&mut b, supply, row, factor, -row[o], Relation::Ge);
                    scaled_row(&mut b, &phi, row, factor, -row[o], Relation::Le);
                }
                _ => {
                    scaled_row(&mut b, supply, row, targets[k], -1.0, Relation::Ge);
                    scaled_row(&mut b, &phi, row, targets[k], -1.0, Relation::Le);
                }
            }
        }
        for row in &d.y {
            scaled_row(&mut b, &phi, row, market_out, -row[o], Relation::Ge);
        }
        convexity(&mut b, &lam);
        convexity(&mut b, &mu);
        convexity(&mut b, &phi);
        if model == ChainModel::Efficiency {
            b.constraint([(op_in, 1.0)], Relation::Le, 1.0);
            b.constraint([(rd_in, 1.0)], Relation::Le, 1.0);
        }
        Self {
            b,
            op_in,
            rd_in,
            market_out,
            op_out,
            rd_out,
            targets,
        }
    }

    fn chain_objective(&self, w: ChainWeights) -> [(Var, f64); 3] {
        [(self.market_out, w.market), (self.op_in, -w.operation), (self.rd_in, -w.rd)]
    }

    fn target_values(&self, d: &ChainData, x: &[f64]) -> IndexMap<String, f64> {
        d.intermediate_names()
            .zip(&self.targets)
            .map(|(m, v)| (m.clone(), x[v.0]))
            .collect()
    }
}

/// Minimises `operation*theta_op + rd*theta_rd - market*theta_market` with
/// both contractions at most 1 and the expansion at least 1.
pub fn chain_efficiency(
    dataset: &Dataset,
    topology: &NetworkTopology,
    dmu: &str,
    weights: ChainWeights,
) -> Result<ChainEfficiency> {
    let d = ChainData::new(dataset, topology)?;
    let o = dataset.dmu_index(dmu)?;
    let mut m = ChainLp::new(&d, o, ChainModel::Efficiency);
    m.b.set_sense(Sense::Minimize);
    m.b.objective([(m.op_in, weights.operation), (m.rd_in, weights.rd), (m.market_out, -weights.market)]);
    let sol = solve_optimal(&m.b, "chain efficiency model", dmu)?;
    let x = &sol.variable_values;
    Ok(ChainEfficiency {
        dmu: dmu.to_string(),
        objective: sol.objective_value,
        operation: x[m.op_in.0],
        rd: x[m.rd_in.0],
        market_expansion: x[m.market_out.0],
        marketability: 1.0 / x[m.market_out.0],
        intermediates: m.target_values(&d, x),
    })
}

/// Maximises `market*theta_market - operation*theta_op - rd*theta_rd` with
/// free target intermediates.
pub fn chain_mpss(dataset: &Dataset, topology: &NetworkTopology, dmu: &str, weights: ChainWeights) -> Result<ChainMpss> {
    let d = ChainData::new(dataset, topology)?;
    let o = dataset.dmu_index(dmu)?;
    let mut m = ChainLp::new(&d, o, ChainModel::Mpss);
    let objective = m.chain_objective(weights);
    m.b.objective(objective);
    let model = "chain MPSS model";
    let sol = solve_optimal(&m.b, model, dmu)?;
    let x = &sol.variable_values;
    let ranges = face_ranges(&m.b, &objective, sol.objective_value, &m.targets, model, dmu)?;
    Ok(ChainMpss {
        dmu: dmu.to_string(),
        score: sol.objective_value,
        operation: x[m.op_in.0],
        rd: x[m.rd_in.0],
        market: x[m.market_out.0],
        intermediates: m.target_values(&d, x),
        intermediate_ranges: d.intermediate_names().cloned().zip(ranges).collect(),
    })
}

/// Profitability-stage MPSS with radial intermediates, holding the weighted
/// chain objective within [`FIXING_BAND`] of `chain_score`.
pub fn profitability_mpss(
    dataset: &Dataset,
    topology: &NetworkTopology,
    dmu: &str,
    chain_score: f64,
    weights: ChainWeights,
) -> Result<StageFactors> {
    let d = ChainData::new(dataset, topology)?;
    let o = dataset.dmu_index(dmu)?;
    let mut m = ChainLp::new(&d, o, ChainModel::Profitability);
    let (op_out, rd_out) = (m.op_out.expect("profitability model"), m.rd_out.expect("profitability model"));
    let chain = m.chain_objective(weights);
    m.b.band(&chain, chain_score - FIXING_BAND, chain_score + FIXING_BAND);
    m.b.objective([(op_out, 1.0), (m.op_in, -1.0), (rd_out, 1.0), (m.rd_in, -1.0)]);
    let sol = solve_optimal(&m.b, "profitability MPSS model", dmu)?;
    let x = &sol.variable_values;
    let operation_mpss = x[op_out.0] - x[m.op_in.0];
    let rd_mpss = x[rd_out.0] - x[m.rd_in.0];
    let profitability_mpss = operation_mpss + rd_mpss;
    Ok(StageFactors {
        dmu: dmu.to_string(),
        operation_input: x[m.op_in.0],
        operation_output: x[op_out.0],
        rd_input: x[m.rd_in.0],
        rd_output: x[rd_out.0],
        market_output: x[m.market_out.0],
        operation_mpss,
        rd_mpss,
        profitability_mpss,
        marketability_mpss: chain_score - profitability_mpss,
    })
}

/// Compares current and appropriate levels measure by measure, in the order
/// of `current`.
pub fn classify_strategy(current: &IndexMap<String, f64>, appropriate: &IndexMap<String, f64>) -> Result<TargetReport> {
    if current.len() != appropriate.len() || current.keys().any(|k| !appropriate.contains_key(k)) {
        return Err(Error::InvalidArgument(format!(
            "current and appropriate levels name different measures: {:?} vs {:?}",
            current.keys().collect::<Vec<_>>(),
            appropriate.keys().collect::<Vec<_>>()
        )));
    }
    let targets: Vec<MeasureTarget> = current
        .iter()
        .map(|(name, &cur)| {
            let app = appropriate[name];
            let gap = app - cur;
            let tol = if cur == 0.0 { GAP_TOL } else { GAP_TOL * cur.abs() };
            let direction = if gap < -tol {
                Direction::Decrease
            } else if gap > tol {
                Direction::Increase
            } else {
                Direction::Maintain
            };
            MeasureTarget {
                measure: name.clone(),
                current: cur,
                appropriate: app,
                gap,
                direction,
            }
        })
        .collect();
    let moves: Vec<String> = targets
        .iter()
        .filter(|t| t.direction != Direction::Maintain)
        .map(|t| format!("{}{}", t.measure, t.direction.symbol()))
        .collect();
    let strategy = if moves.is_empty() {
        Direction::Maintain.symbol().to_string()
    } else {
        moves.join(", ")
    };
    Ok(TargetReport {
        targets,
        strategy,
        alternate_optima: false,
    })
}

/// Chain MPSS targets against the DMU's own intermediate levels.
pub fn intermediate_targets(
    dataset: &Dataset,
    topology: &NetworkTopology,
    dmu: &str,
    weights: ChainWeights,
) -> Result<TargetReport> {
    let res = chain_mpss(dataset, topology, dmu, weights)?;
    let o = dataset.dmu_index(dmu)?;
    let current = res
        .intermediates
        .keys()
        .map(|m| (m.clone(), dataset.measure(m).expect("validated measure")[o]))
        .collect();
    let mut report = classify_strategy(&current, &res.intermediates)?;
    report.alternate_optima = res.has_alternate_intermediates();
    Ok(report)
}
