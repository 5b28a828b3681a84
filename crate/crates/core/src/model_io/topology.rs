use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

const WEIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Shape {
    /// Two stages, every intermediate flows from stage 1 to stage 2, each
    /// stage may also have exogenous inputs and final outputs.
    TwoStageGeneral,
    /// Operation and R&D in parallel at stage 1 feeding a market stage.
    SeriesParallelChain,
    /// A two-stage network after dummy-process insertion.
    Tandem,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::TwoStageGeneral => "two_stage_general",
            Shape::SeriesParallelChain => "series_parallel_chain",
            Shape::Tandem => "tandem",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl TryFrom<String> for Shape {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        match s.as_str() {
            "two_stage_general" => Ok(Shape::TwoStageGeneral),
            "series_parallel_chain" => Ok(Shape::SeriesParallelChain),
            "tandem" => Ok(Shape::Tandem),
            other => Err(format!("unsupported topology shape {other:?}")),
        }
    }
}

impl From<Shape> for String {
    fn from(s: Shape) -> String {
        s.as_str().to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessSpec {
    pub name: String,
    pub stage: u32,
    #[serde(default)]
    pub exogenous_inputs: Vec<String>,
    #[serde(default)]
    pub intermediate_outputs: Vec<String>,
    #[serde(default)]
    pub intermediate_inputs: Vec<String>,
    #[serde(default)]
    pub final_outputs: Vec<String>,
    pub importance_weight: f64,
}

impl ProcessSpec {
    pub fn inputs(&self) -> impl Iterator<Item = &String> {
        self.exogenous_inputs.iter().chain(&self.intermediate_inputs)
    }

    pub fn outputs(&self) -> impl Iterator<Item = &String> {
        self.intermediate_outputs.iter().chain(&self.final_outputs)
    }

    /// A pass-through process: it emits exactly what it consumes.
    pub fn is_dummy(&self) -> bool {
        let ins: BTreeSet<_> = self.inputs().collect();
        let outs: BTreeSet<_> = self.outputs().collect();
        !ins.is_empty() && ins == outs
    }

    fn all_measures(&self) -> impl Iterator<Item = &String> {
        self.inputs().chain(self.outputs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Link {
    pub from: String,
    pub to: String,
    pub measure: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkTopology {
    pub shape: Shape,
    pub processes: Vec<ProcessSpec>,
    #[serde(default)]
    pub links: Vec<Link>,
}

/// Measure names of a two-stage network by role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStageRoles {
    pub stage1_inputs: Vec<String>,
    pub intermediates: Vec<String>,
    pub stage1_outputs: Vec<String>,
    pub stage2_inputs: Vec<String>,
    pub stage2_outputs: Vec<String>,
}

/// Measure names of an R&D value chain by role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRoles {
    pub operation_inputs: Vec<String>,
    pub operation_outputs: Vec<String>,
    pub rd_inputs: Vec<String>,
    pub rd_outputs: Vec<String>,
    pub market_outputs: Vec<String>,
}

impl ChainRoles {
    pub fn intermediates(&self) -> impl Iterator<Item = &String> {
        self.operation_outputs.iter().chain(&self.rd_outputs)
    }
}

/// Exogenous inputs and final outputs of a network viewed as one process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlackBoxRoles {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl NetworkTopology {
    pub fn from_json(text: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(text).map_err(|e| Error::Topology(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("topology serializes")
    }

    pub fn process(&self, name: &str) -> Option<&ProcessSpec> {
        self.processes.iter().find(|p| p.name == name)
    }

    fn stage_processes(&self, stage: u32) -> Vec<&ProcessSpec> {
        self.processes.iter().filter(|p| p.stage == stage).collect()
    }

    /// Structural checks that need no data.
    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::Topology(m));
        if self.processes.is_empty() {
            return err("no processes".into());
        }
        let mut index = HashMap::new();
        for (i, p) in self.processes.iter().enumerate() {
            if index.insert(p.name.as_str(), i).is_some() {
                return err(format!("duplicate process name {:?}", p.name));
            }
            if p.stage < 1 {
                return err(format!("process {:?}: stages are numbered from 1", p.name));
            }
            if !(0.0..=1.0).contains(&p.importance_weight) {
                return err(format!("process {:?}: importance_weight must lie in [0, 1]", p.name));
            }
            if !p.is_dummy() {
                let mut roles = HashSet::new();
                for m in p.all_measures() {
                    if !roles.insert(m) {
                        return err(format!("process {:?}: measure {m:?} plays more than one role", p.name));
                    }
                }
            }
        }

        let mut graph = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = self.processes.iter().map(|_| graph.add_node(())).collect();
        let mut incoming = vec![false; self.processes.len()];
        let mut delivered: HashSet<(&str, &str)> = HashSet::new();
        let mut shipped: HashSet<(&str, &str)> = HashSet::new();
        for l in &self.links {
            let (Some(&a), Some(&b)) = (index.get(l.from.as_str()), index.get(l.to.as_str())) else {
                return err(format!("link {} -> {} names an unknown process", l.from, l.to));
            };
            if !self.processes[a].intermediate_outputs.contains(&l.measure) {
                return err(format!("link measure {:?} is not an intermediate output of {:?}", l.measure, l.from));
            }
            if !self.processes[b].intermediate_inputs.contains(&l.measure) {
                return err(format!("link measure {:?} is not an intermediate input of {:?}", l.measure, l.to));
            }
            graph.add_edge(nodes[a], nodes[b], ());
            incoming[b] = true;
            shipped.insert((&l.from, &l.measure));
            delivered.insert((&l.to, &l.measure));
        }
        if is_cyclic_directed(&graph) {
            return err("links form a cycle".into());
        }
        for (i, p) in self.processes.iter().enumerate() {
            if !incoming[i] && p.stage != 1 {
                return err(format!("process {:?} has no incoming links but is at stage {}", p.name, p.stage));
            }
        }
        for p in &self.processes {
            if let Some(m) = p.intermediate_inputs.iter().find(|m| !delivered.contains(&(p.name.as_str(), m.as_str()))) {
                return err(format!("intermediate input {m:?} of {:?} has no incoming link", p.name));
            }
            if let Some(m) = p.intermediate_outputs.iter().find(|m| !shipped.contains(&(p.name.as_str(), m.as_str()))) {
                return err(format!("intermediate output {m:?} of {:?} has no outgoing link", p.name));
            }
        }
        for l in &self.links {
            let (a, b) = (&self.processes[index[l.from.as_str()]], &self.processes[index[l.to.as_str()]]);
            if a.stage >= b.stage {
                return err(format!("link {} -> {} does not go to a later stage", l.from, l.to));
            }
        }

        let mut stage_sums: HashMap<u32, f64> = HashMap::new();
        for p in &self.processes {
            *stage_sums.entry(p.stage).or_default() += p.importance_weight;
        }
        for (stage, sum) in &stage_sums {
            // a tandem stage may omit its dummy, which then holds the remainder
            let ok = match self.shape {
                Shape::Tandem => *sum <= 1.0 + WEIGHT_TOL,
                _ => (sum - 1.0).abs() <= WEIGHT_TOL,
            };
            if !ok {
                return err(format!("importance weights at stage {stage} sum to {sum}, expected 1"));
            }
        }

        match self.shape {
            Shape::TwoStageGeneral => self.two_stage_roles().map(drop),
            Shape::SeriesParallelChain => self.chain_roles().map(drop),
            Shape::Tandem => self.check_tandem(),
        }
    }

    /// Every referenced measure must be a dataset column.
    pub fn check_against(&self, dataset: &Dataset) -> Result<()> {
        let measures = self
            .processes
            .iter()
            .flat_map(|p| p.all_measures())
            .chain(self.links.iter().map(|l| &l.measure));
        for m in measures {
            if dataset.measure(m).is_none() {
                return Err(Error::Topology(format!("measure {m:?} is not a column of the data file")));
            }
        }
        Ok(())
    }

    pub fn two_stage_roles(&self) -> Result<TwoStageRoles> {
        let unsupported = |m: &str| Err(Error::UnsupportedTopology(m.to_string()));
        if self.shape != Shape::TwoStageGeneral {
            return unsupported(&format!("expected a two_stage_general topology, got {}", self.shape));
        }
        let (s1, s2) = (self.stage_processes(1), self.stage_processes(2));
        if self.processes.len() != 2 || s1.len() != 1 || s2.len() != 1 {
            return unsupported("two_stage_general needs exactly one process at stage 1 and one at stage 2");
        }
        let (p1, p2) = (s1[0], s2[0]);
        if !p1.intermediate_inputs.is_empty() || !p2.intermediate_outputs.is_empty() {
            return unsupported("intermediates must flow from stage 1 to stage 2 only");
        }
        let a: BTreeSet<_> = p1.intermediate_outputs.iter().collect();
        let b: BTreeSet<_> = p2.intermediate_inputs.iter().collect();
        if a.is_empty() || a != b {
            return unsupported("stage 2 must consume exactly the intermediates stage 1 produces");
        }
        if p1.exogenous_inputs.is_empty() || p2.final_outputs.is_empty() {
            return unsupported("stage 1 needs an exogenous input and stage 2 a final output");
        }
        Ok(TwoStageRoles {
            stage1_inputs: p1.exogenous_inputs.clone(),
            intermediates: p1.intermediate_outputs.clone(),
            stage1_outputs: p1.final_outputs.clone(),
            stage2_inputs: p2.exogenous_inputs.clone(),
            stage2_outputs: p2.final_outputs.clone(),
        })
    }

    /// Stage-1 processes in file order are operation, then R&D.
    pub fn chain_roles(&self) -> Result<ChainRoles> {
        let unsupported = |m: &str| Err(Error::UnsupportedTopology(m.to_string()));
        if self.shape != Shape::SeriesParallelChain {
            return unsupported(&format!("expected a series_parallel_chain topology, got {}", self.shape));
        }
        let (s1, s2) = (self.stage_processes(1), self.stage_processes(2));
        if self.processes.len() != 3 || s1.len() != 2 || s2.len() != 1 {
            return unsupported("series_parallel_chain needs two processes at stage 1 and one at stage 2");
        }
        let (op, rd, market) = (s1[0], s1[1], s2[0]);
        for p in [op, rd] {
            if p.exogenous_inputs.is_empty() || p.intermediate_outputs.is_empty() {
                return unsupported("each stage-1 process needs exogenous inputs and intermediate outputs");
            }
            if !p.intermediate_inputs.is_empty() || !p.final_outputs.is_empty() {
                return unsupported("stage-1 processes may not have intermediate inputs or final outputs");
            }
        }
        if !market.exogenous_inputs.is_empty() || !market.intermediate_outputs.is_empty() || market.final_outputs.is_empty() {
            return unsupported("the market stage takes only intermediates and has final outputs");
        }
        let produced: BTreeSet<_> = op.intermediate_outputs.iter().chain(&rd.intermediate_outputs).collect();
        let consumed: BTreeSet<_> = market.intermediate_inputs.iter().collect();
        if produced != consumed || produced.len() != op.intermediate_outputs.len() + rd.intermediate_outputs.len() {
            return unsupported("the market stage must consume every stage-1 intermediate exactly once");
        }
        Ok(ChainRoles {
            operation_inputs: op.exogenous_inputs.clone(),
            operation_outputs: op.intermediate_outputs.clone(),
            rd_inputs: rd.exogenous_inputs.clone(),
            rd_outputs: rd.intermediate_outputs.clone(),
            market_outputs: market.final_outputs.clone(),
        })
    }

    /// Inputs and outputs that cross the network boundary.
    pub fn black_box_roles(&self) -> Result<BlackBoxRoles> {
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        for p in self.processes.iter().filter(|p| !p.is_dummy()) {
            inputs.extend(p.exogenous_inputs.iter().cloned());
            outputs.extend(p.final_outputs.iter().cloned());
        }
        // in a tandem layout boundary measures pass through dummies
        for p in self.processes.iter().filter(|p| p.is_dummy()) {
            inputs.extend(p.exogenous_inputs.iter().cloned());
            outputs.extend(p.final_outputs.iter().cloned());
        }
        let dedup = |v: Vec<String>| {
            let mut seen = HashSet::new();
            v.into_iter().filter(|m| seen.insert(m.clone())).collect::<Vec<_>>()
        };
        let roles = BlackBoxRoles {
            inputs: dedup(inputs),
            outputs: dedup(outputs),
        };
        if roles.inputs.is_empty() || roles.outputs.is_empty() {
            return Err(Error::Topology("the network needs an exogenous input and a final output".into()));
        }
        Ok(roles)
    }

    fn check_tandem(&self) -> Result<()> {
        for stage in [1, 2] {
            let ps = self.stage_processes(stage);
            let real = ps.iter().filter(|p| !p.is_dummy()).count();
            if real != 1 || ps.len() > 2 {
                return Err(Error::UnsupportedTopology(format!(
                    "tandem stage {stage} needs one real process and at most one dummy"
                )));
            }
        }
        if self.processes.len() != self.stage_processes(1).len() + self.stage_processes(2).len() {
            return Err(Error::UnsupportedTopology("tandem layouts have two stages".into()));
        }
        Ok(())
    }
}
