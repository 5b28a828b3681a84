//! Synthetic DEA instances and dense oracle formulations of the models,
//! written out row by row independently of the library's builders.

use dea_mpss::model_io::{Dataset, NetworkTopology};
use indexmap::IndexMap;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::oracle::{DenseLp, Rel};

/// Largest enumeration we accept for one oracle solve.
pub const MAX_BASES: u128 = 300_000;

/// `rows` measures (drawn from the range) of `n` integer values in [1, 9].
fn block(rng: &mut ChaCha8Rng, rows: std::ops::RangeInclusive<usize>, n: usize) -> Vec<Vec<f64>> {
    let rows = rng.gen_range(rows);
    (0..rows)
        .map(|_| (0..n).map(|_| rng.gen_range(1..=9) as f64).collect())
        .collect()
}

fn names(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

fn dataset(n: usize, blocks: &[(&str, &Vec<Vec<f64>>)]) -> Dataset {
    let mut measures = IndexMap::new();
    for (prefix, rows) in blocks {
        for (i, r) in rows.iter().enumerate() {
            measures.insert(format!("{prefix}{i}"), r.clone());
        }
    }
    Dataset::new((0..n).map(|j| format!("D{j}")).collect(), measures).unwrap()
}

fn quoted(v: &[String]) -> String {
    v.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(", ")
}

/// Variable offsets inside a dense model.
struct Layout {
    next: usize,
}

impl Layout {
    fn take(&mut self, k: usize) -> usize {
        self.next += k;
        self.next - k
    }
}

fn zeros(n: usize) -> Vec<f64> {
    vec![0.0; n]
}

#[derive(Debug, Clone)]
pub struct TwoStage {
    pub n: usize,
    pub x1: Vec<Vec<f64>>,
    pub z: Vec<Vec<f64>>,
    pub y1: Vec<Vec<f64>>,
    pub x2: Vec<Vec<f64>>,
    pub y2: Vec<Vec<f64>>,
}

impl TwoStage {
    pub fn random(rng: &mut ChaCha8Rng, max_dmus: usize) -> Self {
        loop {
            let n = rng.gen_range(1..=max_dmus);
            let inst = Self {
                n,
                x1: block(rng, 1..=2, n),
                z: block(rng, 1..=2, n),
                y1: block(rng, 0..=2, n),
                x2: block(rng, 0..=2, n),
                y2: block(rng, 1..=2, n),
            };
            if inst.oracle(0, true, [0.0, 0.0, 1.0, -1.0]).basis_count() <= MAX_BASES {
                return inst;
            }
        }
    }

    /// All DMUs equal to one random profile.
    pub fn identical(rng: &mut ChaCha8Rng, n: usize) -> Self {
        let one = Self {
            n: 1,
            x1: block(rng, 2..=2, 1),
            z: block(rng, 2..=2, 1),
            y1: block(rng, 1..=1, 1),
            x2: block(rng, 2..=2, 1),
            y2: block(rng, 1..=1, 1),
        };
        let rep = |b: &Vec<Vec<f64>>| b.iter().map(|r| vec![r[0]; n]).collect();
        Self {
            n,
            x1: rep(&one.x1),
            z: rep(&one.z),
            y1: rep(&one.y1),
            x2: rep(&one.x2),
            y2: rep(&one.y2),
        }
    }

    pub fn dataset(&self) -> Dataset {
        dataset(
            self.n,
            &[("xa", &self.x1), ("z", &self.z), ("ya", &self.y1), ("xb", &self.x2), ("yb", &self.y2)],
        )
    }

    pub fn topology(&self) -> NetworkTopology {
        let z = names("z", self.z.len());
        let links: Vec<String> = z
            .iter()
            .map(|m| format!(r#"{{"from": "first", "to": "second", "measure": "{m}"}}"#))
            .collect();
        let text = format!(
            r#"{{"shape": "two_stage_general", "processes": [
                {{"name": "first", "stage": 1, "exogenous_inputs": [{}], "intermediate_outputs": [{}],
                  "intermediate_inputs": [], "final_outputs": [{}], "importance_weight": 1}},
                {{"name": "second", "stage": 2, "exogenous_inputs": [{}], "intermediate_outputs": [],
                  "intermediate_inputs": [{}], "final_outputs": [{}], "importance_weight": 1}}],
                "links": [{}]}}"#,
            quoted(&names("xa", self.x1.len())),
            quoted(&z),
            quoted(&names("ya", self.y1.len())),
            quoted(&names("xb", self.x2.len())),
            quoted(&z),
            quoted(&names("yb", self.y2.len())),
            links.join(", ")
        );
        NetworkTopology::from_json(&text).unwrap()
    }

    /// Two-stage model for DMU `o`. Variables: four factors (stage-1 input,
    /// stage-1 output, stage-2 input, stage-2 output), stage-1 weights,
    /// stage-2 weights, then free targets when `free_targets`. The objective
    /// is `weights` applied to the four factors.
    pub fn oracle(&self, o: usize, free_targets: bool, weights: [f64; 4]) -> DenseLp {
        let n = self.n;
        let p = self.z.len();
        let mut at = Layout { next: 0 };
        let f = at.take(4);
        let l1 = at.take(n);
        let l2 = at.take(n);
        let t = if free_targets { at.take(p) } else { usize::MAX };
        let nv = at.next;
        let mut obj = zeros(nv);
        obj[f..f + 4].copy_from_slice(&weights);
        let mut lp = DenseLp::new(obj);
        let mut row = |lam: usize, data: &[f64], factor: usize, coef: f64, rel: Rel| {
            let mut r = zeros(nv);
            r[lam..lam + n].copy_from_slice(data);
            r[factor] -= coef;
            lp.row(r, rel, 0.0);
        };
        for x in &self.x1 {
            row(l1, x, f, x[o], Rel::Le);
        }
        for (d, z) in self.z.iter().enumerate() {
            if free_targets {
                row(l1, z, t + d, 1.0, Rel::Ge);
                row(l2, z, t + d, 1.0, Rel::Le);
            } else {
                row(l1, z, f + 1, z[o], Rel::Ge);
                row(l2, z, f + 2, z[o], Rel::Le);
            }
        }
        for y in &self.y1 {
            row(l1, y, f + 1, y[o], Rel::Ge);
        }
        for x in &self.x2 {
            row(l2, x, f + 2, x[o], Rel::Le);
        }
        for y in &self.y2 {
            row(l2, y, f + 3, y[o], Rel::Ge);
        }
        for lam in [l1, l2] {
            let mut r = zeros(nv);
            r[lam..lam + n].iter_mut().for_each(|v| *v = 1.0);
            lp.row(r, Rel::Eq, 1.0);
        }
        lp
    }

    /// Objective vectors (over the radial model's variables) of the system,
    /// first stage and second stage scores.
    pub fn lexicographic_objectives(&self) -> [Vec<f64>; 3] {
        let nv = 4 + 2 * self.n;
        let mk = |w: [f64; 4]| {
            let mut v = zeros(nv);
            v[..4].copy_from_slice(&w);
            v
        };
        [mk([-1.0, 0.0, 0.0, 1.0]), mk([-1.0, 1.0, 0.0, 0.0]), mk([0.0, 0.0, -1.0, 1.0])]
    }

    /// Single-process model on the boundary inputs and outputs.
    pub fn black_box_oracle(&self, o: usize) -> DenseLp {
        let inputs: Vec<&Vec<f64>> = self.x1.iter().chain(&self.x2).collect();
        let outputs: Vec<&Vec<f64>> = self.y1.iter().chain(&self.y2).collect();
        let n = self.n;
        let nv = 2 + n;
        let mut obj = zeros(nv);
        obj[0] = -1.0;
        obj[1] = 1.0;
        let mut lp = DenseLp::new(obj);
        for x in inputs {
            let mut r = zeros(nv);
            r[2..].copy_from_slice(x);
            r[0] = -x[o];
            lp.row(r, Rel::Le, 0.0);
        }
        for y in outputs {
            let mut r = zeros(nv);
            r[2..].copy_from_slice(y);
            r[1] = -y[o];
            lp.row(r, Rel::Ge, 0.0);
        }
        let mut r = zeros(nv);
        r[2..].iter_mut().for_each(|v| *v = 1.0);
        lp.row(r, Rel::Eq, 1.0);
        lp
    }
}

#[derive(Debug, Clone)]
pub struct Chain {
    pub n: usize,
    pub xo: Vec<Vec<f64>>,
    pub zo: Vec<Vec<f64>>,
    pub xr: Vec<Vec<f64>>,
    pub zr: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
}

impl Chain {
    pub fn random(rng: &mut ChaCha8Rng, max_dmus: usize) -> Self {
        loop {
            let n = rng.gen_range(1..=max_dmus);
            let inst = Self {
                n,
                xo: block(rng, 1..=2, n),
                zo: block(rng, 1..=2, n),
                xr: block(rng, 1..=2, n),
                zr: block(rng, 1..=2, n),
                y: block(rng, 1..=2, n),
            };
            if inst.mpss_oracle(0, [1.0, 1.0, 1.0]).basis_count() <= MAX_BASES {
                return inst;
            }
        }
    }

    pub fn identical(rng: &mut ChaCha8Rng, n: usize) -> Self {
        let rep = |b: Vec<Vec<f64>>| b.iter().map(|r| vec![r[0]; n]).collect();
        Self {
            n,
            xo: rep(block(rng, 2..=2, 1)),
            zo: rep(block(rng, 1..=1, 1)),
            xr: rep(block(rng, 2..=2, 1)),
            zr: rep(block(rng, 1..=1, 1)),
            y: rep(block(rng, 1..=1, 1)),
        }
    }

    pub fn dataset(&self) -> Dataset {
        dataset(
            self.n,
            &[("xo", &self.xo), ("zo", &self.zo), ("xr", &self.xr), ("zr", &self.zr), ("y", &self.y)],
        )
    }

    pub fn intermediate_names(&self) -> Vec<String> {
        let mut v = names("zo", self.zo.len());
        v.extend(names("zr", self.zr.len()));
        v
    }

    pub fn topology(&self) -> NetworkTopology {
        let zo = names("zo", self.zo.len());
        let zr = names("zr", self.zr.len());
        let mut links: Vec<String> = zo
            .iter()
            .map(|m| format!(r#"{{"from": "op", "to": "mk", "measure": "{m}"}}"#))
            .collect();
        links.extend(zr.iter().map(|m| format!(r#"{{"from": "rd", "to": "mk", "measure": "{m}"}}"#)));
        let all = self.intermediate_names();
        let text = format!(
            r#"{{"shape": "series_parallel_chain", "processes": [
                {{"name": "op", "stage": 1, "exogenous_inputs": [{}], "intermediate_outputs": [{}],
                  "intermediate_inputs": [], "final_outputs": [], "importance_weight": 0.5}},
                {{"name": "rd", "stage": 1, "exogenous_inputs": [{}], "intermediate_outputs": [{}],
                  "intermediate_inputs": [], "final_outputs": [], "importance_weight": 0.5}},
                {{"name": "mk", "stage": 2, "exogenous_inputs": [], "intermediate_outputs": [],
                  "intermediate_inputs": [{}], "final_outputs": [{}], "importance_weight": 1}}],
                "links": [{}]}}"#,
            quoted(&names("xo", self.xo.len())),
            quoted(&zo),
            quoted(&names("xr", self.xr.len())),
            quoted(&zr),
            quoted(&all),
            quoted(&names("y", self.y.len())),
            links.join(", ")
        );
        NetworkTopology::from_json(&text).unwrap()
    }

    /// Variables: operation contraction, R&D contraction, market expansion,
    /// lambda, mu, phi, operation targets, R&D targets.
    fn base(&self, o: usize, objective: [f64; 3]) -> (DenseLp, usize) {
        let n = self.n;
        let (p, e) = (self.zo.len(), self.zr.len());
        let mut at = Layout { next: 0 };
        let f = at.take(3);
        let lam = at.take(n);
        let mu = at.take(n);
        let phi = at.take(n);
        let t = at.take(p + e);
        let nv = at.next;
        let mut obj = zeros(nv);
        obj[f..f + 3].copy_from_slice(&objective);
        let mut lp = DenseLp::new(obj);
        let mut row = |w: usize, data: &[f64], var: usize, coef: f64, rel: Rel| {
            let mut r = zeros(nv);
            r[w..w + n].copy_from_slice(data);
            r[var] -= coef;
            lp.row(r, rel, 0.0);
        };
        for x in &self.xo {
            row(lam, x, f, x[o], Rel::Le);
        }
        for x in &self.xr {
            row(mu, x, f + 1, x[o], Rel::Le);
        }
        for (d, z) in self.zo.iter().enumerate() {
            row(lam, z, t + d, 1.0, Rel::Ge);
            row(phi, z, t + d, 1.0, Rel::Le);
        }
        for (k, z) in self.zr.iter().enumerate() {
            row(mu, z, t + p + k, 1.0, Rel::Ge);
            row(phi, z, t + p + k, 1.0, Rel::Le);
        }
        for y in &self.y {
            row(phi, y, f + 2, y[o], Rel::Ge);
        }
        for w in [lam, mu, phi] {
            let mut r = zeros(nv);
            r[w..w + n].iter_mut().for_each(|v| *v = 1.0);
            lp.row(r, Rel::Eq, 1.0);
        }
        (lp, nv)
    }

    /// Maximises `market*expansion - operation*op - rd*rd` for weights
    /// `[market, operation, rd]`.
    pub fn mpss_oracle(&self, o: usize, w: [f64; 3]) -> DenseLp {
        self.base(o, [-w[1], -w[2], w[0]]).0
    }

    /// Efficiency model as a maximisation of the negated objective, weights
    /// `[market, operation, rd]`.
    pub fn efficiency_oracle(&self, o: usize, w: [f64; 3]) -> DenseLp {
        let (mut lp, nv) = self.base(o, [-w[1], -w[2], w[0]]);
        for (k, (rel, rhs)) in [(Rel::Le, 1.0), (Rel::Le, 1.0), (Rel::Ge, 1.0)].into_iter().enumerate() {
            let mut r = zeros(nv);
            r[k] = 1.0;
            lp.row(r, rel, rhs);
        }
        lp
    }
}
