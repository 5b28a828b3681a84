//! Dense linear programs and a two-phase primal simplex solver.
//!
//! Every DEA model in this crate is lowered to an [`LpProblem`] and handed to
//! [`solve_lp`]. Problems are small (a few dozen columns at most), so the
//! solver works on a dense tableau.

mod simplex;

use std::fmt;

use thiserror::Error;

pub use simplex::{solve_lp, solve_lp_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `a·x <= b`
    Le,
    /// `a·x = b`
    Eq,
    /// `a·x >= b`
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coefficients: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A linear program over variables bounded below (`x >= lower`).
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<f64>,
    pub variable_names: Vec<String>,
}

impl LpProblem {
    /// A problem with `objective.len()` variables, all bounded below by zero.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            lower_bounds: vec![0.0; n],
            variable_names: (0..n).map(|j| format!("x{}", j + 1)).collect(),
        }
    }

    pub fn with_constraint(mut self, coefficients: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        self
    }

    pub fn num_variables(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Checks the shape invariants: every row, bound and name vector matches
    /// the objective length, and every number is finite.
    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if self.lower_bounds.len() != n {
            return Err(LpError::DimensionMismatch {
                what: "lower bounds".into(),
                expected: n,
                found: self.lower_bounds.len(),
            });
        }
        if self.variable_names.len() != n {
            return Err(LpError::DimensionMismatch {
                what: "variable names".into(),
                expected: n,
                found: self.variable_names.len(),
            });
        }
        if self.objective.iter().any(|v| !v.is_finite()) {
            return Err(LpError::NonFinite("objective".into()));
        }
        if self.lower_bounds.iter().any(|v| !v.is_finite()) {
            return Err(LpError::NonFinite("lower bounds".into()));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coefficients.len() != n {
                return Err(LpError::DimensionMismatch {
                    what: format!("constraint {}", i + 1),
                    expected: n,
                    found: row.coefficients.len(),
                });
            }
            if !row.rhs.is_finite() || row.coefficients.iter().any(|v| !v.is_finite()) {
                return Err(LpError::NonFinite(format!("constraint {}", i + 1)));
            }
        }
        Ok(())
    }

    /// Largest violation of any constraint or lower bound at `x`, measured on
    /// rows normalised by their largest absolute coefficient.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.constraints {
            let scale = row
                .coefficients
                .iter()
                .fold(row.rhs.abs(), |m, v| m.max(v.abs()))
                .max(1.0);
            let lhs: f64 = row.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
            let gap = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
                Relation::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(gap / scale);
        }
        for (v, l) in x.iter().zip(&self.lower_bounds) {
            worst = worst.max(l - v);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value in the problem's own sense; `NaN` unless optimal.
    pub objective_value: f64,
    /// Empty unless optimal.
    pub variable_values: Vec<f64>,
    /// Shadow price of each constraint, `d objective / d rhs`, in the
    /// problem's own sense. Empty unless optimal.
    pub duals: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Primal feasibility tolerance (on row-normalised constraints).
    pub feasibility_tol: f64,
    /// Smallest magnitude accepted as a pivot element.
    pub pivot_tol: f64,
    /// A column may enter the basis only if its reduced cost exceeds this
    /// (relative to the largest objective coefficient).
    pub optimality_tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-7,
            pivot_tol: 1e-9,
            optimality_tol: 1e-9,
            max_iterations: 50_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("{what} has length {found}, expected {expected}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("simplex stopped after {0} iterations without converging")]
    IterationLimit(usize),
}

/// Index of a variable inside an [`LpBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

/// Sparse row: terms, relation, right-hand side.
type SparseRow = (Vec<(Var, f64)>, Relation, f64);

/// Incremental construction of an [`LpProblem`] from sparse rows.
#[derive(Debug, Clone)]
pub struct LpBuilder {
    sense: Sense,
    names: Vec<String>,
    lower: Vec<f64>,
    objective: Vec<(Var, f64)>,
    rows: Vec<SparseRow>,
}

impl LpBuilder {
    pub fn new(sense: Sense) -> Self {
        Self {
            sense,
            names: Vec::new(),
            lower: Vec::new(),
            objective: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn set_sense(&mut self, sense: Sense) {
        self.sense = sense;
    }

    pub fn var(&mut self, name: impl Into<String>) -> Var {
        self.var_with_lower(name, 0.0)
    }

    pub fn var_with_lower(&mut self, name: impl Into<String>, lower: f64) -> Var {
        self.names.push(name.into());
        self.lower.push(lower);
        Var(self.names.len() - 1)
    }

    pub fn vars(&mut self, prefix: &str, count: usize) -> Vec<Var> {
        (0..count).map(|j| self.var(format!("{prefix}[{j}]"))).collect()
    }

    pub fn objective(&mut self, terms: impl IntoIterator<Item = (Var, f64)>) {
        self.objective = terms.into_iter().collect();
    }

    pub fn constraint(
        &mut self,
        terms: impl IntoIterator<Item = (Var, f64)>,
        relation: Relation,
        rhs: f64,
    ) {
        self.rows.push((terms.into_iter().collect(), relation, rhs));
    }

    /// `lo <= expr <= hi` as two rows.
    pub fn band(&mut self, terms: &[(Var, f64)], lo: f64, hi: f64) {
        self.constraint(terms.iter().copied(), Relation::Ge, lo);
        self.constraint(terms.iter().copied(), Relation::Le, hi);
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn build(&self) -> LpProblem {
        let n = self.names.len();
        let dense = |terms: &[(Var, f64)]| {
            let mut v = vec![0.0; n];
            for &(Var(j), a) in terms {
                v[j] += a;
            }
            v
        };
        LpProblem {
            sense: self.sense,
            objective: dense(&self.objective),
            constraints: self
                .rows
                .iter()
                .map(|(terms, relation, rhs)| Constraint {
                    coefficients: dense(terms),
                    relation: *relation,
                    rhs: *rhs,
                })
                .collect(),
            lower_bounds: self.lower.clone(),
            variable_names: self.names.clone(),
        }
    }
}
