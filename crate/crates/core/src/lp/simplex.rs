use super::{LpError, LpProblem, LpSolution, LpStatus, Relation, Sense, SolverOptions};

/// Solves `problem` with the default tolerances.
pub fn solve_lp(problem: &LpProblem) -> Result<LpSolution, LpError> {
    solve_lp_with(problem, &SolverOptions::default())
}

/// Two-phase primal simplex on a dense tableau.
///
/// Rows are shifted by the lower bounds, normalised by their largest
/// coefficient and sign-flipped to a nonnegative right-hand side before
/// phase one. Dantzig pricing is used until the objective stalls for
/// `3 * (rows + columns)` pivots, then Bland's rule takes over until the
/// objective moves again.
pub fn solve_lp_with(problem: &LpProblem, opts: &SolverOptions) -> Result<LpSolution, LpError> {
    problem.validate()?;
    let n = problem.num_variables();
    let m = problem.num_constraints();
    let sign = match problem.sense {
        Sense::Maximize => 1.0,
        Sense::Minimize => -1.0,
    };

    // Per-row transform: internal row = flip * scale * (original row shifted by bounds).
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::with_capacity(m);
    let mut row_factor = Vec::with_capacity(m);
    for c in &problem.constraints {
        let shifted_rhs = c.rhs
            - c.coefficients
                .iter()
                .zip(&problem.lower_bounds)
                .map(|(a, l)| a * l)
                .sum::<f64>();
        let largest = c.coefficients.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
        let scale = if largest > 0.0 { 1.0 / largest } else { 1.0 };
        let flip = if shifted_rhs < 0.0 { -1.0 } else { 1.0 };
        let relation = match (c.relation, flip < 0.0) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        rows.push((
            c.coefficients.iter().map(|a| a * scale * flip).collect(),
            relation,
            shifted_rhs * scale * flip,
        ));
        row_factor.push(scale * flip);
    }

    // Column layout: structural | slack or surplus per inequality | artificial.
    let n_logical = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_artificial = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let first_artificial = n + n_logical;
    let ncols = first_artificial + n_artificial;

    let mut t = Tableau::new(m, ncols);
    // Column holding +e_i for row i in the initial matrix; its reduced cost
    // yields the row dual.
    let mut unit_col = vec![0; m];
    let (mut next_logical, mut next_art) = (n, first_artificial);
    for (i, (coeffs, relation, rhs)) in rows.iter().enumerate() {
        t.row_mut(i)[..n].copy_from_slice(coeffs);
        *t.rhs_mut(i) = *rhs;
        match relation {
            Relation::Le => {
                t.set(i, next_logical, 1.0);
                t.basis[i] = next_logical;
                unit_col[i] = next_logical;
                next_logical += 1;
            }
            Relation::Ge => {
                t.set(i, next_logical, -1.0);
                next_logical += 1;
                t.set(i, next_art, 1.0);
                t.basis[i] = next_art;
                unit_col[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                t.set(i, next_art, 1.0);
                t.basis[i] = next_art;
                unit_col[i] = next_art;
                next_art += 1;
            }
        }
    }

    let mut iterations = 0;

    // Phase one: maximise -sum(artificials).
    if n_artificial > 0 {
        let mut cost = vec![0.0; ncols];
        cost[first_artificial..].iter_mut().for_each(|c| *c = -1.0);
        t.price(&cost);
        let outcome = t.run(ncols, 1.0, opts, &mut iterations)?;
        debug_assert!(outcome == Phase::Optimal);
        let max_rhs = rows.iter().fold(0.0f64, |acc, r| acc.max(r.2.abs()));
        if -t.value > opts.feasibility_tol * (1.0 + max_rhs) {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                objective_value: f64::NAN,
                variable_values: Vec::new(),
                duals: Vec::new(),
                iterations,
            });
        }
        // Pivot zero-level artificials out of the basis where possible; rows
        // where that fails are redundant and keep their artificial at zero.
        for r in 0..m {
            if t.basis[r] < first_artificial {
                continue;
            }
            let row = t.row(r);
            let col = (0..first_artificial)
                .filter(|&j| row[j].abs() > opts.pivot_tol)
                .max_by(|&a, &b| row[a].abs().total_cmp(&row[b].abs()));
            if let Some(j) = col {
                t.pivot(r, j);
                iterations += 1;
            }
        }
        for r in 0..m {
            let v = t.rhs_mut(r);
            if *v < 0.0 && *v > -opts.feasibility_tol {
                *v = 0.0;
            }
        }
    }

    // Phase two on the structural and logical columns.
    let mut cost = vec![0.0; ncols];
    for (c, o) in cost.iter_mut().zip(&problem.objective) {
        *c = sign * o;
    }
    t.price(&cost);
    let cost_scale = problem.objective.iter().fold(1.0f64, |acc, c| acc.max(c.abs()));
    if t.run(first_artificial, cost_scale, opts, &mut iterations)? == Phase::Unbounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            objective_value: f64::NAN,
            variable_values: Vec::new(),
            duals: Vec::new(),
            iterations,
        });
    }

    let mut x = problem.lower_bounds.clone();
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] += t.rhs(r).max(0.0);
        }
    }
    let objective_value = problem.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let duals = (0..m)
        .map(|i| sign * row_factor[i] * -t.reduced[unit_col[i]])
        .collect();

    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective_value,
        variable_values: x,
        duals,
        iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Optimal,
    Unbounded,
}

struct Tableau {
    m: usize,
    ncols: usize,
    /// Row-major `m x (ncols + 1)`; the last entry of each row is the rhs.
    data: Vec<f64>,
    basis: Vec<usize>,
    reduced: Vec<f64>,
    value: f64,
}

impl Tableau {
    fn new(m: usize, ncols: usize) -> Self {
        Self {
            m,
            ncols,
            data: vec![0.0; m * (ncols + 1)],
            basis: vec![0; m],
            reduced: vec![0.0; ncols],
            value: 0.0,
        }
    }

    fn width(&self) -> usize {
        self.ncols + 1
    }

    fn row(&self, r: usize) -> &[f64] {
        let w = self.width();
        &self.data[r * w..(r + 1) * w]
    }

    fn row_mut(&mut self, r: usize) -> &mut [f64] {
        let w = self.width();
        &mut self.data[r * w..(r + 1) * w]
    }

    fn set(&mut self, r: usize, c: usize, v: f64) {
        let w = self.width();
        self.data[r * w + c] = v;
    }

    fn rhs(&self, r: usize) -> f64 {
        self.row(r)[self.ncols]
    }

    fn rhs_mut(&mut self, r: usize) -> &mut f64 {
        let nc = self.ncols;
        &mut self.row_mut(r)[nc]
    }

    /// Recomputes reduced costs and objective value for `cost` under the
    /// current basis.
    fn price(&mut self, cost: &[f64]) {
        self.reduced.copy_from_slice(cost);
        self.value = 0.0;
        for r in 0..self.m {
            let cb = cost[self.basis[r]];
            if cb == 0.0 {
                continue;
            }
            let w = self.width();
            let row = &self.data[r * w..(r + 1) * w];
            for (d, a) in self.reduced.iter_mut().zip(row) {
                *d -= cb * a;
            }
            self.value += cb * row[self.ncols];
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width();
        let p = self.data[r * w + e];
        for v in &mut self.data[r * w..(r + 1) * w] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.data[r * w..(r + 1) * w].to_vec();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.data[i * w + e];
            if f == 0.0 {
                continue;
            }
            for (v, pr) in self.data[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                *v -= f * pr;
                if v.abs() < 1e-14 {
                    *v = 0.0;
                }
            }
            self.data[i * w + e] = 0.0;
        }
        let d = self.reduced[e];
        if d != 0.0 {
            for (v, pr) in self.reduced.iter_mut().zip(&pivot_row) {
                *v -= d * pr;
            }
            self.value += d * pivot_row[self.ncols];
        }
        self.reduced[e] = 0.0;
        self.basis[r] = e;
    }

    /// Primal simplex iterations over columns `0..allowed`.
    fn run(
        &mut self,
        allowed: usize,
        cost_scale: f64,
        opts: &SolverOptions,
        iterations: &mut usize,
    ) -> Result<Phase, LpError> {
        let d_tol = opts.optimality_tol * cost_scale;
        let stall_limit = 3 * (self.m + self.ncols);
        let mut stalled = 0;
        let mut bland = false;
        loop {
            if *iterations >= opts.max_iterations {
                return Err(LpError::IterationLimit(*iterations));
            }
            let entering = if bland {
                (0..allowed).find(|&j| self.reduced[j] > d_tol)
            } else {
                (0..allowed)
                    .filter(|&j| self.reduced[j] > d_tol)
                    .fold(None, |best: Option<usize>, j| match best {
                        Some(b) if self.reduced[b] >= self.reduced[j] => Some(b),
                        _ => Some(j),
                    })
            };
            let Some(e) = entering else {
                return Ok(Phase::Optimal);
            };

            let w = self.width();
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.data[i * w + e];
                if a <= opts.pivot_tol {
                    continue;
                }
                let ratio = self.data[i * w + self.ncols].max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        let tie = (ratio - best).abs() <= 1e-12 * (1.0 + best.abs());
                        let better = if ratio < best && !tie {
                            true
                        } else if tie {
                            if bland {
                                self.basis[i] < self.basis[k]
                            } else {
                                a > self.data[k * w + e]
                            }
                        } else {
                            false
                        };
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(Phase::Unbounded);
            };

            let before = self.value;
            self.pivot(r, e);
            *iterations += 1;
            if self.value > before + 1e-12 * (1.0 + before.abs()) {
                stalled = 0;
                bland = false;
            } else {
                stalled += 1;
                if stalled > stall_limit {
                    bland = true;
                }
            }
        }
    }
}
