//! Shared plumbing for the DEA models: solving a built LP and probing its
//! optimal face.

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpBuilder, LpSolution, Relation, Sense, Var};

/// Half-width of the band used wherever an optimum is held fixed.
pub const FIXING_BAND: f64 = 1e-6;

pub(crate) fn solve_optimal(b: &LpBuilder, model: &'static str, dmu: &str) -> Result<LpSolution> {
    let sol = solve_lp(&b.build())?;
    if !sol.is_optimal() {
        return Err(Error::Solver {
            model,
            dmu: dmu.to_string(),
            status: sol.status,
        });
    }
    Ok(sol)
}

pub(crate) fn linear(terms: &[(Var, f64)], x: &[f64]) -> f64 {
    terms.iter().map(|&(Var(j), a)| a * x[j]).sum()
}

/// Smallest and largest value of each of `vars` over the solutions whose
/// `objective` lies within [`FIXING_BAND`] of `optimum`.
pub(crate) fn face_ranges(
    b: &LpBuilder,
    objective: &[(Var, f64)],
    optimum: f64,
    vars: &[Var],
    model: &'static str,
    dmu: &str,
) -> Result<Vec<(f64, f64)>> {
    let mut face = b.clone();
    face.band(objective, optimum - FIXING_BAND, optimum + FIXING_BAND);
    vars.iter()
        .map(|&v| {
            let mut lo = face.clone();
            lo.set_sense(Sense::Minimize);
            lo.objective([(v, 1.0)]);
            let mut hi = lo.clone();
            hi.set_sense(Sense::Maximize);
            Ok((
                solve_optimal(&lo, model, dmu)?.objective_value,
                solve_optimal(&hi, model, dmu)?.objective_value,
            ))
        })
        .collect()
}

/// `sum_j coeffs[j] * vars[j]`, the usual reference-set combination.
pub(crate) fn combo(vars: &[Var], coeffs: &[f64]) -> Vec<(Var, f64)> {
    vars.iter().copied().zip(coeffs.iter().copied()).collect()
}

/// `sum_j coeffs[j] * vars[j] + scale * extra  (rel)  0`.
pub(crate) fn scaled_row(
    b: &mut LpBuilder,
    vars: &[Var],
    coeffs: &[f64],
    extra: Var,
    scale: f64,
    rel: Relation,
) {
    let mut terms = combo(vars, coeffs);
    terms.push((extra, scale));
    b.constraint(terms, rel, 0.0);
}

pub(crate) fn convexity(b: &mut LpBuilder, vars: &[Var]) {
    b.constraint(vars.iter().map(|&v| (v, 1.0)), Relation::Eq, 1.0);
}
