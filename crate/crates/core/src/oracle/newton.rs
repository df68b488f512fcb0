//! Damped Gauss-Newton refinement of approximate solutions. Not certified:
//! convergence says nothing about solutions that were not found.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::diagram::DEGENERATE_RADIUS;
use super::verify::{as_map, eval_at, Assignment};
use super::OracleError;
use crate::ring::{Polynomial, Var};
use crate::variety_builder::VarietySystem;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    /// Stop once the largest equation residual is below this.
    pub tolerance: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iterations: 100,
            tolerance: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonResult {
    pub point: Assignment,
    pub residual: f64,
    pub iterations: usize,
}

/// Largest absolute value of the equations of `system` at `point`.
pub fn residual(system: &VarietySystem, point: &Assignment) -> Result<f64, OracleError> {
    let values = values(&system.equations.iter().map(|r| r.poly.clone()).collect::<Vec<_>>(), point)?;
    Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max))
}

fn values(eqs: &[Polynomial], point: &Assignment) -> Result<Vec<Complex64>, OracleError> {
    let at = as_map(point);
    eqs.iter().map(|p| Ok(p.eval_precise_f64(&at)?)).collect()
}

fn max_norm(v: &[Complex64]) -> f64 {
    let m = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if m.is_nan() {
        f64::INFINITY
    } else {
        m
    }
}

/// Refines the variables in `free`; every other variable keeps its value in
/// `start`. Steps solve the linearized system in the least-squares sense and
/// are halved while the residual grows.
pub fn newton_refine(
    system: &VarietySystem,
    start: &Assignment,
    free: &[Var],
    opts: &NewtonOptions,
) -> Result<NewtonResult, OracleError> {
    let eqs: Vec<Polynomial> = system.equations.iter().map(|r| r.poly.clone()).collect();
    let jac: Vec<Vec<Polynomial>> = eqs.iter().map(|p| free.iter().map(|&v| p.derivative(v)).collect()).collect();
    if let Some(v) = free.iter().find(|v| !start.contains_key(v)) {
        return Err(OracleError::ReconstructionFailure(format!("no start value for `{v}`")));
    }
    let mut point = start.clone();
    let mut f = values(&eqs, &point)?;
    let mut res = max_norm(&f);
    for iteration in 0..opts.max_iterations {
        if res < opts.tolerance {
            return Ok(NewtonResult { point, residual: res, iterations: iteration });
        }
        let at = as_map(&point);
        let mut j = DMatrix::<Complex64>::zeros(eqs.len(), free.len());
        for (a, row) in jac.iter().enumerate() {
            for (b, d) in row.iter().enumerate() {
                j[(a, b)] = d.eval_precise_f64(&at)?;
            }
        }
        let svd = j.svd(true, true);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        if !(smax > 0.0) {
            return Err(OracleError::SingularJacobian);
        }
        let rhs = DVector::from_iterator(f.len(), f.iter().map(|x| -x));
        let step = svd
            .solve(&rhs, smax * 1e-13)
            .map_err(|_| OracleError::SingularJacobian)?;
        let mut damping = 1.0;
        loop {
            let mut trial = point.clone();
            for (b, &v) in free.iter().enumerate() {
                if let Some(x) = trial.get_mut(&v) {
                    *x += step[b] * damping;
                }
            }
            let ft = values(&eqs, &trial);
            if let Ok(ft) = ft {
                let rt = max_norm(&ft);
                if rt < res {
                    point = trial;
                    f = ft;
                    res = rt;
                    break;
                }
            }
            damping *= 0.5;
            if damping < 1e-6 {
                return Err(OracleError::NoConvergence { iterations: iteration, residual: res });
            }
        }
    }
    if res < opts.tolerance {
        return Ok(NewtonResult { point, residual: res, iterations: opts.max_iterations });
    }
    Err(OracleError::NoConvergence {
        iterations: opts.max_iterations,
        residual: res,
    })
}

/// Runs `newton_refine` from `starts` seeded random starts and returns the
/// first point that stays `DEGENERATE_RADIUS` away from every inequation.
///
/// When the system has more variables than equations, the surplus is frozen
/// at the random start values: Laurent variables first, then table order.
/// Freezing `λ` rather than `t` in `X₂` keeps `τ` off 2, where whole
/// components of spurious solutions with some `r_i = 2` live.
pub fn sample_point(
    system: &VarietySystem,
    seed: u64,
    starts: usize,
    opts: &NewtonOptions,
) -> Result<NewtonResult, OracleError> {
    let vars: Vec<Var> = system.variables.iter().collect();
    let surplus = vars.len().saturating_sub(system.equations.len());
    let mut order = vars.clone();
    order.sort_by_key(|v| !v.is_laurent());
    let free: Vec<Var> = vars.iter().copied().filter(|v| !order[..surplus].contains(v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = OracleError::NoConvergence { iterations: 0, residual: f64::INFINITY };
    for _ in 0..starts {
        let start: Assignment = vars
            .iter()
            .map(|&v| {
                let x = if v.is_laurent() {
                    Complex64::from_polar(rng.gen_range(0.6..1.6), rng.gen_range(0.0..std::f64::consts::TAU))
                } else {
                    Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
                };
                (v, x)
            })
            .collect();
        match newton_refine(system, &start, &free, opts) {
            Ok(res) => {
                let clear = system
                    .inequations
                    .iter()
                    .all(|r| eval_at(&r.poly, &res.point).map(|v| v.norm() > DEGENERATE_RADIUS).unwrap_or(false));
                if clear {
                    return Ok(res);
                }
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}
