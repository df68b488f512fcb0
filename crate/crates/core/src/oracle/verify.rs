//! Rebuilds explicit boundary matrices from a point of `X₂` or `X'` and
//! checks them against tangle representations propagated by the diagram.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{mixed_error, propagate, sample_generating_pair, CMat, OracleError, TangleDiagram, DEGENERATE_RADIUS};
use crate::reducible_engine::theta_pair;
use crate::ring::{diagonal, h_matrix, k_matrix, lower, upper, Matrix2, Polynomial, Var};
use crate::tangle::{MontesinosKnot, RationalTangle};
use crate::trace_engine::trace_triple;
use crate::variety_builder::{Component, SignVector};

/// A point: variable to complex value.
pub type Assignment = BTreeMap<Var, Complex64>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub knot: String,
    pub component: Component,
    pub checks: Vec<Check>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// `(nw, ne, sw, se)` of one tangle.
type Ends = [CMat; 4];

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn get(point: &Assignment, v: Var) -> Result<Complex64, OracleError> {
    point
        .get(&v)
        .copied()
        .ok_or_else(|| OracleError::ReconstructionFailure(format!("no value for `{v}`")))
}

/// `z`, `ż`, `z̀` of a tangle at `(t, r)`.
fn engine_traces(tangle: &RationalTangle, t: Complex64, r: Complex64) -> Result<[Complex64; 3], OracleError> {
    let tt = trace_triple(tangle)?;
    let at: HashMap<Var, Complex64> = [(Var::T, t), (Var::R, r)].into();
    Ok([
        tt.z.eval_precise_f64(&at)?,
        tt.zdot.eval_precise_f64(&at)?,
        tt.zgrave.eval_precise_f64(&at)?,
    ])
}

fn scale_of(m: &CMat) -> f64 {
    m.max_abs().max(1.0)
}

/// Relative distance between two matrices.
fn mat_error(a: &CMat, b: &CMat) -> f64 {
    a.max_abs_diff(b) / scale_of(b)
}

/// Traces that determine an irreducible boundary up to conjugation.
fn boundary_character(e: &Ends) -> [Complex64; 5] {
    let [nw, ne, sw, se] = e;
    [
        (nw * ne).trace(),
        (nw * sw).trace(),
        (nw * se).trace(),
        (ne * sw).trace(),
        (&(nw * ne) * sw).trace(),
    ]
}

/// Compares `e` with the boundary of the tangle representation with traces
/// `(t, r)`, up to conjugation.
fn character_residual(tangle: &RationalTangle, t: Complex64, r: Complex64, e: &Ends) -> Result<f64, OracleError> {
    let pair = sample_generating_pair(t, r);
    let q = propagate(&TangleDiagram::from_tangle(tangle), &pair.x, &pair.y)?;
    let want = boundary_character(&[q.nw, q.ne, q.sw, q.se]);
    let got = boundary_character(e);
    Ok(got.iter().zip(&want).map(|(a, b)| mixed_error(*a, *b)).fold(0.0, f64::max))
}

fn product_defect(e: &Ends) -> f64 {
    let [nw, ne, sw, se] = e;
    mat_error(&(&(&(nw * ne) * se) * sw), &Matrix2::identity())
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, residual: f64) {
        // NaN must fail the comparison below
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        self.0.push(Check { name: name.into(), residual });
    }
}

/// Reconstructs the representation encoded by `point` and returns the
/// largest residual over all checks. `X₁` points are not supported.
pub fn verify_rep_montesinos(
    knot: &MontesinosKnot,
    component: &Component,
    point: &Assignment,
    tolerance: f64,
) -> Result<VerifyReport, OracleError> {
    let checks = match component {
        Component::X1 => {
            return Err(OracleError::Unsupported(
                "X1 points are trace coordinates; there is no canonical matrix reconstruction".into(),
            ))
        }
        Component::X2 => verify_x2(knot, point)?,
        Component::XPrime { epsilon } => verify_xprime(knot, epsilon, point)?,
    };
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(VerifyReport {
        knot: knot.to_string(),
        component: component.clone(),
        checks,
        max_residual,
        tolerance,
        passed: max_residual <= tolerance,
    })
}

/// `μ_i / μ_{i+1}` from `tr(x_i^nw x_i^sw)` and `tr(x_i^nw x_i^se)`.
///
/// With `s = 1/(λ+1)`, `c = t² - τ - 2` and `ρ = μ_i/μ_{i+1}`:
/// `ż + 2 = s²λ(2t² - c(ρ + 1/ρ))` and `z̀ + 2 = s²(2λt² + c(λ²ρ + 1/ρ))`.
pub fn mu_ratio(t: Complex64, lambda: Complex64, zdot: Complex64, zgrave: Complex64) -> Complex64 {
    let s2 = (lambda + 1.0).inv().powi(2);
    let c = t * t - lambda - lambda.inv() - 2.0;
    let a = (2.0 * t * t - (zdot + 2.0) / (s2 * lambda)) / c;
    let b = ((zgrave + 2.0) / s2 - 2.0 * lambda * t * t) / c;
    (b - a) / (lambda * lambda - 1.0)
}

fn verify_x2(knot: &MontesinosKnot, point: &Assignment) -> Result<Vec<Check>, OracleError> {
    let m = knot.m();
    let t = get(point, Var::T)?;
    let lambda = get(point, Var::Lambda)?;
    let r: Vec<Complex64> = (1..=m).map(|i| get(point, Var::Ri(i as u16))).collect::<Result<_, _>>()?;
    let tau = lambda + lambda.inv();
    if (tau - 2.0).norm() < DEGENERATE_RADIUS || (tau - t * t + 2.0).norm() < DEGENERATE_RADIUS {
        return Err(OracleError::ReconstructionFailure("tau lies on 2 or t^2 - 2".into()));
    }
    let traces: Vec<[Complex64; 3]> =
        (0..m).map(|i| engine_traces(knot.tangle(i), t, r[i])).collect::<Result<_, _>>()?;
    let mut checks = Checks(Vec::new());
    let g_expected;
    let ends: Vec<Ends> = if (lambda + 1.0).norm() < 1e-6 {
        if t.norm() < DEGENERATE_RADIUS {
            return Err(OracleError::ReconstructionFailure("t = 0".into()));
        }
        // g = -p; x^nw = k(α_i), x^ne = k(α_i - t)
        let mut alpha = vec![cx(0.0)];
        for tr in &traces {
            let a = *alpha.last().unwrap();
            alpha.push(a + (tr[1] - tr[2] + t * t) / (2.0 * t));
        }
        let drift = alpha[m];
        checks.push("closing: sum of alpha increments", drift.norm() / t.norm().max(1.0));
        alpha[m] = alpha[0];
        g_expected = Matrix2::new(cx(-1.0), cx(-1.0), cx(0.0), cx(-1.0));
        (0..m)
            .map(|i| -> Result<Ends, OracleError> {
                Ok([
                    k_matrix(t, alpha[i])?,
                    k_matrix(t, alpha[i] - t)?,
                    k_matrix(t, alpha[i + 1])?.inverse(),
                    k_matrix(t, alpha[i + 1] - t)?.inverse(),
                ])
            })
            .collect::<Result<_, _>>()?
    } else {
        // g = d(λ); x^nw = h(μ_i), x^ne = h(-μ_i/λ)
        let mut mu = vec![cx(1.0)];
        for tr in &traces {
            let rho = mu_ratio(t, lambda, tr[1], tr[2]);
            if rho.norm() == 0.0 || !rho.is_finite() {
                return Err(OracleError::ReconstructionFailure("mu ratio is zero or infinite".into()));
            }
            mu.push(mu.last().unwrap() / rho);
        }
        checks.push("closing: product of mu ratios", (mu[m] / mu[0] - 1.0).norm());
        mu[m] = mu[0];
        g_expected = diagonal(lambda, lambda.inv());
        (0..m)
            .map(|i| -> Result<Ends, OracleError> {
                Ok([
                    h_matrix(t, lambda, mu[i])?,
                    h_matrix(t, lambda, -mu[i] / lambda)?,
                    h_matrix(t, lambda, mu[i + 1])?.inverse(),
                    h_matrix(t, lambda, -mu[i + 1] / lambda)?.inverse(),
                ])
            })
            .collect::<Result<_, _>>()?
    };
    for (i, e) in ends.iter().enumerate() {
        let n = i + 1;
        let g = &e[0] * &e[1];
        checks.push(format!("tangle {n}: g = x^nw x^ne"), mat_error(&g, &g_expected));
        checks.push(format!("tangle {n}: x^nw x^ne x^se x^sw = e"), product_defect(e));
        let tr_err = e.iter().map(|x| mixed_error(x.trace(), t)).fold(0.0, f64::max);
        checks.push(format!("tangle {n}: end traces equal t"), tr_err);
        let [z, zdot, zgrave] = traces[i];
        checks.push(format!("tangle {n}: z = tau - 2"), mixed_error(z, tau - 2.0));
        checks.push(format!("tangle {n}: zdot"), mixed_error((&e[0] * &e[2]).trace() - 2.0, zdot));
        checks.push(format!("tangle {n}: zgrave"), mixed_error((&e[0] * &e[3]).trace() - 2.0, zgrave));
        checks.push(
            format!("tangle {n}: boundary is a tangle representation"),
            character_residual(knot.tangle(i), t, r[i], e)?,
        );
    }
    Ok(checks.0)
}

/// `u^ε_κ(ξ)`, or `d(κ)` for `ε = 0`.
fn u_eps(eps: i8, kappa: Complex64, xi: Complex64) -> CMat {
    match eps {
        1 => upper(kappa, kappa.inv(), xi),
        -1 => lower(kappa, kappa.inv(), xi),
        _ => diagonal(kappa, kappa.inv()),
    }
}

/// Fits `y = u^ε_{κ^d}(ζ)` so that the propagated boundary of a reducible
/// tangle matches `e`, and returns the best mismatch over `d = ±1`.
fn reducible_residual(tangle: &RationalTangle, eps: i8, kappa: Complex64, e: &Ends) -> Result<f64, OracleError> {
    let diagram = TangleDiagram::from_tangle(tangle);
    let corner = |m: &CMat| if eps < 0 { m.c } else { m.b };
    let mut best = f64::INFINITY;
    for d in [1, -1] {
        let kd = kappa.powi(d);
        let y = |zeta: Complex64| u_eps(if eps == 0 { 1 } else { eps }, kd, zeta);
        let q0 = propagate(&diagram, &e[0], &y(cx(0.0)))?;
        let q1 = propagate(&diagram, &e[0], &y(cx(1.0)))?;
        // every corner is affine in ζ
        let mut zeta = cx(0.0);
        for (a0, a1, want) in [(&q0.ne, &q1.ne, &e[1]), (&q0.sw, &q1.sw, &e[2]), (&q0.se, &q1.se, &e[3])] {
            let slope = corner(a1) - corner(a0);
            if slope.norm() > 1e-6 {
                zeta = (corner(want) - corner(a0)) / slope;
                break;
            }
        }
        let q = propagate(&diagram, &e[0], &y(zeta))?;
        let got = [q.nw, q.ne, q.sw, q.se];
        let err = got.iter().zip(e).map(|(a, b)| mat_error(a, b)).fold(0.0, f64::max);
        best = best.min(err);
    }
    Ok(best)
}

fn verify_xprime(knot: &MontesinosKnot, eps: &SignVector, point: &Assignment) -> Result<Vec<Check>, OracleError> {
    let m = knot.m();
    if eps.len() != m || !eps.has_both_signs() {
        return Err(OracleError::ReconstructionFailure(format!("sign vector {eps} does not fit {knot}")));
    }
    let kappa = get(point, Var::Kappa)?;
    if (kappa.powi(4) - 1.0).norm() < DEGENERATE_RADIUS {
        return Err(OracleError::ReconstructionFailure("kappa^4 = 1".into()));
    }
    let t = kappa + kappa.inv();
    let norm = eps.normalized_index().expect("sign vector has a nonzero entry");
    let mut xi = vec![cx(0.0); m + 1];
    for i in 1..=m {
        if eps.at(i) == 0 {
            continue;
        }
        xi[i] = if i == norm { cx(1.0) } else { get(point, Var::Xi(i as u16))? };
        if xi[i].norm() < DEGENERATE_RADIUS {
            return Err(OracleError::ReconstructionFailure(format!("xi_{i} = 0")));
        }
    }
    let nw: Vec<CMat> = (1..=m).map(|i| u_eps(eps.at(i), kappa, xi[i])).collect();
    let ne: Vec<CMat> = (1..=m)
        .map(|i| {
            let e = eps.at(i);
            u_eps(e, kappa, -kappa.powi(-2 * e as i32) * xi[i])
        })
        .collect();
    let g = diagonal(kappa * kappa, kappa.powi(-2));
    let mut checks = Checks(Vec::new());
    let mut product = cx(1.0);
    for i in 1..=m {
        let j = i % m + 1;
        let e: Ends = [nw[i - 1].clone(), ne[i - 1].clone(), nw[j - 1].inverse(), ne[j - 1].inverse()];
        let tangle = knot.tangle(i - 1);
        checks.push(format!("tangle {i}: g = x^nw x^ne"), mat_error(&(&e[0] * &e[1]), &g));
        checks.push(format!("tangle {i}: x^nw x^ne x^se x^sw = e"), product_defect(&e));
        let (e0, e1) = (eps.at(i), eps.at(j));
        if e0 * e1 == -1 {
            let r = get(point, Var::Ri(i as u16))?;
            if (r - 2.0).norm() < DEGENERATE_RADIUS || (r - t * t + 2.0).norm() < DEGENERATE_RADIUS {
                return Err(OracleError::ReconstructionFailure(format!("r_{i} makes tangle {i} reducible")));
            }
            let [_, zdot, _] = engine_traces(tangle, t, r)?;
            product *= (-zdot.inv()).powi(e0 as i32);
            checks.push(
                format!("tangle {i}: boundary is a tangle representation"),
                character_residual(tangle, t, r, &e)?,
            );
        } else {
            let kind = if e0 != 0 { e0 } else { e1 };
            checks.push(
                format!("tangle {i}: boundary is a reducible tangle representation"),
                reducible_residual(tangle, kind, kappa, &e)?,
            );
            if e0 != 0 {
                let tp = theta_pair(tangle);
                let ke = kappa.powi(e0 as i32);
                let at: HashMap<Var, Complex64> = [(Var::Kappa, ke)].into();
                let th_ne = tp.theta_ne.eval_precise_f64(&at)?;
                let th_sw = tp.theta_sw.eval_precise_f64(&at)?;
                let f = 1.0 - (1.0 + ke.powi(-2)) * th_sw / th_ne;
                product *= f.powi(e0 as i32);
            }
        }
    }
    if eps.signs().iter().all(|&s| s != 0) {
        checks.push("product of f_i^eps_i is 1", (product - 1.0).norm());
    }
    Ok(checks.0)
}

/// Whether `a` and `b` share an eigenvector, for `tr a ∉ {±2}`.
pub fn common_eigenvector(a: &CMat, b: &CMat, tol: f64) -> bool {
    let t = a.trace();
    let disc = (t * t - 4.0).sqrt();
    [(t + disc) / 2.0, (t - disc) / 2.0].iter().any(|&ev| {
        // (b, ev - a) or (ev - d, c), whichever is larger
        let v1 = [a.b, ev - a.a];
        let v2 = [ev - a.d, a.c];
        let v = if v1[0].norm() + v1[1].norm() >= v2[0].norm() + v2[1].norm() { v1 } else { v2 };
        let w = [b.a * v[0] + b.b * v[1], b.c * v[0] + b.d * v[1]];
        let cross = v[0] * w[1] - v[1] * w[0];
        let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let nw = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        cross.norm() <= tol * nv * nw.max(1e-300)
    })
}

/// `point` with all variables of `poly` assigned, as a `HashMap` for evaluation.
pub(crate) fn as_map(point: &Assignment) -> HashMap<Var, Complex64> {
    point.iter().map(|(k, v)| (*k, *v)).collect()
}

/// Evaluates `p` at `point` with extended precision.
pub fn eval_at(p: &Polynomial, point: &Assignment) -> Result<Complex64, OracleError> {
    Ok(p.eval_precise_f64(&as_map(point))?)
}
