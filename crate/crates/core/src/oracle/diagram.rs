//! Crossing-by-crossing propagation of complex matrices through the standard
//! diagram of a rational tangle.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::ring::{BigComplex, Matrix2, Polynomial};
use crate::tangle::{twist_blocks, BlockKind, ContinuedFraction, RationalTangle, TwistBlock};

pub type CMat = Matrix2<Complex64>;

/// Default comparison tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Radius of the excluded neighbourhood around degenerate parameters.
pub const DEGENERATE_RADIUS: f64 = 1e-3;

/// `|a - b| <= tol * max(1, |b|)`.
pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    mixed_error(a, b) <= tol
}

/// Error of `a` against reference `b`: relative when `|b| > 1`, absolute otherwise.
pub fn mixed_error(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Twist blocks of `[[k_1],...,[k_s]]` together with the end pairing of the
/// initial tangle (`[0]` for odd `s`, `[inf]` for even `s`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangleDiagram {
    pub blocks: Vec<TwistBlock>,
    pub starts_at_zero: bool,
}

impl TangleDiagram {
    pub fn from_cf(cf: &ContinuedFraction) -> Self {
        TangleDiagram {
            blocks: twist_blocks(cf),
            starts_at_zero: cf.len() % 2 == 1,
        }
    }

    pub fn from_tangle(t: &RationalTangle) -> Self {
        Self::from_cf(&t.cf)
    }

    pub fn crossing_count(&self) -> u64 {
        self.blocks.iter().map(|b| b.crossings.unsigned_abs()).sum()
    }
}

/// Boundary values on the four outward-directed ends.
///
/// The traces are taken before rounding the ends to machine precision: the
/// entries of long words are large and their products cancel heavily.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryQuadruple {
    pub nw: CMat,
    pub ne: CMat,
    pub sw: CMat,
    pub se: CMat,
    traces: [Complex64; 3],
    defect: f64,
}

type BigMat = Matrix2<BigComplex>;

fn lift(m: &CMat) -> BigMat {
    let f = |z: Complex64| BigComplex::from_complex(z);
    Matrix2::new(f(m.a), f(m.b), f(m.c), f(m.d))
}

fn round(m: &BigMat) -> CMat {
    Matrix2::new(m.a.to_complex(), m.b.to_complex(), m.c.to_complex(), m.d.to_complex())
}

impl BoundaryQuadruple {
    fn from_big([nw, ne, sw, se]: [BigMat; 4]) -> Self {
        let tr2 = |a: &BigMat, b: &BigMat| (a * b).trace().to_complex() - cx(2.0);
        let traces = [tr2(&nw, &ne), tr2(&nw, &sw), tr2(&nw, &se)];
        let prod = &(&(&nw * &ne) * &se) * &sw;
        let defect = round(&prod).max_abs_diff(&Matrix2::identity());
        BoundaryQuadruple {
            nw: round(&nw),
            ne: round(&ne),
            sw: round(&sw),
            se: round(&se),
            traces,
            defect,
        }
    }

    /// `z = tr(nw ne) - 2`
    pub fn z(&self) -> Complex64 {
        self.traces[0]
    }

    /// `ż = tr(nw sw) - 2`
    pub fn zdot(&self) -> Complex64 {
        self.traces[1]
    }

    /// `z̀ = tr(nw se) - 2`
    pub fn zgrave(&self) -> Complex64 {
        self.traces[2]
    }

    /// Deviation of `nw ne se sw` from the identity.
    pub fn closure_defect(&self) -> f64 {
        self.defect
    }
}

/// Generating pair with prescribed traces.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingPair {
    pub x: CMat,
    pub y: CMat,
    pub kappa: Complex64,
    /// `r` lies within [`DEGENERATE_RADIUS`] of `2` or `t^2 - 2`, where the pair
    /// has a common eigenvector.
    pub degenerate: bool,
}

/// `x = [[k, 1], [0, 1/k]]`, `y = [[k, 0], [r - k^2 - k^-2, 1/k]]`, so that
/// `tr x = tr y = k + 1/k` and `tr(xy) = r`.
pub fn generating_pair_kappa(kappa: Complex64, r: Complex64) -> GeneratingPair {
    let ki = kappa.inv();
    let t = kappa + ki;
    let x = Matrix2::new(kappa, cx(1.0), cx(0.0), ki);
    let y = Matrix2::new(kappa, cx(0.0), r - kappa * kappa - ki * ki, ki);
    let degenerate =
        (r - cx(2.0)).norm() < DEGENERATE_RADIUS || (r - t * t + cx(2.0)).norm() < DEGENERATE_RADIUS;
    GeneratingPair { x, y, kappa, degenerate }
}

/// As [`generating_pair_kappa`], with `kappa` the root of `k^2 - t k + 1` of
/// larger modulus.
pub fn sample_generating_pair(t: Complex64, r: Complex64) -> GeneratingPair {
    let disc = (t * t - cx(4.0)).sqrt();
    let (k1, k2) = ((t + disc) / 2.0, (t - disc) / 2.0);
    let kappa = if k1.norm() >= k2.norm() { k1 } else { k2 };
    generating_pair_kappa(kappa, r)
}

/// Random `(kappa, r)` away from `kappa^4 = 1` and `r in {2, t^2 - 2}`.
pub fn sample_kappa_r<R: Rng + ?Sized>(rng: &mut R) -> (Complex64, Complex64) {
    loop {
        let kappa = Complex64::from_polar(rng.gen_range(0.85..1.18), rng.gen_range(0.0..std::f64::consts::TAU));
        let r = Complex64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
        let t = kappa + kappa.inv();
        let k4 = kappa.powi(4);
        if (k4 - cx(1.0)).norm() < DEGENERATE_RADIUS
            || (r - cx(2.0)).norm() < DEGENERATE_RADIUS
            || (r - t * t + cx(2.0)).norm() < DEGENERATE_RADIUS
        {
            continue;
        }
        return (kappa, r);
    }
}

/// Matrices carried along the propagation: the boundary rules only need a group.
pub trait GroupElement: Clone {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl GroupElement for CMat {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

/// Exact propagation; the adjugate is the inverse since every factor has determinant one.
impl GroupElement for Matrix2<Polynomial> {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.adjugate()
    }
}

/// The generators have determinant one up to input rounding, so the adjugate
/// differs from the inverse by a scalar within a few ulps of one.
impl GroupElement for BigMat {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.adjugate()
    }
}

/// Ends in the order `(nw, ne, sw, se)`.
pub fn propagate_ends<G: GroupElement>(diagram: &TangleDiagram, x: &G, y: &G) -> [G; 4] {
    let (nw, mut ne, mut sw, mut se) = if diagram.starts_at_zero {
        (x.clone(), x.inv(), y.inv(), y.clone())
    } else {
        (x.clone(), y.clone(), x.inv(), y.inv())
    };
    for block in &diagram.blocks {
        for _ in 0..block.crossings.unsigned_abs() {
            let positive = block.crossings > 0;
            match block.kind {
                // (ne, se) = (b, d)
                BlockKind::Horizontal => {
                    let (b, d) = (ne, se);
                    (ne, se) = if positive {
                        (b.mul(&d).mul(&b.inv()), b)
                    } else {
                        (d.clone(), d.inv().mul(&b).mul(&d))
                    };
                }
                // (sw, se) = (c, d)
                BlockKind::Vertical => {
                    let (c, d) = (sw, se);
                    (sw, se) = if positive {
                        (c.inv().mul(&d).mul(&c), c)
                    } else {
                        (d.clone(), d.mul(&c).mul(&d.inv()))
                    };
                }
            }
        }
    }
    [nw, ne, sw, se]
}

/// Propagates the generating pair and checks `nw ne se sw = e`.
pub fn propagate(diagram: &TangleDiagram, x: &CMat, y: &CMat) -> Result<BoundaryQuadruple, OracleError> {
    let q = BoundaryQuadruple::from_big(propagate_ends(diagram, &lift(x), &lift(y)));
    let defect = q.closure_defect();
    if !(defect <= DEFAULT_TOLERANCE) {
        return Err(OracleError::ConventionMismatch(defect));
    }
    Ok(q)
}
