//! Non-abelian reducible representations of a rational tangle, and Riley
//! polynomials of its numerator closure.
//!
//! With `x = d(κ)` and `y = u⁺_κ(1)` every boundary element is upper
//! triangular, so the whole computation stays in `ℤ[κ, κ⁻¹]`.

use serde::{Deserialize, Serialize};

use crate::ring::{cheb_omega, Polynomial, RingError, Var};
use crate::tangle::{twist_blocks, BlockKind, Parity, RationalTangle};
use crate::trace_engine::trace_triple;

fn kappa_pow(e: i32) -> Polynomial {
    Polynomial::var_pow(Var::Kappa, e)
}

/// `u⁺_{κ^d}(a) = [[κ^d, a], [0, κ^-d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperTriangular {
    pub d: i32,
    pub a: Polynomial,
}

impl UpperTriangular {
    pub fn new(d: i32, a: Polynomial) -> Self {
        UpperTriangular { d, a }
    }

    pub fn identity() -> Self {
        Self::new(0, Polynomial::zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.d + o.d,
            &kappa_pow(self.d) * &o.a + &self.a * &kappa_pow(-o.d),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.d, -&self.a)
    }
}

/// `u⁺_μ(a)^k = u⁺_{μ^k}(ω_k(μ + μ⁻¹) a)`.
pub fn ut_pow(x: &UpperTriangular, k: i64) -> UpperTriangular {
    let tr = &kappa_pow(x.d) + &kappa_pow(-x.d);
    UpperTriangular::new(x.d * k as i32, &cheb_omega(k, &tr) * &x.a)
}

/// `x y x⁻¹`: `u⁺_μ(a) ⌟ u⁺_ν(b) = u⁺_ν((ν⁻¹ - ν) μ a + μ² b)`.
pub fn ut_conj(x: &UpperTriangular, y: &UpperTriangular) -> UpperTriangular {
    let nu = &kappa_pow(-y.d) - &kappa_pow(y.d);
    UpperTriangular::new(
        y.d,
        &(&nu * &kappa_pow(x.d)) * &x.a + &kappa_pow(2 * x.d) * &y.a,
    )
}

/// Upper-right entries of `x^ne` and `(x^sw)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaPair {
    pub theta_ne: Polynomial,
    pub theta_sw: Polynomial,
}

/// Runs the boundary through the twist blocks a whole block at a time.
///
/// `y` is `u⁺_κ(1)`, or its inverse when the numerator orients `x` and `y`
/// the same way, so that `x^ne` always has diagonal `κ`.
/// A full horizontal twist conjugates `(ne, se)` by `ne se`; a full vertical
/// twist conjugates `(sw, se)` by `(se sw)⁻¹`. An odd block adds one half twist.
pub fn theta_pair(tangle: &RationalTangle) -> ThetaPair {
    let x = UpperTriangular::new(1, Polynomial::zero());
    let y = UpperTriangular::new(1, Polynomial::one());
    let y = if tangle.numerator_aligns_generators() { y.inverse() } else { y };
    let blocks = twist_blocks(&tangle.cf);
    let (mut ne, mut sw, mut se) = if tangle.cf.len() % 2 == 1 {
        (x.inverse(), y.inverse(), y.clone())
    } else {
        (y.clone(), x.inverse(), y.inverse())
    };
    for block in &blocks {
        let k = block.crossings;
        let (h, half) = (k.div_euclid(2), k.rem_euclid(2) == 1);
        match block.kind {
            BlockKind::Horizontal => {
                let g = ut_pow(&ne.mul(&se), h);
                (ne, se) = (ut_conj(&g, &ne), ut_conj(&g, &se));
                if half {
                    (ne, se) = (ut_conj(&ne, &se), ne);
                }
            }
            BlockKind::Vertical => {
                let g = ut_pow(&se.mul(&sw), -h);
                (sw, se) = (ut_conj(&g, &sw), ut_conj(&g, &se));
                if half {
                    (sw, se) = (ut_conj(&sw.inverse(), &se), sw);
                }
            }
        }
    }
    ThetaPair {
        theta_ne: ne.a,
        theta_sw: sw.inverse().a,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RileyKind {
    Odd,
    Even { iota: i8 },
}

/// `body` is a Laurent polynomial in `κ` with coefficients in `ℤ[u]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RileyPolynomial {
    pub body: Polynomial,
    pub kind: RileyKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReducibleError {
    #[error("tangle {0} has the wrong parity for this operation")]
    WrongParity(String),
    #[error("iota must be +1 or -1, got {0}")]
    BadIota(i8),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn t_in_kappa() -> Polynomial {
    &kappa_pow(1) + &kappa_pow(-1)
}

/// `z` with `t = κ + κ⁻¹` and `r` replaced by `r_of_u`.
fn z_in_kappa_u(tangle: &RationalTangle, r_of_u: &Polynomial) -> Result<Polynomial, RingError> {
    let z = trace_triple(tangle)?.z;
    z.substitute_all(&[(Var::T, t_in_kappa()), (Var::R, r_of_u.clone())])
}

/// `φ` with `z = (r - 2) φ(κ, 2 - r)²`.
///
/// Here `r = tr(xy)` with `x`, `y` oriented oppositely along `N(T)`; when the
/// diagram's generating pair is aligned instead, `y` is inverted, which
/// replaces `r` by `t² - r`.
pub fn riley_odd(tangle: &RationalTangle) -> Result<RileyPolynomial, ReducibleError> {
    if tangle.parity != Parity::Odd {
        return Err(ReducibleError::WrongParity(tangle.fraction.to_string()));
    }
    let u = Polynomial::var(Var::U);
    let mut r = Polynomial::constant(2) - &u;
    if tangle.numerator_aligns_generators() {
        let t = t_in_kappa();
        r = &(&t * &t) - &r;
    }
    let z = z_in_kappa_u(tangle, &r)?;
    let body = z.exact_div(&-&u)?.sqrt()?;
    Ok(RileyPolynomial { body, kind: RileyKind::Odd })
}

/// `φ^ι` with `z = (r - 2)(r + 2 - t²) φ^ι(κ, u)²` at `r = u + κ^{1+ι} + κ^{-1-ι}`.
pub fn riley_even(tangle: &RationalTangle, iota: i8) -> Result<RileyPolynomial, ReducibleError> {
    if tangle.parity != Parity::Even {
        return Err(ReducibleError::WrongParity(tangle.fraction.to_string()));
    }
    if iota != 1 && iota != -1 {
        return Err(ReducibleError::BadIota(iota));
    }
    let e = 1 + iota as i32;
    let r = &Polynomial::var(Var::U) + &(&kappa_pow(e) + &kappa_pow(-e));
    let z = z_in_kappa_u(tangle, &r)?;
    let t = t_in_kappa();
    let divisor = &(&r - &Polynomial::constant(2)) * &(&(&r + &Polynomial::constant(2)) - &(&t * &t));
    let body = z.exact_div(&divisor)?.sqrt()?;
    Ok(RileyPolynomial { body, kind: RileyKind::Even { iota } })
}
