use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{cheb_omega, Polynomial, RingError, Var};

/// Commutative ring of matrix entries: exact polynomials or complex floats.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Whether `self` equals one, exactly or within `tol`.
    fn is_unit_within(&self, tol: f64) -> bool;
}

impl Scalar for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn from_i64(n: i64) -> Self {
        Polynomial::constant(n)
    }
    fn is_unit_within(&self, _tol: f64) -> bool {
        self.is_one()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_unit_within(&self, tol: f64) -> bool {
        (self - Complex64::new(1.0, 0.0)).norm() <= tol
    }
}

/// Determinant tolerance for floating-point unimodularity checks.
pub const UNIMODULAR_TOL: f64 = 1e-9;

/// 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Matrix2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn scalar(s: S) -> Self {
        Self::new(s.clone(), S::zero(), S::zero(), s)
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> S {
        self.a.clone() + self.d.clone()
    }

    /// Adjugate; equals the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Self::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.a.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.c.clone() * s.clone(),
            self.d.clone() * s.clone(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn is_unimodular(&self, tol: f64) -> bool {
        self.det().is_unit_within(tol)
    }

    /// `self * other * self^-1` for `self` in SL(2).
    pub fn conj(&self, other: &Self) -> Self {
        &(self * other) * &self.adjugate()
    }

    /// Power by repeated multiplication; negative exponents use the adjugate.
    pub fn pow_naive(&self, n: i64) -> Self {
        let base = if n < 0 { self.adjugate() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }
}

impl<S: Scalar> Mul for &Matrix2<S> {
    type Output = Matrix2<S>;
    fn mul(self, o: &Matrix2<S>) -> Matrix2<S> {
        Matrix2::new(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }
}

impl<S: Scalar> Add for &Matrix2<S> {
    type Output = Matrix2<S>;
    fn add(self, o: &Matrix2<S>) -> Matrix2<S> {
        Matrix2::new(
            self.a.clone() + o.a.clone(),
            self.b.clone() + o.b.clone(),
            self.c.clone() + o.c.clone(),
            self.d.clone() + o.d.clone(),
        )
    }
}

impl<S: Scalar> Sub for &Matrix2<S> {
    type Output = Matrix2<S>;
    fn sub(self, o: &Matrix2<S>) -> Matrix2<S> {
        Matrix2::new(
            self.a.clone() - o.a.clone(),
            self.b.clone() - o.b.clone(),
            self.c.clone() - o.c.clone(),
            self.d.clone() - o.d.clone(),
        )
    }
}

impl<S: Scalar> Neg for &Matrix2<S> {
    type Output = Matrix2<S>;
    fn neg(self) -> Matrix2<S> {
        self.scale(&(-S::one()))
    }
}

impl Matrix2<Complex64> {
    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        [self.a, self.b, self.c, self.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Inverse via adjugate scaled by `1/det`.
    pub fn inverse(&self) -> Self {
        let inv = Complex64::new(1.0, 0.0) / self.det();
        self.adjugate().scale(&inv)
    }
}

/// `z^n` through `omega_n(tr z) z - omega_{n-1}(tr z) e`.
pub fn mat2_pow<S: Scalar>(z: &Matrix2<S>, n: i64) -> Result<Matrix2<S>, RingError> {
    if !z.is_unimodular(UNIMODULAR_TOL) {
        return Err(RingError::NotUnimodular);
    }
    let tr = z.trace();
    let wn = cheb_omega(n, &tr);
    let wn1 = cheb_omega(n - 1, &tr);
    Ok(&z.scale(&wn) - &Matrix2::scalar(wn1))
}

pub fn identity<S: Scalar>() -> Matrix2<S> {
    Matrix2::identity()
}

/// `[[1, 1], [0, 1]]`
pub fn parabolic<S: Scalar>() -> Matrix2<S> {
    Matrix2::new(S::one(), S::one(), S::zero(), S::one())
}

/// Weyl element `[[0, 1], [-1, 0]]`.
pub fn weyl<S: Scalar>() -> Matrix2<S> {
    Matrix2::new(S::zero(), S::one(), -S::one(), S::zero())
}

/// `diag(k, k^-1)` given both entries.
pub fn diagonal<S: Scalar>(k: S, k_inv: S) -> Matrix2<S> {
    Matrix2::new(k, S::zero(), S::zero(), k_inv)
}

/// `[[k, xi], [0, k^-1]]`
pub fn upper<S: Scalar>(k: S, k_inv: S, xi: S) -> Matrix2<S> {
    Matrix2::new(k, xi, S::zero(), k_inv)
}

/// `[[k, 0], [xi, k^-1]]`
pub fn lower<S: Scalar>(k: S, k_inv: S, xi: S) -> Matrix2<S> {
    Matrix2::new(k, S::zero(), xi, k_inv)
}

/// Symbolic `d(kappa)` over Laurent polynomials.
pub fn diag_kappa(e: i32) -> Matrix2<Polynomial> {
    diagonal(
        Polynomial::var_pow(Var::Kappa, e),
        Polynomial::var_pow(Var::Kappa, -e),
    )
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Trace-`t` matrix whose product with its partner `h(-mu/lambda)` is `d(lambda)`.
pub fn h_matrix(t: Complex64, lambda: Complex64, mu: Complex64) -> Result<Matrix2<Complex64>, RingError> {
    let tau = lambda + lambda.inv();
    let near = |a: Complex64, b: Complex64| (a - b).norm() < 1e-12;
    if lambda.norm() == 0.0 || mu.norm() == 0.0 || near(tau, t * t - c(2.0)) || near(tau, c(2.0)) || near(tau, c(-2.0)) {
        return Err(RingError::DomainViolation(
            "h requires mu != 0 and lambda + 1/lambda outside {t^2-2, 2, -2}".into(),
        ));
    }
    let s = (lambda + c(1.0)).inv();
    Ok(Matrix2::new(
        lambda * t * s,
        mu * s,
        (t * t - tau - c(2.0)) * lambda / mu * s,
        t * s,
    ))
}

/// Trace-`t` matrix whose product with `k(alpha - t)` is `-p`.
pub fn k_matrix(t: Complex64, alpha: Complex64) -> Result<Matrix2<Complex64>, RingError> {
    if t.norm() == 0.0 {
        return Err(RingError::DomainViolation("k requires t != 0".into()));
    }
    Ok(Matrix2::new(
        t / 2.0 + alpha,
        (t * t / 4.0 - c(1.0) - alpha * alpha) / (t * 2.0),
        t * 2.0,
        t / 2.0 - alpha,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::cheb_theta;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pow_zero_is_identity() {
        let c21 = cx(1.0, 2.0);
        let z = Matrix2::new(cx(2.0, 1.0), -c21.inv(), c21, cx(0.0, 0.0));
        assert!(z.is_unimodular(1e-12));
        assert!(mat2_pow(&z, 0).unwrap().max_abs_diff(&Matrix2::identity()) < 1e-15);
    }

    #[test]
    fn diag_power_is_diag() {
        for n in -4..=6 {
            let p = mat2_pow(&diag_kappa(1), n).unwrap();
            assert_eq!(p, diag_kappa(n as i32));
        }
    }

    #[test]
    fn not_unimodular() {
        let z: Matrix2<Polynomial> = Matrix2::scalar(Polynomial::constant(2));
        assert_eq!(mat2_pow(&z, 3), Err(RingError::NotUnimodular));
    }

    #[test]
    fn special_elements_have_det_one() {
        let x = Polynomial::var(Var::Aux(0));
        assert!(parabolic::<Polynomial>().det().is_one());
        assert!(weyl::<Polynomial>().det().is_one());
        assert!(diag_kappa(3).det().is_one());
        let k = Polynomial::var(Var::Kappa);
        let ki = Polynomial::var_pow(Var::Kappa, -1);
        assert!(upper(k.clone(), ki.clone(), x.clone()).det().is_one());
        assert!(lower(k, ki, x).det().is_one());
    }

    #[test]
    fn weyl_conjugates_to_inverse_transpose() {
        let z = Matrix2::new(cx(1.5, 0.2), cx(0.3, -1.0), cx(2.0, 0.5), cx(0.0, 0.0));
        let z = Matrix2::new(z.a, z.b, z.c, (c(1.0) + z.b * z.c) / z.a);
        let w = weyl::<Complex64>();
        let lhs = w.conj(&z);
        let rhs = z.transpose().inverse();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn theta_two_at_point() {
        let x = Polynomial::var(Var::Aux(0));
        let v = cheb_theta(2, &x)
            .eval(&|_| Some(cx(1.7, 0.0)))
            .unwrap();
        assert!((v - cx(0.89, 0.0)).norm() < 1e-12);
    }
}
