//! Exact polynomial arithmetic, trace recursions and 2x2 matrices.

mod cheb;
mod bigfloat;
mod json;
mod matrix;
mod monomial;
mod poly;
mod univariate;
mod var;

pub use bigfloat::{BigComplex, BIG_PRECISION};
pub use cheb::{cheb_omega, cheb_theta};
pub use matrix::{
    diag_kappa, diagonal, h_matrix, identity, k_matrix, lower, mat2_pow, parabolic, upper, weyl,
    Matrix2, Scalar, UNIMODULAR_TOL,
};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use univariate::UniPoly;
pub use var::{Var, VarDesc, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("polynomial is not a perfect square")]
    NotASquare,
    #[error("cannot invert `{0}`")]
    NotInvertible(String),
    #[error("no value assigned to `{0}`")]
    MissingVariable(String),
    #[error("Laurent variable `{0}` evaluated at zero")]
    ZeroAtLaurentVariable(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("expected a polynomial in one variable, found `{0}`")]
    NotUnivariate(String),
    #[error("domain violation: {0}")]
    DomainViolation(String),
}
