//! Dense univariate polynomials over the integers, used for common-root tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, RingError, Var};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Converts a polynomial in `v` alone. Negative powers of a Laurent `v` are
    /// cleared by the smallest monomial, so the result may differ by `v^k`.
    pub fn from_polynomial(p: &Polynomial, v: Var) -> Result<Self, RingError> {
        if let Some(other) = p.vars().into_iter().find(|&w| w != v) {
            return Err(RingError::NotUnivariate(other.to_string()));
        }
        let (_, q) = p.normalize_laurent();
        let deg = q.max_degree_in(v).unwrap_or(0).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (m, c) in q.terms() {
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_polynomial(&self, v: Var) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(v, i as i32), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero")
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        UniPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.lead().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &lr * dc;
            }
            debug_assert!(r[k].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Exact division by `d`, if it divides.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut r = self.coeffs.clone();
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (dd..=n).rev() {
            let (qc, rem) = r[k].div_rem(d.lead());
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &qc * dc;
            }
            q[k - dd] = qc;
        }
        r.iter().all(Zero::is_zero).then(|| UniPoly::new(q))
    }

    /// Divides out `f` as often as it divides.
    pub fn strip_factor(&self, f: &UniPoly) -> UniPoly {
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.exact_div(f) {
                Some(q) => cur = q,
                None => break,
            }
        }
        cur
    }

    /// Primitive gcd via the primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn x_pow(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        Self::new(c)
    }
}
