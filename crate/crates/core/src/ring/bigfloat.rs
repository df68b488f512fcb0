//! Complex binary floating point with a wide mantissa, for evaluating large
//! integer polynomials and long matrix words without losing the result to
//! cancellation.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::Scalar;

/// Mantissa bits kept after every operation.
pub const BIG_PRECISION: u64 = 320;

/// `(re + i im) 2^exp`; both parts share the exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    re: BigInt,
    im: BigInt,
    exp: i64,
}

/// `x = m 2^e` exactly, for finite `x`.
fn decompose(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let field = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (m, e) = if field == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), field - 1075)
    };
    (BigInt::from(sign * m), e)
}

fn scaled(m: f64, e: i64) -> f64 {
    // split the scaling so intermediate powers stay finite
    let half = (e / 2).clamp(-1100, 1100) as i32;
    let rest = (e - e / 2).clamp(-1100, 1100) as i32;
    m * 2f64.powi(half) * 2f64.powi(rest)
}

impl BigComplex {
    fn rounded(re: BigInt, im: BigInt, exp: i64) -> Self {
        let bits = re.bits().max(im.bits());
        if bits > BIG_PRECISION {
            let s = (bits - BIG_PRECISION) as usize;
            BigComplex { re: re >> s, im: im >> s, exp: exp + s as i64 }
        } else {
            BigComplex { re, im, exp }
        }
    }

    pub fn from_int(c: &BigInt) -> Self {
        Self::rounded(c.clone(), BigInt::zero(), 0)
    }

    /// The exact value of a finite complex float.
    pub fn from_complex(z: Complex64) -> Self {
        let (re, er) = decompose(z.re);
        let (im, ei) = decompose(z.im);
        let exp = er.min(ei);
        BigComplex {
            re: re << (er - exp) as usize,
            im: im << (ei - exp) as usize,
            exp,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out * self.clone();
        }
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        let part = |x: &BigInt| {
            let extra = x.bits() as i64 - 96;
            if extra > 0 {
                scaled((x >> extra as usize).to_f64().unwrap_or(0.0), self.exp + extra)
            } else {
                scaled(x.to_f64().unwrap_or(0.0), self.exp)
            }
        };
        Complex64::new(part(&self.re), part(&self.im))
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, o: BigComplex) -> BigComplex {
        let exp = self.exp.min(o.exp);
        let (a, b) = ((self.exp - exp) as usize, (o.exp - exp) as usize);
        Self::rounded((self.re << a) + (o.re << b), (self.im << a) + (o.im << b), exp)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im, exp: self.exp }
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, o: BigComplex) -> BigComplex {
        self + (-o)
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, o: BigComplex) -> BigComplex {
        Self::rounded(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
            self.exp + o.exp,
        )
    }
}

impl Scalar for BigComplex {
    fn zero() -> Self {
        BigComplex { re: BigInt::zero(), im: BigInt::zero(), exp: 0 }
    }
    fn one() -> Self {
        BigComplex { re: BigInt::one(), im: BigInt::zero(), exp: 0 }
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }
    fn is_unit_within(&self, tol: f64) -> bool {
        (self.to_complex() - Complex64::new(1.0, 0.0)).norm() <= tol
    }
}
