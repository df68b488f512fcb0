use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{BigComplex, Monomial, RingError, Scalar, Var};

/// Sparse multivariate Laurent polynomial with arbitrary-precision integer
/// coefficients.
///
/// Terms are kept in ascending graded-lex order, so the leading term is the
/// last entry. Zero coefficients are never stored, and only Laurent variables
/// (see [`Var::is_laurent`]) ever carry negative exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v, 1))
    }

    /// `v^e`; negative exponents only for Laurent variables.
    pub fn var_pow(v: Var, e: i32) -> Self {
        assert!(e >= 0 || v.is_laurent(), "negative exponent on {v}");
        Self::term(1, Monomial::var(v, e))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            debug_assert!(m.is_admissible());
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Collects terms, summing duplicates. Panics on a negative exponent of a
    /// non-Laurent variable.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            assert!(m.is_admissible(), "negative exponent in {m}");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.leading_term().map(|t| t.1)
    }

    /// Constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Single-term polynomial as `(coefficient, monomial)`.
    pub fn as_term(&self) -> Option<(&BigInt, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// Variables occurring, in canonical order.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn max_degree_in(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn min_degree_in(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let out = Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        };
        debug_assert!(out.terms.keys().all(Monomial::is_admissible));
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Gcd of the coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coefficient().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect(),
        }
    }

    /// Smallest monomial `m` such that `self / m` has no negative exponents
    /// and no monomial factor in any Laurent variable.
    fn laurent_shift(&self) -> Monomial {
        let mut pairs = Vec::new();
        for v in self.vars() {
            if v.is_laurent() {
                let lo = self.min_degree_in(v).unwrap_or(0);
                if lo != 0 {
                    pairs.push((v, lo));
                }
            }
        }
        Monomial::from_pairs(pairs)
    }

    /// Splits `self = m * p` with `p` an ordinary polynomial free of monomial
    /// factors in Laurent variables.
    pub fn normalize_laurent(&self) -> (Monomial, Polynomial) {
        let m = self.laurent_shift();
        (m.clone(), self.mul_monomial(&m.inverse()))
    }

    /// Exact quotient `q` with `self = q * d`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial, RingError> {
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        // Work with ordinary polynomials so the division terminates; a Laurent
        // quotient of shifted polynomials is automatically an ordinary one.
        let (mp, p) = self.normalize_laurent();
        let (md, dd) = d.normalize_laurent();
        let q = ordinary_div(&p, &dd)?;
        let shift = mp.div(&md);
        if !shift.is_admissible() {
            return Err(RingError::NotDivisible);
        }
        Ok(q.mul_monomial(&shift))
    }

    /// Square root with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Polynomial, RingError> {
        if self.is_zero() {
            return Err(RingError::NotASquare);
        }
        let (m, p) = self.normalize_laurent();
        if m.exponents().iter().any(|&(_, e)| e % 2 != 0) {
            return Err(RingError::NotASquare);
        }
        let half: Monomial = Monomial::from_pairs(m.exponents().iter().map(|&(v, e)| (v, e / 2)));
        let root = ordinary_sqrt(&p)?;
        Ok(root.mul_monomial(&half))
    }

    /// Substitutes `v := with`. Negative powers of `v` are only allowed when
    /// `with` is a unit monomial `±m`.
    pub fn substitute(&self, v: Var, with: &Polynomial) -> Result<Polynomial, RingError> {
        if !self.vars().contains(&v) {
            return Ok(self.clone());
        }
        let inverse = || match with.as_term() {
            Some((c, m)) if c.abs().is_one() && m.inverse().is_admissible() => {
                Some(Polynomial::term(c.clone(), m.inverse()))
            }
            _ => None,
        };
        let mut powers: HashMap<i32, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        // group by the remaining monomial to reuse powers
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let rest = m.div(&Monomial::var(v, e));
            if e == 0 {
                out.add_term(rest, c.clone());
                continue;
            }
            if !powers.contains_key(&e) {
                let pw = if e > 0 {
                    with.pow(e as u32)
                } else {
                    let inv = inverse().ok_or(RingError::NotInvertible(v.to_string()))?;
                    inv.pow((-e) as u32)
                };
                powers.insert(e, pw);
            }
            let contrib = powers[&e].mul_monomial(&rest).scale(c);
            out += contrib;
        }
        Ok(out)
    }

    /// Substitutes several variables simultaneously.
    pub fn substitute_all(&self, subs: &[(Var, Polynomial)]) -> Result<Polynomial, RingError> {
        // route through fresh scratch variables so substitutions do not chain
        let base = 1000u16;
        let mut cur = self.clone();
        for (i, (v, _)) in subs.iter().enumerate() {
            cur = cur.substitute(*v, &Polynomial::var(Var::Aux(base + i as u16)))?;
        }
        for (i, (_, w)) in subs.iter().enumerate() {
            cur = cur.substitute(Var::Aux(base + i as u16), w)?;
        }
        Ok(cur)
    }

    /// `v -> v^-1` for a Laurent variable.
    pub fn invert_var(&self, v: Var) -> Polynomial {
        assert!(v.is_laurent());
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.exp(v);
                    (m.mul(&Monomial::var(v, -2 * e)), c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e != 0 {
                out.add_term(m.div(&Monomial::var(v, 1)), c * BigInt::from(e));
            }
        }
        out
    }

    /// Complex evaluation.
    pub fn eval(&self, assignment: &impl Fn(Var) -> Option<Complex64>) -> Result<Complex64, RingError> {
        let mut cache: HashMap<Var, Complex64> = HashMap::new();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(big_to_f64(c), 0.0);
            for &(v, e) in m.exponents() {
                let x = match cache.get(&v) {
                    Some(x) => *x,
                    None => {
                        let x = assignment(v).ok_or(RingError::MissingVariable(v.to_string()))?;
                        if v.is_laurent() && x == Complex64::new(0.0, 0.0) {
                            return Err(RingError::ZeroAtLaurentVariable(v.to_string()));
                        }
                        cache.insert(v, x);
                        x
                    }
                };
                term *= x.powi(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Evaluation in [`BigComplex`] arithmetic.
    ///
    /// Expanded polynomials of high degree lose most of their digits to
    /// cancellation under [`Self::eval`]; here the assigned floats are taken at
    /// face value and the result is accurate to the last bit or so.
    pub fn eval_precise(&self, assignment: &HashMap<Var, BigComplex>) -> Result<BigComplex, RingError> {
        let mut powers: HashMap<(Var, i32), BigComplex> = HashMap::new();
        let mut acc = BigComplex::zero();
        for (m, c) in &self.terms {
            let mut term = BigComplex::from_int(c);
            for &(v, e) in m.exponents() {
                if !powers.contains_key(&(v, e)) {
                    let x = assignment.get(&v).ok_or(RingError::MissingVariable(v.to_string()))?;
                    let base = if e < 0 {
                        let z = x.to_complex();
                        if z == Complex64::new(0.0, 0.0) {
                            return Err(RingError::ZeroAtLaurentVariable(v.to_string()));
                        }
                        BigComplex::from_complex(z.inv())
                    } else {
                        x.clone()
                    };
                    powers.insert((v, e), base.pow(e.unsigned_abs()));
                }
                term = term * powers[&(v, e)].clone();
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// [`Self::eval_precise`] at complex floats, rounded back.
    pub fn eval_precise_f64(&self, assignment: &HashMap<Var, Complex64>) -> Result<Complex64, RingError> {
        let big = assignment
            .iter()
            .map(|(&v, &z)| (v, BigComplex::from_complex(z)))
            .collect();
        Ok(self.eval_precise(&big)?.to_complex())
    }

    /// Evaluation against a map.
    pub fn eval_map(&self, assignment: &HashMap<Var, Complex64>) -> Result<Complex64, RingError> {
        self.eval(&|v| assignment.get(&v).copied())
    }

    /// Coefficients of powers of `v`, keyed by exponent.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, Polynomial> {
        let mut out: BTreeMap<i32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            out.entry(e)
                .or_default()
                .add_term(m.div(&Monomial::var(v, e)), c.clone());
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        use fmt::Write;
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                write!(s, "{a}").unwrap();
            } else {
                if !a.is_one() {
                    write!(s, "{a}").unwrap();
                    s.push(if latex { ' ' } else { '*' });
                }
                m.fmt_with(&mut s, latex).unwrap();
            }
        }
        s
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

fn ordinary_div(p: &Polynomial, d: &Polynomial) -> Result<Polynomial, RingError> {
    let (lm, lc) = d.leading_term().expect("nonzero divisor");
    let (lm, lc) = (lm.clone(), lc.clone());
    let mut r = p.clone();
    let mut q = Polynomial::zero();
    while let Some((m, c)) = r.leading_term() {
        let qm = m.div(&lm);
        if !qm.is_polynomial() {
            return Err(RingError::NotDivisible);
        }
        let (qc, rem) = c.div_rem(&lc);
        if !rem.is_zero() {
            return Err(RingError::NotDivisible);
        }
        for (dm, dc) in d.terms() {
            r.add_term(dm.mul(&qm), -(dc * &qc));
        }
        q.add_term(qm, qc);
    }
    Ok(q)
}

fn ordinary_sqrt(p: &Polynomial) -> Result<Polynomial, RingError> {
    let (lm, lc) = p.leading_term().expect("nonzero");
    if lc.is_negative() || lm.exponents().iter().any(|&(_, e)| e % 2 != 0) {
        return Err(RingError::NotASquare);
    }
    let rc = lc.sqrt();
    if &(&rc * &rc) != lc {
        return Err(RingError::NotASquare);
    }
    let rm = Monomial::from_pairs(lm.exponents().iter().map(|&(v, e)| (v, e / 2)));
    let min_deg = p.terms.keys().map(Monomial::total_degree).min().unwrap_or(0);
    let two_lc = BigInt::from(2) * &rc;
    let mut q = Polynomial::term(rc, rm.clone());
    let mut r = p - &(&q * &q);
    while let Some((m, c)) = r.leading_term() {
        let tm = m.div(&rm);
        if !tm.is_polynomial() || 2 * tm.total_degree() < min_deg {
            return Err(RingError::NotASquare);
        }
        let (tc, rem) = c.div_rem(&two_lc);
        if !rem.is_zero() {
            return Err(RingError::NotASquare);
        }
        let t = Polynomial::term(tc, tm);
        // r -= 2 q t + t^2
        let mut delta = &q * &t;
        delta = &delta + &delta;
        delta += &t * &t;
        r -= delta;
        q += t;
    }
    Ok(q)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut a, b| {
            a += b;
            a
        })
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Var::Aux(0))
    }
    fn y() -> Polynomial {
        Polynomial::var(Var::Aux(1))
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(n)
    }

    #[test]
    fn exact_div_examples() {
        let p = &x() * &x() - c(1);
        assert_eq!(p.exact_div(&(x() - c(1))).unwrap(), x() + c(1));
        assert_eq!(x().exact_div(&y()), Err(RingError::NotDivisible));
        assert_eq!(x().exact_div(&Polynomial::zero()), Err(RingError::DivisionByZero));
        assert_eq!((c(6) * x()).exact_div(&c(4)), Err(RingError::NotDivisible));
    }

    #[test]
    fn laurent_exact_div() {
        let l = Polynomial::var(Var::Lambda);
        let li = Polynomial::var_pow(Var::Lambda, -1);
        // (lambda + 2 + lambda^-1) / (lambda + 1) = 1 + lambda^-1
        let num = &l + &c(2) + &li;
        assert_eq!(num.exact_div(&(&l + &c(1))).unwrap(), c(1) + li.clone());
        // 1 / (1 + lambda) is not a Laurent polynomial
        assert_eq!(c(1).exact_div(&(l + c(1))), Err(RingError::NotDivisible));
        assert_eq!(c(3).exact_div(&li).unwrap(), c(3) * Polynomial::var(Var::Lambda));
    }

    #[test]
    fn sqrt_examples() {
        let q = x() + c(1);
        assert_eq!((&q * &q).sqrt().unwrap(), q);
        assert_eq!((&x() * &x() + c(1)).sqrt(), Err(RingError::NotASquare));
        let neg = -(x() - y());
        let sq = &neg * &neg;
        let r = sq.sqrt().unwrap();
        assert!(r.leading_coefficient().unwrap().is_positive());
        assert_eq!(&r * &r, sq);
        let k = Polynomial::var(Var::Kappa);
        let ki = Polynomial::var_pow(Var::Kappa, -1);
        let lp = &k - &ki + x();
        assert_eq!((&lp * &lp).sqrt().unwrap(), lp);
        assert_eq!(Polynomial::var(Var::Kappa).sqrt(), Err(RingError::NotASquare));
    }

    #[test]
    fn eval_examples() {
        let p = &x() * &x() - c(1);
        let v = p.eval(&|v| (v == Var::Aux(0)).then_some(Complex64::new(2.0, 0.0))).unwrap();
        assert_eq!(v, Complex64::new(3.0, 0.0));
        let k = Polynomial::var(Var::Kappa) + Polynomial::var_pow(Var::Kappa, -1);
        let v = k.eval(&|_| Some(Complex64::i())).unwrap();
        assert!(v.norm() < 1e-15);
        assert_eq!(p.eval(&|_| None), Err(RingError::MissingVariable("x".into())));
        assert_eq!(
            k.eval(&|_| Some(Complex64::new(0.0, 0.0))),
            Err(RingError::ZeroAtLaurentVariable("kappa".into()))
        );
    }

    #[test]
    fn substitution() {
        let t = Polynomial::var(Var::T);
        let k = Polynomial::var(Var::Kappa);
        let ki = Polynomial::var_pow(Var::Kappa, -1);
        let p = &t * &t - c(2);
        let s = p.substitute(Var::T, &(&k + &ki)).unwrap();
        assert_eq!(s, &k * &k + &ki * &ki);
        assert_eq!(s.invert_var(Var::Kappa), s);
        assert_eq!(ki.substitute(Var::Kappa, &(-k.clone())).unwrap(), -ki.clone());
        assert!(ki.substitute(Var::Kappa, &(&k + &c(1))).is_err());
        let swapped = (x() - &y() * &y())
            .substitute_all(&[(Var::Aux(0), y()), (Var::Aux(1), x())])
            .unwrap();
        assert_eq!(swapped, y() - &x() * &x());
    }

    #[test]
    fn display() {
        let p = c(3) * &x() * &x() - &x() * &y() + c(-2);
        assert_eq!(p.to_string(), "3*x^2 - x*y - 2");
        let l = Polynomial::var_pow(Var::Lambda, -1) * c(-1) + Polynomial::var(Var::Ri(1));
        assert_eq!(l.to_latex(), "r_{1} - \\lambda^{-1}");
    }
}
