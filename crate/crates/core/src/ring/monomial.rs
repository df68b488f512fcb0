use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::Var;

/// Sparse exponent vector, sorted by variable, zero exponents never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[(Var, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    /// Builds from arbitrary `(var, exp)` pairs, summing repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let mut v: SmallVec<[(Var, i32); 4]> = pairs.into_iter().collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, i32); 4]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0
            .binary_search_by(|p| p.0.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }

    fn merge(&self, other: &Self, sign: i32) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match take {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, 1)
    }

    /// Quotient in the Laurent sense; may produce negative exponents.
    pub fn div(&self, other: &Self) -> Self {
        self.merge(other, -1)
    }

    pub fn pow(&self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// True when every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|p| p.1 >= 0)
    }

    /// True when no non-Laurent variable has a negative exponent.
    pub fn is_admissible(&self) -> bool {
        self.0.iter().all(|p| p.1 >= 0 || p.0.is_laurent())
    }

    /// Exponent-wise minimum (missing variables count as zero).
    pub fn gcd_shift(&self, other: &Self) -> Self {
        let mut out = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            let (v, e) = match ord {
                Ordering::Less => {
                    i += 1;
                    (a[i - 1].0, a[i - 1].1.min(0))
                }
                Ordering::Greater => {
                    j += 1;
                    (b[j - 1].0, b[j - 1].1.min(0))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a[i - 1].0, a[i - 1].1.min(b[j - 1].1))
                }
            };
            if e != 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write, latex: bool) -> fmt::Result {
        let mut first = true;
        for &(v, e) in self.0.iter() {
            if latex {
                if !first {
                    f.write_char(' ')?;
                }
                f.write_str(&v.latex())?;
                if e != 1 {
                    write!(f, "^{{{e}}}")?;
                }
            } else {
                if !first {
                    f.write_char('*')?;
                }
                write!(f, "{v}")?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Graded lexicographic order: total degree first, then lexicographic with the
/// smallest variable most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), Some(y)) if x.0 == y.0 => {
                    if x.1 != y.1 {
                        return x.1.cmp(&y.1);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) => {
                    // variable present in only one of them
                    return if x.0 < y.0 {
                        x.1.cmp(&0)
                    } else {
                        0.cmp(&y.1)
                    };
                }
                (Some(x), None) => return x.1.cmp(&0),
                (None, Some(y)) => return 0.cmp(&y.1),
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.fmt_with(f, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(Var, i32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    #[test]
    fn grlex() {
        let t2 = m(&[(Var::T, 2)]);
        let tr = m(&[(Var::T, 1), (Var::R, 1)]);
        let r2 = m(&[(Var::R, 2)]);
        let t = m(&[(Var::T, 1)]);
        assert!(t2 > tr && tr > r2 && r2 > t);
        assert!(t > Monomial::one());
        let kinv = m(&[(Var::Kappa, -1)]);
        assert!(kinv < Monomial::one());
    }

    #[test]
    fn mul_div_cancel() {
        let a = m(&[(Var::T, 2), (Var::Kappa, -3)]);
        let b = m(&[(Var::Kappa, 3), (Var::R, 1)]);
        let p = a.mul(&b);
        assert_eq!(p, m(&[(Var::T, 2), (Var::R, 1)]));
        assert_eq!(p.div(&b), a);
        assert!(!a.is_polynomial() && a.is_admissible());
    }
}
