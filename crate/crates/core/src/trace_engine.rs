//! Boundary trace polynomials `z`, `ż`, `z̀` of a rational tangle.
//!
//! With the generating pair `(x, y)`, `t = tr x = tr y` and `r = tr(xy)`, the
//! values `e_j` and `ψ_j(n)` are computed level by level; every quotient by
//! `2 + e_j` is taken as an exact division.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::ring::{cheb_omega, cheb_theta, Polynomial, RingError, Var};
use crate::tangle::RationalTangle;

/// `z = tr(x^nw x^ne) - 2`, `zdot = tr(x^nw x^sw) - 2`, `zgrave = tr(x^nw x^se) - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceTriple {
    pub z: Polynomial,
    pub zdot: Polynomial,
    pub zgrave: Polynomial,
}

impl TraceTriple {
    /// Renames `r` to `r_i`.
    pub fn indexed(&self, i: usize) -> TraceTriple {
        let ri = Polynomial::var(Var::Ri(i as u16));
        let f = |p: &Polynomial| p.substitute(Var::R, &ri).expect("polynomial substitution");
        TraceTriple {
            z: f(&self.z),
            zdot: f(&self.zdot),
            zgrave: f(&self.zgrave),
        }
    }
}

fn t2() -> Polynomial {
    let t = Polynomial::var(Var::T);
    &t * &t
}

fn aux() -> Polynomial {
    Polynomial::var(Var::Aux(0))
}

/// `(2 - θ_n(-E)) / (2 + E)` as a polynomial in the scratch variable `E`.
fn seed_quotient(n: i64) -> Result<Polynomial, RingError> {
    let e = aux();
    let num = Polynomial::constant(2) - cheb_theta(n, &(-&e));
    num.exact_div(&(e + Polynomial::constant(2)))
}

/// `(1 - ω_{n+1}(-E) + ω_n(-E)) / (2 + E)` in the scratch variable `E`.
fn step_quotient(n: i64) -> Result<Polynomial, RingError> {
    let e = aux();
    let me = -&e;
    let num = Polynomial::one() - cheb_omega(n + 1, &me) + cheb_omega(n, &me);
    num.exact_div(&(e + Polynomial::constant(2)))
}

/// `t^2 - r` for odd `s`, `r` for even `s`.
pub fn seed_e0(s: usize) -> Polynomial {
    assert!(s >= 1, "continued fraction must be nonempty");
    let r = Polynomial::var(Var::R);
    if s % 2 == 1 {
        t2() - r
    } else {
        r
    }
}

/// Level `j` of the recursion: enough data to evaluate `ψ_j(n)` for any `n`.
#[derive(Clone, Debug)]
pub struct PsiState {
    pub j: usize,
    pub e: Polynomial,
    /// `(e_{j-1}, ψ_{j-1}(k_j - 1))` for `j >= 1`.
    prev: Option<(Polynomial, Polynomial)>,
    memo: HashMap<i64, Polynomial>,
}

impl PsiState {
    pub fn seed(e0: Polynomial) -> Self {
        PsiState {
            j: 0,
            e: e0,
            prev: None,
            memo: HashMap::new(),
        }
    }

    /// Level `j + 1` for the next partial quotient `k`.
    pub fn next(&mut self, k: i64) -> Result<PsiState, RingError> {
        let e_next = self.psi(k)?;
        let b = self.psi(k - 1)?;
        Ok(PsiState {
            j: self.j + 1,
            e: e_next,
            prev: Some((self.e.clone(), b)),
            memo: HashMap::new(),
        })
    }

    pub fn psi(&mut self, n: i64) -> Result<Polynomial, RingError> {
        if let Some(v) = self.memo.get(&n) {
            return Ok(v.clone());
        }
        let me = -&self.e;
        let v = match &self.prev {
            None => {
                let q = seed_quotient(n)?.substitute(Var::Aux(0), &self.e)?;
                cheb_theta(n, &me) + &t2() * &q
            }
            Some((a, b)) => {
                let q = step_quotient(n)?.substitute(Var::Aux(0), &self.e)?;
                a * &cheb_omega(n + 1, &me) - b * &cheb_omega(n, &me)
                    + (&t2() * &q).scale(&2.into())
            }
        };
        self.memo.insert(n, v.clone());
        Ok(v)
    }
}

/// `psi(state, n)` as a free function.
pub fn psi(state: &mut PsiState, n: i64) -> Result<Polynomial, RingError> {
    state.psi(n)
}

/// Trace polynomials from a partial-quotient sequence.
pub fn trace_triple_cf(k: &[i64]) -> Result<TraceTriple, RingError> {
    let s = k.len();
    let mut state = PsiState::seed(seed_e0(s));
    for &kj in &k[..s - 1] {
        state = state.next(kj)?;
    }
    let two = Polynomial::constant(2);
    let ks = k[s - 1];
    Ok(TraceTriple {
        z: state.psi(ks)? - &two,
        zdot: &state.e - &two,
        zgrave: state.psi(ks - 1)? - &two,
    })
}

pub fn trace_triple(tangle: &RationalTangle) -> Result<TraceTriple, RingError> {
    trace_triple_cf(tangle.cf.terms())
}
