//! Polynomial systems cutting out the three parts `X₁`, `X₂`, `X'` of the
//! trace-`t` character variety of a Montesinos knot, and the finiteness test
//! for `X'`.
//!
//! Tangles and all indexed variables (`r_i`, `ξ_i`, `t̄_{ij}`) are numbered
//! from 1; tangle `i` is `knot.tangle(i - 1)` and indices are cyclic.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::reducible_engine::{theta_pair, ThetaPair};
use crate::ring::{Polynomial, RingError, UniPoly, Var, VarTable};
use crate::tangle::{MontesinosKnot, Parity, ParityClass};
use crate::trace_engine::{trace_triple, TraceTriple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarietyError {
    #[error("invalid sign vector {0}: {1}")]
    InvalidSignVector(String, String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `ε ∈ {0, +, -}^m`, stored as `-1, 0, 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self, VarietyError> {
        let sv = SignVector(signs);
        if let Some(s) = sv.0.iter().find(|s| s.abs() > 1) {
            return Err(VarietyError::InvalidSignVector(sv.to_string(), format!("entry {s} is not 0 or ±1")));
        }
        Ok(sv)
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ε_i` for cyclic 1-based `i`.
    pub fn at(&self, i: usize) -> i8 {
        self.0[(i - 1) % self.0.len()]
    }

    pub fn has_both_signs(&self) -> bool {
        self.0.contains(&1) && self.0.contains(&-1)
    }

    /// The `ξ_i` fixed to 1: the first index with `ε_i ≠ 0`.
    pub fn normalized_index(&self) -> Option<usize> {
        self.0.iter().position(|&s| s != 0).map(|i| i + 1)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for SignVector {
    type Err = VarietyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs = s
            .split(',')
            .map(|p| match p.trim() {
                "+" | "+1" | "1" => Ok(1),
                "-" | "-1" => Ok(-1),
                "0" => Ok(0),
                other => Err(VarietyError::InvalidSignVector(s.to_string(), format!("unknown sign `{other}`"))),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        SignVector::new(signs)
    }
}

impl From<SignVector> for String {
    fn from(s: SignVector) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for SignVector {
    type Error = VarietyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Component {
    X1,
    X2,
    #[serde(rename = "xprime")]
    XPrime { epsilon: SignVector },
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::X1 => write!(f, "X1"),
            Component::X2 => write!(f, "X2"),
            Component::XPrime { epsilon } => write!(f, "X'({epsilon})"),
        }
    }
}

/// A polynomial with a short description of where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub poly: Polynomial,
    pub note: String,
}

impl Relation {
    fn new(poly: Polynomial, note: impl Into<String>) -> Self {
        Relation { poly, note: note.into() }
    }
}

/// Holds when at least one of `alternatives` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjunction {
    pub alternatives: Vec<Polynomial>,
    pub note: String,
    /// The condition is known to hold on every solution.
    pub automatic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySystem {
    pub knot: String,
    pub component: Component,
    pub variables: VarTable,
    pub equations: Vec<Relation>,
    pub inequations: Vec<Relation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub irreducibility: Option<Disjunction>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl VarietySystem {
    /// Every variable used by an equation or inequation, in canonical order.
    pub fn used_variables(&self) -> Vec<Var> {
        let mut all = std::collections::BTreeSet::new();
        for r in self.equations.iter().chain(&self.inequations) {
            all.extend(r.poly.vars());
        }
        all.into_iter().collect()
    }
}

fn c(n: i64) -> Polynomial {
    Polynomial::constant(n)
}

fn v(var: Var) -> Polynomial {
    Polynomial::var(var)
}

fn kappa_pow(e: i32) -> Polynomial {
    Polynomial::var_pow(Var::Kappa, e)
}

fn r_var(i: usize) -> Var {
    Var::Ri(i as u16)
}

fn xi_var(i: usize) -> Var {
    Var::Xi(i as u16)
}

/// `t̄_{ab}` with `t̄_{aa} = (t² - 4)/2` returned doubled: `2 t̄_{ab}`.
fn tbar2_doubled(a: usize, b: usize) -> Polynomial {
    if a == b {
        let t = v(Var::T);
        &(&t * &t) - &c(4)
    } else {
        let (lo, hi) = (a.min(b), a.max(b));
        v(Var::TBar2(lo as u16, hi as u16)).scale(&2.into())
    }
}

fn tbar3(i: [usize; 3]) -> Polynomial {
    v(Var::TBar3(i[0] as u16, i[1] as u16, i[2] as u16))
}

fn det3(m: &[[Polynomial; 3]; 3]) -> Polynomial {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
    &(&(&m[0][0] * &minor(1, 2, 1, 2)) - &(&m[0][1] * &minor(1, 2, 0, 2))) + &(&m[0][2] * &minor(1, 2, 0, 1))
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::new(), &mut out);
    out
}

/// Trace polynomials of every tangle, renamed to `r_i`.
fn indexed_traces(knot: &MontesinosKnot) -> Result<Vec<TraceTriple>, RingError> {
    (1..=knot.m())
        .map(|i| Ok(trace_triple(knot.tangle(i - 1))?.indexed(i)))
        .collect()
}

/// Number of typeI-style relations (one per unordered pair of triples) and
/// typeII-style relations emitted by [`build_x1`] for `m` tangles.
pub fn x1_relation_counts(m: usize) -> (usize, usize) {
    let n = subsets(m, 3).len();
    (n * (n + 1) / 2, m * subsets(m, 4).len())
}

/// `X₁`: representations with `x_i^nw x_i^ne = e` for all `i`.
///
/// Variables `t`, `r_i`, and the trace coordinates `t̄_{ij} = tr(x̄_i x̄_j)`,
/// `t̄_{ijk} = tr(x̄_i x̄_j x̄_k)` of `x̄_i = x_i - (t/2) e`. Diagonal entries
/// `t̄_{ii} = (t² - 4)/2` are substituted, and relations are scaled to integer
/// coefficients.
pub fn build_x1(knot: &MontesinosKnot) -> Result<VarietySystem, VarietyError> {
    let m = knot.m();
    let traces = indexed_traces(knot)?;
    let t = v(Var::T);
    let t2 = &t * &t;
    let mut vars = vec![Var::T];
    vars.extend((1..=m).map(r_var));
    vars.extend(subsets(m, 2).iter().map(|s| Var::TBar2(s[0] as u16, s[1] as u16)));
    let triples = subsets(m, 3);
    vars.extend(triples.iter().map(|s| Var::TBar3(s[0] as u16, s[1] as u16, s[2] as u16)));

    let mut equations = Vec::new();
    for (i, tt) in traces.iter().enumerate() {
        equations.push(Relation::new(tt.z.clone(), format!("tangle {}: x^nw x^ne = e, so z_{} = 0", i + 1, i + 1)));
    }
    for (i, tt) in traces.iter().enumerate() {
        let (a, b) = (i + 1, (i + 1) % m + 1);
        // ½t² - t̄_{a,b} = ż_a + 2, doubled
        let p = &(&(&t2 - &tbar2_doubled(a, b)) - &tt.zdot.scale(&2.into())) - &c(4);
        equations.push(Relation::new(
            p,
            format!("tangle {a}: tr(x_{a}^-1 x_{b}) = zdot_{a} + 2 in trace coordinates"),
        ));
    }
    for (n, ia) in triples.iter().enumerate() {
        for ja in &triples[n..] {
            let mat: [[Polynomial; 3]; 3] =
                std::array::from_fn(|a| std::array::from_fn(|b| tbar2_doubled(ia[a], ja[b])));
            let prod = &tbar3([ia[0], ia[1], ia[2]]) * &tbar3([ja[0], ja[1], ja[2]]);
            // 2 t̄_I t̄_J + det(t̄) = 0, times 8
            let p = &prod.scale(&16.into()) + &det3(&mat);
            equations.push(Relation::new(
                p,
                format!("triple product relation for {ia:?} and {ja:?}"),
            ));
        }
    }
    for i in 1..=m {
        for j in subsets(m, 4) {
            let mut p = Polynomial::zero();
            for k in 0..4 {
                let rest: Vec<usize> = (0..4).filter(|&l| l != k).map(|l| j[l]).collect();
                let term = &tbar2_doubled(i, j[k]) * &tbar3([rest[0], rest[1], rest[2]]);
                if k % 2 == 0 {
                    p += &term;
                } else {
                    p -= &term;
                }
            }
            equations.push(Relation::new(p, format!("alternating relation for {i} and {j:?}")));
        }
    }

    let mut alternatives: Vec<Polynomial> = (1..=m)
        .map(|i| {
            let r = v(r_var(i));
            &(&r - &c(2)) * &(&(&r + &c(2)) - &t2)
        })
        .collect();
    for i in 1..=m {
        let j = i % m + 1;
        for k in 1..=m {
            if k == i || k == j {
                continue;
            }
            let mut s = [i, j, k];
            s.sort_unstable();
            let p = tbar3(s);
            if !alternatives.contains(&p) {
                alternatives.push(p);
            }
        }
    }
    let automatic = knot.parity_class() == ParityClass::OddKnot;
    Ok(VarietySystem {
        knot: knot.to_string(),
        component: Component::X1,
        variables: VarTable::new(vars)?,
        equations,
        inequations: Vec::new(),
        irreducibility: Some(Disjunction {
            alternatives,
            note: "irreducible iff some tangle restriction is irreducible ((r_i - 2)(r_i + 2 - t^2) != 0) \
                   or some tbar_{i,i+1,k} != 0"
                .into(),
            automatic,
        }),
        notes: vec!["tbar_{ii} = (t^2 - 4)/2 is substituted; relations are scaled to integer coefficients".into()],
    })
}

/// `H` as a polynomial in `λ`, `t`, `r_i`, before and after division by `λ + 1`.
pub struct X2Closing {
    pub numerator: Polynomial,
    pub h: Polynomial,
}

/// `∏((1 + λ⁻¹) ż_i + (1 + λ) z̀_i + 2(τ + 2 - t²)) - (1 - λ)^m (τ + 2 - t²)^m`
/// and its exact quotient by `λ + 1`.
pub fn x2_closing(traces: &[TraceTriple]) -> Result<X2Closing, RingError> {
    let m = traces.len() as u32;
    let lam = v(Var::Lambda);
    let lam_inv = inverse_var(Var::Lambda);
    let t = v(Var::T);
    let tau = &lam + &lam_inv;
    let shift = &(&tau + &c(2)) - &(&t * &t);
    let a = &c(1) + &lam_inv;
    let b = &c(1) + &lam;
    let product: Polynomial = traces
        .iter()
        .map(|tt| &(&(&a * &tt.zdot) + &(&b * &tt.zgrave)) + &shift.scale(&2.into()))
        .product();
    let numerator = &product - &(&(&c(1) - &lam).pow(m) * &shift.pow(m));
    let h = numerator.exact_div(&b)?;
    Ok(X2Closing { numerator, h })
}

fn inverse_var(var: Var) -> Polynomial {
    Polynomial::var_pow(var, -1)
}

/// `(-1)^m (m t² + Σ (ż_i - z̀_i)) (2t²)^{m-1}`.
pub fn x2_constant_term(traces: &[TraceTriple]) -> Polynomial {
    let m = traces.len();
    let t = v(Var::T);
    let t2 = &t * &t;
    let sum: Polynomial = traces.iter().map(|tt| &tt.zdot - &tt.zgrave).sum();
    let inner = &t2.scale(&(m as i64).into()) + &sum;
    let p = &inner * &t2.scale(&2.into()).pow(m as u32 - 1);
    if m % 2 == 0 {
        p
    } else {
        -p
    }
}

/// `X₂`: `τ = tr(x_i^nw x_i^ne) = λ + λ⁻¹ ∉ {2, t² - 2}`.
pub fn build_x2(knot: &MontesinosKnot) -> Result<VarietySystem, VarietyError> {
    let m = knot.m();
    let traces = indexed_traces(knot)?;
    let lam = v(Var::Lambda);
    let tau = &lam + &inverse_var(Var::Lambda);
    let t = v(Var::T);
    let mut vars = vec![Var::T, Var::Lambda];
    vars.extend((1..=m).map(r_var));
    let mut equations: Vec<Relation> = traces
        .iter()
        .enumerate()
        .map(|(i, tt)| {
            Relation::new(
                &(&tt.z + &c(2)) - &tau,
                format!("tangle {}: tr(x^nw x^ne) = lambda + 1/lambda", i + 1),
            )
        })
        .collect();
    let closing = x2_closing(&traces)?;
    equations.push(Relation::new(
        closing.h,
        "the ratios mu_i/mu_{i+1} multiply to 1 around the cycle, divided by lambda + 1",
    ));
    let inequations = vec![
        Relation::new(&tau - &c(2), "tau != 2"),
        Relation::new(&(&tau - &(&t * &t)) + &c(2), "tau != t^2 - 2"),
    ];
    Ok(VarietySystem {
        knot: knot.to_string(),
        component: Component::X2,
        variables: VarTable::new(vars)?,
        equations,
        inequations,
        irreducibility: None,
        notes: vec!["at lambda = -1 the last equation is the additive closing condition for g = -p".into()],
    })
}

/// All `ε ∈ {0, +, -}^m` containing both signs; for even knots only those with
/// `ε_m ε_1 = -`.
pub fn enumerate_sign_vectors(knot: &MontesinosKnot) -> Vec<SignVector> {
    let even = knot.parity_class() == ParityClass::EvenKnot;
    all_sign_vectors(knot.m())
        .into_iter()
        .filter(|s| !even || s.at(s.len()) * s.at(1) == -1)
        .collect()
}

/// `Ξ` for `m` tangles, without any parity filter.
pub fn all_sign_vectors(m: usize) -> Vec<SignVector> {
    let mut out = Vec::new();
    let total = 3usize.pow(m as u32);
    for mut code in 0..total {
        let mut signs = Vec::with_capacity(m);
        for _ in 0..m {
            signs.push([0i8, 1, -1][code % 3]);
            code /= 3;
        }
        let s = SignVector(signs);
        if s.has_both_signs() {
            out.push(s);
        }
    }
    out.sort();
    out
}

fn check_sign_vector(knot: &MontesinosKnot, eps: &SignVector) -> Result<(), VarietyError> {
    let bad = |why: &str| Err(VarietyError::InvalidSignVector(eps.to_string(), why.to_string()));
    if eps.len() != knot.m() {
        return bad(&format!("expected {} entries", knot.m()));
    }
    if !eps.has_both_signs() {
        return bad("must contain both + and -");
    }
    if knot.parity_class() == ParityClass::EvenKnot && eps.at(eps.len()) * eps.at(1) != -1 {
        return bad("even knots need opposite signs on the last and first tangle");
    }
    Ok(())
}

/// `ϑ(κ^e)` for `e = ±1`.
fn at_kappa_power(p: &Polynomial, e: i8) -> Polynomial {
    if e < 0 {
        p.invert_var(Var::Kappa)
    } else {
        p.clone()
    }
}

/// `ϑ^ne(κ^e)` and `ϑ^ne(κ^e) - (1 + κ^{-2e}) ϑ^sw(κ^e)`.
fn theta_pieces(tp: &ThetaPair, e: i8) -> (Polynomial, Polynomial) {
    let ne = at_kappa_power(&tp.theta_ne, e);
    let sw = at_kappa_power(&tp.theta_sw, e);
    let gap = &ne - &(&(&c(1) + &kappa_pow(-2 * e as i32)) * &sw);
    (ne, gap)
}

/// `t = κ + κ⁻¹` in trace polynomials.
fn in_kappa(p: &Polynomial) -> Result<Polynomial, RingError> {
    p.substitute(Var::T, &(&kappa_pow(1) + &kappa_pow(-1)))
}

/// `X'(K; ε)`: `τ = t² - 2 ≠ ±2`, with `g = d(κ²)`.
pub fn build_xprime(knot: &MontesinosKnot, eps: &SignVector) -> Result<VarietySystem, VarietyError> {
    check_sign_vector(knot, eps)?;
    let m = knot.m();
    let norm = eps.normalized_index().expect("sign vector has a nonzero entry");
    let xi = |i: usize| {
        let i = (i - 1) % m + 1;
        if i == norm {
            c(1)
        } else {
            v(xi_var(i))
        }
    };
    let t = &kappa_pow(1) + &kappa_pow(-1);
    let t2 = &t * &t;
    let mut vars = vec![Var::Kappa];
    let mut equations = Vec::new();
    let mut inequations = Vec::new();
    // numerator and denominator factors of ∏ f_i^{ε_i}
    let (mut num, mut den) = (Polynomial::one(), Polynomial::one());
    for i in 1..=m {
        let (e0, e1) = (eps.at(i), eps.at(i + 1));
        let j = i % m + 1;
        let tangle = knot.tangle(i - 1);
        if e0 * e1 == -1 {
            vars.push(r_var(i));
            let tt = trace_triple(tangle)?.indexed(i);
            let (z, zdot, zgrave) = (in_kappa(&tt.z)?, in_kappa(&tt.zdot)?, in_kappa(&tt.zgrave)?);
            let prod = &xi(i) * &xi(j);
            equations.push(Relation::new(&z - &(&t2 - &c(4)), format!("tangle {i}: z_{i} = t^2 - 4")));
            equations.push(Relation::new(&zdot + &prod, format!("tangle {i}: zdot_{i} = -xi_{i} xi_{j}")));
            equations.push(Relation::new(
                &zgrave - &(&kappa_pow(2 * e0 as i32) * &prod),
                format!("tangle {i}: zgrave_{i} = kappa^(2 eps_{i}) xi_{i} xi_{j}"),
            ));
            let r = v(r_var(i));
            inequations.push(Relation::new(&r - &c(2), format!("tangle {i} irreducible: r_{i} != 2")));
            inequations.push(Relation::new(
                &(&r - &t2) + &c(2),
                format!("tangle {i} irreducible: r_{i} != t^2 - 2"),
            ));
            inequations.push(Relation::new(zdot.clone(), format!("tangle {i}: zdot_{i} != 0")));
            // f_i = -1/ż_i
            if e0 > 0 {
                num = &num * &c(-1);
                den = &den * &zdot;
            } else {
                num = &num * &zdot;
                den = &den * &c(-1);
            }
            continue;
        }
        if tangle.parity != Parity::Odd {
            return Err(VarietyError::InvalidSignVector(
                eps.to_string(),
                format!("even tangle {i} must have eps_{i} eps_{j} = -"),
            ));
        }
        let tp = theta_pair(tangle);
        match (e0, e1) {
            (0, 0) => {}
            (0, e) => {
                let (ne, _) = theta_pieces(&tp, e);
                equations.push(Relation::new(ne, format!("tangle {i}: x^ne = x^nw, theta_ne(kappa^{e}) = 0")));
            }
            (e, 0) => {
                let (_, gap) = theta_pieces(&tp, e);
                equations.push(Relation::new(
                    gap,
                    format!("tangle {i}: x^se = x^sw, theta_ne = (1 + kappa^(-2 eps)) theta_sw at kappa^{e}"),
                ));
            }
            (e, _) => {
                let (ne, gap) = theta_pieces(&tp, e);
                equations.push(Relation::new(
                    &(&xi(j) * &ne) - &(&xi(i) * &gap),
                    format!("tangle {i}: xi_{j}/xi_{i} = 1 - (1 + kappa^(-2 eps)) theta_sw/theta_ne"),
                ));
                inequations.push(Relation::new(ne.clone(), format!("tangle {i}: theta_ne(kappa^{e}) != 0")));
                inequations.push(Relation::new(
                    gap.clone(),
                    format!("tangle {i}: theta_ne != (1 + kappa^(-2 eps)) theta_sw at kappa^{e}"),
                ));
                // f_i = gap / ne
                if e > 0 {
                    num = &num * &gap;
                    den = &den * &ne;
                } else {
                    num = &num * &ne;
                    den = &den * &gap;
                }
            }
        }
    }
    if eps.signs().iter().all(|&s| s != 0) {
        equations.push(Relation::new(
            &num - &den,
            "product of f_i^eps_i around the cycle is 1, denominators cleared",
        ));
    }
    for i in 1..=m {
        if eps.at(i) != 0 && i != norm {
            vars.push(xi_var(i));
            inequations.push(Relation::new(v(xi_var(i)), format!("xi_{i} != 0")));
        }
    }
    inequations.push(Relation::new(&kappa_pow(4) - &c(1), "kappa^4 != 1"));
    Ok(VarietySystem {
        knot: knot.to_string(),
        component: Component::XPrime { epsilon: eps.clone() },
        variables: VarTable::new(vars)?,
        equations,
        inequations,
        irreducibility: None,
        notes: vec![format!("xi_{norm} is normalized to 1")],
    })
}

/// [`build_xprime`] for every sign vector of [`enumerate_sign_vectors`], in parallel.
pub fn build_xprime_all(knot: &MontesinosKnot) -> Result<Vec<VarietySystem>, VarietyError> {
    enumerate_sign_vectors(knot)
        .par_iter()
        .map(|eps| build_xprime(knot, eps))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityWitness {
    pub i: usize,
    pub j: usize,
    pub iota: i8,
    pub epsilon: i8,
    /// Common factor in `κ`, with `κ`, `κ² ± 1` removed.
    pub common_factor: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub knot: String,
    pub generic: bool,
    pub witnesses: Vec<GenericityWitness>,
}

fn strip_degenerate(p: &Polynomial) -> Result<UniPoly, RingError> {
    let u = UniPoly::from_polynomial(p, Var::Kappa)?;
    Ok(u.strip_factor(&UniPoly::x_pow(1))
        .strip_factor(&UniPoly::from_i64(&[-1, 0, 1]))
        .strip_factor(&UniPoly::from_i64(&[1, 0, 1])))
}

/// Whether some `ϑ_i^ne(κ^ι)` and `ϑ_j^ne(κ^ε) - (1 + κ^{-2ε}) ϑ_j^sw(κ^ε)`
/// share a root with `κ⁴ ≠ 1`. Only odd tangles take part.
pub fn genericity_check(knot: &MontesinosKnot) -> Result<GenericityReport, VarietyError> {
    let odd: Vec<(usize, ThetaPair)> = (1..=knot.m())
        .filter(|&i| knot.tangle(i - 1).parity == Parity::Odd)
        .map(|i| (i, theta_pair(knot.tangle(i - 1))))
        .collect();
    let mut witnesses = Vec::new();
    for (i, tpi) in &odd {
        for (j, tpj) in &odd {
            for iota in [1i8, -1] {
                for epsilon in [1i8, -1] {
                    let a = strip_degenerate(&theta_pieces(tpi, iota).0)?;
                    let b = strip_degenerate(&theta_pieces(tpj, epsilon).1)?;
                    let g = a.gcd(&b);
                    if !g.is_constant() {
                        witnesses.push(GenericityWitness {
                            i: *i,
                            j: *j,
                            iota,
                            epsilon,
                            common_factor: g.to_polynomial(Var::Kappa),
                        });
                    }
                }
            }
        }
    }
    Ok(GenericityReport {
        knot: knot.to_string(),
        generic: witnesses.is_empty(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{knot_classify, Fraction};

    fn knot(ps: &[i64]) -> MontesinosKnot {
        let fr: Vec<Fraction> = ps.iter().map(|&p| Fraction::new(p, 1).unwrap()).collect();
        knot_classify(&fr).unwrap()
    }

    #[test]
    fn sign_vector_parsing() {
        let s: SignVector = "+,-,0".parse().unwrap();
        assert_eq!(s.signs(), &[1, -1, 0]);
        assert_eq!(s.to_string(), "+,-,0");
        assert!("+,x".parse::<SignVector>().is_err());
        assert_eq!(s.normalized_index(), Some(1));
    }

    #[test]
    fn xi_counts() {
        assert_eq!(all_sign_vectors(2).len(), 2);
        assert_eq!(all_sign_vectors(3).len(), 12);
        assert_eq!(all_sign_vectors(4).len(), 50);
    }

    #[test]
    fn x2_shape() {
        let sys = build_x2(&knot(&[3, 3, 3])).unwrap();
        assert_eq!(sys.equations.len(), 4);
        assert_eq!(sys.inequations.len(), 2);
        for var in sys.used_variables() {
            assert!(sys.variables.contains(var), "{var}");
        }
    }

    #[test]
    fn x1_counts() {
        for m in 3..=5 {
            let mut ps = vec![3; m];
            if m % 2 == 0 {
                ps[0] = 2;
            }
            let sys = build_x1(&knot(&ps)).unwrap();
            let (a, b) = x1_relation_counts(m);
            assert_eq!(sys.equations.len(), 2 * m + a + b);
        }
        assert_eq!(x1_relation_counts(3), (1, 0));
        assert_eq!(x1_relation_counts(4), (10, 4));
    }

    #[test]
    fn xprime_rejects_bad_vectors() {
        let k = knot(&[3, 3, 3]);
        assert!(build_xprime(&k, &"+,+,0".parse().unwrap()).is_err());
        assert!(build_xprime(&k, &"+,-".parse().unwrap()).is_err());
        let even = knot(&[-2, 3, 7]);
        assert!(build_xprime(&even, &"+,-,+".parse().unwrap()).is_err());
        assert!(build_xprime(&even, &"+,0,-".parse().unwrap()).is_ok());
    }
}
