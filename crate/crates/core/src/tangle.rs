//! Rational tangles, continued fractions and Montesinos knots.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("invalid fraction: {0}")]
    InvalidFraction(String),
    #[error("continued fraction takes the reciprocal of zero")]
    DivisionByZeroInContinuedFraction,
    #[error("not a knot: {0}")]
    NotAKnot(String),
}

/// Reduced fraction `p/q` with `q >= 1` and `p != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    p: i64,
    q: i64,
}

impl Fraction {
    pub fn new(p: i64, q: i64) -> Result<Self, TangleError> {
        if q == 0 {
            return Err(TangleError::InvalidFraction(format!("{p}/{q}: zero denominator")));
        }
        if p == 0 {
            return Err(TangleError::InvalidFraction("numerator must be nonzero".into()));
        }
        let g = p.gcd(&q);
        let s = q.signum();
        Ok(Fraction {
            p: s * p / g,
            q: s * q / g,
        })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn parity(&self) -> Parity {
        if self.p.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// How the four ends are joined inside the tangle.
    pub fn connectivity(&self) -> Connectivity {
        match (self.p.is_odd(), self.q.is_odd()) {
            (false, _) => Connectivity::Zero,
            (true, false) => Connectivity::Infinity,
            (true, true) => Connectivity::One,
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// End pairing of a rational tangle: like `[0]` (nw-ne, sw-se), like
/// `[inf]` (nw-sw, ne-se) or like `[1]` (nw-se, ne-sw).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    Zero,
    Infinity,
    One,
}

/// `[[k_1, ..., k_s]] = k_s + 1/[[k_1, ..., k_{s-1}]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContinuedFraction(Vec<i64>);

impl ContinuedFraction {
    pub fn new(k: Vec<i64>) -> Result<Self, TangleError> {
        if k.is_empty() {
            return Err(TangleError::InvalidFraction("empty continued fraction".into()));
        }
        Ok(ContinuedFraction(k))
    }

    pub fn terms(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Exact value of a continued fraction.
pub fn cf_value(cf: &ContinuedFraction) -> Result<Fraction, TangleError> {
    let k = cf.terms();
    let (mut p, mut q) = (k[0], 1i64);
    for &kj in &k[1..] {
        if p == 0 {
            return Err(TangleError::DivisionByZeroInContinuedFraction);
        }
        // kj + q/p
        let (np, nq) = (kj * p + q, p);
        p = np;
        q = nq;
    }
    if q < 0 {
        p = -p;
        q = -q;
    }
    Fraction::new(p, q)
}

/// Candidate ranking: nonzero entries first, then length, then a positive
/// last entry, then a smaller last entry.
fn cf_rank(k: &[i64]) -> (bool, usize, bool, u64) {
    let last = *k.last().expect("nonempty");
    (k.contains(&0), k.len(), last <= 0, last.unsigned_abs())
}

fn expand(p: i64, q: i64, memo: &mut HashMap<(i64, i64), Vec<i64>>) -> Vec<i64> {
    if q == 1 {
        return vec![p];
    }
    if let Some(v) = memo.get(&(p, q)) {
        return v.clone();
    }
    let lo = p.div_euclid(q);
    let mut best: Option<Vec<i64>> = None;
    for k in [lo, lo + 1] {
        // p/q = k + 1/(q/(p - kq)); |p - kq| < q so this terminates
        let rem = p - k * q;
        let (np, nq) = if rem < 0 { (-q, -rem) } else { (q, rem) };
        let mut seq = expand(np, nq, memo);
        seq.push(k);
        if best.as_ref().is_none_or(|b| cf_rank(&seq) < cf_rank(b)) {
            best = Some(seq);
        }
    }
    let best = best.expect("two candidates");
    memo.insert((p, q), best.clone());
    best
}

/// Deterministic expansion whose value is `f`.
pub fn cf_expand(f: Fraction) -> ContinuedFraction {
    ContinuedFraction(expand(f.p, f.q, &mut HashMap::new()))
}

/// Orientation of a twist block in the standard diagram of a rational tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// Twists the two east ends.
    Horizontal,
    /// Twists the two south ends.
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistBlock {
    pub kind: BlockKind,
    pub crossings: i64,
}

/// `[[k_1],...,[k_s]]` is `[k_1] * [1/k_2] + ... + [k_s]` for odd `s`, and
/// `[1/k_1] + [k_2] * ... + [k_s]` for even `s`; the last block is horizontal.
pub fn twist_blocks(cf: &ContinuedFraction) -> Vec<TwistBlock> {
    let s = cf.len();
    cf.terms()
        .iter()
        .enumerate()
        .map(|(i, &k)| TwistBlock {
            kind: if (s - 1 - i) % 2 == 0 {
                BlockKind::Horizontal
            } else {
                BlockKind::Vertical
            },
            crossings: k,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalTangle {
    pub fraction: Fraction,
    pub cf: ContinuedFraction,
    pub parity: Parity,
}

impl RationalTangle {
    pub fn new(fraction: Fraction) -> Self {
        RationalTangle {
            fraction,
            cf: cf_expand(fraction),
            parity: fraction.parity(),
        }
    }

    /// Uses a given expansion; fails if it does not evaluate to a valid fraction.
    pub fn from_cf(cf: ContinuedFraction) -> Result<Self, TangleError> {
        let fraction = cf_value(&cf)?;
        Ok(RationalTangle {
            fraction,
            cf,
            parity: fraction.parity(),
        })
    }

    pub fn from_pq(p: i64, q: i64) -> Result<Self, TangleError> {
        Ok(Self::new(Fraction::new(p, q)?))
    }

    pub fn blocks(&self) -> Vec<TwistBlock> {
        twist_blocks(&self.cf)
    }

    /// Homology classes of the outward ends `(nw, ne, sw, se)` as multiples
    /// of the generating pair `(x, y)`. A crossing swaps the classes of the
    /// two ends it moves.
    pub fn end_classes(&self) -> [(i8, i8); 4] {
        let (x, y) = ((1, 0), (0, 1));
        let neg = |(a, b): (i8, i8)| (-a, -b);
        let [nw, mut ne, mut sw, mut se] = if self.cf.len() % 2 == 1 {
            [x, neg(x), neg(y), y]
        } else {
            [x, y, neg(x), neg(y)]
        };
        for block in self.blocks() {
            if block.crossings % 2 != 0 {
                match block.kind {
                    BlockKind::Horizontal => std::mem::swap(&mut ne, &mut se),
                    BlockKind::Vertical => std::mem::swap(&mut sw, &mut se),
                }
            }
        }
        [nw, ne, sw, se]
    }

    /// For odd tangles: whether the knot `N(T)` orients `x` and `y` the same
    /// way, so that abelian representations sit at `r = t^2 - 2` rather than `r = 2`.
    pub fn numerator_aligns_generators(&self) -> bool {
        self.end_classes()[1] == (0, -1)
    }
}

impl fmt::Display for RationalTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.fraction)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityClass {
    OddKnot,
    EvenKnot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MontesinosKnot {
    tangles: Vec<RationalTangle>,
    parity_class: ParityClass,
}

impl MontesinosKnot {
    pub fn tangles(&self) -> &[RationalTangle] {
        &self.tangles
    }

    pub fn parity_class(&self) -> ParityClass {
        self.parity_class
    }

    pub fn m(&self) -> usize {
        self.tangles.len()
    }

    /// Tangle at cyclic index `i` (0-based).
    pub fn tangle(&self, i: usize) -> &RationalTangle {
        &self.tangles[i % self.tangles.len()]
    }

    pub fn fractions(&self) -> Vec<Fraction> {
        self.tangles.iter().map(|t| t.fraction).collect()
    }
}

impl fmt::Display for MontesinosKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tangles.iter().map(|t| t.fraction.to_string()).collect();
        write!(f, "M({})", parts.join(","))
    }
}

/// Number of components of the denominator closure of the vertical stack,
/// where the south ends of tangle `i` meet the north ends of tangle `i+1`.
pub fn closure_components(fractions: &[Fraction]) -> usize {
    const NW: usize = 0;
    const NE: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;
    let m = fractions.len();
    let node = |i: usize, end: usize| 4 * (i % m) + end;
    let mut inner = vec![0usize; 4 * m];
    let mut outer = vec![0usize; 4 * m];
    for (i, f) in fractions.iter().enumerate() {
        let pairs = match f.connectivity() {
            Connectivity::Zero => [(NW, NE), (SW, SE)],
            Connectivity::Infinity => [(NW, SW), (NE, SE)],
            Connectivity::One => [(NW, SE), (NE, SW)],
        };
        for (a, b) in pairs {
            inner[node(i, a)] = node(i, b);
            inner[node(i, b)] = node(i, a);
        }
        for (a, b) in [(SW, NW), (SE, NE)] {
            outer[node(i, a)] = node(i + 1, b);
            outer[node(i + 1, b)] = node(i, a);
        }
    }
    let mut seen = vec![false; 4 * m];
    let mut components = 0;
    for start in 0..4 * m {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut cur = start;
        loop {
            seen[cur] = true;
            let mate = inner[cur];
            seen[mate] = true;
            cur = outer[mate];
            if cur == start {
                break;
            }
        }
    }
    components
}

/// Validates and classifies `M(f_1, ..., f_m)`, rotating an even tangle to the
/// last position.
pub fn knot_classify(fractions: &[Fraction]) -> Result<MontesinosKnot, TangleError> {
    if fractions.is_empty() {
        return Err(TangleError::NotAKnot("no tangles".into()));
    }
    let m = fractions.len();
    if m < 3 {
        log::warn!("Montesinos diagram with {m} tangles is a rational link");
    }
    let evens: Vec<usize> = (0..m)
        .filter(|&i| fractions[i].parity() == Parity::Even)
        .collect();
    if evens.len() >= 2 {
        return Err(TangleError::NotAKnot(format!(
            "{} tangles have even numerator",
            evens.len()
        )));
    }
    let comps = closure_components(fractions);
    if comps != 1 {
        return Err(TangleError::NotAKnot(format!("closure has {comps} components")));
    }
    let (order, parity_class): (Vec<usize>, _) = match evens.first() {
        None => ((0..m).collect(), ParityClass::OddKnot),
        Some(&e) => ((e + 1..=e + m).map(|i| i % m).collect(), ParityClass::EvenKnot),
    };
    Ok(MontesinosKnot {
        tangles: order.into_iter().map(|i| RationalTangle::new(fractions[i])).collect(),
        parity_class,
    })
}
