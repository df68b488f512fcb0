use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RingError;

/// A polynomial variable.
///
/// The closed set of symbols used by the trace and variety computations. The
/// derived `Ord` is the canonical variable order: `t < r < r1 < r2 < ... <
/// lambda < kappa < u < xi1 < ... < tau < tbar_* < mu < alpha < aux`. Monomial
/// ordering and serialization both follow it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    R,
    Ri(u16),
    Lambda,
    Kappa,
    U,
    Xi(u16),
    Tau,
    TBar2(u16, u16),
    TBar3(u16, u16, u16),
    Mu,
    Alpha,
    /// Scratch variables: `Aux(0)` prints as `x`, `Aux(1)` as `y`, others as `x<n>`.
    Aux(u16),
}

impl Var {
    /// Laurent variables may carry negative exponents.
    pub fn is_laurent(self) -> bool {
        matches!(self, Var::Lambda | Var::Kappa | Var::Mu)
    }

    /// `tbar_{i,j}` with the index pair sorted.
    pub fn tbar2(i: usize, j: usize) -> Var {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        Var::TBar2(a as u16, b as u16)
    }

    pub fn tbar3(i: usize, j: usize, k: usize) -> Var {
        let mut v = [i, j, k];
        v.sort_unstable();
        Var::TBar3(v[0] as u16, v[1] as u16, v[2] as u16)
    }

    pub fn latex(self) -> String {
        match self {
            Var::T => "t".into(),
            Var::R => "r".into(),
            Var::Ri(i) => format!("r_{{{i}}}"),
            Var::Lambda => "\\lambda".into(),
            Var::Kappa => "\\kappa".into(),
            Var::U => "u".into(),
            Var::Xi(i) => format!("\\xi_{{{i}}}"),
            Var::Tau => "\\tau".into(),
            Var::TBar2(i, j) => format!("\\bar{{t}}_{{{i},{j}}}"),
            Var::TBar3(i, j, k) => format!("\\bar{{t}}_{{{i},{j},{k}}}"),
            Var::Mu => "\\mu".into(),
            Var::Alpha => "\\alpha".into(),
            Var::Aux(0) => "x".into(),
            Var::Aux(1) => "y".into(),
            Var::Aux(n) => format!("x_{{{n}}}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::T => f.write_str("t"),
            Var::R => f.write_str("r"),
            Var::Ri(i) => write!(f, "r{i}"),
            Var::Lambda => f.write_str("lambda"),
            Var::Kappa => f.write_str("kappa"),
            Var::U => f.write_str("u"),
            Var::Xi(i) => write!(f, "xi{i}"),
            Var::Tau => f.write_str("tau"),
            Var::TBar2(i, j) => write!(f, "tbar_{i}_{j}"),
            Var::TBar3(i, j, k) => write!(f, "tbar_{i}_{j}_{k}"),
            Var::Mu => f.write_str("mu"),
            Var::Alpha => f.write_str("alpha"),
            Var::Aux(0) => f.write_str("x"),
            Var::Aux(1) => f.write_str("y"),
            Var::Aux(n) => write!(f, "x{n}"),
        }
    }
}

fn index(s: &str) -> Option<u16> {
    if s.is_empty() || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Var {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::UnknownVariable(s.to_string());
        Ok(match s {
            "t" => Var::T,
            "r" => Var::R,
            "lambda" => Var::Lambda,
            "kappa" => Var::Kappa,
            "u" => Var::U,
            "tau" => Var::Tau,
            "mu" => Var::Mu,
            "alpha" => Var::Alpha,
            "x" => Var::Aux(0),
            "y" => Var::Aux(1),
            _ => {
                if let Some(rest) = s.strip_prefix("tbar_") {
                    let idx: Option<Vec<u16>> = rest.split('_').map(index).collect();
                    match idx.as_deref() {
                        Some([i, j]) if i < j => Var::TBar2(*i, *j),
                        Some([i, j, k]) if i < j && j < k => Var::TBar3(*i, *j, *k),
                        _ => return Err(bad()),
                    }
                } else if let Some(rest) = s.strip_prefix("xi") {
                    Var::Xi(index(rest).ok_or_else(bad)?)
                } else if let Some(rest) = s.strip_prefix('r') {
                    Var::Ri(index(rest).ok_or_else(bad)?)
                } else if let Some(rest) = s.strip_prefix('x') {
                    match index(rest).ok_or_else(bad)? {
                        n if n >= 2 => Var::Aux(n),
                        _ => return Err(bad()),
                    }
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarDesc {
    pub name: Var,
    pub laurent: bool,
}

/// Ordered list of declared variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarTable {
    vars: Vec<VarDesc>,
}

impl VarTable {
    /// Builds a table in canonical order. Fails on duplicates.
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Result<Self, RingError> {
        let mut v: Vec<Var> = vars.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(RingError::DuplicateVariable(w[0].to_string()));
        }
        Ok(VarTable {
            vars: v
                .into_iter()
                .map(|name| VarDesc {
                    name,
                    laurent: name.is_laurent(),
                })
                .collect(),
        })
    }

    pub fn contains(&self, v: Var) -> bool {
        self.vars.binary_search_by(|d| d.name.cmp(&v)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Var> + '_ {
        self.vars.iter().map(|d| d.name)
    }

    pub fn descriptors(&self) -> &[VarDesc] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}
