//! JSON form of [`Polynomial`]:
//! `{"vars":[...],"terms":[{"coef":"<decimal>","exps":{"t":2,...}}]}`.
//!
//! Terms are written leading term first; exponent maps follow variable order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Polynomial, Var};

struct Exps<'a>(&'a Monomial);

impl Serialize for Exps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let e = self.0.exponents();
        let mut map = s.serialize_map(Some(e.len()))?;
        for (v, k) in e {
            map.serialize_entry(&v.to_string(), k)?;
        }
        map.end()
    }
}

struct Term<'a>(&'a Monomial, &'a BigInt);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("coef", &self.1.to_string())?;
        st.serialize_field("exps", &Exps(self.0))?;
        st.end()
    }
}

struct Terms<'a>(&'a Polynomial);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.terms().rev().map(|(m, c)| Term(m, c)))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vars: Vec<Var> = self.vars().into_iter().collect();
        let mut st = s.serialize_struct("Polynomial", 2)?;
        st.serialize_field("vars", &vars)?;
        st.serialize_field("terms", &Terms(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coef: String,
    exps: BTreeMap<Var, i32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoly {
    vars: Vec<Var>,
    terms: Vec<RawTerm>,
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPoly::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coef)))?;
            for (v, e) in &t.exps {
                if !raw.vars.contains(v) {
                    return Err(D::Error::custom(format!("undeclared variable {v}")));
                }
                if *e < 0 && !v.is_laurent() {
                    return Err(D::Error::custom(format!("negative exponent on {v}")));
                }
            }
            terms.push((Monomial::from_pairs(t.exps), c));
        }
        Ok(Polynomial::from_terms(terms))
    }
}
