//! Relations, gate outcomes, and their canonical JSON form.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::foundations::{fmt_q, parse_q, Partition};
use crate::kappa::KappaPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "FZ")]
    Fz,
    #[serde(rename = "FZ-reduced")]
    FzReduced,
    #[serde(rename = "SQ-vtw")]
    SqSimple,
    #[serde(rename = "SQ-mmnn")]
    SqExtended,
    #[serde(rename = "SQ-S")]
    SqS,
    #[serde(rename = "SQ-midb")]
    SqMidb,
    #[serde(rename = "SQ-best")]
    SqBest,
    #[serde(rename = "Classical")]
    Classical,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).unwrap();
        write!(f, "{}", s.trim_matches('"'))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    kappa: Vec<i32>,
}

impl Serialize for KappaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> =
            self.terms().map(|(m, c)| TermJson { coeff: fmt_q(c), kappa: m.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KappaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<TermJson> = Vec::deserialize(d)?;
        let mut p = KappaPoly::zero();
        for t in v {
            let c = parse_q(&t.coeff).map_err(serde::de::Error::custom)?;
            p.add_term(crate::kappa::monomial(t.kappa), c);
        }
        Ok(p)
    }
}

/// Serde adapter writing rationals as "num/den" strings.
pub mod qstr {
    use super::*;
    use crate::foundations::Q;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        fmt_q(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        parse_q(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A kappa polynomial asserted to vanish in R^codim(M_genus).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub genus: i64,
    pub codim: i32,
    pub sigma: Partition,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    /// z_{i,j} monomial of a classical relation as (i, j, power) triples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<(u32, u32, u32)>>,
    #[serde(rename = "terms")]
    pub poly: KappaPoly,
}

impl Relation {
    pub fn new(genus: i64, codim: i32, sigma: Partition, family: Family, poly: KappaPoly) -> Self {
        Relation { genus, codim, sigma, family, degree: None, z: None, poly }
    }

    pub fn with_degree(mut self, d: i32) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn is_homogeneous(&self) -> bool {
        self.poly.is_homogeneous_of(self.codim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Result of a relation query: either a relation or an explicit statement
/// that the gate of the generating theorem is not satisfied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Outcome {
    Relation(Relation),
    GateEmpty(GateEmpty),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateEmpty {
    pub gate_empty: bool,
    pub genus: i64,
    pub codim: i32,
    pub sigma: Partition,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    pub reason: String,
}

impl Outcome {
    pub fn gate_empty(genus: i64, codim: i32, sigma: &Partition, family: Family, reason: impl Into<String>) -> Self {
        Outcome::GateEmpty(GateEmpty {
            gate_empty: true,
            genus,
            codim,
            sigma: sigma.clone(),
            family,
            degree: None,
            reason: reason.into(),
        })
    }

    pub fn with_degree(self, d: i32) -> Self {
        match self {
            Outcome::Relation(r) => Outcome::Relation(r.with_degree(d)),
            Outcome::GateEmpty(mut g) => {
                g.degree = Some(d);
                Outcome::GateEmpty(g)
            }
        }
    }

    pub fn relation(&self) -> Option<&Relation> {
        match self {
            Outcome::Relation(r) => Some(r),
            Outcome::GateEmpty(_) => None,
        }
    }

    pub fn into_relation(self) -> Option<Relation> {
        match self {
            Outcome::Relation(r) => Some(r),
            Outcome::GateEmpty(_) => None,
        }
    }

    pub fn is_gate_empty(&self) -> bool {
        matches!(self, Outcome::GateEmpty(_))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("outcome serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::qf;

    #[test]
    fn json_roundtrip() {
        let p = KappaPoly::from_terms(vec![(vec![1, 2], qf(-3, 2)), (vec![3], qf(5, 1))]);
        let r = Relation::new(5, 3, Partition::from_slice(&[1, 1]), Family::Fz, p);
        let s = r.to_json();
        assert_eq!(
            s,
            r#"{"genus":5,"codim":3,"sigma":[1,1],"family":"FZ","terms":[{"coeff":"-3/2","kappa":[1,2]},{"coeff":"5","kappa":[3]}]}"#
        );
        assert_eq!(Relation::from_json(&s).unwrap(), r);
        let g = Outcome::gate_empty(5, 1, &Partition::empty(), Family::Fz, "3r <= g - 1");
        let back: Outcome = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let o = Outcome::Relation(r);
        assert_eq!(serde_json::from_str::<Outcome>(&o.to_json()).unwrap(), o);
    }
}
