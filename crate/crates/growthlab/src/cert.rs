//! Machine-checkable certificates. A certificate records the exact
//! quantities realized on an instance together with the claimed bounds,
//! each evaluated as an exact integer comparison (rationals are
//! cross-multiplied before they get here). Claims whose implicit constants
//! the source suppresses are flagged `constants_suppressed` and never fail
//! a run; everything else is a hard invariant.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::set::FiniteSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cmp {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cmp::Le => write!(f, "<="),
            Cmp::Ge => write!(f, ">="),
            Cmp::Eq => write!(f, "=="),
        }
    }
}

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub name: String,
    pub lhs: String,
    pub cmp: Cmp,
    pub rhs: String,
    pub holds: bool,
    #[serde(rename = "constantsSuppressed")]
    pub constants_suppressed: bool,
}

/// Exact record of a lemma instance: quantities plus evaluated bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub lemma: String,
    pub instance: String,
    pub quantities: BTreeMap<String, String>,
    pub bounds: Vec<Bound>,
    /// Conjunction of all non-suppressed bounds.
    pub holds: bool,
}

impl Certificate {
    pub fn new(lemma: impl Into<String>, instance: impl Into<String>) -> Self {
        Certificate {
            lemma: lemma.into(),
            instance: instance.into(),
            quantities: BTreeMap::new(),
            bounds: Vec::new(),
            holds: true,
        }
    }

    pub fn quantity(&mut self, name: &str, value: impl fmt::Display) -> &mut Self {
        self.quantities.insert(name.to_string(), value.to_string());
        self
    }

    fn push_bound(&mut self, name: &str, lhs: BigInt, cmp: Cmp, rhs: BigInt, suppressed: bool) {
        let holds = match cmp {
            Cmp::Le => lhs <= rhs,
            Cmp::Ge => lhs >= rhs,
            Cmp::Eq => lhs == rhs,
        };
        if !suppressed && !holds {
            self.holds = false;
        }
        self.bounds.push(Bound {
            name: name.to_string(),
            lhs: lhs.to_string(),
            cmp,
            rhs: rhs.to_string(),
            holds,
            constants_suppressed: suppressed,
        });
    }

    pub fn bound_le(&mut self, name: &str, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> &mut Self {
        self.push_bound(name, lhs.into(), Cmp::Le, rhs.into(), false);
        self
    }

    pub fn bound_ge(&mut self, name: &str, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> &mut Self {
        self.push_bound(name, lhs.into(), Cmp::Ge, rhs.into(), false);
        self
    }

    pub fn bound_eq(&mut self, name: &str, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> &mut Self {
        self.push_bound(name, lhs.into(), Cmp::Eq, rhs.into(), false);
        self
    }

    /// A monitored claim: recorded and reported but never failing, because
    /// the source statement suppresses its constants.
    pub fn monitor_le(&mut self, name: &str, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> &mut Self {
        self.push_bound(name, lhs.into(), Cmp::Le, rhs.into(), true);
        self
    }

    pub fn monitor_ge(&mut self, name: &str, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> &mut Self {
        self.push_bound(name, lhs.into(), Cmp::Ge, rhs.into(), true);
        self
    }

    pub fn bound(&self, name: &str) -> Option<&Bound> {
        self.bounds.iter().find(|b| b.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

/// A subset extraction together with its witnessed bounds.
#[derive(Clone, Debug)]
pub struct ExtractionCertificate {
    pub subset: FiniteSet,
    pub cert: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverDirection {
    /// translates of B−B
    DifferenceSet,
    /// translates of B
    PlusB,
    /// translates of −B
    MinusB,
}

impl fmt::Display for CoverDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverDirection::DifferenceSet => write!(f, "B-B"),
            CoverDirection::PlusB => write!(f, "+B"),
            CoverDirection::MinusB => write!(f, "-B"),
        }
    }
}

/// A covering of `covered` by translates of `transland` centered at
/// `centers`, with the inclusion re-checked on construction.
#[derive(Clone, Debug)]
pub struct CoverCertificate {
    pub centers: Vec<crate::field::Value>,
    pub covered: FiniteSet,
    pub transland: FiniteSet,
    pub direction: CoverDirection,
    pub cert: Certificate,
}

/// A rational parameter ε with, when available, its exact square root —
/// the dense-regime procedures need (1 −√ε) thresholds exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eps {
    pub num: u64,
    pub den: u64,
    sqrt: Option<(u64, u64)>,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl Eps {
    pub fn new(num: u64, den: u64) -> crate::Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(crate::Error::BadEpsilon("(0,1)"));
        }
        let g = num::integer::gcd(num, den);
        let (num, den) = (num / g, den / g);
        let (sn, sd) = (isqrt(num), isqrt(den));
        let sqrt = if sn * sn == num && sd * sd == den { Some((sn, sd)) } else { None };
        Ok(Eps { num, den, sqrt })
    }

    /// The default ε = 1/16 used throughout the dense-regime procedures.
    pub fn sixteenth() -> Self {
        Eps { num: 1, den: 16, sqrt: Some((1, 4)) }
    }

    /// √ε as an exact rational; errors when ε is not a perfect square.
    pub fn sqrt(&self) -> crate::Result<(u64, u64)> {
        self.sqrt.ok_or(crate::Error::BadEpsilon("a perfect rational square"))
    }

    /// ε < hi as rationals.
    pub fn below(&self, hi_num: u64, hi_den: u64) -> bool {
        (self.num as u128) * (hi_den as u128) < (hi_num as u128) * (self.den as u128)
    }

    /// Smallest k with 2^k ≥ den/num, i.e. ⌈log₂(1/ε)⌉.
    pub fn ceil_log2_inverse(&self) -> u32 {
        let mut k = 0u32;
        let mut pow: u128 = 1;
        while pow * (self.num as u128) < self.den as u128 {
            pow *= 2;
            k += 1;
        }
        k
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_and_holds() {
        let mut c = Certificate::new("test", "inst");
        c.bound_le("ok", 3, 5);
        assert!(c.holds);
        c.monitor_ge("monitored-fails", 1, 5);
        assert!(c.holds, "monitors never fail a certificate");
        c.bound_ge("fails", 1, 5);
        assert!(!c.holds);
        assert_eq!(c.bound("ok").unwrap().cmp, Cmp::Le);
    }

    #[test]
    fn eps_sqrt() {
        let e = Eps::new(1, 16).unwrap();
        assert_eq!(e.sqrt().unwrap(), (1, 4));
        assert_eq!(e.ceil_log2_inverse(), 4);
        let e = Eps::new(4, 64).unwrap(); // reduces to 1/16
        assert_eq!(e.sqrt().unwrap(), (1, 4));
        let e = Eps::new(1, 3).unwrap();
        assert!(e.sqrt().is_err());
        assert!(Eps::new(3, 2).is_err());
        assert!(Eps::new(1, 16).unwrap().below(1, 4));
        assert!(!Eps::new(1, 4).unwrap().below(1, 4));
    }

    #[test]
    fn json_shape() {
        let mut c = Certificate::new("ruzsa-triangle", "A,B,C");
        c.quantity("|A-B|", 4u32).bound_le("triangle", 8, 12);
        let j = c.to_json();
        assert_eq!(j["lemma"], "ruzsa-triangle");
        assert_eq!(j["bounds"][0]["holds"], true);
        assert_eq!(j["quantities"]["|A-B|"], "4");
    }
}
