use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quadratic::FieldDescriptor;

/// Symbolic value group of a valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueGroup {
    Trivial,
    Z,
    /// `Z × Z`, ordered lexicographically.
    ZxZ,
    /// A subgroup `Z ⊆ Γ ⊆ Q`; `two_divisible` decides `|Γ/2Γ|`.
    RationalSubgroup { two_divisible: bool },
    Divisible,
    /// `Δ × Z` with `Δ` divisible.
    DivisibleZ,
}

impl ValueGroup {
    /// `|Γ/2Γ|`.
    pub fn two_quotient(self) -> u64 {
        match self {
            ValueGroup::Trivial | ValueGroup::Divisible => 1,
            ValueGroup::RationalSubgroup { two_divisible: true } => 1,
            ValueGroup::Z | ValueGroup::DivisibleZ | ValueGroup::RationalSubgroup { two_divisible: false } => 2,
            ValueGroup::ZxZ => 4,
        }
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValueGroup::Trivial => "trivial",
            ValueGroup::Z => "Z",
            ValueGroup::ZxZ => "ZxZ",
            ValueGroup::RationalSubgroup { two_divisible: true } => "Q",
            ValueGroup::RationalSubgroup { two_divisible: false } => "Q:odd",
            ValueGroup::Divisible => "divisible",
            ValueGroup::DivisibleZ => "divisiblexZ",
        };
        f.write_str(s)
    }
}

impl FromStr for ValueGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial" | "0" => ValueGroup::Trivial,
            "Z" => ValueGroup::Z,
            "ZxZ" => ValueGroup::ZxZ,
            "Q" | "Q:2div" => ValueGroup::RationalSubgroup { two_divisible: true },
            "Q:odd" => ValueGroup::RationalSubgroup { two_divisible: false },
            "divisible" => ValueGroup::Divisible,
            "divisiblexZ" => ValueGroup::DivisibleZ,
            _ => return Err(Error::InvalidDescriptor(format!("value group {s:?}"))),
        })
    }
}

/// Restriction of the valuation to the constant field `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restriction {
    Trivial,
    /// The canonical valuation of a non-archimedean local field.
    V0,
    /// Divisible value group and algebraically closed residue field.
    Exotic,
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Restriction::Trivial => "trivial",
            Restriction::V0 => "v0",
            Restriction::Exotic => "exotic",
        })
    }
}

impl FromStr for Restriction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial" => Restriction::Trivial,
            "v0" => Restriction::V0,
            "exotic" => Restriction::Exotic,
            _ => return Err(Error::InvalidDescriptor(format!("restriction {s:?}"))),
        })
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(ValueGroup);
string_serde!(Restriction);

/// A valuation `v` on a function field in one variable over `constants`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ValuationDescriptor {
    pub gamma: ValueGroup,
    pub residue: FieldDescriptor,
    pub restriction: Restriction,
    pub constants: FieldDescriptor,
}

#[derive(Deserialize)]
struct RawDescriptor {
    gamma: ValueGroup,
    residue: FieldDescriptor,
    restriction: Restriction,
    constants: FieldDescriptor,
}

impl<'de> Deserialize<'de> for ValuationDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawDescriptor::deserialize(d)?;
        ValuationDescriptor::new(r.gamma, r.residue, r.restriction, r.constants).map_err(serde::de::Error::custom)
    }
}

impl ValuationDescriptor {
    /// Checks the descriptor's internal consistency.
    pub fn new(
        gamma: ValueGroup,
        residue: FieldDescriptor,
        restriction: Restriction,
        constants: FieldDescriptor,
    ) -> Result<Self> {
        let v = ValuationDescriptor { gamma, residue, restriction, constants };
        v.check()?;
        Ok(v)
    }

    /// Parses the JSON form, e.g.
    /// `{"gamma":"ZxZ","residue":"F3","restriction":"v0","constants":"Qp:3"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))
    }

    pub fn from_strs(gamma: &str, residue: &str, restriction: &str, constants: &str) -> Result<Self> {
        Self::new(gamma.parse()?, residue.parse()?, restriction.parse()?, constants.parse()?)
    }

    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidDescriptor(format!("{self}: {m}")));
        match self.restriction {
            Restriction::V0 if !self.constants.is_nonarchimedean_local() => {
                return bad("restriction v0 needs non-archimedean local constants")
            }
            Restriction::V0 => {
                let kres = self.constants.residue_field().expect("non-archimedean local");
                if self.residue.characteristic() != kres.characteristic() {
                    return bad("residue characteristic differs from that of k's residue field");
                }
                if matches!(self.gamma, ValueGroup::Trivial | ValueGroup::Divisible | ValueGroup::DivisibleZ) {
                    return bad("restriction v0 forces a value group containing Z");
                }
            }
            Restriction::Trivial => {
                if self.residue.characteristic() != self.constants.characteristic() {
                    return bad("residue characteristic differs from that of k");
                }
                if matches!(self.gamma, ValueGroup::Divisible | ValueGroup::DivisibleZ | ValueGroup::ZxZ) {
                    return bad("a valuation trivial on k has value group of rank at most 1 here");
                }
            }
            Restriction::Exotic => {
                let residue_ok = match &self.residue {
                    r if r.is_algebraically_closed() => true,
                    FieldDescriptor::RationalFunction(b) => b.is_algebraically_closed(),
                    _ => false,
                };
                if !residue_ok {
                    return bad("exotic restriction has algebraically closed residue field (or a function field over one)");
                }
                if !matches!(self.gamma, ValueGroup::Divisible | ValueGroup::DivisibleZ) {
                    return bad("exotic restriction has divisible value group");
                }
            }
        }
        if self.gamma == ValueGroup::Trivial && self.restriction != Restriction::Trivial {
            return bad("trivial valuation restricts trivially");
        }
        Ok(())
    }

    /// `rk_Q(Γ_v / Γ_{v|k})`.
    pub fn relative_rational_rank(&self) -> u32 {
        match (self.restriction, self.gamma) {
            (Restriction::Trivial, ValueGroup::Trivial) => 0,
            (Restriction::Trivial, _) => 1,
            (Restriction::V0, ValueGroup::ZxZ) => 1,
            (Restriction::V0, _) => 0,
            (Restriction::Exotic, ValueGroup::DivisibleZ) => 1,
            (Restriction::Exotic, _) => 0,
        }
    }

    /// `trdeg(K_v : k_{v|k})`: 1 when the residue field is a function field.
    pub fn residue_trdeg(&self) -> u32 {
        u32::from(matches!(self.residue, FieldDescriptor::RationalFunction(_)))
    }
}

impl fmt::Display for ValuationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gamma={} residue={} restriction={} constants={}",
            self.gamma, self.residue, self.restriction, self.constants
        )
    }
}
