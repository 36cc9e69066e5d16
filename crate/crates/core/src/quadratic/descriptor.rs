use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{is_prime, prime_power};

/// A symbolic field tag.
///
/// `Padic { p, degree }` stands for a finite extension of `Q_p`. For odd `p`
/// the degree is the residue degree `f` (so the residue field is `F_{p^f}`);
/// for `p = 2` it is `[K : Q_2]`, which is what the square-class count needs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Finite(u64),
    Real,
    Complex,
    /// Algebraically closed field of the given characteristic.
    AlgClosed(u64),
    Padic { p: u64, degree: u32 },
    Laurent(Box<FieldDescriptor>),
    RationalFunction(Box<FieldDescriptor>),
}

/// Number of square classes, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Index {
    Finite(u64),
    Infinite,
}

impl Index {
    pub fn times(self, k: u64) -> Index {
        match self {
            Index::Finite(n) => Index::Finite(n * k),
            Index::Infinite => Index::Infinite,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinity"),
        }
    }
}

impl FieldDescriptor {
    pub fn parse(s: &str) -> Result<FieldDescriptor> {
        let s = s.trim();
        let bad = || Error::InvalidDescriptor(s.to_string());
        let split = s.find('(').unwrap_or(s.len());
        let (head, mut rest) = s.split_at(split);
        let mut desc = Self::parse_base(head).map_err(|_| bad())?;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("((") {
                let end = r.find("))").ok_or_else(bad)?;
                Self::check_var(&r[..end]).ok_or_else(bad)?;
                desc = FieldDescriptor::Laurent(Box::new(desc));
                rest = &r[end + 2..];
            } else if let Some(r) = rest.strip_prefix('(') {
                let end = r.find(')').ok_or_else(bad)?;
                Self::check_var(&r[..end]).ok_or_else(bad)?;
                desc = FieldDescriptor::RationalFunction(Box::new(desc));
                rest = &r[end + 1..];
            } else {
                return Err(bad());
            }
        }
        desc.validate()?;
        Ok(desc)
    }

    fn check_var(v: &str) -> Option<()> {
        (v.len() == 1 && v.chars().all(|c| c.is_ascii_lowercase())).then_some(())
    }

    fn parse_base(head: &str) -> Result<FieldDescriptor> {
        let bad = || Error::InvalidDescriptor(head.to_string());
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        match head {
            "R" => return Ok(FieldDescriptor::Real),
            "C" => return Ok(FieldDescriptor::Complex),
            "Q2" => return Ok(FieldDescriptor::Padic { p: 2, degree: 1 }),
            _ => {}
        }
        if let Some(c) = head.strip_prefix("AC:") {
            return Ok(FieldDescriptor::AlgClosed(num(c)?));
        }
        if let Some(rest) = head.strip_prefix("Qp:") {
            let (p, degree) = match rest.split_once('[') {
                Some((p, d)) => (num(p)?, num(d.strip_suffix(']').ok_or_else(bad)?)? as u32),
                None => (num(rest)?, 1),
            };
            return Ok(FieldDescriptor::Padic { p, degree });
        }
        if let Some(q) = head.strip_prefix('F') {
            return Ok(FieldDescriptor::Finite(num(q)?));
        }
        if let Some(p) = head.strip_prefix('Q') {
            return Ok(FieldDescriptor::Padic { p: num(p)?, degree: 1 });
        }
        Err(bad())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldDescriptor::Finite(q) => prime_power(*q).map(|_| ()).ok_or(Error::NotPrimePower(*q)),
            FieldDescriptor::Padic { p, degree } => {
                if !is_prime(*p) {
                    Err(Error::NotPrime(*p))
                } else if *degree == 0 {
                    Err(Error::InvalidDescriptor(format!("Qp:{p}[0]")))
                } else {
                    Ok(())
                }
            }
            FieldDescriptor::AlgClosed(c) if *c != 0 && !is_prime(*c) => Err(Error::NotPrime(*c)),
            FieldDescriptor::Laurent(b) | FieldDescriptor::RationalFunction(b) => b.validate(),
            _ => Ok(()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Finite(q) => prime_power(*q).map_or(0, |(p, _)| p),
            FieldDescriptor::Real | FieldDescriptor::Complex | FieldDescriptor::Padic { .. } => 0,
            FieldDescriptor::AlgClosed(c) => *c,
            FieldDescriptor::Laurent(b) | FieldDescriptor::RationalFunction(b) => b.characteristic(),
        }
    }

    /// `|K*/K*²|`.
    pub fn square_class_count(&self) -> Index {
        match self {
            FieldDescriptor::Finite(q) => Index::Finite(if q % 2 == 0 { 1 } else { 2 }),
            FieldDescriptor::Real => Index::Finite(2),
            FieldDescriptor::Complex | FieldDescriptor::AlgClosed(_) => Index::Finite(1),
            FieldDescriptor::Padic { p: 2, degree } => Index::Finite(1 << (degree + 2)),
            FieldDescriptor::Padic { .. } => Index::Finite(4),
            FieldDescriptor::Laurent(b) => {
                if self.characteristic() == 2 {
                    Index::Infinite
                } else {
                    b.square_class_count().times(2)
                }
            }
            FieldDescriptor::RationalFunction(_) => Index::Infinite,
        }
    }

    /// Whether `−1` is a square, when that is determined by the tag.
    pub fn minus_one_is_square(&self) -> Option<bool> {
        match self {
            FieldDescriptor::Finite(q) => Some(q % 2 == 0 || q % 4 == 1),
            FieldDescriptor::Real => Some(false),
            FieldDescriptor::Complex | FieldDescriptor::AlgClosed(_) => Some(true),
            FieldDescriptor::Padic { p: 2, degree: 1 } => Some(false),
            FieldDescriptor::Padic { p: 2, .. } => None,
            FieldDescriptor::Padic { p, degree } => Some(p % 4 == 1 || degree % 2 == 0),
            FieldDescriptor::Laurent(b) | FieldDescriptor::RationalFunction(b) => b.minus_one_is_square(),
        }
    }

    /// Local fields in the usual sense: `R`, `C`, finite extensions of `Q_p`,
    /// and `F_q((t))`.
    pub fn is_local(&self) -> bool {
        match self {
            FieldDescriptor::Real | FieldDescriptor::Complex | FieldDescriptor::Padic { .. } => true,
            FieldDescriptor::Laurent(b) => matches!(**b, FieldDescriptor::Finite(_)),
            _ => false,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, FieldDescriptor::Real | FieldDescriptor::Complex)
    }

    /// Non-archimedean local field of residue characteristic ≠ 2. `F_q((t))`
    /// with `q` odd counts as such.
    pub fn is_nondyadic_local(&self) -> bool {
        match self {
            FieldDescriptor::Padic { p, .. } => *p != 2,
            FieldDescriptor::Laurent(b) => matches!(**b, FieldDescriptor::Finite(q) if q % 2 == 1),
            _ => false,
        }
    }

    /// Finite extension of `Q_2`.
    pub fn is_dyadic(&self) -> bool {
        matches!(self, FieldDescriptor::Padic { p: 2, .. })
    }

    pub fn is_nonarchimedean_local(&self) -> bool {
        self.is_local() && !self.is_archimedean()
    }

    pub fn is_algebraically_closed(&self) -> bool {
        matches!(self, FieldDescriptor::Complex | FieldDescriptor::AlgClosed(_))
    }

    /// Residue field of the canonical valuation of a non-archimedean local field.
    pub fn residue_field(&self) -> Option<FieldDescriptor> {
        match self {
            FieldDescriptor::Padic { p, degree } => {
                let f = if *p == 2 { 1 } else { *degree };
                Some(FieldDescriptor::Finite(p.pow(f)))
            }
            FieldDescriptor::Laurent(b) if self.is_local() => Some((**b).clone()),
            _ => None,
        }
    }

    /// A quadratic extension, where the tag determines one.
    pub fn quadratic_extension(&self) -> Option<FieldDescriptor> {
        match self {
            FieldDescriptor::Finite(q) => Some(FieldDescriptor::Finite(q * q)),
            FieldDescriptor::Real => Some(FieldDescriptor::Complex),
            FieldDescriptor::Padic { p, degree } => Some(FieldDescriptor::Padic { p: *p, degree: degree * 2 }),
            FieldDescriptor::Laurent(b) => b.quadratic_extension().map(|e| FieldDescriptor::Laurent(Box::new(e))),
            FieldDescriptor::RationalFunction(b) => {
                b.quadratic_extension().map(|e| FieldDescriptor::RationalFunction(Box::new(e)))
            }
            _ => None,
        }
    }

    /// Transcendence degree over the prime field, when finite and tag-determined.
    pub fn trdeg_over_prime(&self) -> Option<u32> {
        match self {
            FieldDescriptor::Finite(_) => Some(0),
            FieldDescriptor::RationalFunction(b) => b.trdeg_over_prime().map(|d| d + 1),
            _ => None,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Finite(q) => write!(f, "F{q}"),
            FieldDescriptor::Real => write!(f, "R"),
            FieldDescriptor::Complex => write!(f, "C"),
            FieldDescriptor::AlgClosed(c) => write!(f, "AC:{c}"),
            FieldDescriptor::Padic { p: 2, degree: 1 } => write!(f, "Q2"),
            FieldDescriptor::Padic { p, degree: 1 } => write!(f, "Qp:{p}"),
            FieldDescriptor::Padic { p, degree } => write!(f, "Qp:{p}[{degree}]"),
            FieldDescriptor::Laurent(b) => write!(f, "{b}((t))"),
            FieldDescriptor::RationalFunction(b) => write!(f, "{b}(t)"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FieldDescriptor::parse(s)
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FieldDescriptor::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["F3", "F9", "R", "C", "Qp:3", "Q2", "F3((t))", "AC:0", "Qp:2[3]", "F3(t)", "F3((t))(t)"] {
            assert_eq!(FieldDescriptor::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(FieldDescriptor::parse("Q5").unwrap(), FieldDescriptor::Padic { p: 5, degree: 1 });
        assert_eq!(FieldDescriptor::parse("F3((s))").unwrap().to_string(), "F3((t))");
        assert!(matches!(FieldDescriptor::parse("F6"), Err(Error::NotPrimePower(6))));
        assert!(matches!(FieldDescriptor::parse("Qp:4"), Err(Error::NotPrime(4))));
        assert!(FieldDescriptor::parse("F3((t)").is_err());
        assert!(FieldDescriptor::parse("X").is_err());
    }

    #[test]
    fn square_class_counts() {
        let count = |s: &str| FieldDescriptor::parse(s).unwrap().square_class_count();
        assert_eq!(count("C"), Index::Finite(1));
        assert_eq!(count("R"), Index::Finite(2));
        assert_eq!(count("Qp:7"), Index::Finite(4));
        assert_eq!(count("Q2"), Index::Finite(8));
        assert_eq!(count("Qp:2[3]"), Index::Finite(32));
        assert_eq!(count("F3((t))"), Index::Finite(4));
        assert_eq!(count("F2((t))"), Index::Infinite);
        assert_eq!(count("R(t)"), Index::Infinite);
    }

    #[test]
    fn local_kinds() {
        let d = |s: &str| FieldDescriptor::parse(s).unwrap();
        assert!(d("Qp:3").is_nondyadic_local());
        assert!(d("F3((t))").is_nondyadic_local());
        assert!(!d("Q2").is_nondyadic_local());
        assert!(d("Q2").is_dyadic());
        assert!(!d("F3").is_local());
        assert_eq!(d("Qp:3[2]").residue_field(), Some(d("F9")));
        assert_eq!(d("Qp:7").minus_one_is_square(), Some(false));
        assert_eq!(d("Qp:7[2]").minus_one_is_square(), Some(true));
    }
}
