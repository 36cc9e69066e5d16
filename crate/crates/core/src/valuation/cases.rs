use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::descriptor::{Restriction, ValuationDescriptor, ValueGroup};
use super::indices::{local_indices, BasicTag, IndexProfile};
use crate::error::{Error, Result};
use crate::quadratic::{FieldDescriptor, Index};

/// The sub-cases of the classification of valuations on a function field in
/// one variable over a local field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Case {
    C1,
    C2a,
    C2b,
    C2c,
    C3a,
    C3b,
    C4a,
    C4b,
    C5,
    C6,
}

impl Case {
    pub const ALL: [Case; 10] =
        [Case::C1, Case::C2a, Case::C2b, Case::C2c, Case::C3a, Case::C3b, Case::C4a, Case::C4b, Case::C5, Case::C6];

    pub fn tag(self) -> &'static str {
        match self {
            Case::C1 => "1",
            Case::C2a => "2a",
            Case::C2b => "2b",
            Case::C2c => "2c",
            Case::C3a => "3a",
            Case::C3b => "3b",
            Case::C4a => "4a",
            Case::C4b => "4b",
            Case::C5 => "5",
            Case::C6 => "6",
        }
    }

    /// Human-readable label, e.g. `Case 2(b)`.
    pub fn label(self) -> String {
        let t = self.tag();
        match t.len() {
            1 => format!("Case {t}"),
            _ => format!("Case {}({})", &t[..1], &t[1..]),
        }
    }

    /// Abhyankar cases have `rk + trdeg = 1`.
    pub fn is_abhyankar(self) -> bool {
        !matches!(self, Case::C5 | Case::C6)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An index as the classification states it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AssertedIndex {
    Exactly(Index),
    OneOf(Vec<u64>),
}

impl AssertedIndex {
    pub fn admits(&self, i: Index) -> bool {
        match self {
            AssertedIndex::Exactly(x) => *x == i,
            AssertedIndex::OneOf(xs) => matches!(i, Index::Finite(n) if xs.contains(&n)),
        }
    }
}

impl fmt::Display for AssertedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssertedIndex::Exactly(i) => write!(f, "{i}"),
            AssertedIndex::OneOf(xs) => {
                let s: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "{}", s.join(" or "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssertedProfile {
    pub idx_value: AssertedIndex,
    pub idx_unit: AssertedIndex,
    /// Tags the classification says `B(T)` equals.
    pub basic: BTreeSet<BasicTag>,
}

impl AssertedProfile {
    /// Whether a computed profile meets every assertion.
    pub fn matches(&self, p: &IndexProfile) -> bool {
        self.idx_value.admits(p.idx_value) && self.idx_unit.admits(p.idx_unit) && self.basic.is_subset(&p.basic_equal_to)
    }
}

impl fmt::Display for AssertedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basic.iter().map(ToString::to_string).collect();
        write!(f, "({}, {}, B(T) = {})", self.idx_value, self.idx_unit, b.join(" = "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub case: Case,
    pub label: String,
    pub asserted: AssertedProfile,
}

fn finite_residue_char(k: &FieldDescriptor) -> u64 {
    k.residue_field().map_or(0, |r| r.characteristic())
}

fn is_finite(d: &FieldDescriptor) -> bool {
    matches!(d, FieldDescriptor::Finite(_))
}

/// Whether `r` can be a finite extension of `k` as far as the tags tell.
fn finite_extension_of(r: &FieldDescriptor, k: &FieldDescriptor) -> bool {
    use FieldDescriptor::*;
    match (k, r) {
        (Real, Real | Complex) | (Complex, Complex) => true,
        (Padic { p, .. }, Padic { p: p2, .. }) => p == p2,
        (Laurent(a), Laurent(b)) => match (&**a, &**b) {
            (Finite(q1), Finite(q2)) => {
                let c = r.characteristic();
                c == k.characteristic() && q2 % q1 == 0 && {
                    // F_{q2} ⊇ F_{q1}: degrees divide.
                    let d = |mut q: u64| {
                        let mut n = 0;
                        while q > 1 {
                            q /= c;
                            n += 1;
                        }
                        n
                    };
                    d(*q2) % d(*q1) == 0
                }
            }
            _ => false,
        },
        _ => false,
    }
}

fn no_match(v: &ValuationDescriptor, why: &str) -> Error {
    Error::NoCaseMatched(format!("{v}: {why}"))
}

fn exactly(n: u64) -> AssertedIndex {
    AssertedIndex::Exactly(Index::Finite(n))
}

fn tags(t: &[BasicTag]) -> BTreeSet<BasicTag> {
    t.iter().copied().collect()
}

/// Matches a descriptor against the hypotheses of each sub-case and returns
/// the profile that sub-case asserts.
pub fn classify_case(v: &ValuationDescriptor) -> Result<Classification> {
    use BasicTag::*;
    let k = &v.constants;
    if !k.is_local() {
        return Err(no_match(v, "constants are not a local field"));
    }
    if k.characteristic() == 2 {
        return Err(no_match(v, "constants have characteristic 2"));
    }
    let r = &v.residue;
    let (case, idx_value, idx_unit, basic) = match (v.restriction, v.gamma) {
        (Restriction::Trivial, ValueGroup::Trivial) => (Case::C1, exactly(1), AssertedIndex::Exactly(Index::Infinite), tags(&[All, Units])),
        (Restriction::Trivial, ValueGroup::Z) => {
            if !finite_extension_of(r, k) {
                return Err(no_match(v, "residue is not a finite extension of the constants"));
            }
            if k.is_archimedean() {
                (Case::C2a, exactly(2), AssertedIndex::OneOf(vec![1, 2]), tags(&[PlusMinusT, Units]))
            } else if k.is_nondyadic_local() {
                (Case::C2b, exactly(2), exactly(4), tags(&[PlusMinusT]))
            } else {
                let FieldDescriptor::Padic { degree, .. } = r else {
                    return Err(no_match(v, "dyadic residue expected"));
                };
                (Case::C2c, exactly(2), exactly(1 << (degree + 2)), tags(&[Units]))
            }
        }
        (Restriction::V0, g) => {
            let p = finite_residue_char(k);
            match (g, r) {
                (ValueGroup::Z, FieldDescriptor::RationalFunction(b)) if is_finite(b) => {
                    (Case::C3a, exactly(2), AssertedIndex::Exactly(Index::Infinite), tags(&[Units]))
                }
                (ValueGroup::ZxZ, r) if is_finite(r) => {
                    (Case::C3b, exactly(4), exactly(if p == 2 { 1 } else { 2 }), tags(&[PlusMinusT]))
                }
                (ValueGroup::Z | ValueGroup::RationalSubgroup { .. }, r) if is_finite(r) => {
                    (Case::C5, AssertedIndex::OneOf(vec![1, 2]), AssertedIndex::OneOf(vec![1, 2]), tags(&[PlusMinusT]))
                }
                _ => return Err(no_match(v, "v0 restriction with this value group and residue")),
            }
        }
        (Restriction::Exotic, g) => match (g, r) {
            (ValueGroup::DivisibleZ, r) if r.is_algebraically_closed() => {
                (Case::C4a, exactly(2), exactly(1), tags(&[T, Units]))
            }
            (ValueGroup::Divisible, FieldDescriptor::RationalFunction(b)) if b.is_algebraically_closed() => {
                (Case::C4b, exactly(1), AssertedIndex::Exactly(Index::Infinite), tags(&[All, Units]))
            }
            (ValueGroup::Divisible, r) if r.is_algebraically_closed() => {
                (Case::C6, exactly(1), exactly(1), tags(&[All, Units, T]))
            }
            _ => return Err(no_match(v, "exotic restriction with this value group and residue")),
        },
        (Restriction::Trivial, _) => return Err(no_match(v, "value group")),
    };
    Ok(Classification { case, label: case.label(), asserted: AssertedProfile { idx_value, idx_unit, basic } })
}

/// Classification together with the computed profile and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub descriptor: ValuationDescriptor,
    pub classification: Classification,
    pub computed: IndexProfile,
    pub agrees: bool,
}

pub fn classify_and_compare(v: &ValuationDescriptor) -> Result<CaseReport> {
    let classification = classify_case(v)?;
    let computed = local_indices(v)?;
    let agrees = classification.asserted.matches(&computed);
    Ok(CaseReport { descriptor: v.clone(), classification, computed, agrees })
}

/// One representative descriptor per sub-case.
pub fn case_representatives() -> Vec<(Case, ValuationDescriptor)> {
    let d = |g: &str, r: &str, res: &str, k: &str| ValuationDescriptor::from_strs(g, r, res, k).expect("valid representative");
    vec![
        (Case::C1, d("trivial", "Qp:3(t)", "trivial", "Qp:3")),
        (Case::C2a, d("Z", "R", "trivial", "R")),
        (Case::C2b, d("Z", "Qp:3", "trivial", "Qp:3")),
        (Case::C2c, d("Z", "Q2", "trivial", "Q2")),
        (Case::C3a, d("Z", "F3(t)", "v0", "Qp:3")),
        (Case::C3b, d("ZxZ", "F3", "v0", "Qp:3")),
        (Case::C4a, d("divisiblexZ", "AC:0", "exotic", "R")),
        (Case::C4b, d("divisible", "AC:0(t)", "exotic", "R")),
        (Case::C5, d("Q", "F3", "v0", "Qp:3")),
        (Case::C6, d("divisible", "AC:0", "exotic", "R")),
    ]
}
