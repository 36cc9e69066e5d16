use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::descriptor::ValuationDescriptor;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::hyperfield::rigidity_report;
use crate::quadratic::{qh_from_descriptor, FieldDescriptor, Index};

/// The subgroups `B(T)` can coincide with, for `T = (1+M_v)K*²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BasicTag {
    #[serde(rename = "K*")]
    All,
    #[serde(rename = "U_vK*²")]
    Units,
    #[serde(rename = "±T")]
    PlusMinusT,
    #[serde(rename = "T")]
    T,
}

impl fmt::Display for BasicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasicTag::All => "K*",
            BasicTag::Units => "U_vK*²",
            BasicTag::PlusMinusT => "±T",
            BasicTag::T => "T",
        })
    }
}

/// Basic part of `Q(K_v)` itself (`B(K_v*²)`), as a subgroup of `K_v*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ResidueBasicKind {
    /// `{1}`.
    Squares,
    /// `{±1}·K_v*²`.
    PlusMinusSquares,
    /// All of `K_v*`.
    Everything,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueBasic {
    pub kind: ResidueBasicKind,
    pub minus_one_square: Option<bool>,
    pub classes: Index,
}

impl ResidueBasic {
    /// Every tag that equals `B(T)` once lifted through `U_v → K_v*`.
    /// `idx_value` is `(K* : U_vK*²)`.
    pub fn lift(&self, idx_value: u64) -> BTreeSet<BasicTag> {
        use BasicTag::*;
        let mut tags = BTreeSet::new();
        let one_class = self.classes == Index::Finite(1);
        let two_classes = self.classes == Index::Finite(2);
        let m1_nonsquare = self.minus_one_square == Some(false);
        match self.kind {
            ResidueBasicKind::Squares => {
                tags.extend([T, PlusMinusT]);
                if one_class {
                    tags.insert(Units);
                }
            }
            ResidueBasicKind::PlusMinusSquares => {
                tags.insert(PlusMinusT);
                if self.minus_one_square == Some(true) {
                    tags.insert(T);
                }
                if two_classes && m1_nonsquare {
                    tags.insert(Units);
                }
            }
            ResidueBasicKind::Everything => {
                tags.insert(Units);
                if one_class {
                    tags.extend([T, PlusMinusT]);
                }
                if two_classes && m1_nonsquare {
                    tags.insert(PlusMinusT);
                }
            }
        }
        if idx_value == 1 && tags.contains(&Units) {
            tags.insert(All);
        }
        tags
    }
}

/// Case table for `B(K_v*²)` keyed by the residue field's kind.
pub fn residue_basic_part(residue: &FieldDescriptor) -> Result<ResidueBasic> {
    use ResidueBasicKind::*;
    let kind = match residue {
        FieldDescriptor::Finite(q) if q % 2 == 0 => Squares,
        FieldDescriptor::Finite(_) | FieldDescriptor::Real => PlusMinusSquares,
        FieldDescriptor::Complex | FieldDescriptor::AlgClosed(_) => Squares,
        FieldDescriptor::Padic { p: 2, .. } => Everything,
        FieldDescriptor::Padic { .. } => PlusMinusSquares,
        FieldDescriptor::Laurent(b) => {
            if residue.characteristic() == 2 {
                return Err(Error::UnsupportedResidue(residue.to_string()));
            }
            // Q(b((t))) is a group extension of Q(b), so its basic part is that of b.
            let inner = residue_basic_part(b)?;
            match inner.kind {
                Everything if inner.classes != Index::Finite(1) => {
                    return Err(Error::UnsupportedResidue(residue.to_string()))
                }
                Everything => Squares,
                k => k,
            }
        }
        FieldDescriptor::RationalFunction(_) => Everything,
    };
    Ok(ResidueBasic { kind, minus_one_square: residue.minus_one_is_square(), classes: residue.square_class_count() })
}

/// Compares the case table against `rigidity_report` on the built `Q(K_v)`.
/// `Ok(None)` when the residue has no finite model.
pub fn residue_basic_cross_check(residue: &FieldDescriptor) -> Result<Option<bool>> {
    let table = residue_basic_part(residue)?;
    let h = match qh_from_descriptor(residue) {
        Ok(h) => h,
        Err(Error::UnsupportedField(_) | Error::EvenCharacteristic(_) | Error::UnsupportedDyadicExtension(_)) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    let basic = rigidity_report(&h, None)?.basic;
    let expected = match table.kind {
        ResidueBasicKind::Squares => ElemSet::singleton(h.one()),
        ResidueBasicKind::PlusMinusSquares => ElemSet::singleton(h.one()).with(h.minus_one()),
        ResidueBasicKind::Everything => h.nonzero_set(),
    };
    Ok(Some(basic == expected))
}

/// `(K*:U_vK*²)`, `(U_vK*²:T)` and the tags equal to `B(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexProfile {
    pub idx_value: Index,
    pub idx_unit: Index,
    /// The preferred tag: the first of `K*`, `U_vK*²`, `±T`, `T` that equals `B(T)`.
    pub basic: BasicTag,
    /// Every tag that equals `B(T)`.
    pub basic_equal_to: BTreeSet<BasicTag>,
}

impl IndexProfile {
    pub fn basic_is(&self, tag: BasicTag) -> bool {
        self.basic_equal_to.contains(&tag)
    }
}

impl fmt::Display for IndexProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eq: Vec<String> = self.basic_equal_to.iter().map(ToString::to_string).collect();
        write!(f, "({}, {}, B(T) = {})", self.idx_value, self.idx_unit, eq.join(" = "))
    }
}

pub fn local_indices(v: &ValuationDescriptor) -> Result<IndexProfile> {
    let residue = residue_basic_part(&v.residue)?;
    let idx_value = v.gamma.two_quotient();
    let basic_equal_to = residue.lift(idx_value);
    let basic = *basic_equal_to.iter().next().expect("lift is never empty");
    Ok(IndexProfile { idx_value: Index::Finite(idx_value), idx_unit: residue.classes, basic, basic_equal_to })
}
