use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::descriptor::{Restriction, ValuationDescriptor, ValueGroup};
use super::indices::{local_indices, BasicTag};
use crate::error::Result;
use crate::quadratic::{FieldDescriptor, Index};

/// The four index-profile families of valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Mu {
    #[serde(rename = "mu0")]
    Mu0,
    #[serde(rename = "mu1")]
    Mu1,
    #[serde(rename = "mu2")]
    Mu2,
    #[serde(rename = "mu3")]
    Mu3,
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as u8;
        write!(f, "μ{i}")
    }
}

/// Evaluates the defining index conditions of each family.
pub fn mu_membership(v: &ValuationDescriptor) -> Result<Option<Mu>> {
    let p = local_indices(v)?;
    let units = p.basic_is(BasicTag::Units);
    let m = match (p.idx_value, p.idx_unit) {
        (Index::Finite(2), Index::Finite(n)) if n >= 8 && units => Some(Mu::Mu0),
        (Index::Finite(2), Index::Infinite) if units => Some(Mu::Mu1),
        (Index::Finite(4), Index::Finite(2)) if units => Some(Mu::Mu2),
        (Index::Finite(4), Index::Finite(2)) if p.basic_is(BasicTag::T) => Some(Mu::Mu3),
        _ => None,
    };
    Ok(m)
}

/// Which families are nonempty for valuations on `k(t)`, `k` local of
/// characteristic ≠ 2.
///
/// `μ2` needs a residue field `F_q` with `q ≡ 3 mod 4` among the finite
/// extensions of `k`'s residue field, `μ3` one with `q ≡ 1 mod 4`.
pub fn mu_nonempty(k: &FieldDescriptor) -> BTreeSet<Mu> {
    let mut out = BTreeSet::new();
    if k.is_dyadic() {
        out.insert(Mu::Mu0);
    }
    if k.is_nonarchimedean_local() {
        out.insert(Mu::Mu1);
    }
    if k.is_nondyadic_local() {
        let q = match k.residue_field() {
            Some(FieldDescriptor::Finite(q)) => q,
            _ => unreachable!("nondyadic local fields have finite residue fields"),
        };
        if q % 4 == 3 {
            out.insert(Mu::Mu2);
        }
        out.insert(Mu::Mu3);
    }
    out
}

/// The coarse statements: `μ0 ≠ ∅` iff dyadic, `μ1 ≠ ∅` iff non-archimedean,
/// `μ2 ∪ μ3 ≠ ∅` iff nondyadic non-archimedean.
pub fn mu_coarse(k: &FieldDescriptor) -> [bool; 3] {
    [k.is_dyadic(), k.is_nonarchimedean_local(), k.is_nondyadic_local()]
}

/// Collapses a refined set to the coarse statements.
pub fn collapse(set: &BTreeSet<Mu>) -> [bool; 3] {
    [set.contains(&Mu::Mu0), set.contains(&Mu::Mu1), set.contains(&Mu::Mu2) || set.contains(&Mu::Mu3)]
}

/// Every descriptor shape supported over `k(t)`, with residue fields drawn
/// from `k`'s residue field and one quadratic extension of it.
pub fn witness_descriptors(k: &FieldDescriptor) -> Vec<ValuationDescriptor> {
    let mut out = Vec::new();
    let mut push = |g: ValueGroup, r: FieldDescriptor, res: Restriction| {
        if let Ok(v) = ValuationDescriptor::new(g, r, res, k.clone()) {
            out.push(v);
        }
    };
    let kt = FieldDescriptor::RationalFunction(Box::new(k.clone()));
    push(ValueGroup::Trivial, kt, Restriction::Trivial);
    let mut finite_ext = vec![k.clone()];
    finite_ext.extend(k.quadratic_extension());
    for r in &finite_ext {
        push(ValueGroup::Z, r.clone(), Restriction::Trivial);
    }
    if let Some(kres) = k.residue_field() {
        let mut res = vec![kres.clone()];
        res.extend(kres.quadratic_extension());
        for r in &res {
            for g in [
                ValueGroup::Z,
                ValueGroup::ZxZ,
                ValueGroup::RationalSubgroup { two_divisible: true },
                ValueGroup::RationalSubgroup { two_divisible: false },
            ] {
                push(g, r.clone(), Restriction::V0);
            }
            push(ValueGroup::Z, FieldDescriptor::RationalFunction(Box::new(r.clone())), Restriction::V0);
        }
    }
    let ac = match k.residue_field() {
        Some(r) => FieldDescriptor::AlgClosed(r.characteristic()),
        None => FieldDescriptor::AlgClosed(0),
    };
    push(ValueGroup::DivisibleZ, ac.clone(), Restriction::Exotic);
    push(ValueGroup::Divisible, ac.clone(), Restriction::Exotic);
    push(ValueGroup::Divisible, FieldDescriptor::RationalFunction(Box::new(ac)), Restriction::Exotic);
    out
}

/// Union of [`mu_membership`] over [`witness_descriptors`].
pub fn mu_from_witnesses(k: &FieldDescriptor) -> Result<BTreeSet<Mu>> {
    let mut out = BTreeSet::new();
    for v in witness_descriptors(k) {
        out.extend(mu_membership(&v)?);
    }
    Ok(out)
}
