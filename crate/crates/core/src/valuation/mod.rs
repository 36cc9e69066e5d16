//! Symbolic valuations on function fields in one variable over a local
//! field: index profiles, case classification, the μ families, and
//! finite-model transport checks.

mod cases;
mod descriptor;
mod indices;
mod mu;
mod transport;

pub use cases::{
    case_representatives, classify_and_compare, classify_case, AssertedIndex, AssertedProfile, Case, CaseReport,
    Classification,
};
pub use descriptor::{Restriction, ValuationDescriptor, ValueGroup};
pub use indices::{
    local_indices, residue_basic_cross_check, residue_basic_part, BasicTag, IndexProfile, ResidueBasic,
    ResidueBasicKind,
};
pub use mu::{collapse, mu_coarse, mu_from_witnesses, mu_membership, mu_nonempty, witness_descriptors, Mu};
pub use transport::{canonical_unit_subgroup, transport_check, Hypothesis, TransportReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadratic::FieldDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbhyankarStatus {
    Abhyankar,
    StrictInequality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AbhyankarReport {
    pub rank: u32,
    pub residue_trdeg: u32,
    pub trdeg: u32,
    pub status: AbhyankarStatus,
}

/// Compares `rk_Q(Γ_v/Γ_{v|k}) + trdeg(K_v : k_{v|k})` with `trdeg(K : k)`.
pub fn abhyankar_status(v: &ValuationDescriptor, trdeg: u32) -> Result<AbhyankarReport> {
    let (rank, residue_trdeg) = (v.relative_rational_rank(), v.residue_trdeg());
    let status = match (rank + residue_trdeg).cmp(&trdeg) {
        std::cmp::Ordering::Equal => AbhyankarStatus::Abhyankar,
        std::cmp::Ordering::Less => AbhyankarStatus::StrictInequality,
        std::cmp::Ordering::Greater => {
            return Err(Error::InvalidDescriptor(format!(
                "{v}: rank {rank} plus residue trdeg {residue_trdeg} exceeds trdeg {trdeg}"
            )))
        }
    };
    Ok(AbhyankarReport { rank, residue_trdeg, trdeg, status })
}

/// Nominal transcendence degree: `trdeg(K : Q)` in characteristic 0,
/// `trdeg(K : F_p) − 1` in characteristic `p`. `None` when the tag does not
/// pin it down as a finite number (e.g. `R`, `Q_p`).
pub fn ntd(k: &FieldDescriptor) -> Option<i64> {
    let t = i64::from(k.trdeg_over_prime()?);
    Some(if k.characteristic() == 0 { t } else { t - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abhyankar_examples() {
        let v = ValuationDescriptor::from_strs("Z", "Qp:3", "trivial", "Qp:3").unwrap();
        assert_eq!(abhyankar_status(&v, 1).unwrap().status, AbhyankarStatus::Abhyankar);
        let v = ValuationDescriptor::from_strs("Q", "F3", "v0", "Qp:3").unwrap();
        assert_eq!(abhyankar_status(&v, 1).unwrap().status, AbhyankarStatus::StrictInequality);
        let v = ValuationDescriptor::from_strs("ZxZ", "F3", "v0", "Qp:3").unwrap();
        assert!(abhyankar_status(&v, 0).is_err());
        for (case, v) in case_representatives() {
            let s = abhyankar_status(&v, 1).unwrap().status;
            assert_eq!(s == AbhyankarStatus::Abhyankar, case.is_abhyankar(), "{case}");
        }
    }

    #[test]
    fn ntd_values() {
        assert_eq!(ntd(&"F5(t)".parse().unwrap()), Some(0));
        assert_eq!(ntd(&"F5".parse().unwrap()), Some(-1));
        assert_eq!(ntd(&"F5(t)(u)".parse().unwrap()), Some(1));
        assert_eq!(ntd(&"R".parse().unwrap()), None);
    }
}
