use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{quotient, Elem, FiniteHyperfield, Subgroup};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// A map between finite hyperfields, stored as an element table.
#[derive(Clone, PartialEq, Eq)]
pub struct MorphismWitness {
    source: Arc<FiniteHyperfield>,
    target: Arc<FiniteHyperfield>,
    map: Vec<Elem>,
}

impl MorphismWitness {
    /// Checks the morphism laws and fails with the first violation.
    pub fn new(source: Arc<FiniteHyperfield>, target: Arc<FiniteHyperfield>, map: Vec<Elem>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, map);
        match m.law_violation() {
            Some(w) => Err(Error::NotAMorphism(w)),
            None => Ok(m),
        }
    }

    /// Wraps a map without checking anything beyond its shape.
    pub fn new_unchecked(source: Arc<FiniteHyperfield>, target: Arc<FiniteHyperfield>, map: Vec<Elem>) -> Self {
        MorphismWitness { source, target, map }
    }

    pub fn source(&self) -> &FiniteHyperfield {
        &self.source
    }

    pub fn target(&self) -> &FiniteHyperfield {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<FiniteHyperfield> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<FiniteHyperfield> {
        self.target.clone()
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn apply_set(&self, s: ElemSet) -> ElemSet {
        s.map(|x| self.map[x])
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = ElemSet::EMPTY;
        self.map.iter().all(|&y| {
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.map.iter().copied().collect::<ElemSet>() == self.target.all()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MorphismWitness) -> Result<MorphismWitness> {
        if *self.target != *other.source {
            return Err(Error::NotAMorphism("composition of incompatible maps".into()));
        }
        let map = self.map.iter().map(|&x| other.apply(x)).collect();
        Ok(MorphismWitness::new_unchecked(self.source.clone(), other.target.clone(), map))
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<MorphismWitness> {
        if self.map.len() != self.target.order() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(MorphismWitness::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }

    /// Whether this is a bijection whose inverse is also a morphism.
    pub fn is_isomorphism(&self) -> bool {
        self.law_violation().is_none() && self.inverse().is_some_and(|i| i.law_violation().is_none())
    }

    /// First violated morphism law, described with element labels.
    pub fn law_violation(&self) -> Option<String> {
        let (s, t) = (&*self.source, &*self.target);
        if self.map.len() != s.order() || self.map.iter().any(|&y| y >= t.order()) {
            return Some("map is partial or out of range".into());
        }
        let f = |x| self.map[x];
        if f(s.zero()) != t.zero() {
            return Some("0 is not mapped to 0".into());
        }
        if f(s.one()) != t.one() {
            return Some("1 is not mapped to 1".into());
        }
        for a in s.elements() {
            if f(s.neg(a)) != t.neg(f(a)) {
                return Some(format!("neg not preserved at {}", s.label(a)));
            }
            for b in s.elements() {
                if f(s.mul(a, b)) != t.mul(f(a), f(b)) {
                    return Some(format!("mul not preserved at ({}, {})", s.label(a), s.label(b)));
                }
                if !self.apply_set(s.sum(a, b)).is_subset(t.sum(f(a), f(b))) {
                    return Some(format!("image of {} + {} not contained in the image sum", s.label(a), s.label(b)));
                }
            }
        }
        None
    }

    /// Kernel `{x ∈ H₁* : ι(x) = 1}`.
    pub fn kernel(&self) -> ElemSet {
        self.source.nonzero().filter(|&x| self.map[x] == self.target.one()).collect()
    }
}

impl fmt::Debug for MorphismWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MorphismWitness(")?;
        for (x, &y) in self.map.iter().enumerate() {
            if x > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.source.label(x), self.target.label(y))?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MorphismKind {
    /// Both a quotient morphism and a group extension, i.e. an isomorphism.
    Isomorphism,
    Quotient,
    GroupExtension,
    Plain,
    /// The map breaks a morphism law; the string names the first witness.
    Invalid(String),
}

/// Quotient test: `ι` surjective and the induced map `H₁/_mΔ → H₂` an isomorphism.
fn is_quotient_morphism(m: &MorphismWitness) -> bool {
    if !m.is_surjective() {
        return false;
    }
    let s = m.source();
    let Ok(delta) = Subgroup::new(s, m.kernel()) else {
        return false;
    };
    let Ok((q, proj)) = quotient(s, &delta) else {
        return false;
    };
    let mut induced = vec![usize::MAX; q.order()];
    for x in s.elements() {
        let c = proj.apply(x);
        if induced[c] == usize::MAX {
            induced[c] = m.apply(x);
        } else if induced[c] != m.apply(x) {
            return false;
        }
    }
    let ind = MorphismWitness::new_unchecked(Arc::new(q.clone()), m.target_arc(), induced);
    if !ind.is_injective() || ind.map.len() != m.target().order() {
        return false;
    }
    q.elements().all(|i| q.elements().all(|j| ind.apply_set(q.sum(i, j)) == m.target().sum(ind.apply(i), ind.apply(j))))
}

fn is_group_extension(m: &MorphismWitness) -> bool {
    if !m.is_injective() {
        return false;
    }
    let (s, t) = (m.source(), m.target());
    let image: ElemSet = m.map.iter().copied().collect();
    let one = t.one();
    let rigid_outside = t
        .nonzero()
        .filter(|&x| !image.contains(x))
        .all(|x| t.sum(one, x).is_subset(ElemSet::singleton(one).with(x)));
    rigid_outside
        && s.elements()
            .filter(|&y| y != s.minus_one())
            .all(|y| m.apply_set(s.sum(s.one(), y)) == t.sum(one, m.apply(y)))
}

/// Classifies a map as a quotient morphism, a group extension, both, or neither.
pub fn check_morphism_kind(m: &MorphismWitness) -> MorphismKind {
    if let Some(w) = m.law_violation() {
        return MorphismKind::Invalid(w);
    }
    match (is_quotient_morphism(m), is_group_extension(m)) {
        (true, true) => MorphismKind::Isomorphism,
        (true, false) => MorphismKind::Quotient,
        (false, true) => MorphismKind::GroupExtension,
        (false, false) => MorphismKind::Plain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::krasner;
    use crate::quadratic::{qh_finite_field, qh_padic, qh_real};

    #[test]
    fn projection_is_a_quotient_morphism() {
        let h = qh_padic(3).unwrap();
        let t = Subgroup::generated_by(&h, &[h.minus_one()]).unwrap();
        let (_, proj) = quotient(&h, &t).unwrap();
        assert_eq!(check_morphism_kind(&proj), MorphismKind::Quotient);
        let (_, proj) = quotient(&h, &Subgroup::whole(&h)).unwrap();
        assert_eq!(check_morphism_kind(&proj), MorphismKind::Quotient);
    }

    #[test]
    fn unit_embedding_is_a_group_extension() {
        let f3 = Arc::new(qh_finite_field(3).unwrap());
        let q3 = Arc::new(qh_padic(3).unwrap());
        let map = vec![q3.zero(), q3.one(), q3.minus_one()];
        let m = MorphismWitness::new(f3, q3, map).unwrap();
        assert_eq!(check_morphism_kind(&m), MorphismKind::GroupExtension);
    }

    #[test]
    fn constant_map_is_invalid() {
        let r = Arc::new(qh_real());
        let m = MorphismWitness::new_unchecked(r.clone(), r.clone(), vec![0, 1, 1]);
        assert!(matches!(check_morphism_kind(&m), MorphismKind::Invalid(_)));
        assert!(matches!(MorphismWitness::new(r.clone(), r, vec![0, 1, 1]), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let h = Arc::new(qh_padic(5).unwrap());
        let id = MorphismWitness::new(h.clone(), h.clone(), h.elements().collect()).unwrap();
        assert_eq!(check_morphism_kind(&id), MorphismKind::Isomorphism);
        assert!(id.is_isomorphism());
    }

    #[test]
    fn map_to_krasner_is_plain_or_quotient() {
        let r = Arc::new(qh_real());
        let k = Arc::new(krasner());
        let m = MorphismWitness::new(r, k, vec![0, 1, 1]).unwrap();
        assert_eq!(check_morphism_kind(&m), MorphismKind::Quotient);
    }
}
