use std::sync::Arc;

use super::{Elem, FiniteHyperfield, MorphismWitness};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// A multiplicative subgroup `T` of `H*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElemSet,
}

impl Subgroup {
    pub fn new(h: &FiniteHyperfield, members: ElemSet) -> Result<Self> {
        if !members.contains(h.one()) {
            return Err(Error::NotASubgroup("does not contain 1".into()));
        }
        if members.contains(h.zero()) {
            return Err(Error::NotASubgroup("contains 0".into()));
        }
        if !members.is_subset(h.all()) {
            return Err(Error::NotASubgroup("member out of range".into()));
        }
        for a in members.iter() {
            match h.inv(a) {
                Some(i) if members.contains(i) => {}
                _ => return Err(Error::NotASubgroup(format!("not closed under inverse at {}", h.label(a)))),
            }
            for b in members.iter() {
                if !members.contains(h.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed under multiplication at ({}, {})",
                        h.label(a),
                        h.label(b)
                    )));
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn trivial(h: &FiniteHyperfield) -> Self {
        Subgroup { members: ElemSet::singleton(h.one()) }
    }

    pub fn whole(h: &FiniteHyperfield) -> Self {
        Subgroup { members: h.nonzero_set() }
    }

    /// Subgroup generated by the given nonzero elements.
    pub fn generated_by(h: &FiniteHyperfield, gens: &[Elem]) -> Result<Self> {
        if gens.iter().any(|&g| g == h.zero() || g >= h.order()) {
            return Err(Error::NotASubgroup("generators must be nonzero elements".into()));
        }
        let mut members = ElemSet::singleton(h.one());
        loop {
            let mut next = members;
            for a in members.iter() {
                for &g in gens {
                    next.insert(h.mul(a, g));
                }
            }
            if next == members {
                break;
            }
            members = next;
        }
        Subgroup::new(h, members)
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether `-T = T`.
    pub fn is_symmetric(&self, h: &FiniteHyperfield) -> bool {
        self.members.contains(h.minus_one())
    }

    /// The coset `xT`.
    pub fn coset(&self, h: &FiniteHyperfield, x: Elem) -> ElemSet {
        h.mul_set(self.members, x)
    }
}

/// The prime of `h`: adds `{a, b}` to `a + b` for independent nonzero `a, b`
/// and makes `a + (−a)` the whole hyperfield.
pub fn prime(h: &FiniteHyperfield) -> FiniteHyperfield {
    let zero = h.zero();
    h.replace_sums(|a, b| {
        if a == zero || b == zero {
            h.sum(a, b)
        } else if b == h.neg(a) {
            h.all()
        } else {
            h.sum(a, b).with(a).with(b)
        }
    })
}

/// The quotient hyperfield `H/_m T` together with the projection.
///
/// Class 0 is `{0}`, class 1 is `T`; the remaining cosets follow in order of
/// their smallest member. `ā ∈ b̄ + c̄` iff `as ∈ bt + cu` for some
/// `s, t, u ∈ T`, found by exhaustive search over `T`.
pub fn quotient(h: &FiniteHyperfield, t: &Subgroup) -> Result<(FiniteHyperfield, MorphismWitness)> {
    let t = Subgroup::new(h, t.members())?;
    let n = h.order();
    let mut class = vec![usize::MAX; n];
    let mut reps = vec![h.zero(), h.one()];
    class[h.zero()] = 0;
    for x in t.members().iter() {
        class[x] = 1;
    }
    for x in 0..n {
        if class[x] == usize::MAX {
            let id = reps.len();
            for y in t.coset(h, x).iter() {
                class[y] = id;
            }
            reps.push(x);
        }
    }
    let m = reps.len();
    let to_classes = |s: ElemSet| s.map(|x| class[x]);
    let sum = |i: usize, j: usize| {
        let (b, c) = (reps[i], reps[j]);
        let mut out = ElemSet::EMPTY;
        for tt in t.members().iter() {
            for uu in t.members().iter() {
                out = out.union(h.sum(h.mul(b, tt), h.mul(c, uu)));
            }
        }
        to_classes(out)
    };
    let labels = reps.iter().map(|&r| h.label(r)).collect();
    let q = FiniteHyperfield::from_fns(
        m,
        0,
        1,
        |i| class[h.neg(reps[i])],
        |i, j| class[h.mul(reps[i], reps[j])],
        sum,
        Some(labels),
    )?;
    let q = Arc::new(q);
    let projection = MorphismWitness::new_unchecked(Arc::new(h.clone()), q.clone(), class);
    Ok(((*q).clone(), projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::{find_isomorphism, krasner, validate_axioms};
    use crate::quadratic::{qh_finite_field, qh_padic, qh_real};

    #[test]
    fn prime_of_real_signs_is_unchanged() {
        let r = qh_real();
        assert_eq!(prime(&r), r);
    }

    #[test]
    fn quotient_by_everything_is_krasner() {
        let h = qh_padic(3).unwrap();
        let (q, _) = quotient(&h, &Subgroup::whole(&h)).unwrap();
        assert!(find_isomorphism(&q, &krasner()).is_some());
    }

    #[test]
    fn quotient_by_trivial_is_a_copy() {
        let h = qh_padic(7).unwrap();
        let (q, proj) = quotient(&h, &Subgroup::trivial(&h)).unwrap();
        assert!(find_isomorphism(&q, &h).is_some());
        assert_eq!(proj.map().len(), 5);
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let h = qh_padic(3).unwrap();
        let p = h.find_label("p").unwrap();
        let bad = ElemSet::from_iter_elems([h.one(), p, h.minus_one()]);
        assert!(matches!(quotient(&h, &Subgroup { members: bad }), Err(Error::NotASubgroup(_))));
        assert!(Subgroup::new(&h, ElemSet::singleton(p)).is_err());
    }

    #[test]
    fn generated_subgroups() {
        let h = qh_padic(3).unwrap();
        let g = Subgroup::generated_by(&h, &[h.minus_one()]).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.is_symmetric(&h));
        assert!(validate_axioms(&quotient(&h, &g).unwrap().0).is_valid());
        let f3 = qh_finite_field(3).unwrap();
        assert_eq!(Subgroup::generated_by(&f3, &[2]).unwrap().len(), 2);
    }
}
