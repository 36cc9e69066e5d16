//! Finite-model checks of the transport of a valuation-like structure
//! `T ⊆ U ⊆ H*` along an isomorphism of hyperfields.

use std::sync::Arc;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::hyperfield::{
    check_morphism_kind, is_exceptional, quotient, rigidity_report, Elem, FiniteHyperfield, MorphismKind,
    MorphismWitness, Subgroup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    /// `B(T) = U` and `T` unexceptional.
    BasicIsUnits,
    /// `B(T) = T` and `(U : T) = 2`.
    BasicIsT,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    /// `α` induces an isomorphism `H₁/T₁ → H₂/T₂` commuting with the projections.
    pub d1: bool,
    /// The induced map restricts to an isomorphism of residue parts `U₁/T₁ → U₂/T₂`
    /// commuting with their inclusions.
    pub d2: bool,
    /// `α` induces a group isomorphism `H₁*/U₁ → H₂*/U₂`.
    pub d3: bool,
    pub index_source: usize,
    pub index_target: usize,
    pub index_inequality: bool,
    pub hypothesis: Option<Hypothesis>,
    /// Whether `α(U₁)` is the target's canonical unit subgroup, when it has one.
    pub units_canonical: Option<bool>,
}

impl TransportReport {
    pub fn all_hold(&self) -> bool {
        self.d1 && self.d2 && self.d3 && self.index_inequality
    }
}

/// Unit square classes of the hyperfields built by the quadratic module:
/// elements labelled `1`, `-1`, `u`, `-u`, `5`, `-5`.
pub fn canonical_unit_subgroup(h: &FiniteHyperfield) -> Option<Subgroup> {
    h.labels()?;
    let members: ElemSet =
        ["1", "-1", "u", "-u", "5", "-5"].iter().filter_map(|l| h.find_label(l)).collect();
    Subgroup::new(h, members).ok()
}

/// Sub-hyperfield on `r ∪ {0}` with sums intersected with `r ∪ {0}`, and its inclusion.
fn restricted(h: &Arc<FiniteHyperfield>, r: ElemSet) -> Result<MorphismWitness> {
    let r = r.with(h.zero());
    let elems = r.to_vec();
    let idx = |x: Elem| elems.iter().position(|&e| e == x);
    let closed = elems.iter().all(|&a| idx(h.neg(a)).is_some() && elems.iter().all(|&b| idx(h.mul(a, b)).is_some()));
    if !closed {
        return Err(Error::NotExtensionStructured("residue part is not closed under the operations".into()));
    }
    let labels = elems.iter().map(|&e| h.label(e)).collect();
    let sub = FiniteHyperfield::from_fns(
        elems.len(),
        idx(h.zero()).expect("zero"),
        idx(h.one()).expect("one"),
        |a| idx(h.neg(elems[a])).expect("closed"),
        |a, b| idx(h.mul(elems[a], elems[b])).expect("closed"),
        |a, b| h.sum(elems[a], elems[b]).intersection(r).iter().filter_map(idx).collect(),
        Some(labels),
    )
    .map_err(|e| Error::NotExtensionStructured(format!("residue part: {e}")))?;
    Ok(MorphismWitness::new_unchecked(Arc::new(sub), h.clone(), elems))
}

/// The inclusion of `U/T ∪ {0}` into `H/T`, required to be a group extension.
fn residue_inclusion(q: &Arc<FiniteHyperfield>, proj: &MorphismWitness, u: &Subgroup) -> Result<MorphismWitness> {
    let iota = restricted(q, proj.apply_set(u.members()))?;
    match check_morphism_kind(&iota) {
        MorphismKind::GroupExtension | MorphismKind::Isomorphism => Ok(iota),
        k => Err(Error::NotExtensionStructured(format!("residue inclusion is {k:?}"))),
    }
}

/// Induced map on classes of a surjection `p` (`None` if not well defined).
fn induced(src: &FiniteHyperfield, p: &MorphismWitness, f: impl Fn(Elem) -> Elem, n: usize) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; n];
    for x in src.elements() {
        let c = p.apply(x);
        let y = f(x);
        if map[c] == usize::MAX {
            map[c] = y;
        } else if map[c] != y {
            return None;
        }
    }
    Some(map)
}

/// Coset index of each nonzero element modulo `u` (by smallest member), and the coset count.
fn coset_ids(h: &FiniteHyperfield, u: &Subgroup) -> (Vec<usize>, usize) {
    let mut ids = vec![usize::MAX; h.order()];
    let mut n = 0;
    for x in h.nonzero() {
        if ids[x] == usize::MAX {
            for y in u.coset(h, x).iter() {
                ids[y] = n;
            }
            n += 1;
        }
    }
    (ids, n)
}

/// Checks the three commuting diagrams for `α : H₁ → H₂`, `T₁ ⊆ U₁`.
/// `U₁` defaults to the subgroup generated by `B(T₁)`.
pub fn transport_check(alpha: &MorphismWitness, t1: &Subgroup, u1: Option<&Subgroup>) -> Result<TransportReport> {
    if !alpha.is_isomorphism() {
        return Err(Error::NotIso(format!("{alpha:?}")));
    }
    let (h1, h2) = (alpha.source(), alpha.target());
    let t1 = Subgroup::new(h1, t1.members())?;
    let basic1 = rigidity_report(h1, Some(&t1))?.basic;
    let u1 = match u1 {
        Some(u) => Subgroup::new(h1, u.members())?,
        None => Subgroup::generated_by(h1, &basic1.to_vec())?,
    };
    if !t1.members().is_subset(u1.members()) {
        return Err(Error::NotExtensionStructured("T is not contained in U".into()));
    }
    let t2 = Subgroup::new(h2, alpha.apply_set(t1.members()))?;
    let u2 = Subgroup::new(h2, alpha.apply_set(u1.members()))?;

    let (q1, p1) = quotient(h1, &t1)?;
    let (q2, p2) = quotient(h2, &t2)?;
    let (q1, q2) = (Arc::new(q1), Arc::new(q2));

    // (d1)
    let bar = induced(h1, &p1, |x| p2.apply(alpha.apply(x)), q1.order())
        .and_then(|m| MorphismWitness::new(q1.clone(), q2.clone(), m).ok());
    let d1 = bar.as_ref().is_some_and(|b| {
        b.is_isomorphism() && h1.elements().all(|x| b.apply(p1.apply(x)) == p2.apply(alpha.apply(x)))
    });

    // (d2)
    let i1 = residue_inclusion(&q1, &p1, &u1)?;
    let i2 = residue_inclusion(&q2, &p2, &u2)?;
    let d2 = bar.as_ref().is_some_and(|b| {
        let (r1, r2) = (i1.source(), i2.source());
        let rho: Option<Vec<Elem>> = r1
            .elements()
            .map(|x| {
                let y = b.apply(i1.apply(x));
                r2.elements().find(|&z| i2.apply(z) == y)
            })
            .collect();
        rho.and_then(|m| MorphismWitness::new(i1.source_arc(), i2.source_arc(), m).ok())
            .is_some_and(|rho| {
                rho.is_isomorphism() && r1.elements().all(|x| i2.apply(rho.apply(x)) == b.apply(i1.apply(x)))
            })
    });

    // (d3)
    let (c1, n1) = coset_ids(h1, &u1);
    let (c2, n2) = coset_ids(h2, &u2);
    let mut gamma = vec![usize::MAX; n1];
    let mut well_defined = true;
    for x in h1.nonzero() {
        let y = c2[alpha.apply(x)];
        if gamma[c1[x]] == usize::MAX {
            gamma[c1[x]] = y;
        } else if gamma[c1[x]] != y {
            well_defined = false;
        }
    }
    let bijective = {
        let mut seen = gamma.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == n2 && n1 == n2
    };
    let homomorphic = h1
        .nonzero()
        .all(|x| h1.nonzero().all(|y| gamma[c1[h1.mul(x, y)]] == c2[h2.mul(alpha.apply(x), alpha.apply(y))]));
    let d3 = well_defined && bijective && homomorphic;

    let hypothesis = if basic1 == u1.members() && !is_exceptional(&q1) {
        Some(Hypothesis::BasicIsUnits)
    } else if basic1 == t1.members() && u1.len() == 2 * t1.len() {
        Some(Hypothesis::BasicIsT)
    } else {
        None
    };
    let units_canonical = canonical_unit_subgroup(h2).map(|c| c.members() == u2.members());
    Ok(TransportReport {
        d1,
        d2,
        d3,
        index_source: n1,
        index_target: n2,
        index_inequality: n2 >= n1,
        hypothesis,
        units_canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::{automorphisms, find_isomorphism};
    use crate::quadratic::{qh_laurent, qh_padic};

    fn identity(h: &FiniteHyperfield) -> MorphismWitness {
        let a = Arc::new(h.clone());
        MorphismWitness::new(a.clone(), a, h.elements().collect()).unwrap()
    }

    #[test]
    fn identity_on_q3_with_unit_classes() {
        let h = qh_padic(3).unwrap();
        let t1 = canonical_unit_subgroup(&h).unwrap();
        assert_eq!(t1.len(), 2);
        let r = transport_check(&identity(&h), &t1, None).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.index_source, 2);
    }

    #[test]
    fn automorphisms_of_q5_swapping_uniformizers() {
        let h = qh_padic(5).unwrap();
        let units = canonical_unit_subgroup(&h).unwrap();
        let (p, up) = (h.find_label("p").unwrap(), h.find_label("up").unwrap());
        let swap = automorphisms(&h)
            .into_iter()
            .find(|a| a.apply(p) == up && a.apply(up) == p)
            .expect("uniformizer swap");
        let r = transport_check(&swap, &Subgroup::trivial(&h), Some(&units)).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.units_canonical, Some(true));
        assert_eq!(r.hypothesis, Some(Hypothesis::BasicIsT));
    }

    #[test]
    fn laurent_to_padic() {
        let (l, q) = (qh_laurent(3).unwrap(), qh_padic(3).unwrap());
        let alpha = find_isomorphism(&l, &q).unwrap();
        let units = canonical_unit_subgroup(&l).unwrap();
        let r = transport_check(&alpha, &Subgroup::trivial(&l), Some(&units)).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.units_canonical, Some(true));
        assert_eq!(r.hypothesis, Some(Hypothesis::BasicIsUnits));
    }

    #[test]
    fn rejects_non_isomorphisms_and_bad_structure() {
        let h = qh_padic(3).unwrap();
        let a = Arc::new(h.clone());
        let collapse = MorphismWitness::new_unchecked(a.clone(), a, vec![0, 1, 1, 1, 1]);
        assert!(matches!(transport_check(&collapse, &Subgroup::trivial(&h), None), Err(Error::NotIso(_))));
        // {0, 1, p} is not closed under negation.
        let up = Subgroup::generated_by(&h, &[h.find_label("p").unwrap()]).unwrap();
        assert!(matches!(
            transport_check(&identity(&h), &Subgroup::trivial(&h), Some(&up)),
            Err(Error::NotExtensionStructured(_))
        ));
    }
}
