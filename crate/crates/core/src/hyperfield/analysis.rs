use std::fmt;

use serde::Serialize;

use super::{quotient, Elem, FiniteHyperfield, Subgroup};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// `D⟨a, b⟩`: the nonzero part of `a + b`.
pub fn value_set(h: &FiniteHyperfield, a: Elem, b: Elem) -> Result<ElemSet> {
    if a == h.zero() || b == h.zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(h.sum(a, b).without(h.zero()))
}

/// `⟨a, b⟩ ≈ ⟨c, d⟩` iff `c ∈ D⟨a, b⟩` and `ab = cd`.
pub fn forms_equivalent(h: &FiniteHyperfield, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<bool> {
    if [c, d].contains(&h.zero()) {
        return Err(Error::ZeroArgument);
    }
    Ok(value_set(h, a, b)?.contains(c) && h.mul(a, b) == h.mul(c, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    /// Elements `x` with `1 + x ⊆ {1, x}` (computed in the quotient when a
    /// subgroup was given, then pulled back).
    pub rigid: ElemSet,
    /// Rigid elements where the inclusion is an equality.
    pub rigid_exact: ElemSet,
    /// The basic part: `x` such that `x` or `−x` is not rigid.
    pub basic: ElemSet,
}

fn rigidity_in(h: &FiniteHyperfield) -> (ElemSet, ElemSet, ElemSet) {
    let one = h.one();
    let mut rigid = ElemSet::EMPTY;
    let mut exact = ElemSet::EMPTY;
    for x in h.nonzero() {
        let s = h.sum(one, x);
        let target = ElemSet::singleton(one).with(x);
        if s.is_subset(target) {
            rigid.insert(x);
            if s == target {
                exact.insert(x);
            }
        }
    }
    let basic = h.nonzero().filter(|&x| !rigid.contains(x) || !rigid.contains(h.neg(x))).collect();
    (rigid, exact, basic)
}

/// Rigid elements and basic part of `h`, or of `h/_m T` pulled back to `h`.
pub fn rigidity_report(h: &FiniteHyperfield, t: Option<&Subgroup>) -> Result<RigidityReport> {
    match t {
        None => {
            let (rigid, rigid_exact, basic) = rigidity_in(h);
            Ok(RigidityReport { rigid, rigid_exact, basic })
        }
        Some(t) => {
            let (q, proj) = quotient(h, t)?;
            let (r, e, b) = rigidity_in(&q);
            let pull = |s: ElemSet| h.nonzero().filter(|&x| s.contains(proj.apply(x))).collect();
            Ok(RigidityReport { rigid: pull(r), rigid_exact: pull(e), basic: pull(b) })
        }
    }
}

/// Whether the trivial subgroup of `h` is exceptional: `B = {±1}` and either
/// `−1 = 1` or `1 + 1 = {1}`.
pub fn is_exceptional(h: &FiniteHyperfield) -> bool {
    let (_, _, basic) = rigidity_in(h);
    let pm = ElemSet::singleton(h.one()).with(h.minus_one());
    basic == pm && (h.minus_one() == h.one() || h.sum(h.one(), h.one()) == ElemSet::singleton(h.one()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Level {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Infinite => write!(f, "infinity"),
        }
    }
}

/// Least `n` with `−1 ∈ 1 + ⋯ + 1` (`n` terms); iteration stops at `order²`.
pub fn level(h: &FiniteHyperfield) -> Level {
    let target = h.minus_one();
    let mut sums = ElemSet::singleton(h.one());
    let cap = h.order() * h.order();
    for n in 1..=cap.max(1) {
        if sums.contains(target) {
            return Level::Finite(n);
        }
        sums = h.sum_set(sums, h.one());
    }
    Level::Infinite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::{qh_complex, qh_finite_field, qh_padic, qh_real};

    #[test]
    fn value_sets() {
        let f3 = qh_finite_field(3).unwrap();
        assert_eq!(value_set(&f3, 1, 1).unwrap(), ElemSet::from_iter_elems([1, 2]));
        let r = qh_real();
        assert_eq!(value_set(&r, 1, 1).unwrap(), ElemSet::singleton(1));
        let q3 = qh_padic(3).unwrap();
        assert_eq!(value_set(&q3, 1, q3.minus_one()).unwrap(), q3.nonzero_set());
        assert_eq!(value_set(&q3, 0, 1), Err(Error::ZeroArgument));
    }

    #[test]
    fn form_equivalence() {
        let f3 = qh_finite_field(3).unwrap();
        let m1 = f3.minus_one();
        assert!(forms_equivalent(&f3, 1, 1, m1, m1).unwrap());
        let r = qh_real();
        assert!(!forms_equivalent(&r, 1, 1, 1, r.minus_one()).unwrap());
        for h in [f3, r, qh_padic(5).unwrap()] {
            for a in h.nonzero() {
                for b in h.nonzero() {
                    assert!(forms_equivalent(&h, a, b, a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn rigidity_of_small_examples() {
        let r = qh_real();
        let rep = rigidity_report(&r, None).unwrap();
        assert_eq!(rep.rigid, ElemSet::singleton(1));
        assert_eq!(rep.basic, ElemSet::from_iter_elems([1, 2]));
        let f3 = qh_finite_field(3).unwrap();
        assert_eq!(rigidity_report(&f3, None).unwrap().basic, f3.nonzero_set());
        // Q(Q_3): the uniformizer classes p and -p are rigid, so B = {±1}.
        let q3 = qh_padic(3).unwrap();
        let rep = rigidity_report(&q3, None).unwrap();
        let p = q3.find_label("p").unwrap();
        let up = q3.find_label("up").unwrap();
        assert_eq!(rep.rigid, ElemSet::from_iter_elems([p, up]));
        assert_eq!(rep.rigid_exact, rep.rigid);
        assert_eq!(rep.basic, ElemSet::from_iter_elems([q3.one(), q3.minus_one()]));
    }

    #[test]
    fn exceptional_subgroups() {
        assert!(is_exceptional(&qh_real()));
        assert!(!is_exceptional(&qh_finite_field(3).unwrap()));
        assert!(!is_exceptional(&qh_padic(3).unwrap()));
        assert!(is_exceptional(&qh_complex()));
    }

    #[test]
    fn levels() {
        assert_eq!(level(&qh_complex()), Level::Finite(1));
        assert_eq!(level(&qh_finite_field(3).unwrap()), Level::Finite(2));
        assert_eq!(level(&qh_finite_field(5).unwrap()), Level::Finite(1));
        assert_eq!(level(&qh_real()), Level::Infinite);
        assert_eq!(level(&qh_padic(2).unwrap()), Level::Finite(4));
    }
}
