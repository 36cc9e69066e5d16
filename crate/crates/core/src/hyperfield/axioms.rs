use std::fmt;

use serde::Serialize;

use super::{Elem, FiniteHyperfield};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    /// (I)(1): `c ∈ a+b ⇒ a ∈ c+(−b)`.
    Reversibility,
    /// (I)(2): `a ∈ b+0 ⇔ a = b`.
    Neutral,
    /// (I)(3)
    AddAssociativity,
    /// (I)(4)
    AddCommutativity,
    /// (II)(1)
    MulAssociativity,
    /// (II)(2)
    MulCommutativity,
    /// (II)(3)
    MulIdentity,
    /// (III)
    ZeroAbsorbs,
    /// (IV): `a(b+c) ⊆ ab+ac`.
    Distributivity,
    /// (V): `1 ≠ 0` and nonzero elements are invertible.
    Inverses,
    /// `neg` is an involution fixing 0.
    NegInvolution,
    /// `0 ∈ a+b ⇔ b = −a`.
    ZeroSum,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Reversibility => "(I)(1)",
            Axiom::Neutral => "(I)(2)",
            Axiom::AddAssociativity => "(I)(3)",
            Axiom::AddCommutativity => "(I)(4)",
            Axiom::MulAssociativity => "(II)(1)",
            Axiom::MulCommutativity => "(II)(2)",
            Axiom::MulIdentity => "(II)(3)",
            Axiom::ZeroAbsorbs => "(III)",
            Axiom::Distributivity => "(IV)",
            Axiom::Inverses => "(V)",
            Axiom::NegInvolution => "neg-involution",
            Axiom::ZeroSum => "zero-sum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// First witnessing tuple found (pair or triple of elements).
    pub witness: Vec<Elem>,
    /// Number of failing tuples for this axiom.
    pub count: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "all axioms hold");
        }
        for v in &self.violations {
            writeln!(f, "{} violated {} time(s), witness {:?}", v.axiom.tag(), v.count, v.witness)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Collector {
    found: Vec<Violation>,
}

impl Collector {
    fn fail(&mut self, axiom: Axiom, witness: &[Elem]) {
        match self.found.iter_mut().find(|v| v.axiom == axiom) {
            Some(v) => v.count += 1,
            None => self.found.push(Violation { axiom, witness: witness.to_vec(), count: 1 }),
        }
    }
}

/// Checks axioms (I)–(V) plus the derived facts about negation.
pub fn validate_axioms(h: &FiniteHyperfield) -> ValidationReport {
    let n = h.order();
    let zero = h.zero();
    let one = h.one();
    let mut c = Collector::default();

    for a in 0..n {
        let na = h.neg(a);
        if h.neg(na) != a {
            c.fail(Axiom::NegInvolution, &[a]);
        }
        if h.mul(a, one) != a {
            c.fail(Axiom::MulIdentity, &[a]);
        }
        if h.mul(a, zero) != zero {
            c.fail(Axiom::ZeroAbsorbs, &[a]);
        }
        for b in 0..n {
            let s = h.sum(a, b);
            if s != h.sum(b, a) {
                c.fail(Axiom::AddCommutativity, &[a, b]);
            }
            if h.mul(a, b) != h.mul(b, a) {
                c.fail(Axiom::MulCommutativity, &[a, b]);
            }
            if h.sum(b, zero).contains(a) != (a == b) {
                c.fail(Axiom::Neutral, &[a, b]);
            }
            if s.contains(zero) != (b == na) {
                c.fail(Axiom::ZeroSum, &[a, b]);
            }
            let nb = h.neg(b);
            for x in s.iter() {
                if !h.sum(x, nb).contains(a) {
                    c.fail(Axiom::Reversibility, &[a, b, x]);
                }
            }
            for d in 0..n {
                if h.mul(h.mul(a, b), d) != h.mul(a, h.mul(b, d)) {
                    c.fail(Axiom::MulAssociativity, &[a, b, d]);
                }
                let left = h.sum_set(s, d);
                let right = h.sum(b, d).iter().fold(crate::ElemSet::EMPTY, |acc, y| acc.union(h.sum(a, y)));
                if left != right {
                    c.fail(Axiom::AddAssociativity, &[a, b, d]);
                }
                let lhs = h.mul_set(h.sum(b, d), a);
                if !lhs.is_subset(h.sum(h.mul(a, b), h.mul(a, d))) {
                    c.fail(Axiom::Distributivity, &[a, b, d]);
                }
            }
        }
    }
    if one == zero || h.neg(zero) != zero {
        c.fail(Axiom::Inverses, &[zero]);
    }
    for a in h.nonzero() {
        if h.inv(a).is_none() {
            c.fail(Axiom::Inverses, &[a]);
        }
    }
    let mut violations = c.found;
    violations.sort_by_key(|v| v.axiom);
    ValidationReport { violations }
}
