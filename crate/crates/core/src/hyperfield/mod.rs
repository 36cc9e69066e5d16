//! Finite hyperfields given by explicit tables.
//!
//! Elements are dense indices `0..order`. Multiplication and negation are
//! single-valued tables; addition maps each ordered pair to a nonempty
//! [`ElemSet`]. Everything here is immutable after construction.

mod analysis;
mod axioms;
mod construct;
mod iso;
mod morphism;

pub use analysis::{forms_equivalent, is_exceptional, level, rigidity_report, value_set, Level, RigidityReport};
pub use axioms::{validate_axioms, Axiom, ValidationReport, Violation};
pub use construct::{prime, quotient, Subgroup};
pub use iso::{automorphisms, find_isomorphism, find_isomorphism_with, fingerprint, Fingerprint, IsoSearch};
pub use morphism::{check_morphism_kind, MorphismKind, MorphismWitness};

use serde::{Deserialize, Serialize};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

pub type Elem = usize;

pub const MAX_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteHyperfield {
    order: usize,
    zero: Elem,
    one: Elem,
    neg: Vec<Elem>,
    mul: Vec<Elem>,
    sum: Vec<ElemSet>,
    labels: Option<Vec<String>>,
}

impl FiniteHyperfield {
    /// Builds a hyperfield from raw tables, checking only that the tables are
    /// total and in range. Use [`validate_axioms`] for the algebraic checks.
    pub fn from_tables(
        order: usize,
        zero: Elem,
        one: Elem,
        neg: Vec<Elem>,
        mul: Vec<Vec<Elem>>,
        sum: Vec<Vec<ElemSet>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::MalformedTable("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::TooLarge(order));
        }
        if zero >= order || one >= order {
            return Err(Error::MalformedTable("zero/one out of range".into()));
        }
        if neg.len() != order || neg.iter().any(|&x| x >= order) {
            return Err(Error::MalformedTable("neg table is partial or out of range".into()));
        }
        if mul.len() != order {
            return Err(Error::MalformedTable("mul table has wrong number of rows".into()));
        }
        if sum.len() != order {
            return Err(Error::MalformedTable("sum table has wrong number of rows".into()));
        }
        let full = ElemSet::full(order);
        let mut flat_mul = Vec::with_capacity(order * order);
        let mut flat_sum = Vec::with_capacity(order * order);
        for (a, (mrow, srow)) in mul.into_iter().zip(sum).enumerate() {
            if mrow.len() != order || mrow.iter().any(|&x| x >= order) {
                return Err(Error::MalformedTable(format!("mul row {a} is partial or out of range")));
            }
            if srow.len() != order {
                return Err(Error::MalformedTable(format!("sum row {a} is partial")));
            }
            for (b, s) in srow.iter().enumerate() {
                if s.is_empty() || !s.is_subset(full) {
                    return Err(Error::MalformedTable(format!("sum({a},{b}) is empty or out of range")));
                }
            }
            flat_mul.extend(mrow);
            flat_sum.extend(srow);
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::MalformedTable("label count differs from order".into()));
            }
        }
        Ok(FiniteHyperfield { order, zero, one, neg, mul: flat_mul, sum: flat_sum, labels })
    }

    /// Builds a hyperfield from closures over `0..order`.
    pub fn from_fns(
        order: usize,
        zero: Elem,
        one: Elem,
        neg: impl Fn(Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        sum: impl Fn(Elem, Elem) -> ElemSet,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let neg_t = (0..order).map(&neg).collect();
        let mul_t = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        let sum_t = (0..order).map(|a| (0..order).map(|b| sum(a, b)).collect()).collect();
        Self::from_tables(order, zero, one, neg_t, mul_t, sum_t, labels)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn minus_one(&self) -> Elem {
        self.neg[self.one]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn sum(&self, a: Elem, b: Elem) -> ElemSet {
        self.sum[a * self.order + b]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).filter(move |&x| x != self.zero)
    }

    pub fn nonzero_set(&self) -> ElemSet {
        self.all().without(self.zero)
    }

    /// Multiplicative inverse of a nonzero element, if the table has one.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (0..self.order).find(|&b| self.mul(a, b) == self.one)
    }

    /// Set-valued sum of a set with an element.
    pub fn sum_set(&self, s: ElemSet, c: Elem) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.sum(x, c)))
    }

    pub fn mul_set(&self, s: ElemSet, c: Elem) -> ElemSet {
        s.map(|x| self.mul(x, c))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::MalformedTable("label count differs from order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Element with the given label.
    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub(crate) fn replace_sums(&self, sum: impl Fn(Elem, Elem) -> ElemSet) -> Self {
        let mut out = self.clone();
        for a in 0..self.order {
            for b in 0..self.order {
                out.sum[a * self.order + b] = sum(a, b);
            }
        }
        out
    }

    /// Writes the JSON hyperfield format. Output is deterministic, so a
    /// load/save round trip reproduces the input bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_file()).expect("hyperfield serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: HyperfieldFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("hyperfield json: {e}")))?;
        file.into_hyperfield()
    }

    pub fn to_file(&self) -> HyperfieldFile {
        HyperfieldFile {
            order: self.order,
            zero: self.zero,
            one: self.one,
            neg: self.neg.clone(),
            mul: (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect(),
            sum: (0..self.order)
                .map(|a| (0..self.order).map(|b| self.sum(a, b).to_vec()).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Human-readable addition table (`1 + x` for every nonzero `x`, then the full table).
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let show = |s: ElemSet| {
            let parts: Vec<String> = s.iter().map(|x| self.label(x)).collect();
            format!("{{{}}}", parts.join(","))
        };
        out.push_str(&format!("order {} (zero {}, one {}, -1 = {})\n", self.order, self.label(self.zero), self.label(self.one), self.label(self.minus_one())));
        for a in self.nonzero() {
            for b in self.nonzero() {
                if a <= b {
                    out.push_str(&format!("  {} + {} = {}\n", self.label(a), self.label(b), show(self.sum(a, b))));
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for FiniteHyperfield {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteHyperfield(order {})", self.order)?;
        if let Some(l) = &self.labels {
            write!(f, " {l:?}")?;
        }
        Ok(())
    }
}

/// On-disk JSON layout; sum sets are sorted index arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperfieldFile {
    pub order: usize,
    pub zero: Elem,
    pub one: Elem,
    pub neg: Vec<Elem>,
    pub mul: Vec<Vec<Elem>>,
    pub sum: Vec<Vec<Vec<Elem>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
}

impl HyperfieldFile {
    pub fn into_hyperfield(self) -> Result<FiniteHyperfield> {
        if self.order > MAX_ORDER {
            return Err(Error::TooLarge(self.order));
        }
        let mut sums = Vec::with_capacity(self.sum.len());
        for row in self.sum {
            let mut r = Vec::with_capacity(row.len());
            for set in row {
                if set.iter().any(|&x| x >= self.order) {
                    return Err(Error::MalformedTable("sum entry out of range".into()));
                }
                if set.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::MalformedTable("sum sets must be sorted and duplicate-free".into()));
                }
                r.push(set.into_iter().collect());
            }
            sums.push(r);
        }
        FiniteHyperfield::from_tables(self.order, self.zero, self.one, self.neg, self.mul, sums, self.labels)
    }
}

/// The Krasner hyperfield `{0, 1}` with `1 + 1 = {0, 1}`.
pub fn krasner() -> FiniteHyperfield {
    FiniteHyperfield::from_fns(
        2,
        0,
        1,
        |a| a,
        |a, b| a * b,
        |a, b| match (a, b) {
            (0, x) | (x, 0) => ElemSet::singleton(x),
            _ => ElemSet::full(2),
        },
        Some(vec!["0".into(), "1".into()]),
    )
    .expect("krasner tables are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_tables_are_rejected() {
        let err = FiniteHyperfield::from_tables(
            2,
            0,
            1,
            vec![0, 1],
            vec![vec![0, 0], vec![0]],
            vec![vec![ElemSet::singleton(0); 2]; 2],
            None,
        );
        assert!(matches!(err, Err(Error::MalformedTable(_))));
        let err = FiniteHyperfield::from_tables(
            2,
            0,
            1,
            vec![0, 2],
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![ElemSet::singleton(0); 2]; 2],
            None,
        );
        assert!(matches!(err, Err(Error::MalformedTable(_))));
        let err = FiniteHyperfield::from_tables(
            2,
            0,
            1,
            vec![0, 1],
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![ElemSet::EMPTY; 2]; 2],
            None,
        );
        assert!(matches!(err, Err(Error::MalformedTable(_))));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let k = krasner();
        let text = k.to_json();
        let back = FiniteHyperfield::from_json(&text).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.to_json(), text);
        assert!(text.starts_with("{\"order\":2,\"zero\":0,\"one\":1,\"neg\":[0,1],\"mul\":"));
    }

    #[test]
    fn unsorted_sum_sets_are_malformed() {
        let text = r#"{"order":2,"zero":0,"one":1,"neg":[0,1],"mul":[[0,0],[0,1]],"sum":[[[0],[1]],[[1],[1,0]]]}"#;
        assert!(matches!(FiniteHyperfield::from_json(text), Err(Error::MalformedTable(_))));
    }
}
