use std::sync::Arc;

use serde::Serialize;

use super::{level, rigidity_report, Elem, FiniteHyperfield, Level, MorphismWitness};
use crate::elemset::ElemSet;
use crate::exec::Execution;

/// Isomorphism invariants used to reject candidate pairs early.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub level: Level,
    pub rigid_count: usize,
    pub basic_count: usize,
    /// Sorted multiset of `|D⟨a, b⟩|` over ordered nonzero pairs.
    pub value_set_sizes: Vec<usize>,
    /// Sorted multiset of multiplicative orders of nonzero elements.
    pub element_orders: Vec<usize>,
}

impl Fingerprint {
    /// Human-readable list of the differing components.
    pub fn diff(&self, other: &Fingerprint) -> Vec<String> {
        let mut out = Vec::new();
        if self.order != other.order {
            out.push(format!("order: {} vs {}", self.order, other.order));
        }
        if self.level != other.level {
            out.push(format!("level: {} vs {}", self.level, other.level));
        }
        if self.rigid_count != other.rigid_count {
            out.push(format!("rigid elements: {} vs {}", self.rigid_count, other.rigid_count));
        }
        if self.basic_count != other.basic_count {
            out.push(format!("basic part size: {} vs {}", self.basic_count, other.basic_count));
        }
        if self.value_set_sizes != other.value_set_sizes {
            out.push("value-set size multiset differs".into());
        }
        if self.element_orders != other.element_orders {
            out.push(format!("multiplicative group: orders {:?} vs {:?}", self.element_orders, other.element_orders));
        }
        out
    }
}

fn mult_order(h: &FiniteHyperfield, x: Elem) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != h.one() {
        y = h.mul(y, x);
        k += 1;
        if k > h.order() {
            return 0;
        }
    }
    k
}

pub fn fingerprint(h: &FiniteHyperfield) -> Fingerprint {
    let rep = rigidity_report(h, None).expect("no subgroup given");
    let mut value_set_sizes: Vec<usize> = h
        .nonzero()
        .flat_map(|a| h.nonzero().map(move |b| h.sum(a, b).without(h.zero()).len()))
        .collect();
    value_set_sizes.sort_unstable();
    let mut element_orders: Vec<usize> = h.nonzero().map(|x| mult_order(h, x)).collect();
    element_orders.sort_unstable();
    Fingerprint {
        order: h.order(),
        level: level(h),
        rigid_count: rep.rigid.len(),
        basic_count: rep.basic.len(),
        value_set_sizes,
        element_orders,
    }
}

/// Outcome of an isomorphism search.
#[derive(Debug, Clone)]
pub enum IsoSearch {
    Found(MorphismWitness),
    /// No isomorphism. `fingerprint_diff` is empty when the fingerprints agree
    /// and the backtracking search was exhausted.
    Absent { fingerprint_diff: Vec<String> },
}

impl IsoSearch {
    pub fn witness(self) -> Option<MorphismWitness> {
        match self {
            IsoSearch::Found(m) => Some(m),
            IsoSearch::Absent { .. } => None,
        }
    }
}

/// Per-element invariants preserved by any isomorphism.
fn elem_sig(h: &FiniteHyperfield, x: Elem) -> (usize, usize, usize, bool) {
    (mult_order(h, x), h.sum(h.one(), x).len(), h.sum(x, x).len(), x == h.minus_one())
}

/// Greedy generating set of `H*`: each generator is the least element outside
/// the subgroup generated so far.
fn generators(h: &FiniteHyperfield) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut sub = ElemSet::singleton(h.one());
    for x in h.nonzero() {
        if !sub.contains(x) {
            gens.push(x);
            sub = closure(h, sub, x);
        }
    }
    gens
}

fn closure(h: &FiniteHyperfield, sub: ElemSet, g: Elem) -> ElemSet {
    let mut out = sub;
    let mut frontier = sub;
    loop {
        let next = frontier.map(|x| h.mul(x, g)).intersection(complement(h, out));
        if next.is_empty() {
            return out;
        }
        out = out.union(next);
        frontier = next;
    }
}

fn complement(h: &FiniteHyperfield, s: ElemSet) -> ElemSet {
    ElemSet(h.all().0 & !s.0)
}

struct Searcher<'a> {
    h1: &'a FiniteHyperfield,
    h2: &'a FiniteHyperfield,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
}

const UNSET: Elem = usize::MAX;

impl Searcher<'_> {
    fn new<'a>(h1: &'a FiniteHyperfield, h2: &'a FiniteHyperfield) -> Searcher<'a> {
        let gens = generators(h1);
        let candidates = gens
            .iter()
            .map(|&g| {
                let sig = elem_sig(h1, g);
                h2.nonzero().filter(|&y| elem_sig(h2, y) == sig).collect()
            })
            .collect();
        Searcher { h1, h2, gens, candidates }
    }

    fn initial(&self) -> Vec<Elem> {
        let mut map = vec![UNSET; self.h1.order()];
        map[self.h1.zero()] = self.h2.zero();
        map[self.h1.one()] = self.h2.one();
        map
    }

    /// Extends the partial homomorphism by `g ↦ y`; `None` on any conflict.
    fn extend(&self, map: &[Elem], g: Elem, y: Elem) -> Option<Vec<Elem>> {
        let (h1, h2) = (self.h1, self.h2);
        let mut map = map.to_vec();
        let domain: Vec<Elem> = h1.nonzero().filter(|&x| map[x] != UNSET).collect();
        let mut frontier = domain.clone();
        loop {
            let mut next = Vec::new();
            for &x in &frontier {
                let xg = h1.mul(x, g);
                let img = h2.mul(map[x], y);
                if map[xg] == UNSET {
                    map[xg] = img;
                    next.push(xg);
                } else if map[xg] != img {
                    return None;
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let mapped: Vec<Elem> = h1.elements().filter(|&x| map[x] != UNSET).collect();
        let dom_set: ElemSet = mapped.iter().copied().collect();
        let img_set: ElemSet = mapped.iter().map(|&x| map[x]).collect();
        if img_set.len() != dom_set.len() {
            return None;
        }
        let m1 = h1.minus_one();
        if map[m1] != UNSET && map[m1] != h2.minus_one() {
            return None;
        }
        for &a in &mapped {
            for &b in &mapped {
                let left = h1.sum(a, b).intersection(dom_set).map(|x| map[x]);
                if left != h2.sum(map[a], map[b]).intersection(img_set) {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn search(&self, depth: usize, map: Vec<Elem>, out: &mut dyn FnMut(Vec<Elem>) -> bool) -> bool {
        if depth == self.gens.len() {
            return out(map);
        }
        for &y in &self.candidates[depth] {
            if let Some(next) = self.extend(&map, self.gens[depth], y) {
                if self.search(depth + 1, next, out) {
                    return true;
                }
            }
        }
        false
    }

    fn is_complete_iso(&self, map: &[Elem]) -> bool {
        let (h1, h2) = (self.h1, self.h2);
        if map.contains(&UNSET) {
            return false;
        }
        h1.elements().all(|x| map[h1.neg(x)] == h2.neg(map[x]))
            && h1
                .elements()
                .all(|a| h1.elements().all(|b| h1.sum(a, b).map(|x| map[x]) == h2.sum(map[a], map[b])))
    }
}

fn witness(h1: &FiniteHyperfield, h2: &FiniteHyperfield, map: Vec<Elem>) -> MorphismWitness {
    MorphismWitness::new_unchecked(Arc::new(h1.clone()), Arc::new(h2.clone()), map)
}

/// Searches for an isomorphism `h1 → h2`, returning the lexicographically
/// first one in generator-candidate order.
pub fn find_isomorphism(h1: &FiniteHyperfield, h2: &FiniteHyperfield) -> Option<MorphismWitness> {
    find_isomorphism_with(h1, h2, Execution::default()).witness()
}

/// Like [`find_isomorphism`] but reports a fingerprint diff on absence and
/// lets the caller choose how top-level branches are evaluated. The witness
/// is the same in both modes.
pub fn find_isomorphism_with(h1: &FiniteHyperfield, h2: &FiniteHyperfield, exec: Execution) -> IsoSearch {
    let (f1, f2) = (fingerprint(h1), fingerprint(h2));
    let diff = f1.diff(&f2);
    if !diff.is_empty() {
        return IsoSearch::Absent { fingerprint_diff: diff };
    }
    let s = Searcher::new(h1, h2);
    let start = s.initial();
    let found = if s.gens.is_empty() {
        s.is_complete_iso(&start).then_some(start)
    } else {
        exec.find_map_first(&s.candidates[0], |&y| {
            let first = s.extend(&start, s.gens[0], y)?;
            let mut result = None;
            s.search(1, first, &mut |m| {
                if s.is_complete_iso(&m) {
                    result = Some(m);
                    true
                } else {
                    false
                }
            });
            result
        })
    };
    match found {
        Some(map) => IsoSearch::Found(witness(h1, h2, map)),
        None => IsoSearch::Absent { fingerprint_diff: Vec::new() },
    }
}

/// All automorphisms of `h`, identity first.
pub fn automorphisms(h: &FiniteHyperfield) -> Vec<MorphismWitness> {
    let s = Searcher::new(h, h);
    let mut maps = Vec::new();
    if s.gens.is_empty() {
        maps.push(s.initial());
    } else {
        s.search(0, s.initial(), &mut |m| {
            if s.is_complete_iso(&m) {
                maps.push(m);
            }
            false
        });
    }
    let identity: Vec<Elem> = h.elements().collect();
    maps.sort_by_key(|m| *m != identity);
    let h = Arc::new(h.clone());
    maps.into_iter().map(|m| MorphismWitness::new_unchecked(h.clone(), h.clone(), m)).collect()
}
