//! Census of abstract prime-type hyperfields with few nonzero elements.
//!
//! The multiplicative group of `Q(K)` is `K*/K*²`, an elementary abelian
//! 2-group, so only orders `q = 2^n` are enumerated. A table is fixed by
//! `−1` and the sets `S_x = 1 + x`; everything else follows from
//! multiplicativity (`a + b = a·S_{b/a}`). The bits `[c ∈ S_x]` are tied
//! together by commutativity and reversibility, so the free choices are few
//! and every candidate is checked against the full axiom suite.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hyperfield::{find_isomorphism, validate_axioms, FiniteHyperfield, HyperfieldFile};
use crate::quadratic::{group_extension_build, qh_complex, qh_finite_field, qh_padic, qh_real};

/// Largest nonzero order the census accepts.
pub const MAX_NONZERO: usize = 8;

/// Known values of `w(q)` for `q = 1, 2, 4, 8, 16, 32`.
pub const WITT_CLASS_COUNTS: [(usize, u64); 6] = [(1, 1), (2, 3), (4, 6), (8, 17), (16, 51), (32, 155)];

/// A prime-type table on `(Z/2)^n`. Group elements are bit vectors `0..q`
/// with `0` the identity; `ones[x]` is the bitmask of `1 + x` within the group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimeTable {
    pub rank: u32,
    pub minus_one: usize,
    pub ones: Vec<u64>,
}

impl PrimeTable {
    pub fn q(&self) -> usize {
        1 << self.rank
    }

    fn label(g: usize) -> String {
        if g == 0 {
            return "1".into();
        }
        (0..usize::BITS).filter(|i| g >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect()
    }

    /// The hyperfield on `{0} ∪ G`, with `0` at index 0 and `g` at index `g + 1`.
    pub fn to_hyperfield(&self) -> Result<FiniteHyperfield> {
        let q = self.q();
        let m = self.minus_one;
        let group_set = |mask: u64, shift: usize| ElemSet::from_iter_elems((0..q).filter(|c| mask >> c & 1 == 1).map(|c| (c ^ shift) + 1));
        let labels = std::iter::once("0".to_string()).chain((0..q).map(Self::label)).collect();
        FiniteHyperfield::from_fns(
            q + 1,
            0,
            1,
            |a| if a == 0 { 0 } else { ((a - 1) ^ m) + 1 },
            |a, b| if a == 0 || b == 0 { 0 } else { ((a - 1) ^ (b - 1)) + 1 },
            |a, b| {
                if a == 0 {
                    return ElemSet::singleton(b);
                }
                if b == 0 {
                    return ElemSet::singleton(a);
                }
                let (ga, gb) = (a - 1, b - 1);
                let x = ga ^ gb;
                if x == m {
                    ElemSet::full(q + 1)
                } else {
                    group_set(self.ones[x], ga)
                }
            },
            Some(labels),
        )
    }

    fn apply(&self, phi: &[usize]) -> PrimeTable {
        let q = self.q();
        let mut ones = vec![0u64; q];
        for x in 0..q {
            let mut mask = 0u64;
            for c in (0..q).filter(|c| self.ones[x] >> c & 1 == 1) {
                mask |= 1 << phi[c];
            }
            ones[phi[x]] = mask;
        }
        PrimeTable { rank: self.rank, minus_one: phi[self.minus_one], ones }
    }

    /// Lexicographically least relabeling over the group automorphisms fixing `−1`.
    pub fn canonical(&self, automorphisms: &[Vec<usize>]) -> PrimeTable {
        automorphisms.iter().map(|phi| self.apply(phi)).min().unwrap_or_else(|| self.clone())
    }
}

/// `GL(n, 2)` as permutations of `0..2^n`.
fn group_automorphisms(rank: u32) -> Vec<Vec<usize>> {
    let q = 1usize << rank;
    let mut images: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for prefix in &images {
            // Span of the images chosen so far.
            let span: Vec<usize> = (0..1usize << prefix.len())
                .map(|bits| prefix.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).fold(0, |acc, (_, &v)| acc ^ v))
                .collect();
            for v in (1..q).filter(|v| !span.contains(v)) {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        images = next;
    }
    images
        .into_iter()
        .map(|basis| {
            (0..q)
                .map(|g| basis.iter().enumerate().filter(|(i, _)| g >> i & 1 == 1).fold(0, |acc, (_, &v)| acc ^ v))
                .collect()
        })
        .collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// The candidates for a given rank and `−1`, as the free orbits of the
/// membership bits plus the bits forced to 1.
struct Orbits {
    q: usize,
    minus_one: usize,
    root_of: Vec<usize>,
    free: Vec<usize>,
    forced: Vec<bool>,
}

impl Orbits {
    fn new(rank: u32, m: usize) -> Orbits {
        let q = 1usize << rank;
        let var = |x: usize, c: usize| x * q + c;
        let mut parent: Vec<usize> = (0..q * q).collect();
        let mut forced_pairs = Vec::new();
        for x in (0..q).filter(|&x| x != m) {
            forced_pairs.push(var(x, 0)); // 1 ∈ 1 + x
            for c in 0..q {
                // 1 + x = x(1 + x), since x = x⁻¹.
                let (a, b) = (find(&mut parent, var(x, c)), find(&mut parent, var(x, x ^ c)));
                parent[a] = b;
                // c ∈ 1 + x  ⇔  1 ∈ c − x = c·(1 + m·x·c)  ⇔  c ∈ 1 + m·x·c.
                let y = m ^ x ^ c;
                if y == m {
                    forced_pairs.push(var(x, c));
                } else {
                    let (a, b) = (find(&mut parent, var(x, c)), find(&mut parent, var(y, c)));
                    parent[a] = b;
                }
            }
        }
        let root_of: Vec<usize> = (0..q * q).map(|v| find(&mut parent, v)).collect();
        let mut forced = vec![false; q * q];
        for v in forced_pairs {
            forced[root_of[v]] = true;
        }
        let mut free: Vec<usize> =
            (0..q).filter(|&x| x != m).flat_map(|x| (0..q).map(move |c| x * q + c)).map(|v| root_of[v]).filter(|&r| !forced[r]).collect();
        free.sort_unstable();
        free.dedup();
        Orbits { q, minus_one: m, root_of, free, forced }
    }

    fn table(&self, rank: u32, assignment: u64) -> PrimeTable {
        let q = self.q;
        let on = |r: usize| self.forced[r] || self.free.iter().position(|&f| f == r).is_some_and(|i| assignment >> i & 1 == 1);
        let ones = (0..q)
            .map(|x| {
                if x == self.minus_one {
                    return (1u64 << q) - 1;
                }
                (0..q).filter(|&c| on(self.root_of[x * q + c])).fold(0u64, |m, c| m | 1 << c)
            })
            .collect();
        PrimeTable { rank, minus_one: self.minus_one, ones }
    }
}

/// Fields whose quadratic hyperfields have `q` nonzero elements, where the
/// library can build them.
pub fn known_realizations(q: usize) -> Result<Vec<(String, FiniteHyperfield)>> {
    let ext = |base: FiniteHyperfield, r| group_extension_build(&base, r).map(|(h, _)| h);
    Ok(match q {
        1 => vec![("C".into(), qh_complex())],
        2 => vec![("R".into(), qh_real()), ("F3".into(), qh_finite_field(3)?), ("F5".into(), qh_finite_field(5)?)],
        4 => vec![
            ("Qp:3".into(), qh_padic(3)?),
            ("Qp:5".into(), qh_padic(5)?),
            ("R((t))".into(), ext(qh_real(), 1)?),
            ("C((t))((s))".into(), ext(qh_complex(), 2)?),
        ],
        8 => vec![
            ("Q2".into(), qh_padic(2)?),
            ("F3((t))((s))".into(), ext(qh_finite_field(3)?, 2)?),
            ("F5((t))((s))".into(), ext(qh_finite_field(5)?, 2)?),
            ("R((t))((s))".into(), ext(qh_real(), 2)?),
            ("C((t))((s))((r))".into(), ext(qh_complex(), 3)?),
        ],
        _ => Vec::new(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusClass {
    pub minus_one_is_one: bool,
    pub realized_by: Option<String>,
    pub table: HyperfieldFile,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub q: usize,
    /// Candidate tables after the orbit reduction, before the axiom filter.
    pub candidates: usize,
    pub abstract_count: u64,
    pub witt_count: Option<u64>,
    pub matches: bool,
    pub classes: Vec<CensusClass>,
}

impl CensusRow {
    /// The classes not matched by any field the library can build.
    pub fn unrealized(&self) -> impl Iterator<Item = &CensusClass> {
        self.classes.iter().filter(|c| c.realized_by.is_none())
    }
}

/// Isomorphism classes of prime-type hyperfields on `(Z/2)^n` for `n = 0..=rank`.
pub fn census_rank(rank: u32, exec: Execution) -> Result<CensusRow> {
    let q = 1usize << rank;
    let autos = group_automorphisms(rank);
    let mut candidates = 0;
    let mut canon: BTreeMap<PrimeTable, ()> = BTreeMap::new();
    // −1 = 1, or −1 a fixed non-identity element (GL(n,2) is transitive on those).
    for m in if rank == 0 { vec![0] } else { vec![0, 1] } {
        let orbits = Orbits::new(rank, m);
        if orbits.free.len() > 24 {
            return Err(Error::BudgetExceeded(format!("{} free membership bits at q = {q}", orbits.free.len())));
        }
        let fixing: Vec<Vec<usize>> = autos.iter().filter(|phi| phi[m] == m).cloned().collect();
        let assignments: Vec<u64> = (0..1u64 << orbits.free.len()).collect();
        candidates += assignments.len();
        let found = exec.filter_map(&assignments, |&a| {
            let t = orbits.table(rank, a);
            let h = t.to_hyperfield().ok()?;
            validate_axioms(&h).is_valid().then(|| t.canonical(&fixing))
        });
        canon.extend(found.into_iter().map(|t| (t, ())));
    }
    let known = known_realizations(q)?;
    let classes = canon
        .keys()
        .map(|t| {
            let h = t.to_hyperfield()?;
            let realized_by = known.iter().find(|(_, k)| find_isomorphism(&h, k).is_some()).map(|(name, _)| name.clone());
            Ok(CensusClass { minus_one_is_one: t.minus_one == 0, realized_by, table: h.to_file() })
        })
        .collect::<Result<Vec<_>>>()?;
    let abstract_count = classes.len() as u64;
    let witt_count = WITT_CLASS_COUNTS.iter().find(|(k, _)| *k == q).map(|&(_, w)| w);
    Ok(CensusRow { q, candidates, abstract_count, witt_count, matches: witt_count == Some(abstract_count), classes })
}

/// Census rows for every `q = 2^n ≤ max_nonzero`.
pub fn enumerate(max_nonzero: usize, exec: Execution) -> Result<Vec<CensusRow>> {
    if max_nonzero > MAX_NONZERO {
        return Err(Error::BudgetExceeded(format!("max_nonzero = {max_nonzero} exceeds {MAX_NONZERO}")));
    }
    (0..).map(|n| (n, 1usize << n)).take_while(|&(_, q)| q <= max_nonzero).map(|(n, _)| census_rank(n, exec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let rows = enumerate(2, Execution::Sequential).unwrap();
        assert_eq!(rows.iter().map(|r| r.abstract_count).collect::<Vec<_>>(), vec![1, 3]);
        assert!(rows.iter().all(|r| r.unrealized().count() == 0));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(group_automorphisms(2).len(), 6);
        assert_eq!(group_automorphisms(3).len(), 168);
    }

    #[test]
    fn budget() {
        assert!(matches!(enumerate(9, Execution::Sequential), Err(Error::BudgetExceeded(_))));
    }
}
