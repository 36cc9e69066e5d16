use std::sync::Arc;

use serde::Serialize;

use super::hilbert::{hilbert_i128, legendre, split_valuation, QPlace};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::gf::{is_prime, Gf};
use crate::hyperfield::{check_morphism_kind, prime, validate_axioms, Elem, FiniteHyperfield, MorphismKind, MorphismWitness, MAX_ORDER};

fn labels(names: &[&str]) -> Option<Vec<String>> {
    Some(names.iter().map(|s| s.to_string()).collect())
}

/// Quotient of `F_q` by its nonzero squares before priming: elements
/// `0, 1` (squares) and `2` (nonsquares); sums collected by brute force.
pub fn finite_square_quotient(q: u64) -> Result<FiniteHyperfield> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic(2));
    }
    let f = Gf::new(q)?;
    let class = |x| if x == 0 { 0 } else if f.is_square(x) { 1 } else { 2 };
    let mut sum = [[ElemSet::EMPTY; 3]; 3];
    for x in f.elements() {
        for y in f.elements() {
            sum[class(x)][class(y)].insert(class(f.add(x, y)));
        }
    }
    let minus_one = class(f.neg(1));
    let nonsq = if minus_one == 2 { "-1" } else { "u" };
    FiniteHyperfield::from_fns(
        3,
        0,
        1,
        |a| if a == 0 { 0 } else if minus_one == 1 { a } else { 3 - a },
        |a, b| if a == 0 || b == 0 { 0 } else if a == b { 1 } else { 2 },
        |a, b| sum[a][b],
        labels(&["0", "1", nonsq]),
    )
}

/// `Q(F_q)` for odd `q`.
pub fn qh_finite_field(q: u64) -> Result<FiniteHyperfield> {
    Ok(prime(&finite_square_quotient(q)?))
}

/// The sign hyperfield `Q(R)`.
pub fn qh_real() -> FiniteHyperfield {
    FiniteHyperfield::from_fns(
        3,
        0,
        1,
        |a| [0, 2, 1][a],
        |a, b| if a == 0 || b == 0 { 0 } else if a == b { 1 } else { 2 },
        |a, b| match (a, b) {
            (0, x) | (x, 0) => ElemSet::singleton(x),
            (x, y) if x == y => ElemSet::singleton(x),
            _ => ElemSet::full(3),
        },
        labels(&["0", "1", "-1"]),
    )
    .expect("sign tables are well formed")
}

/// `Q(C)`: one nonzero class, `1 + 1 = {0, 1}`.
pub fn qh_complex() -> FiniteHyperfield {
    crate::hyperfield::krasner()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Archimedean {
    Real,
    Complex,
}

pub fn qh_archimedean(kind: Archimedean) -> FiniteHyperfield {
    match kind {
        Archimedean::Real => qh_real(),
        Archimedean::Complex => qh_complex(),
    }
}

/// Integer representatives of the nonzero square classes of `Q_p`, in
/// element order (element `i + 1` is represented by `reps[i]`), with labels.
pub fn padic_representatives(p: u64) -> Result<(Vec<i128>, Vec<&'static str>)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok((vec![1, -1, 2, -2, 5, -5, 10, -10], vec!["1", "-1", "2", "-2", "5", "-5", "10", "-10"]));
    }
    let u = least_nonresidue(p);
    let pi = p as i128;
    Ok((vec![1, u, pi, u * pi], vec!["1", "u", "p", "up"]))
}

pub fn least_nonresidue(p: u64) -> i128 {
    (2..p as i128).find(|&a| legendre(a, p) == -1).expect("odd primes have nonresidues")
}

/// Element of `Q(Q_p)` holding the square class of a nonzero integer.
pub fn padic_class(n: i128, p: u64) -> Elem {
    assert!(n != 0, "zero has no square class");
    if p == 2 {
        let (alpha, u) = split_valuation(n, 2);
        let unit = match u.rem_euclid(8) {
            1 => 0,
            7 => 1,
            5 => 4,
            _ => 5,
        };
        // Element layout: 1,-1,2,-2,5,-5,10,-10 -> units at 1,2,5,6; odd valuation adds 2.
        1 + unit + if alpha % 2 == 1 { 2 } else { 0 }
    } else {
        let (alpha, u) = split_valuation(n, p as i128);
        let e_u = usize::from(legendre(u, p) == -1);
        let e_p = (alpha % 2) as usize;
        1 + e_u + 2 * e_p
    }
}

/// `Q(Q_p)` for a prime `p`. Odd `p`: `{0, 1, u, p, up}`; `p = 2`:
/// `{0, ±1, ±2, ±5, ±10}`. `z ∈ a + b` iff `(az, bz)_p = 1`, then primed.
pub fn qh_padic(p: u64) -> Result<FiniteHyperfield> {
    let (reps, names) = padic_representatives(p)?;
    let n = reps.len() + 1;
    let rep = |a: Elem| reps[a - 1];
    let place = QPlace::Prime(p);
    let mut all_labels = vec!["0"];
    all_labels.extend(names);
    let plain = FiniteHyperfield::from_fns(
        n,
        0,
        1,
        |a| if a == 0 { 0 } else { padic_class(-rep(a), p) },
        |a, b| if a == 0 || b == 0 { 0 } else { padic_class(rep(a) * rep(b), p) },
        |a, b| {
            if a == 0 {
                return ElemSet::singleton(b);
            }
            if b == 0 {
                return ElemSet::singleton(a);
            }
            let mut s: ElemSet = (1..n)
                .filter(|&z| hilbert_i128(rep(a) * rep(z), rep(b) * rep(z), place) == 1)
                .collect();
            if padic_class(-rep(a), p) == b {
                s.insert(0);
            }
            s
        },
        labels(&all_labels),
    )?;
    Ok(prime(&plain))
}

/// A hyperfield presented as a group extension of `base` by `(C_2)^rank`.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    pub base: FiniteHyperfield,
    pub rank: u32,
    /// The embedding of `base` into the built hyperfield.
    pub embedding: MorphismWitness,
}

impl QuotientPresentation {
    /// Coset index (`0..2^rank`) of a nonzero element of the built hyperfield.
    pub fn coset_of(&self, x: Elem) -> usize {
        (x - 1) / (self.base.order() - 1)
    }

    /// Element of the built hyperfield for a nonzero base element in a coset.
    pub fn element(&self, base_elem: Elem, coset: usize) -> Elem {
        let pos = self.base.nonzero().position(|b| b == base_elem).expect("nonzero base element");
        1 + coset * (self.base.order() - 1) + pos
    }
}

fn coset_name(c: usize, rank: u32) -> String {
    match (rank, c) {
        (_, 0) => String::new(),
        (1 | 2, 1) => "t".into(),
        (2, 2) => "s".into(),
        (2, 3) => "ts".into(),
        _ => format!("g{c}"),
    }
}

/// Group extension of `base` by `(C_2)^rank`: carrier `base* × (C_2)^rank ∪ {0}`,
/// componentwise multiplication, negation on the base coordinate. Elements in
/// one coset add as in `base` (sums containing 0 become the whole carrier);
/// elements of different cosets give `{x, y}`.
pub fn group_extension_build(base: &FiniteHyperfield, rank: u32) -> Result<(FiniteHyperfield, QuotientPresentation)> {
    let m = base.order() - 1;
    let cosets = 1usize.checked_shl(rank).unwrap_or(usize::MAX);
    let order = m.saturating_mul(cosets).saturating_add(1);
    if order > MAX_ORDER {
        return Err(Error::TooLarge(order));
    }
    let nz: Vec<Elem> = base.nonzero().collect();
    let pos = |b: Elem| nz.iter().position(|&x| x == b).expect("nonzero");
    let decode = |x: Elem| (nz[(x - 1) % m], (x - 1) / m);
    let encode = |b: Elem, c: usize| 1 + c * m + pos(b);
    let full = ElemSet::full(order);
    let labels = (0..order)
        .map(|x| {
            if x == 0 {
                return base.label(base.zero());
            }
            let (b, c) = decode(x);
            let (bl, cn) = (base.label(b), coset_name(c, rank));
            match (bl.as_str(), cn.is_empty()) {
                (_, true) => bl,
                ("1", false) => cn,
                ("-1", false) => format!("-{cn}"),
                _ => format!("{bl}{cn}"),
            }
        })
        .collect();
    let h = FiniteHyperfield::from_fns(
        order,
        0,
        1,
        |x| if x == 0 { 0 } else { let (b, c) = decode(x); encode(base.neg(b), c) },
        |x, y| {
            if x == 0 || y == 0 {
                return 0;
            }
            let ((a, c), (b, d)) = (decode(x), decode(y));
            encode(base.mul(a, b), c ^ d)
        },
        |x, y| {
            if x == 0 {
                return ElemSet::singleton(y);
            }
            if y == 0 {
                return ElemSet::singleton(x);
            }
            let ((a, c), (b, d)) = (decode(x), decode(y));
            if c != d {
                return ElemSet::singleton(x).with(y);
            }
            let s = base.sum(a, b);
            if s.contains(base.zero()) {
                full
            } else {
                s.map(|z| encode(z, c))
            }
        },
        Some(labels),
    )?;
    // The construction is expected to be valid; failure is a bug signal.
    let report = validate_axioms(&h);
    if !report.is_valid() {
        return Err(Error::AxiomFailure(report.to_string()));
    }
    let embed_map = base.elements().map(|b| if b == base.zero() { 0 } else { encode(b, 0) }).collect();
    let embedding = MorphismWitness::new(Arc::new(base.clone()), Arc::new(h.clone()), embed_map)?;
    if rank > 0 {
        match check_morphism_kind(&embedding) {
            MorphismKind::GroupExtension => {}
            other => return Err(Error::AxiomFailure(format!("embedding classified as {other:?}"))),
        }
    }
    Ok((h.clone(), QuotientPresentation { base: base.clone(), rank, embedding }))
}
