//! Brute-force oracles for tests and the acceptance suite.
//!
//! Nothing in the library proper calls into this module. Each oracle decides
//! its question by exhaustive search over a finite ring, with Hensel's lemma
//! as the only theory: a primitive solution of a diagonal ternary form modulo
//! `p^k` lifts once `k > 2e`, where `p^e` bounds the gradient. With
//! coefficients of valuation at most 1 that means `k = 3` for odd residue
//! characteristic and `k = 5` at 2; the searches use `k = 3` and `k = 6`.

use std::collections::HashSet;

use crate::function_field::{Poly, RatFn};
use crate::gf::{Fe, Gf};

fn strip_square_factors(mut n: i64, p: i64) -> i64 {
    while n % (p * p) == 0 {
        n /= p * p;
    }
    n
}

/// `(a, b)_p` from the solvability of `a x² + b y² = z²` primitively modulo `p^k`.
pub fn hilbert_congruence(a: i64, b: i64, p: u64) -> i32 {
    assert!(a != 0 && b != 0);
    let p = p as i64;
    let (a, b) = (strip_square_factors(a, p), strip_square_factors(b, p));
    let k = if p == 2 { 6 } else { 3 };
    let m = p.pow(k);
    let r = |v: i64| v.rem_euclid(m);
    let unit = |v: i64| v % p != 0;
    let mut squares = vec![false; m as usize];
    let mut unit_squares = vec![false; m as usize];
    for z in 0..m {
        squares[r(z * z) as usize] = true;
        if unit(z) {
            unit_squares[r(z * z) as usize] = true;
        }
    }
    for x in 0..m {
        for y in 0..m {
            let v = r(r(a * x % m * x) + r(b * y % m * y)) as usize;
            let ok = if unit(x) || unit(y) { squares[v] } else { unit_squares[v] };
            if ok {
                return 1;
            }
        }
    }
    -1
}

/// `(a, b)_∞`: `a x² + b y² = z²` has a nonzero real solution.
pub fn hilbert_real(a: i64, b: i64) -> i32 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

/// Least `n ≤ max_n` with `n + 1` squares summing to 0 primitively in `Z/p^k`,
/// that is the level of `Q_p` when `k` is past the Hensel bound (level of
/// `F_p` for `k = 1`). `None` if no such `n`.
pub fn level_congruence(p: u64, k: u32, max_n: usize) -> Option<usize> {
    let m = p.pow(k) as usize;
    let squares: Vec<(usize, bool)> = (0..m).map(|x| (x * x % m, !(x as u64).is_multiple_of(p))).collect();
    // reach[r] = (some sum equals r, some primitive sum equals r), after j squares.
    let mut reach = vec![(false, false); m];
    reach[0] = (true, false);
    for n in 1..=max_n + 1 {
        let mut next = vec![(false, false); m];
        for (r, &(any, prim)) in reach.iter().enumerate() {
            if !any {
                continue;
            }
            for &(s, unit) in &squares {
                let e = &mut next[(r + s) % m];
                e.0 = true;
                e.1 |= prim || unit;
            }
        }
        reach = next;
        if n >= 2 && reach[0].1 {
            return Some(n - 1);
        }
    }
    None
}

/// Square root of a polynomial by matching coefficients from the top.
pub fn poly_sqrt(f: &Poly) -> Option<Poly> {
    let field = f.field();
    if f.is_zero() {
        return Some(f.clone());
    }
    let d = f.deg();
    if d % 2 == 1 {
        return None;
    }
    let n = d / 2;
    let lead = field.sqrt(f.leading())?;
    let two_lead = field.add(lead, lead);
    if two_lead == 0 {
        return None; // characteristic 2 is out of scope
    }
    let mut r = vec![0 as Fe; n + 1];
    r[n] = lead;
    for i in (0..n).rev() {
        // coefficient of t^(n+i) in r²: 2 r_n r_i + Σ_{j+l = n+i, i < j,l < n} r_j r_l
        let mut acc = f.coeff(n + i);
        for j in (i + 1)..n {
            let l = n + i - j;
            if l > i && l < n {
                acc = field.sub(acc, field.mul(r[j], r[l]));
            }
        }
        r[i] = field.div(acc, two_lead);
    }
    let root = Poly::new(field, r);
    (root.square() == *f).then_some(root)
}

pub fn is_square_oracle(f: &RatFn) -> bool {
    !f.is_zero() && poly_sqrt(&f.num().mul(f.den())).is_some()
}

/// A certificate `z·c² = a² + x·b²` in polynomials.
#[derive(Debug, Clone)]
pub struct PolyCertificate {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

/// Searches `z c² − x b² = a²` over polynomials `b`, `c` of degree `≤ max_deg`
/// (`c` monic, nonzero), after clearing denominators of `z` and `x`.
pub fn represents_search(z: &RatFn, x: &RatFn, max_deg: usize) -> Option<PolyCertificate> {
    let field = z.field();
    // z = zn/zd = zn·zd / zd², likewise for x; squares do not matter.
    let zp = z.num().mul(z.den());
    let xp = x.num().mul(x.den());
    let half = field.q().div_ceil(2);
    for deg in 0..=max_deg {
        for c in (0..=deg).flat_map(|d| Poly::monics_of_degree(field, d)) {
            let zc = zp.mul(&c.square());
            let cdeg = c.deg();
            for b in Poly::all_below_degree(field, deg + 1) {
                // Only pairs where one of b, c reaches the current degree are new.
                if cdeg < deg && b.degree() != Some(deg) {
                    continue;
                }
                // b and −b give the same square.
                if !b.is_zero() && b.leading() >= half && field.characteristic() != 2 {
                    continue;
                }
                if let Some(a) = poly_sqrt(&zc.sub(&xp.mul(&b.square()))) {
                    return Some(PolyCertificate { a, b, c });
                }
            }
        }
    }
    None
}

/// Residues modulo `π^k`, encoded as coefficient vectors of length `deg π^k`.
fn residues(field: &Gf, len: usize) -> Vec<Vec<Fe>> {
    let q = field.q();
    let total = (q as u64).pow(len as u32);
    (0..total)
        .map(|mut i| {
            (0..len)
                .map(|_| {
                    let d = (i % q as u64) as Fe;
                    i /= q as u64;
                    d
                })
                .collect()
        })
        .collect()
}

/// Does `⟨f, g⟩` represent 1 over the completion at the finite place `π`?
/// Decided by searching `f X² + g Y² = Z²` primitively modulo `π³` after
/// removing even powers of `π` from `f` and `g`. Exhaustive in `q^(6·deg π)`.
pub fn local_represents_one(f: &RatFn, g: &RatFn, pi: &Poly) -> bool {
    let field = f.field();
    // h = n/d has the square class of n·d; then drop factors of π².
    let p2 = pi.square();
    let modulus = pi.pow(3);
    let reduce = |h: &RatFn| {
        let mut n = h.num().mul(h.den());
        while n.rem(&p2).is_ok_and(|r| r.is_zero()) {
            n = n.div_exact(&p2).expect("divides");
        }
        n.rem(&modulus).expect("nonzero modulus")
    };
    let (fl, gl) = (reduce(f), reduce(g));
    let len = modulus.deg();
    let elems: Vec<Poly> = residues(field, len).into_iter().map(|c| Poly::new(field, c)).collect();
    let is_unit = |e: &Poly| !e.rem(pi).expect("nonzero").is_zero();
    let mut squares = HashSet::new();
    let mut unit_squares = HashSet::new();
    for e in &elems {
        let s = e.square().rem(&modulus).expect("nonzero");
        if is_unit(e) {
            unit_squares.insert(s.clone());
        }
        squares.insert(s);
    }
    let fx: Vec<(Poly, bool)> = elems.iter().map(|x| (fl.mul(&x.square()).rem(&modulus).expect("nonzero"), is_unit(x))).collect();
    let gy: Vec<(Poly, bool)> = elems.iter().map(|y| (gl.mul(&y.square()).rem(&modulus).expect("nonzero"), is_unit(y))).collect();
    fx.iter().any(|(a, ua)| {
        gy.iter().any(|(b, ub)| {
            let v = a.add(b);
            if *ua || *ub {
                squares.contains(&v)
            } else {
                unit_squares.contains(&v)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_congruence(2, 3, 3), -1);
        assert_eq!(hilbert_congruence(5, 5, 5), 1);
        assert_eq!(hilbert_congruence(-1, -1, 2), -1);
        assert_eq!(hilbert_congruence(7, 1, 13), 1);
        assert_eq!(hilbert_real(-1, -1), -1);
    }

    #[test]
    fn levels() {
        assert_eq!(level_congruence(2, 6, 6), Some(4));
        assert_eq!(level_congruence(3, 3, 6), Some(2));
        assert_eq!(level_congruence(5, 3, 6), Some(1));
        assert_eq!(level_congruence(3, 1, 6), Some(2));
    }

    #[test]
    fn square_roots() {
        let f = Gf::new(5).unwrap();
        let p = Poly::new(&f, vec![1, 2, 3, 4]);
        assert_eq!(poly_sqrt(&p.square()).map(|r| r.square()), Some(p.square()));
        assert!(poly_sqrt(&Poly::new(&f, vec![2])).is_none());
        assert!(poly_sqrt(&Poly::new(&f, vec![1, 1])).is_none());
    }

    #[test]
    fn search_and_local() {
        let f = Gf::new(3).unwrap();
        let z = RatFn::parse(&f, "t^2+1").unwrap();
        let one = RatFn::constant(&f, 1);
        assert!(represents_search(&z, &one, 2).is_some());
        let t = Poly::t(&f);
        let tt = RatFn::t(&f);
        // (t, t) at (t) over F3 is −1; (t, 1 − t) is 1.
        assert!(!local_represents_one(&tt, &tt, &t));
        assert!(local_represents_one(&tt, &RatFn::parse(&f, "1-t").unwrap(), &t));
    }
}
