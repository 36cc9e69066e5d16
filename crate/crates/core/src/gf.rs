//! Small finite fields `GF(p^k)` with precomputed tables.
//!
//! An element is a `u32` whose base-`p` digits are the coefficients of its
//! polynomial representative modulo a fixed monic irreducible of degree `k`
//! (the least one in that same encoding). For prime fields this is just the
//! residue `0..p`.

use std::sync::Arc;

use crate::error::{Error, Result};

pub type Fe = u32;

/// Largest supported field size; tables are `q²` entries.
pub const MAX_Q: u64 = 1024;

#[derive(Debug, PartialEq, Eq)]
struct Tables {
    p: u32,
    k: u32,
    q: u32,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    square: Vec<bool>,
    sqrt: Vec<Option<Fe>>,
}

/// A finite field handle; cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf(Arc<Tables>);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `q = p^k`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut x = x;
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two coefficient vectors modulo the monic `modulus` (low-first, length k+1).
fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

fn has_root_free_irreducible(modulus: &[u32], p: u32) -> bool {
    // Irreducible iff no nontrivial factor of degree ≤ k/2; checked by trial
    // division against every monic polynomial of that degree.
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = digits(code as u32, p, d as u32);
            f.push(1);
            if poly_rem_is_zero(modulus, &f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(a: &[u32], b: &[u32], p: u32) -> bool {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bc % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

impl Gf {
    pub fn new(q: u64) -> Result<Gf> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::TooLarge(q as usize));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|code| {
                    let mut m = digits(code, p, k);
                    m.push(1);
                    m
                })
                .find(|m| has_root_free_irreducible(m, p))
                .expect("an irreducible polynomial exists in every degree")
        };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let ds: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = ds[a].iter().zip(&ds[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s, p);
                mul[a * n + b] = if k == 1 {
                    (a as u32 * b as u32) % p
                } else {
                    undigits(&mulmod(&ds[a], &ds[b], &modulus, p), p)
                };
            }
        }
        let neg = (0..n).map(|a| (0..q).find(|&b| add[a * n + b as usize] == 0).unwrap()).collect();
        let inv = (0..n).map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * n + b as usize] == 1).unwrap() }).collect();
        let mut square = vec![false; n];
        let mut sqrt = vec![None; n];
        for x in 0..q {
            let s = mul[x as usize * n + x as usize] as usize;
            square[s] = true;
            if sqrt[s].is_none() {
                sqrt[s] = Some(x);
            }
        }
        Ok(Gf(Arc::new(Tables { p, k, q, add, mul, neg, inv, square, sqrt })))
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn elements(&self) -> std::ops::Range<Fe> {
        0..self.0.q
    }

    pub fn nonzero(&self) -> std::ops::Range<Fe> {
        1..self.0.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.0.add[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.0.mul[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.0.neg[a as usize]
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: Fe) -> bool {
        self.0.square[a as usize]
    }

    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        self.0.sqrt[a as usize]
    }

    /// Quadratic character: 1 on nonzero squares, −1 on nonsquares, 0 on 0.
    pub fn legendre(&self, a: Fe) -> i32 {
        if a == 0 {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// Image of an integer under `Z → F_p ⊆ F_q`.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.0.p as i64) as Fe
    }

    /// The class of `t` in the polynomial encoding (a generator of `F_q` over `F_p`).
    pub fn generator(&self) -> Fe {
        if self.0.k == 1 {
            1
        } else {
            self.0.p
        }
    }

    /// Least nonsquare, for odd `q`.
    pub fn least_nonsquare(&self) -> Option<Fe> {
        self.nonzero().find(|&a| !self.is_square(a))
    }

    /// Display form: the integer for prime fields, otherwise a polynomial in `a`.
    pub fn fmt_elem(&self, x: Fe) -> String {
        if self.0.k == 1 {
            return x.to_string();
        }
        let ds = digits(x, self.0.p, self.0.k);
        let terms: Vec<String> = ds
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".into(),
                (1, c) => format!("{c}a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(matches!(Gf::new(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn field_axioms_hold() {
        for q in [2, 3, 4, 5, 8, 9, 25, 27, 49] {
            let f = Gf::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.pow(a, q - 1), 1);
                }
                for b in f.elements() {
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn squares() {
        let f9 = Gf::new(9).unwrap();
        assert!(f9.is_square(f9.neg(1)));
        let f3 = Gf::new(3).unwrap();
        assert!(!f3.is_square(2));
        assert_eq!(f3.least_nonsquare(), Some(2));
        let f4 = Gf::new(4).unwrap();
        assert!(f4.elements().all(|a| f4.is_square(a)));
        let f5 = Gf::new(5).unwrap();
        assert_eq!(f5.legendre(2), -1);
        assert_eq!(f5.sqrt(4).map(|r| f5.mul(r, r)), Some(4));
    }
}
