use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Fe, Gf};

/// Dense polynomial over `F_q`, little-endian, no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Gf,
    coeffs: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Degree first, then coefficients from the top.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(field: &Gf, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Gf) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn constant(field: &Gf, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn one(field: &Gf) -> Poly {
        Poly::constant(field, 1)
    }

    /// The variable `t`.
    pub fn t(field: &Gf) -> Poly {
        Poly::new(field, vec![0, 1])
    }

    pub fn monomial(field: &Gf, c: Fe, e: usize) -> Poly {
        let mut v = vec![0; e + 1];
        v[e] = c;
        Poly::new(field, v)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial sent to 0; for callers that have excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.neg(x)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn square(&self) -> Poly {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; fails on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(d.leading());
        let mut q = vec![0; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            q[i] = c;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = f.sub(r[i + j], f.mul(c, dc));
                }
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; panics in debug builds if there is a remainder.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = gcd = s·self + t·other`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.leading());
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect())
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`, with a wide exponent.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.square().rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicity of `pi` in `self` and the cofactor. `self` nonzero, `pi` non-constant.
    pub fn remove_factor(&self, pi: &Poly) -> (u32, Poly) {
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(pi).expect("nonzero divisor");
            if !r.is_zero() || cur.is_zero() {
                return (n, cur);
            }
            cur = q;
            n += 1;
        }
    }

    /// In characteristic `p`, the `p`-th root of a polynomial in `t^p`.
    pub fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        // x ↦ x^(q/p) inverts Frobenius on F_q.
        let e = u64::from(f.q() / f.characteristic());
        Poly::new(f, self.coeffs.iter().step_by(p).map(|&c| f.pow(c, e)).collect())
    }

    /// Monic polynomials of exact degree `d`, in increasing order.
    pub fn monics_of_degree(field: &Gf, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = u64::from(field.q());
        let count = q.checked_pow(d as u32).expect("enumeration size");
        (0..count).map(move |mut n| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((n % q) as Fe);
                n /= q;
            }
            c.push(1);
            Poly::new(field, c)
        })
    }

    /// All polynomials of degree `< n` (including zero), in increasing order.
    pub fn all_below_degree(field: &Gf, n: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = u64::from(field.q());
        let count = q.checked_pow(n as u32).expect("enumeration size");
        (0..count).map(move |mut k| {
            let mut c = Vec::with_capacity(n);
            for _ in 0..n {
                c.push((k % q) as Fe);
                k /= q;
            }
            Poly::new(field, c)
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let composite = f.degree() > 1;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = f.fmt_elem(c);
            let cs = if composite && cs.contains('+') { format!("({cs})") } else { cs };
            match (i, c == 1) {
                (0, _) => write!(out, "{cs}")?,
                (_, true) => {}
                (_, false) => write!(out, "{cs}*")?,
            }
            match i {
                0 => {}
                1 => write!(out, "t")?,
                _ => write!(out, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Gf {
        Gf::new(3).unwrap()
    }

    #[test]
    fn division_and_gcd() {
        let f = f3();
        let a = Poly::new(&f, vec![2, 0, 1]); // t^2 - 1
        let b = Poly::new(&f, vec![1, 1]); // t + 1
        let (q, r) = a.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::new(&f, vec![2, 1]));
        assert_eq!(a.gcd(&b), b);
        let (g, s, t) = a.xgcd(&Poly::new(&f, vec![1, 0, 1]));
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&Poly::new(&f, vec![1, 0, 1]))), g);
        assert!(matches!(a.divrem(&Poly::zero(&f)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn display() {
        let f = f3();
        assert_eq!(Poly::new(&f, vec![1, 2, 1]).to_string(), "t^2 + 2*t + 1");
        assert_eq!(Poly::zero(&f).to_string(), "0");
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = Gf::new(9).unwrap();
        let g = Poly::new(&f, vec![3, 1, 5]);
        assert_eq!(g.pow(3).pth_root(), g);
    }
}
