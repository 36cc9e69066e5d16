//! Factorization over `F_q`: square-free decomposition, distinct-degree
//! splitting, then equal-degree splitting with a seeded RNG.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::gf::Gf;

pub const DEFAULT_SEED: u64 = 0x0fac_7012;

/// `constant · Π factor^exponent` with monic irreducible factors, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub constant: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Gf) -> Poly {
        self.factors.iter().fold(Poly::constant(field, self.constant), |acc, (p, e)| acc.mul(&p.pow(u64::from(*e))))
    }
}

fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field().clone();
    let p = field.characteristic();
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field().clone();
    let q = u128::from(field.q());
    let t = Poly::t(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(q, &rest)?;
        let g = h.sub(&t).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    Ok(out)
}

fn random_poly(field: &Gf, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    use rand::Rng;
    Poly::new(field, (0..below).map(|_| rng.gen_range(0..field.q())).collect())
}

/// Splits a squarefree monic `g` whose irreducible factors all have degree `d`.
fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let n = g.deg();
    if n == d {
        out.push(g.clone());
        return Ok(());
    }
    let field = g.field().clone();
    let q = u128::from(field.q());
    let qd = q.checked_pow(d as u32).ok_or(Error::TooLarge(d))?;
    loop {
        let a = random_poly(&field, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if field.characteristic() == 2 {
            // Trace from F_{q^d} to F_2: a + a^2 + ... + a^(2^(kd-1)).
            let steps = field.degree() as usize * d;
            let mut acc = a.rem(g)?;
            let mut cur = acc.clone();
            for _ in 1..steps {
                cur = cur.square().rem(g)?;
                acc = acc.add(&cur);
            }
            acc
        } else {
            a.pow_mod((qd - 1) / 2, g)?.sub(&Poly::one(&field))
        };
        let h = b.gcd(g);
        if h.deg() > 0 && h.deg() < n {
            let other = g.div_exact(&h)?;
            equal_degree(&h, d, rng, out)?;
            equal_degree(&other, d, rng, out)?;
            return Ok(());
        }
    }
}

pub fn factorize_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sq, e) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(&sq)? {
            let mut parts = Vec::new();
            equal_degree(&g, d, &mut rng, &mut parts)?;
            factors.extend(parts.into_iter().map(|p| (p, e)));
        }
    }
    factors.sort();
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((last, le)) if *last == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization { constant: f.leading(), factors: merged })
}

pub fn factorize(f: &Poly) -> Result<Factorization> {
    factorize_seeded(f, DEFAULT_SEED)
}

/// Irreducibility via the distinct-degree split.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let m = f.monic();
    if !m.gcd(&m.derivative()).is_one() {
        return false;
    }
    matches!(distinct_degree(&m).as_deref(), Ok([(_, d)]) if *d == n)
}

/// The first `n` monic irreducibles, by degree then coefficients.
pub fn first_irreducibles(field: &Gf, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n);
    let mut d = 1;
    while out.len() < n {
        out.extend(Poly::monics_of_degree(field, d).filter(is_irreducible).take(n - out.len()));
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn small_examples() {
        let f = Gf::new(3).unwrap();
        assert!(is_irreducible(&Poly::new(&f, vec![1, 0, 1])));
        let fac = factorize(&Poly::new(&f, vec![2, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(Poly::new(&f, vec![1, 1]), 1), (Poly::new(&f, vec![2, 1]), 1)]);
        assert!(matches!(factorize(&Poly::zero(&f)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn inseparable_input() {
        let f = Gf::new(3).unwrap();
        // (t^2 + 1)^3 (t + 2)^4 is a cube times a square: exercises the p-th root path.
        let g = Poly::new(&f, vec![1, 0, 1]).pow(3).mul(&Poly::new(&f, vec![2, 1]).pow(4)).scale(2);
        let fac = factorize(&g).unwrap();
        assert_eq!(fac.constant, 2);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&f), g);
    }

    #[test]
    fn random_products_refactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4, 5, 9] {
            let f = Gf::new(q).unwrap();
            for _ in 0..20 {
                let g = Poly::new(&f, (0..9).map(|_| rng.gen_range(0..f.q())).collect());
                if g.is_zero() {
                    continue;
                }
                let fac = factorize(&g).unwrap();
                assert_eq!(fac.expand(&f), g, "q={q}");
                assert!(fac.factors.iter().all(|(p, _)| is_irreducible(p) && p.is_monic()));
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        // Number of monic irreducibles of degree 2 over F_q is (q^2 - q)/2.
        for q in [2u64, 3, 5] {
            let f = Gf::new(q).unwrap();
            let n = Poly::monics_of_degree(&f, 2).filter(is_irreducible).count() as u64;
            assert_eq!(n, (q * q - q) / 2);
        }
    }
}
