use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::is_prime;

/// A place of `Q`: a prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QPlace {
    Prime(u64),
    Infinity,
}

impl fmt::Display for QPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QPlace::Prime(p) => write!(f, "{p}"),
            QPlace::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for QPlace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "oo" => Ok(QPlace::Infinity),
            _ => {
                let p: u64 = s.parse().map_err(|_| Error::Parse(format!("place {s:?}")))?;
                if is_prime(p) {
                    Ok(QPlace::Prime(p))
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }
}

/// `(v_p(n), n / p^{v_p(n)})` for nonzero `n`.
pub fn split_valuation(n: i128, p: i128) -> (u32, i128) {
    let (mut n, mut v) = (n, 0);
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Legendre symbol `(a | p)` for odd prime `p` and `a` prime to `p`.
pub fn legendre(a: i128, p: u64) -> i32 {
    let p128 = p as i128;
    let r = pow_mod(a.rem_euclid(p128) as u128, (p as u128 - 1) / 2, p as u128);
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Integer in the same square class as a nonzero rational: `n/d ~ n·d`.
fn integral(a: Rational64) -> i128 {
    *a.numer() as i128 * *a.denom() as i128
}

/// Hilbert symbol `(a, b)_p` of nonzero integers.
pub fn hilbert_symbol_int(a: i64, b: i64, place: QPlace) -> Result<i32> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(hilbert_i128(a as i128, b as i128, place))
}

/// Hilbert symbol `(a, b)_p` of nonzero rationals: 1 iff `z² = ax² + by²`
/// has a nontrivial solution over `Q_p` (or `R`).
pub fn hilbert_symbol(a: Rational64, b: Rational64, place: QPlace) -> Result<i32> {
    if *a.numer() == 0 || *b.numer() == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(hilbert_i128(integral(a), integral(b), place))
}

pub(crate) fn hilbert_i128(a: i128, b: i128, place: QPlace) -> i32 {
    match place {
        QPlace::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        QPlace::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let eps = |x: i128| ((x - 1) / 2).rem_euclid(2);
            let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2);
            let e = eps(u) * eps(v) + alpha as i128 * omega(v) + beta as i128 * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        QPlace::Prime(p) => {
            let (alpha, u) = split_valuation(a, p as i128);
            let (beta, v) = split_valuation(b, p as i128);
            let eps = ((p - 1) / 2) % 2;
            let mut s = if (alpha as u64 * beta as u64 * eps) % 2 == 1 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(v, p);
            }
            s
        }
    }
}

/// Primes dividing `2ab`, then the real place.
pub fn relevant_places(a: i64, b: i64) -> Vec<QPlace> {
    let mut primes = vec![2u64];
    for n in [a.unsigned_abs(), b.unsigned_abs()] {
        let mut n = n;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                primes.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            primes.push(n);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out: Vec<QPlace> = primes.into_iter().map(QPlace::Prime).collect();
    out.push(QPlace::Infinity);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        assert_eq!(hilbert_symbol_int(2, 3, QPlace::Prime(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol_int(5, 5, QPlace::Prime(5)).unwrap(), 1);
        for p in [2, 3, 5, 7, 11] {
            for a in [-7, -1, 2, 3, 10] {
                assert_eq!(hilbert_symbol_int(a, 1, QPlace::Prime(p)).unwrap(), 1);
            }
        }
        assert_eq!(hilbert_symbol_int(-1, -1, QPlace::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol_int(-1, -1, QPlace::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol_int(0, 1, QPlace::Prime(2)), Err(Error::ZeroArgument));
    }

    #[test]
    fn rationals_reduce_to_integers() {
        let r = |n, d| Rational64::new(n, d);
        assert_eq!(
            hilbert_symbol(r(2, 9), r(3, 1), QPlace::Prime(3)).unwrap(),
            hilbert_symbol_int(2, 3, QPlace::Prime(3)).unwrap()
        );
        assert_eq!(hilbert_symbol(r(1, 3), r(2, 1), QPlace::Prime(3)).unwrap(), -1);
    }

    #[test]
    fn product_formula_small_grid() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 || b == 0 {
                    continue;
                }
                let prod: i32 = relevant_places(a, b).into_iter().map(|v| hilbert_symbol_int(a, b, v).unwrap()).product();
                assert_eq!(prod, 1, "({a},{b})");
            }
        }
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<QPlace>().unwrap(), QPlace::Infinity);
        assert_eq!("7".parse::<QPlace>().unwrap(), QPlace::Prime(7));
        assert!("8".parse::<QPlace>().is_err());
    }
}
