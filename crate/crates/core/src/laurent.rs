//! Truncated Laurent series over a small finite field.
//!
//! A value is `Σ coeffs[i]·t^(start+i)`, known modulo `t^(start+len)`. Every
//! operation tracks that absolute precision, and anything that would need a
//! coefficient beyond it fails with [`Error::PrecisionLoss`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Fe, Gf};

pub const DEFAULT_PRECISION: usize = 24;

#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    field: Gf,
    start: i64,
    coeffs: Vec<Fe>,
}

impl Laurent {
    /// Builds `Σ c·t^e` from `(c, e)` terms, known to `precision` terms past the
    /// lowest exponent (or past 0 when there are no terms).
    pub fn from_terms(field: &Gf, terms: &[(Fe, i64)], precision: usize) -> Laurent {
        let start = terms.iter().filter(|(c, _)| *c != 0).map(|&(_, e)| e).min().unwrap_or(0);
        let mut coeffs = vec![0; precision];
        for &(c, e) in terms {
            let i = (e - start) as usize;
            if i < precision {
                coeffs[i] = field.add(coeffs[i], c);
            }
        }
        Laurent { field: field.clone(), start, coeffs }.normalized()
    }

    pub fn constant(field: &Gf, c: Fe, precision: usize) -> Laurent {
        Laurent::from_terms(field, &[(c, 0)], precision)
    }

    /// `t^e` to the given relative precision.
    pub fn monomial(field: &Gf, c: Fe, e: i64, precision: usize) -> Laurent {
        Laurent::from_terms(field, &[(c, e)], precision)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    /// Exponent below which every coefficient is known.
    pub fn absolute_precision(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Number of known coefficients from the valuation onward.
    pub fn relative_precision(&self) -> usize {
        self.coeffs.len()
    }

    fn normalized(mut self) -> Laurent {
        let lead = self.coeffs.iter().position(|&c| c != 0).unwrap_or(self.coeffs.len());
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        self
    }

    /// Whether every known coefficient vanishes.
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            Err(Error::PrecisionLoss(format!(
                "series vanishes to absolute precision {}",
                self.absolute_precision()
            )))
        } else {
            Ok(self.start)
        }
    }

    pub fn leading(&self) -> Result<Fe> {
        self.valuation()?;
        Ok(self.coeffs[0])
    }

    /// Coefficient of `t^e`, if known.
    pub fn coeff(&self, e: i64) -> Result<Fe> {
        if e < self.start {
            Ok(0)
        } else if e >= self.absolute_precision() {
            Err(Error::PrecisionLoss(format!("coefficient of t^{e} is beyond the known precision")))
        } else {
            Ok(self.coeffs[(e - self.start) as usize])
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let f = &self.field;
        let start = self.start.min(other.start);
        let abs = self.absolute_precision().min(other.absolute_precision());
        let len = (abs - start).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| {
                let e = start + i as i64;
                f.add(self.coeff(e).unwrap_or(0), other.coeff(e).unwrap_or(0))
            })
            .collect();
        Laurent { field: f.clone(), start, coeffs }.normalized()
    }

    pub fn neg(&self) -> Laurent {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Laurent { field: self.field.clone(), start: self.start, coeffs }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> Laurent {
        let coeffs = self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect();
        Laurent { field: self.field.clone(), start: self.start, coeffs }.normalized()
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: i64) -> Laurent {
        Laurent { field: self.field.clone(), start: self.start + e, coeffs: self.coeffs.clone() }
    }

    /// Product; relative precision is the smaller of the two.
    pub fn mul(&self, other: &Laurent) -> Result<Laurent> {
        let f = &self.field;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Err(Error::PrecisionLoss("product with a series indistinguishable from zero".into()));
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![0; n];
        for (i, &a) in self.coeffs.iter().take(n).enumerate() {
            for (j, &b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Ok(Laurent { field: f.clone(), start: self.start + other.start, coeffs }.normalized())
    }

    pub fn inv(&self) -> Result<Laurent> {
        let f = &self.field;
        let v = self.valuation()?;
        let n = self.coeffs.len();
        let c0 = f.inv(self.coeffs[0]);
        let mut out = vec![0; n];
        out[0] = c0;
        for k in 1..n {
            let mut s = 0;
            for i in 1..=k {
                s = f.add(s, f.mul(self.coeffs[i], out[k - i]));
            }
            out[k] = f.neg(f.mul(s, c0));
        }
        Ok(Laurent { field: f.clone(), start: -v, coeffs: out })
    }

    pub fn div(&self, other: &Laurent) -> Result<Laurent> {
        self.mul(&other.inv()?)
    }

    /// Square root by coefficient-wise Hensel lifting (odd characteristic).
    /// `Ok(None)` when the value is not a square.
    pub fn sqrt(&self) -> Result<Option<Laurent>> {
        let f = &self.field;
        if f.characteristic() == 2 {
            return Err(Error::EvenCharacteristic(2));
        }
        let v = self.valuation()?;
        if v % 2 != 0 {
            return Ok(None);
        }
        let Some(r0) = f.sqrt(self.coeffs[0]) else {
            return Ok(None);
        };
        let n = self.coeffs.len();
        let two_r0_inv = f.inv(f.add(r0, r0));
        let mut r = vec![0; n];
        r[0] = r0;
        for k in 1..n {
            let mut s = self.coeffs[k];
            for i in 1..k {
                s = f.sub(s, f.mul(r[i], r[k - i]));
            }
            r[k] = f.mul(s, two_r0_inv);
        }
        Ok(Some(Laurent { field: f.clone(), start: v / 2, coeffs: r }))
    }

    /// `(v mod 2, leading coefficient is a square)`: the square class in
    /// `F_q((t))` for odd `q`.
    pub fn square_class(&self) -> Result<(u8, bool)> {
        let v = self.valuation()?;
        Ok((v.rem_euclid(2) as u8, self.field.is_square(self.coeffs[0])))
    }

    /// Whether two series agree on every coefficient both know.
    pub fn agrees_with(&self, other: &Laurent) -> bool {
        let diff = self.sub(other);
        diff.is_indistinguishable_from_zero()
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| format!("{}@{}", self.field.fmt_elem(c), self.start + i as i64))
            .collect();
        write!(f, "[{}] + O(t^{})", terms.join(", "), self.absolute_precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Gf {
        Gf::new(3).unwrap()
    }

    #[test]
    fn one_plus_t_is_a_square() {
        let f = f3();
        let x = Laurent::from_terms(&f, &[(1, 0), (1, 1)], DEFAULT_PRECISION);
        let r = x.sqrt().unwrap().unwrap();
        assert!(r.mul(&r).unwrap().agrees_with(&x));
        assert_eq!(x.square_class().unwrap(), (0, true));
        assert_eq!(r.relative_precision(), DEFAULT_PRECISION);
    }

    #[test]
    fn inverse_and_classes() {
        let f = f3();
        let x = Laurent::from_terms(&f, &[(2, 1), (1, 2)], 10);
        let y = x.inv().unwrap();
        assert_eq!(y.valuation().unwrap(), -1);
        assert!(x.mul(&y).unwrap().agrees_with(&Laurent::constant(&f, 1, 10)));
        assert_eq!(x.square_class().unwrap(), (1, false));
        assert!(x.sqrt().unwrap().is_none());
    }

    #[test]
    fn cancellation_loses_precision() {
        let f = f3();
        let x = Laurent::from_terms(&f, &[(1, 0), (1, 3)], 4);
        let y = Laurent::from_terms(&f, &[(2, 0), (2, 3)], 4);
        let s = x.add(&y);
        assert!(s.is_indistinguishable_from_zero());
        assert!(matches!(s.valuation(), Err(Error::PrecisionLoss(_))));
        let z = Laurent::from_terms(&f, &[(2, 0), (1, 2)], 4);
        assert_eq!(x.add(&z).valuation().unwrap(), 2);
        assert_eq!(x.add(&z).absolute_precision(), 4);
    }
}
