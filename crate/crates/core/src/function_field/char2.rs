//! Characteristic 2: `K = F_{2^s}(t)` is a 2-dimensional `K²`-space with basis `{1, t}`.

use serde::Serialize;

use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::quadratic::FieldDescriptor;

fn require_even(field: &Gf) -> Result<()> {
    if field.characteristic() != 2 {
        return Err(Error::FieldMismatch(format!("F{} does not have characteristic 2", field.q())));
    }
    Ok(())
}

/// `p = p0² + t·p1²` for a polynomial over a perfect field of characteristic 2.
fn split_poly(p: &Poly) -> (Poly, Poly) {
    let f = p.field();
    let half = u64::from(f.q() / 2);
    let root = |c| f.pow(c, half); // inverse Frobenius
    let even = p.coeffs().iter().step_by(2).map(|&c| root(c)).collect();
    let odd = p.coeffs().iter().skip(1).step_by(2).map(|&c| root(c)).collect();
    (Poly::new(f, even), Poly::new(f, odd))
}

/// Coordinates `(a, b)` with `f = a² + t·b²`.
pub fn k2_coordinates(f: &RatFn) -> Result<(RatFn, RatFn)> {
    require_even(f.field())?;
    // f = n/d = n·d / d².
    let (p0, p1) = split_poly(&f.num().mul(f.den()));
    let d = f.den().clone();
    Ok((RatFn::new(p0, d.clone())?, RatFn::new(p1, d)?))
}

/// A certificate `z = a² + b²·x`.
#[derive(Debug, Clone, Serialize)]
pub struct Char2Representation {
    pub represented: bool,
    pub a: Option<String>,
    pub b: Option<String>,
}

/// Decides `z ∈ K² + K²·x` by solving in `{1, t}`-coordinates over `K²`:
/// with `z = z0² + t z1²`, `x = x0² + t x1²`, the equation `z = a² + b²x`
/// becomes `z0 = a + b·x0`, `z1 = b·x1`.
pub fn char2_represents_with_certificate(z: &RatFn, x: &RatFn) -> Result<Char2Representation> {
    if z.is_zero() || x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let (z0, z1) = k2_coordinates(z)?;
    let (x0, x1) = k2_coordinates(x)?;
    let (a, b) = if x1.is_zero() {
        if !z1.is_zero() {
            return Ok(Char2Representation { represented: false, a: None, b: None });
        }
        // x is a square: z = z0² already.
        (z0, RatFn::constant(z.field(), 0))
    } else {
        let b = z1.div(&x1)?;
        (z0.sub(&b.mul(&x0)), b)
    };
    debug_assert_eq!(a.square().add(&b.square().mul(x)), *z);
    Ok(Char2Representation { represented: true, a: Some(a.to_string()), b: Some(b.to_string()) })
}

pub fn char2_represents(z: &RatFn, x: &RatFn) -> Result<bool> {
    Ok(char2_represents_with_certificate(z, x)?.represented)
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub field: String,
    pub dimension: u32,
    pub basis: Vec<String>,
    /// Samples decomposed in the basis and recomposed exactly.
    pub spanning_checked: usize,
    /// The basis elements are independent over `K²`.
    pub independent: bool,
}

/// `[K : K²]` for `F_{2^s}` and `F_{2^s}(t)`, with the basis checked on
/// the given sample elements.
pub fn char2_dimension(k: &FieldDescriptor, samples: &[&str]) -> Result<DimensionReport> {
    match k {
        FieldDescriptor::Finite(q) if q % 2 == 0 => {
            let f = Gf::new(*q)?;
            // Frobenius is a bijection of a finite field.
            let surjective = f.elements().all(|c| f.sqrt(c).is_some_and(|r| f.mul(r, r) == c));
            Ok(DimensionReport {
                field: k.to_string(),
                dimension: 1,
                basis: vec!["1".into()],
                spanning_checked: if surjective { f.q() as usize } else { 0 },
                independent: true,
            })
        }
        FieldDescriptor::RationalFunction(b) if matches!(**b, FieldDescriptor::Finite(q) if q % 2 == 0) => {
            let FieldDescriptor::Finite(q) = **b else { unreachable!() };
            let f = Gf::new(q)?;
            let mut checked = 0;
            for s in samples {
                let x = RatFn::parse(&f, s)?;
                let (a, b) = k2_coordinates(&x)?;
                if a.square().add(&RatFn::t(&f).mul(&b.square())) != x {
                    return Err(Error::ConstructionFailed(format!("{x} does not recompose")));
                }
                checked += 1;
            }
            // t = a² would force an even degree.
            let (t0, t1) = k2_coordinates(&RatFn::t(&f))?;
            let independent = t0.is_zero() && t1 == RatFn::constant(&f, 1);
            Ok(DimensionReport {
                field: k.to_string(),
                dimension: 2,
                basis: vec!["1".into(), "t".into()],
                spanning_checked: checked,
                independent,
            })
        }
        _ => Err(Error::UnsupportedField(format!("{k}: expected F_(2^s) or F_(2^s)(t)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = Gf::new(2).unwrap();
        let x = RatFn::parse(&f, "t^3+t+1").unwrap();
        assert!(char2_represents(&x, &x).unwrap());
        assert!(char2_represents(&x.add(&RatFn::constant(&f, 1)), &x).unwrap());
        let sq = RatFn::parse(&f, "t^2+1").unwrap();
        assert!(!char2_represents(&RatFn::t(&f), &sq).unwrap());
        assert!(char2_represents(&RatFn::parse(&f, "t^4").unwrap(), &sq).unwrap());
    }

    #[test]
    fn coordinates_recompose_over_f4() {
        let f = Gf::new(4).unwrap();
        let x = RatFn::parse(&f, "(a t^3 + t + a^2)/(t^2 + a)").unwrap();
        let (a, b) = k2_coordinates(&x).unwrap();
        assert_eq!(a.square().add(&RatFn::t(&f).mul(&b.square())), x);
    }

    #[test]
    fn dimensions() {
        let s = ["t^5+t", "1/(t+1)", "t"];
        assert_eq!(char2_dimension(&"F4".parse().unwrap(), &s).unwrap().dimension, 1);
        let r = char2_dimension(&"F2(t)".parse().unwrap(), &s).unwrap();
        assert_eq!((r.dimension, r.spanning_checked, r.independent), (2, 3, true));
        assert_eq!(char2_dimension(&"F4(t)".parse().unwrap(), &s).unwrap().dimension, 2);
        assert!(char2_dimension(&"F3(t)".parse().unwrap(), &s).is_err());
    }
}
