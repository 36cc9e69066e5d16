//! Square classes, places and local symbols in `F_q(t)`, `q` odd.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::factor::{factorize, is_irreducible, Factorization};
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};
use crate::gf::Gf;

/// Canonical form of `f·K*²`: whether the leading coefficient is a square,
/// and the sorted monic irreducibles with odd exponent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClassElement {
    pub constant_square: bool,
    pub odd_part: Vec<Poly>,
}

impl SquareClassElement {
    pub fn is_trivial(&self) -> bool {
        self.constant_square && self.odd_part.is_empty()
    }

    /// Class of a product.
    pub fn mul(&self, other: &SquareClassElement) -> SquareClassElement {
        let a: HashSet<&Poly> = self.odd_part.iter().collect();
        let b: HashSet<&Poly> = other.odd_part.iter().collect();
        let mut odd_part: Vec<Poly> = a.symmetric_difference(&b).map(|p| (*p).clone()).collect();
        odd_part.sort();
        SquareClassElement { constant_square: self.constant_square == other.constant_square, odd_part }
    }

    /// A representative: the product of the odd part, times the least nonsquare if needed.
    pub fn representative(&self, field: &Gf) -> RatFn {
        let c = if self.constant_square { 1 } else { field.least_nonsquare().expect("odd q") };
        let p = self.odd_part.iter().fold(Poly::constant(field, c), |acc, f| acc.mul(f));
        RatFn::from_poly(p)
    }
}

impl fmt::Display for SquareClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.odd_part.iter().map(|p| format!("({p})")).collect();
        write!(f, "[{}; {{{}}}]", if self.constant_square { "square" } else { "nonsquare" }, parts.join(", "))
    }
}

impl fmt::Debug for SquareClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for SquareClassElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SquareClassElement", 2)?;
        st.serialize_field("constant_class", if self.constant_square { "square" } else { "nonsquare" })?;
        let odd: Vec<String> = self.odd_part.iter().map(ToString::to_string).collect();
        st.serialize_field("odd_part", &odd)?;
        st.end()
    }
}

fn require_odd(field: &Gf) -> Result<()> {
    if field.characteristic() == 2 {
        Err(Error::EvenCharacteristic(u64::from(field.q())))
    } else {
        Ok(())
    }
}

fn factor_parity(fac: &Factorization, out: &mut HashSet<Poly>) {
    for (p, e) in &fac.factors {
        if e % 2 == 1 && !out.remove(p) {
            out.insert(p.clone());
        }
    }
}

pub fn square_class(f: &RatFn) -> Result<SquareClassElement> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = f.field();
    require_odd(field)?;
    let mut odd = HashSet::new();
    factor_parity(&factorize(f.num())?, &mut odd);
    factor_parity(&factorize(f.den())?, &mut odd);
    let mut odd_part: Vec<Poly> = odd.into_iter().collect();
    odd_part.sort();
    Ok(SquareClassElement { constant_square: field.is_square(f.num().leading()), odd_part })
}

/// A square root, when `f` is a square.
pub fn sqrt_ratfn(f: &RatFn) -> Result<Option<RatFn>> {
    if f.is_zero() {
        return Ok(Some(f.clone()));
    }
    let field = f.field();
    let root = |p: &Poly| -> Result<Option<Poly>> {
        let fac = factorize(p)?;
        let Some(c) = field.sqrt(fac.constant) else { return Ok(None) };
        let mut acc = Poly::constant(field, c);
        for (g, e) in &fac.factors {
            if e % 2 == 1 {
                return Ok(None);
            }
            acc = acc.mul(&g.pow(u64::from(e / 2)));
        }
        Ok(Some(acc))
    };
    match (root(f.num())?, root(f.den())?) {
        (Some(n), Some(d)) => Ok(Some(RatFn::new(n, d)?)),
        _ => Ok(None),
    }
}

/// A place of `F_q(t)` over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    /// The valuation of a monic irreducible.
    Finite(Poly),
    /// The degree valuation, `v(f) = deg(den) − deg(num)`.
    Infinite,
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Place> {
        if !pi.is_monic() || !is_irreducible(&pi) {
            return Err(Error::InvalidDescriptor(format!("{pi} is not a monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(p) => p.deg() as u32,
            Place::Infinite => 1,
        }
    }

    pub fn residue_size(&self, field: &Gf) -> Result<u128> {
        u128::from(field.q()).checked_pow(self.degree()).ok_or(Error::TooLarge(self.degree() as usize))
    }

    pub fn valuation(&self, f: &RatFn) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(match self {
            Place::Finite(pi) => i64::from(f.num().remove_factor(pi).0) - i64::from(f.den().remove_factor(pi).0),
            Place::Infinite => f.den().deg() as i64 - f.num().deg() as i64,
        })
    }

    /// Whether the residue of the unit part `f/π^{v(f)}` is a square in the residue field.
    pub fn unit_residue_is_square(&self, f: &RatFn) -> Result<bool> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        let field = f.field();
        match self {
            Place::Infinite => Ok(field.is_square(field.div(f.num().leading(), f.den().leading()))),
            Place::Finite(pi) => {
                let n = f.num().remove_factor(pi).1.rem(pi)?;
                let d = f.den().remove_factor(pi).1.rem(pi)?;
                // χ(n/d) = χ(n)·χ(d).
                Ok(residue_character(&n, pi)? == residue_character(&d, pi)?)
            }
        }
    }
}

/// Quadratic character of a nonzero residue `r mod π`: `true` for squares.
fn residue_character(r: &Poly, pi: &Poly) -> Result<bool> {
    let q = u128::from(r.field().q());
    let size = q.checked_pow(pi.deg() as u32).ok_or(Error::TooLarge(pi.deg()))?;
    let e = r.pow_mod((size - 1) / 2, pi)?;
    debug_assert!(e.is_one() || e == Poly::constant(r.field(), r.field().neg(1)));
    Ok(e.is_one())
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "({p})"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `(v(f) mod 2, residue of the unit part is a square)`: the image of `f` in
/// `K/_m(1+M_v)K*²`.
pub fn local_class(f: &RatFn, place: &Place) -> Result<(u8, bool)> {
    let v = place.valuation(f)?;
    Ok((v.rem_euclid(2) as u8, place.unit_residue_is_square(f)?))
}

/// Local Hilbert symbol `(f, g)_v ∈ {±1}` via the tame symbol.
pub fn tame_symbol(f: &RatFn, g: &RatFn, place: &Place) -> Result<i8> {
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::EvenResidue);
    }
    let (a, b) = (place.valuation(f)?, place.valuation(g)?);
    let eps = ((place.residue_size(field)? - 1) / 2) % 2 == 1;
    let mut s = if eps && (a * b) % 2 != 0 { -1 } else { 1 };
    if b % 2 != 0 && !place.unit_residue_is_square(f)? {
        s = -s;
    }
    if a % 2 != 0 && !place.unit_residue_is_square(g)? {
        s = -s;
    }
    Ok(s)
}

/// Places where some of the given functions has nonzero valuation, plus `∞`.
pub fn support(fs: &[&RatFn]) -> Result<Vec<Place>> {
    let mut set = HashSet::new();
    for f in fs {
        for p in [f.num(), f.den()] {
            for (pi, _) in factorize(p)?.factors {
                set.insert(pi);
            }
        }
    }
    let mut polys: Vec<Poly> = set.into_iter().collect();
    polys.sort();
    let mut out: Vec<Place> = polys.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinite);
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Representation {
    pub represented: bool,
    pub places_checked: Vec<Place>,
    /// A place where `⟨1, x, −z⟩` is anisotropic, when there is one.
    pub obstruction: Option<Place>,
}

/// Decides `z̄ ∈ D⟨1, x̄⟩` in `F_q(t)`: `⟨1, x, −z⟩` is isotropic iff
/// `(z, xz)_v = 1` at every place, and only the support of `x, z` and `∞` can fail.
pub fn represents_with_certificate(z: &RatFn, x: &RatFn) -> Result<Representation> {
    if z.is_zero() || x.is_zero() {
        return Err(Error::ZeroElement);
    }
    require_odd(z.field())?;
    let xz = x.mul(z);
    let places = support(&[z, x])?;
    for p in &places {
        if tame_symbol(z, &xz, p)? == -1 {
            return Ok(Representation { represented: false, places_checked: places.clone(), obstruction: Some(p.clone()) });
        }
    }
    Ok(Representation { represented: true, places_checked: places, obstruction: None })
}

pub fn represents(z: &RatFn, x: &RatFn) -> Result<bool> {
    Ok(represents_with_certificate(z, x)?.represented)
}

/// Places in a fixed order: `∞`, then monic irreducibles by degree.
pub fn places_in_order(field: &Gf) -> impl Iterator<Item = Place> + '_ {
    std::iter::once(Place::Infinite).chain(
        (1..).flat_map(move |d| Poly::monics_of_degree(field, d).filter(is_irreducible).map(Place::Finite)),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassWitness {
    pub exponents: Vec<u8>,
    pub element: String,
    pub class: SquareClassElement,
}

/// All `2^n` products `π₁^{e₁}⋯π_n^{e_n}`, checked to lie in distinct square classes.
pub fn distinct_classes_witness(places: &[Place]) -> Result<Vec<ClassWitness>> {
    let Some(field) = places.iter().find_map(|p| match p {
        Place::Finite(pi) => Some(pi.field().clone()),
        Place::Infinite => None,
    }) else {
        return Err(Error::InvalidDescriptor("finite places required".into()));
    };
    let mut pis = Vec::new();
    for p in places {
        match p {
            Place::Infinite => return Err(Error::InvalidDescriptor("finite places required".into())),
            Place::Finite(pi) if pis.contains(pi) => return Err(Error::DuplicatePlace(p.to_string())),
            Place::Finite(pi) => pis.push(pi.clone()),
        }
    }
    if pis.len() > 20 {
        return Err(Error::TooLarge(pis.len()));
    }
    // v_i(π_j) = δ_ij.
    for (i, p) in places.iter().enumerate() {
        for (j, pj) in pis.iter().enumerate() {
            let v = p.valuation(&RatFn::from_poly(pj.clone()))?;
            if v != i64::from(i == j) {
                return Err(Error::ConstructionFailed(format!("v_{i}(π_{j}) = {v}")));
            }
        }
    }
    let n = pis.len();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let exponents: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
        let prod = pis
            .iter()
            .zip(&exponents)
            .filter(|(_, &e)| e == 1)
            .fold(Poly::one(&field), |acc, (p, _)| acc.mul(p));
        let f = RatFn::from_poly(prod);
        let class = square_class(&f)?;
        if !seen.insert(class.clone()) {
            return Err(Error::ConstructionFailed(format!("{f} repeats a square class")));
        }
        out.push(ClassWitness { exponents, element: f.to_string(), class });
    }
    Ok(out)
}

/// Search limits for [`non_rigidity_witness`].
#[derive(Debug, Clone, Copy)]
pub struct WitnessParams {
    /// How many places to scan for ones where `x` is locally nontrivial.
    pub max_places: usize,
    /// How many place pairs to try before giving up.
    pub retries: usize,
}

impl Default for WitnessParams {
    fn default() -> Self {
        WitnessParams { max_places: 200, retries: 8 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NonRigidityWitness {
    pub y: String,
    pub a: String,
    /// Places `v, w` with `v(a²) > v(x)` and `w(a²) < w(x)`, or empty for the hyperbolic case.
    pub places: Vec<Place>,
    pub represents: bool,
    pub class_y: SquareClassElement,
    pub class_x: SquareClassElement,
    #[serde(skip)]
    pub y_value: Option<RatFn>,
}

impl NonRigidityWitness {
    /// Every certificate holds.
    pub fn verified(&self) -> bool {
        self.represents && !self.class_y.is_trivial() && self.class_y != self.class_x
    }
}

fn certify(x: &RatFn, y: RatFn, a: RatFn, places: Vec<Place>) -> Result<NonRigidityWitness> {
    Ok(NonRigidityWitness {
        y: y.to_string(),
        a: a.to_string(),
        places,
        represents: represents(&y, x)?,
        class_y: square_class(&y)?,
        class_x: square_class(x)?,
        y_value: Some(y),
    })
}

/// `y = a² + x` outside `K*² ∪ xK*²`, built from two places where `x` is not
/// a local square: near `v` the term `x` dominates, near `w` the term `a²`.
pub fn non_rigidity_witness(x: &RatFn, params: WitnessParams) -> Result<NonRigidityWitness> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = x.field().clone();
    require_odd(&field)?;
    let cx = square_class(x)?;
    if cx.is_trivial() {
        return Err(Error::InputIsSquare);
    }
    let minus_one = RatFn::constant(&field, field.neg(1));
    if cx == square_class(&minus_one)? {
        // D⟨1, −1⟩ = K*: t = ((t+1)/2)² − ((t−1)/2)².
        let t = RatFn::t(&field);
        let half = field.inv(2);
        let a = t.add(&RatFn::constant(&field, 1)).scale(half);
        return certify(x, t, a, vec![]);
    }
    let nontrivial: Vec<Place> = places_in_order(&field)
        .take(params.max_places)
        .filter(|p| local_class(x, p).map(|c| c != (0, true)).unwrap_or(false))
        .take(params.retries + 1)
        .collect();
    for pair in nontrivial.windows(2).take(params.retries) {
        let (v, w) = (&pair[0], &pair[1]);
        let (vx, wx) = (v.valuation(x)?, w.valuation(x)?);
        let base = |k: i64| -> Result<RatFn> {
            match (v, w) {
                (Place::Finite(pv), Place::Finite(pw)) => {
                    RatFn::from_poly(pv.clone()).pow(k)?.div(&RatFn::from_poly(pw.clone()).pow(k)?)
                }
                (Place::Infinite, Place::Finite(pw)) => RatFn::from_poly(pw.clone()).pow(-k),
                (Place::Finite(pv), Place::Infinite) => RatFn::from_poly(pv.clone()).pow(k),
                (Place::Infinite, Place::Infinite) => unreachable!("distinct places"),
            }
        };
        let mut k = 1;
        let a = loop {
            let a = base(k)?;
            if 2 * v.valuation(&a)? > vx && 2 * w.valuation(&a)? < wx {
                break a;
            }
            k += 1;
        };
        let y = a.square().add(x);
        if y.is_zero() {
            continue;
        }
        let wit = certify(x, y, a, vec![v.clone(), w.clone()])?;
        if wit.verified() {
            return Ok(wit);
        }
    }
    Err(Error::ConstructionFailed(format!("no witness for {x} within {} place pairs", params.retries)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Gf {
        Gf::new(q).unwrap()
    }

    fn r(field: &Gf, s: &str) -> RatFn {
        RatFn::parse(field, s).unwrap()
    }

    #[test]
    fn square_class_examples() {
        let f5 = f(5);
        let c = square_class(&r(&f5, "2t^2")).unwrap();
        assert!(!c.constant_square && c.odd_part.is_empty());
        let f3 = f(3);
        let c = square_class(&r(&f3, "t")).unwrap();
        assert!(c.constant_square && c.odd_part == vec![Poly::t(&f3)]);
        let c = square_class(&r(&f3, "(t+1)^3/t")).unwrap();
        assert_eq!(c.odd_part, vec![Poly::t(&f3), r(&f3, "t+1").num().clone()]);
        assert!(matches!(square_class(&r(&f3, "0")), Err(Error::ZeroElement)));
    }

    #[test]
    fn local_class_examples() {
        let f3 = f(3);
        let t = Place::finite(Poly::t(&f3)).unwrap();
        assert_eq!(local_class(&r(&f3, "t"), &t).unwrap(), (1, true));
        assert_eq!(local_class(&r(&f3, "2(t+1)"), &t).unwrap(), (0, false));
        assert_eq!(local_class(&r(&f3, "t"), &Place::Infinite).unwrap().0, 1);
    }

    #[test]
    fn tame_symbol_examples() {
        let f3 = f(3);
        let t = Place::finite(Poly::t(&f3)).unwrap();
        assert_eq!(tame_symbol(&r(&f3, "t"), &r(&f3, "t"), &t).unwrap(), -1);
        assert_eq!(tame_symbol(&r(&f3, "t"), &r(&f3, "1-t"), &t).unwrap(), 1);
        assert!(matches!(tame_symbol(&r(&f(4), "t"), &r(&f(4), "t"), &Place::Infinite), Err(Error::EvenResidue)));
    }

    #[test]
    fn reciprocity_on_a_grid() {
        let f3 = f(3);
        let elems = ["t", "t+1", "2t^2+1", "(t+2)/t", "2", "t^3+2t+1"];
        for a in elems {
            for b in elems {
                let (x, y) = (r(&f3, a), r(&f3, b));
                let prod: i8 = support(&[&x, &y]).unwrap().iter().map(|p| tame_symbol(&x, &y, p).unwrap()).product();
                assert_eq!(prod, 1, "({a}, {b})");
            }
        }
    }

    #[test]
    fn represents_examples() {
        let f3 = f(3);
        assert!(represents(&r(&f3, "t^2+1"), &r(&f3, "1")).unwrap());
        for z in ["t", "2", "t^2+t+2", "(t+1)/t"] {
            assert!(represents(&r(&f3, z), &r(&f3, "-1")).unwrap());
        }
        // 2 = 1 + 1.
        assert!(represents(&r(&f3, "2"), &r(&f3, "1")).unwrap());
        let rep = represents_with_certificate(&r(&f3, "t"), &r(&f3, "1")).unwrap();
        assert!(!rep.represented);
        assert!(rep.obstruction.is_some());
    }

    #[test]
    fn distinct_classes() {
        let f3 = f(3);
        let places: Vec<Place> = ["t", "t+1", "t^2+1"].iter().map(|s| Place::finite(r(&f3, s).num().clone()).unwrap()).collect();
        assert_eq!(distinct_classes_witness(&places).unwrap().len(), 8);
        let dup = vec![places[0].clone(), places[0].clone()];
        assert!(matches!(distinct_classes_witness(&dup), Err(Error::DuplicatePlace(_))));
    }

    #[test]
    fn non_rigidity_examples() {
        let f3 = f(3);
        let w = non_rigidity_witness(&r(&f3, "-1"), WitnessParams::default()).unwrap();
        assert!(w.verified());
        assert_eq!(w.y, "t");
        let w = non_rigidity_witness(&r(&f3, "t"), WitnessParams::default()).unwrap();
        assert!(w.verified(), "{w:?}");
        assert!(matches!(non_rigidity_witness(&r(&f3, "t^2"), WitnessParams::default()), Err(Error::InputIsSquare)));
        let w = non_rigidity_witness(&r(&f(5), "2"), WitnessParams::default()).unwrap();
        assert!(w.verified(), "{w:?}");
    }
}
