//! The rank-two valuation on `F_q((s))(t)`: `t`-adic first, then the
//! `s`-adic valuation of the leading residue. Value group `Z × Z`, residue `F_q`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::gf::{Fe, Gf};
use crate::hyperfield::{Elem, FiniteHyperfield, MorphismWitness};
use crate::laurent::Laurent;
use crate::quadratic::{group_extension_build, laurent_class_elem, qh_finite_field, qh_laurent, QuotientPresentation};

/// A polynomial in `t` with truncated Laurent coefficients in `s`; `None` is an exact zero.
pub type LaurentPolyT = Vec<Option<Laurent>>;

/// `num/den` in `F_q((s))(t)`.
#[derive(Clone)]
pub struct ComposedElement {
    pub field: Gf,
    pub num: LaurentPolyT,
    pub den: LaurentPolyT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LexValue {
    pub t_component: i64,
    pub s_component: i64,
    /// Relative precision of the leading coefficients used.
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ComposedClass {
    pub value: LexValue,
    pub residue_square: bool,
}

impl ComposedClass {
    /// `(t-parity, s-parity, residue is a square)`.
    pub fn key(&self) -> (u8, u8, bool) {
        (self.value.t_component.rem_euclid(2) as u8, self.value.s_component.rem_euclid(2) as u8, self.residue_square)
    }
}

fn leading(p: &LaurentPolyT) -> Result<(i64, &Laurent)> {
    for (i, c) in p.iter().enumerate() {
        if let Some(c) = c {
            if c.is_indistinguishable_from_zero() {
                return Err(Error::PrecisionLoss(format!("coefficient of t^{i} vanishes to its known precision")));
            }
            return Ok((i as i64, c));
        }
    }
    Err(Error::ZeroElement)
}

impl ComposedElement {
    pub fn polynomial(field: &Gf, num: LaurentPolyT) -> ComposedElement {
        let one = Laurent::constant(field, 1, 1);
        ComposedElement { field: field.clone(), num, den: vec![Some(one)] }
    }

    /// `c·s^b·t^a`.
    pub fn monomial(field: &Gf, c: Fe, b: i64, a: usize, precision: usize) -> ComposedElement {
        let mut num = vec![None; a + 1];
        num[a] = Some(Laurent::monomial(field, c, b, precision));
        ComposedElement::polynomial(field, num)
    }

    pub fn neg(&self) -> ComposedElement {
        let num = self.num.iter().map(|c| c.as_ref().map(Laurent::neg)).collect();
        ComposedElement { field: self.field.clone(), num, den: self.den.clone() }
    }

    fn mul_polys(a: &LaurentPolyT, b: &LaurentPolyT) -> Result<LaurentPolyT> {
        let mut out: LaurentPolyT = vec![None; (a.len() + b.len()).saturating_sub(1)];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if let (Some(x), Some(y)) = (x, y) {
                    let p = x.mul(y)?;
                    out[i + j] = Some(match &out[i + j] {
                        Some(acc) => acc.add(&p),
                        None => p,
                    });
                }
            }
        }
        Ok(out)
    }

    fn add_polys(a: &LaurentPolyT, b: &LaurentPolyT) -> LaurentPolyT {
        (0..a.len().max(b.len()))
            .map(|i| match (a.get(i).cloned().flatten(), b.get(i).cloned().flatten()) {
                (Some(x), Some(y)) => Some(x.add(&y)),
                (x, None) => x,
                (None, y) => y,
            })
            .collect()
    }

    pub fn add(&self, other: &ComposedElement) -> Result<ComposedElement> {
        let num = Self::add_polys(&Self::mul_polys(&self.num, &other.den)?, &Self::mul_polys(&other.num, &self.den)?);
        let den = Self::mul_polys(&self.den, &other.den)?;
        Ok(ComposedElement { field: self.field.clone(), num, den })
    }

    pub fn mul(&self, other: &ComposedElement) -> Result<ComposedElement> {
        Ok(ComposedElement {
            field: self.field.clone(),
            num: Self::mul_polys(&self.num, &other.num)?,
            den: Self::mul_polys(&self.den, &other.den)?,
        })
    }

    /// `t`-adic valuation and the leading residue in `F_q((s))`.
    pub fn t_adic(&self) -> Result<(i64, Laurent)> {
        let (i, a) = leading(&self.num)?;
        let (j, b) = leading(&self.den)?;
        Ok((i - j, a.div(b)?))
    }

    /// Parses `num` or `num / den`, where a `t`-polynomial lists its
    /// coefficients from `t^0` separated by `;`, and each coefficient is `0`
    /// or a comma list of `c@e` terms meaning `Σ c·s^e`.
    pub fn parse(field: &Gf, text: &str, precision: usize) -> Result<ComposedElement> {
        let mut halves = text.split('/');
        let num = parse_tpoly(field, halves.next().unwrap_or(""), precision)?;
        let den = match halves.next() {
            Some(d) => parse_tpoly(field, d, precision)?,
            None => vec![Some(Laurent::constant(field, 1, precision))],
        };
        if halves.next().is_some() {
            return Err(Error::Parse("more than one '/'".into()));
        }
        Ok(ComposedElement { field: field.clone(), num, den })
    }
}

fn parse_tpoly(field: &Gf, text: &str, precision: usize) -> Result<LaurentPolyT> {
    text.split(';')
        .map(|coef| {
            let coef = coef.trim();
            if coef == "0" || coef.is_empty() {
                return Ok(None);
            }
            let terms = coef
                .split(',')
                .map(|term| {
                    let (c, e) = term.trim().split_once('@').ok_or_else(|| Error::Parse(format!("term {term:?} lacks '@'")))?;
                    let c: i64 = c.trim().parse().map_err(|_| Error::Parse(format!("coefficient {c:?}")))?;
                    let e: i64 = e.trim().parse().map_err(|_| Error::Parse(format!("exponent {e:?}")))?;
                    Ok((field.from_int(c), e))
                })
                .collect::<Result<Vec<_>>>()?;
            if terms.iter().all(|(c, _)| *c == 0) {
                return Ok(None);
            }
            Ok(Some(Laurent::from_terms(field, &terms, precision)))
        })
        .collect()
}

impl fmt::Debug for ComposedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} / {:?}", self.num, self.den)
    }
}

/// Value and residue class of `f` under the composed valuation.
pub fn composed_class(f: &ComposedElement) -> Result<ComposedClass> {
    if f.field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic(u64::from(f.field.q())));
    }
    let (vt, r) = f.t_adic()?;
    let vs = r.valuation()?;
    Ok(ComposedClass {
        value: LexValue { t_component: vt, s_component: vs, precision: r.relative_precision() },
        residue_square: f.field.is_square(r.leading()?),
    })
}

/// `Q(F_q)` extended by `C_2 × C_2`: the model of `K/_m(1+M_v)K*²` for the
/// composed valuation. Coset `1` is the `t` direction, coset `2` the `s` direction.
pub fn composed_hyperfield(q: u64) -> Result<(FiniteHyperfield, QuotientPresentation)> {
    group_extension_build(&qh_finite_field(q)?, 2)
}

pub fn class_elem(pres: &QuotientPresentation, class: (u8, u8, bool)) -> Elem {
    let (tp, sp, sq) = class;
    let base = &pres.base;
    let b = if sq { base.one() } else { base.nonzero().find(|&x| x != base.one()).expect("nonsquare class") };
    pres.element(b, tp as usize + 2 * sp as usize)
}

#[derive(Debug, Clone, Serialize)]
pub struct ComposedReport {
    pub q: u64,
    pub samples: usize,
    /// Distinct `(t-parity, s-parity, residue square)` classes hit.
    pub classes_hit: usize,
    pub idx_value: usize,
    pub idx_unit: usize,
    /// The coarsening map from the `t`-adic model to the composed model is an isomorphism.
    pub coarsening_is_iso: bool,
    /// Every sample's class agrees with the class read through the `t`-adic level.
    pub tower_commutes: bool,
    /// Sums of residue-copy samples stay in, and cover, the model's sums.
    pub residue_sums_ok: bool,
}

impl ComposedReport {
    pub fn passed(&self) -> bool {
        self.classes_hit == 8 && self.idx_value == 4 && self.idx_unit == 2 && self.coarsening_is_iso && self.tower_commutes && self.residue_sums_ok
    }
}

fn random_element(field: &Gf, rng: &mut ChaCha8Rng, precision: usize, unit: bool) -> ComposedElement {
    let (a, b) = if unit { (0, 0) } else { (rng.gen_range(0..2usize), rng.gen_range(-1..2i64)) };
    let lead = rng.gen_range(1..field.q());
    let mut num: LaurentPolyT = vec![None; a + 3];
    let mut terms = vec![(lead, b)];
    terms.extend((1..precision as i64).map(|i| (rng.gen_range(0..field.q()), b + i)));
    num[a] = Some(Laurent::from_terms(field, &terms, precision));
    for c in num.iter_mut().skip(a + 1) {
        let terms: Vec<(Fe, i64)> = (0..precision as i64).map(|i| (rng.gen_range(0..field.q()), i - 1)).collect();
        if terms.iter().any(|&(c, _)| c != 0) {
            *c = Some(Laurent::from_terms(field, &terms, precision));
        }
    }
    if rng.gen_bool(0.5) && !unit {
        let dterms: Vec<(Fe, i64)> =
            std::iter::once((1, 0)).chain((1..precision as i64).map(|i| (rng.gen_range(0..field.q()), i))).collect();
        let den = vec![Some(Laurent::from_terms(field, &dterms, precision)), Some(Laurent::constant(field, 1, precision))];
        return ComposedElement { field: field.clone(), num, den };
    }
    ComposedElement::polynomial(field, num)
}

/// Element-level check of the composed valuation over `F_q((s))(t)`.
pub fn composed_check(q: u64, samples: usize, precision: usize, seed: u64) -> Result<ComposedReport> {
    let field = Gf::new(q)?;
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic(q));
    }
    let (h, pres) = composed_hyperfield(q)?;
    let (t_model, t_pres) = group_extension_build(&qh_laurent(q)?, 1)?;
    let (h, t_model) = (Arc::new(h), Arc::new(t_model));

    // Coarsening: (x in Q(F_q((s))), t-coset) ↦ (base part of x, t-coset + 2·s-coset of x).
    let lpres_base = qh_finite_field(q)?;
    let m = lpres_base.order() - 1;
    let phi_map: Vec<Elem> = t_model
        .elements()
        .map(|y| {
            if y == t_model.zero() {
                return h.zero();
            }
            let tc = t_pres.coset_of(y);
            let x = (y - 1) % (t_pres.base.order() - 1) + 1; // element of Q(F_q((s)))
            let sc = (x - 1) / m;
            let b = (x - 1) % m + 1;
            pres.element(b, tc + 2 * sc)
        })
        .collect();
    let phi = MorphismWitness::new(t_model.clone(), h.clone(), phi_map);
    let coarsening_is_iso = phi.as_ref().is_ok_and(MorphismWitness::is_isomorphism);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hit = std::collections::BTreeSet::new();
    let mut tower_commutes = true;
    let nonsq = field.least_nonsquare().expect("odd q");
    let generators: Vec<ComposedElement> = (0..8)
        .map(|k| ComposedElement::monomial(&field, if k & 4 == 0 { 1 } else { nonsq }, (k >> 1) & 1, k as usize & 1, precision))
        .collect();
    let mut check_one = |f: &ComposedElement| -> Result<()> {
        let c = composed_class(f)?;
        hit.insert(c.key());
        let (vt, r) = f.t_adic()?;
        let via_t = t_pres.element(laurent_class_elem(r.square_class()?), vt.rem_euclid(2) as usize);
        if let Ok(phi) = &phi {
            tower_commutes &= phi.apply(via_t) == class_elem(&pres, c.key());
        }
        Ok(())
    };
    for g in &generators {
        check_one(g)?;
    }
    for _ in 0..samples {
        check_one(&random_element(&field, &mut rng, precision, false))?;
    }

    // Residue copy: elements of classes a, b sum into a + b.
    let mut residue_sums_ok = true;
    for sa in [true, false] {
        for sb in [true, false] {
            let (ea, eb) = (class_elem(&pres, (0, 0, sa)), class_elem(&pres, (0, 0, sb)));
            let expected = h.sum(ea, eb).without(h.zero());
            let mut seen = ElemSet::EMPTY;
            for _ in 0..4 * samples.max(64) {
                let x = loop {
                    let x = random_element(&field, &mut rng, precision, true);
                    if composed_class(&x)?.residue_square == sa {
                        break x;
                    }
                };
                let s = if rng.gen_bool(0.5) && composed_class(&x.neg())?.residue_square == sb {
                    // y = -x + (higher order tail): the sum is the tail itself.
                    let tail = random_element(&field, &mut rng, precision, false);
                    tail.mul(&ComposedElement::monomial(&field, 1, 1, rng.gen_range(0..2), precision))?
                } else {
                    let y = loop {
                        let y = random_element(&field, &mut rng, precision, true);
                        if composed_class(&y)?.residue_square == sb {
                            break y;
                        }
                    };
                    if rng.gen_bool(0.3) {
                        // Same class, scaled by a square of positive value.
                        let sq = ComposedElement::monomial(&field, 1, 2, 2 * rng.gen_range(0..2), precision);
                        x.add(&y.mul(&sq)?)?
                    } else {
                        x.add(&y)?
                    }
                };
                let c = match composed_class(&s) {
                    Ok(c) => c,
                    Err(Error::PrecisionLoss(_)) => continue,
                    Err(e) => return Err(e),
                };
                let e = class_elem(&pres, c.key());
                residue_sums_ok &= expected.contains(e);
                seen.insert(e);
            }
            residue_sums_ok &= seen == expected;
        }
    }

    let idx_value = hit.iter().map(|k| (k.0, k.1)).collect::<std::collections::BTreeSet<_>>().len();
    let idx_unit = hit.iter().filter(|k| k.0 == 0 && k.1 == 0).count();
    Ok(ComposedReport {
        q,
        samples,
        classes_hit: hit.len(),
        idx_value,
        idx_unit,
        coarsening_is_iso,
        tower_commutes,
        residue_sums_ok,
    })
}
