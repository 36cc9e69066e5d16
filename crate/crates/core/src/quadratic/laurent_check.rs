use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::build::{group_extension_build, qh_finite_field};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::gf::{Fe, Gf};
use crate::hyperfield::{Elem, FiniteHyperfield};
use crate::laurent::{Laurent, DEFAULT_PRECISION};

const SAMPLES_PER_PAIR: usize = 96;
const CHECK_SEED: u64 = 0x5eed_1a0e;

/// Element of `Q(F_q((t)))` (as built by [`qh_laurent`]) holding the class
/// `(v mod 2, leading coefficient is a square)`.
pub fn laurent_class_elem(class: (u8, bool)) -> Elem {
    // Base Q(F_q) has nonzero elements 1 (squares) and 2 (nonsquares); coset t follows.
    1 + usize::from(!class.1) + 2 * class.0 as usize
}

fn random_in_class(f: &Gf, class: (u8, bool), rng: &mut ChaCha8Rng, precision: usize) -> Laurent {
    let lead: Fe = loop {
        let c = rng.gen_range(1..f.q());
        if f.is_square(c) == class.1 {
            break c;
        }
    };
    let v = class.0 as i64 + 2 * rng.gen_range(0..2i64);
    let mut terms = vec![(lead, v)];
    for i in 1..precision as i64 {
        terms.push((rng.gen_range(0..f.q()), v + i));
    }
    Laurent::from_terms(f, &terms, precision)
}

/// Checks a built `Q(F_q((t)))` against truncated series arithmetic: sampled
/// sums of representatives must land in the table's sums, and every nonzero
/// class of each table sum must be hit.
pub fn cross_check_laurent(q: u64, h: &FiniteHyperfield, precision: usize) -> Result<()> {
    let f = Gf::new(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED ^ q);
    let classes = [(0u8, true), (0, false), (1, true), (1, false)];
    for &ca in &classes {
        for &cb in &classes {
            let (a, b) = (laurent_class_elem(ca), laurent_class_elem(cb));
            let expected = h.sum(a, b).without(h.zero());
            let mut seen = ElemSet::EMPTY;
            for _ in 0..SAMPLES_PER_PAIR {
                let x = random_in_class(&f, ca, &mut rng, precision);
                let mut y = random_in_class(&f, cb, &mut rng, precision);
                // Force leading-term cancellation half the time, when -x lies in class cb.
                if rng.gen_bool(0.5) && x.neg().square_class()? == cb {
                    let v = x.valuation()? + rng.gen_range(1..3i64);
                    let tail = random_in_class(&f, ((v % 2) as u8, rng.gen_bool(0.5)), &mut rng, precision);
                    let tail = tail.shift(v - tail.valuation()?);
                    y = x.neg().add(&tail);
                }
                let s = x.add(&y);
                if s.is_indistinguishable_from_zero() {
                    continue;
                }
                let c = laurent_class_elem(s.square_class()?);
                if !expected.contains(c) {
                    return Err(Error::AxiomFailure(format!(
                        "series sum of classes {} and {} has class {} outside the table",
                        h.label(a),
                        h.label(b),
                        h.label(c)
                    )));
                }
                seen.insert(c);
            }
            if seen != expected {
                return Err(Error::PrecisionLoss(format!(
                    "sampled sums of {} and {} did not reach every class at precision {precision}",
                    h.label(a),
                    h.label(b)
                )));
            }
        }
    }
    Ok(())
}

/// `Q(F_q((t)))` for odd `q`: the group extension of `Q(F_q)` by `C_2`,
/// cross-checked against truncated series at precision 24.
pub fn qh_laurent(q: u64) -> Result<FiniteHyperfield> {
    let base = qh_finite_field(q)?;
    let (h, _) = group_extension_build(&base, 1)?;
    cross_check_laurent(q, &h, DEFAULT_PRECISION)?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::{find_isomorphism, level, Level};
    use crate::quadratic::qh_padic;

    #[test]
    fn small_laurent_fields() {
        let h3 = qh_laurent(3).unwrap();
        assert_eq!(h3.order(), 5);
        assert!(find_isomorphism(&h3, &qh_padic(3).unwrap()).is_some());
        let h5 = qh_laurent(5).unwrap();
        assert_eq!(level(&h5), Level::Finite(1));
        assert_eq!(h5.order(), 5);
    }

    #[test]
    fn class_layout_matches_labels() {
        let h = qh_laurent(3).unwrap();
        assert_eq!(h.label(laurent_class_elem((0, false))), "-1");
        assert_eq!(h.label(laurent_class_elem((1, true))), "t");
        assert_eq!(h.label(laurent_class_elem((1, false))), "-t");
    }

    #[test]
    fn wrong_table_is_caught() {
        let q5_table = qh_laurent(5).unwrap();
        assert!(cross_check_laurent(3, &q5_table, DEFAULT_PRECISION).is_err());
        assert!(matches!(qh_laurent(2), Err(Error::EvenCharacteristic(_))));
    }
}
