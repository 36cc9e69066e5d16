//! Quadratic hyperfields `Q(K)` of concrete fields, Hilbert symbols, and the
//! group-extension builder.

mod build;
mod descriptor;
mod hilbert;
mod laurent_check;

pub use build::{
    finite_square_quotient, group_extension_build, least_nonresidue, padic_class, padic_representatives,
    qh_archimedean, qh_complex, qh_finite_field, qh_padic, qh_real, Archimedean, QuotientPresentation,
};
pub use descriptor::{FieldDescriptor, Index};
pub use hilbert::{hilbert_symbol, hilbert_symbol_int, legendre, relevant_places, split_valuation, QPlace};
pub use laurent_check::{cross_check_laurent, laurent_class_elem, qh_laurent};

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::hyperfield::FiniteHyperfield;

/// Builds `Q(K)` for a descriptor with finitely many square classes.
pub fn qh_from_descriptor(desc: &FieldDescriptor) -> Result<FiniteHyperfield> {
    desc.validate()?;
    match desc {
        FieldDescriptor::Finite(q) => {
            if q % 2 == 0 {
                Err(Error::EvenCharacteristic(*q))
            } else {
                qh_finite_field(*q)
            }
        }
        FieldDescriptor::Real => Ok(qh_real()),
        FieldDescriptor::Complex => Ok(qh_complex()),
        FieldDescriptor::AlgClosed(2) => Err(Error::EvenCharacteristic(2)),
        FieldDescriptor::AlgClosed(_) => Ok(qh_complex()),
        FieldDescriptor::Padic { p: 2, degree } if *degree > 1 => Err(Error::UnsupportedDyadicExtension(*degree)),
        FieldDescriptor::Padic { p, degree: 1 } => qh_padic(*p),
        FieldDescriptor::Padic { p, degree } => {
            // Unramified extension of Q_p, p odd: residue F_{p^f}, one uniformizer class.
            let (h, _) = group_extension_build(&qh_finite_field(p.pow(*degree))?, 1)?;
            Ok(h)
        }
        FieldDescriptor::Laurent(base) => match **base {
            FieldDescriptor::Finite(q) if q % 2 == 1 => qh_laurent(q),
            _ => {
                if desc.characteristic() == 2 {
                    return Err(Error::EvenCharacteristic(2));
                }
                let (h, _) = group_extension_build(&qh_from_descriptor(base)?, 1)?;
                Ok(h)
            }
        },
        FieldDescriptor::RationalFunction(_) => {
            Err(Error::UnsupportedField(format!("{desc} has infinitely many square classes")))
        }
    }
}

fn cache() -> &'static RwLock<HashMap<FieldDescriptor, Arc<FiniteHyperfield>>> {
    static CACHE: OnceLock<RwLock<HashMap<FieldDescriptor, Arc<FiniteHyperfield>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`qh_from_descriptor`]; safe under concurrent readers.
pub fn qh_cached(desc: &FieldDescriptor) -> Result<Arc<FiniteHyperfield>> {
    if let Some(h) = cache().read().expect("cache lock").get(desc) {
        return Ok(h.clone());
    }
    let h = Arc::new(qh_from_descriptor(desc)?);
    let mut w = cache().write().expect("cache lock");
    Ok(w.entry(desc.clone()).or_insert(h).clone())
}

/// Parses a descriptor string and builds its quadratic hyperfield.
pub fn qh(descriptor: &str) -> Result<Arc<FiniteHyperfield>> {
    qh_cached(&FieldDescriptor::parse(descriptor)?)
}

/// Descriptors of the standard test corpus: finite fields `q ≤ 49`, `R`,
/// `C`, `Q_p` for `p < 50`, and Laurent fields over `F_q`, `q ≤ 49`.
pub fn corpus_descriptors() -> Vec<String> {
    let odd_q = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49];
    let primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut out: Vec<String> = vec!["R".into(), "C".into()];
    out.extend(odd_q.iter().map(|q| format!("F{q}")));
    out.extend(primes.iter().map(|p| if *p == 2 { "Q2".to_string() } else { format!("Qp:{p}") }));
    out.extend(odd_q.iter().map(|q| format!("F{q}((t))")));
    out.extend(["R((t))", "C((t))"].map(String::from));
    out
}

/// Bases whose group extensions of rank 1 and 2 join the corpus.
pub const EXTENSION_BASES: [&str; 7] = ["C", "R", "F3", "F5", "Qp:3", "Qp:5", "Q2"];

/// The corpus as named hyperfields, including the group extensions of rank
/// `1` and `2` of [`EXTENSION_BASES`].
pub fn corpus() -> Result<Vec<(String, Arc<FiniteHyperfield>)>> {
    let mut out = Vec::new();
    for d in corpus_descriptors() {
        out.push((d.clone(), qh(&d)?));
    }
    for b in EXTENSION_BASES {
        let base = qh(b)?;
        for r in 1..=2 {
            let (h, _) = group_extension_build(&base, r)?;
            out.push((format!("ext({b}, {r})"), Arc::new(h)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::{find_isomorphism, validate_axioms};

    #[test]
    fn descriptor_builds() {
        for (d, n) in [("F3", 3), ("F9", 3), ("R", 3), ("C", 2), ("Qp:3", 5), ("Q2", 9), ("F3((t))", 5), ("R((t))", 5), ("Qp:3[2]", 5), ("F3((t))((t))", 9)] {
            let h = qh(d).unwrap();
            assert_eq!(h.order(), n, "{d}");
            assert!(validate_axioms(&h).is_valid(), "{d}");
        }
        assert!(matches!(qh("Qp:2[2]"), Err(Error::UnsupportedDyadicExtension(2))));
        assert!(matches!(qh("F3(t)"), Err(Error::UnsupportedField(_))));
        assert!(matches!(qh("F4"), Err(Error::EvenCharacteristic(_))));
    }

    #[test]
    fn cache_returns_shared_values() {
        let a = qh("Qp:7").unwrap();
        let b = qh("Qp:7").unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(find_isomorphism(&qh("Qp:3[2]").unwrap(), &qh("Qp:5").unwrap()).is_some());
    }

    #[test]
    fn concurrent_cache_readers_agree() {
        let handles: Vec<_> = (0..8).map(|_| std::thread::spawn(|| qh("Qp:11").unwrap())).collect();
        let first = qh("Qp:11").unwrap();
        for h in handles {
            assert_eq!(*h.join().unwrap(), *first);
        }
    }
}
