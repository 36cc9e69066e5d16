//! Exact computations with quadratic hyperfields.
//!
//! The crate builds finite hyperfields as explicit tables, checks the
//! hyperfield axioms, forms quotients and primes, and decides isomorphism.
//! On top of that kernel it constructs the quadratic hyperfield `Q(K)` of
//! concrete fields (finite, real, complex, p-adic, Laurent series), classifies
//! valuations on function fields of curves over local fields by their index
//! profiles, and provides an element-level laboratory for `F_q(t)`.
//!
//! Witt equivalence of two fields is decided by comparing their quadratic
//! hyperfields:
//!
//! ```
//! use hyperwitt::quadratic::{qh_padic, qh_finite_field};
//! use hyperwitt::hyperfield::find_isomorphism;
//!
//! let q3 = qh_padic(3).unwrap();
//! let q7 = qh_padic(7).unwrap();
//! let q5 = qh_padic(5).unwrap();
//! assert!(find_isomorphism(&q3, &q7).is_some());
//! assert!(find_isomorphism(&q3, &q5).is_none());
//! assert_eq!(qh_finite_field(9).unwrap().order(), 3);
//! ```

pub mod census;
pub mod elemset;
pub mod error;
pub mod exec;
pub mod function_field;
pub mod gf;
pub mod hyperfield;
pub mod laurent;
pub mod oracles;
pub mod quadratic;
pub mod valuation;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use exec::Execution;
pub use hyperfield::{FiniteHyperfield, MorphismWitness, Subgroup};
