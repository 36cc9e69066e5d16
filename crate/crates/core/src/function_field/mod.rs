//! Element-level arithmetic in `F_q(t)`: polynomials, factorization,
//! square classes, local symbols at places, and the composed rank-2
//! valuation on `F_q((s))(t)`.

mod char2;
mod classes;
mod composed;
mod factor;
mod poly;
mod ratfn;

pub use char2::*;
pub use classes::*;
pub use composed::*;
pub use factor::*;
pub use poly::*;
pub use ratfn::*;
