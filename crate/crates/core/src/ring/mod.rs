//! Graded polynomial rings, truncations and Artinian quotients.

mod algebra;
pub mod monomial;
pub mod pairing;
mod poly;

pub use algebra::{Algebra, RingElem, Sparse};
pub use monomial::{MonoKey, MonomialTable};
pub use poly::{graded_lex_cmp, Poly};
pub use pairing::PairingData;
