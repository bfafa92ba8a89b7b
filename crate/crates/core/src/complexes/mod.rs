pub mod fitting;
pub mod free;
pub mod homology;
pub mod resolution;
pub mod submodule;
pub mod syzygy;

pub use homology::{FpModule, GradedDims};
pub use free::{elem_to_polys, polys_to_elem, EvalMap, FreeModule, GradedMap, ModElem};
pub use resolution::{koszul, resolve_cokernel, resolve_from, resolve_quotient, BettiEntry, BettiTable, Complex, Resolution};
pub use submodule::Submodule;
