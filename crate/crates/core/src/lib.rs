//! Exact computations with graded Artinian algebras: ideals, duality,
//! free resolutions, and splitting certificates for second syzygies of
//! canonical modules.

pub mod error;
pub mod field;
pub mod linalg;
pub mod ring;
pub mod ideal;
pub mod complexes;
pub mod splitting;
pub mod testmod;
pub mod classify;
pub mod io;
pub mod fixtures;
pub mod api;

pub use error::{Error, Result};
