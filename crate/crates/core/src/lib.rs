//! Exact-arithmetic workbench for deformation theory over ℚ.
//!
//! Differential graded Lie algebras and simplicial deformation complexes are
//! modelled with finite-dimensional structure constants. Maurer-Cartan
//! elements, gauge actions and obstruction classes are computed over Artinian
//! coefficient rings with exact rational arithmetic.

pub mod artinian;
pub mod bch;
pub mod cosimplicial;
pub mod dgla;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod monadic;
pub mod sample;
pub mod sdc;
pub mod translate;

pub use error::{Error, Result};
