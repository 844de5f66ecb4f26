//! Exact symbolic engine for the computable core of CY4 wall-crossing:
//! dg-quivers with superpotentials and their CY4 completions, deformation
//! complexes of quiver representations, the graded determinant-line sign
//! calculus, truncated equivariant series, free-Lie-algebra wall-crossing
//! formulas, and a toy projective-bundle intersection model.
//!
//! All coefficients are exact: rationals, Gaussian rationals, or rational
//! functions. There is no floating point anywhere in this crate.

pub mod error;
pub mod num;
pub mod io;
pub mod presets;
pub mod report;
pub mod quiver;
pub mod rep;
pub mod series;
pub mod signs;
pub mod toy;
pub mod wc;

pub use error::{CoreError, Result};
