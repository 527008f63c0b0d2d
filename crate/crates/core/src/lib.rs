//! Exact-arithmetic toolkit for Diophantine equations over the rationals.
//!
//! Equations are lowered into systems built from the atoms `x_i + 1 = x_k`
//! and `x_i · x_j = x_k`; the size of the resulting system feeds the
//! conjectural height bounds in [`bounds`], which in turn size the exhaustive
//! searches in [`solver`]. [`decision`] hosts the oracle-relative procedures.

pub mod bounds;
pub mod decision;
pub mod error;
pub mod ir;
pub mod lowering;
pub mod polynomials;
pub mod rationals;
pub mod solver;
pub mod threesquares;

pub use error::{Error, Result};
