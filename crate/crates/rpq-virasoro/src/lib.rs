//! Exact-arithmetic workbench for R(p,q)-deformed super Witt/Virasoro
//! n-algebras.
//!
//! The crate builds the graded operator algebra generated by the deformed
//! Witt generators, the weighted binary brackets and Levi-Civita n-brackets
//! with their closed forms and central extensions, the level-graded toy
//! multiplication operators, and the Virasoro-constraint differential
//! operators in infinitely many times. Every stated identity is checked by
//! brute-force computation over symbolic deformation parameters with exact
//! rational arithmetic, and each check yields a pass/fail verdict with the
//! first counterexample on failure.

pub mod brackets;
pub mod config;
pub mod constraints;
pub mod deformation;
pub mod error;
pub mod eval;
pub mod operators;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod superspace;
pub mod toy;

pub use deformation::{preset, Deformation, Tau, PRESET_NAMES};
pub use error::{Error, Result};
pub use poly::{Ctx, LaurentPoly, SubstTarget};
pub use scalar::Scalar;
