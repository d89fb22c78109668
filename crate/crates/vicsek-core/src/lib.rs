//! Spectral analysis on the second-order Vicsek set.
//!
//! The Vicsek set `VS_2` is the self-similar subset of the unit square fixed
//! by five contractions of ratio 1/3 toward the four corners and the center.
//! This crate builds its graph approximations, their Neumann Laplacians, and
//! the spectral-decimation machinery that relates eigenvalues across levels,
//! and it verifies numerically that every eigenfunction of the second
//! Neumann eigenvalue attains its extrema on the four-point boundary.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.
//!
//! Module map:
//!
//! * [`words`] — symbolic addresses `(word, corner)` for the vertices, exact
//!   rational projection to the plane, rotation symmetries.
//! * [`graph`] — level-`m` graph approximations, Neumann Laplacians, graph
//!   energy.
//! * [`linalg`] — dense symmetric Jacobi eigensolver used as a spectral
//!   oracle.
//! * [`decimation`] — the cubic `R`, its branch inverses, the eigenvalue
//!   sequence and its renormalized limit, eigenfunction extension, and
//!   Neumann spectrum enumeration.
//! * [`hotspots`] — the partition-of-unity functions `f, g, h, k`, their
//!   recursions and closed forms, bound sweeps, and the boundary-extremum
//!   check for eigenspace members.
//! * [`identities`] — exact polynomial identity checks and grid inequality
//!   checks for the extension-coefficient algebra.
//! * [`highprec`] — self-contained fixed-point arithmetic (320 fractional
//!   bits) backing the high-precision mode.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod decimation;
mod error;
pub mod graph;
pub mod highprec;
pub mod hotspots;
pub mod identities;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod scalar;
pub mod words;

pub use decimation::LambdaTable;
pub use error::Error;
pub use rational::Rational;
pub use scalar::{Precision, Real};

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
