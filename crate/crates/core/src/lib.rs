//! Numerical laboratory for Ingham and Paley-Wiener type uncertainty
//! principles: continuous Fourier transforms on uniform grids, decay
//! envelopes and their Ingham integrals, the sinc-product construction of
//! compactly supported functions with prescribed Fourier decay, spherical
//! analysis on complex semisimple groups (SL(2,C) and products), Schrödinger
//! propagators, and the sharpness counterexamples on SL(2,C).

// `!(x > 0.0)` style guards deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counterexample;
pub mod envelope;
pub mod error;
pub mod group;
pub mod ingham;
pub mod numerics;
pub mod profiles;
pub mod schrodinger;

pub use error::{LabError, Result};
pub use num_complex::Complex64;
