//! Uniform grids, sampled functions and the continuous Fourier transform.
//!
//! Convention: `f̂(ξ) = ∫ f(x) e^{-ixξ} dx`, inverse carrying `1/2π`.

mod fourier;
mod grid;
pub mod io;
pub mod quadrature;
mod sampled;

pub use fourier::{
    chirp_transform, fourier_transform, fourier_transform_direct, fourier_transform_dual,
    inverse_fourier_transform, inverse_fourier_transform_direct, spectral_l2_norm,
};
pub use grid::Grid;
pub use sampled::{l2_norm, SampledFunction, SpectralFunction};
