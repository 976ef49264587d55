//! Exact Fourier analysis on the symmetric group `S_n` and spectral
//! edge-isoperimetry of the transposition graph.

pub mod characters;
pub mod combinatorics;
pub mod error;
pub mod fourier;
pub mod group;
pub mod isolab;
pub mod linalg;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Exact function on `S_n`.
pub type ExactFunction = fourier::GroupFunction<Rational>;
/// Floating-point function on `S_n`.
pub type FloatFunction = fourier::GroupFunction<f64>;
pub type ExactClassFunction = characters::ClassFunction<Rational>;
pub type ExactCayleySpec = spectral::CayleySpec<Rational>;
pub type ExactSpectrum = spectral::SpectrumReport<Rational>;
