//! Pseudorandom binary sequence families and their correlation properties.

pub mod analysis;
pub mod constructions;
pub mod corr;
pub mod gf;
mod ntt;
pub mod rng;
pub mod rsl;
pub mod sequence;

pub use corr::{CorrelationSpectrum, DemeritReport, Psc, Rational};
pub use sequence::BinarySequence;
