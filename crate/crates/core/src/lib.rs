//! Numerical laboratory for the BBM equation in multiplier form
//! `u_t = -i φ(D)(u + u²/2)`, `φ(ξ) = ξ / (1 + ξ²)`.
//!
//! Functions live on discrete frequency grids ([`grid`], [`spectral`]).
//! [`spaces`] evaluates Fourier–Lebesgue, Fourier amalgam, modulation and
//! Wiener amalgam norms. [`dynamics`] holds the propagator, the Duhamel
//! operator, Picard iterates, the fixed-point solver and an RK4 integrator.
//! [`oracles`] turns the quantitative estimates about these objects into
//! executable checks, and [`inflation`] runs the norm-inflation sweeps.

pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod inflation;
pub mod oracles;
pub mod quadrature;
pub mod sampling;
pub mod spaces;
pub mod spectral;
pub mod spectrum_io;

pub use error::{Error, Result};
pub use grid::{FrequencyGrid, GridKind};
pub use quadrature::QuadratureSpec;
pub use spaces::{Family, Partition, SpaceSpec};
pub use spectral::{Overflow, SpectralFunction};
