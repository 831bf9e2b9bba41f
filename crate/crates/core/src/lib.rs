//! Quantum mechanics on the configuration space `R × Q_p`.
//!
//! * [`padic`]: exact finite-window p-adic numbers, balls, the additive
//!   character and the Monna map.
//! * [`states`]: coset grids, wavelet spectra, Gaussian packets, product states
//!   and Born-rule densities.
//! * [`operators`]: the Vladimirov operator `D^α`, kernel operators built from
//!   Hermitian matrices, and the real-line Hamiltonians.
//! * [`dynamics`]: exact spectral time evolution in every sector.
//! * [`measurement`]: ball projections, Monna pull-backs, interaction
//!   probabilities, collapse, and the GRW comparison model.
//! * [`experiments`]: configuration-driven scenarios (two-slit, CTQW, collapse,
//!   spectrum) with CSV output.
//!
//! Floating-point types are generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod measurement;
pub mod operators;
pub mod padic;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use padic::{Ball, BallRelation, FractionIndex, PAdicApprox, Valuation};
pub use scalar::Real;
pub use states::{PadicMode, WaveletIndex, Window};

pub type Complex64 = num_complex::Complex<f64>;
pub type GridState64 = states::GridState<f64>;
pub type GridState32 = states::GridState<f32>;
pub type SpectralState64 = states::SpectralState<f64>;
pub type SpectralState32 = states::SpectralState<f32>;
pub type RealPacketState64 = states::RealPacketState<f64>;
pub type HarmonicState64 = states::HarmonicState<f64>;
pub type ProductState64 = states::ProductState<f64>;
pub type JointState64 = states::JointState<f64>;
pub type VladimirovOperator64 = operators::VladimirovOperator<f64>;
pub type KernelOperator64 = operators::KernelOperator<f64>;
pub type RealHamiltonian64 = operators::RealHamiltonian<f64>;
pub type CompositeHamiltonian64 = operators::CompositeHamiltonian<f64>;
