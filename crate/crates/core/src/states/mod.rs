//! Wavefunctions on `Q_p` (coset grids and wavelet spectra), on `R`, and on
//! the product `R × Q_p`.

pub mod grid;
pub mod io;
pub mod product;
pub mod real;
pub mod spectral;
pub mod window;

pub use grid::{discretize, GridState};
pub use product::{
    density_joint, density_padic, density_real, eval_mode, JointDensity, JointState, PadicDensity,
    ProductState, RealSector,
};
pub use real::{
    FnWave, GaussianTerm, HarmonicState, Oscillator, RealGrid, RealPacketState, RealWavefunction,
    UnitWave,
};
pub use spectral::{eval_wavelet, expand_indicator, IndicatorExpansion, SpectralState};
pub use window::{PadicMode, WaveletIndex, Window};
