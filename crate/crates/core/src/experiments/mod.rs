//! Configuration-driven scenarios: the two-slit model, continuous-time
//! quantum walks, apparatus scans with collapse, and spectrum listings.

pub mod config;
pub mod scenarios;

pub use config::{Apparatus, MatrixFormat, Scan, ScenarioConfig, ScenarioKind};
pub use scenarios::{
    fringe_visibility, load_kernel, run, run_collapse, run_ctqw, run_spectrum, run_two_slit, spectrum_rows,
    two_slit_setup, ScenarioOutput, SpectrumRow, TwoSlitSetup,
};
