//! Hamiltonians: `D^α` on wavelet windows, kernel operators of Hermitian site
//! matrices, and the real-line free and harmonic Hamiltonians.

pub mod hamiltonian;
pub mod kernel;
pub mod matrix_io;
pub mod vladimirov;

pub use hamiltonian::{CompositeHamiltonian, PadicHamiltonian, RealEigensystem, RealHamiltonian};
pub use kernel::{build_kernel, KernelOperator, SiteEigensystem};
pub use matrix_io::{parse_dense_matrix, parse_edge_list};
pub use vladimirov::VladimirovOperator;
