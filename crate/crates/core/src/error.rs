use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },
    #[error("invalid prime {0}: must be a prime in [2, 65521]")]
    InvalidPrime(u32),
    #[error("digit {digit} out of range for p={prime}")]
    InvalidDigit { prime: u32, digit: u32 },
    #[error("valuation {valuation} exceeds resolution cap {cap}")]
    ValuationAboveCap { valuation: i32, cap: i32 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("ball {0} is not contained in the domain window")]
    BallOutsideDomain(String),
    #[error("resolution {have} is coarser than required level {need}")]
    ResolutionTooCoarse { have: i32, need: i32 },
    #[error("wavelet index {0} is not admissible in the window")]
    IndexOutsideWindow(String),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("{sites} sites do not fit in level {level} (at most {capacity})")]
    TooManySites { sites: usize, level: u32, capacity: usize },
    #[error("site index {site} is not in G_l for level {level}")]
    InvalidSite { site: u64, level: u32 },
    #[error("matrix shape {rows}x{cols} does not match {sites} sites")]
    MatrixShape { rows: usize, cols: usize, sites: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("the free real Hamiltonian has no L2 eigenbasis; use the packet propagator")]
    NoEigenbasis,
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
    #[error("config field `{field}`: {reason}")]
    Config { field: String, reason: String },
    #[error("numerical contract violated: {check} off by {deviation:e} (tolerance {tolerance:e})")]
    Contract { check: String, deviation: f64, tolerance: f64 },
}

impl Error {
    /// Whether the error stems from invalid input rather than from a failed
    /// numerical check.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Contract { .. } | Error::ZeroNorm | Error::NoEigenbasis)
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
