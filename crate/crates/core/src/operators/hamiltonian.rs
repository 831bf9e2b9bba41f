use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::states::{Oscillator, RealSector};

use super::kernel::KernelOperator;
use super::vladimirov::VladimirovOperator;

/// Real-line Hamiltonian `H_∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RealHamiltonian<T> {
    Free { mass: T },
    Harmonic { mass: T, omega: T },
}

/// Discrete spectrum of the harmonic oscillator up to a cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct RealEigensystem<T> {
    pub oscillator: Oscillator<T>,
    pub energies: Vec<T>,
}

impl<T: Real> RealEigensystem<T> {
    /// Normalized Hermite function `θ_m(x)`.
    pub fn eigenfunction(&self, m: usize, x: T) -> T {
        self.oscillator.eigenfunction(m, x)
    }
}

impl<T: Real> RealHamiltonian<T> {
    pub fn mass(&self) -> T {
        match *self {
            RealHamiltonian::Free { mass } | RealHamiltonian::Harmonic { mass, .. } => mass,
        }
    }

    pub fn oscillator(&self) -> Result<Oscillator<T>> {
        match *self {
            RealHamiltonian::Harmonic { mass, omega } => Oscillator::new(mass, omega),
            RealHamiltonian::Free { .. } => Err(Error::NoEigenbasis),
        }
    }

    /// `E_m = ω(m + 1/2)` for `m < cutoff`. The free particle has no `L²`
    /// eigenbasis; evolve it with the packet propagator instead.
    pub fn real_eigensystem(&self, cutoff: usize) -> Result<RealEigensystem<T>> {
        let oscillator = self.oscillator()?;
        Ok(RealEigensystem { oscillator, energies: (0..cutoff).map(|m| oscillator.energy(m)).collect() })
    }

    /// `⟨ψ, H_∞ ψ⟩`.
    pub fn expectation(&self, state: &RealSector<T>) -> Result<T> {
        match (self, state) {
            (RealHamiltonian::Free { mass }, RealSector::Packets(s)) => Ok(s.kinetic_energy(*mass)),
            (RealHamiltonian::Harmonic { .. }, RealSector::Harmonic(s)) => {
                if s.oscillator != self.oscillator()? {
                    return Err(Error::SectorMismatch("oscillator parameters differ".into()));
                }
                Ok(s.energy())
            }
            _ => Err(Error::SectorMismatch("real state does not match the Hamiltonian variant".into())),
        }
    }
}

/// The p-adic part of a composite Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub enum PadicHamiltonian<T: Real> {
    Vladimirov(VladimirovOperator<T>),
    Kernel(KernelOperator<T>),
}

/// `H_∞ + H_p` acting on product states.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeHamiltonian<T: Real> {
    pub real: RealHamiltonian<T>,
    pub padic: PadicHamiltonian<T>,
}

impl<T: Real> CompositeHamiltonian<T> {
    pub fn new(real: RealHamiltonian<T>, padic: PadicHamiltonian<T>) -> Self {
        Self { real, padic }
    }

    pub fn vladimirov(&self) -> Result<&VladimirovOperator<T>> {
        match &self.padic {
            PadicHamiltonian::Vladimirov(op) => Ok(op),
            PadicHamiltonian::Kernel(_) => {
                Err(Error::SectorMismatch("wavelet states need the Vladimirov operator".into()))
            }
        }
    }
}
