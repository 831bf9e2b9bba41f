//! Product states on `R × Q_p` and the three Born-rule densities.

use std::collections::BTreeMap;

use num_complex::Complex;

use super::grid::GridState;
use super::real::{HarmonicState, Oscillator, RealGrid, RealPacketState, RealWavefunction};
use super::spectral::{eval_wavelet, SpectralState};
use super::window::{PadicMode, Window};
use crate::error::{Error, Result};
use crate::padic::PAdicApprox;
use crate::scalar::{creal, czero, Real};

/// Real-line factor of a product state.
#[derive(Clone, Debug, PartialEq)]
pub enum RealSector<T> {
    Packets(RealPacketState<T>),
    Harmonic(HarmonicState<T>),
}

impl<T: Real> RealWavefunction<T> for RealSector<T> {
    fn eval(&self, x: T) -> Complex<T> {
        match self {
            RealSector::Packets(s) => s.eval(x),
            RealSector::Harmonic(s) => s.eval(x),
        }
    }

    fn norm_sqr(&self) -> T {
        match self {
            RealSector::Packets(s) => s.norm_sqr(),
            RealSector::Harmonic(s) => s.norm_sqr(),
        }
    }
}

/// `Ψ(x_∞, x_p) = Ψ_∞(x_∞) Ψ_p(x_p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState<T> {
    pub real: RealSector<T>,
    pub padic: SpectralState<T>,
}

impl<T: Real> ProductState<T> {
    pub fn new(real: RealSector<T>, padic: SpectralState<T>) -> Self {
        Self { real, padic }
    }

    pub fn norm(&self) -> T {
        self.real.norm_sqr().sqrt() * self.padic.norm()
    }

    pub fn eval(&self, x_real: T, x_padic: &PAdicApprox) -> Complex<T> {
        self.real.eval(x_real) * self.padic.to_grid().eval(x_padic)
    }

    /// Joint coefficients `A_{rbk,m} = a_m c_rbk`; needs a harmonic real factor.
    pub fn to_joint(&self) -> Result<JointState<T>> {
        let RealSector::Harmonic(h) = &self.real else {
            return Err(Error::SectorMismatch(
                "joint coefficients need a harmonic real factor".into(),
            ));
        };
        let mut coefficients = BTreeMap::new();
        for (mode, c) in self.padic.modes() {
            for (m, a) in h.coefficients.iter().enumerate() {
                coefficients.insert((mode.clone(), m), a * c);
            }
        }
        Ok(JointState {
            window: self.padic.window(),
            oscillator: h.oscillator,
            cutoff: h.cutoff(),
            coefficients,
        })
    }
}

/// General (possibly entangled) state `Σ A_{rbk,m} θ_m(x_∞) ψ_rbk(x_p)`
/// on a window times a harmonic cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState<T> {
    pub window: Window,
    pub oscillator: Oscillator<T>,
    pub cutoff: usize,
    pub coefficients: BTreeMap<(PadicMode, usize), Complex<T>>,
}

impl<T: Real> JointState<T> {
    pub fn norm_sqr(&self) -> T {
        self.coefficients.values().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn coefficient(&self, mode: &PadicMode, m: usize) -> Complex<T> {
        self.coefficients
            .get(&(mode.clone(), m))
            .copied()
            .unwrap_or_else(czero)
    }

    /// The explicit double sum evaluated at a point.
    pub fn eval(&self, x_real: T, x_padic: &PAdicApprox) -> Result<Complex<T>> {
        let thetas = self.oscillator.eigenfunctions(x_real, self.cutoff);
        let mut acc = czero();
        for ((mode, m), a) in &self.coefficients {
            let psi = eval_mode(self.window, mode, x_padic)?;
            acc = acc + a * psi * thetas[*m];
        }
        Ok(acc)
    }
}

/// Value of a window basis function at a point.
pub fn eval_mode<T: Real>(window: Window, mode: &PadicMode, x: &PAdicApprox) -> Result<Complex<T>> {
    match mode {
        PadicMode::Wavelet(idx) => eval_wavelet(idx, x),
        PadicMode::Constant => Ok(if window.domain().contains(x) {
            creal(T::pow_prime(window.prime(), T::lit(-(window.top() as f64) / 2.0)))
        } else {
            czero()
        }),
    }
}

/// A nonnegative density on the cosets of a window (Born rule Type 2).
#[derive(Clone, Debug, PartialEq)]
pub struct PadicDensity<T> {
    pub window: Window,
    pub values: Vec<T>,
}

impl<T: Real> PadicDensity<T> {
    /// `∫ ρ dx_p`, exact quadrature.
    pub fn integral(&self) -> T {
        self.values.iter().fold(T::zero(), |a, &v| a + v) * self.window.cell_measure::<T>()
    }
}

/// `|Ψ_p|²`, optionally divided by `‖Ψ_p‖²`.
pub fn density_padic<T: Real>(state: &GridState<T>, normalize: bool) -> Result<PadicDensity<T>> {
    let scale = if normalize {
        let n = state.norm_sqr();
        if n == T::zero() {
            return Err(Error::ZeroNorm);
        }
        n.recip()
    } else {
        T::one()
    };
    Ok(PadicDensity {
        window: state.window(),
        values: state.values().iter().map(|v| v.norm_sqr() * scale).collect(),
    })
}

/// `|Ψ_∞|²` on a real grid (Born rule Type 1), optionally divided by the exact
/// `‖Ψ_∞‖²`.
pub fn density_real<T: Real>(
    psi: &impl RealWavefunction<T>,
    grid: &RealGrid<T>,
    normalize: bool,
) -> Result<Vec<T>> {
    let scale = if normalize {
        let n = psi.norm_sqr();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        n.recip()
    } else {
        T::one()
    };
    Ok(grid.points().map(|x| psi.eval(x).norm_sqr() * scale).collect())
}

/// Joint density table (Born rule Type 3): `values[i][j]` at real sample `i`
/// and coset `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDensity<T> {
    pub grid: RealGrid<T>,
    pub window: Window,
    pub values: Vec<Vec<T>>,
}

impl<T: Real> JointDensity<T> {
    pub fn integral(&self) -> T {
        let cell = self.window.cell_measure::<T>();
        let rows: Vec<T> = self
            .values
            .iter()
            .map(|row| row.iter().fold(T::zero(), |a, &v| a + v) * cell)
            .collect();
        self.grid.integrate(&rows)
    }
}

/// `|Ψ_∞(x)|² |Ψ_p(x_p)|² / ‖Ψ‖²`.
pub fn density_joint<T: Real>(state: &ProductState<T>, grid: &RealGrid<T>) -> Result<JointDensity<T>> {
    let real = density_real(&state.real, grid, true)?;
    let padic = density_padic(&state.padic.to_grid(), true)?;
    let values = real
        .iter()
        .map(|&a| padic.values.iter().map(|&b| a * b).collect())
        .collect();
    Ok(JointDensity { grid: *grid, window: padic.window, values })
}
