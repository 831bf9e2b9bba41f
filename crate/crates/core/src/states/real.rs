//! Real-line wavefunctions: closed-form Gaussian packets and harmonic
//! oscillator eigen-expansions.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{creal, czero, Real};

/// A complex-valued function on `R` with a known `L²` norm.
pub trait RealWavefunction<T: Real> {
    fn eval(&self, x: T) -> Complex<T>;
    fn norm_sqr(&self) -> T;
}

/// Uniform sample grid `start + i·spacing`, `i < count`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealGrid<T> {
    pub start: T,
    pub spacing: T,
    pub count: usize,
}

impl<T: Real> RealGrid<T> {
    pub fn new(start: T, spacing: T, count: usize) -> Result<Self> {
        if !(spacing > T::zero()) || count < 2 {
            return Err(Error::InvalidParameter {
                name: "real_grid",
                reason: "spacing must be positive and count at least 2".into(),
            });
        }
        Ok(Self { start, spacing, count })
    }

    /// Symmetric grid over `[-extent, extent]`.
    pub fn symmetric(extent: T, spacing: T) -> Result<Self> {
        let n = (T::lit(2.0) * extent / spacing).round().to_usize().unwrap_or(0) + 1;
        Self::new(-extent, spacing, n)
    }

    pub fn point(&self, i: usize) -> T {
        self.start + self.spacing * T::lit(i as f64)
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.count).map(|i| self.point(i))
    }

    /// Trapezoid rule over the grid.
    pub fn integrate(&self, values: &[T]) -> T {
        debug_assert_eq!(values.len(), self.count);
        let n = values.len();
        let inner = values[1..n - 1].iter().fold(T::zero(), |a, &v| a + v);
        (inner + (values[0] + values[n - 1]) * T::lit(0.5)) * self.spacing
    }
}

/// `amplitude · exp(-(x - center)² / (2 width))` with complex center and width
/// (`Re(1/width) > 0`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianTerm<T> {
    pub amplitude: Complex<T>,
    pub center: Complex<T>,
    pub width: Complex<T>,
}

impl<T: Real> GaussianTerm<T> {
    /// `amplitude · exp(-(x - center)² / (2σ²))`.
    pub fn real(amplitude: Complex<T>, center: T, sigma: T) -> Self {
        Self { amplitude, center: creal(center), width: creal(sigma * sigma) }
    }

    pub fn eval(&self, x: T) -> Complex<T> {
        let d = creal(x) - self.center;
        self.amplitude * (-(d * d) / (self.width * T::lit(2.0))).exp()
    }

    /// Parameters `(A, B, C)` of `conj(self)·other = exp(-A x² + B x - C)`
    /// without the amplitudes.
    fn product_exponent(&self, other: &Self) -> (Complex<T>, Complex<T>, Complex<T>) {
        let two = T::lit(2.0);
        let (ci, wi) = (self.center.conj(), self.width.conj());
        let (cj, wj) = (other.center, other.width);
        let a = (wi * two).inv() + (wj * two).inv();
        let b = ci / wi + cj / wj;
        let c = ci * ci / (wi * two) + cj * cj / (wj * two);
        (a, b, c)
    }

    /// `∫ conj(self) other dx`.
    pub fn overlap(&self, other: &Self) -> Complex<T> {
        let (a, b, c) = self.product_exponent(other);
        self.amplitude.conj() * other.amplitude * gaussian_integral(a, b, c)
    }

    /// `∫ conj(self') other' dx`.
    pub fn derivative_overlap(&self, other: &Self) -> Complex<T> {
        let (a, b, c) = self.product_exponent(other);
        let mu = b / (a * T::lit(2.0));
        let moment = (mu - self.center.conj()) * (mu - other.center) + (a * T::lit(2.0)).inv();
        let factor = (self.width.conj() * other.width).inv();
        self.amplitude.conj() * other.amplitude * factor * moment * gaussian_integral(a, b, c)
    }

    /// Real point where `|term|` peaks, and the standard deviation of `|term|²`.
    pub fn envelope(&self) -> (T, T) {
        let inv = self.width.inv();
        let peak = (self.center * inv).re / inv.re;
        let sd = (T::lit(2.0) * inv.re).sqrt().recip();
        (peak, sd)
    }
}

/// `∫_R exp(-A x² + B x - C) dx = sqrt(π/A) exp(B²/(4A) - C)` for `Re A > 0`.
pub(crate) fn gaussian_integral<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Complex<T> {
    (creal(T::PI()) / a).sqrt() * (b * b / (a * T::lit(4.0)) - c).exp()
}

/// Finite superposition of Gaussian packets.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPacketState<T> {
    pub terms: Vec<GaussianTerm<T>>,
}

impl<T: Real> RealPacketState<T> {
    pub fn new(terms: Vec<GaussianTerm<T>>) -> Self {
        Self { terms }
    }

    /// Normalized `A_∞ {e^{-(x-s)²/2σ²} + e^{-(x+s)²/2σ²}}`.
    pub fn two_slit(s: T, sigma: T) -> Result<Self> {
        if !(sigma > T::zero()) {
            return Err(Error::InvalidParameter { name: "sigma", reason: "must be positive".into() });
        }
        let one = creal(T::one());
        Self::new(vec![GaussianTerm::real(one, s, sigma), GaussianTerm::real(one, -s, sigma)]).normalized()
    }

    /// Normalized single packet.
    pub fn gaussian(center: T, sigma: T) -> Result<Self> {
        if !(sigma > T::zero()) {
            return Err(Error::InvalidParameter { name: "sigma", reason: "must be positive".into() });
        }
        Self::new(vec![GaussianTerm::real(creal(T::one()), center, sigma)]).normalized()
    }

    pub fn inner_product(&self, other: &Self) -> Complex<T> {
        let mut acc = czero();
        for a in &self.terms {
            for b in &other.terms {
                acc = acc + a.overlap(b);
            }
        }
        acc
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| GaussianTerm { amplitude: t.amplitude * c, ..*t })
                .collect(),
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if !(n > T::zero()) {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(creal(n.recip())))
    }

    /// `⟨ψ, -(1/2m) ψ''⟩ = (1/2m) ‖ψ'‖²`, closed form.
    pub fn kinetic_energy(&self, mass: T) -> T {
        let mut acc = czero::<T>();
        for a in &self.terms {
            for b in &self.terms {
                acc = acc + a.derivative_overlap(b);
            }
        }
        acc.re / (T::lit(2.0) * mass)
    }
}

impl<T: Real> RealWavefunction<T> for RealPacketState<T> {
    fn eval(&self, x: T) -> Complex<T> {
        self.terms.iter().fold(czero(), |acc, t| acc + t.eval(x))
    }

    fn norm_sqr(&self) -> T {
        self.inner_product(self).re
    }
}

/// `H = -(1/2m) d²/dx² + (1/2) m ω² x²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Oscillator<T> {
    pub mass: T,
    pub omega: T,
}

impl<T: Real> Oscillator<T> {
    pub fn new(mass: T, omega: T) -> Result<Self> {
        if !(mass > T::zero()) {
            return Err(Error::InvalidParameter { name: "m_inf", reason: "must be positive".into() });
        }
        if !(omega > T::zero()) {
            return Err(Error::InvalidParameter { name: "omega", reason: "must be positive".into() });
        }
        Ok(Self { mass, omega })
    }

    /// `E_m = ω (m + 1/2)`.
    pub fn energy(&self, m: usize) -> T {
        self.omega * (T::lit(m as f64) + T::lit(0.5))
    }

    /// Normalized Hermite functions `θ_0(x), …, θ_{count-1}(x)` by the
    /// three-term recurrence.
    pub fn eigenfunctions(&self, x: T, count: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        let scale = (self.mass * self.omega).sqrt();
        let xi = scale * x;
        let two = T::lit(2.0);
        let theta0 = (scale / T::PI().sqrt()).sqrt() * (-(xi * xi) / two).exp();
        out.push(theta0);
        if count > 1 {
            out.push(two.sqrt() * xi * theta0);
        }
        for n in 1..count.saturating_sub(1) {
            let nf = T::lit(n as f64);
            let next = (two / (nf + T::one())).sqrt() * xi * out[n] - (nf / (nf + T::one())).sqrt() * out[n - 1];
            out.push(next);
        }
        out
    }

    pub fn eigenfunction(&self, m: usize, x: T) -> T {
        self.eigenfunctions(x, m + 1)[m]
    }
}

/// `Σ_m c_m θ_m(x)` for a harmonic oscillator.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicState<T> {
    pub oscillator: Oscillator<T>,
    pub coefficients: Vec<Complex<T>>,
}

impl<T: Real> HarmonicState<T> {
    pub fn new(oscillator: Oscillator<T>, coefficients: Vec<Complex<T>>) -> Self {
        Self { oscillator, coefficients }
    }

    pub fn cutoff(&self) -> usize {
        self.coefficients.len()
    }

    /// `Σ |c_m|² E_m`.
    pub fn energy(&self) -> T {
        self.coefficients
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (m, c)| acc + c.norm_sqr() * self.oscillator.energy(m))
    }

    pub fn inner_product(&self, other: &Self) -> Complex<T> {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .fold(czero(), |acc, (a, b)| acc + a * b.conj())
    }
}

impl<T: Real> RealWavefunction<T> for HarmonicState<T> {
    fn eval(&self, x: T) -> Complex<T> {
        let thetas = self.oscillator.eigenfunctions(x, self.cutoff());
        self.coefficients
            .iter()
            .zip(thetas)
            .fold(czero(), |acc, (c, th)| acc + c * th)
    }

    fn norm_sqr(&self) -> T {
        self.coefficients.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }
}

/// `x ↦ 1`, the apparatus state that carries no spatial information.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitWave;

impl<T: Real> RealWavefunction<T> for UnitWave {
    fn eval(&self, _x: T) -> Complex<T> {
        creal(T::one())
    }

    fn norm_sqr(&self) -> T {
        T::infinity()
    }
}

/// Adapter turning a closure into a [`RealWavefunction`] with a declared norm.
pub struct FnWave<F> {
    pub f: F,
    pub norm_sqr: f64,
}

impl<T: Real, F: Fn(T) -> Complex<T>> RealWavefunction<T> for FnWave<F> {
    fn eval(&self, x: T) -> Complex<T> {
        (self.f)(x)
    }

    fn norm_sqr(&self) -> T {
        T::lit(self.norm_sqr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_norm(psi: &impl RealWavefunction<f64>, grid: &RealGrid<f64>) -> f64 {
        let dens: Vec<f64> = grid.points().map(|x| psi.eval(x).norm_sqr()).collect();
        grid.integrate(&dens)
    }

    #[test]
    fn closed_form_norm_matches_quadrature() {
        let grid = RealGrid::symmetric(20.0, 0.01).unwrap();
        let psi = RealPacketState::new(vec![
            GaussianTerm { amplitude: Complex::new(0.7, 0.2), center: Complex::new(1.0, 0.3), width: Complex::new(0.5, 0.4) },
            GaussianTerm::real(Complex::new(-0.3, 0.9), -1.5, 0.8),
        ]);
        assert!((psi.norm_sqr() - quad_norm(&psi, &grid)).abs() < 1e-10);
    }

    #[test]
    fn two_slit_is_normalized_and_symmetric() {
        let psi = RealPacketState::two_slit(1.0f64, 0.5).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-14);
        assert!((psi.eval(0.7) - psi.eval(-0.7)).norm() < 1e-15);
    }

    #[test]
    fn kinetic_energy_matches_quadrature() {
        let psi = RealPacketState::new(vec![
            GaussianTerm { amplitude: Complex::new(1.0, 0.0), center: Complex::new(0.5, -0.2), width: Complex::new(0.3, 0.6) },
            GaussianTerm::real(Complex::new(0.4, -0.1), 1.0, 0.6),
        ]);
        let grid = RealGrid::symmetric(25.0, 0.005).unwrap();
        let h = 1e-5;
        let deriv: Vec<f64> = grid
            .points()
            .map(|x| ((psi.eval(x + h) - psi.eval(x - h)) / (2.0 * h)).norm_sqr())
            .collect();
        let quad = grid.integrate(&deriv) / (2.0 * 0.5);
        assert!((psi.kinetic_energy(0.5) - quad).abs() < 1e-7);
    }

    #[test]
    fn hermite_functions_ground_state() {
        let osc = Oscillator::new(0.5, 1.0).unwrap();
        assert_eq!(osc.energy(0), 0.5);
        let g = osc.eigenfunction(0, 0.0);
        assert!((g - (0.5f64 / std::f64::consts::PI).powf(0.25)).abs() < 1e-15);
    }
}
