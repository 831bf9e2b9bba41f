//! Exact spectral time evolution `e^{-itH}` (`ħ = 1`) in every sector. All
//! propagators multiply eigen-coordinates by phases; nothing is time-stepped.

use std::fmt::Write as _;

use nalgebra::DVector;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::operators::{CompositeHamiltonian, KernelOperator, RealHamiltonian, VladimirovOperator};
use crate::scalar::{cis, Real};
use crate::states::{
    GaussianTerm, GridState, HarmonicState, JointState, ProductState, RealPacketState, RealSector,
    SpectralState,
};

/// A time grid for sampling trajectories.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionPlan<T> {
    times: Vec<T>,
}

impl<T: Real> EvolutionPlan<T> {
    pub fn new(times: Vec<T>) -> Result<Self> {
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter { name: "times", reason: "time values must be finite".into() });
        }
        Ok(Self { times })
    }

    /// `count` equally spaced times from `start` to `end` inclusive.
    pub fn linspace(start: T, end: T, count: usize) -> Result<Self> {
        let times = match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => {
                let step = (end - start) / T::lit((count - 1) as f64);
                (0..count).map(|i| start + step * T::lit(i as f64)).collect()
            }
        };
        Self::new(times)
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }
}

pub fn evolve_padic<T: Real>(s: &SpectralState<T>, op: &VladimirovOperator<T>, t: T) -> Result<SpectralState<T>> {
    op.window().ensure_same(&s.window())?;
    Ok(s.map_modes(|mode, c| c * cis(-t * op.energy(mode))))
}

/// Free propagation of one packet: `w ↦ w + it/m`, amplitude times
/// `sqrt(w / (w + it/m))`.
pub fn evolve_gaussian<T: Real>(term: &GaussianTerm<T>, mass: T, t: T) -> GaussianTerm<T> {
    let width = term.width + Complex::new(T::zero(), t / mass);
    GaussianTerm { amplitude: term.amplitude * (term.width / width).sqrt(), center: term.center, width }
}

pub fn evolve_real_free<T: Real>(s: &RealPacketState<T>, mass: T, t: T) -> RealPacketState<T> {
    RealPacketState::new(s.terms.iter().map(|g| evolve_gaussian(g, mass, t)).collect())
}

pub fn evolve_real_harmonic<T: Real>(s: &HarmonicState<T>, t: T) -> HarmonicState<T> {
    let coefficients = s
        .coefficients
        .iter()
        .enumerate()
        .map(|(m, &c)| c * cis(-t * s.oscillator.energy(m)))
        .collect();
    HarmonicState::new(s.oscillator, coefficients)
}

pub fn evolve_real<T: Real>(s: &RealSector<T>, h: &RealHamiltonian<T>, t: T) -> Result<RealSector<T>> {
    match (s, h) {
        (RealSector::Packets(p), RealHamiltonian::Free { mass }) => {
            Ok(RealSector::Packets(evolve_real_free(p, *mass, t)))
        }
        (RealSector::Harmonic(c), RealHamiltonian::Harmonic { .. }) => {
            if c.oscillator != h.oscillator()? {
                return Err(Error::SectorMismatch("oscillator parameters differ".into()));
            }
            Ok(RealSector::Harmonic(evolve_real_harmonic(c, t)))
        }
        _ => Err(Error::SectorMismatch("real state does not match the Hamiltonian variant".into())),
    }
}

/// Separable evolution under `H_∞ + H_p`: each factor evolves independently.
pub fn evolve_product<T: Real>(
    psi: &ProductState<T>,
    h: &CompositeHamiltonian<T>,
    t: T,
) -> Result<ProductState<T>> {
    Ok(ProductState::new(evolve_real(&psi.real, &h.real, t)?, evolve_padic(&psi.padic, h.vladimirov()?, t)?))
}

/// `A_{rbk,m} ↦ A_{rbk,m} e^{-it(E_rbk + E_m)}`.
pub fn evolve_joint<T: Real>(psi: &JointState<T>, h: &CompositeHamiltonian<T>, t: T) -> Result<JointState<T>> {
    let op = h.vladimirov()?;
    op.window().ensure_same(&psi.window)?;
    if h.real.oscillator()? != psi.oscillator {
        return Err(Error::SectorMismatch("oscillator parameters differ".into()));
    }
    let mut out = psi.clone();
    for ((mode, m), a) in out.coefficients.iter_mut() {
        *a = *a * cis(-t * (op.energy(mode) + psi.oscillator.energy(*m)));
    }
    Ok(out)
}

/// Evolves the component in the site span with `exp(-itH)` and leaves the
/// orthogonal complement (annihilated by `H`) unchanged.
pub fn evolve_ctqw<T: Real>(k: &KernelOperator<T>, initial: &GridState<T>, t: T) -> Result<GridState<T>> {
    let a = k.site_amplitudes(initial)?;
    let window = initial.window();
    let complement = initial.checked_sub(&k.synthesize(window, &a)?)?;
    let evolved = evolve_site_vector(k, &a, t);
    complement.checked_add(&k.synthesize(window, &evolved)?)
}

/// `exp(-itH) a` for a coordinate vector over the sites.
pub fn evolve_site_vector<T: Real>(k: &KernelOperator<T>, a: &[Complex<T>], t: T) -> Vec<Complex<T>> {
    let eig = k.eigensystem();
    let tf = t.to_f64().unwrap_or(f64::NAN);
    let v = DVector::from_iterator(
        a.len(),
        a.iter().map(|c| Complex::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))),
    );
    let mut coords = eig.vectors.adjoint() * v;
    for (c, &e) in coords.iter_mut().zip(eig.values.iter()) {
        *c *= Complex::from_polar(1.0, -tf * e);
    }
    (eig.vectors * coords).iter().map(|c| Complex::new(T::lit(c.re), T::lit(c.im))).collect()
}

/// `⟨a, H a⟩` over the site coordinates.
pub fn site_energy<T: Real>(k: &KernelOperator<T>, a: &[Complex<T>]) -> T {
    let h = k.matrix();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..a.len() {
        for j in 0..a.len() {
            acc = acc + a[i].conj() * h[(i, j)] * a[j];
        }
    }
    acc.re
}

/// Trajectory table with rows `t,index,re,im`, one frame per time.
pub fn trajectory_csv<T: Real>(frames: &[(T, Vec<Complex<T>>)]) -> String {
    let mut out = String::from("t,index,re,im\n");
    for (t, values) in frames {
        let t = t.to_f64().unwrap_or(f64::NAN);
        for (i, v) in values.iter().enumerate() {
            let (re, im) = (v.re.to_f64().unwrap_or(f64::NAN), v.im.to_f64().unwrap_or(f64::NAN));
            writeln!(out, "{t:e},{i},{re:e},{im:e}").expect("writing to a String");
        }
    }
    out
}

/// Diagnostics table with rows `t,norm,energy`.
pub fn diagnostics_csv<T: Real>(rows: &[(T, T, T)]) -> String {
    let mut out = String::from("t,norm,energy\n");
    for (t, n, e) in rows {
        let f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
        writeln!(out, "{:e},{:e},{:e}", f(t), f(n), f(e)).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{PadicMode, Window};

    #[test]
    fn wavelet_returns_at_its_period() {
        let w = Window::new(2, 1, 2).unwrap();
        let op = VladimirovOperator::new(w, 1.0, 0.5).unwrap();
        for idx in w.wavelet_indices() {
            let s = SpectralState::<f64>::basis(w, &PadicMode::Wavelet(idx.clone())).unwrap();
            let period = 2.0 * std::f64::consts::PI * 2.0 * 0.5 * 2f64.powi(idx.r - 1);
            let back = evolve_padic(&s, &op, period).unwrap();
            assert!((back.inner_product(&s).unwrap().norm() - 1.0).abs() < 1e-12);
            assert!(back.max_abs_diff(&s).unwrap() < 1e-12);
        }
    }

    #[test]
    fn free_gaussian_spreads() {
        let (sigma, mass, t) = (0.5f64, 0.5, 1.3);
        let psi = RealPacketState::gaussian(0.0, sigma).unwrap();
        let out = evolve_real_free(&psi, mass, t);
        let (_, sd) = out.terms[0].envelope();
        // standard deviation of the density |ψ|², initially σ/√2
        let s0 = sigma / 2f64.sqrt();
        let want = (s0 * s0 + (t / (2.0 * mass * s0)).powi(2)).sqrt();
        assert!((sd - want).abs() < 1e-12);
        assert!((crate::states::RealWavefunction::<f64>::norm_sqr(&out) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn harmonic_revival_up_to_sign() {
        let osc = crate::states::Oscillator::new(0.5, 2.0).unwrap();
        let s = HarmonicState::new(osc, vec![Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)]);
        let out = evolve_real_harmonic(&s, std::f64::consts::PI);
        for (a, b) in out.coefficients.iter().zip(&s.coefficients) {
            assert!((a + b).norm() < 1e-12);
        }
    }

    #[test]
    fn csv_layout() {
        let csv = trajectory_csv(&[(0.5f64, vec![Complex::new(1.0, -2.0)])]);
        assert_eq!(csv, "t,index,re,im\n5e-1,0,1e0,-2e0\n");
        assert_eq!(diagnostics_csv(&[(0.0f64, 1.0, 0.25)]), "t,norm,energy\n0e0,1e0,2.5e-1\n");
    }
}
