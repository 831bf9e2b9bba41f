//! Wavelet-basis representation of window states.
//!
//! The basis of a window consists of the wavelets
//! `ψ_rbk(x) = p^(-r/2) χ_p(p^(-1) k (p^r x - b)) Ω(|p^r x - b|_p)` with
//! `1-K ≤ r ≤ R` and support inside the domain, plus the normalized domain
//! indicator. On a support ball the wavelet only depends on the digit of `x`
//! at position `-r`, which turns the change of basis into a discrete Fourier
//! transform over the `p` children of every node of the coset tree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use super::grid::GridState;
use super::window::{PadicMode, WaveletIndex, Window};
use crate::error::{Error, Result};
use crate::padic::{prime_power, Ball, FractionIndex, PAdicApprox, Valuation};
use crate::scalar::{cis, creal, czero, Real};

/// Coefficients of a window state in the wavelet basis plus the constant mode.
///
/// Missing wavelet coefficients are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralState<T> {
    window: Window,
    coefficients: BTreeMap<WaveletIndex, Complex<T>>,
    constant_mode: Complex<T>,
}

/// `ω^m = exp(2πi m / p)` for `m < p`.
fn roots_of_unity<T: Real>(p: u32) -> Vec<Complex<T>> {
    (0..p)
        .map(|m| cis(T::lit(2.0) * T::PI() * T::lit(m as f64) / T::lit(p as f64)))
        .collect()
}

/// `p^(-r/2)`.
fn wavelet_amplitude<T: Real>(p: u32, r: i32) -> T {
    T::pow_prime(p, T::lit(-(r as f64) / 2.0))
}

impl<T: Real> SpectralState<T> {
    pub fn zeros(window: Window) -> Self {
        Self { window, coefficients: BTreeMap::new(), constant_mode: czero() }
    }

    pub fn new(
        window: Window,
        coefficients: BTreeMap<WaveletIndex, Complex<T>>,
        constant_mode: Complex<T>,
    ) -> Result<Self> {
        for idx in coefficients.keys() {
            window.check_admissible(idx)?;
        }
        Ok(Self { window, coefficients, constant_mode })
    }

    /// The basis function of a single mode with unit coefficient.
    pub fn basis(window: Window, mode: &PadicMode) -> Result<Self> {
        let mut s = Self::zeros(window);
        s.set(mode, Complex::new(T::one(), T::zero()))?;
        Ok(s)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn constant_mode(&self) -> Complex<T> {
        self.constant_mode
    }

    pub fn coefficient(&self, idx: &WaveletIndex) -> Complex<T> {
        self.coefficients.get(idx).copied().unwrap_or_else(czero)
    }

    pub fn get(&self, mode: &PadicMode) -> Complex<T> {
        match mode {
            PadicMode::Constant => self.constant_mode,
            PadicMode::Wavelet(idx) => self.coefficient(idx),
        }
    }

    pub fn set(&mut self, mode: &PadicMode, value: Complex<T>) -> Result<()> {
        match mode {
            PadicMode::Constant => self.constant_mode = value,
            PadicMode::Wavelet(idx) => {
                self.window.check_admissible(idx)?;
                self.coefficients.insert(idx.clone(), value);
            }
        }
        Ok(())
    }

    /// Stored wavelet coefficients in canonical order.
    pub fn coefficients(&self) -> &BTreeMap<WaveletIndex, Complex<T>> {
        &self.coefficients
    }

    /// All stored modes, constant mode first.
    pub fn modes(&self) -> impl Iterator<Item = (PadicMode, Complex<T>)> + '_ {
        std::iter::once((PadicMode::Constant, self.constant_mode)).chain(
            self.coefficients
                .iter()
                .map(|(k, &v)| (PadicMode::Wavelet(k.clone()), v)),
        )
    }

    /// Applies `f(mode, coefficient)` to every mode of the window.
    pub fn map_modes(&self, mut f: impl FnMut(&PadicMode, Complex<T>) -> Complex<T>) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .map(|(k, &v)| {
                let mode = PadicMode::Wavelet(k.clone());
                let out = f(&mode, v);
                (k.clone(), out)
            })
            .collect();
        Self {
            window: self.window,
            coefficients,
            constant_mode: f(&PadicMode::Constant, self.constant_mode),
        }
    }

    /// Parseval: `Σ |c_rbk|² + |c_0|²`.
    pub fn norm_sqr(&self) -> T {
        self.coefficients
            .values()
            .fold(self.constant_mode.norm_sqr(), |acc, c| acc + c.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        self.map_modes(|_, v| v * c)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == T::zero() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(creal(n.recip())))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.window.ensure_same(&other.window)?;
        let mut out = self.clone();
        for (k, v) in &other.coefficients {
            let slot = out.coefficients.entry(k.clone()).or_insert_with(czero);
            *slot = *slot + v;
        }
        out.constant_mode = out.constant_mode + other.constant_mode;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scaled(creal(-T::one())))
    }

    /// `⟨self, other⟩` computed from coefficients.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        self.window.ensure_same(&other.window)?;
        let mut acc = self.constant_mode * other.constant_mode.conj();
        for (k, v) in &self.coefficients {
            acc = acc + v * other.coefficient(k).conj();
        }
        Ok(acc)
    }

    /// Largest coefficient difference over all modes.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        let d = self.checked_sub(other)?;
        Ok(d.modes().fold(T::zero(), |m, (_, v)| m.max(v.norm())))
    }

    /// Analysis: coefficients of a grid function in the window basis.
    pub fn from_grid(grid: &GridState<T>) -> Self {
        let window = grid.window();
        let p = window.prime();
        let pu = p as usize;
        let omega = roots_of_unity::<T>(p);
        let cell = window.cell_measure::<T>();
        let mut sums: Vec<Complex<T>> = grid.values().to_vec();
        let mut coefficients = BTreeMap::new();
        for r in (1 - window.resolution())..=window.top() {
            let amp = wavelet_amplitude::<T>(p, r) * cell;
            let parents = sums.len() / pu;
            let mut next = Vec::with_capacity(parents);
            for block in 0..parents {
                let children = &sums[block * pu..(block + 1) * pu];
                let b = FractionIndex::from_block(p, block);
                for k in 1..p {
                    let acc = children.iter().enumerate().fold(czero::<T>(), |acc, (c, s)| {
                        acc + s * omega[(pu - (k as usize * c) % pu) % pu]
                    });
                    coefficients.insert(WaveletIndex { r, b: b.clone(), k }, acc * amp);
                }
                next.push(children.iter().fold(czero(), |acc, s| acc + s));
            }
            sums = next;
        }
        debug_assert_eq!(sums.len(), 1);
        let constant_mode = sums[0] * wavelet_amplitude::<T>(p, window.top()) * cell;
        Self { window, coefficients, constant_mode }
    }

    /// Synthesis: the grid function with these coefficients.
    pub fn to_grid(&self) -> GridState<T> {
        let window = self.window;
        let p = window.prime();
        let pu = p as usize;
        let omega = roots_of_unity::<T>(p);
        let mut nodes = vec![self.constant_mode * wavelet_amplitude::<T>(p, window.top())];
        for r in window.scales() {
            let amp = wavelet_amplitude::<T>(p, r);
            let mut next = Vec::with_capacity(nodes.len() * pu);
            for (block, &base) in nodes.iter().enumerate() {
                let b = FractionIndex::from_block(p, block);
                let coeffs: Vec<Complex<T>> = (1..p)
                    .map(|k| self.coefficient(&WaveletIndex { r, b: b.clone(), k }))
                    .collect();
                for c in 0..pu {
                    let wave = coeffs.iter().enumerate().fold(czero::<T>(), |acc, (i, a)| {
                        acc + a * omega[((i + 1) * c) % pu]
                    });
                    next.push(base + wave * amp);
                }
            }
            nodes = next;
        }
        GridState::new(window, nodes).expect("synthesis fills the window")
    }
}

/// Pointwise value `ψ_rbk(x)`, computed from the defining formula with the
/// additive character.
pub fn eval_wavelet<T: Real>(idx: &WaveletIndex, x: &PAdicApprox) -> Result<Complex<T>> {
    let p = idx.prime();
    if x.prime() != p {
        return Err(Error::PrimeMismatch { left: p, right: x.prime() });
    }
    let b = idx.b.to_padic(x.cap() + idx.r);
    let y = x.shift(idx.r).checked_sub(&b)?;
    if let Valuation::Finite(v) = y.valuation() {
        if v < 0 {
            return Ok(czero());
        }
    }
    let scale = PAdicApprox::from_rational(p, idx.k as i64, p as i64, y.cap())?;
    let phase = y.checked_mul(&scale)?.additive_character::<T>();
    Ok(phase * wavelet_amplitude::<T>(p, idx.r))
}

/// Wavelet expansion of a ball indicator.
#[derive(Clone, Debug)]
pub struct IndicatorExpansion<T> {
    pub state: SpectralState<T>,
    /// `‖Ω_B‖² = p^(-l)`.
    pub total_mass: BigRational,
    /// Mass carried by the window wavelets.
    pub wavelet_mass: BigRational,
    /// `‖Ω_B‖²` minus the window wavelet mass: what the truncated wavelet
    /// basis misses (held by the constant mode when the ball is resolved).
    pub tail_mass: BigRational,
}

/// Exact coefficients `⟨Ω_B, ψ_rbk⟩` and `⟨Ω_B, e_0⟩` of the indicator of a
/// ball inside the domain.
///
/// Only wavelets whose support strictly contains `B` contribute; on `B` they
/// are constant, so each coefficient is `p^(-l) · conj(ψ_rbk(B))`.
pub fn expand_indicator<T: Real>(ball: &Ball, window: Window) -> Result<IndicatorExpansion<T>> {
    let p = window.prime();
    let l = ball.scale();
    if ball.prime() != p {
        return Err(Error::PrimeMismatch { left: p, right: ball.prime() });
    }
    let inside = l >= -window.top()
        && match ball.center().valuation() {
            Valuation::Finite(v) => v >= -window.top(),
            Valuation::Infinite => true,
        };
    if !inside {
        return Err(Error::BallOutsideDomain(ball.to_string()));
    }
    let measure = T::pow_prime(p, T::lit(-(l as f64)));
    let omega = roots_of_unity::<T>(p);
    let mut state = SpectralState::zeros(window);
    let mut wavelet_mass = BigRational::zero();
    let lowest = (1 - window.resolution()).max(1 - l);
    for r in lowest..=window.top() {
        // the support of ψ_{r,b,k} containing B is fixed by the center digits below -r
        let center = ball.center().with_cap(-r);
        let b = FractionIndex::from_padic(&center.shift(r));
        let digit = ball.center().digit(-r) as usize;
        let amp = wavelet_amplitude::<T>(p, r) * measure;
        for k in 1..p {
            let conj_phase = omega[(p as usize - (k as usize * digit) % p as usize) % p as usize];
            state.coefficients.insert(WaveletIndex { r, b: b.clone(), k }, conj_phase * amp);
        }
        wavelet_mass += BigRational::from_integer(BigInt::from(p - 1)) * prime_power(p, -2 * l - r);
    }
    state.constant_mode = creal(wavelet_amplitude::<T>(p, window.top()) * measure);
    let total_mass = prime_power(p, -l);
    let tail_mass = &total_mass - &wavelet_mass;
    Ok(IndicatorExpansion { state, total_mass, wavelet_mass, tail_mass })
}
