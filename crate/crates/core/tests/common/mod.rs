//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use padic_qm::states::{eval_wavelet, GridState, WaveletIndex, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_grid(window: Window, rng: &mut ChaCha8Rng) -> GridState<f64> {
    GridState::from_fn(window, |_| random_complex(rng))
}

pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in 0..i {
            let c = random_complex(rng);
            m[(i, j)] = c;
            m[(j, i)] = c.conj();
        }
    }
    m
}

/// `exp(-itH)` by scaling and squaring a truncated Taylor series.
pub fn expm_taylor(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let n = h.nrows();
    let a = h * Complex64::new(0.0, -t);
    let norm = a.iter().map(|c| c.norm()).fold(0.0, f64::max) * n as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale /= 2.0;
        squarings += 1;
    }
    let a = a * Complex64::new(scale, 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=24 {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Free Schrödinger propagation `exp(i t ∂²/(2m))` on a periodic grid via FFT.
pub fn propagate_fft(psi: &[Complex64], dx: f64, mass: f64, t: f64) -> Vec<Complex64> {
    let n = psi.len();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut buf = psi.to_vec();
    forward.process(&mut buf);
    let dk = 2.0 * std::f64::consts::PI / (n as f64 * dx);
    for (j, c) in buf.iter_mut().enumerate() {
        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        let k = m * dk;
        *c *= Complex64::from_polar(1.0 / n as f64, -t * k * k / (2.0 * mass));
    }
    inverse.process(&mut buf);
    buf
}

/// A wavelet sampled at the coset representatives straight from its
/// defining formula.
pub fn sampled_wavelet(window: Window, idx: &WaveletIndex) -> GridState<f64> {
    GridState::from_fn(window, |x| eval_wavelet(idx, x).unwrap())
}

/// `∫ f ḡ` as a plain coset sum.
pub fn coset_inner(f: &GridState<f64>, g: &GridState<f64>) -> Complex64 {
    let cell = f.window().cell_measure::<f64>();
    f.values().iter().zip(g.values()).map(|(a, b)| a * b.conj()).sum::<Complex64>() * cell
}
