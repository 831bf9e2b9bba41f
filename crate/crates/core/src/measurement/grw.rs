//! The Ghirardi–Rimini–Weber spontaneous localization model, used as a
//! comparison for the ball-projection collapse.

use std::fmt::Write as _;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::dynamics::evolve_real_free;
use crate::error::{Error, Result};
use crate::scalar::{creal, Real};
use crate::states::{GaussianTerm, RealPacketState, RealWavefunction};

/// Localization width `σ` and rate `λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrwParams<T> {
    pub sigma: T,
    pub rate: T,
}

impl<T: Real> GrwParams<T> {
    pub fn new(sigma: T, rate: T) -> Result<Self> {
        if !(sigma > T::zero()) {
            return Err(Error::InvalidParameter { name: "grw_sigma", reason: "must be positive".into() });
        }
        if !(rate > T::zero()) {
            return Err(Error::InvalidParameter { name: "grw_rate", reason: "must be positive".into() });
        }
        Ok(Self { sigma, rate })
    }
}

/// `g_r(x) = (2πσ²)^{-1/4} exp(-(x - r)² / (4σ²))`, so `∫ g_r² dx = 1`.
pub fn localization_gaussian<T: Real>(r: T, sigma: T) -> GaussianTerm<T> {
    let var = sigma * sigma;
    GaussianTerm {
        amplitude: creal((T::lit(2.0) * T::PI() * var).powf(T::lit(-0.25))),
        center: creal(r),
        width: creal(T::lit(2.0) * var),
    }
}

/// `g_r ψ`, still a finite sum of Gaussians.
fn multiply<T: Real>(psi: &RealPacketState<T>, r: T, sigma: T) -> RealPacketState<T> {
    let g = localization_gaussian(r, sigma);
    let terms = psi
        .terms
        .iter()
        .map(|t| {
            let total = t.width + g.width;
            let shift = t.center - g.center;
            GaussianTerm {
                amplitude: t.amplitude * g.amplitude * (-(shift * shift) / (total * T::lit(2.0))).exp(),
                center: (t.center * g.width + g.center * t.width) / total,
                width: t.width * g.width / total,
            }
        })
        .collect();
    RealPacketState::new(terms)
}

/// `P(r)² = ∫ |g_r ψ|² dx`.
pub fn localization_density<T: Real>(psi: &RealPacketState<T>, r: T, sigma: T) -> T {
    multiply(psi, r, sigma).norm_sqr()
}

/// `ψ₊ = g_r ψ₋ / P(r)`.
pub fn grw_localize<T: Real>(psi: &RealPacketState<T>, r: T, sigma: T) -> Result<RealPacketState<T>> {
    if !(sigma > T::zero()) {
        return Err(Error::InvalidParameter { name: "grw_sigma", reason: "must be positive".into() });
    }
    multiply(psi, r, sigma).normalized()
}

/// Draws `r` from the density `P(r)²` by inverting its cumulative
/// distribution on a fine grid covering the packet envelopes.
pub fn sample_center<T: Real>(psi: &RealPacketState<T>, sigma: T, rng: &mut impl Rng) -> T {
    const CELLS: usize = 4096;
    let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
    for t in &psi.terms {
        let (peak, sd) = t.envelope();
        let reach = T::lit(10.0) * (sd + sigma);
        lo = lo.min(peak - reach);
        hi = hi.max(peak + reach);
    }
    let h = (hi - lo) / T::lit(CELLS as f64);
    let density: Vec<T> = (0..=CELLS)
        .map(|i| localization_density(psi, lo + h * T::lit(i as f64), sigma))
        .collect();
    let mut cumulative = Vec::with_capacity(CELLS + 1);
    cumulative.push(T::zero());
    for i in 0..CELLS {
        let last = cumulative[i];
        cumulative.push(last + (density[i] + density[i + 1]) * h * T::lit(0.5));
    }
    let u = T::lit(rng.random::<f64>()) * cumulative[CELLS];
    let cell = cumulative.partition_point(|&c| c <= u).clamp(1, CELLS) - 1;
    let span = cumulative[cell + 1] - cumulative[cell];
    let frac = if span > T::zero() { (u - cumulative[cell]) / span } else { T::lit(0.5) };
    lo + h * (T::lit(cell as f64) + frac)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrwEvent<T> {
    pub time: T,
    pub center: T,
    pub pre_norm: T,
    pub post_norm: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrwTrajectory<T> {
    pub events: Vec<GrwEvent<T>>,
    pub final_state: RealPacketState<T>,
}

/// Free evolution interrupted by localizations at the arrival times of a
/// Poisson process of rate `λ`, reproducible from `seed`.
pub fn grw_trajectory<T: Real>(
    initial: &RealPacketState<T>,
    mass: T,
    params: GrwParams<T>,
    horizon: T,
    seed: u64,
) -> Result<GrwTrajectory<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let waiting = Exp::new(params.rate.to_f64().unwrap_or(f64::NAN))
        .map_err(|e| Error::InvalidParameter { name: "grw_rate", reason: e.to_string() })?;
    let mut state = initial.clone();
    let mut now = T::zero();
    let mut events = Vec::new();
    loop {
        let next = now + T::lit(waiting.sample(&mut rng));
        if next > horizon {
            break;
        }
        state = evolve_real_free(&state, mass, next - now);
        now = next;
        let pre_norm = state.norm_sqr().sqrt();
        let center = sample_center(&state, params.sigma, &mut rng);
        state = grw_localize(&state, center, params.sigma)?;
        events.push(GrwEvent { time: now, center, pre_norm, post_norm: state.norm_sqr().sqrt() });
    }
    let final_state = evolve_real_free(&state, mass, horizon - now);
    Ok(GrwTrajectory { events, final_state })
}

/// Event log with rows `t_event,r,pre_norm,post_norm`.
pub fn grw_events_csv<T: Real>(events: &[GrwEvent<T>]) -> String {
    let mut out = String::from("t_event,r,pre_norm,post_norm\n");
    let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
    for e in events {
        writeln!(out, "{:e},{:e},{:e},{:e}", f(e.time), f(e.center), f(e.pre_norm), f(e.post_norm))
            .expect("writing to a String");
    }
    out
}

/// Density variance of a packet state, by closed-form moments.
pub fn position_variance<T: Real>(psi: &RealPacketState<T>) -> T {
    // ⟨x⟩ and ⟨x²⟩ from derivatives of the Gaussian overlap integrals
    let mut m0 = Complex::new(T::zero(), T::zero());
    let mut m1 = m0;
    let mut m2 = m0;
    for a in &psi.terms {
        for b in &psi.terms {
            let (w0, w1, w2) = pair_moments(a, b);
            m0 = m0 + w0;
            m1 = m1 + w1;
            m2 = m2 + w2;
        }
    }
    let mean = m1.re / m0.re;
    m2.re / m0.re - mean * mean
}

/// `∫ conj(a) b x^j dx` for `j = 0, 1, 2`.
fn pair_moments<T: Real>(a: &GaussianTerm<T>, b: &GaussianTerm<T>) -> (Complex<T>, Complex<T>, Complex<T>) {
    let two = T::lit(2.0);
    let (wa, wb) = (a.width.conj(), b.width);
    let (ca, cb) = (a.center.conj(), b.center);
    let big_a = (wa.inv() + wb.inv()) / two;
    let big_b = ca / wa + cb / wb;
    let big_c = (ca * ca / wa + cb * cb / wb) / two;
    let z = a.amplitude.conj() * b.amplitude * crate::states::real::gaussian_integral(big_a, big_b, big_c);
    let mu = big_b / (big_a * two);
    (z, z * mu, z * (mu * mu + (big_a * two).inv()))
}
