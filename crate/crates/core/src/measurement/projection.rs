use num_complex::Complex;

use crate::error::{Error, Result};
use crate::padic::{Ball, BallRelation};
use crate::scalar::{czero, Real};
use crate::states::{eval_wavelet, expand_indicator, PadicMode, SpectralState, WaveletIndex, Window};

/// `1_B · ψ_rbk`: by the ultrametric trichotomy the wavelet either survives
/// whole, collapses to a constant on `B`, or vanishes.
#[derive(Clone, Debug, PartialEq)]
pub enum Restriction<T> {
    /// `supp ψ ⊆ B`.
    Unchanged,
    /// `B ⊊ supp ψ`: `ψ` is the constant `value` on `B`.
    Constant { value: Complex<T>, ball: Ball },
    /// Disjoint supports.
    Zero,
}

pub fn restrict_wavelet<T: Real>(idx: &WaveletIndex, ball: &Ball) -> Result<Restriction<T>> {
    Ok(match idx.support().relation(ball)? {
        BallRelation::Equal | BallRelation::ContainedIn => Restriction::Unchanged,
        BallRelation::Contains => Restriction::Constant { value: eval_wavelet(idx, ball.center())?, ball: ball.clone() },
        BallRelation::Disjoint => Restriction::Zero,
    })
}

impl<T: Real> Restriction<T> {
    /// The restricted function `1_B ψ_rbk` in the basis of a window resolving `B`.
    pub fn to_spectral(&self, idx: &WaveletIndex, window: Window) -> Result<SpectralState<T>> {
        match self {
            Restriction::Unchanged => SpectralState::basis(window, &PadicMode::Wavelet(idx.clone())),
            Restriction::Constant { value, ball } => {
                window.ball_range(ball)?;
                Ok(expand_indicator::<T>(ball, window)?.state.scaled(*value))
            }
            Restriction::Zero => Ok(SpectralState::zeros(window)),
        }
    }
}

/// Splits `Ψ = Ψ^(B) + Ψ^(B^c)` with `Ψ^(B) = 1_B Ψ`, computed on the wavelet
/// side: surviving wavelets are kept, wavelets whose support strictly contains
/// `B` (and the constant mode) add up to a single constant on `B`.
pub fn project_ball<T: Real>(psi: &SpectralState<T>, ball: &Ball) -> Result<(SpectralState<T>, SpectralState<T>)> {
    let window = psi.window();
    window.ball_range(ball)?;
    let mut inside = SpectralState::zeros(window);
    let mut level = psi.constant_mode() * T::pow_prime(window.prime(), T::lit(-(window.top() as f64) / 2.0));
    for (idx, &c) in psi.coefficients() {
        if c == czero() {
            continue;
        }
        match restrict_wavelet::<T>(idx, ball)? {
            Restriction::Unchanged => inside.set(&PadicMode::Wavelet(idx.clone()), c)?,
            Restriction::Constant { value, .. } => level = level + c * value,
            Restriction::Zero => {}
        }
    }
    if level != czero() {
        inside = inside.checked_add(&expand_indicator::<T>(ball, window)?.state.scaled(level))?;
    }
    let outside = psi.checked_sub(&inside)?;
    Ok((inside, outside))
}

/// `∫_B |Ψ|²`.
pub fn ball_mass<T: Real>(psi: &SpectralState<T>, ball: &Ball) -> Result<T> {
    Ok(project_ball(psi, ball)?.0.norm_sqr())
}

/// Renormalized post-measurement state `Ψ^(B) / ‖Ψ^(B)‖`.
pub fn post_measurement<T: Real>(psi: &SpectralState<T>, ball: &Ball) -> Result<SpectralState<T>> {
    let (inside, _) = project_ball(psi, ball)?;
    inside.normalized().map_err(|_| Error::ZeroNorm)
}
