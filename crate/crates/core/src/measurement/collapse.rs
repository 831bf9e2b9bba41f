use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::padic::Ball;
use crate::scalar::{creal, Real};
use crate::states::{GridState, ProductState, RealWavefunction, SpectralState};

use super::projection::project_ball;

/// `Ψ_p(x) Ψ_∞(M(x))` sampled at level `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pullback<T> {
    pub grid: GridState<T>,
    pub level: i32,
    /// Bound on the quadrature error of [`Pullback::weight`]: an estimate of
    /// the Lipschitz constant of `|Ψ_∞|²` times `p^{-m} ‖Ψ_p‖²`.
    pub error_bound: T,
}

impl<T: Real> Pullback<T> {
    /// `A(M) = ‖Ψ_p Ψ_∞∘M‖²`.
    pub fn weight(&self) -> T {
        self.grid.norm_sqr()
    }

    /// `P_int(B) = ∫_B |Ψ_p|² |Ψ_∞∘M|² / A(M)`.
    pub fn probability(&self, ball: &Ball) -> Result<T> {
        let total = self.weight();
        if !(total > T::zero()) {
            return Err(Error::ZeroNorm);
        }
        Ok(self.grid.mass_in(ball)? / total)
    }
}

/// Samples `Ψ_∞` at the Monna image of each coset midpoint at level `m`, so
/// that a coset `[i, i+1)·p^{-m}` contributes `Ψ_∞((i + 1/2) p^{-m})`.
pub fn pullback_real<T: Real>(
    real: &impl RealWavefunction<T>,
    padic: &GridState<T>,
    level: i32,
) -> Result<Pullback<T>> {
    let fine = padic.refine(level)?;
    let window = fine.window();
    let h = window.cell_measure::<T>();
    let half = T::lit(0.5);
    let samples: Vec<_> = (0..window.dimension())
        .map(|i| real.eval((T::lit(i as f64) + half) * h))
        .collect();
    let lipschitz = samples
        .windows(2)
        .fold(T::zero(), |m, w| m.max((w[1].norm_sqr() - w[0].norm_sqr()).abs() / h));
    let values = fine.values().iter().zip(&samples).map(|(a, b)| a * b).collect();
    Ok(Pullback {
        grid: GridState::new(window, values)?,
        level,
        error_bound: lipschitz * h * padic.norm_sqr(),
    })
}

/// Refines one level at a time from `start` until successive weights differ by
/// less than `tolerance` or `max_level` is reached.
pub fn pullback_adaptive<T: Real>(
    real: &impl RealWavefunction<T>,
    padic: &GridState<T>,
    start: i32,
    tolerance: T,
    max_level: i32,
) -> Result<(Pullback<T>, bool)> {
    let mut current = pullback_real(real, padic, start)?;
    while current.level < max_level {
        let next = pullback_real(real, padic, current.level + 1)?;
        let done = (next.weight() - current.weight()).abs() < tolerance;
        current = next;
        if done {
            return Ok((current, true));
        }
    }
    Ok((current, false))
}

pub fn interaction_probability<T: Real>(
    padic: &GridState<T>,
    real: &impl RealWavefunction<T>,
    ball: &Ball,
    level: i32,
) -> Result<T> {
    pullback_real(real, padic, level)?.probability(ball)
}

/// Result of an apparatus scan over a ball.
#[derive(Clone, Debug, PartialEq)]
pub enum CollapseOutcome<T> {
    Localized(Collapse<T>),
    /// The scan found nothing: `Ψ_p` vanishes on the ball.
    ZeroWeight,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Collapse<T> {
    /// `1_B Ψ_p Ψ_∞∘M` on the pull-back grid.
    pub localized: GridState<T>,
    /// `‖1_B Ψ_p Ψ_∞∘M‖²`.
    pub weight: T,
    /// The weight relative to `A(M)`.
    pub probability: T,
    /// `Ψ^(B) / ‖Ψ^(B)‖`.
    pub post_state: SpectralState<T>,
}

/// Relative squared norm below which a projection counts as empty.
const ZERO_WEIGHT: f64 = 1e-24;

pub fn collapse_joint<T: Real>(psi: &ProductState<T>, ball: &Ball, level: i32) -> Result<CollapseOutcome<T>> {
    collapse_with(&psi.padic, &psi.real, ball, level)
}

/// [`collapse_joint`] for an arbitrary real factor, such as the unit apparatus.
pub fn collapse_with<T: Real>(
    padic: &SpectralState<T>,
    real: &impl RealWavefunction<T>,
    ball: &Ball,
    level: i32,
) -> Result<CollapseOutcome<T>> {
    let (inside, _) = project_ball(padic, ball)?;
    if !(inside.norm_sqr() > T::lit(ZERO_WEIGHT) * padic.norm_sqr()) {
        return Ok(CollapseOutcome::ZeroWeight);
    }
    let pullback = pullback_real(real, &padic.to_grid(), level)?;
    let localized = pullback.grid.restrict_to_ball(ball)?;
    let weight = localized.norm_sqr();
    let total = pullback.weight();
    if !(weight > T::zero()) || !(total > T::zero()) {
        return Ok(CollapseOutcome::ZeroWeight);
    }
    let post_state = inside.scaled(creal(inside.norm().recip()));
    Ok(CollapseOutcome::Localized(Collapse { localized, weight, probability: weight / total, post_state }))
}

/// One line of a collapse report.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub time: f64,
    pub ball: String,
    pub probability: f64,
    pub weight: f64,
    pub post_norm: f64,
    pub localized: bool,
}

pub fn scan_report(records: &[ScanRecord]) -> String {
    let mut out = String::new();
    for r in records {
        writeln!(
            out,
            "scan t={:e} ball={} P_int={:e} weight={:e} post_norm={:e} outcome={}",
            r.time,
            r.ball,
            r.probability,
            r.weight,
            r.post_norm,
            if r.localized { "localized" } else { "zero_weight" }
        )
        .expect("writing to a String");
    }
    out
}
