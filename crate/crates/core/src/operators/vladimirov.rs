use num_complex::Complex;

use crate::error::{Error, Result};
use crate::padic::{ratio_to_f64, PAdicApprox};
use crate::scalar::{czero, Real};
use crate::states::{GridState, PadicMode, SpectralState, Window};

/// The fractional derivative `D^α` restricted to a window, together with the
/// mass that turns it into the Hamiltonian `D^α / (2 m_p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VladimirovOperator<T> {
    alpha: T,
    mass: T,
    window: Window,
}

impl<T: Real> VladimirovOperator<T> {
    pub fn new(window: Window, alpha: T, mass: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::InvalidParameter { name: "alpha", reason: "must be positive".into() });
        }
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(Error::InvalidParameter { name: "m_p", reason: "must be positive".into() });
        }
        Ok(Self { alpha, mass, window })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn pp(&self, e: T) -> T {
        T::pow_prime(self.window.prime(), e)
    }

    /// `(1 - p^α) / (1 - p^{-α-1})`.
    pub fn prefactor(&self) -> T {
        (T::one() - self.pp(self.alpha)) / (T::one() - self.pp(-self.alpha - T::one()))
    }

    /// `∫_{|z| > p^R} |z|^{-α-1} dz`.
    pub fn tail_integral(&self) -> T {
        self.tail_with_top(self.window.top())
    }

    /// Eigenvalue `p^{(1-r)α}` on wavelets of scale `r`.
    pub fn eigenvalue(&self, r: i32) -> T {
        self.pp(T::lit((1 - r) as f64) * self.alpha)
    }

    /// Galerkin diagonal `⟨e₀, D^α e₀⟩` of the normalized domain indicator.
    pub fn constant_eigenvalue(&self) -> T {
        let r = T::lit(self.window.top() as f64);
        (T::one() - self.pp(-T::one())) * self.pp(-r * self.alpha)
            / (T::one() - self.pp(-self.alpha - T::one()))
    }

    pub fn mode_eigenvalue(&self, mode: &PadicMode) -> T {
        match mode {
            PadicMode::Constant => self.constant_eigenvalue(),
            PadicMode::Wavelet(idx) => self.eigenvalue(idx.r),
        }
    }

    /// Hamiltonian energy `eigenvalue / (2 m_p)`.
    pub fn energy(&self, mode: &PadicMode) -> T {
        self.mode_eigenvalue(mode) / (T::lit(2.0) * self.mass)
    }

    /// `‖D^α e₀‖²` outside the domain, discarded by the Galerkin projection.
    pub fn truncation_leakage(&self) -> T {
        let c = self.prefactor();
        let r = T::lit(self.window.top() as f64);
        let s = T::lit(2.0) * self.alpha + T::one();
        c * c * self.pp(r) * (T::one() - self.pp(-T::one())) * self.pp(-(r + T::one()) * s)
            / (T::one() - self.pp(-s))
    }

    pub fn apply_spectral(&self, s: &SpectralState<T>) -> Result<SpectralState<T>> {
        self.window.ensure_same(&s.window())?;
        Ok(s.map_modes(|mode, c| c * self.mode_eigenvalue(mode)))
    }

    /// `⟨ψ, H ψ⟩` with `H = D^α / (2 m_p)`.
    pub fn expectation(&self, s: &SpectralState<T>) -> Result<T> {
        self.window.ensure_same(&s.window())?;
        Ok(s.modes().fold(T::zero(), |acc, (mode, c)| acc + c.norm_sqr() * self.energy(&mode)))
    }

    /// The defining singular integral evaluated exactly on the cosets of the
    /// state's window: a finite coset sum plus the closed-form tail beyond the
    /// domain, where the state vanishes.
    pub fn apply_direct(&self, f: &GridState<T>) -> Result<GridState<T>> {
        let window = f.window();
        if window.prime() != self.window.prime() {
            return Err(Error::PrimeMismatch { left: self.window.prime(), right: window.prime() });
        }
        let tail = self.tail_with_top(window.top());
        let weights = self.shell_weights(window);
        let p = window.prime() as usize;
        let values = f.values();
        let out = (0..values.len())
            .map(|i| {
                let fi = values[i];
                let mut acc = czero::<T>();
                for (j, &fj) in values.iter().enumerate() {
                    if j != i {
                        acc = acc + (fj - fi) * weights[top_difference(i, j, p)];
                    }
                }
                (acc - fi * tail) * self.prefactor()
            })
            .collect();
        GridState::new(window, out)
    }

    /// `D^α f` at an arbitrary point; outside the domain this is
    /// `c |x|^{-α-1} ∫ f`.
    pub fn direct_at(&self, f: &GridState<T>, x: &PAdicApprox) -> Result<Complex<T>> {
        let window = f.window();
        if x.prime() != window.prime() {
            return Err(Error::PrimeMismatch { left: window.prime(), right: x.prime() });
        }
        if let Some(i) = window.coset_index(x) {
            return Ok(self.apply_direct(f)?.values()[i]);
        }
        let norm = T::lit(ratio_to_f64(&x.norm()));
        Ok(f.integral() * (self.prefactor() * norm.powf(-self.alpha - T::one())))
    }

    fn tail_with_top(&self, top: i32) -> T {
        let p_inv = self.pp(-T::one());
        let r = T::lit(top as f64);
        (T::one() - p_inv) * self.pp(-(r + T::one()) * self.alpha) / (T::one() - self.pp(-self.alpha))
    }

    /// `cell · |z - x|^{-α-1}` indexed by the most significant differing
    /// digit `q` of the two coset indices: `|z - x| = p^{q - K + 1}`.
    fn shell_weights(&self, window: Window) -> Vec<T> {
        let k = window.resolution();
        let digits = window.top() + k;
        let cell = window.cell_measure::<T>();
        (0..digits.max(1))
            .map(|q| cell * self.pp(-T::lit((q - k + 1) as f64) * (self.alpha + T::one())))
            .collect()
    }
}

fn top_difference(mut a: usize, mut b: usize, p: usize) -> usize {
    let mut q = 0;
    a /= p;
    b /= p;
    while a != b {
        a /= p;
        b /= p;
        q += 1;
    }
    q
}
