use num_complex::Complex;
use num_rational::BigRational;

use super::window::Window;
use crate::error::{Error, Result};
use crate::padic::{Ball, PAdicApprox};
use crate::scalar::{czero, Real};

/// A locally constant function on the domain of a [`Window`], one value per
/// coset of `p^K Z_p` in Monna order.
#[derive(Clone, Debug, PartialEq)]
pub struct GridState<T> {
    window: Window,
    values: Vec<Complex<T>>,
}

impl<T: Real> GridState<T> {
    pub fn new(window: Window, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != window.dimension() {
            return Err(Error::WindowMismatch(format!(
                "{} values for a window of dimension {}",
                values.len(),
                window.dimension()
            )));
        }
        Ok(Self { window, values })
    }

    pub fn zeros(window: Window) -> Self {
        Self { window, values: vec![czero(); window.dimension()] }
    }

    /// Samples `f` at every canonical coset representative.
    pub fn from_fn(window: Window, mut f: impl FnMut(&PAdicApprox) -> Complex<T>) -> Self {
        let values = (0..window.dimension()).map(|i| f(&window.representative(i))).collect();
        Self { window, values }
    }

    /// The (unnormalized) indicator `Ω_B` of a ball inside the domain.
    pub fn indicator(window: Window, ball: &Ball) -> Result<Self> {
        let range = window.ball_range(ball)?;
        let mut g = Self::zeros(window);
        for v in &mut g.values[range] {
            *v = Complex::new(T::one(), T::zero());
        }
        Ok(g)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Value at a point of `Q_p`; zero outside the domain.
    pub fn eval(&self, x: &PAdicApprox) -> Complex<T> {
        self.window.coset_index(x).map_or_else(czero, |i| self.values[i])
    }

    /// `∫ f dx`, exact for locally constant `f`.
    pub fn integral(&self) -> Complex<T> {
        let cell = self.window.cell_measure::<T>();
        self.values.iter().fold(czero(), |acc, v| acc + v) * cell
    }

    pub fn norm_sqr(&self) -> T {
        let cell = self.window.cell_measure::<T>();
        self.values.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()) * cell
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == T::zero() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex::new(n.recip(), T::zero())))
    }

    /// Same function sampled on a finer coset grid.
    pub fn refine(&self, resolution: i32) -> Result<Self> {
        let k = self.window.resolution();
        if resolution < k {
            return Err(Error::ResolutionTooCoarse { have: resolution, need: k });
        }
        let window = self.window.refined(resolution)?;
        let rep = (self.window.prime() as usize).pow((resolution - k) as u32);
        let values = self
            .values
            .iter()
            .flat_map(|&v| std::iter::repeat_n(v, rep))
            .collect();
        Ok(Self { window, values })
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.window.prime() != other.window.prime() || self.window.top() != other.window.top() {
            return Err(Error::WindowMismatch(format!("{} vs {}", self.window, other.window)));
        }
        let k = self.window.resolution().max(other.window.resolution());
        Ok((self.refine(k)?, other.refine(k)?))
    }

    /// `⟨f, g⟩ = ∫ f ḡ dx`; coarser operands are refined first.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        let (f, g) = self.aligned(other)?;
        let cell = f.window.cell_measure::<T>();
        let sum = f
            .values
            .iter()
            .zip(&g.values)
            .fold(czero(), |acc, (a, b)| acc + a * b.conj());
        Ok(sum * cell)
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self { window: self.window, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (f, g) = self.aligned(other)?;
        let values = f.values.iter().zip(&g.values).map(|(a, b)| a + b).collect();
        Ok(Self { window: f.window, values })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scaled(Complex::new(-T::one(), T::zero())))
    }

    /// Pointwise product with `1_B`.
    pub fn restrict_to_ball(&self, ball: &Ball) -> Result<Self> {
        let range = self.window.ball_range(ball)?;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| if range.contains(&i) { v } else { czero() })
            .collect();
        Ok(Self { window: self.window, values })
    }

    /// `∫_B |f|² dx`.
    pub fn mass_in(&self, ball: &Ball) -> Result<T> {
        let range = self.window.ball_range(ball)?;
        let cell = self.window.cell_measure::<T>();
        Ok(self.values[range].iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()) * cell)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        let (f, g) = self.aligned(other)?;
        Ok(f.values
            .iter()
            .zip(&g.values)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
    }

    /// Exact Monna coordinates of the cosets' left endpoints.
    pub fn monna_coordinates(&self) -> Vec<BigRational> {
        (0..self.values.len()).map(|i| self.window.monna_coordinate(i)).collect()
    }
}

/// Discretization `φ^(l)` of a function on `Z_p`: the value at the canonical
/// representative `I = I_0 + … + I_{l-1} p^(l-1)` on each ball `I + p^l Z_p`.
pub fn discretize<T: Real>(
    prime: u32,
    level: i32,
    f: impl FnMut(&PAdicApprox) -> Complex<T>,
) -> Result<GridState<T>> {
    let window = Window::new(prime, 0, level)?;
    Ok(GridState::from_fn(window, f))
}
