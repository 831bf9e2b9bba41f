use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::padic::{Ball, PAdicApprox};
use crate::scalar::{czero, Real};
use crate::states::{GridState, Window};

const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Integral operator on `L²(Z_p)` with kernel
/// `h(x, y) = p^l Σ H_{J,K} Ω(p^l|x - J|) Ω(p^l|y - K|)`, one site per ball
/// `J + p^l Z_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelOperator<T: Real> {
    prime: u32,
    level: i32,
    sites: Vec<u64>,
    matrix: DMatrix<Complex<T>>,
}

/// Eigenvalues and orthonormal eigenvectors (columns) of the site matrix.
#[derive(Clone, Debug)]
pub struct SiteEigensystem {
    pub values: DVector<f64>,
    pub vectors: DMatrix<Complex<f64>>,
}

/// Builds the kernel operator of a Hermitian site matrix. `sites[i]` labels
/// the ball of row/column `i` by its integer representative in `[0, p^l)`.
pub fn build_kernel<T: Real>(
    matrix: DMatrix<Complex<T>>,
    prime: u32,
    level: i32,
    sites: Vec<u64>,
) -> Result<KernelOperator<T>> {
    crate::padic::check_prime(prime)?;
    if level < 0 {
        return Err(Error::InvalidParameter { name: "level", reason: "must be nonnegative".into() });
    }
    let capacity = (prime as u64).checked_pow(level as u32).unwrap_or(u64::MAX);
    let n = sites.len();
    if n as u64 > capacity {
        return Err(Error::TooManySites { sites: n, level: level as u32, capacity: capacity as usize });
    }
    if matrix.nrows() != n || matrix.ncols() != n {
        return Err(Error::MatrixShape { rows: matrix.nrows(), cols: matrix.ncols(), sites: n });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &s in &sites {
        if s >= capacity || !seen.insert(s) {
            return Err(Error::InvalidSite { site: s, level: level as u32 });
        }
    }
    let mut deviation = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let d = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
            deviation = deviation.max(d.to_f64().unwrap_or(f64::INFINITY));
        }
    }
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(KernelOperator { prime, level, sites, matrix })
}

impl<T: Real> KernelOperator<T> {
    /// Continuous-time quantum walk Hamiltonian `H = -γ A` of a symmetric
    /// real adjacency matrix.
    pub fn from_adjacency(
        adjacency: &DMatrix<T>,
        gamma: T,
        prime: u32,
        level: i32,
        sites: Vec<u64>,
    ) -> Result<Self> {
        let matrix = adjacency.map(|a| Complex::new(-gamma * a, T::zero()));
        build_kernel(matrix, prime, level, sites)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn sites(&self) -> &[u64] {
        &self.sites
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    /// `‖h‖_{L²(Z_p × Z_p)}`, which equals the Frobenius norm of the matrix.
    pub fn kernel_l2_norm(&self) -> T {
        self.matrix.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
    }

    pub fn site_ball(&self, site: u64) -> Ball {
        let center = PAdicApprox::from_integer(self.prime, site as i64, self.level)
            .expect("site below p^l is a valid integer");
        Ball::new(&center, self.level)
    }

    fn check_window(&self, window: Window) -> Result<()> {
        if window.prime() != self.prime || window.top() != 0 {
            return Err(Error::WindowMismatch(format!("kernel acts on Z_{}, got {window}", self.prime)));
        }
        if window.resolution() < self.level {
            return Err(Error::ResolutionTooCoarse { have: window.resolution(), need: self.level });
        }
        Ok(())
    }

    /// Coordinates `⟨f, p^{l/2} Ω_J⟩` for each site.
    pub fn site_amplitudes(&self, f: &GridState<T>) -> Result<Vec<Complex<T>>> {
        self.check_window(f.window())?;
        let window = f.window();
        let scale = window.cell_measure::<T>() * T::pow_prime(self.prime, T::lit(self.level as f64 / 2.0));
        self.sites
            .iter()
            .map(|&s| {
                let range = window.ball_range(&self.site_ball(s))?;
                Ok(f.values()[range].iter().fold(czero(), |acc, v| acc + v) * scale)
            })
            .collect()
    }

    /// `Σ_J a_J p^{l/2} Ω_J` on the given window.
    pub fn synthesize(&self, window: Window, amplitudes: &[Complex<T>]) -> Result<GridState<T>> {
        self.check_window(window)?;
        if amplitudes.len() != self.sites.len() {
            return Err(Error::MatrixShape { rows: amplitudes.len(), cols: 1, sites: self.sites.len() });
        }
        let height = T::pow_prime(self.prime, T::lit(self.level as f64 / 2.0));
        let mut out = GridState::zeros(window);
        for (&s, &a) in self.sites.iter().zip(amplitudes) {
            let range = window.ball_range(&self.site_ball(s))?;
            for v in &mut out.values_mut()[range] {
                *v = *v + a * height;
            }
        }
        Ok(out)
    }

    /// `(Hf)(x) = ∫ h(x, y) f(y) dy`, evaluated exactly as a finite sum.
    pub fn apply(&self, f: &GridState<T>) -> Result<GridState<T>> {
        let a = self.site_amplitudes(f)?;
        let n = a.len();
        let b: Vec<Complex<T>> = (0..n)
            .map(|i| (0..n).fold(czero(), |acc, j| acc + self.matrix[(i, j)] * a[j]))
            .collect();
        self.synthesize(f.window(), &b)
    }

    /// Matrix of the operator in the basis `p^{l/2} Ω_J`, recovered by
    /// applying it on the given window.
    pub fn matrix_on(&self, window: Window) -> Result<DMatrix<Complex<T>>> {
        let n = self.sites.len();
        let mut out = DMatrix::from_element(n, n, czero());
        for k in 0..n {
            let mut unit = vec![czero(); n];
            unit[k] = Complex::new(T::one(), T::zero());
            let image = self.apply(&self.synthesize(window, &unit)?)?;
            let col = self.site_amplitudes(&image)?;
            for (j, c) in col.into_iter().enumerate() {
                out[(j, k)] = c;
            }
        }
        Ok(out)
    }

    /// Hermitian eigendecomposition of the site matrix, computed in `f64`.
    pub fn eigensystem(&self) -> SiteEigensystem {
        let m = self.matrix.map(|c| {
            Complex::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
        });
        let eig = SymmetricEigen::new(m);
        SiteEigensystem { values: eig.eigenvalues, vectors: eig.eigenvectors }
    }
}
