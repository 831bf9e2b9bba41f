//! Truncation windows on `Q_p` and the wavelet index set they admit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::padic::{check_prime, prime_power, Ball, FractionIndex, PAdicApprox, Valuation};
use crate::scalar::Real;

/// The domain ball `p^(-R) Z_p` sampled on the cosets of `p^K Z_p`.
///
/// Cosets are numbered in Monna order: the coset whose representative has
/// digits `d_{-R} … d_{K-1}` gets index `Σ d_i p^(K-1-i)`, so that
/// `index · p^(-K)` is the Monna image of the representative and every ball in
/// the window occupies a contiguous index range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    prime: u32,
    top: i32,
    resolution: i32,
}

impl Window {
    pub fn new(prime: u32, top: i32, resolution: i32) -> Result<Self> {
        check_prime(prime)?;
        if top < 0 || resolution < 0 {
            return Err(Error::InvalidWindow(format!(
                "R={top} and K={resolution} must both be nonnegative"
            )));
        }
        let digits = (top + resolution) as u32;
        if (prime as u128).checked_pow(digits).is_none_or(|n| n > 1 << 26) {
            return Err(Error::InvalidWindow(format!(
                "p^(R+K) = {prime}^{digits} exceeds the supported size"
            )));
        }
        Ok(Self { prime, top, resolution })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// `R`: the domain is `p^(-R) Z_p`.
    pub fn top(&self) -> i32 {
        self.top
    }

    /// `K`: values are constant on cosets of `p^K Z_p`.
    pub fn resolution(&self) -> i32 {
        self.resolution
    }

    /// `p^(R+K)`.
    pub fn dimension(&self) -> usize {
        (self.prime as usize).pow((self.top + self.resolution) as u32)
    }

    pub fn domain(&self) -> Ball {
        Ball::centered(self.prime, -self.top).expect("validated prime")
    }

    /// Haar measure of one coset, `p^(-K)`.
    pub fn cell_measure<T: Real>(&self) -> T {
        T::pow_prime(self.prime, T::lit(-(self.resolution as f64)))
    }

    pub fn cell_measure_exact(&self) -> BigRational {
        prime_power(self.prime, -self.resolution)
    }

    /// Same domain at a finer resolution.
    pub fn refined(&self, resolution: i32) -> Result<Self> {
        Self::new(self.prime, self.top, resolution)
    }

    /// Canonical representative of a coset: the digits below position `K`.
    pub fn representative(&self, index: usize) -> PAdicApprox {
        let p = self.prime as usize;
        let n = (self.top + self.resolution) as usize;
        let mut digits = vec![0u32; n];
        let mut rest = index;
        // ascending positions -R..K-1 are the descending base-p digits of index
        for slot in digits.iter_mut().rev() {
            *slot = (rest % p) as u32;
            rest /= p;
        }
        PAdicApprox::new(self.prime, -self.top, digits, self.resolution).expect("digits below p")
    }

    /// Index of the coset containing `x`, or `None` outside the domain.
    pub fn coset_index(&self, x: &PAdicApprox) -> Option<usize> {
        if x.prime() != self.prime {
            return None;
        }
        if let Valuation::Finite(v) = x.valuation() {
            if v < -self.top {
                return None;
            }
        }
        let p = self.prime as usize;
        Some((-self.top..self.resolution).fold(0usize, |acc, pos| acc * p + x.digit(pos) as usize))
    }

    /// Exact Monna coordinate `index · p^(-K)` of a coset's left endpoint.
    pub fn monna_coordinate(&self, index: usize) -> BigRational {
        BigRational::from_integer(index.into()) * self.cell_measure_exact()
    }

    pub fn monna_coordinate_f<T: Real>(&self, index: usize) -> T {
        T::lit(index as f64) * self.cell_measure::<T>()
    }

    /// Contiguous coset range occupied by a ball inside the domain.
    pub fn ball_range(&self, ball: &Ball) -> Result<Range<usize>> {
        if ball.prime() != self.prime {
            return Err(Error::PrimeMismatch { left: self.prime, right: ball.prime() });
        }
        let l = ball.scale();
        let inside = l >= -self.top
            && match ball.center().valuation() {
                Valuation::Finite(v) => v >= -self.top,
                Valuation::Infinite => true,
            };
        if !inside {
            return Err(Error::BallOutsideDomain(ball.to_string()));
        }
        if l > self.resolution {
            return Err(Error::ResolutionTooCoarse { have: self.resolution, need: l });
        }
        let p = self.prime as usize;
        let len = p.pow((self.resolution - l) as u32);
        let start = (-self.top..l).fold(0usize, |acc, pos| acc * p + ball.center().digit(pos) as usize) * len;
        Ok(start..start + len)
    }

    /// Wavelet scales present in the window, coarsest first: `R, R-1, …, 1-K`.
    pub fn scales(&self) -> impl Iterator<Item = i32> {
        (1 - self.resolution..=self.top).rev()
    }

    pub fn is_admissible(&self, idx: &WaveletIndex) -> bool {
        idx.b.prime() == self.prime
            && idx.r <= self.top
            && idx.r >= 1 - self.resolution
            && idx.b.depth() as i32 <= self.top - idx.r
            && (1..self.prime).contains(&idx.k)
    }

    pub(crate) fn check_admissible(&self, idx: &WaveletIndex) -> Result<()> {
        if self.is_admissible(idx) {
            Ok(())
        } else {
            Err(Error::IndexOutsideWindow(idx.to_string()))
        }
    }

    /// Number of support balls at scale `r`: `p^(R-r)`.
    pub fn blocks_at(&self, r: i32) -> usize {
        (self.prime as usize).pow((self.top - r) as u32)
    }

    /// Coset range covered by the support of an admissible wavelet.
    pub fn support_range(&self, idx: &WaveletIndex) -> Range<usize> {
        let size = (self.prime as usize).pow((self.resolution + idx.r) as u32);
        let start = idx.b.block() * size;
        start..start + size
    }

    /// All admissible wavelet indices in canonical order.
    pub fn wavelet_indices(&self) -> Vec<WaveletIndex> {
        let mut out = Vec::with_capacity(self.dimension().saturating_sub(1));
        for r in self.scales() {
            for block in 0..self.blocks_at(r) {
                let b = FractionIndex::from_block(self.prime, block);
                for k in 1..self.prime {
                    out.push(WaveletIndex { r, b: b.clone(), k });
                }
            }
        }
        out.sort();
        out
    }

    pub(crate) fn ensure_same(&self, other: &Window) -> Result<()> {
        if self != other {
            return Err(Error::WindowMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} R={} K={}", self.prime, self.top, self.resolution)
    }
}

/// Index `(r, b, k)` of the wavelet `ψ_rbk`, supported on `p^(-r) b + p^(-r) Z_p`.
///
/// Ordered canonically: descending `r`, then the digits of `b`
/// lexicographically, then ascending `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WaveletIndex {
    pub r: i32,
    pub b: FractionIndex,
    pub k: u32,
}

impl WaveletIndex {
    pub fn new(r: i32, b: FractionIndex, k: u32) -> Result<Self> {
        if !(1..b.prime()).contains(&k) {
            return Err(Error::InvalidParameter {
                name: "k",
                reason: format!("{k} is not in 1..={}", b.prime() - 1),
            });
        }
        Ok(Self { r, b, k })
    }

    pub fn prime(&self) -> u32 {
        self.b.prime()
    }

    pub fn support(&self) -> Ball {
        Ball::from_fraction(&self.b, self.r)
    }
}

impl Ord for WaveletIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .r
            .cmp(&self.r)
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.k.cmp(&other.k))
    }
}

impl PartialOrd for WaveletIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WaveletIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, b={}, k={})", self.r, self.b, self.k)
    }
}

/// A basis element of a window: the constant mode or a wavelet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PadicMode {
    /// The normalized domain indicator `p^(-R/2) Ω(|x|_p ≤ p^R)`.
    Constant,
    Wavelet(WaveletIndex),
}

impl fmt::Display for PadicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicMode::Constant => f.write_str("constant"),
            PadicMode::Wavelet(w) => w.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_dimension_counts_basis() {
        for (p, r, k) in [(2, 2, 3), (3, 1, 2), (5, 1, 1), (2, 0, 4), (3, 2, 0)] {
            let w = Window::new(p, r, k).unwrap();
            assert_eq!(w.wavelet_indices().len() + 1, w.dimension());
        }
    }

    #[test]
    fn representatives_round_trip() {
        let w = Window::new(3, 1, 2).unwrap();
        for i in 0..w.dimension() {
            let x = w.representative(i);
            assert_eq!(w.coset_index(&x), Some(i));
        }
        let outside = PAdicApprox::from_rational(3, 1, 9, 4).unwrap();
        assert_eq!(w.coset_index(&outside), None);
    }

    #[test]
    fn monna_order_of_cosets() {
        let w = Window::new(2, 1, 2).unwrap();
        for i in 0..w.dimension() {
            assert_eq!(w.representative(i).monna(), w.monna_coordinate(i));
        }
    }

    #[test]
    fn ball_ranges_are_blocks() {
        let w = Window::new(3, 1, 2).unwrap();
        let b = Ball::new(&PAdicApprox::from_rational(3, 1, 3, 5).unwrap(), 1);
        let range = w.ball_range(&b).unwrap();
        assert_eq!(range.len(), 3);
        for i in 0..w.dimension() {
            assert_eq!(range.contains(&i), b.contains(&w.representative(i)));
        }
        assert_eq!(w.ball_range(&w.domain()).unwrap(), 0..27);
        let far = Ball::centered(3, -2).unwrap();
        assert!(matches!(w.ball_range(&far), Err(Error::BallOutsideDomain(_))));
        let fine = Ball::centered(3, 3).unwrap();
        assert!(matches!(w.ball_range(&fine), Err(Error::ResolutionTooCoarse { .. })));
    }

    #[test]
    fn canonical_order() {
        let w = Window::new(2, 1, 1).unwrap();
        let idx = w.wavelet_indices();
        let rs: Vec<i32> = idx.iter().map(|i| i.r).collect();
        assert_eq!(rs, vec![1, 0, 0]);
        assert!(idx.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn support_range_matches_support_ball() {
        let w = Window::new(3, 2, 1).unwrap();
        for idx in w.wavelet_indices() {
            let range = w.support_range(&idx);
            assert_eq!(w.ball_range(&idx.support()).unwrap(), range);
        }
    }
}
