//! Exact finite-window p-adic arithmetic, balls, the additive character and the
//! Monna map.
//!
//! A [`PAdicApprox`] stores `Σ d_i p^(v+i)` exactly together with a resolution
//! cap `K`: digits at positions `>= K` are not tracked and read as zero.
//! Addition, negation and multiplication are exact modulo `p^K` of the result
//! (the cap of a sum is the smaller input cap; for a product it is shifted by
//! the other factor's valuation). Norms, Haar measures, fractional parts and
//! Monna images are returned as exact rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

/// Largest prime accepted; keeps digit products inside `u64` accumulators.
pub const MAX_PRIME: u32 = 65521;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

/// `p^e` as an exact rational, for any integer `e`.
pub fn prime_power(p: u32, e: i32) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// p-adic valuation, with `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// A p-adic number held exactly on the digit window `[valuation, cap)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdicApprox {
    prime: u32,
    valuation: i32,
    digits: Vec<u32>,
    cap: i32,
}

impl PAdicApprox {
    /// Builds `Σ digits[i] p^(valuation+i)`, truncated at `cap`.
    pub fn new(prime: u32, valuation: i32, digits: Vec<u32>, cap: i32) -> Result<Self> {
        check_prime(prime)?;
        if let Some(&bad) = digits.iter().find(|&&d| d >= prime) {
            return Err(Error::InvalidDigit { prime, digit: bad });
        }
        Ok(Self::normalized(prime, valuation, digits, cap))
    }

    fn normalized(prime: u32, valuation: i32, mut digits: Vec<u32>, cap: i32) -> Self {
        let room = (cap as i64 - valuation as i64).max(0) as usize;
        digits.truncate(room);
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let lead = digits.iter().take_while(|&&d| d == 0).count();
        if lead == digits.len() {
            return Self { prime, valuation: cap, digits: Vec::new(), cap };
        }
        digits.drain(..lead);
        Self { prime, valuation: valuation + lead as i32, digits, cap }
    }

    pub fn zero(prime: u32, cap: i32) -> Self {
        Self { prime, valuation: cap, digits: Vec::new(), cap }
    }

    pub fn from_integer(prime: u32, n: i64, cap: i32) -> Result<Self> {
        Self::from_rational(prime, n, 1, cap)
    }

    pub fn from_rational(prime: u32, num: i64, den: i64, cap: i32) -> Result<Self> {
        Self::from_ratio(prime, &BigRational::new_raw(BigInt::from(num), BigInt::from(den)), cap)
    }

    /// p-adic expansion of a rational number, exact below `cap`.
    pub fn from_ratio(prime: u32, q: &BigRational, cap: i32) -> Result<Self> {
        check_prime(prime)?;
        if q.denom().is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if q.numer().is_zero() {
            return Ok(Self::zero(prime, cap));
        }
        let p = BigInt::from(prime);
        let negative = q.numer().is_negative() != q.denom().is_negative();
        let (mut num, a) = strip_prime(q.numer().abs(), &p);
        let (den, b) = strip_prime(q.denom().abs(), &p);
        let valuation = a - b;
        let width = cap as i64 - valuation as i64;
        if width <= 0 {
            return Ok(Self::zero(prime, cap));
        }
        let modulus = p.pow(width as u32);
        let inv = mod_inverse(&den, &modulus);
        num = (num * inv).mod_floor(&modulus);
        if negative {
            num = (&modulus - num).mod_floor(&modulus);
        }
        let mut digits = Vec::with_capacity(width as usize);
        while !num.is_zero() {
            let (q2, r) = num.div_rem(&p);
            digits.push(r.to_u32().expect("digit below prime"));
            num = q2;
        }
        Ok(Self::normalized(prime, valuation, digits, cap))
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.valuation)
        }
    }

    /// Digits from the lowest nonzero position upward.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Digit at an absolute position; zero outside the stored range.
    pub fn digit(&self, position: i32) -> u32 {
        if self.is_zero() || position < self.valuation {
            return 0;
        }
        self.digits.get((position - self.valuation) as usize).copied().unwrap_or(0)
    }

    /// Highest position holding a nonzero digit.
    pub fn top_position(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.valuation + self.digits.len() as i32 - 1)
    }

    /// `|x|_p = p^(-ord x)`, zero for zero.
    pub fn norm(&self) -> BigRational {
        match self.valuation() {
            Valuation::Finite(v) => prime_power(self.prime, -v),
            Valuation::Infinite => BigRational::zero(),
        }
    }

    pub fn valuation_and_norm(&self) -> (Valuation, BigRational) {
        (self.valuation(), self.norm())
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch { left: self.prime, right: other.prime });
        }
        Ok(())
    }

    /// Same value on a different window; digits at or above `cap` are dropped,
    /// missing positions below it read as zero.
    pub fn with_cap(&self, cap: i32) -> Self {
        if self.is_zero() {
            return Self::zero(self.prime, cap);
        }
        Self::normalized(self.prime, self.valuation, self.digits.clone(), cap)
    }

    /// Multiplication by `p^shift` (exact).
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            prime: self.prime,
            valuation: self.valuation + shift,
            digits: self.digits.clone(),
            cap: self.cap + shift,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.prime as u64;
        let lo = self.valuation.min(other.valuation);
        let hi = self.cap.min(other.cap);
        if lo >= hi {
            return Ok(Self::zero(self.prime, hi));
        }
        let mut digits = Vec::with_capacity((hi - lo) as usize);
        let mut carry = 0u64;
        for pos in lo..hi {
            let s = self.digit(pos) as u64 + other.digit(pos) as u64 + carry;
            digits.push((s % p) as u32);
            carry = s / p;
        }
        Ok(Self::normalized(self.prime, lo, digits, hi))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let cap = (self.cap + other.valuation).min(other.cap + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.prime, cap));
        }
        let valuation = self.valuation + other.valuation;
        let width = (cap - valuation).max(0) as usize;
        let p = self.prime as u64;
        let mut acc = vec![0u64; width];
        for (i, &a) in self.digits.iter().enumerate().take(width) {
            for (j, &b) in other.digits.iter().enumerate().take(width - i) {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        let mut digits = Vec::with_capacity(width);
        let mut carry = 0u64;
        for a in acc {
            let s = a + carry;
            digits.push((s % p) as u32);
            carry = s / p;
        }
        Ok(Self::normalized(self.prime, valuation, digits, cap))
    }

    /// `{x}_p`: the sum of the digits at negative positions, in `[0, 1)`.
    pub fn fractional_part(&self) -> BigRational {
        if self.is_zero() || self.valuation >= 0 {
            return BigRational::zero();
        }
        let p = BigInt::from(self.prime);
        let mut num = BigInt::zero();
        let mut scale = BigInt::one();
        for pos in self.valuation..0 {
            num += BigInt::from(self.digit(pos)) * &scale;
            scale *= &p;
        }
        BigRational::new(num, scale)
    }

    /// `χ_p(x) = exp(2πi {x}_p)`.
    pub fn additive_character<T: Real>(&self) -> Complex<T> {
        let frac = self.fractional_part();
        cis(T::lit(2.0) * T::PI() * T::lit(ratio_to_f64(&frac)))
    }

    /// Monna map `Σ y_j p^j ↦ Σ y_j p^(-j-1)`, exact for the stored digits.
    pub fn monna(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let top = self.top_position().expect("nonzero");
        let p = BigInt::from(self.prime);
        let mut num = BigInt::zero();
        for pos in self.valuation..=top {
            // term d p^(-pos-1) = d p^(top - pos) / p^(top+1)
            num += BigInt::from(self.digit(pos)) * p.pow((top - pos) as u32);
        }
        BigRational::from_integer(num) * prime_power(self.prime, -(top + 1))
    }

    /// Value of the stored digit expansion as a rational number.
    pub fn window_value(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &d) in self.digits.iter().enumerate() {
            acc += BigRational::from_integer(BigInt::from(d)) * prime_power(self.prime, self.valuation + i as i32);
        }
        acc
    }
}

impl std::ops::Neg for &PAdicApprox {
    type Output = PAdicApprox;

    fn neg(self) -> PAdicApprox {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.prime;
        let mut digits = Vec::with_capacity((self.cap - self.valuation) as usize);
        for pos in self.valuation..self.cap {
            let d = self.digit(pos);
            digits.push(if pos == self.valuation { p - d } else { p - 1 - d });
        }
        PAdicApprox::normalized(p, self.valuation, digits, self.cap)
    }
}

impl std::ops::Neg for PAdicApprox {
    type Output = PAdicApprox;

    fn neg(self) -> PAdicApprox {
        -&self
    }
}

impl fmt::Display for PAdicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}: …", self.prime)?;
        let top = self.top_position().unwrap_or(0).max(0);
        let bottom = if self.is_zero() { 0 } else { self.valuation.min(0) };
        let mut first = true;
        for pos in (bottom..=top).rev() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", self.digit(pos))?;
            if pos == 0 {
                f.write_str(" .")?;
            }
        }
        Ok(())
    }
}

fn strip_prime(mut n: BigInt, p: &BigInt) -> (BigInt, i32) {
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (n, count);
        }
        n = q;
        count += 1;
    }
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.extended_gcd(modulus);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(modulus)
}

pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    let (n, d) = (q.numer(), q.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // scale both down to a manageable size
            let shift = d.bits().saturating_sub(900);
            let n2: BigInt = n >> shift;
            let d2: BigInt = d >> shift;
            n2.to_f64().unwrap_or(0.0) / d2.to_f64().unwrap_or(1.0)
        }
    }
}

/// An element `Σ_{j=1..m} x_{-j} p^{-j}` of `Q_p / Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionIndex {
    prime: u32,
    /// `digits[j-1] = x_{-j}`; the deepest digit is nonzero.
    digits: Vec<u32>,
}

impl FractionIndex {
    pub fn new(prime: u32, mut digits: Vec<u32>) -> Result<Self> {
        check_prime(prime)?;
        if let Some(&bad) = digits.iter().find(|&&d| d >= prime) {
            return Err(Error::InvalidDigit { prime, digit: bad });
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(Self { prime, digits })
    }

    pub fn zero(prime: u32) -> Self {
        Self { prime, digits: Vec::new() }
    }

    /// Inverse of [`FractionIndex::block`].
    pub fn from_block(prime: u32, mut block: usize) -> Self {
        let mut digits = Vec::new();
        while block > 0 {
            digits.push((block % prime as usize) as u32);
            block /= prime as usize;
        }
        Self { prime, digits }
    }

    /// `Σ x_{-j} p^(j-1)`: the integer obtained by reading `x_{-1}` as units.
    pub fn block(&self) -> usize {
        self.digits.iter().rev().fold(0usize, |acc, &d| acc * self.prime as usize + d as usize)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Number of fractional digits `m`.
    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn to_padic(&self, cap: i32) -> PAdicApprox {
        let m = self.digits.len() as i32;
        let ascending: Vec<u32> = self.digits.iter().rev().copied().collect();
        PAdicApprox::normalized(self.prime, -m, ascending, cap)
    }

    /// Fractional digits of `x` (its class modulo `Z_p`).
    pub fn from_padic(x: &PAdicApprox) -> Self {
        let mut digits = Vec::new();
        if let Valuation::Finite(v) = x.valuation() {
            for pos in (v.min(0)..0).rev() {
                digits.push(x.digit(pos));
            }
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Self { prime: x.prime(), digits }
    }
}

impl fmt::Display for FractionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("0");
        }
        f.write_str("0.")?;
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        write!(f, "_{}", self.prime)
    }
}

/// Relative position of two balls; in an ultrametric space no other case exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BallRelation {
    Disjoint,
    Equal,
    /// The first ball strictly contains the second.
    Contains,
    /// The first ball is strictly contained in the second.
    ContainedIn,
}

/// The ball `c + p^l Z_p`, stored by the digits of `c` below position `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    scale: i32,
    center: PAdicApprox,
}

impl Ball {
    pub fn new(center: &PAdicApprox, scale: i32) -> Self {
        Self { scale, center: center.with_cap(scale) }
    }

    /// `p^l Z_p`.
    pub fn centered(prime: u32, scale: i32) -> Result<Self> {
        check_prime(prime)?;
        Ok(Self { scale, center: PAdicApprox::zero(prime, scale) })
    }

    /// `Z_p`.
    pub fn unit(prime: u32) -> Result<Self> {
        Self::centered(prime, 0)
    }

    /// The ball of radius `p^r` around a point that is `p^(-r) b` for `b ∈ Q_p/Z_p`.
    pub fn from_fraction(b: &FractionIndex, r: i32) -> Self {
        Self::new(&b.to_padic(0).shift(-r), -r)
    }

    pub fn prime(&self) -> u32 {
        self.center.prime()
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    /// Center digits at positions below the scale.
    pub fn center(&self) -> &PAdicApprox {
        &self.center
    }

    /// `p^(-l)`.
    pub fn haar_measure(&self) -> BigRational {
        prime_power(self.prime(), -self.scale)
    }

    pub fn contains(&self, x: &PAdicApprox) -> bool {
        x.prime() == self.prime() && x.with_cap(self.scale) == self.center
    }

    pub fn relation(&self, other: &Ball) -> Result<BallRelation> {
        self.center.same_prime(&other.center)?;
        Ok(match self.scale.cmp(&other.scale) {
            Ordering::Equal if self.center == other.center => BallRelation::Equal,
            Ordering::Equal => BallRelation::Disjoint,
            Ordering::Less if other.center.with_cap(self.scale) == self.center => BallRelation::Contains,
            Ordering::Greater if self.center.with_cap(other.scale) == other.center => BallRelation::ContainedIn,
            _ => BallRelation::Disjoint,
        })
    }

    /// `M(B) = M(c) + [0, p^(-l)]`, returned as its exact endpoints.
    pub fn monna_image(&self) -> (BigRational, BigRational) {
        let lo = self.center.monna();
        let hi = &lo + self.haar_measure();
        (lo, hi)
    }

    /// The `p` balls of the next scale, in digit order.
    pub fn children(&self) -> Vec<Ball> {
        let p = self.prime();
        (0..p)
            .map(|d| {
                let step = PAdicApprox::normalized(p, self.scale, vec![d], self.scale + 1);
                let c = self
                    .center
                    .with_cap(self.scale + 1)
                    .checked_add(&step)
                    .expect("same prime");
                Ball { scale: self.scale + 1, center: c }
            })
            .collect()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.center.window_value();
        write!(f, "{} + {}^{}Z_{}", c, self.prime(), self.scale, self.prime())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn x(p: u32, n: i64, d: i64) -> PAdicApprox {
        PAdicApprox::from_rational(p, n, d, 12).unwrap()
    }

    #[test]
    fn valuation_and_norm_examples() {
        assert_eq!(x(2, 0, 1).valuation_and_norm(), (Valuation::Infinite, BigRational::zero()));
        assert_eq!(x(3, 1, 1).valuation_and_norm(), (Valuation::Finite(0), q(1, 1)));
        assert_eq!(x(5, 25 * 7, 1).valuation_and_norm(), (Valuation::Finite(2), q(1, 25)));
        assert_eq!(x(3, 2, 9).valuation_and_norm(), (Valuation::Finite(-2), q(9, 1)));
    }

    #[test]
    fn addition_carries() {
        let two = x(2, 1, 1).checked_add(&x(2, 1, 1)).unwrap();
        assert_eq!(two.valuation(), Valuation::Finite(1));
        assert_eq!(two.digits(), &[1]);
    }

    #[test]
    fn multiplicative_inverse_of_p() {
        let prod = x(3, 3, 1).checked_mul(&x(3, 1, 3)).unwrap();
        assert_eq!(prod.with_cap(10), x(3, 1, 1).with_cap(10));
    }

    #[test]
    fn negation_and_subtraction() {
        let m1 = x(3, -1, 1);
        assert!(m1.digits().iter().all(|&d| d == 2));
        assert!(m1.checked_add(&x(3, 1, 1)).unwrap().is_zero());
        let d = x(5, 7, 3).checked_sub(&x(5, 1, 3)).unwrap();
        assert_eq!(d, x(5, 2, 1));
    }

    #[test]
    fn prime_mismatch_is_an_error() {
        assert_eq!(
            x(2, 1, 1).checked_add(&x(3, 1, 1)),
            Err(Error::PrimeMismatch { left: 2, right: 3 })
        );
        assert!(PAdicApprox::from_integer(4, 1, 5).is_err());
        assert!(PAdicApprox::new(3, 0, vec![3], 5).is_err());
    }

    #[test]
    fn rational_expansion_matches_value() {
        // 1/3 + 2 + 3 in Q_3
        let y = x(3, 1 + 15, 3);
        assert_eq!(y.valuation(), Valuation::Finite(-1));
        assert_eq!(y.digit(-1), 1);
        assert_eq!(y.digit(0), 2);
        assert_eq!(y.digit(1), 1);
        // -1/2 in Q_5 times 2 is -1
        let h = x(5, -1, 2).checked_mul(&x(5, 2, 1)).unwrap();
        assert_eq!(h.with_cap(8), x(5, -1, 1).with_cap(8));
    }

    #[test]
    fn fractional_part_examples() {
        assert_eq!(x(2, 0, 1).fractional_part(), q(0, 1));
        assert_eq!(x(2, 1, 2).fractional_part(), q(1, 2));
        assert_eq!(x(3, 1 + 6 + 9, 3).fractional_part(), q(1, 3));
        assert_eq!(x(5, 7, 25).fractional_part(), q(7, 25));
        assert_eq!(x(7, 49, 1).fractional_part(), q(0, 1));
    }

    #[test]
    fn character_examples() {
        let c: Complex<f64> = x(2, 5, 1).additive_character();
        assert!((c - Complex::new(1.0, 0.0)).norm() < 1e-15);
        let c: Complex<f64> = x(2, 1, 2).additive_character();
        assert!((c - Complex::new(-1.0, 0.0)).norm() < 1e-15);
        let c: Complex<f64> = x(3, 1, 3).additive_character();
        let want = cis(2.0 * std::f64::consts::PI / 3.0);
        assert!((c - want).norm() < 1e-15);
    }

    #[test]
    fn monna_examples() {
        assert_eq!(x(2, 0, 1).monna(), q(0, 1));
        assert_eq!(x(2, 1, 1).monna(), q(1, 2));
        assert_eq!(x(3, 1 + 6, 3).monna(), q(5, 3));
        // 1 + 3 in Q_2 is 0b100: M = 2^-3
        assert_eq!(x(2, 4, 1).monna(), q(1, 8));
    }

    #[test]
    fn monna_image_of_balls() {
        let z2 = Ball::unit(2).unwrap();
        assert_eq!(z2.monna_image(), (q(0, 1), q(1, 1)));
        let odd = Ball::new(&x(2, 1, 1), 1);
        assert_eq!(odd.monna_image(), (q(1, 2), q(1, 1)));
    }

    #[test]
    fn ball_relations() {
        let zp = Ball::unit(3).unwrap();
        let pzp = Ball::centered(3, 1).unwrap();
        assert_eq!(zp.relation(&pzp).unwrap(), BallRelation::Contains);
        assert_eq!(pzp.relation(&zp).unwrap(), BallRelation::ContainedIn);
        let b1 = Ball::new(&x(3, 1, 1), 1);
        let b2 = Ball::new(&x(3, 2, 1), 1);
        assert_eq!(b1.relation(&b2).unwrap(), BallRelation::Disjoint);
        assert_eq!(b1.relation(&b1.clone()).unwrap(), BallRelation::Equal);
        // centers differing only above the scale describe the same ball
        assert_eq!(Ball::new(&x(3, 1, 1), 1), Ball::new(&x(3, 4, 1), 1));
        assert!(Ball::unit(2).unwrap().relation(&Ball::unit(3).unwrap()).is_err());
    }

    #[test]
    fn children_partition_parent() {
        let b = Ball::new(&x(3, 1, 3), 0);
        let kids = b.children();
        assert_eq!(kids.len(), 3);
        for k in &kids {
            assert_eq!(b.relation(k).unwrap(), BallRelation::Contains);
        }
        let total: BigRational = kids.iter().map(Ball::haar_measure).sum();
        assert_eq!(total, b.haar_measure());
    }

    #[test]
    fn fraction_index_blocks_round_trip() {
        for block in 0..27 {
            let b = FractionIndex::from_block(3, block);
            assert_eq!(b.block(), block);
            let back = FractionIndex::from_padic(&b.to_padic(4));
            assert_eq!(back, b);
        }
    }

    #[test]
    fn canonical_rendering() {
        let y = x(3, 1 + 6 + 18, 3);
        assert_eq!(y.to_string(), "p=3: …2 2 . 1");
        assert_eq!(x(2, 0, 1).to_string(), "p=2: …0 .");
    }
}
