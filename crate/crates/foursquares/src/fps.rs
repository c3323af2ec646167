//! Exact truncated formal power series in one variable `q` over arbitrary
//! precision integers.
//!
//! A [`TruncatedSeries`] stores the coefficients of `q^0 .. q^{N-1}` for an
//! explicit truncation order `N`; the series is known modulo `q^N` and nothing
//! is claimed beyond that. All arithmetic is exact: binary operations truncate
//! to the minimum order of the operands, and reading a coefficient at or past
//! the truncation order is an error rather than a silent zero.
//!
//! Besides ring arithmetic the module provides the series constructors used by
//! the verification engine:
//!
//! - [`h_series`]: `H_n = prod_{j=1}^{n} (1+q^j)/(1-q^j)`, with `H_n = 0` for
//!   negative `n` so that summands vanish outside their natural range,
//! - [`theta_partial`] / [`theta_full`]: `sum_{|k|<=n} (-q)^{k^2}` and
//!   `sum_{k in Z} q^{k^2}`,
//! - [`lambert_rhs`] / [`a_prime_lhs`]: the Lambert-type sums
//!   `1 + 8 sum_k q^k/(1+(-q)^k)^2` and `1 + 8 sum_k (-q)^k/(1+q^k)^2`,
//! - [`expand_unit_factor`]: `(1 + s*q^m)^e` for any integer `e`,
//! - [`expand_z_over_1pz2`]: the expansion `z/(1+z)^2 = sum_r (-1)^{r+1} r z^r`
//!   for a signed monomial `z`,
//! - [`double_sum`]: `sum_{k,r>=1} (-1)^{(k+1)(r+1)} r q^{kr}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from truncated series operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpsError {
    /// Inversion requires a constant term of `+1` or `-1`; anything else is
    /// not a unit over the integers.
    #[error("series is not invertible: constant term {0} is not +1 or -1")]
    NonUnitConstant(BigInt),
    /// Coefficient requested at or beyond the truncation order.
    #[error("coefficient of q^{index} requested, but series is only known mod q^{order}")]
    CoefficientBeyondOrder { index: usize, order: usize },
}

/// Sign of a unit monomial, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign of `(-1)^k`.
    pub fn from_parity(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A formal power series in `q` over `Z`, known modulo `q^order`.
///
/// Invariants: `coeffs.len() == order >= 1`, coefficients exact integers.
/// Values are immutable after construction; all operations return new series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Build a series from explicit coefficients; the order is the length.
    ///
    /// Panics if `coeffs` is empty (an order-0 series carries no information).
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be at least 1");
        TruncatedSeries { coeffs }
    }

    /// Convenience constructor from machine integers (mostly for tests).
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order],
        }
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        Self::constant(BigInt::one(), order)
    }

    /// A constant series at the given order.
    pub fn constant(c: impl Into<BigInt>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c.into();
        s
    }

    /// The monomial `c * q^power`; zero if `power >= order` (truncated away).
    pub fn monomial(c: impl Into<BigInt>, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power < order {
            s.coeffs[power] = c.into();
        }
        s
    }

    /// Truncation order `N`: coefficients `0..N-1` are meaningful.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^i`, or an error if `i` is at or beyond the order.
    pub fn coeff(&self, i: usize) -> Result<&BigInt, FpsError> {
        self.coeffs.get(i).ok_or(FpsError::CoefficientBeyondOrder {
            index: i,
            order: self.order(),
        })
    }

    /// All known coefficients, index `i` holding the coefficient of `q^i`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Copy of this series truncated to a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            (1..=self.order()).contains(&order),
            "cannot extend a series past its known order"
        );
        TruncatedSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Pure copy with one coefficient replaced. Test hook for fault injection.
    pub fn with_coeff(&self, i: usize, c: impl Into<BigInt>) -> Self {
        assert!(i < self.order());
        let mut s = self.clone();
        s.coeffs[i] = c.into();
        s
    }

    /// Coefficientwise sum at the minimum order of the operands.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    /// Coefficientwise difference at the minimum order of the operands.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Integer scalar multiple.
    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * &c).collect(),
        }
    }

    /// Cauchy product truncated to the minimum order of the operands.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiply by the monomial `q^power` (shifting coefficients up).
    pub fn shift_up(&self, power: usize) -> Self {
        let n = self.order();
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n.saturating_sub(power) {
            out[i + power] = self.coeffs[i].clone();
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse: `self * result = 1 mod q^order`.
    ///
    /// The constant term must be `+1` or `-1` so the recurrence stays in `Z`.
    pub fn invert(&self) -> Result<Self, FpsError> {
        let a0 = &self.coeffs[0];
        if !(a0.is_one() || (-a0).is_one()) {
            return Err(FpsError::NonUnitConstant(a0.clone()));
        }
        let n = self.order();
        let mut out = vec![BigInt::zero(); n];
        out[0] = a0.clone(); // 1/(+1) = +1, 1/(-1) = -1
        for m in 1..n {
            let mut acc = BigInt::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[m - i];
                }
            }
            out[m] = -a0 * acc;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Integer power by repeated squaring; `pow(s, 0) = 1`.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = TruncatedSeries::one(self.order());
        let mut power = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&power);
            }
            e >>= 1;
            if e > 0 {
                power = power.mul(&power);
            }
        }
        result
    }

    /// The substitution `q -> -q`: negates the coefficient of every odd power.
    /// An involution and a ring homomorphism.
    pub fn substitute_neg_q(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// First power (below the common order) where the two series differ,
    /// with `self` as the "got" side and `other` as the "expected" side.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, BigInt, BigInt)> {
        let n = self.order().min(other.order());
        (0..n)
            .find(|&i| self.coeffs[i] != other.coeffs[i])
            .map(|i| (i, other.coeffs[i].clone(), self.coeffs[i].clone()))
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                1 if mag.is_one() => write!(f, "q")?,
                1 => write!(f, "{}*q", mag)?,
                _ if mag.is_one() => write!(f, "q^{}", i)?,
                _ => write!(f, "{}*q^{}", mag, i)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

/// Exact expansion of `(1 + sign*q^m)^e` for any integer exponent `e`.
///
/// Uses the generalized binomial series `sum_j C(e,j) (sign*q^m)^j`; the
/// binomial coefficients are integers for every integer `e`, so the result is
/// exact over `Z` (for negative `e` this agrees with `invert` of the positive
/// power).
pub fn expand_unit_factor(sign: Sign, m: usize, e: i64, order: usize) -> TruncatedSeries {
    assert!(m >= 1, "exponent of the inner monomial must be positive");
    let mut out = TruncatedSeries::zero(order);
    let mut binom = BigInt::one();
    let mut j: i64 = 0;
    while (j as usize) * m < order {
        let signed = if sign == Sign::Minus && j % 2 == 1 {
            -&binom
        } else {
            binom.clone()
        };
        out.coeffs[(j as usize) * m] = signed;
        // C(e, j+1) = C(e, j) * (e - j) / (j + 1), exact at every step
        binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
        if binom.is_zero() && e >= 0 {
            break;
        }
        j += 1;
    }
    out
}

/// `H_n = prod_{j=1}^{n} (1+q^j)/(1-q^j)`, truncated at `order`.
///
/// `H_0` is the empty product 1; for `n < 0` the result is the zero series,
/// which makes every summand that mentions an `H` of negative index vanish
/// outside its natural summation range.
pub fn h_series(n: i64, order: usize) -> TruncatedSeries {
    if n < 0 {
        return TruncatedSeries::zero(order);
    }
    let mut out = TruncatedSeries::one(order);
    for j in 1..=(n as usize) {
        out = h_step(&out, j, order);
    }
    out
}

/// One multiplicative step `H_{j-1} -> H_j`: multiply by `(1+q^j)/(1-q^j)`.
pub(crate) fn h_step(prev: &TruncatedSeries, j: usize, order: usize) -> TruncatedSeries {
    prev.mul(&expand_unit_factor(Sign::Plus, j, 1, order))
        .mul(&expand_unit_factor(Sign::Minus, j, -1, order))
}

/// Partial theta sum `sum_{k=-n}^{n} (-q)^{k^2} = 1 + 2 sum_{k=1}^{n} (-1)^k q^{k^2}`.
pub fn theta_partial(n: u32, order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(order);
    for k in 1..=(n as usize) {
        let e = k * k;
        if e >= order {
            break;
        }
        out.coeffs[e] += if k % 2 == 1 { -2 } else { 2 };
    }
    out
}

/// Full theta series `sum_{k in Z} q^{k^2}`; only `|k| <= sqrt(order)` contribute.
pub fn theta_full(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(order);
    let mut k = 1usize;
    while k * k < order {
        out.coeffs[k * k] += 2;
        k += 1;
    }
    out
}

/// Lambert-type right side `1 + 8 sum_{k>=1} q^k / (1 + (-q)^k)^2`.
pub fn lambert_rhs(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(order);
    for k in 1..order {
        let term = expand_unit_factor(Sign::from_parity(k as i64), k, -2, order).shift_up(k);
        out = out.add(&term.scale(8));
    }
    out
}

/// Left side of the first limit identity: `1 + 8 sum_{k>=1} (-q)^k / (1+q^k)^2`.
pub fn a_prime_lhs(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(order);
    for k in 1..order {
        let sign = if k % 2 == 1 { -8 } else { 8 };
        let term = expand_unit_factor(Sign::Plus, k, -2, order).shift_up(k);
        out = out.add(&term.scale(sign));
    }
    out
}

/// Expansion of `z/(1+z)^2 = sum_{r>=1} (-1)^{r+1} r z^r` for the signed
/// monomial `z = sign * q^m`, truncated at `order`.
///
/// This is the term-by-term route; it must agree with the closed-form route
/// `z * (1+z)^{-2}` computed by [`expand_unit_factor`].
pub fn expand_z_over_1pz2(sign: Sign, m: usize, order: usize) -> TruncatedSeries {
    assert!(m >= 1, "exponent of z must be positive");
    let mut out = TruncatedSeries::zero(order);
    let mut r = 1usize;
    while r * m < order {
        // (-1)^{r+1} * r * sign^r
        let mut c = BigInt::from(r as i64);
        if r % 2 == 0 {
            c = -c;
        }
        if sign == Sign::Minus && r % 2 == 1 {
            c = -c;
        }
        out.coeffs[r * m] = c;
        r += 1;
    }
    out
}

/// The double sum `sum_{k>=1} sum_{r>=1} (-1)^{(k+1)(r+1)} r q^{kr}`.
///
/// Its coefficient of `q^n` is the signed divisor sum
/// `sum_{r|n} (-1)^{(r+1)(n/r+1)} r`, and `1 + 8 * double_sum` equals
/// [`lambert_rhs`].
pub fn double_sum(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for k in 1..order {
        for r in 1..=((order - 1) / k) {
            let neg = (k + 1) % 2 == 1 && (r + 1) % 2 == 1;
            let c = BigInt::from(r as i64);
            out.coeffs[k * r] += if neg { -c } else { c };
        }
    }
    out
}
