//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `T` stores the coefficients of
//! `q^0 .. q^T`; everything is computed modulo `q^(T+1)`. Binary operations
//! work at the smaller of the two truncation orders, so a result never
//! claims more precision than its inputs carry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type BigRat = BigRational;

/// Default truncation order used when no order is configured.
pub const DEFAULT_TRUNC: usize = 60;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Serialises a rational as `"num/den"` (denominator always present).
pub fn rat_to_string(r: &BigRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A parameter `coeff · q^exp`.
///
/// The exponent is signed so that quotients such as `q/b` can be formed
/// during parameter arithmetic; only nonnegative exponents can be turned into
/// a series directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialParam {
    pub coeff: BigRat,
    pub exp: i64,
}

impl MonomialParam {
    pub fn new(coeff: BigRat, exp: i64) -> Self {
        MonomialParam { coeff, exp }
    }

    /// `q^exp` with unit coefficient.
    pub fn q_pow(exp: i64) -> Self {
        MonomialParam {
            coeff: BigRat::one(),
            exp,
        }
    }

    pub fn constant(coeff: BigRat) -> Self {
        MonomialParam { coeff, exp: 0 }
    }

    /// Parameters without a positive power of `q` do not make infinite
    /// products converge formally; callers are expected to surface this.
    pub fn is_flagged(&self) -> bool {
        self.exp <= 0
    }

    pub fn is_q_power(&self) -> bool {
        self.coeff.is_one()
    }

    pub fn mul(&self, other: &MonomialParam) -> MonomialParam {
        MonomialParam::new(&self.coeff * &other.coeff, self.exp + other.exp)
    }

    pub fn div(&self, other: &MonomialParam) -> MonomialParam {
        MonomialParam::new(&self.coeff / &other.coeff, self.exp - other.exp)
    }

    pub fn shift(&self, by: i64) -> MonomialParam {
        MonomialParam::new(self.coeff.clone(), self.exp + by)
    }
}

impl fmt::Display for MonomialParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_one() {
            write!(f, "q^{}", self.exp)
        } else {
            write!(f, "({})*q^{}", self.coeff, self.exp)
        }
    }
}

/// Dense coefficient vector for a power series modulo `q^(T+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRat>,
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRat::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(BigRat::one(), trunc)
    }

    pub fn constant(c: BigRat, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from explicit coefficients, padding with zeros or
    /// dropping the tail so that the result has order `trunc`.
    pub fn from_coeffs(mut coeffs: Vec<BigRat>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, BigRat::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(values: &[i64], trunc: usize) -> Self {
        Self::from_coeffs(values.iter().map(|&v| rat(v)).collect(), trunc)
    }

    /// Single term `p.coeff · q^p.exp`.
    pub fn monomial(p: &MonomialParam, trunc: usize) -> Result<Self> {
        if p.exp < 0 {
            return Err(Error::NegativeExponent(p.exp));
        }
        if p.exp as u64 > trunc as u64 {
            return Err(Error::ExponentExceedsTruncation { exp: p.exp, trunc });
        }
        let mut s = Self::zero(trunc);
        s.coeffs[p.exp as usize] = p.coeff.clone();
        Ok(s)
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRat> {
        self.coeffs
    }

    /// Coefficient of `q^i`; zero beyond the truncation order.
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn set_coeff(&mut self, i: usize, c: BigRat) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let n = trunc.min(self.trunc_order());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `q^e`, discarding what falls past the truncation order.
    pub fn shift_up(&self, e: usize) -> Self {
        let t = self.trunc_order();
        let mut out = Self::zero(t);
        for i in e..=t {
            out.coeffs[i] = self.coeffs[i - e].clone();
        }
        out
    }

    /// In-place multiplication by `(1 - c q^e)`, `e >= 1`.
    pub fn mul_one_minus(&mut self, c: &BigRat, e: usize) {
        assert!(e >= 1, "factor exponent must be positive");
        let len = self.coeffs.len();
        for i in (e..len).rev() {
            let d = &self.coeffs[i - e] * c;
            self.coeffs[i] -= d;
        }
    }

    /// In-place division by `(1 - c q^e)`, `e >= 1`.
    pub fn div_one_minus(&mut self, c: &BigRat, e: usize) {
        assert!(e >= 1, "factor exponent must be positive");
        let len = self.coeffs.len();
        for i in e..len {
            let d = &self.coeffs[i - e] * c;
            self.coeffs[i] += d;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        series_add(self, other)
    }

    pub fn mul(&self, other: &Self) -> Self {
        series_mul(self, other)
    }

    pub fn invert(&self) -> Result<Self> {
        series_invert(self)
    }
}

/// Coefficient-wise sum at the smaller truncation order.
pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let t = a.trunc_order().min(b.trunc_order());
    TruncatedSeries {
        coeffs: (0..=t).map(|i| &a.coeffs[i] + &b.coeffs[i]).collect(),
    }
}

pub fn series_sub(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let t = a.trunc_order().min(b.trunc_order());
    TruncatedSeries {
        coeffs: (0..=t).map(|i| &a.coeffs[i] - &b.coeffs[i]).collect(),
    }
}

/// Schoolbook Cauchy product truncated at the smaller order.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let t = a.trunc_order().min(b.trunc_order());
    let mut out = vec![BigRat::zero(); t + 1];
    for (i, ai) in a.coeffs[..=t].iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs[..=t - i].iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    TruncatedSeries { coeffs: out }
}

/// Multiplicative inverse via the usual coefficient recurrence
/// `b_0 = 1/a_0`, `b_k = -(1/a_0) Σ_{j=1..k} a_j b_{k-j}`.
pub fn series_invert(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    let a0 = &a.coeffs[0];
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let t = a.trunc_order();
    let inv0 = a0.recip();
    let mut b: Vec<BigRat> = Vec::with_capacity(t + 1);
    b.push(inv0.clone());
    for k in 1..=t {
        let mut acc = BigRat::zero();
        for j in 1..=k {
            let aj = &a.coeffs[j];
            if !aj.is_zero() {
                acc += aj * &b[k - j];
            }
        }
        b.push(-(acc * &inv0));
    }
    Ok(TruncatedSeries { coeffs: b })
}

/// Outcome of comparing two series coefficient by coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal {
        trunc: usize,
    },
    Mismatch {
        index: usize,
        left: BigRat,
        right: BigRat,
    },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }
}

/// Compares up to the smaller truncation order and reports the first index
/// where the coefficients differ.
pub fn series_compare(a: &TruncatedSeries, b: &TruncatedSeries) -> Comparison {
    let t = a.trunc_order().min(b.trunc_order());
    for i in 0..=t {
        if a.coeffs[i] != b.coeffs[i] {
            return Comparison::Mismatch {
                index: i,
                left: a.coeffs[i].clone(),
                right: b.coeffs[i].clone(),
            };
        }
    }
    Comparison::Equal { trunc: t }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        series_add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        series_sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        series_mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "q")?,
                (_, true) => write!(f, "q^{}", k)?,
                (1, false) => write!(f, "{}*q", abs)?,
                (_, false) => write!(f, "{}*q^{}", abs, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc_order() + 1)
    }
}
