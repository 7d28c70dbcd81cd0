//! Factored products of q-shifted factorials.
//!
//! A summand such as `(q/a, q/b)_k / (a, b)_k · (ab)^k q^{k²}` is kept as a
//! scalar, a power of `q` and a multiset of binomial factors `(1 - c q^e)`
//! with `e ≥ 1`. Factors whose exponent would be zero or negative are folded
//! into the scalar and the `q`-shift as soon as they appear, so the series
//! kernel never sees a Laurent factor. Cancellation between numerator and
//! denominator happens on the multiset before anything is expanded.
//!
//! Parameters can carry a *drift*: a formal `x^w` with `x → 1`. This is how
//! a specialization that hits `(1 - 1)` in both numerator and denominator is
//! taken as a limit instead of being rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::{BigRat, MonomialParam, TruncatedSeries};

/// A parameter `coeff · q^exp · x^drift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arg {
    pub coeff: BigRat,
    pub exp: i64,
    pub drift: i32,
}

impl Arg {
    pub fn new(coeff: BigRat, exp: i64) -> Self {
        Arg {
            coeff,
            exp,
            drift: 0,
        }
    }

    pub fn q_pow(exp: i64) -> Self {
        Arg::new(BigRat::one(), exp)
    }

    pub fn with_drift(mut self, drift: i32) -> Self {
        self.drift = drift;
        self
    }

    pub fn mul(&self, other: &Arg) -> Arg {
        Arg {
            coeff: &self.coeff * &other.coeff,
            exp: self.exp + other.exp,
            drift: self.drift + other.drift,
        }
    }

    pub fn div(&self, other: &Arg) -> Arg {
        Arg {
            coeff: &self.coeff / &other.coeff,
            exp: self.exp - other.exp,
            drift: self.drift - other.drift,
        }
    }

    /// Multiplies by `q^by`.
    pub fn shift(&self, by: i64) -> Arg {
        Arg {
            coeff: self.coeff.clone(),
            exp: self.exp + by,
            drift: self.drift,
        }
    }

    pub fn recip(&self) -> Arg {
        Arg {
            coeff: self.coeff.recip(),
            exp: -self.exp,
            drift: -self.drift,
        }
    }

    pub fn monomial(&self) -> MonomialParam {
        MonomialParam::new(self.coeff.clone(), self.exp)
    }
}

impl From<MonomialParam> for Arg {
    fn from(p: MonomialParam) -> Self {
        Arg::new(p.coeff, p.exp)
    }
}

impl From<&MonomialParam> for Arg {
    fn from(p: &MonomialParam) -> Self {
        Arg::new(p.coeff.clone(), p.exp)
    }
}

fn rat_pow(base: &BigRat, k: i64) -> BigRat {
    if k == 0 {
        return BigRat::one();
    }
    let e = i32::try_from(k).expect("power fits in i32");
    Pow::pow(base, e)
}

type FactorKey = (i64, BigRat);

/// Exact factored value of a single summand.
///
/// Represents `scalar · q^shift · Π (1 - c q^e)^m · Π (c q^e; q)_∞^m`
/// together with counts of vanishing factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QProduct {
    scalar: BigRat,
    shift: i64,
    factors: BTreeMap<FactorKey, i64>,
    infinite: BTreeMap<FactorKey, i64>,
    hard_num: u32,
    hard_den: u32,
    drift_order: i64,
    drift_weight: BigRat,
}

/// How a product behaves once zero factors are accounted for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Identically zero summand.
    Zero,
    /// Nonzero, with the effective scalar after resolving drift limits.
    Value(BigRat),
}

impl Default for QProduct {
    fn default() -> Self {
        Self::one()
    }
}

impl QProduct {
    pub fn one() -> Self {
        QProduct {
            scalar: BigRat::one(),
            shift: 0,
            factors: BTreeMap::new(),
            infinite: BTreeMap::new(),
            hard_num: 0,
            hard_den: 0,
            drift_order: 0,
            drift_weight: BigRat::one(),
        }
    }

    pub fn zero() -> Self {
        let mut p = Self::one();
        p.scalar = BigRat::zero();
        p
    }

    pub fn scalar(&self) -> &BigRat {
        &self.scalar
    }

    pub fn shift_exp(&self) -> i64 {
        self.shift
    }

    pub fn has_infinite(&self) -> bool {
        !self.infinite.is_empty()
    }

    pub fn mul_scalar(&mut self, c: &BigRat) -> &mut Self {
        self.scalar *= c;
        self
    }

    pub fn mul_int(&mut self, c: i64) -> &mut Self {
        self.scalar *= BigRat::from_integer(BigInt::from(c));
        self
    }

    /// Multiplies by `(-1)^k`.
    pub fn mul_sign(&mut self, k: i64) -> &mut Self {
        if k.rem_euclid(2) == 1 {
            self.scalar = -self.scalar.clone();
        }
        self
    }

    pub fn mul_q_pow(&mut self, e: i64) -> &mut Self {
        self.shift += e;
        self
    }

    /// Multiplies by `arg^k`; drift contributes nothing in the limit.
    pub fn mul_arg_pow(&mut self, arg: &Arg, k: i64) -> &mut Self {
        if arg.coeff.is_zero() {
            match k.signum() {
                1 => self.scalar = BigRat::zero(),
                -1 => self.hard_den += 1,
                _ => {}
            }
            return self;
        }
        self.scalar *= rat_pow(&arg.coeff, k);
        self.shift += arg.exp * k;
        self
    }

    /// Multiplies by `(1 - c q^e x^w)^m`, normalizing so that only factors
    /// with a positive power of `q` are stored.
    pub fn mul_factor(&mut self, c: &BigRat, e: i64, w: i32, m: i64) -> &mut Self {
        if m == 0 || c.is_zero() {
            return self;
        }
        match e.signum() {
            1 => self.add_factor((e, c.clone()), m),
            0 if c.is_one() => {
                if w == 0 {
                    if m > 0 {
                        self.hard_num += m as u32;
                    } else {
                        self.hard_den += (-m) as u32;
                    }
                } else {
                    // 1 - x^w ~ -w(x - 1); only the ratio of weights survives
                    self.drift_order += m;
                    self.drift_weight *= rat_pow(&BigRat::from_integer(w.into()), m);
                }
            }
            0 => self.scalar *= rat_pow(&(BigRat::one() - c), m),
            _ => {
                // 1 - c q^e = -c q^e (1 - c^{-1} q^{-e})
                self.scalar *= rat_pow(&-c.clone(), m);
                self.shift += e * m;
                self.add_factor((-e, c.recip()), m);
            }
        }
        self
    }

    fn add_factor(&mut self, key: FactorKey, m: i64) {
        let slot = self.factors.entry(key).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.factors.retain(|_, v| *v != 0);
        }
    }

    /// Multiplies by `(arg; q)_n^m` for any integer `n`, using
    /// `(a)_n = 1 / Π_{j=1}^{-n} (1 - a q^{-j})` when `n < 0`.
    pub fn mul_poch(&mut self, arg: &Arg, n: i64, m: i64) -> &mut Self {
        if n >= 0 {
            for j in 0..n {
                self.mul_factor(&arg.coeff, arg.exp + j, arg.drift, m);
            }
        } else {
            for j in 1..=-n {
                self.mul_factor(&arg.coeff, arg.exp - j, arg.drift, -m);
            }
        }
        self
    }

    /// Multiplies by `(arg; q)_∞^m`. Leading factors without a positive
    /// power of `q` are peeled off into the finite part.
    pub fn mul_infinite(&mut self, arg: &Arg, m: i64) -> &mut Self {
        if m == 0 || arg.coeff.is_zero() {
            return self;
        }
        let mut e = arg.exp;
        while e <= 0 {
            self.mul_factor(&arg.coeff, e, arg.drift, m);
            e += 1;
        }
        let key = (e, arg.coeff.clone());
        let slot = self.infinite.entry(key).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.infinite.retain(|_, v| *v != 0);
        }
        self
    }

    pub fn mul(&self, other: &QProduct) -> QProduct {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn mul_assign(&mut self, other: &QProduct) {
        self.scalar *= &other.scalar;
        self.shift += other.shift;
        for (k, m) in &other.factors {
            self.add_factor(k.clone(), *m);
        }
        for (k, m) in &other.infinite {
            let slot = self.infinite.entry(k.clone()).or_insert(0);
            *slot += m;
        }
        self.infinite.retain(|_, v| *v != 0);
        self.hard_num += other.hard_num;
        self.hard_den += other.hard_den;
        self.drift_order += other.drift_order;
        self.drift_weight *= &other.drift_weight;
    }

    /// Multiplicative inverse. A zero scalar becomes a pole.
    pub fn inverse(&self) -> QProduct {
        let mut out = QProduct::one();
        if self.scalar.is_zero() {
            out.hard_den += 1;
        } else {
            out.scalar = self.scalar.recip();
        }
        out.shift = -self.shift;
        out.factors = self.factors.iter().map(|(k, m)| (k.clone(), -m)).collect();
        out.infinite = self.infinite.iter().map(|(k, m)| (k.clone(), -m)).collect();
        out.hard_num = self.hard_den;
        out.hard_den = self.hard_num;
        out.drift_order = -self.drift_order;
        out.drift_weight = self.drift_weight.recip();
        out
    }

    /// Image under `q → 1/q`. Only finite products can be inverted.
    pub fn invert_q(&self) -> Result<QProduct> {
        if self.has_infinite() {
            return Err(Error::Inadmissible(
                "q -> 1/q is undefined for infinite products".into(),
            ));
        }
        let mut out = self.clone();
        out.factors.clear();
        out.shift = -self.shift;
        for ((e, c), m) in &self.factors {
            // (1 - c q^{-e})^m = (-c)^m q^{-em} (1 - c^{-1} q^e)^m
            out.scalar *= rat_pow(&-c.clone(), *m);
            out.shift -= e * m;
            out.add_factor((*e, c.recip()), *m);
        }
        Ok(out)
    }

    pub fn status(&self) -> Result<Status> {
        if self.hard_den > 0 {
            return Err(Error::Pole);
        }
        if self.hard_num > 0 || self.scalar.is_zero() {
            return Ok(Status::Zero);
        }
        match self.drift_order.signum() {
            1 => Ok(Status::Zero),
            -1 => Err(Error::Pole),
            _ => Ok(Status::Value(&self.scalar * &self.drift_weight)),
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.status()? == Status::Zero)
    }

    /// Multiset of positive-exponent factors needed to expand up to `q^r`.
    fn expansion_factors(&self, r: i64) -> Vec<(usize, BigRat, i64)> {
        let mut merged: BTreeMap<FactorKey, i64> = BTreeMap::new();
        for ((e, c), m) in &self.factors {
            if *e <= r {
                *merged.entry((*e, c.clone())).or_insert(0) += m;
            }
        }
        for ((e, c), m) in &self.infinite {
            for j in *e..=r {
                *merged.entry((j, c.clone())).or_insert(0) += m;
            }
        }
        // multiplications first keeps intermediate values polynomial-sized
        let mut out: Vec<(usize, BigRat, i64)> = merged
            .into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|((e, c), m)| (e as usize, c, m))
            .collect();
        out.sort_by_key(|(_, _, m)| *m < 0);
        out
    }

    /// Coefficients of `q^shift .. q^order` of this product, or `None` when
    /// the product is zero or starts above `order`.
    pub fn expand(&self, order: i64) -> Result<Option<Vec<BigRat>>> {
        let scalar = match self.status()? {
            Status::Zero => return Ok(None),
            Status::Value(s) => s,
        };
        let r = order - self.shift;
        if r < 0 {
            return Ok(None);
        }
        let factors = self.expansion_factors(r);
        let len = r as usize + 1;
        let raw: Vec<BigRat> = if let Some(v) = expand_i128(&factors, len) {
            v.into_iter()
                .map(|x| BigRat::from_integer(BigInt::from(x)))
                .collect()
        } else if factors.iter().all(|(_, c, _)| c.is_integer()) {
            let ints: Vec<(usize, BigInt, i64)> = factors
                .iter()
                .map(|(e, c, m)| (*e, c.to_integer(), *m))
                .collect();
            expand_generic(&ints, len)
                .into_iter()
                .map(BigRat::from_integer)
                .collect()
        } else {
            expand_generic(&factors, len)
        };
        Ok(Some(
            raw.into_iter()
                .map(|x| if x.is_zero() { x } else { x * &scalar })
                .collect(),
        ))
    }

    /// Expands into a power series; fails if a negative power survives.
    pub fn to_series(&self, trunc: usize) -> Result<TruncatedSeries> {
        let mut w = LaurentWindow::zero(self.shift.min(0), trunc as i64);
        w.add_product(self)?;
        w.to_series()
    }
}

fn expand_i128(factors: &[(usize, BigRat, i64)], len: usize) -> Option<Vec<i128>> {
    let mut v = vec![0i128; len];
    v[0] = 1;
    for (e, c, m) in factors {
        if !c.is_integer() {
            return None;
        }
        let c = c.to_integer().to_i128()?;
        let e = *e;
        for _ in 0..m.unsigned_abs() {
            if *m > 0 {
                for i in (e..len).rev() {
                    v[i] = v[i].checked_sub(c.checked_mul(v[i - e])?)?;
                }
            } else {
                for i in e..len {
                    v[i] = v[i].checked_add(c.checked_mul(v[i - e])?)?;
                }
            }
        }
    }
    Some(v)
}

fn expand_generic<T>(factors: &[(usize, T, i64)], len: usize) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    T: std::ops::SubAssign + std::ops::AddAssign,
{
    let mut v = vec![T::zero(); len];
    v[0] = T::one();
    for (e, c, m) in factors {
        let e = *e;
        for _ in 0..m.unsigned_abs() {
            if *m > 0 {
                for i in (e..len).rev() {
                    let d = c * &v[i - e];
                    v[i] -= d;
                }
            } else {
                for i in e..len {
                    let d = c * &v[i - e];
                    v[i] += d;
                }
            }
        }
    }
    v
}

/// Coefficients of a Laurent polynomial truncated above: the powers
/// `q^low ..= q^high`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentWindow {
    pub low: i64,
    pub high: i64,
    pub coeffs: Vec<BigRat>,
}

impl LaurentWindow {
    pub fn zero(low: i64, high: i64) -> Self {
        let len = (high - low + 1).max(0) as usize;
        LaurentWindow {
            low,
            high,
            coeffs: vec![BigRat::zero(); len],
        }
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        LaurentWindow {
            low: 0,
            high: s.trunc_order() as i64,
            coeffs: s.coeffs().to_vec(),
        }
    }

    pub fn coeff(&self, p: i64) -> BigRat {
        if p < self.low || p > self.high {
            return BigRat::zero();
        }
        self.coeffs[(p - self.low) as usize].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.low + i as i64)
    }

    pub fn add_product(&mut self, p: &QProduct) -> Result<()> {
        let Some(vals) = p.expand(self.high)? else {
            return Ok(());
        };
        let start = p.shift_exp();
        for (i, v) in vals.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let pow = start + i as i64;
            if pow < self.low {
                return Err(Error::Inadmissible(format!(
                    "term power q^{pow} lies below the evaluation window"
                )));
            }
            self.coeffs[(pow - self.low) as usize] += v;
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &LaurentWindow) {
        for p in other.low.max(self.low)..=other.high.min(self.high) {
            let v = other.coeff(p);
            if !v.is_zero() {
                self.coeffs[(p - self.low) as usize] += v;
            }
        }
    }

    pub fn scale(&mut self, c: &BigRat) {
        for x in self.coeffs.iter_mut() {
            *x *= c;
        }
    }

    /// Product truncated at `high`.
    pub fn mul(&self, other: &LaurentWindow, high: i64) -> LaurentWindow {
        let mut out = LaurentWindow::zero(self.low + other.low, high);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let pa = self.low + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = pa + other.low + j as i64;
                if p > high {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[(p - out.low) as usize] += a * b;
                }
            }
        }
        out
    }

    /// Restricts to `q^0 ..= q^high`, failing on a nonzero negative power.
    pub fn to_series(&self) -> Result<TruncatedSeries> {
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(Error::NegativeValuation(v));
            }
        }
        let t = self.high.max(0) as usize;
        let coeffs = (0..=t as i64).map(|p| self.coeff(p)).collect();
        Ok(TruncatedSeries::from_coeffs(coeffs, t))
    }

    /// Coefficients at powers `from ..= to`.
    pub fn slice(&self, from: i64, to: i64) -> Vec<BigRat> {
        (from..=to).map(|p| self.coeff(p)).collect()
    }

    /// First power in `min(lows) ..= min(highs)` where the two disagree.
    pub fn first_difference(&self, other: &LaurentWindow) -> Option<i64> {
        let lo = self.low.min(other.low);
        let hi = self.high.min(other.high);
        (lo..=hi).find(|&p| self.coeff(p) != other.coeff(p))
    }
}

/// A finite sum of factored summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermSum {
    pub terms: Vec<QProduct>,
}

impl TermSum {
    pub fn new() -> Self {
        TermSum { terms: Vec::new() }
    }

    pub fn single(p: QProduct) -> Self {
        TermSum { terms: vec![p] }
    }

    pub fn push(&mut self, p: QProduct) {
        self.terms.push(p);
    }

    pub fn extend(&mut self, other: TermSum) {
        self.terms.extend(other.terms);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, p: &QProduct) -> TermSum {
        TermSum {
            terms: self.terms.iter().map(|t| t.mul(p)).collect(),
        }
    }

    pub fn negated(&self) -> TermSum {
        let mut m = QProduct::one();
        m.mul_int(-1);
        self.scaled(&m)
    }

    pub fn mul(&self, other: &TermSum) -> TermSum {
        let mut out = TermSum::new();
        for a in &self.terms {
            for b in &other.terms {
                out.push(a.mul(b));
            }
        }
        out
    }

    pub fn invert_q(&self) -> Result<TermSum> {
        Ok(TermSum {
            terms: self
                .terms
                .iter()
                .map(QProduct::invert_q)
                .collect::<Result<_>>()?,
        })
    }

    /// Lowest `q`-shift among nonzero summands, capped at 0.
    pub fn low(&self) -> Result<i64> {
        let mut low = 0;
        for t in &self.terms {
            if !t.is_zero()? {
                low = low.min(t.shift_exp());
            }
        }
        Ok(low)
    }

    /// Evaluates every coefficient up to `q^high`.
    pub fn eval(&self, high: i64) -> Result<LaurentWindow> {
        let mut w = LaurentWindow::zero(self.low()?, high);
        for t in &self.terms {
            w.add_product(t)?;
        }
        Ok(w)
    }

    pub fn to_series(&self, trunc: usize) -> Result<TruncatedSeries> {
        self.eval(trunc as i64)?.to_series()
    }
}

impl From<QProduct> for TermSum {
    fn from(p: QProduct) -> Self {
        TermSum::single(p)
    }
}

/// `prefactor · Σ terms`, evaluated so that an infinite-product prefactor is
/// expanded once rather than once per summand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Side {
    pub prefactor: QProduct,
    pub sum: TermSum,
}

impl Side {
    pub fn new(prefactor: QProduct, sum: TermSum) -> Self {
        Side { prefactor, sum }
    }

    pub fn from_sum(sum: TermSum) -> Self {
        Side {
            prefactor: QProduct::one(),
            sum,
        }
    }

    pub fn eval(&self, high: i64) -> Result<LaurentWindow> {
        if self.prefactor.is_zero()? {
            return Ok(LaurentWindow::zero(0, high));
        }
        let low_sum = self.sum.low()?;
        let low_pre = self.prefactor.shift_exp().min(0);
        let sum = self.sum.eval(high - low_pre)?;
        let mut pre = LaurentWindow::zero(low_pre, high - low_sum);
        pre.add_product(&self.prefactor)?;
        Ok(pre.mul(&sum, high))
    }

    /// Flattens into a single sum with the prefactor distributed.
    pub fn flatten(&self) -> TermSum {
        self.sum.scaled(&self.prefactor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    fn poly(v: &[i64], t: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(v, t)
    }

    #[test]
    fn finite_poch_expands() {
        let mut p = QProduct::one();
        p.mul_poch(&Arg::q_pow(1), 3, 1);
        assert_eq!(p.to_series(8).unwrap(), poly(&[1, -1, -1, 0, 1, 1, -1], 8));
    }

    #[test]
    fn negative_index_matches_definition() {
        // (q^2)_{-1} = 1/(1 - q)
        let mut p = QProduct::one();
        p.mul_poch(&Arg::q_pow(2), -1, 1);
        assert_eq!(p.to_series(6).unwrap(), poly(&[1; 7], 6));
    }

    #[test]
    fn reciprocal_of_negative_index_vanishes() {
        let mut p = QProduct::one();
        p.mul_poch(&Arg::q_pow(1), -2, -1);
        assert_eq!(p.status().unwrap(), Status::Zero);
    }

    #[test]
    fn negative_exponent_factor_is_folded() {
        // 1 - q^{-2} = -q^{-2}(1 - q^2)
        let mut p = QProduct::one();
        p.mul_factor(&rat(1), -2, 0, 1);
        assert_eq!(p.shift_exp(), -2);
        let w = TermSum::single(p).eval(3).unwrap();
        assert_eq!(w.coeff(-2), rat(-1));
        assert_eq!(w.coeff(0), rat(1));
    }

    #[test]
    fn cancellation_is_exact() {
        let mut p = QProduct::one();
        p.mul_poch(&Arg::q_pow(1), 7, 1)
            .mul_poch(&Arg::q_pow(1), 7, -1);
        assert_eq!(p, QProduct::one());
    }

    #[test]
    fn drift_limit_takes_weight_ratio() {
        // (1 - x^2)/(1 - x) -> 2
        let mut p = QProduct::one();
        p.mul_factor(&rat(1), 0, 2, 1).mul_factor(&rat(1), 0, 1, -1);
        assert_eq!(p.status().unwrap(), Status::Value(rat(2)));
        let mut z = QProduct::one();
        z.mul_factor(&rat(1), 0, 1, 1);
        assert_eq!(z.status().unwrap(), Status::Zero);
        let mut pole = QProduct::one();
        pole.mul_factor(&rat(1), 0, 1, -1);
        assert_eq!(pole.status(), Err(Error::Pole));
    }

    #[test]
    fn infinite_product_pentagonal() {
        let mut p = QProduct::one();
        p.mul_infinite(&Arg::q_pow(1), 1);
        assert_eq!(
            p.to_series(12).unwrap(),
            poly(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1], 12)
        );
    }

    #[test]
    fn rational_coefficients_use_exact_path() {
        let mut p = QProduct::one();
        p.mul_factor(&ratio(1, 2), 1, 0, -1);
        let s = p.to_series(4).unwrap();
        assert_eq!(s.coeff(3), ratio(1, 8));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let mut p = QProduct::one();
        p.mul_factor(&rat(1_000_000_007), 1, 0, -8);
        let s = p.to_series(6).unwrap();
        let mut q = TruncatedSeries::one(6);
        for _ in 0..8 {
            q.div_one_minus(&rat(1_000_000_007), 1);
        }
        assert_eq!(s, q);
    }

    #[test]
    fn invert_q_reverses_polynomial() {
        // (q)_2 -> (q^{-1})_2 = q^{-3}(1-q)(1-q^2)
        let mut p = QProduct::one();
        p.mul_poch(&Arg::q_pow(1), 2, 1);
        let inv = p.invert_q().unwrap();
        let w = TermSum::single(inv).eval(3).unwrap();
        assert_eq!(w.slice(-3, 0), vec![rat(1), rat(-1), rat(-1), rat(1)]);
    }

    #[test]
    fn side_matches_flattened_sum() {
        let mut pre = QProduct::one();
        pre.mul_infinite(&Arg::q_pow(1), 1).mul_q_pow(-1);
        let mut sum = TermSum::new();
        for k in 0..4 {
            let mut t = QProduct::one();
            t.mul_q_pow(k * k).mul_poch(&Arg::q_pow(1), k, -1);
            sum.push(t);
        }
        let side = Side::new(pre, sum);
        assert_eq!(side.eval(15).unwrap(), side.flatten().eval(15).unwrap());
    }
}
