//! q-shifted factorials `(a; q)_n` for every integer `n`, infinite products,
//! and the Rogers-Ramanujan product sides.
//!
//! The functions here work on dense [`TruncatedSeries`] directly. Summands of
//! the identity registry use the factored representation in [`product`].

pub mod product;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{series_mul, BigRat, MonomialParam, TruncatedSeries};

pub use product::{Arg, LaurentWindow, QProduct, Side, Status, TermSum};

/// Value of a Pochhammer factor, with the vanishing cases kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PochValue {
    Series(TruncatedSeries),
    /// The factor itself is identically zero.
    Zero,
    /// The factor is a reciprocal that vanishes, e.g. `1/(q)_n` with `n < 0`.
    ReciprocalZero,
}

impl PochValue {
    pub fn is_vanishing(&self) -> bool {
        !matches!(self, PochValue::Series(_))
    }

    /// The value as a series, with both vanishing states mapped to 0.
    pub fn to_series(&self, trunc: usize) -> TruncatedSeries {
        match self {
            PochValue::Series(s) => s.clone(),
            _ => TruncatedSeries::zero(trunc),
        }
    }

    pub fn series(&self) -> Option<&TruncatedSeries> {
        match self {
            PochValue::Series(s) => Some(s),
            _ => None,
        }
    }
}

fn is_q(a: &MonomialParam) -> bool {
    a.coeff.is_one() && a.exp == 1
}

/// `(1 - c q^e)` with the constant case folded in; `None` means the factor
/// is the zero polynomial.
fn one_minus(
    c: &BigRat,
    e: i64,
    trunc: usize,
    label: &MonomialParam,
    n: i64,
) -> Result<Option<TruncatedSeries>> {
    if e < 0 {
        return Err(Error::NeedsLaurent {
            param: label.to_string(),
            n,
        });
    }
    let mut s = TruncatedSeries::one(trunc);
    if e == 0 {
        let v = BigRat::one() - c;
        if v.is_zero() {
            return Ok(None);
        }
        s.set_coeff(0, v);
    } else if (e as u64) <= trunc as u64 {
        s.set_coeff(e as usize, -c.clone());
    }
    Ok(Some(s))
}

/// Product `Π_j (1 - a q^{j})` over the given exponent offsets.
fn factor_product(
    a: &MonomialParam,
    offsets: impl Iterator<Item = i64>,
    trunc: usize,
    n: i64,
) -> Result<Option<TruncatedSeries>> {
    let mut acc = TruncatedSeries::one(trunc);
    for j in offsets {
        let e = a.exp + j;
        if e >= 1 {
            if e as u64 <= trunc as u64 {
                acc.mul_one_minus(&a.coeff, e as usize);
            }
            continue;
        }
        match one_minus(&a.coeff, e, trunc, a, n)? {
            None => return Ok(None),
            Some(f) => acc = series_mul(&acc, &f),
        }
    }
    Ok(Some(acc))
}

/// `(a; q)_n` for any integer `n`.
pub fn qpoch(a: &MonomialParam, n: i64, trunc: usize) -> Result<PochValue> {
    if is_q(a) && n >= 0 {
        return Ok(PochValue::Series((*q_factorial(n as usize, trunc)).clone()));
    }
    if n >= 0 {
        return Ok(match factor_product(a, 0..n, trunc, n)? {
            Some(s) => PochValue::Series(s),
            None => PochValue::Zero,
        });
    }
    // (a)_n = 1 / ((1 - a q^{-1}) ... (1 - a q^{n}))
    match factor_product(a, (n..=-1).rev(), trunc, n)? {
        None => Err(Error::Pole),
        Some(den) => Ok(PochValue::Series(den.invert()?)),
    }
}

/// `1 / (a; q)_n`, with `1/(q)_n = 0` for `n < 0`.
pub fn qpoch_reciprocal(a: &MonomialParam, n: i64, trunc: usize) -> Result<PochValue> {
    if is_q(a) {
        if n < 0 {
            return Ok(PochValue::ReciprocalZero);
        }
        return Ok(PochValue::Series(
            (*q_factorial_reciprocal(n as usize, trunc)).clone(),
        ));
    }
    if n < 0 {
        // reciprocal of the closed form is the finite product itself
        return Ok(match factor_product(a, (n..=-1).rev(), trunc, n)? {
            Some(s) => PochValue::Series(s),
            None => PochValue::ReciprocalZero,
        });
    }
    match qpoch(a, n, trunc)? {
        PochValue::Series(s) => Ok(PochValue::Series(s.invert()?)),
        _ => Err(Error::ZeroConstantTerm),
    }
}

/// `(a_1, ..., a_m)_n`.
pub fn qpoch_multi(params: &[MonomialParam], n: i64, trunc: usize) -> Result<PochValue> {
    let mut acc = TruncatedSeries::one(trunc);
    for a in params {
        match qpoch(a, n, trunc)? {
            PochValue::Series(s) => acc = series_mul(&acc, &s),
            other => return Ok(other),
        }
    }
    Ok(PochValue::Series(acc))
}

/// `(a; q)_∞` modulo `q^(T+1)`; needs `a.exp ≥ 1`.
pub fn qpoch_infinite(a: &MonomialParam, trunc: usize) -> Result<TruncatedSeries> {
    if a.exp < 1 {
        return Err(Error::NonPositiveExponent(a.to_string()));
    }
    let mut acc = TruncatedSeries::one(trunc);
    let mut e = a.exp as usize;
    while e <= trunc {
        acc.mul_one_minus(&a.coeff, e);
        e += 1;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Memo table for (q)_n and 1/(q)_n

type MemoKey = (usize, usize, bool);

fn memo() -> &'static RwLock<HashMap<MemoKey, Arc<TruncatedSeries>>> {
    static CACHE: OnceLock<RwLock<HashMap<MemoKey, Arc<TruncatedSeries>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn memoized(key: MemoKey, build: impl FnOnce() -> TruncatedSeries) -> Arc<TruncatedSeries> {
    if let Some(v) = memo().read().expect("memo lock").get(&key) {
        return v.clone();
    }
    let v = Arc::new(build());
    memo()
        .write()
        .expect("memo lock")
        .entry(key)
        .or_insert(v)
        .clone()
}

/// `(q; q)_n` modulo `q^(T+1)`, cached.
pub fn q_factorial(n: usize, trunc: usize) -> Arc<TruncatedSeries> {
    memoized((n, trunc, false), || {
        let mut s = TruncatedSeries::one(trunc);
        for e in 1..=n.min(trunc) {
            s.mul_one_minus(&BigRat::one(), e);
        }
        s
    })
}

/// `1 / (q; q)_n` modulo `q^(T+1)`, cached.
pub fn q_factorial_reciprocal(n: usize, trunc: usize) -> Arc<TruncatedSeries> {
    memoized((n, trunc, true), || {
        let mut s = TruncatedSeries::one(trunc);
        for e in 1..=n.min(trunc) {
            s.div_one_minus(&BigRat::one(), e);
        }
        s
    })
}

// ---------------------------------------------------------------------------
// Rogers-Ramanujan products

/// Residue classes mod 5 of the parts in the two product sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RrProduct {
    /// Parts congruent to 1 or 4 mod 5.
    Mod5_14,
    /// Parts congruent to 2 or 3 mod 5.
    Mod5_23,
}

impl RrProduct {
    pub fn residues(self) -> [usize; 2] {
        match self {
            RrProduct::Mod5_14 => [1, 4],
            RrProduct::Mod5_23 => [2, 3],
        }
    }
}

/// `Π 1/((1 - q^{5n+r})(1 - q^{5n+5-r}))` modulo `q^(T+1)`.
pub fn rr_product_side(which: RrProduct, trunc: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(trunc);
    let one = BigRat::one();
    let res = which.residues();
    for e in 1..=trunc {
        if res.contains(&(e % 5)) {
            s.div_one_minus(&one, e);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn poly(v: &[i64], t: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(v, t)
    }

    fn qp(e: i64) -> MonomialParam {
        MonomialParam::q_pow(e)
    }

    #[test]
    fn qpoch_q_three() {
        assert_eq!(
            qpoch(&qp(1), 3, 8).unwrap(),
            PochValue::Series(poly(&[1, -1, -1, 0, 1, 1, -1], 8))
        );
    }

    #[test]
    fn qpoch_empty_product() {
        let a = MonomialParam::new(rat(7), 3);
        assert_eq!(
            qpoch(&a, 0, 5).unwrap(),
            PochValue::Series(TruncatedSeries::one(5))
        );
    }

    #[test]
    fn qpoch_negative_index() {
        assert_eq!(
            qpoch(&qp(2), -1, 6).unwrap(),
            PochValue::Series(poly(&[1; 7], 6))
        );
    }

    #[test]
    fn qpoch_needs_laurent() {
        assert!(matches!(
            qpoch(&MonomialParam::new(rat(2), 1), -2, 6),
            Err(Error::NeedsLaurent { .. })
        ));
        assert_eq!(qpoch(&qp(1), -3, 6), Err(Error::Pole));
    }

    #[test]
    fn qpoch_hits_zero_factor() {
        // (q^{-1})_3 contains 1 - q^0
        assert!(matches!(
            qpoch(&qp(-1), 3, 6),
            Err(Error::NeedsLaurent { .. })
        ));
        assert_eq!(
            qpoch(&MonomialParam::constant(rat(1)), 2, 6).unwrap(),
            PochValue::Zero
        );
    }

    #[test]
    fn reciprocal_cases() {
        assert_eq!(
            qpoch_reciprocal(&qp(1), -2, 5).unwrap(),
            PochValue::ReciprocalZero
        );
        assert_eq!(
            qpoch_reciprocal(&qp(1), 0, 5).unwrap(),
            PochValue::Series(TruncatedSeries::one(5))
        );
        let direct = poly(&[1, -1, -1, 1], 10).invert().unwrap();
        assert_eq!(
            qpoch_reciprocal(&qp(1), 2, 10).unwrap(),
            PochValue::Series(direct)
        );
    }

    #[test]
    fn multi_products() {
        assert_eq!(
            qpoch_multi(&[qp(1), qp(1)], 1, 4).unwrap(),
            PochValue::Series(poly(&[1, -2, 1], 4))
        );
        assert_eq!(
            qpoch_multi(&[], 5, 4).unwrap(),
            PochValue::Series(TruncatedSeries::one(4))
        );
        // (q;q)_2 (q^2;q)_2 (q^3;q)_2 = (1-q)(1-q^2)^2(1-q^3)^2(1-q^4)
        let mut expect = TruncatedSeries::one(14);
        for e in [1, 2, 2, 3, 3, 4] {
            expect.mul_one_minus(&rat(1), e);
        }
        assert_eq!(
            qpoch_multi(&[qp(1), qp(2), qp(3)], 2, 14).unwrap(),
            PochValue::Series(expect)
        );
    }

    #[test]
    fn infinite_products() {
        assert_eq!(
            qpoch_infinite(&qp(1), 5).unwrap(),
            poly(&[1, -1, -1, 0, 0, 1], 5)
        );
        assert_eq!(qpoch_infinite(&qp(6), 5).unwrap(), TruncatedSeries::one(5));
        let mut expect = TruncatedSeries::one(4);
        for e in [2, 3, 4] {
            expect.mul_one_minus(&rat(1), e);
        }
        assert_eq!(qpoch_infinite(&qp(2), 4).unwrap(), expect);
        assert!(matches!(
            qpoch_infinite(&qp(0), 4),
            Err(Error::NonPositiveExponent(_))
        ));
    }

    #[test]
    fn rr_products_small() {
        assert_eq!(
            rr_product_side(RrProduct::Mod5_14, 6),
            poly(&[1, 1, 1, 1, 2, 2, 3], 6)
        );
        assert_eq!(
            rr_product_side(RrProduct::Mod5_23, 6),
            poly(&[1, 0, 1, 1, 1, 1, 2], 6)
        );
        assert_eq!(
            rr_product_side(RrProduct::Mod5_14, 0),
            TruncatedSeries::one(0)
        );
    }

    #[test]
    fn memo_is_consistent() {
        let a = q_factorial(9, 20);
        let b = q_factorial(9, 20);
        assert!(Arc::ptr_eq(&a, &b) || a == b);
        let one = series_mul(&a, &q_factorial_reciprocal(9, 20));
        assert_eq!(one, TruncatedSeries::one(20));
    }
}
