//! Checks that sit outside the finite registry: the infinite
//! Rogers-Ramanujan identities and the failure of the non-terminating
//! `d, e → 0` forms.

use std::time::Instant;

use serde::Serialize;

use super::report::{Assignment, MismatchWindow, Verdict, VerificationReport};
use super::Var;
use crate::error::Result;
use crate::pochhammer::{rr_product_side, Arg, QProduct, RrProduct, TermSum};
use crate::series::{series_compare, Comparison, TruncatedSeries};

/// `Σ_{k=0}^{T} q^{k²+sk} (q)_T / ((q)_k (q)_{T-k})`: the finite form at
/// `n = T`, scaled by `(q)_T` so that it agrees with the infinite sum
/// through `q^T`.
fn rr_finite_sum(which: RrProduct, trunc: usize) -> Result<TruncatedSeries> {
    let s = match which {
        RrProduct::Mod5_14 => 0,
        RrProduct::Mod5_23 => 1,
    };
    let n = trunc as i64;
    let q = Arg::q_pow(1);
    let mut sum = TermSum::new();
    for k in 0..=n {
        let mut p = QProduct::one();
        p.mul_q_pow(k * k + s * k)
            .mul_poch(&q, n, 1)
            .mul_poch(&q, k, -1)
            .mul_poch(&q, n - k, -1);
        sum.push(p);
    }
    sum.to_series(trunc)
}

/// Compares the finite form at `n = T` with the modulus-5 product.
pub fn rr_limit_check(which: RrProduct, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    let id = match which {
        RrProduct::Mod5_14 => "RR1",
        RrProduct::Mod5_23 => "RR2",
    };
    let verdict = match rr_finite_sum(which, trunc) {
        Err(e) => Verdict::Error(e.to_string()),
        Ok(lhs) => {
            let rhs = rr_product_side(which, trunc);
            comparison_verdict(&lhs, &rhs, trunc)
        }
    };
    VerificationReport {
        id: id.to_string(),
        params: Assignment(vec![(Var::N, trunc as i64)]),
        trunc,
        verdict,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn comparison_verdict(lhs: &TruncatedSeries, rhs: &TruncatedSeries, trunc: usize) -> Verdict {
    match series_compare(lhs, rhs) {
        Comparison::Equal { .. } => Verdict::Equal,
        Comparison::Mismatch { index, left, right } => {
            let from = index.saturating_sub(2);
            let to = (index + 2).min(trunc);
            Verdict::Mismatch {
                index: index as i64,
                left,
                right,
                window: MismatchWindow {
                    from: from as i64,
                    lhs: (from..=to).map(|i| lhs.coeff(i)).collect(),
                    rhs: (from..=to).map(|i| rhs.coeff(i)).collect(),
                },
            }
        }
    }
}

/// Which non-terminating form to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiuForm {
    Liu1,
    Liu2,
}

impl std::str::FromStr for LiuForm {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "liu1" => Ok(LiuForm::Liu1),
            "liu2" => Ok(LiuForm::Liu2),
            _ => Err(crate::Error::Inadmissible(format!("unknown form `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub which: LiuForm,
    pub a_exp: i64,
    pub trunc: usize,
    /// `(q)_∞/(a)_∞` (resp. `(q)_∞/(aq)_∞`).
    pub lhs: TruncatedSeries,
    /// The bilateral sum after the `b, c` factors cancel.
    pub direct_sum: TruncatedSeries,
    /// Zero, forced by the `(1;q)_∞` factor of the product side.
    pub rhs: TruncatedSeries,
    pub difference: TruncatedSeries,
    pub mismatch_index: Option<usize>,
}

impl CounterexampleReport {
    /// The mismatch is reproduced and the direct summation agrees with the
    /// closed form.
    pub fn reproduced(&self) -> bool {
        self.mismatch_index.is_some() && self.direct_sum == self.lhs
    }
}

/// Evaluates both sides of a non-terminating form at `bc = q`
/// (resp. `bc = 1`) where the sum side collapses and the product side
/// vanishes.
pub fn liu_counterexample(
    which: LiuForm,
    a_exp: i64,
    trunc: usize,
) -> Result<CounterexampleReport> {
    if a_exp < 1 {
        return Err(crate::Error::Inadmissible(format!(
            "a = q^{a_exp} needs exponent >= 1"
        )));
    }
    let q = Arg::q_pow(1);
    let a = Arg::q_pow(a_exp);
    let lower = match which {
        LiuForm::Liu1 => a.clone(),
        LiuForm::Liu2 => a.shift(1),
    };

    let mut closed = QProduct::one();
    closed.mul_infinite(&q, 1).mul_infinite(&lower, -1);
    let lhs = closed.to_series(trunc)?;

    // (q/b, q/c)_k cancel against (c, b)_k (resp. (cq, bq)_k)
    let (lo, extra) = match which {
        LiuForm::Liu1 => (-(a_exp - 1), -1),
        LiuForm::Liu2 => (-a_exp, 0),
    };
    let mut sum = TermSum::new();
    for k in lo..=a_exp - 1 {
        let mut p = QProduct::one();
        p.mul_poch(&q.div(&a), k, 1)
            .mul_poch(&lower, k, -1)
            .mul_arg_pow(&a, k)
            .mul_q_pow(k * k + extra * k);
        sum.push(p);
    }
    let direct_sum = sum.to_series(trunc)?;

    // (q)_∞ (bc/q)_∞ / (a)_∞ with bc = q, resp. (q)_∞ (bc)_∞ / (aq)_∞ with bc = 1
    let mut pre = QProduct::one();
    pre.mul_infinite(&q, 1)
        .mul_infinite(&Arg::q_pow(0), 1)
        .mul_infinite(&lower, -1);
    let rhs = pre.to_series(trunc)?;

    let difference = &lhs - &rhs;
    let mismatch_index = match series_compare(&lhs, &rhs) {
        Comparison::Equal { .. } => None,
        Comparison::Mismatch { index, .. } => Some(index),
    };
    Ok(CounterexampleReport {
        which,
        a_exp,
        trunc,
        lhs,
        direct_sum,
        rhs,
        difference,
        mismatch_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pochhammer::q_factorial;

    #[test]
    fn rr_checks() {
        assert!(rr_limit_check(RrProduct::Mod5_14, 30).passed());
        assert!(rr_limit_check(RrProduct::Mod5_23, 30).passed());
        assert!(rr_limit_check(RrProduct::Mod5_14, 0).passed());
    }

    #[test]
    fn liu1_at_q_squared() {
        let r = liu_counterexample(LiuForm::Liu1, 2, 10).unwrap();
        assert_eq!(r.lhs, TruncatedSeries::from_ints(&[1, -1], 10));
        assert!(r.rhs.is_zero());
        assert_eq!(r.mismatch_index, Some(0));
        assert!(r.reproduced());
    }

    #[test]
    fn liu2_at_q_squared() {
        let r = liu_counterexample(LiuForm::Liu2, 2, 10).unwrap();
        assert_eq!(r.lhs, *q_factorial(2, 10));
        assert_eq!(r.mismatch_index, Some(0));
        assert!(r.reproduced());
    }

    #[test]
    fn liu1_at_q() {
        let r = liu_counterexample(LiuForm::Liu1, 1, 5).unwrap();
        assert_eq!(r.lhs, TruncatedSeries::one(5));
        assert!(r.reproduced());
    }
}
