//! Bailey pairs, the Bailey lemma and lattice steps, and the chains that
//! produce the five-parameter transformations.
//!
//! A pair relative to `x = q^j` satisfies
//! `β_n = Σ_{r=0}^{n} α_r / ((q)_{n-r} (xq)_{n+r})`. Terms of `α` and `β` are
//! produced on demand as factored sums, so chained pairs compose without
//! materializing series.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::{
    Assignment, MismatchWindow, Registry, SideId, Vals, Var, Verdict, VerificationReport,
};
use crate::pochhammer::{Arg, LaurentWindow, QProduct, TermSum};
use crate::series::{rat, MonomialParam};

pub type Generator = Arc<dyn Fn(i64) -> Result<TermSum> + Send + Sync>;

fn q() -> Arg {
    Arg::q_pow(1)
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `(-1)^n q^{C(n,2)}`
fn signed_triangular(n: i64) -> QProduct {
    let mut p = QProduct::one();
    p.mul_sign(n).mul_q_pow(binom2(n));
    p
}

/// A Bailey pair relative to `x = q^{x_exp}`.
#[derive(Clone)]
pub struct BaileyPair {
    pub label: String,
    pub x_exp: i64,
    alpha: Generator,
    beta: Generator,
}

impl std::fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BaileyPair")
            .field("label", &self.label)
            .field("x_exp", &self.x_exp)
            .finish_non_exhaustive()
    }
}

impl BaileyPair {
    pub fn new(label: impl Into<String>, x_exp: i64, alpha: Generator, beta: Generator) -> Self {
        BaileyPair {
            label: label.into(),
            x_exp,
            alpha,
            beta,
        }
    }

    pub fn x(&self) -> Arg {
        Arg::q_pow(self.x_exp)
    }

    /// `α_n`; zero for `n < 0`.
    pub fn alpha(&self, n: i64) -> Result<TermSum> {
        if n < 0 {
            return Ok(TermSum::new());
        }
        (self.alpha)(n)
    }

    /// `β_n`; zero for `n < 0`.
    pub fn beta(&self, n: i64) -> Result<TermSum> {
        if n < 0 {
            return Ok(TermSum::new());
        }
        (self.beta)(n)
    }

    /// Indices `r` contributing to the relation at `n`.
    pub fn support_hint(&self, n: i64) -> (i64, i64) {
        (0, n)
    }

    /// `Σ_r α_r / ((q)_{n-r} (xq)_{n+r})`.
    pub fn relation(&self, n: i64) -> Result<TermSum> {
        let xq = self.x().shift(1);
        let mut out = TermSum::new();
        let (lo, hi) = self.support_hint(n);
        for r in lo..=hi {
            let mut w = QProduct::one();
            w.mul_poch(&q(), n - r, -1).mul_poch(&xq, n + r, -1);
            out.extend(self.alpha(r)?.scaled(&w));
        }
        Ok(out)
    }
}

fn first_mismatch(
    id: &str,
    n: i64,
    trunc: usize,
    l: &LaurentWindow,
    r: &LaurentWindow,
) -> Option<VerificationReport> {
    let i = l.first_difference(r)?;
    let from = if i >= 0 { (i - 2).max(0) } else { i - 2 };
    let to = (i + 2).min(trunc as i64);
    Some(VerificationReport {
        id: id.to_string(),
        params: Assignment(vec![(Var::N, n)]),
        trunc,
        verdict: Verdict::Mismatch {
            index: i,
            left: l.coeff(i),
            right: r.coeff(i),
            window: MismatchWindow {
                from,
                lhs: l.slice(from, to),
                rhs: r.slice(from, to),
            },
        },
        millis: 0,
    })
}

fn finish(mut r: VerificationReport, start: Instant) -> VerificationReport {
    r.millis = start.elapsed().as_millis() as u64;
    r
}

fn report(id: &str, n: i64, trunc: usize, verdict: Verdict) -> VerificationReport {
    VerificationReport {
        id: id.to_string(),
        params: Assignment(vec![(Var::N, n)]),
        trunc,
        verdict,
        millis: 0,
    }
}

/// Compares two factored sums through `q^trunc`.
fn compare_sums(
    id: &str,
    n: i64,
    trunc: usize,
    lhs: &TermSum,
    rhs: &TermSum,
) -> Result<Option<VerificationReport>> {
    let l = lhs.eval(trunc as i64)?;
    let r = rhs.eval(trunc as i64)?;
    Ok(first_mismatch(id, n, trunc, &l, &r))
}

/// Checks the pair relation for `0 ≤ n ≤ n_max`.
pub fn verify_pair(p: &BaileyPair, n_max: i64, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    let id = format!("pair:{}", p.label);
    for n in 0..=n_max {
        let res = p
            .beta(n)
            .and_then(|b| Ok((b, p.relation(n)?)))
            .and_then(|(b, rel)| compare_sums(&id, n, trunc, &b, &rel));
        match res {
            Ok(None) => {}
            Ok(Some(bad)) => return finish(bad, start),
            Err(e) => return finish(report(&id, n, trunc, Verdict::Error(e.to_string())), start),
        }
    }
    finish(report(&id, n_max, trunc, Verdict::Equal), start)
}

// ---------------------------------------------------------------------------
// Pairs whose α is indexed by all integers

/// How a bilateral pair folds into a one-sided one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymMode {
    /// `x = 1`, relation `β_n = Σ_r α_r / ((q)_{n-r} (q)_{n+r})`.
    X1,
    /// `x = q`, relation `β_n = Σ_r α_r / ((q)_{n-r} (q)_{n+r+1})`.
    Xq,
}

impl std::str::FromStr for SymMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x1" => Ok(SymMode::X1),
            "xq" => Ok(SymMode::Xq),
            _ => Err(Error::Inadmissible(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone)]
pub struct BilateralPair {
    pub label: String,
    pub mode: SymMode,
    alpha: Generator,
    beta: Generator,
}

impl BilateralPair {
    pub fn new(label: impl Into<String>, mode: SymMode, alpha: Generator, beta: Generator) -> Self {
        BilateralPair {
            label: label.into(),
            mode,
            alpha,
            beta,
        }
    }

    pub fn alpha(&self, n: i64) -> Result<TermSum> {
        (self.alpha)(n)
    }

    pub fn beta(&self, n: i64) -> Result<TermSum> {
        if n < 0 {
            return Ok(TermSum::new());
        }
        (self.beta)(n)
    }

    fn offset(&self) -> i64 {
        match self.mode {
            SymMode::X1 => 0,
            SymMode::Xq => 1,
        }
    }

    pub fn relation(&self, n: i64) -> Result<TermSum> {
        let s = self.offset();
        let mut out = TermSum::new();
        for r in -n - s..=n {
            let mut w = QProduct::one();
            w.mul_poch(&q(), n - r, -1).mul_poch(&q(), n + r + s, -1);
            out.extend(self.alpha(r)?.scaled(&w));
        }
        Ok(out)
    }

    /// One-sided pair obtained by `α_n + α_{-n}` (resp.
    /// `(α_n + α_{-n-1}) / (1-q)`).
    pub fn fold(&self) -> BaileyPair {
        let me = self.clone();
        let alpha: Generator = match self.mode {
            SymMode::X1 => Arc::new(move |n| {
                let mut a = me.alpha(n)?;
                if n > 0 {
                    a.extend(me.alpha(-n)?);
                }
                Ok(a)
            }),
            SymMode::Xq => Arc::new(move |n| {
                let mut a = me.alpha(n)?;
                a.extend(me.alpha(-n - 1)?);
                let mut w = QProduct::one();
                w.mul_factor(&rat(1), 1, 0, -1);
                Ok(a.scaled(&w))
            }),
        };
        let x_exp = self.offset();
        BaileyPair::new(
            format!("{}-folded", self.label),
            x_exp,
            alpha,
            self.beta.clone(),
        )
    }
}

pub fn verify_bilateral_pair(p: &BilateralPair, n_max: i64, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    let id = format!("bilateral-pair:{}", p.label);
    for n in 0..=n_max {
        let res = p
            .beta(n)
            .and_then(|b| Ok((b, p.relation(n)?)))
            .and_then(|(b, rel)| compare_sums(&id, n, trunc, &b, &rel));
        match res {
            Ok(None) => {}
            Ok(Some(bad)) => return finish(bad, start),
            Err(e) => return finish(report(&id, n, trunc, Verdict::Error(e.to_string())), start),
        }
    }
    finish(report(&id, n_max, trunc, Verdict::Equal), start)
}

fn delta_beta() -> Generator {
    Arc::new(|n| {
        Ok(if n == 0 {
            TermSum::single(QProduct::one())
        } else {
            TermSum::new()
        })
    })
}

/// `α_r = (-1)^r q^{C(r,2)}`, `β_n = δ_{n,0}` in either bilateral mode.
pub fn unit_bilateral(mode: SymMode) -> BilateralPair {
    let label = match mode {
        SymMode::X1 => "unit-x1",
        SymMode::Xq => "unit-xq",
    };
    BilateralPair::new(
        label,
        mode,
        Arc::new(|r| Ok(TermSum::single(signed_triangular(r)))),
        delta_beta(),
    )
}

/// `α_0 = 1`, `α_n = (-1)^n (q^{C(n,2)} + q^{C(-n,2)})`, `β_n = δ_{n,0}`, `x = 1`.
pub fn unit_pair_x1() -> BaileyPair {
    let alpha: Generator = Arc::new(|n| {
        let mut a = TermSum::single(signed_triangular(n));
        if n > 0 {
            a.push(signed_triangular(-n));
        }
        Ok(a)
    });
    BaileyPair::new("unit-x1", 0, alpha, delta_beta())
}

/// `α_n = (-1)^n (q^{C(n,2)} - q^{C(-n-1,2)}) / (1-q)`, `β_n = δ_{n,0}`, `x = q`.
pub fn unit_pair_xq() -> BaileyPair {
    let alpha: Generator = Arc::new(|n| {
        let mut a = TermSum::single(signed_triangular(n));
        let mut neg = QProduct::one();
        neg.mul_int(-1).mul_sign(n).mul_q_pow(binom2(-n - 1));
        a.push(neg);
        let mut w = QProduct::one();
        w.mul_factor(&rat(1), 1, 0, -1);
        Ok(a.scaled(&w))
    });
    BaileyPair::new("unit-xq", 1, alpha, delta_beta())
}

/// `α_n = (-1)^n q^{C(n,2)} (1 - q^{2n+1}) / (1 - q)`, `β_n = δ_{n,0}`, `x = q`.
pub fn lattice_seed() -> BaileyPair {
    let alpha: Generator = Arc::new(|n| {
        let mut p = signed_triangular(n);
        p.mul_factor(&rat(1), 2 * n + 1, 0, 1)
            .mul_factor(&rat(1), 1, 0, -1);
        Ok(TermSum::single(p))
    });
    BaileyPair::new("lattice-seed", 1, alpha, delta_beta())
}

// ---------------------------------------------------------------------------
// Lemma and lattice steps

fn arg(m: &MonomialParam) -> Arg {
    Arg::from(m)
}

fn check_den(label: &str, a: &Arg) -> Result<()> {
    if a.exp < 1 {
        return Err(Error::Inadmissible(format!(
            "{label} = {} must be q^j with j >= 1",
            a.monomial()
        )));
    }
    Ok(())
}

/// Bailey's lemma: the primed pair with the same `x`.
pub fn bailey_step(
    p: &BaileyPair,
    rho1: &MonomialParam,
    rho2: &MonomialParam,
) -> Result<BaileyPair> {
    let (r1, r2) = (arg(rho1), arg(rho2));
    let xq = p.x().shift(1);
    let a1 = xq.div(&r1);
    let a2 = xq.div(&r2);
    check_den("xq/rho1", &a1)?;
    check_den("xq/rho2", &a2)?;
    let w = xq.div(&r1).div(&r2);

    let alpha = {
        let (p, r1, r2, a1, a2, w) = (
            p.clone(),
            r1.clone(),
            r2.clone(),
            a1.clone(),
            a2.clone(),
            w.clone(),
        );
        Arc::new(move |n: i64| {
            let mut f = QProduct::one();
            f.mul_poch(&r1, n, 1)
                .mul_poch(&r2, n, 1)
                .mul_arg_pow(&w, n)
                .mul_poch(&a1, n, -1)
                .mul_poch(&a2, n, -1);
            Ok(p.alpha(n)?.scaled(&f))
        }) as Generator
    };
    let beta = {
        let p = p.clone();
        Arc::new(move |n: i64| {
            let mut out = TermSum::new();
            for r in 0..=n {
                let mut f = QProduct::one();
                f.mul_poch(&r1, r, 1)
                    .mul_poch(&r2, r, 1)
                    .mul_poch(&w, n - r, 1)
                    .mul_arg_pow(&w, r)
                    .mul_poch(&q(), n - r, -1)
                    .mul_poch(&a1, n, -1)
                    .mul_poch(&a2, n, -1);
                out.extend(p.beta(r)?.scaled(&f));
            }
            Ok(out)
        }) as Generator
    };
    Ok(BaileyPair::new(
        format!("{}>step({},{})", p.label, rho1, rho2),
        p.x_exp,
        alpha,
        beta,
    ))
}

/// Bailey lattice: a pair relative to `x/q`.
pub fn lattice_step(
    p: &BaileyPair,
    rho1: &MonomialParam,
    rho2: &MonomialParam,
) -> Result<BaileyPair> {
    if p.x_exp < 1 {
        return Err(Error::Inadmissible(format!(
            "lattice step needs x = q^j with j >= 1, got j = {}",
            p.x_exp
        )));
    }
    let (r1, r2) = (arg(rho1), arg(rho2));
    let x = p.x();
    let a1 = x.div(&r1);
    let a2 = x.div(&r2);
    check_den("x/rho1", &a1)?;
    check_den("x/rho2", &a2)?;
    let w = x.div(&r1).div(&r2);
    let xe = p.x_exp;

    let alpha = {
        let (p, r1, r2, a1, a2, w) = (
            p.clone(),
            r1.clone(),
            r2.clone(),
            a1.clone(),
            a2.clone(),
            w.clone(),
        );
        Arc::new(move |n: i64| {
            if n == 0 {
                return p.alpha(0);
            }
            let mut cur = QProduct::one();
            cur.mul_factor(&rat(1), xe + 2 * n, 0, -1);
            let mut prev = QProduct::one();
            prev.mul_int(-1)
                .mul_q_pow(xe + 2 * n - 2)
                .mul_factor(&rat(1), xe + 2 * n - 2, 0, -1);
            let mut bracket = p.alpha(n)?.scaled(&cur);
            bracket.extend(p.alpha(n - 1)?.scaled(&prev));
            let mut f = QProduct::one();
            f.mul_factor(&rat(1), xe, 0, 1)
                .mul_arg_pow(&w, n)
                .mul_poch(&r1, n, 1)
                .mul_poch(&r2, n, 1)
                .mul_poch(&a1, n, -1)
                .mul_poch(&a2, n, -1);
            Ok(bracket.scaled(&f))
        }) as Generator
    };
    let beta = {
        let p = p.clone();
        Arc::new(move |n: i64| {
            let mut out = TermSum::new();
            for r in 0..=n {
                let mut f = QProduct::one();
                f.mul_poch(&r1, r, 1)
                    .mul_poch(&r2, r, 1)
                    .mul_poch(&w, n - r, 1)
                    .mul_arg_pow(&w, r)
                    .mul_poch(&q(), n - r, -1)
                    .mul_poch(&a1, n, -1)
                    .mul_poch(&a2, n, -1);
                out.extend(p.beta(r)?.scaled(&f));
            }
            Ok(out)
        }) as Generator
    };
    Ok(BaileyPair::new(
        format!("{}>lattice({},{})", p.label, rho1, rho2),
        p.x_exp - 1,
        alpha,
        beta,
    ))
}

// ---------------------------------------------------------------------------
// Symmetrized lemma

/// Checks the summation identity obtained by feeding a bilateral pair through
/// one lemma step at index `big_n`.
pub fn symmetrized_identity(
    p: &BilateralPair,
    rho1: &MonomialParam,
    rho2: &MonomialParam,
    big_n: i64,
    trunc: usize,
) -> VerificationReport {
    let start = Instant::now();
    let id = format!("symmetrized:{}", p.label);
    let res = symmetrized_sides(p, rho1, rho2, big_n)
        .and_then(|(l, r)| compare_sums(&id, big_n, trunc, &l, &r));
    let rep = match res {
        Ok(None) => report(&id, big_n, trunc, Verdict::Equal),
        Ok(Some(bad)) => bad,
        Err(e) => report(&id, big_n, trunc, Verdict::Error(e.to_string())),
    };
    finish(rep, start)
}

fn symmetrized_sides(
    p: &BilateralPair,
    rho1: &MonomialParam,
    rho2: &MonomialParam,
    big_n: i64,
) -> Result<(TermSum, TermSum)> {
    let s = p.offset();
    let (r1, r2) = (arg(rho1), arg(rho2));
    let top = Arg::q_pow(1 + s);
    let a1 = top.div(&r1);
    let a2 = top.div(&r2);
    check_den("q^(1+s)/rho1", &a1)?;
    check_den("q^(1+s)/rho2", &a2)?;
    let qmn = Arg::q_pow(-big_n);
    let qn1 = Arg::q_pow(big_n + 1 + s);
    let w = Arg::q_pow(1 + s + big_n).div(&r1).div(&r2);

    let mut lhs = TermSum::new();
    for n in -big_n - s..=big_n {
        let mut f = QProduct::one();
        f.mul_poch(&r1, n, 1)
            .mul_poch(&r2, n, 1)
            .mul_poch(&qmn, n, 1)
            .mul_poch(&a1, n, -1)
            .mul_poch(&a2, n, -1)
            .mul_poch(&qn1, n, -1)
            .mul_arg_pow(&w, n)
            .mul_sign(n)
            .mul_q_pow(-binom2(n));
        if s == 1 {
            f.mul_factor(&rat(1), 1, 0, -1);
        }
        lhs.extend(p.alpha(n)?.scaled(&f));
    }

    let mut pre = QProduct::one();
    pre.mul_poch(&top, big_n, 1)
        .mul_poch(&top.div(&r1).div(&r2), big_n, 1)
        .mul_poch(&a1, big_n, -1)
        .mul_poch(&a2, big_n, -1);
    let low = r1.mul(&r2).shift(-big_n - s);
    let mut rhs = TermSum::new();
    for n in 0..=big_n {
        let mut f = QProduct::one();
        f.mul_poch(&r1, n, 1)
            .mul_poch(&r2, n, 1)
            .mul_poch(&qmn, n, 1)
            .mul_q_pow(n)
            .mul_poch(&low, n, -1);
        rhs.extend(p.beta(n)?.scaled(&f));
    }
    Ok((lhs, rhs.scaled(&pre)))
}

// ---------------------------------------------------------------------------
// Chains reproducing the five-parameter transformations

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainTarget {
    #[serde(rename = "ABCDE1")]
    Abcde1,
    #[serde(rename = "ABCDE2")]
    Abcde2,
    #[serde(rename = "ABCDE3")]
    Abcde3,
}

impl ChainTarget {
    pub fn id(self) -> &'static str {
        match self {
            ChainTarget::Abcde1 => "ABCDE1",
            ChainTarget::Abcde2 => "ABCDE2",
            ChainTarget::Abcde3 => "ABCDE3",
        }
    }
}

impl std::str::FromStr for ChainTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "ABCDE1" => Ok(ChainTarget::Abcde1),
            "ABCDE2" => Ok(ChainTarget::Abcde2),
            "ABCDE3" => Ok(ChainTarget::Abcde3),
            _ => Err(Error::UnknownIdentity(s.to_string())),
        }
    }
}

/// `N` and the exponents of `b, c, d, e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainParams {
    pub big_n: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
}

impl ChainParams {
    fn vals(&self) -> Vals {
        Vals {
            n: self.big_n,
            l: self.b - 1,
            m: self.c - 1,
            u: self.d - 1,
            v: self.e - 1,
        }
    }

    fn assignment(&self) -> Assignment {
        Assignment(vec![
            (Var::N, self.big_n),
            (Var::L, self.b - 1),
            (Var::M, self.c - 1),
            (Var::U, self.d - 1),
            (Var::V, self.e - 1),
        ])
    }
}

fn mp(e: i64) -> MonomialParam {
    MonomialParam::q_pow(e)
}

/// Builds the pair for `target` by the two-step route.
pub fn chain_pair(target: ChainTarget, cp: &ChainParams) -> Result<BaileyPair> {
    for (name, e) in [("b", cp.b), ("c", cp.c), ("d", cp.d), ("e", cp.e)] {
        if e < 1 {
            return Err(Error::Inadmissible(format!(
                "{name} = q^{e} needs exponent >= 1"
            )));
        }
    }
    match target {
        ChainTarget::Abcde1 => {
            let p = bailey_step(&unit_pair_x1(), &mp(1 - cp.b), &mp(1 - cp.c))?;
            bailey_step(&p, &mp(1 - cp.d), &mp(1 - cp.e))
        }
        ChainTarget::Abcde2 => {
            let p = bailey_step(&unit_pair_xq(), &mp(1 - cp.b), &mp(1 - cp.c))?;
            bailey_step(&p, &mp(1 - cp.d), &mp(1 - cp.e))
        }
        ChainTarget::Abcde3 => {
            let p = bailey_step(&lattice_seed(), &mp(2 - cp.d), &mp(2 - cp.e))?;
            lattice_step(&p, &mp(1 - cp.b), &mp(1 - cp.c))
        }
    }
}

/// Checks that the chained pair satisfies its relation at `N` and that both
/// sides of that relation, rescaled, equal the registry's sides of `target`
/// at `a = q^{N+1}`.
pub fn chain_reproduce(target: ChainTarget, cp: &ChainParams, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    let id = format!("chain:{}", target.id());
    let mk = |verdict| VerificationReport {
        id: id.clone(),
        params: cp.assignment(),
        trunc,
        verdict,
        millis: 0,
    };
    let res = (|| -> Result<Option<VerificationReport>> {
        let pair = chain_pair(target, cp)?;
        let n = cp.big_n;
        let mut scale = QProduct::one();
        scale.mul_poch(&q(), n, 1);
        scale.mul_poch(&q(), n + i64::from(target == ChainTarget::Abcde2), 1);
        let alpha_side = pair.relation(n)?.scaled(&scale).eval(trunc as i64)?;
        let beta_side = pair.beta(n)?.scaled(&scale).eval(trunc as i64)?;
        let reg = Registry::standard();
        let rec = reg.get(target.id())?;
        let vals = cp.vals();
        let lhs = rec.eval_window(SideId::Lhs, &vals, trunc, None)?;
        let rhs = rec.eval_window(SideId::Rhs, &vals, trunc, None)?;
        for (a, b) in [
            (&alpha_side, &beta_side),
            (&lhs, &alpha_side),
            (&rhs, &beta_side),
        ] {
            if let Some(mut bad) = first_mismatch(&id, n, trunc, a, b) {
                bad.params = cp.assignment();
                return Ok(Some(bad));
            }
        }
        Ok(None)
    })();
    let rep = match res {
        Ok(None) => mk(Verdict::Equal),
        Ok(Some(bad)) => bad,
        Err(e) => mk(Verdict::Error(e.to_string())),
    };
    finish(rep, start)
}
