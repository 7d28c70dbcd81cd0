//! Telescoping certificates behind the non-well-poised `q`-factorial
//! identities.
//!
//! The first identity is multiplied by `1 - q^{l+m+n+u+v+1}`; both sides then
//! fold into sums of `f_k` and `g_k` whose difference telescopes against the
//! certificate `F`. The companion identity is handled by the termwise
//! equality `S_k = T_k`, which reduces to a four-variable polynomial
//! identity.

use std::time::Instant;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::{
    Assignment, MismatchWindow, Registry, SideId, Term, Vals, Var, Verdict, VerificationReport,
};
use crate::pochhammer::{Arg, LaurentWindow, TermSum};
use crate::series::{rat, BigRat, TruncatedSeries};

/// `l, m, n, u, v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub u: i64,
    pub v: i64,
}

impl Params {
    pub fn new(l: i64, m: i64, n: i64, u: i64, v: i64) -> Self {
        Params { l, m, n, u, v }
    }

    fn check(&self) -> Result<()> {
        if [self.l, self.m, self.n].iter().any(|x| *x < 0) || self.u < 1 || self.v < 1 {
            return Err(Error::Inadmissible(format!(
                "need l,m,n >= 0 and u,v >= 1, got {}",
                self.assignment()
            )));
        }
        Ok(())
    }

    fn total(&self) -> i64 {
        self.l + self.m + self.n + self.u + self.v + 1
    }

    /// Largest `k` at which a summand can be nonzero.
    pub fn k_max(&self) -> i64 {
        [self.l, self.m, self.n, self.u, self.v]
            .into_iter()
            .min()
            .expect("nonempty")
    }

    pub fn assignment(&self) -> Assignment {
        Assignment(vec![
            (Var::L, self.l),
            (Var::M, self.m),
            (Var::N, self.n),
            (Var::U, self.u),
            (Var::V, self.v),
        ])
    }

    fn vals(&self) -> Vals {
        Vals {
            l: self.l,
            m: self.m,
            n: self.n,
            u: self.u,
            v: self.v,
        }
    }
}

fn single(t: Term) -> TermSum {
    TermSum::single(t.into_product())
}

/// `1/((q)_{l-k}(q)_{m-k}(q)_{n-k})`
fn lmn_minus(t: &mut Term, p: &Params, k: i64) {
    t.rqf(p.l - k).rqf(p.m - k).rqf(p.n - k);
}

/// `1/((q)_{l+k+s}(q)_{m+k+s}(q)_{n+k+s})`
fn lmn_plus(t: &mut Term, p: &Params, k: i64, s: i64) {
    t.rqf(p.l + k + s).rqf(p.m + k + s).rqf(p.n + k + s);
}

/// `(q)_{l+m+s}(q)_{l+n+s}(q)_{m+n+s}`
fn lmn_pairs(t: &mut Term, p: &Params, s: i64) {
    t.qf(p.l + p.m + s).qf(p.l + p.n + s).qf(p.m + p.n + s);
}

/// `(q)_{u-1}(q)_{v-1}(q)_{u+v-1}`
fn uv_minus(t: &mut Term, p: &Params) {
    t.qf(p.u - 1).qf(p.v - 1).qf(p.u + p.v - 1);
}

/// Summand of the folded left side.
pub fn f_term(k: i64, p: &Params) -> TermSum {
    let mut a = Term::default();
    a.sign(k)
        .q((5 * k * k - k) / 2)
        .one_minus(&Arg::new(rat(-1), k), 1);
    lmn_pairs(&mut a, p, 0);
    a.qf(p.u).qf(p.v).qf(p.u + p.v);
    lmn_minus(&mut a, p, k);
    a.rqf(p.u - k).rqf(p.v - k);
    lmn_plus(&mut a, p, k, 0);
    a.rqf(p.u + k).rqf(p.v + k);

    let mut b = Term::default();
    b.sign(k)
        .q((5 * k * k + 3 * k) / 2 + p.u + p.v)
        .one_minus(&Arg::q_pow(2 * k + 1), 1);
    lmn_pairs(&mut b, p, 1);
    uv_minus(&mut b, p);
    lmn_minus(&mut b, p, k);
    b.rqf(p.u - k - 1).rqf(p.v - k - 1);
    lmn_plus(&mut b, p, k, 1);
    b.rqf(p.u + k).rqf(p.v + k);

    let mut s = single(a);
    s.extend(single(b));
    s
}

/// The bracket of `g_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GBracket {
    /// `1 + q^k (1-q^{u-k})(1-q^{v-k}) / ((1-q^{u+k})(1-q^{v+k}))`: the
    /// ratio of the `-k` and `k` bilateral terms.
    TermRatio,
    /// `1 + q^k (q)_{u-k}(q)_{v-k} / ((q)_{u+k}(q)_{v+k})`.
    FactorialRatio,
}

fn g_common(t: &mut Term, p: &Params, k: i64) {
    t.sign(k).q((5 * k * k - k) / 2);
    lmn_pairs(t, p, 0);
    uv_minus(t, p);
    lmn_minus(t, p, k);
    t.rqf(p.u - k).rqf(p.v - k);
    lmn_plus(t, p, k, 0);
    t.rqf(p.u + k - 1).rqf(p.v + k - 1);
    t.one_minus(&Arg::q_pow(p.total()), 1);
}

pub fn g_term_with(k: i64, p: &Params, bracket: GBracket) -> TermSum {
    let mut a = Term::default();
    g_common(&mut a, p, k);
    let mut b = Term::default();
    g_common(&mut b, p, k);
    b.q(k);
    match bracket {
        GBracket::TermRatio => {
            b.one_minus(&Arg::q_pow(p.u - k), 1)
                .one_minus(&Arg::q_pow(p.v - k), 1)
                .one_minus(&Arg::q_pow(p.u + k), -1)
                .one_minus(&Arg::q_pow(p.v + k), -1);
        }
        GBracket::FactorialRatio => {
            b.qf(p.u - k).qf(p.v - k).rqf(p.u + k).rqf(p.v + k);
        }
    }
    let mut s = single(a);
    s.extend(single(b));
    s
}

/// Summand of the folded right side.
pub fn g_term(k: i64, p: &Params) -> TermSum {
    g_term_with(k, p, GBracket::TermRatio)
}

/// The certificate `F(k)`.
pub fn certificate(k: i64, p: &Params) -> TermSum {
    let mut t = Term::default();
    t.sign(k)
        .q((5 * k * k - 3 * k) / 2 + p.u + p.v)
        .one_minus(&Arg::q_pow(p.l + p.m + p.n + k + 1), 1);
    lmn_pairs(&mut t, p, 0);
    uv_minus(&mut t, p);
    lmn_minus(&mut t, p, k);
    t.rqf(p.u - k).rqf(p.v - k);
    lmn_plus(&mut t, p, k, 0);
    t.rqf(p.u + k - 1).rqf(p.v + k - 1);
    single(t)
}

/// `(q)_{l+m}(q)_{l+n}(q)_{m+n} / ((q)_l^2 (q)_m^2 (q)_n^2)`
fn boundary_common(t: &mut Term, p: &Params) {
    lmn_pairs(t, p, 0);
    for x in [p.l, p.m, p.n] {
        t.rqf(x).rqf(x);
    }
}

/// Boundary term of the folded left side.
pub fn left_boundary(p: &Params) -> TermSum {
    let mut t = Term::default();
    t.scalar(&rat(-1));
    boundary_common(&mut t, p);
    t.qf(p.u + p.v).rqf(p.u).rqf(p.v);
    single(t)
}

/// The boundary term of the folded right side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RBoundary {
    /// `(q)_{u+v-1} / ((q)_u (q)_v)`: the `k = 0` bilateral term.
    Folded,
    /// `(q)_{u+v-1} / ((q)_{u-1} (q)_{v-1})`.
    Shifted,
}

pub fn right_boundary_with(p: &Params, kind: RBoundary) -> TermSum {
    let mut t = Term::default();
    t.scalar(&rat(-1));
    boundary_common(&mut t, p);
    t.qf(p.u + p.v - 1);
    match kind {
        RBoundary::Folded => t.rqf(p.u).rqf(p.v),
        RBoundary::Shifted => t.rqf(p.u - 1).rqf(p.v - 1),
    };
    t.one_minus(&Arg::q_pow(p.total()), 1);
    single(t)
}

pub fn right_boundary(p: &Params) -> TermSum {
    right_boundary_with(p, RBoundary::Folded)
}

/// Sum of the first identity's left side rewritten through the three-term
/// split: the first and (shifted) second `q`-factorial sums.
fn left_split(p: &Params) -> TermSum {
    let mut out = TermSum::new();
    for k in 0..=p.l.min(p.m).min(p.n) {
        let mut a = Term::default();
        a.q(k * k).qf(p.l + p.m + p.n - k).qf(p.u + p.v + k).rqf(k);
        lmn_minus(&mut a, p, k);
        a.rqf(p.u + k).rqf(p.v + k);
        out.extend(single(a));
        let mut b = Term::default();
        b.q(k * k + k + p.u + p.v)
            .qf(p.l + p.m + p.n - k + 1)
            .qf(p.u + p.v + k - 1)
            .rqf(k);
        lmn_minus(&mut b, p, k);
        b.rqf(p.u + k).rqf(p.v + k);
        out.extend(single(b));
    }
    out
}

fn window(s: &TermSum, trunc: usize) -> Result<LaurentWindow> {
    s.eval(trunc as i64)
}

fn diff_series(a: &TermSum, b: &TermSum, trunc: usize) -> Result<TruncatedSeries> {
    let mut d = a.clone();
    d.extend(b.negated());
    window(&d, trunc)?.to_series()
}

/// Per-`k` residuals and the aggregate verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub params: Assignment,
    pub trunc: usize,
    /// `f_k - g_k - (F(k+1) - F(k))` for `k = 0 ..= k_max + 2`.
    pub residuals: Vec<(i64, TruncatedSeries)>,
    /// `Σ_{j≤k}(f_j - g_j) = F(k+1) - F(0)` at every `k`.
    pub partial_sums_hold: bool,
    pub verdict: Verdict,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.verdict.is_equal()
    }
}

fn mismatch(l: &LaurentWindow, r: &LaurentWindow, trunc: usize) -> Option<Verdict> {
    let i = l.first_difference(r)?;
    let from = if i >= 0 { (i - 2).max(0) } else { i - 2 };
    let to = (i + 2).min(trunc as i64);
    Some(Verdict::Mismatch {
        index: i,
        left: l.coeff(i),
        right: r.coeff(i),
        window: MismatchWindow {
            from,
            lhs: l.slice(from, to),
            rhs: r.slice(from, to),
        },
    })
}

fn sum_over(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> TermSum) -> TermSum {
    let mut out = TermSum::new();
    for k in range {
        out.extend(f(k));
    }
    out
}

/// Checks the telescoping relation termwise, its partial sums, and that the
/// folded forms reproduce both sides of the first identity multiplied by
/// `1 - q^{l+m+n+u+v+1}`.
pub fn verify_telescoping(p: &Params, trunc: usize) -> Result<CertificateCheck> {
    p.check()?;
    let top = p.k_max() + 2;
    let mut residuals = Vec::new();
    let mut verdict = Verdict::Equal;
    for k in 0..=top {
        let mut lhs = f_term(k, p);
        lhs.extend(g_term(k, p).negated());
        let mut rhs = certificate(k + 1, p);
        rhs.extend(certificate(k, p).negated());
        let r = diff_series(&lhs, &rhs, trunc)?;
        if !r.is_zero() && verdict.is_equal() {
            verdict = mismatch(&window(&lhs, trunc)?, &window(&rhs, trunc)?, trunc)
                .unwrap_or(Verdict::Equal);
        }
        residuals.push((k, r));
    }

    let mut partial_sums_hold = true;
    let mut acc = TermSum::new();
    for k in 0..=top {
        acc.extend(f_term(k, p));
        acc.extend(g_term(k, p).negated());
        let mut tel = certificate(k + 1, p);
        tel.extend(certificate(0, p).negated());
        if !diff_series(&acc, &tel, trunc)?.is_zero() {
            partial_sums_hold = false;
        }
    }
    if !partial_sums_hold && verdict.is_equal() {
        verdict = Verdict::Error("partial sums do not telescope".into());
    }

    if verdict.is_equal() {
        verdict = folded_sides_verdict(p, trunc)?;
    }
    Ok(CertificateCheck {
        params: p.assignment(),
        trunc,
        residuals,
        partial_sums_hold,
        verdict,
    })
}

fn folded_sides_verdict(p: &Params, trunc: usize) -> Result<Verdict> {
    let top = p.k_max() + 2;
    let mut l_folded = left_boundary(p);
    l_folded.extend(sum_over(0..=top, |k| f_term(k, p)));
    let mut r_folded = right_boundary(p);
    r_folded.extend(sum_over(0..=top, |k| g_term(k, p)));

    let reg = Registry::standard();
    let rec = reg.get("LMNRS3")?;
    let mut factor = Term::default();
    factor.one_minus(&Arg::q_pow(p.total()), 1);
    let factor = factor.into_product();
    let mut lhs3 = rec.build_side(SideId::Lhs, &p.vals(), trunc, None);
    lhs3.prefactor.mul_assign(&factor);
    let mut rhs3 = rec.build_side(SideId::Rhs, &p.vals(), trunc, None);
    rhs3.prefactor.mul_assign(&factor);

    let t = trunc as i64;
    let pairs = [
        (window(&left_split(p), trunc)?, lhs3.eval(t)?),
        (window(&l_folded, trunc)?, lhs3.eval(t)?),
        (window(&r_folded, trunc)?, rhs3.eval(t)?),
        (window(&l_folded, trunc)?, window(&r_folded, trunc)?),
    ];
    for (a, b) in &pairs {
        if let Some(v) = mismatch(a, b, trunc) {
            return Ok(v);
        }
    }
    Ok(Verdict::Equal)
}

// ---------------------------------------------------------------------------
// Companion identity

fn ratio_bracket(t: &mut Term, p: &Params, k: i64) {
    t.one_minus(&Arg::q_pow(p.l - k), 1)
        .one_minus(&Arg::q_pow(p.m - k), 1)
        .one_minus(&Arg::q_pow(p.n - k), 1)
        .one_minus(&Arg::q_pow(p.l + k + 1), -1)
        .one_minus(&Arg::q_pow(p.m + k + 1), -1)
        .one_minus(&Arg::q_pow(p.n + k + 1), -1);
}

fn uv_tail(t: &mut Term, p: &Params, k: i64) {
    uv_minus(t, p);
    lmn_minus(t, p, k);
    t.rqf(p.u - k - 1).rqf(p.v - k - 1);
}

pub fn s_term(k: i64, p: &Params) -> TermSum {
    let mut a = Term::default();
    a.sign(k)
        .q((5 * k * k + 3 * k) / 2)
        .one_minus(&Arg::q_pow(2 * k + 1), 1);
    lmn_pairs(&mut a, p, 1);
    uv_tail(&mut a, p, k);
    lmn_plus(&mut a, p, k, 1);
    a.rqf(p.u + k).rqf(p.v + k);

    let head = |t: &mut Term| {
        t.sign(k).q((5 * k * k + k) / 2 + p.l + p.m + p.n + 1);
        lmn_pairs(t, p, 0);
        uv_tail(t, p, k);
        lmn_plus(t, p, k, 0);
        t.rqf(p.u + k).rqf(p.v + k);
    };
    let mut b = Term::default();
    head(&mut b);
    let mut c = Term::default();
    head(&mut c);
    c.scalar(&rat(-1)).q(4 * k + 2);
    ratio_bracket(&mut c, p, k);

    let mut s = single(a);
    s.extend(single(b));
    s.extend(single(c));
    s
}

pub fn t_term(k: i64, p: &Params) -> TermSum {
    let head = |t: &mut Term| {
        t.sign(k).q((5 * k * k + 3 * k) / 2);
        lmn_pairs(t, p, 0);
        uv_tail(t, p, k);
        lmn_plus(t, p, k, 0);
        t.rqf(p.u + k).rqf(p.v + k);
    };
    let mut a = Term::default();
    head(&mut a);
    let mut b = Term::default();
    head(&mut b);
    b.scalar(&rat(-1)).q(2 * k + 1);
    ratio_bracket(&mut b, p, k);
    let mut s = single(a);
    s.extend(single(b));
    s
}

/// `S_k = T_k` for `k = 0 ..= k_max + 2`, and the two sums against the
/// sides of the companion identity.
pub fn verify_sk_tk(p: &Params, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    let verdict = (|| -> Result<Verdict> {
        p.check()?;
        let top = p.k_max() + 2;
        for k in 0..=top {
            let s = window(&s_term(k, p), trunc)?;
            let t = window(&t_term(k, p), trunc)?;
            if let Some(v) = mismatch(&s, &t, trunc) {
                return Ok(v);
            }
        }
        let reg = Registry::standard();
        let rec = reg.get("LMNRS4")?;
        let vals = p.vals();
        let s_sum = window(&sum_over(0..=top, |k| s_term(k, p)), trunc)?;
        let t_sum = window(&sum_over(0..=top, |k| t_term(k, p)), trunc)?;
        let lhs = rec.eval_window(SideId::Lhs, &vals, trunc, None)?;
        let rhs = rec.eval_window(SideId::Rhs, &vals, trunc, None)?;
        for (a, b) in [(&s_sum, &lhs), (&t_sum, &rhs)] {
            if let Some(v) = mismatch(a, b, trunc) {
                return Ok(v);
            }
        }
        Ok(Verdict::Equal)
    })()
    .unwrap_or_else(|e| Verdict::Error(e.to_string()));
    VerificationReport {
        id: "S=T".into(),
        params: p.assignment(),
        trunc,
        verdict,
        millis: start.elapsed().as_millis() as u64,
    }
}

// ---------------------------------------------------------------------------
// Polynomial identities

/// Both sides of the four-variable identity, multiplied through by `d`.
pub fn quartic_sides(a: &BigRat, b: &BigRat, c: &BigRat, d: &BigRat) -> (BigRat, BigRat) {
    let one = BigRat::one();
    let om = |x: BigRat| &one - x;
    let lhs = d.clone() * om(a * b) * om(b * c) * om(a * c) * om(d * d)
        + (d - a) * (d - b) * (d - c) * om(a * b * c * d);
    let rhs = om(a * d) * om(b * d) * om(c * d) * (d - a * b * c);
    (lhs, rhs)
}

/// Both sides as displayed, for `d ≠ 0`.
pub fn quartic_sides_raw(a: &BigRat, b: &BigRat, c: &BigRat, d: &BigRat) -> (BigRat, BigRat) {
    let one = BigRat::one();
    let om = |x: BigRat| &one - x;
    let lhs = om(a * b) * om(b * c) * om(a * c) * om(d * d)
        + d * d * om(a / d) * om(b / d) * om(c / d) * om(a * b * c * d);
    let rhs = om(a * d) * om(b * d) * om(c * d) * om(a * b * c / d);
    (lhs, rhs)
}

pub const QUARTIC_GRID: [i64; 5] = [2, 3, 5, 7, 11];

/// Checks the cleared polynomial identity on `QUARTIC_GRID^4`. Each variable
/// has degree at most 4, so five points per variable certify it.
pub fn verify_quartic_identity() -> VerificationReport {
    let start = Instant::now();
    let mut verdict = Verdict::Equal;
    'outer: for a in QUARTIC_GRID {
        for b in QUARTIC_GRID {
            for c in QUARTIC_GRID {
                for d in QUARTIC_GRID {
                    let (x, y) = quartic_sides(&rat(a), &rat(b), &rat(c), &rat(d));
                    let (xr, yr) = quartic_sides_raw(&rat(a), &rat(b), &rat(c), &rat(d));
                    if x != y || xr != yr || x != &xr * &rat(d) {
                        verdict =
                            Verdict::Error(format!("sides differ at a={a}, b={b}, c={c}, d={d}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    VerificationReport {
        id: "quartic".into(),
        params: Assignment::default(),
        trunc: 0,
        verdict,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn qf_series(n: i64, trunc: usize) -> TruncatedSeries {
    let mut t = Term::default();
    t.qf(n);
    single(t)
        .to_series(trunc)
        .expect("q-factorial is a polynomial")
}

/// `(1-q^{M+N+2})(q)_M(q)_N = (q)_M(q)_{N+1} + q^{N+1}(q)_{M+1}(q)_N` for
/// `0 ≤ M, N ≤ max`, compared as full polynomials.
pub fn split_identity_holds(max: i64) -> bool {
    for mm in 0..=max {
        for nn in 0..=max {
            let deg = ((mm + 1) * (mm + 2) / 2 + (nn + 1) * (nn + 2) / 2 + mm + nn + 2) as usize;
            let qm = qf_series(mm, deg);
            let qn = qf_series(nn, deg);
            let mut lhs = qm.clone();
            lhs.mul_one_minus(&rat(1), (mm + nn + 2) as usize);
            let lhs = lhs.mul(&qn);
            let r1 = qm.mul(&qf_series(nn + 1, deg));
            let r2 = qf_series(mm + 1, deg).mul(&qn).shift_up((nn + 1) as usize);
            if lhs != r1.add(&r2) {
                return false;
            }
        }
    }
    true
}

/// `(q)_M = (q)_{M+1} + q^{M+1}(q)_M` for `0 ≤ M ≤ max`.
pub fn factorial_step_holds(max: i64) -> bool {
    (0..=max).all(|mm| {
        let deg = ((mm + 2) * (mm + 3) / 2) as usize;
        let qm = qf_series(mm, deg);
        qm == qf_series(mm + 1, deg).add(&qm.shift_up((mm + 1) as usize))
    })
}

/// `q^{(5k²-k)/2}/(q)_{v+k-1} = q^{(5k²-k)/2}/(q)_{v+k} - q^{(5k²+k)/2+v}/(q)_{v+k}`.
pub fn remark_shift_holds(k: i64, v: i64, trunc: usize) -> Result<bool> {
    let mut lhs = Term::default();
    lhs.q((5 * k * k - k) / 2).rqf(v + k - 1);
    let mut a = Term::default();
    a.q((5 * k * k - k) / 2).rqf(v + k);
    let mut b = Term::default();
    b.scalar(&rat(-1)).q((5 * k * k + k) / 2 + v).rqf(v + k);
    let mut rhs = single(a);
    rhs.extend(single(b));
    Ok(diff_series(&single(lhs), &rhs, trunc)?.is_zero())
}
