//! The registered identities.
//!
//! Parameters are nonnegative integers. In the five-parameter families the
//! monomials are `a = q^{n+1}`, `b = q^{l+1}`, `c = q^{m+1}`, `d = q^{u+1}`,
//! `e = q^{v+1}`. Where `d/q` or `e/q` appears in a denominator, `d` and `e`
//! carry a drift so that `u = 0` or `v = 0` is evaluated as the limit
//! `d → q`; both sides are rational in `d` and `e`, so the limit is exact.

use super::term::Term;
use super::{IdentityRecord, ParamSpec, SideDef, Vals, Var};
use crate::pochhammer::Arg;

// ---------------------------------------------------------------------------
// Helpers

fn q() -> Arg {
    Arg::q_pow(1)
}

fn qp(e: i64) -> Arg {
    Arg::q_pow(e)
}

fn min_of(xs: &[i64]) -> i64 {
    xs.iter().copied().min().expect("nonempty")
}

fn range(lo: i64, hi: i64) -> Option<(i64, i64)> {
    (lo <= hi).then_some((lo, hi))
}

/// Largest `k ≥ 0` with `k² + s·k ≤ trunc`; terms past it start above the
/// truncation order.
fn valuation_cap(trunc: usize, s: i64) -> i64 {
    let t = trunc as i64;
    let mut k = 0;
    while (k + 1) * (k + 1) + s * (k + 1) <= t {
        k += 1;
    }
    k
}

/// Parameter cap for a factor `1/(x/q)_k` style bound that only exists when
/// the parameter is at least one.
fn cap_if_pos(x: i64, off: i64) -> i64 {
    if x >= 1 {
        x + off
    } else {
        i64::MAX
    }
}

struct Five {
    a: Arg,
    b: Arg,
    c: Arg,
    d: Arg,
    e: Arg,
}

impl Five {
    fn new(v: &Vals, drift: bool) -> Self {
        let w = i32::from(drift);
        Five {
            a: qp(v.n + 1),
            b: qp(v.l + 1),
            c: qp(v.m + 1),
            d: qp(v.u + 1).with_drift(w),
            e: qp(v.v + 1).with_drift(w),
        }
    }

    fn all(&self) -> [&Arg; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }

    fn product(&self) -> Arg {
        self.a.mul(&self.b).mul(&self.c).mul(&self.d).mul(&self.e)
    }

    fn abc(&self) -> Arg {
        self.a.mul(&self.b).mul(&self.c)
    }
}

fn ratio(t: &mut Term, num: &[Arg], den: &[Arg], k: i64) {
    for a in num {
        t.poch(a, k);
    }
    for a in den {
        t.rpoch(a, k);
    }
}

fn q_over(x: &Arg) -> Arg {
    q().div(x)
}

fn side(
    support: super::SupportFn,
    prefactor: Option<super::BuildFn>,
    term: super::TermFn,
) -> SideDef {
    SideDef {
        support,
        prefactor,
        term,
    }
}

fn ps(var: Var, min: i64, lo: i64, hi: i64) -> ParamSpec {
    ParamSpec {
        var,
        min,
        grid: (lo, hi),
    }
}

fn lmnuv(uv_min: i64) -> Vec<ParamSpec> {
    vec![
        ps(Var::L, 0, 0, 3),
        ps(Var::M, 0, 0, 3),
        ps(Var::N, 0, 0, 3),
        ps(Var::U, uv_min, uv_min, 3),
        ps(Var::V, uv_min, uv_min, 3),
    ]
}

fn nlmuv(n_min: i64) -> Vec<ParamSpec> {
    vec![
        ps(Var::N, n_min, n_min, 3),
        ps(Var::L, 0, 0, 3),
        ps(Var::M, 0, 0, 3),
        ps(Var::U, 0, 0, 3),
        ps(Var::V, 0, 0, 3),
    ]
}

// ---------------------------------------------------------------------------
// Andrews' finite forms

fn andrews_lhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, v.n)
}

fn andrews_rhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(-v.n, v.n)
}

fn andrews1_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k).rqf(k).rqf(v.n - k);
}

fn andrews1_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((5 * k * k - k) / 2).rqf(v.n - k).rqf(v.n + k);
}

fn andrews2_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k).rqf(k).rqf(v.n - k);
}

fn andrews2_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k)
        .q((5 * k * k - 3 * k) / 2)
        .rqf(v.n - k)
        .rqf(v.n + k);
}

// ---------------------------------------------------------------------------
// Five-parameter bilateral transformations

fn min5(v: &Vals) -> i64 {
    min_of(&[v.n, v.l, v.m, v.u, v.v])
}

fn min_abc(v: &Vals) -> i64 {
    min_of(&[v.n, v.l, v.m])
}

fn sym_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min5(v);
    range(-m, m)
}

fn shifted_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min5(v);
    range(-(m + 1), m)
}

fn abc_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, min_abc(v))
}

/// `(q, ab/q, bc/q, ac/q)_∞ / (a, b, c, abc/q²)_∞`
fn well_poised_prefactor(t: &mut Term, v: &Vals) {
    let p = Five::new(v, false);
    t.inf(&q())
        .inf(&p.a.mul(&p.b).shift(-1))
        .inf(&p.b.mul(&p.c).shift(-1))
        .inf(&p.a.mul(&p.c).shift(-1))
        .rinf(&p.a)
        .rinf(&p.b)
        .rinf(&p.c)
        .rinf(&p.abc().shift(-2));
}

/// `(q, ab, bc, ac)_∞ / (aq, bq, cq, abc/q)_∞`
fn shifted_prefactor(t: &mut Term, v: &Vals) {
    let p = Five::new(v, false);
    t.inf(&q())
        .inf(&p.a.mul(&p.b))
        .inf(&p.b.mul(&p.c))
        .inf(&p.a.mul(&p.c))
        .rinf(&p.a.shift(1))
        .rinf(&p.b.shift(1))
        .rinf(&p.c.shift(1))
        .rinf(&p.abc().shift(-1));
}

fn abcde1_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num: Vec<Arg> = p.all().iter().map(|x| q_over(x)).collect();
    let den: Vec<Arg> = p.all().iter().map(|x| (*x).clone()).collect();
    ratio(t, &num, &den, k);
    t.pow(&p.product().shift(-3), k);
}

fn abcde1_rhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [
        q_over(&p.a),
        q_over(&p.b),
        q_over(&p.c),
        p.d.mul(&p.e).shift(-1),
    ];
    let den = [q(), qp(3).div(&p.abc()), p.d.clone(), p.e.clone()];
    ratio(t, &num, &den, k);
    t.q(k);
}

fn abcde2_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num: Vec<Arg> = p.all().iter().map(|x| q_over(x)).collect();
    let den: Vec<Arg> = p.all().iter().map(|x| x.shift(1)).collect();
    ratio(t, &num, &den, k);
    t.pow(&p.product().shift(-1), k);
}

/// `(q/a, q/b, q/c, de)_k / (q, q²/abc, dq, eq)_k q^k`
fn shifted_rhs_term(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.a), q_over(&p.b), q_over(&p.c), p.d.mul(&p.e)];
    let den = [q(), qp(2).div(&p.abc()), p.d.shift(1), p.e.shift(1)];
    ratio(t, &num, &den, k);
    t.q(k);
}

// Non-well-poised companions with d/q, e/q in the denominator.

fn abcde3_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let hi = min_of(&[v.n, v.l, v.m, cap_if_pos(v.u, 0), cap_if_pos(v.v, 0)]);
    let lo = min_of(&[v.n, v.l, v.m, cap_if_pos(v.u, -1), cap_if_pos(v.v, -1)]);
    range(-lo, hi)
}

fn abcde34_lhs(t: &mut Term, v: &Vals, k: i64, drop: i64) {
    let p = Five::new(v, true);
    let num: Vec<Arg> = p.all().iter().map(|x| q_over(x)).collect();
    let den = [
        p.a.clone(),
        p.b.clone(),
        p.c.clone(),
        p.d.shift(-1),
        p.e.shift(-1),
    ];
    ratio(t, &num, &den, k);
    t.pow(&p.product().shift(-drop), k);
}

fn abcde34_rhs(t: &mut Term, v: &Vals, k: i64, step: i64) {
    let p = Five::new(v, true);
    let num = [
        q_over(&p.a),
        q_over(&p.b),
        q_over(&p.c),
        p.d.mul(&p.e).shift(-2),
    ];
    let den = [q(), qp(3).div(&p.abc()), p.d.clone(), p.e.clone()];
    ratio(t, &num, &den, k);
    t.q(step * k);
}

fn abcde3_lhs(t: &mut Term, v: &Vals, k: i64) {
    abcde34_lhs(t, v, k, 3)
}

fn abcde3_rhs(t: &mut Term, v: &Vals, k: i64) {
    abcde34_rhs(t, v, k, 1)
}

fn abcde4_lhs(t: &mut Term, v: &Vals, k: i64) {
    abcde34_lhs(t, v, k, 4)
}

fn abcde4_rhs(t: &mut Term, v: &Vals, k: i64) {
    abcde34_rhs(t, v, k, 2)
}

// ---------------------------------------------------------------------------
// d, e → 0

fn liu_sym_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min_abc(v);
    range(-m, m)
}

fn liu_shifted_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min_abc(v);
    range(-(m + 1), m)
}

fn liu1_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.a), q_over(&p.b), q_over(&p.c)];
    let den = [p.a.clone(), p.b.clone(), p.c.clone()];
    ratio(t, &num, &den, k);
    t.pow(&p.abc(), k).q(k * k - 2 * k);
}

fn liu1_rhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.a), q_over(&p.b), q_over(&p.c)];
    let den = [q(), qp(3).div(&p.abc())];
    ratio(t, &num, &den, k);
    t.q(k);
}

fn liu2_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.a), q_over(&p.b), q_over(&p.c)];
    let den = [p.a.shift(1), p.b.shift(1), p.c.shift(1)];
    ratio(t, &num, &den, k);
    t.pow(&p.abc(), k).q(k * k);
}

fn liu2_rhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.a), q_over(&p.b), q_over(&p.c)];
    let den = [q(), qp(2).div(&p.abc())];
    ratio(t, &num, &den, k);
    t.q(k);
}

// ---------------------------------------------------------------------------
// (q)-factorial forms with a = q^{n+1}, ...

fn lmn_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, min_abc(v))
}

/// `(q)_{l+m+n-k+s} / ((q)_k (q)_{l-k} (q)_{m-k} (q)_{n-k})`
fn lmn_core(t: &mut Term, v: &Vals, k: i64, s: i64) {
    t.qf(v.l + v.m + v.n - k + s)
        .rqf(k)
        .rqf(v.l - k)
        .rqf(v.m - k)
        .rqf(v.n - k);
}

/// `Π_{x ∈ {l,m,n}} 1/((q)_{x-k} (q)_{x+k+s})`
fn lmn_bilateral(t: &mut Term, v: &Vals, k: i64, s: i64) {
    for x in [v.l, v.m, v.n] {
        t.rqf(x - k);
    }
    for x in [v.l, v.m, v.n] {
        t.rqf(x + k + s);
    }
}

/// `(q)_{l+m+s} (q)_{l+n+s} (q)_{m+n+s}`
fn lmn_pairs(t: &mut Term, v: &Vals, s: i64) {
    t.qf(v.l + v.m + s).qf(v.l + v.n + s).qf(v.m + v.n + s);
}

fn lmnrs1_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k);
    lmn_core(t, v, k, 0);
    t.qf(v.u + v.v + k).rqf(v.u + k).rqf(v.v + k);
}

fn lmnrs1_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((5 * k * k - k) / 2);
    lmn_pairs(t, v, 0);
    t.qf(v.u).qf(v.v).qf(v.u + v.v);
    lmn_bilateral(t, v, k, 0);
    t.rqf(v.u - k).rqf(v.v - k).rqf(v.u + k).rqf(v.v + k);
}

fn lmnrs2_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k);
    lmn_core(t, v, k, 1);
    t.qf(v.u + v.v + k + 1).rqf(v.u + k + 1).rqf(v.v + k + 1);
}

fn lmnrs2_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((5 * k * k + 3 * k) / 2);
    lmn_pairs(t, v, 1);
    t.qf(v.u).qf(v.v).qf(v.u + v.v + 1);
    lmn_bilateral(t, v, k, 1);
    t.rqf(v.u - k)
        .rqf(v.v - k)
        .rqf(v.u + k + 1)
        .rqf(v.v + k + 1);
}

fn lmnrs2_rhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min5(v);
    range(-(m + 1), m)
}

fn lmnrs34_rhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let lo = (-min_abc(v)).max(1 - v.u).max(1 - v.v);
    range(lo, min5(v))
}

fn lmnrs34_lhs(t: &mut Term, v: &Vals, k: i64, lin: i64) {
    t.q(k * k + lin * k);
    lmn_core(t, v, k, 0);
    t.qf(v.u + v.v + k - 1).rqf(v.u + k).rqf(v.v + k);
}

fn lmnrs34_rhs(t: &mut Term, v: &Vals, k: i64, lin: i64) {
    t.sign(k).q((5 * k * k - lin * k) / 2);
    lmn_pairs(t, v, 0);
    t.qf(v.u - 1).qf(v.v - 1).qf(v.u + v.v - 1);
    lmn_bilateral(t, v, k, 0);
    t.rqf(v.u - k)
        .rqf(v.v - k)
        .rqf(v.u + k - 1)
        .rqf(v.v + k - 1);
}

fn lmnrs3_lhs(t: &mut Term, v: &Vals, k: i64) {
    lmnrs34_lhs(t, v, k, 0)
}

fn lmnrs3_rhs(t: &mut Term, v: &Vals, k: i64) {
    lmnrs34_rhs(t, v, k, 1)
}

fn lmnrs4_lhs(t: &mut Term, v: &Vals, k: i64) {
    lmnrs34_lhs(t, v, k, 1)
}

fn lmnrs4_rhs(t: &mut Term, v: &Vals, k: i64) {
    lmnrs34_rhs(t, v, k, 3)
}

// Mixed u / v-1 form obtained from the five-parameter family by shifting e.

fn mixed_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let lo = (-min_of(&[v.l, v.m, v.n, v.u])).max(1 - v.v);
    range(lo, min5(v))
}

fn mixed_bilateral(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((5 * k * k - k) / 2);
    lmn_pairs(t, v, 0);
    t.qf(v.u).qf(v.v - 1).qf(v.u + v.v);
    lmn_bilateral(t, v, k, 0);
    t.rqf(v.u - k).rqf(v.v - k).rqf(v.u + k).rqf(v.v + k - 1);
}

// ---------------------------------------------------------------------------
// Companions of the five-parameter family with one denominator unshifted

fn abcde61_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let lo = min_of(&[v.n, v.l + 1, v.m + 1, v.u + 1, v.v + 1]);
    range(-lo, min5(v))
}

fn abcde62_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let lo = min_of(&[v.n + 1, v.l + 1, v.m + 1, v.u + 1, v.v]);
    range(-lo, min5(v))
}

fn abcde61_den(p: &Five) -> Vec<Arg> {
    vec![
        p.a.clone(),
        p.b.shift(1),
        p.c.shift(1),
        p.d.shift(1),
        p.e.shift(1),
    ]
}

fn abcde62_den(p: &Five) -> Vec<Arg> {
    vec![
        p.a.shift(1),
        p.b.shift(1),
        p.c.shift(1),
        p.d.shift(1),
        p.e.clone(),
    ]
}

fn companion_lhs(t: &mut Term, v: &Vals, k: i64, den: fn(&Five) -> Vec<Arg>, drop: i64) {
    let p = Five::new(v, false);
    let num: Vec<Arg> = p.all().iter().map(|x| q_over(x)).collect();
    ratio(t, &num, &den(&p), k);
    t.pow(&p.product().shift(-drop), k);
}

fn abcde61_lhs(t: &mut Term, v: &Vals, k: i64) {
    companion_lhs(t, v, k, abcde61_den, 1)
}

fn abcde63_lhs(t: &mut Term, v: &Vals, k: i64) {
    companion_lhs(t, v, k, abcde61_den, 0)
}

fn abcde62_lhs(t: &mut Term, v: &Vals, k: i64) {
    companion_lhs(t, v, k, abcde62_den, 1)
}

fn abcde64_lhs(t: &mut Term, v: &Vals, k: i64) {
    companion_lhs(t, v, k, abcde62_den, 0)
}

/// `(q, ab, bc, ac)_∞ / (a, bq, cq, abc/q)_∞`
fn abcde61_prefactor(t: &mut Term, v: &Vals) {
    let p = Five::new(v, false);
    t.inf(&q())
        .inf(&p.a.mul(&p.b))
        .inf(&p.b.mul(&p.c))
        .inf(&p.a.mul(&p.c))
        .rinf(&p.a)
        .rinf(&p.b.shift(1))
        .rinf(&p.c.shift(1))
        .rinf(&p.abc().shift(-1));
}

fn abcde63_prefactor(t: &mut Term, v: &Vals) {
    abcde61_prefactor(t, v);
    let p = Five::new(v, false);
    t.pow(&p.a.shift(-1), 1);
}

fn abcde62_prefactor(t: &mut Term, v: &Vals) {
    shifted_prefactor(t, v);
    let p = Five::new(v, false);
    t.one_minus(&p.e, -1);
}

fn abcde64_prefactor(t: &mut Term, v: &Vals) {
    abcde62_prefactor(t, v);
    let p = Five::new(v, false);
    t.pow(&p.e.shift(-1), 1);
}

fn abcde60_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num: Vec<Arg> = p.all().iter().map(|x| q_over(x)).collect();
    let den: Vec<Arg> = p.all().iter().map(|x| x.shift(1)).collect();
    ratio(t, &num, &den, k);
    t.pow(&p.product(), k);
}

fn empty_support(_: &Vals, _: usize) -> Option<(i64, i64)> {
    None
}

fn no_term(_: &mut Term, _: &Vals, _: i64) {}

// a/q in place of a, and e/q in place of e

fn swap_a_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    // 1/(a/q)_k vanishes for k ≤ -n
    let lo = min_of(&[v.n - 1, v.l, v.m, v.u, v.v]);
    range(-lo, min5(v))
}

fn swap_e_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let hi = min_of(&[v.n, v.l, v.m, v.u, cap_if_pos(v.v, 0)]);
    let lo = min_of(&[v.n, v.l, v.m, v.u, cap_if_pos(v.v, -1)]);
    range(-lo, hi)
}

fn swap_a_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, true);
    let num: Vec<Arg> = p.all().iter().map(|x| q_over(x)).collect();
    let den = [
        p.a.shift(-1),
        p.b.clone(),
        p.c.clone(),
        p.d.clone(),
        p.e.clone(),
    ];
    ratio(t, &num, &den, k);
    t.pow(&p.product().shift(-3), k);
}

fn swap_e_rhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, true);
    let num: Vec<Arg> = p.all().iter().map(|x| q_over(x)).collect();
    let den = [
        p.a.clone(),
        p.b.clone(),
        p.c.clone(),
        p.d.clone(),
        p.e.shift(-1),
    ];
    ratio(t, &num, &den, k);
    t.pow(&p.product().shift(-3), k);
}

// ---------------------------------------------------------------------------
// e → 0 and a → ∞ limits

fn bcde1_lhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min_of(&[v.n, v.l, v.m, v.u]);
    range(-m, m)
}

fn bc_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, v.l.min(v.m))
}

fn bcde1_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.a), q_over(&p.b), q_over(&p.c), q_over(&p.d)];
    let den = [p.a.clone(), p.b.clone(), p.c.clone(), p.d.clone()];
    ratio(t, &num, &den, k);
    let abcd = p.abc().mul(&p.d);
    t.sign(k).pow(&abcd, k).q((k * k - 5 * k) / 2);
}

fn bcde1_prefactor(t: &mut Term, v: &Vals) {
    let p = Five::new(v, false);
    t.inf(&q())
        .inf(&p.b.mul(&p.c).shift(-1))
        .rinf(&p.b)
        .rinf(&p.c);
}

fn bcde1_rhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.b), q_over(&p.c), p.a.mul(&p.d).shift(-1)];
    let den = [q(), p.d.clone(), p.a.clone()];
    ratio(t, &num, &den, k);
    t.pow(&p.b.mul(&p.c).shift(-1), k);
}

fn bcde2_lhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min_of(&[v.l, v.m, v.u, v.v]);
    range(-(m + 1), m)
}

fn bcde2_lhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.b), q_over(&p.c), q_over(&p.d), q_over(&p.e)];
    let den = [p.b.shift(1), p.c.shift(1), p.d.shift(1), p.e.shift(1)];
    ratio(t, &num, &den, k);
    let bcde = p.b.mul(&p.c).mul(&p.d).mul(&p.e);
    t.sign(k).pow(&bcde, k).q((k * k - k) / 2);
}

fn bcde2_prefactor(t: &mut Term, v: &Vals) {
    let p = Five::new(v, false);
    t.inf(&q())
        .inf(&p.b.mul(&p.c))
        .rinf(&p.b.shift(1))
        .rinf(&p.c.shift(1));
}

fn bcde2_rhs(t: &mut Term, v: &Vals, k: i64) {
    let p = Five::new(v, false);
    let num = [q_over(&p.b), q_over(&p.c), p.d.mul(&p.e)];
    let den = [q(), p.d.shift(1), p.e.shift(1)];
    ratio(t, &num, &den, k);
    t.pow(&p.b.mul(&p.c), k);
}

fn cor52_lhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let hi = min_of(&[v.l, v.m, cap_if_pos(v.u, 0), cap_if_pos(v.v, 0)]);
    let lo = min_of(&[v.l, v.m, cap_if_pos(v.u, -1), cap_if_pos(v.v, -1)]);
    range(-lo, hi)
}

fn cor52_lhs(t: &mut Term, v: &Vals, k: i64, lin: i64) {
    let p = Five::new(v, true);
    let num = [q_over(&p.b), q_over(&p.c), q_over(&p.d), q_over(&p.e)];
    let den = [p.b.clone(), p.c.clone(), p.d.shift(-1), p.e.shift(-1)];
    ratio(t, &num, &den, k);
    let bcde = p.b.mul(&p.c).mul(&p.d).mul(&p.e);
    t.sign(k).pow(&bcde, k).q((k * k - lin * k) / 2);
}

fn cor52_rhs(t: &mut Term, v: &Vals, k: i64, drop: i64) {
    let p = Five::new(v, true);
    let num = [q_over(&p.b), q_over(&p.c), p.d.mul(&p.e).shift(-2)];
    let den = [q(), p.d.clone(), p.e.clone()];
    ratio(t, &num, &den, k);
    t.pow(&p.b.mul(&p.c).shift(-drop), k);
}

fn cor52a_lhs(t: &mut Term, v: &Vals, k: i64) {
    cor52_lhs(t, v, k, 5)
}

fn cor52a_rhs(t: &mut Term, v: &Vals, k: i64) {
    cor52_rhs(t, v, k, 1)
}

fn cor52b_lhs(t: &mut Term, v: &Vals, k: i64) {
    cor52_lhs(t, v, k, 7)
}

fn cor52b_rhs(t: &mut Term, v: &Vals, k: i64) {
    cor52_rhs(t, v, k, 0)
}

// ---------------------------------------------------------------------------
// v → ∞

fn lmnu_sym_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min_of(&[v.l, v.m, v.n, v.u]);
    range(-m, m)
}

fn lmnu_shifted_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let m = min_of(&[v.l, v.m, v.n, v.u]);
    range(-(m + 1), m)
}

fn lmnu_minus_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    let lo = (-min_abc(v)).max(1 - v.u);
    range(lo, min_of(&[v.l, v.m, v.n, v.u]))
}

fn lmnr1_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k);
    lmn_core(t, v, k, 0);
    t.rqf(v.u + k);
}

fn lmnr1_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((5 * k * k - k) / 2);
    lmn_pairs(t, v, 0);
    t.qf(v.u);
    lmn_bilateral(t, v, k, 0);
    t.rqf(v.u - k).rqf(v.u + k);
}

fn lmnr2_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k);
    lmn_core(t, v, k, 1);
    t.rqf(v.u + k + 1);
}

fn lmnr2_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((5 * k * k + 3 * k) / 2);
    lmn_pairs(t, v, 1);
    t.qf(v.u);
    lmn_bilateral(t, v, k, 1);
    t.rqf(v.u - k).rqf(v.u + k + 1);
}

fn lmnr34_lhs(t: &mut Term, v: &Vals, k: i64, lin: i64) {
    t.q(k * k + lin * k);
    lmn_core(t, v, k, 0);
    t.rqf(v.u + k);
}

fn lmnr34_rhs(t: &mut Term, v: &Vals, k: i64, lin: i64) {
    t.sign(k).q((5 * k * k - lin * k) / 2);
    lmn_pairs(t, v, 0);
    t.qf(v.u - 1);
    lmn_bilateral(t, v, k, 0);
    t.rqf(v.u - k).rqf(v.u + k - 1);
}

fn lmnr3_lhs(t: &mut Term, v: &Vals, k: i64) {
    lmnr34_lhs(t, v, k, 0)
}

fn lmnr3_rhs(t: &mut Term, v: &Vals, k: i64) {
    lmnr34_rhs(t, v, k, 1)
}

fn lmnr4_lhs(t: &mut Term, v: &Vals, k: i64) {
    lmnr34_lhs(t, v, k, 1)
}

fn lmnr4_rhs(t: &mut Term, v: &Vals, k: i64) {
    lmnr34_rhs(t, v, k, 3)
}

// ---------------------------------------------------------------------------
// q → 1/q images of the v → ∞ forms

fn qinv_lhs_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, min_abc(v))
}

fn qinv1_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + v.u * k);
    lmn_core(t, v, k, 0);
    t.rqf(v.u + k);
}

fn qinv1_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((3 * k * k - k) / 2);
    lmn_pairs(t, v, 0);
    t.qf(v.u);
    lmn_bilateral(t, v, k, 0);
    t.rqf(v.u - k).rqf(v.u + k);
}

fn qinv2_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + (v.u + 1) * k);
    lmn_core(t, v, k, 1);
    t.rqf(v.u + k + 1);
}

fn qinv2_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.sign(k).q((3 * k * k + k) / 2);
    lmn_pairs(t, v, 1);
    t.qf(v.u);
    lmn_bilateral(t, v, k, 1);
    t.rqf(v.u - k).rqf(v.u + k + 1);
}

fn qinv3_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + v.u * k);
    lmn_core(t, v, k, 0);
    t.rqf(v.u + k);
}

fn qinv34_rhs(t: &mut Term, v: &Vals, k: i64, lin: i64) {
    t.sign(k).q((3 * k * k + lin * k) / 2);
    lmn_pairs(t, v, 0);
    t.qf(v.u - 1);
    lmn_bilateral(t, v, k, 0);
    t.rqf(v.u - k).rqf(v.u + k - 1);
}

fn qinv3_rhs(t: &mut Term, v: &Vals, k: i64) {
    qinv34_rhs(t, v, k, -1)
}

fn qinv4_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + (v.u - 1) * k);
    lmn_core(t, v, k, 0);
    t.rqf(v.u + k);
}

fn qinv4_rhs(t: &mut Term, v: &Vals, k: i64) {
    qinv34_rhs(t, v, k, 1)
}

// ---------------------------------------------------------------------------
// Symmetry of the denominators, and the Euler-type limits

fn luv_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, min_of(&[v.l, v.u, v.v]))
}

fn lmnrs5_lhs_pre(t: &mut Term, v: &Vals) {
    t.rqf(v.l + v.m).rqf(v.l + v.n).rqf(v.u).rqf(v.v);
}

fn lmnrs5_rhs_pre(t: &mut Term, v: &Vals) {
    t.rqf(v.l + v.u).rqf(v.l + v.v).rqf(v.m).rqf(v.n);
}

fn lmnrs5_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k)
        .qf(v.l + v.u + v.v - k)
        .qf(v.m + v.n + k)
        .rqf(k)
        .rqf(v.l - k)
        .rqf(v.u - k)
        .rqf(v.v - k)
        .rqf(v.m + k)
        .rqf(v.n + k);
}

fn lmnrs6_lhs_pre(t: &mut Term, v: &Vals) {
    t.rqf(v.l + v.m + 1).rqf(v.l + v.n + 1).rqf(v.u).rqf(v.v);
}

fn lmnrs6_rhs_pre(t: &mut Term, v: &Vals) {
    t.rqf(v.l + v.u + 1).rqf(v.l + v.v + 1).rqf(v.m).rqf(v.n);
}

fn lmnrs6_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k)
        .qf(v.l + v.u + v.v - k + 1)
        .qf(v.m + v.n + k + 1)
        .rqf(k)
        .rqf(v.l - k)
        .rqf(v.u - k)
        .rqf(v.v - k)
        .rqf(v.m + k + 1)
        .rqf(v.n + k + 1);
}

fn mn_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, v.m.min(v.n))
}

fn n_support(v: &Vals, _: usize) -> Option<(i64, i64)> {
    range(0, v.n)
}

fn squares_support(_: &Vals, trunc: usize) -> Option<(i64, i64)> {
    range(0, valuation_cap(trunc, 0))
}

fn oblong_support(_: &Vals, trunc: usize) -> Option<(i64, i64)> {
    range(0, valuation_cap(trunc, 1))
}

fn euler_pre(t: &mut Term, _: &Vals) {
    t.rinf(&q());
}

fn mn_pre(t: &mut Term, v: &Vals) {
    t.rqf(v.m).rqf(v.n);
}

fn n_pre(t: &mut Term, v: &Vals) {
    t.rqf(v.n);
}

fn eulermn1_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k).rqf(k).rqf(v.n - k).rqf(v.m - k);
}

fn eulermn1_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k)
        .qf(v.m + v.n + k)
        .rqf(k)
        .rqf(v.m + k)
        .rqf(v.n + k);
}

fn eulermn2_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k).rqf(k).rqf(v.n - k).rqf(v.m - k);
}

fn eulermn2_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k)
        .qf(v.m + v.n + k + 1)
        .rqf(k)
        .rqf(v.m + k + 1)
        .rqf(v.n + k + 1);
}

fn eulern1_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k).rqf(k).rqf(v.n - k);
}

fn eulern1_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k).rqf(k).rqf(v.n + k);
}

fn eulern2_lhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k).rqf(k).rqf(v.n - k);
}

fn eulern2_rhs(t: &mut Term, v: &Vals, k: i64) {
    t.q(k * k + k).rqf(k).rqf(v.n + k + 1);
}

// ---------------------------------------------------------------------------
// Registry table

#[allow(clippy::too_many_lines)]
pub(super) fn all() -> Vec<IdentityRecord> {
    let rec = |id: &'static str, citation: &'static str, params: Vec<ParamSpec>, lhs, rhs| {
        IdentityRecord {
            id,
            citation,
            params,
            lhs,
            rhs,
        }
    };
    let n_only = |hi| vec![ps(Var::N, 0, 0, hi)];
    let lmnu = |u_min| {
        vec![
            ps(Var::L, 0, 0, 4),
            ps(Var::M, 0, 0, 4),
            ps(Var::N, 0, 0, 4),
            ps(Var::U, u_min, u_min, 4),
        ]
    };
    let nlmu = vec![
        ps(Var::N, 0, 0, 4),
        ps(Var::L, 0, 0, 4),
        ps(Var::M, 0, 0, 4),
        ps(Var::U, 0, 0, 4),
    ];
    let lmuv = |uv_min| {
        vec![
            ps(Var::L, 0, 0, 4),
            ps(Var::M, 0, 0, 4),
            ps(Var::U, uv_min, uv_min, 4),
            ps(Var::V, uv_min, uv_min, 4),
        ]
    };
    let nlm = vec![
        ps(Var::N, 0, 0, 5),
        ps(Var::L, 0, 0, 5),
        ps(Var::M, 0, 0, 5),
    ];
    let remark_params = vec![
        ps(Var::L, 0, 0, 3),
        ps(Var::M, 0, 0, 3),
        ps(Var::N, 0, 0, 3),
        ps(Var::U, 0, 0, 3),
        ps(Var::V, 1, 1, 3),
    ];
    vec![
        rec(
            "ANDREWS1",
            "Andrews' finite form of the first Rogers-Ramanujan identity",
            n_only(12),
            side(andrews_lhs_support, None, andrews1_lhs),
            side(andrews_rhs_support, None, andrews1_rhs),
        ),
        rec(
            "ANDREWS2",
            "Andrews' finite form of the second Rogers-Ramanujan identity",
            n_only(12),
            side(andrews_lhs_support, None, andrews2_lhs),
            side(andrews_rhs_support, None, andrews2_rhs),
        ),
        rec(
            "ABCDE1",
            "bilateral five-parameter sum, well-poised in a,b,c,d,e (limit a -> 1 of Watson's q-Whipple transformation)",
            nlmuv(0),
            side(sym_support, None, abcde1_lhs),
            side(abc_support, Some(well_poised_prefactor), abcde1_rhs),
        ),
        rec(
            "ABCDE2",
            "bilateral five-parameter sum with shifted denominators (limit a -> q of Watson's q-Whipple transformation)",
            nlmuv(0),
            side(shifted_support, None, abcde2_lhs),
            side(abc_support, Some(shifted_prefactor), shifted_rhs_term),
        ),
        rec(
            "LIU1",
            "d, e -> 0 limit of the well-poised five-parameter sum",
            nlm.clone(),
            side(liu_sym_support, None, liu1_lhs),
            side(abc_support, Some(well_poised_prefactor), liu1_rhs),
        ),
        rec(
            "LIU2",
            "d, e -> 0 limit of the shifted five-parameter sum",
            nlm,
            side(liu_shifted_support, None, liu2_lhs),
            side(abc_support, Some(shifted_prefactor), liu2_rhs),
        ),
        rec(
            "LMNRS1",
            "q-factorial form of the well-poised five-parameter sum",
            lmnuv(0),
            side(lmn_support, None, lmnrs1_lhs),
            side(sym_support, None, lmnrs1_rhs),
        ),
        rec(
            "LMNRS2",
            "q-factorial form of the shifted five-parameter sum",
            lmnuv(0),
            side(lmn_support, None, lmnrs2_lhs),
            side(lmnrs2_rhs_support, None, lmnrs2_rhs),
        ),
        rec(
            "ABCDE3",
            "non-well-poised five-parameter sum with d/q, e/q denominators",
            nlmuv(0),
            side(abcde3_support, None, abcde3_lhs),
            side(abc_support, Some(well_poised_prefactor), abcde3_rhs),
        ),
        rec(
            "ABCDE4",
            "non-well-poised five-parameter sum, q^{2k} companion",
            nlmuv(0),
            side(abcde3_support, None, abcde4_lhs),
            side(abc_support, Some(well_poised_prefactor), abcde4_rhs),
        ),
        rec(
            "LMNRS3",
            "q-factorial form of the non-well-poised sum",
            lmnuv(1),
            side(lmn_support, None, lmnrs3_lhs),
            side(lmnrs34_rhs_support, None, lmnrs3_rhs),
        ),
        rec(
            "LMNRS4",
            "q-factorial form of the non-well-poised q^{2k} companion",
            lmnuv(1),
            side(lmn_support, None, lmnrs4_lhs),
            side(lmnrs34_rhs_support, None, lmnrs4_rhs),
        ),
        rec(
            "REMARK31",
            "mixed form with (q)_u (q)_{v-1} (q)_{u+v} obtained by splitting 1/(q)_{v+k-1}",
            remark_params.clone(),
            side(lmn_support, None, lmnrs1_lhs),
            side(mixed_support, None, mixed_bilateral),
        ),
        rec(
            "ABCDE6_1",
            "five-parameter sum with only a unshifted in the denominator",
            nlmuv(0),
            side(abcde61_support, None, abcde61_lhs),
            side(abc_support, Some(abcde61_prefactor), shifted_rhs_term),
        ),
        rec(
            "ABCDE60",
            "vanishing bilateral sum with (abcde)^k",
            nlmuv(0),
            side(shifted_support, None, abcde60_lhs),
            side(empty_support, None, no_term),
        ),
        rec(
            "ABCDE6_3",
            "five-parameter sum with only a unshifted, (abcde)^k weight",
            nlmuv(0),
            side(abcde61_support, None, abcde63_lhs),
            side(abc_support, Some(abcde63_prefactor), shifted_rhs_term),
        ),
        rec(
            "ABCDE6_2",
            "five-parameter sum with only e unshifted in the denominator",
            nlmuv(0),
            side(abcde62_support, None, abcde62_lhs),
            side(abc_support, Some(abcde62_prefactor), shifted_rhs_term),
        ),
        rec(
            "ABCDE6_4",
            "five-parameter sum with only e unshifted, (abcde)^k weight",
            nlmuv(0),
            side(abcde62_support, None, abcde64_lhs),
            side(abc_support, Some(abcde64_prefactor), shifted_rhs_term),
        ),
        rec(
            "SEC33SWAP",
            "moving the 1/q shift from a to e in the non-well-poised bilateral sum",
            nlmuv(1),
            side(swap_a_support, None, swap_a_lhs),
            side(swap_e_support, None, swap_e_rhs),
        ),
        rec(
            "SEC33ABCDE",
            "bilateral sum with a/q in the denominator against the well-poised product side",
            nlmuv(1),
            side(swap_a_support, None, swap_a_lhs),
            side(abc_support, Some(well_poised_prefactor), abcde1_rhs),
        ),
        rec(
            "SEC33FINAL",
            "q-factorial form of the a/q bilateral sum",
            remark_params,
            side(mixed_support, None, mixed_bilateral),
            side(lmn_support, None, lmnrs1_lhs),
        ),
        rec(
            "BCDE1",
            "e -> 0 limit of the well-poised five-parameter sum",
            nlmu,
            side(bcde1_lhs_support, None, bcde1_lhs),
            side(bc_support, Some(bcde1_prefactor), bcde1_rhs),
        ),
        rec(
            "BCDE2",
            "e -> 0 limit of the shifted five-parameter sum",
            lmuv(0),
            side(bcde2_lhs_support, None, bcde2_lhs),
            side(bc_support, Some(bcde2_prefactor), bcde2_rhs),
        ),
        rec(
            "COR52A",
            "a -> infinity limit of the non-well-poised sum",
            lmuv(0),
            side(cor52_lhs_support, None, cor52a_lhs),
            side(bc_support, Some(bcde1_prefactor), cor52a_rhs),
        ),
        rec(
            "COR52B",
            "a -> infinity limit of the non-well-poised q^{2k} companion",
            lmuv(0),
            side(cor52_lhs_support, None, cor52b_lhs),
            side(bc_support, Some(bcde1_prefactor), cor52b_rhs),
        ),
        rec(
            "LMNR1",
            "v -> infinity limit of the first q-factorial form",
            lmnu(0),
            side(lmn_support, None, lmnr1_lhs),
            side(lmnu_sym_support, None, lmnr1_rhs),
        ),
        rec(
            "LMNR2",
            "v -> infinity limit of the second q-factorial form",
            lmnu(0),
            side(lmn_support, None, lmnr2_lhs),
            side(lmnu_shifted_support, None, lmnr2_rhs),
        ),
        rec(
            "LMNR3",
            "v -> infinity limit of the third q-factorial form",
            lmnu(1),
            side(lmn_support, None, lmnr3_lhs),
            side(lmnu_minus_support, None, lmnr3_rhs),
        ),
        rec(
            "LMNR4",
            "v -> infinity limit of the fourth q-factorial form",
            lmnu(1),
            side(lmn_support, None, lmnr4_lhs),
            side(lmnu_minus_support, None, lmnr4_rhs),
        ),
        rec(
            "QINV1",
            "q -> 1/q image of the first v -> infinity form",
            lmnu(0),
            side(qinv_lhs_support, None, qinv1_lhs),
            side(lmnu_sym_support, None, qinv1_rhs),
        ),
        rec(
            "QINV2",
            "q -> 1/q image of the second v -> infinity form",
            lmnu(0),
            side(qinv_lhs_support, None, qinv2_lhs),
            side(lmnu_shifted_support, None, qinv2_rhs),
        ),
        rec(
            "QINV3",
            "q -> 1/q image of the third v -> infinity form",
            lmnu(1),
            side(qinv_lhs_support, None, qinv3_lhs),
            side(lmnu_minus_support, None, qinv3_rhs),
        ),
        rec(
            "QINV4",
            "q -> 1/q image of the fourth v -> infinity form",
            lmnu(1),
            side(qinv_lhs_support, None, qinv4_lhs),
            side(lmnu_minus_support, None, qinv4_rhs),
        ),
        rec(
            "LMNRS5",
            "exchange symmetry (m,n) <-> (u,v) of the first q-factorial form",
            lmnuv(0),
            side(lmn_support, Some(lmnrs5_lhs_pre), lmnrs1_lhs),
            side(luv_support, Some(lmnrs5_rhs_pre), lmnrs5_rhs),
        ),
        rec(
            "LMNRS6",
            "exchange symmetry (m,n) <-> (u,v) of the second q-factorial form",
            lmnuv(0),
            side(lmn_support, Some(lmnrs6_lhs_pre), lmnrs2_lhs),
            side(luv_support, Some(lmnrs6_rhs_pre), lmnrs6_rhs),
        ),
        rec(
            "EULERMN1",
            "two-parameter Euler-type identity with q^{k^2}",
            vec![ps(Var::M, 0, 0, 8), ps(Var::N, 0, 0, 8)],
            side(mn_support, Some(euler_pre), eulermn1_lhs),
            side(squares_support, Some(mn_pre), eulermn1_rhs),
        ),
        rec(
            "EULERMN2",
            "two-parameter Euler-type identity with q^{k^2+k}",
            vec![ps(Var::M, 0, 0, 8), ps(Var::N, 0, 0, 8)],
            side(mn_support, Some(euler_pre), eulermn2_lhs),
            side(oblong_support, Some(mn_pre), eulermn2_rhs),
        ),
        rec(
            "EULERN1",
            "one-parameter Euler-type identity with q^{k^2}",
            n_only(12),
            side(n_support, Some(euler_pre), eulern1_lhs),
            side(squares_support, Some(n_pre), eulern1_rhs),
        ),
        rec(
            "EULERN2",
            "one-parameter Euler-type identity with q^{k^2+k}",
            n_only(12),
            side(n_support, Some(euler_pre), eulern2_lhs),
            side(oblong_support, Some(n_pre), eulern2_rhs),
        ),
    ]
}
