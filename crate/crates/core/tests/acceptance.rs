//! Acceptance run: every criterion prints one PASS/FAIL line, then the
//! test asserts that all of them passed.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use qrr::bailey::{
    bailey_step, chain_reproduce, lattice_seed, lattice_step, symmetrized_identity, unit_bilateral,
    unit_pair_x1, unit_pair_xq, verify_bilateral_pair, verify_pair, BaileyPair, ChainParams,
    ChainTarget, SymMode,
};
use qrr::binomial::{
    bino4_check, bino5_check, cor57_check, cor58_checks, divisibility_check,
    general_alt_sum_divisibility,
};
use qrr::identity::{
    liu_counterexample, rr_limit_check, IdentityRecord, LiuForm, Mutation, ParamGrid, Registry,
    SideId,
};
use qrr::pochhammer::{rr_product_side, RrProduct};
use qrr::telescoping::{verify_quartic_identity, verify_sk_tk, verify_telescoping, Params};
use qrr::MonomialParam;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Every parameter of `rec` over `[max(min, lo), hi]`.
fn box_grid(rec: &IdentityRecord, lo: i64, hi: i64, trunc: usize) -> ParamGrid {
    rec.params.iter().fold(ParamGrid::new(trunc), |g, p| {
        g.with(p.var, p.min.max(lo), hi)
    })
}

/// Verifies each listed record on its grid; returns (points, failures).
fn sweep(
    reg: &Registry,
    ids: &[&str],
    grid: impl Fn(&IdentityRecord) -> ParamGrid,
) -> (usize, Vec<String>) {
    let mut points = 0;
    let mut failures = Vec::new();
    for id in ids {
        let rec = reg.get(id).unwrap();
        match rec.verify_grid_with(&grid(rec), None) {
            Ok(reports) => {
                points += reports.len();
                failures.extend(
                    reports
                        .iter()
                        .filter(|r| !r.passed())
                        .map(|r| r.to_string()),
                );
            }
            Err(e) => failures.push(format!("{id}: {e}")),
        }
    }
    (points, failures)
}

fn sweep_outcome(points: usize, failures: &[String]) -> Outcome {
    let mut detail = format!("{points} points, {} failed", failures.len());
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    outcome(failures.is_empty() && points > 0, detail)
}

/// Number of partitions of each `n ≤ max` into parts from `residues` mod 5.
fn partitions_mod5(residues: [usize; 2], max: usize) -> Vec<BigInt> {
    let mut count = vec![BigInt::from(0); max + 1];
    count[0] = BigInt::from(1);
    for part in (1..=max).filter(|p| residues.contains(&(p % 5))) {
        for n in part..=max {
            let prev = count[n - part].clone();
            count[n] += prev;
        }
    }
    count
}

fn rogers_ramanujan() -> Outcome {
    let trunc = 50;
    let mut ok = true;
    let mut notes = Vec::new();
    for (which, residues) in [(RrProduct::Mod5_14, [1, 4]), (RrProduct::Mod5_23, [2, 3])] {
        let r = rr_limit_check(which, trunc);
        ok &= r.passed();
        let product = rr_product_side(which, trunc);
        let oracle = partitions_mod5(residues, trunc);
        let agree =
            (0..=trunc).all(|i| product.coeff(i) == BigRational::from_integer(oracle[i].clone()));
        ok &= agree;
        notes.push(format!(
            "{}: {} (partition oracle {})",
            r.id,
            if r.passed() { "equal" } else { "MISMATCH" },
            if agree { "agrees" } else { "DISAGREES" }
        ));
    }
    outcome(ok, notes.join("; "))
}

fn andrews(reg: &Registry) -> Outcome {
    let (p, f) = sweep(reg, &["ANDREWS1", "ANDREWS2"], |_| {
        ParamGrid::new(60).with(qrr::identity::Var::N, 0, 12)
    });
    sweep_outcome(p, &f)
}

fn finite_forms(reg: &Registry) -> Outcome {
    let (p, f) = sweep(reg, &["LMNRS1", "LMNRS2", "LMNRS3", "LMNRS4"], |r| {
        box_grid(r, 0, 3, 40)
    });
    sweep_outcome(p, &f)
}

fn five_parameter_family(reg: &Registry) -> Outcome {
    let ids = [
        "ABCDE6_1",
        "ABCDE6_2",
        "ABCDE6_3",
        "ABCDE6_4",
        "ABCDE60",
        "SEC33FINAL",
        "REMARK31",
    ];
    let (p, mut f) = sweep(reg, &ids, |r| box_grid(r, 0, 3, 40));
    let zero = reg.get("ABCDE60").unwrap();
    for v in zero.assignments(&box_grid(zero, 0, 3, 40)).unwrap() {
        if !zero.eval_side(SideId::Lhs, &v, 40).unwrap().is_zero() {
            f.push(format!("ABCDE60 not identically zero at {v:?}"));
        }
    }
    sweep_outcome(p, &f)
}

fn catalog(reg: &Registry) -> Outcome {
    let ids = [
        "BCDE1", "BCDE2", "COR52A", "COR52B", "LMNR1", "LMNR2", "LMNR3", "LMNR4", "QINV1", "QINV2",
        "QINV3", "QINV4", "LMNRS5", "LMNRS6", "EULERMN1", "EULERMN2", "EULERN1", "EULERN2",
    ];
    let (p, mut f) = sweep(reg, &ids, |r| r.default_grid(40));
    // Finite forms with the dropped parameter at T against their limits.
    let trunc = 40;
    let mut limit_points = 0;
    for i in 1..=4 {
        let full = reg.get(&format!("LMNRS{i}")).unwrap();
        let limit = reg.get(&format!("LMNR{i}")).unwrap();
        for w in limit.assignments(&limit.default_grid(trunc)).unwrap() {
            let mut v = w;
            v.v = trunc as i64;
            for side in [SideId::Lhs, SideId::Rhs] {
                limit_points += 1;
                if full.eval_side(side, &v, trunc).unwrap()
                    != limit.eval_side(side, &w, trunc).unwrap()
                {
                    f.push(format!("{} {side:?} limit differs at {w:?}", limit.id));
                }
            }
        }
    }
    let mut o = sweep_outcome(p, &f);
    o.detail
        .push_str(&format!(", {limit_points} limit comparisons"));
    o
}

fn mp(e: i64) -> MonomialParam {
    MonomialParam::q_pow(e)
}

fn bailey_machinery(reg: &Registry) -> Outcome {
    let (trunc, n_max) = (40, 10);
    let mut failures = Vec::new();
    let units = [unit_pair_x1(), unit_pair_xq(), lattice_seed()];
    for p in &units {
        let r = verify_pair(p, n_max, trunc);
        if !r.passed() {
            failures.push(r.to_string());
        }
    }
    for mode in [SymMode::X1, SymMode::Xq] {
        let p = unit_bilateral(mode);
        let r = verify_bilateral_pair(&p, n_max, trunc);
        if !r.passed() {
            failures.push(r.to_string());
        }
        for big_n in 0..=3 {
            let r = symmetrized_identity(&p, &mp(-1), &mp(-2), big_n, trunc);
            if !r.passed() {
                failures.push(r.to_string());
            }
        }
    }

    // Closure: stepped pairs are pairs again.
    let (closure_n, closure_t) = (6, 30);
    let rhos: Vec<(i64, i64)> = (-3..=0)
        .flat_map(|a| (a..=0).map(move |b| (a, b)))
        .collect();
    let mut closures = 0;
    let mut check = |p: &BaileyPair, failures: &mut Vec<String>| {
        closures += 1;
        let r = verify_pair(p, closure_n, closure_t);
        if !r.passed() {
            failures.push(r.to_string());
        }
    };
    for p in &units {
        for (a, b) in &rhos {
            match bailey_step(p, &mp(*a), &mp(*b)) {
                Ok(s) => check(&s, &mut failures),
                Err(e) => failures.push(format!("step {} ({a},{b}): {e}", p.label)),
            }
        }
    }
    for (a, b) in &rhos {
        let stepped = bailey_step(&lattice_seed(), &mp(*a), &mp(*b)).unwrap();
        for (c, d) in [(-1, 0), (0, 0), (-2, -1)] {
            match lattice_step(&stepped, &mp(c), &mp(d)) {
                Ok(l) => check(&l, &mut failures),
                Err(e) => failures.push(format!("lattice ({a},{b}),({c},{d}): {e}")),
            }
        }
    }

    // Two-step chains against the registry records they reproduce.
    let mut chains = 0;
    for target in [
        ChainTarget::Abcde1,
        ChainTarget::Abcde2,
        ChainTarget::Abcde3,
    ] {
        for big_n in 0..=4 {
            for b in 1..=3 {
                for c in 1..=3 {
                    for d in 1..=3 {
                        for e in 1..=3 {
                            chains += 1;
                            let cp = ChainParams { big_n, b, c, d, e };
                            let r = chain_reproduce(target, &cp, trunc);
                            if !r.passed() {
                                failures.push(r.to_string());
                            }
                        }
                    }
                }
            }
        }
    }
    let direct = sweep(reg, &["ABCDE1", "ABCDE2", "ABCDE3"], |r| {
        r.params.iter().fold(ParamGrid::new(trunc), |g, p| {
            let hi = if p.var == qrr::identity::Var::N { 4 } else { 2 };
            g.with(p.var, p.min.max(0), hi)
        })
    });
    failures.extend(direct.1);
    let ok = failures.is_empty() && closures >= 20;
    let mut detail = format!(
        "5 unit pairs, {closures} closure combinations, {chains} chains, {} direct points, {} failed",
        direct.0,
        failures.len()
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    outcome(ok, detail)
}

fn telescoping() -> Outcome {
    let trunc = 40;
    let mut points = 0;
    let mut failures = Vec::new();
    for l in 0..=3 {
        for m in 0..=3 {
            for n in 0..=3 {
                for u in 1..=3 {
                    for v in 1..=3 {
                        points += 1;
                        let p = Params::new(l, m, n, u, v);
                        match verify_telescoping(&p, trunc) {
                            Ok(c) if c.passed() && c.partial_sums_hold => {}
                            Ok(c) => failures.push(format!(
                                "telescope {}: {}",
                                p.assignment(),
                                c.verdict.name()
                            )),
                            Err(e) => failures.push(format!("telescope {}: {e}", p.assignment())),
                        }
                        let r = verify_sk_tk(&p, trunc);
                        if !r.passed() {
                            failures.push(r.to_string());
                        }
                    }
                }
            }
        }
    }
    let q = verify_quartic_identity();
    if !q.passed() {
        failures.push(q.to_string());
    }
    let mut detail = format!(
        "{points} points, quartic {}, {} failed",
        if q.passed() { "equal" } else { "MISMATCH" },
        failures.len()
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    outcome(failures.is_empty(), detail)
}

/// All lists of length `len` with entries in `[0, hi]`.
fn lists(len: usize, hi: i64) -> Vec<Vec<i64>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|l| {
                (0..=hi).map(move |x| {
                    let mut next = l.clone();
                    next.push(x);
                    next
                })
            })
            .collect()
    })
}

fn binomial() -> Outcome {
    let mut checks = 0;
    let mut failures = Vec::new();
    for l in 0..=4 {
        for m in 0..=4 {
            for n in 0..=4 {
                for u in 0..=4 {
                    for v in 0..=4 {
                        let r = cor57_check(l, m, n, u, v);
                        checks += 3;
                        if !r.holds {
                            failures.push(r.to_string());
                        }
                        for r in cor58_checks(l, m, n, u, v) {
                            if !r.holds {
                                failures.push(r.to_string());
                            }
                        }
                    }
                }
            }
        }
    }
    for n in 0..=20 {
        for r in [bino5_check(n), bino4_check(n)] {
            checks += 1;
            if !r.holds {
                failures.push(r.to_string());
            }
        }
        for power in [4, 5] {
            checks += 1;
            let d = divisibility_check(n, power);
            if !d.holds() {
                failures.push(format!("{} {:?}", d.id, d.params));
            }
        }
    }
    for len in 1..=5 {
        for ns in lists(len, 3) {
            checks += 1;
            match general_alt_sum_divisibility(&ns) {
                Ok(d) if d.holds() => {}
                Ok(d) => failures.push(format!("cyclic {ns:?}: {:?}", d.params)),
                Err(e) => failures.push(format!("cyclic {ns:?}: {e}")),
            }
        }
    }
    let mut detail = format!("{checks} checks, {} failed", failures.len());
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    outcome(failures.is_empty(), detail)
}

fn counterexample() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for a_exp in 1..=3 {
        match liu_counterexample(LiuForm::Liu1, a_exp, 20) {
            Ok(r) => {
                let at_zero = r.mismatch_index == Some(0) && r.rhs.is_zero();
                ok &= r.reproduced() && at_zero;
                notes.push(format!("a=q^{a_exp}: mismatch at {:?}", r.mismatch_index));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("a=q^{a_exp}: {e}"));
            }
        }
    }
    // At a = q^2 the left side is exactly 1 - q.
    let r = liu_counterexample(LiuForm::Liu1, 2, 20).unwrap();
    let one_minus_q = qrr::TruncatedSeries::from_ints(&[1, -1], 20);
    ok &= r.lhs == one_minus_q;
    outcome(ok, notes.join(", "))
}

/// A perturbation that leaves every grid point equal at a low order and,
/// when rechecked at a higher order, still does.
struct Invisible {
    id: &'static str,
    mutation: Mutation,
}

fn negative_controls(reg: &Registry) -> Outcome {
    let (trunc, recheck) = (12, 30);
    let mut slots = 0;
    let mut perturbations = 0;
    let mut undetected_slots = Vec::new();
    let mut invisible = Vec::new();
    for rec in reg.records() {
        let grid = rec.default_grid(trunc);
        let first = rec.assignments(&grid).unwrap()[0];
        let muts = rec.unit_mutations(&first);
        for pair in muts.chunks(2) {
            slots += 1;
            let mut seen = false;
            for m in pair {
                perturbations += 1;
                let hit = rec.mutation_detected(&grid, m).unwrap()
                    || rec
                        .mutation_detected(&rec.default_grid(recheck), m)
                        .unwrap();
                if hit {
                    seen = true;
                } else {
                    invisible.push(Invisible {
                        id: rec.id,
                        mutation: *m,
                    });
                }
            }
            if !seen {
                undetected_slots.push(format!("{} {:?}", rec.id, pair[0]));
            }
        }
    }
    let listed: Vec<String> = invisible
        .iter()
        .map(|i| {
            format!(
                "{} {} {:?} slot {} {:+}",
                i.id,
                i.mutation.side.name(),
                i.mutation.part,
                i.mutation.slot,
                i.mutation.delta
            )
        })
        .collect();
    let mut detail = format!(
        "{slots} exponent slots, {perturbations} perturbations, {} slots undetected in both directions, \
         {} one-sided perturbations that are themselves valid identities",
        undetected_slots.len(),
        invisible.len()
    );
    if !listed.is_empty() {
        detail.push_str(&format!(" [{}]", listed.join("; ")));
    }
    if let Some(f) = undetected_slots.first() {
        detail.push_str(&format!("; first undetected: {f}"));
    }
    outcome(undetected_slots.is_empty() && slots > 0, detail)
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

#[test]
fn acceptance() {
    let reg = Registry::standard();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("Rogers-Ramanujan products", Box::new(rogers_ramanujan)),
        ("finite Andrews forms", Box::new(|| andrews(&reg))),
        (
            "five-parameter finite forms",
            Box::new(|| finite_forms(&reg)),
        ),
        (
            "bilateral five-parameter family",
            Box::new(|| five_parameter_family(&reg)),
        ),
        ("limiting and inverted catalog", Box::new(|| catalog(&reg))),
        ("Bailey machinery", Box::new(|| bailey_machinery(&reg))),
        ("telescoping certificates", Box::new(telescoping)),
        ("binomial consequences", Box::new(binomial)),
        ("non-terminating counterexample", Box::new(counterexample)),
        ("negative controls", Box::new(|| negative_controls(&reg))),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} {name} ({:.1}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
