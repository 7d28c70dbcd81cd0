//! Registry-wide sweeps and cross-identity consistency.

use num_traits::Zero;
use qrr::identity::{Mutation, ParamGrid, Part, Registry, SideId, Term, Vals, Var};
use qrr::pochhammer::{LaurentWindow, TermSum};

fn vals(l: i64, m: i64, n: i64, u: i64, v: i64) -> Vals {
    Vals { l, m, n, u, v }
}

#[test]
fn every_record_holds_on_its_default_grid() {
    let reg = Registry::standard();
    for rec in reg.records() {
        for r in rec.verify_grid_with(&rec.default_grid(40), None).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn vanishing_bilateral_sum_is_exactly_zero() {
    let reg = Registry::standard();
    let rec = reg.get("ABCDE60").unwrap();
    for v in rec.assignments(&rec.default_grid(60)).unwrap() {
        assert!(
            rec.eval_side(SideId::Lhs, &v, 60).unwrap().is_zero(),
            "{v:?}"
        );
    }
}

// With the dropped parameter set to T, the finite forms agree with their
// v -> infinity limits through q^T.
#[test]
fn finite_forms_approach_their_limits() {
    let reg = Registry::standard();
    let trunc = 30;
    let big = trunc as i64;
    for (full, limit) in [
        ("LMNRS1", "LMNR1"),
        ("LMNRS2", "LMNR2"),
        ("LMNRS3", "LMNR3"),
        ("LMNRS4", "LMNR4"),
    ] {
        let full = reg.get(full).unwrap();
        let limit = reg.get(limit).unwrap();
        for w in limit.assignments(&limit.default_grid(trunc)).unwrap() {
            let mut v = w;
            v.v = big;
            for side in [SideId::Lhs, SideId::Rhs] {
                assert_eq!(
                    full.eval_side(side, &v, trunc).unwrap(),
                    limit.eval_side(side, &w, trunc).unwrap(),
                    "{} {side:?} {w:?}",
                    limit.id
                );
            }
        }
    }
}

fn single_term(f: qrr::identity::TermFn, v: &Vals, k: i64) -> TermSum {
    let mut t = Term::default();
    f(&mut t, v, k);
    TermSum::single(t.into_product())
}

fn is_monomial(w: &LaurentWindow) -> Option<(i64, qrr::BigRat)> {
    let nz: Vec<i64> = (w.low..=w.high)
        .filter(|p| !w.coeff(*p).is_zero())
        .collect();
    (nz.len() == 1).then(|| (nz[0], w.coeff(nz[0])))
}

/// The monomial `image(k) / target(sign*k + shift)` if it is one for every
/// `k` in the support.
fn termwise_monomial(
    image: &dyn Fn(i64) -> TermSum,
    target: &dyn Fn(i64) -> TermSum,
    (lo, hi): (i64, i64),
    (sign, shift): (i64, i64),
    high: i64,
) -> Option<(i64, qrr::BigRat)> {
    let mut common = None;
    for k in lo..=hi {
        let t = target(sign * k + shift);
        let ratio = image(k).scaled(&t.terms[0].inverse()).eval(high).ok()?;
        let m = is_monomial(&ratio)?;
        match &common {
            None => common = Some(m),
            Some(c) if *c != m => return None,
            Some(_) => {}
        }
    }
    common
}

// Applying q -> 1/q to each summand of the v -> infinity forms gives the
// summands of the inverted forms, after a reindexing k -> ±k + s, up to one
// monomial shared by both sides.
#[test]
fn inverted_forms_are_termwise_images() {
    let reg = Registry::standard();
    let high = 60;
    let reindexings: Vec<(i64, i64)> = [1, -1]
        .into_iter()
        .flat_map(|e| (-1..=1).map(move |s| (e, s)))
        .collect();
    for (base, inv) in [
        ("LMNR1", "QINV1"),
        ("LMNR2", "QINV2"),
        ("LMNR3", "QINV3"),
        ("LMNR4", "QINV4"),
    ] {
        let base = reg.get(base).unwrap();
        let inv = reg.get(inv).unwrap();
        for v in inv.assignments(&inv.default_grid(high as usize)).unwrap() {
            let per_side: Vec<Vec<(i64, qrr::BigRat)>> = [SideId::Lhs, SideId::Rhs]
                .into_iter()
                .map(|side| {
                    let support = inv.support(side, &v, high as usize).unwrap();
                    let image = |k| single_term(base.side(side).term, &v, k).invert_q().unwrap();
                    let target = |k| single_term(inv.side(side).term, &v, k);
                    reindexings
                        .iter()
                        .filter_map(|r| termwise_monomial(&image, &target, support, *r, high))
                        .collect()
                })
                .collect();
            assert!(
                per_side[0].iter().any(|m| per_side[1].contains(m)),
                "{} {v:?}: {per_side:?}",
                inv.id
            );
        }
    }
}

// The exact reflection symmetry S(abcde q^{-3}) = S(abcde q^{-2}) of the
// well-poised bilateral sum: the last exponent slot of the first
// five-parameter transformation can move by +1 without changing the sum.
#[test]
fn well_poised_power_shift_is_invisible() {
    let reg = Registry::standard();
    let rec = reg.get("ABCDE1").unwrap();
    let grid = ParamGrid::uniform(40, &Var::ALL, 0, 4);
    let points = rec.assignments(&grid).unwrap();
    let slots = rec
        .slot_counts(&points[0])
        .into_iter()
        .find(|(s, p, _)| *s == SideId::Lhs && *p == Part::Term)
        .unwrap()
        .2;
    let shift = Mutation {
        side: SideId::Lhs,
        part: Part::Term,
        slot: slots - 1,
        delta: 1,
    };
    for v in &points {
        let a = rec.eval_window(SideId::Lhs, v, 40, None).unwrap();
        let b = rec.eval_window(SideId::Lhs, v, 40, Some(&shift)).unwrap();
        assert_eq!(a.first_difference(&b), None, "{v:?}");
    }
    let wrong = Mutation { delta: -1, ..shift };
    assert!(rec
        .mutation_detected(&rec.default_grid(12), &wrong)
        .unwrap());
}

#[test]
fn support_bounds_examples() {
    let reg = Registry::standard();
    assert_eq!(
        reg.support_bounds("LMNRS3", SideId::Rhs, &vals(1, 2, 3, 1, 4), 40)
            .unwrap(),
        Some((0, 1))
    );
    assert_eq!(
        reg.support_bounds("LMNRS1", SideId::Rhs, &vals(1, 2, 3, 1, 4), 40)
            .unwrap(),
        Some((-1, 1))
    );
    assert_eq!(
        reg.support_bounds("ANDREWS1", SideId::Lhs, &vals(0, 0, 5, 0, 0), 40)
            .unwrap(),
        Some((0, 5))
    );
    assert!(reg
        .support_bounds("NOPE", SideId::Lhs, &Vals::default(), 40)
        .is_err());
}

#[test]
fn grid_below_minimum_is_rejected() {
    let reg = Registry::standard();
    let rec = reg.get("LMNRS4").unwrap();
    let grid = rec.default_grid(10).with(Var::U, 0, 3);
    assert!(rec.assignments(&grid).is_err());
    assert_eq!(rec.assignments(&rec.default_grid(10)).unwrap().len(), 576);
}
