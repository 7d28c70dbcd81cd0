//! Alternating binomial sums obtained as `q → 1` limits of the
//! `q`-factorial identities, checked in exact integer arithmetic.
//!
//! Throughout, `1/n! = 0` for `n < 0`, so `binom(n, k) = 0` unless
//! `0 ≤ k ≤ n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub fn factorial(n: i64) -> BigInt {
    (2..=n.max(1)).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Π num! / Π den!`, zero when any denominator argument is negative.
fn factorial_ratio(num: &[i64], den: &[i64]) -> BigRational {
    if den.iter().any(|d| *d < 0) {
        return BigRational::zero();
    }
    let n: BigInt = num.iter().map(|x| factorial(*x)).product();
    let d: BigInt = den.iter().map(|x| factorial(*x)).product();
    BigRational::new(n, d)
}

fn sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn serialize_big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn serialize_bigs<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// One side against one or more equal forms of the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialReport {
    pub id: String,
    pub params: Vec<(String, i64)>,
    #[serde(serialize_with = "serialize_big")]
    pub lhs: BigInt,
    #[serde(serialize_with = "serialize_bigs")]
    pub rhs: Vec<BigInt>,
    pub holds: bool,
}

impl BinomialReport {
    fn new(id: &str, params: &[(&str, i64)], lhs: BigInt, rhs: Vec<BigRational>) -> Self {
        let holds = rhs.iter().all(|r| r.is_integer() && r.to_integer() == lhs);
        let rhs = rhs
            .into_iter()
            .map(|r| {
                if r.is_integer() {
                    r.to_integer()
                } else {
                    r.floor().to_integer()
                }
            })
            .collect();
        BinomialReport {
            id: id.to_string(),
            params: params.iter().map(|(n, x)| (n.to_string(), *x)).collect(),
            lhs,
            rhs,
            holds,
        }
    }
}

impl std::fmt::Display for BinomialReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(n, x)| format!("{n}={x}"))
            .collect();
        let rhs: Vec<String> = self.rhs.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "{} [{}]: lhs {} rhs {} {}",
            self.id,
            params.join(","),
            self.lhs,
            rhs.join(" = "),
            if self.holds { "equal" } else { "MISMATCH" }
        )
    }
}

fn sym_range(bound: i64) -> std::ops::RangeInclusive<i64> {
    -bound..=bound
}

/// Five-binomial alternating sum against its factorial-sum evaluation.
pub fn cor57_check(l: i64, m: i64, n: i64, u: i64, v: i64) -> BinomialReport {
    let bound = l.max(m).max(n).max(u).max(v);
    let lhs: BigInt = sym_range(bound)
        .map(|k| {
            sign(k)
                * binom(l + m, l + k)
                * binom(m + n, m + k)
                * binom(n + l, n + k)
                * binom(u + v, u + k)
                * binom(u + v, v + k)
        })
        .sum();
    let sum: BigRational = (0..=l.min(m).min(n))
        .map(|k| {
            factorial_ratio(
                &[l + m + n - k, u + v + k],
                &[k, l - k, m - k, n - k, u + k, v + k],
            )
        })
        .sum();
    let rhs = BigRational::from(binom(u + v, u)) * sum;
    BinomialReport::new(
        "cor57",
        &[("l", l), ("m", m), ("n", n), ("u", u), ("v", v)],
        lhs,
        vec![rhs],
    )
}

/// The two four-binomial sums: the first with `binom(2u, u+k)`, the second
/// without `l`.
pub fn cor58_checks(l: i64, m: i64, n: i64, u: i64, v: i64) -> [BinomialReport; 2] {
    let bound = l.max(m).max(n).max(u).max(v);
    let lhs1: BigInt = sym_range(bound)
        .map(|k| {
            sign(k)
                * binom(l + m, l + k)
                * binom(m + n, m + k)
                * binom(n + l, n + k)
                * binom(2 * u, u + k)
        })
        .sum();
    let sum1: BigRational = (0..=l.min(m).min(n))
        .map(|k| factorial_ratio(&[l + m + n - k], &[k, l - k, m - k, n - k, u + k]))
        .sum();
    let rhs1 = factorial_ratio(&[2 * u], &[u]) * sum1;

    let lhs2: BigInt = sym_range(bound)
        .map(|k| {
            sign(k)
                * binom(m + n, m + k)
                * binom(m + n, n + k)
                * binom(u + v, u + k)
                * binom(u + v, v + k)
        })
        .sum();
    let sum2: BigRational = (0..=m.min(n))
        .map(|k| factorial_ratio(&[m + n, u + v + k], &[k, m - k, n - k, u + k, v + k]))
        .sum();
    let rhs2 = BigRational::from(binom(u + v, u)) * sum2;
    [
        BinomialReport::new(
            "cor58a",
            &[("l", l), ("m", m), ("n", n), ("u", u)],
            lhs1,
            vec![rhs1],
        ),
        BinomialReport::new(
            "cor58b",
            &[("m", m), ("n", n), ("u", u), ("v", v)],
            lhs2,
            vec![rhs2],
        ),
    ]
}

/// `Σ_{k=-n}^{n} (-1)^k binom(2n, n+k)^p`.
pub fn central_alt_sum(n: i64, power: u32) -> BigInt {
    sym_range(n)
        .map(|k| sign(k) * num_traits::pow(binom(2 * n, n + k), power as usize))
        .sum()
}

fn int(x: BigInt) -> BigRational {
    BigRational::from(x)
}

/// Fifth-power sum against both orderings of its right side.
pub fn bino5_check(n: i64) -> BinomialReport {
    let c = binom(2 * n, n);
    let direct: BigInt = (0..=n)
        .map(|k| {
            binom(3 * n - k, n - k) * binom(2 * n + k, k) * num_traits::pow(binom(2 * n, n + k), 2)
        })
        .sum();
    let reversed: BigInt = (0..=n)
        .map(|k| {
            binom(3 * n - k, n - k) * binom(2 * n + k, k) * num_traits::pow(binom(2 * n, k), 2)
        })
        .sum();
    BinomialReport::new(
        "bino5",
        &[("n", n)],
        central_alt_sum(n, 5),
        vec![int(&c * direct), int(&c * reversed)],
    )
}

/// Fourth-power sum against both displayed right sides.
pub fn bino4_check(n: i64) -> BinomialReport {
    let c = binom(2 * n, n);
    let first: BigInt = (0..=n)
        .map(|k| binom(3 * n - k, n - k) * binom(2 * n, n + k) * binom(n, k))
        .sum();
    let second: BigInt = (0..=n)
        .map(|k| binom(2 * n + k, k) * num_traits::pow(binom(2 * n, n + k), 2))
        .sum();
    BinomialReport::new(
        "bino4",
        &[("n", n)],
        central_alt_sum(n, 4),
        vec![int(&c * first), int(&c * second)],
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub id: String,
    pub params: Vec<i64>,
    #[serde(serialize_with = "serialize_big")]
    pub sum: BigInt,
    #[serde(serialize_with = "serialize_bigs")]
    pub divisors: Vec<BigInt>,
    pub nonnegative: bool,
    pub divisible: bool,
}

impl DivisibilityReport {
    pub fn holds(&self) -> bool {
        self.nonnegative && self.divisible
    }
}

impl std::fmt::Display for DivisibilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ds: Vec<String> = self.divisors.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "{} {:?}: sum {} divisors [{}] {}",
            self.id,
            self.params,
            self.sum,
            ds.join(","),
            if self.holds() { "holds" } else { "FAILS" }
        )
    }
}

fn divides(d: &BigInt, x: &BigInt) -> bool {
    if d.is_zero() {
        x.is_zero()
    } else {
        (x % d).is_zero()
    }
}

/// Divisibility of the central alternating power sum by `binom(2n, n)`.
pub fn divisibility_check(n: i64, power: u32) -> DivisibilityReport {
    let sum = central_alt_sum(n, power);
    let d = binom(2 * n, n);
    DivisibilityReport {
        id: format!("central{power}"),
        params: vec![n],
        divisible: divides(&d, &sum),
        nonnegative: !sum.is_negative(),
        sum,
        divisors: vec![d],
    }
}

/// `Σ_k (-1)^k Π_i binom(n_i + n_{i+1}, n_i + k)` with cyclic indices:
/// nonnegative and divisible by every `binom(n_j + n_{j+1}, n_j)`.
pub fn general_alt_sum_divisibility(ns: &[i64]) -> crate::Result<DivisibilityReport> {
    if ns.is_empty() || ns.iter().any(|x| *x < 0) {
        return Err(crate::Error::Inadmissible(format!(
            "need a nonempty list of nonnegative integers, got {ns:?}"
        )));
    }
    let next = |i: usize| ns[(i + 1) % ns.len()];
    let bound = *ns.iter().max().expect("nonempty");
    let sum: BigInt = sym_range(bound)
        .map(|k| {
            ns.iter()
                .enumerate()
                .map(|(i, x)| binom(x + next(i), x + k))
                .product::<BigInt>()
                * sign(k)
        })
        .sum();
    let divisors: Vec<BigInt> = ns
        .iter()
        .enumerate()
        .map(|(i, x)| binom(x + next(i), *x))
        .collect();
    Ok(DivisibilityReport {
        id: "cyclic".into(),
        params: ns.to_vec(),
        divisible: divisors.iter().all(|d| divides(d, &sum)),
        nonnegative: !sum.is_negative(),
        sum,
        divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), big(6));
        assert_eq!(binom(3, -1), big(0));
        assert_eq!(binom(3, 4), big(0));
        assert_eq!(binom(-1, 0), big(0));
        assert_eq!(
            binom(20, 10),
            factorial(20) / (factorial(10) * factorial(10))
        );
        assert_eq!(binom(20, 10), big(184756));
    }

    #[test]
    fn cor57_examples() {
        let r = cor57_check(1, 1, 1, 1, 1);
        assert_eq!(r.lhs, big(30));
        assert!(r.holds);
        let r = cor57_check(0, 0, 0, 0, 0);
        assert_eq!(r.lhs, big(1));
        assert!(r.holds);
        assert!(cor57_check(0, 2, 1, 3, 1).holds);
    }

    #[test]
    fn central_examples() {
        let r5 = bino5_check(1);
        assert_eq!(r5.lhs, big(30));
        assert_eq!(r5.rhs, vec![big(30), big(30)]);
        let r4 = bino4_check(1);
        assert_eq!(r4.lhs, big(14));
        assert!(r4.holds);
        for r in [bino5_check(0), bino4_check(0)] {
            assert_eq!(r.lhs, big(1));
            assert!(r.holds);
        }
        for n in 0..=20 {
            assert!(bino5_check(n).holds, "bino5 n={n}");
            assert!(bino4_check(n).holds, "bino4 n={n}");
        }
    }

    #[test]
    fn divisibility_examples() {
        let r = divisibility_check(1, 5);
        assert_eq!(r.sum, big(30));
        assert!(r.holds());
        let r = divisibility_check(2, 4);
        assert_eq!(r.divisors, vec![big(6)]);
        assert!(r.holds());
        assert!(divisibility_check(0, 5).holds());
    }

    #[test]
    fn cyclic_examples() {
        let r = general_alt_sum_divisibility(&[1, 1, 1, 1]).unwrap();
        assert_eq!(r.sum, big(14));
        assert!(r.holds());
        let r = general_alt_sum_divisibility(&[1]).unwrap();
        assert_eq!(r.sum, big(0));
        assert!(r.holds());
        let r = general_alt_sum_divisibility(&[0, 0, 0]).unwrap();
        assert_eq!(r.sum, big(1));
        assert!(r.holds());
        assert!(general_alt_sum_divisibility(&[]).is_err());
    }

    #[test]
    fn cor58_grid() {
        for l in 0..=3 {
            for m in 0..=3 {
                for n in 0..=3 {
                    for u in 0..=3 {
                        for v in 0..=3 {
                            for r in cor58_checks(l, m, n, u, v) {
                                assert!(r.holds, "{r}");
                            }
                        }
                    }
                }
            }
        }
        let [a, b] = cor58_checks(0, 0, 0, 0, 0);
        assert_eq!(a.lhs, big(1));
        assert_eq!(b.lhs, big(1));
    }

    proptest! {
        #[test]
        fn cor57_holds(l in 0i64..5, m in 0i64..5, n in 0i64..5, u in 0i64..5, v in 0i64..5) {
            prop_assert!(cor57_check(l, m, n, u, v).holds);
        }

        #[test]
        fn cyclic_sums_divisible(ns in proptest::collection::vec(0i64..5, 1..6)) {
            prop_assert!(general_alt_sum_divisibility(&ns).unwrap().holds());
        }
    }
}
