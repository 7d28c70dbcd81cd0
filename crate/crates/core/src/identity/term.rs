//! Summand builder used by the registry evaluators.
//!
//! Every exponent-valued argument (a `q`-power, a Pochhammer index, the
//! `q`-exponent of a Pochhammer base or of a power base) passes through a
//! numbered slot. A [`Mutation`] adds a fixed offset to one slot, which lets
//! tests corrupt a single exponent of a record and check that verification
//! notices.

use serde::Serialize;

use crate::pochhammer::{Arg, QProduct};
use crate::series::BigRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideId {
    Lhs,
    Rhs,
}

impl SideId {
    pub fn name(self) -> &'static str {
        match self {
            SideId::Lhs => "lhs",
            SideId::Rhs => "rhs",
        }
    }
}

/// Which builder of a side a mutation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Prefactor,
    Term,
}

/// Adds `delta` to the exponent passing through `slot` of one builder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mutation {
    pub side: SideId,
    pub part: Part,
    pub slot: u32,
    pub delta: i64,
}

/// Accumulates one factored summand.
#[derive(Clone, Debug)]
pub struct Term {
    prod: QProduct,
    slot: u32,
    target: Option<(u32, i64)>,
}

impl Default for Term {
    fn default() -> Self {
        Term::new(None)
    }
}

impl Term {
    pub fn new(target: Option<(u32, i64)>) -> Self {
        Term {
            prod: QProduct::one(),
            slot: 0,
            target,
        }
    }

    /// Builder that applies `mutation` if it targets this side and part.
    pub fn for_part(mutation: Option<&Mutation>, side: SideId, part: Part) -> Self {
        let target = mutation
            .filter(|m| m.side == side && m.part == part)
            .map(|m| (m.slot, m.delta));
        Term::new(target)
    }

    /// Number of exponent slots consumed so far.
    pub fn slots_used(&self) -> u32 {
        self.slot
    }

    pub fn into_product(self) -> QProduct {
        self.prod
    }

    pub fn product(&self) -> &QProduct {
        &self.prod
    }

    fn x(&mut self, e: i64) -> i64 {
        let s = self.slot;
        self.slot += 1;
        match self.target {
            Some((t, d)) if t == s => e + d,
            _ => e,
        }
    }

    fn xa(&mut self, a: &Arg) -> Arg {
        let e = self.x(a.exp);
        Arg {
            coeff: a.coeff.clone(),
            exp: e,
            drift: a.drift,
        }
    }

    /// `(-1)^k`.
    pub fn sign(&mut self, k: i64) -> &mut Self {
        self.prod.mul_sign(k);
        self
    }

    pub fn scalar(&mut self, c: &BigRat) -> &mut Self {
        self.prod.mul_scalar(c);
        self
    }

    /// `q^e`.
    pub fn q(&mut self, e: i64) -> &mut Self {
        let e = self.x(e);
        self.prod.mul_q_pow(e);
        self
    }

    /// `(q)_n`.
    pub fn qf(&mut self, n: i64) -> &mut Self {
        let n = self.x(n);
        self.prod.mul_poch(&Arg::q_pow(1), n, 1);
        self
    }

    /// `1/(q)_n`.
    pub fn rqf(&mut self, n: i64) -> &mut Self {
        let n = self.x(n);
        self.prod.mul_poch(&Arg::q_pow(1), n, -1);
        self
    }

    /// `(a)_n`.
    pub fn poch(&mut self, a: &Arg, n: i64) -> &mut Self {
        let a = self.xa(a);
        let n = self.x(n);
        self.prod.mul_poch(&a, n, 1);
        self
    }

    /// `1/(a)_n`.
    pub fn rpoch(&mut self, a: &Arg, n: i64) -> &mut Self {
        let a = self.xa(a);
        let n = self.x(n);
        self.prod.mul_poch(&a, n, -1);
        self
    }

    /// `(a)_∞`.
    pub fn inf(&mut self, a: &Arg) -> &mut Self {
        let a = self.xa(a);
        self.prod.mul_infinite(&a, 1);
        self
    }

    /// `1/(a)_∞`.
    pub fn rinf(&mut self, a: &Arg) -> &mut Self {
        let a = self.xa(a);
        self.prod.mul_infinite(&a, -1);
        self
    }

    /// `a^k`.
    pub fn pow(&mut self, a: &Arg, k: i64) -> &mut Self {
        let a = self.xa(a);
        self.prod.mul_arg_pow(&a, k);
        self
    }

    /// `(1 - a)^m`.
    pub fn one_minus(&mut self, a: &Arg, m: i64) -> &mut Self {
        let a = self.xa(a);
        self.prod.mul_factor(&a.coeff, a.exp, a.drift, m);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pochhammer::TermSum;
    use crate::series::TruncatedSeries;

    #[test]
    fn slots_count_every_exponent() {
        let mut t = Term::default();
        t.q(4).qf(2).poch(&Arg::q_pow(3), 1).pow(&Arg::q_pow(1), 2);
        assert_eq!(t.slots_used(), 5);
    }

    #[test]
    fn mutation_shifts_one_slot() {
        let m = Mutation {
            side: SideId::Lhs,
            part: Part::Term,
            slot: 0,
            delta: 1,
        };
        let mut t = Term::for_part(Some(&m), SideId::Lhs, Part::Term);
        t.q(2);
        let s = TermSum::single(t.into_product()).to_series(4).unwrap();
        assert_eq!(s, TruncatedSeries::from_ints(&[0, 0, 0, 1], 4));
        let mut other = Term::for_part(Some(&m), SideId::Rhs, Part::Term);
        other.q(2);
        assert_eq!(other.into_product().shift_exp(), 2);
    }
}
