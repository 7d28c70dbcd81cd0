//! Registry of finite identities, with side evaluators, summation supports
//! and grid verification.
//!
//! Parameters are specialized to `q`-powers on integer grids; a record that
//! holds for every grid point and every order up to `T` is reported equal.

mod records;
pub mod report;
pub mod special;
pub mod term;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pochhammer::{LaurentWindow, Side, TermSum};
use crate::series::TruncatedSeries;

pub use report::{Assignment, MismatchWindow, Verdict, VerificationReport};
pub use special::{liu_counterexample, rr_limit_check, CounterexampleReport, LiuForm};
pub use term::{Mutation, Part, SideId, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Var {
    L,
    M,
    N,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::L, Var::M, Var::N, Var::U, Var::V];

    pub fn name(self) -> &'static str {
        match self {
            Var::L => "l",
            Var::M => "m",
            Var::N => "n",
            Var::U => "u",
            Var::V => "v",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s.trim())
            .ok_or_else(|| Error::Inadmissible(format!("unknown parameter `{s}`")))
    }
}

/// Values of the integer parameters; unused ones stay 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vals {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub u: i64,
    pub v: i64,
}

impl Vals {
    pub fn get(&self, var: Var) -> i64 {
        match var {
            Var::L => self.l,
            Var::M => self.m,
            Var::N => self.n,
            Var::U => self.u,
            Var::V => self.v,
        }
    }

    pub fn set(&mut self, var: Var, x: i64) {
        match var {
            Var::L => self.l = x,
            Var::M => self.m = x,
            Var::N => self.n = x,
            Var::U => self.u = x,
            Var::V => self.v = x,
        }
    }

    pub fn from_assignment(a: &Assignment) -> Self {
        let mut v = Vals::default();
        for (var, x) in &a.0 {
            v.set(*var, *x);
        }
        v
    }
}

/// One parameter of a record: its least admissible value and default grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub var: Var,
    pub min: i64,
    pub grid: (i64, i64),
}

pub type SupportFn = fn(&Vals, usize) -> Option<(i64, i64)>;
pub type BuildFn = fn(&mut Term, &Vals);
pub type TermFn = fn(&mut Term, &Vals, i64);

/// `prefactor · Σ_{k in support} term(k)`.
#[derive(Clone, Copy)]
pub struct SideDef {
    pub support: SupportFn,
    pub prefactor: Option<BuildFn>,
    pub term: TermFn,
}

pub struct IdentityRecord {
    pub id: &'static str,
    pub citation: &'static str,
    pub params: Vec<ParamSpec>,
    pub lhs: SideDef,
    pub rhs: SideDef,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl IdentityRecord {
    pub fn side(&self, side: SideId) -> &SideDef {
        match side {
            SideId::Lhs => &self.lhs,
            SideId::Rhs => &self.rhs,
        }
    }

    pub fn default_grid(&self, trunc: usize) -> ParamGrid {
        let mut g = ParamGrid::new(trunc);
        for p in &self.params {
            g = g.with(p.var, p.grid.0, p.grid.1);
        }
        g
    }

    pub fn check_admissible(&self, vals: &Vals) -> Result<()> {
        for p in &self.params {
            let x = vals.get(p.var);
            if x < p.min {
                return Err(Error::Inadmissible(format!(
                    "{}: {}={} is below the least admissible value {}",
                    self.id, p.var, x, p.min
                )));
            }
        }
        Ok(())
    }

    pub fn support(&self, side: SideId, vals: &Vals, trunc: usize) -> Option<(i64, i64)> {
        (self.side(side).support)(vals, trunc)
    }

    /// Builds one side in factored form.
    pub fn build_side(
        &self,
        side: SideId,
        vals: &Vals,
        trunc: usize,
        mutation: Option<&Mutation>,
    ) -> Side {
        let def = self.side(side);
        let mut sum = TermSum::new();
        if let Some((lo, hi)) = (def.support)(vals, trunc) {
            for k in lo..=hi {
                let mut t = Term::for_part(mutation, side, Part::Term);
                (def.term)(&mut t, vals, k);
                sum.push(t.into_product());
            }
        }
        let mut pre = Term::for_part(mutation, side, Part::Prefactor);
        if let Some(f) = def.prefactor {
            f(&mut pre, vals);
        }
        Side::new(pre.into_product(), sum)
    }

    /// Number of mutation slots of each builder at `vals`.
    pub fn slot_counts(&self, vals: &Vals) -> Vec<(SideId, Part, u32)> {
        let mut out = Vec::new();
        for side in [SideId::Lhs, SideId::Rhs] {
            let def = self.side(side);
            if let Some(f) = def.prefactor {
                let mut t = Term::default();
                f(&mut t, vals);
                out.push((side, Part::Prefactor, t.slots_used()));
            }
            let mut t = Term::default();
            (def.term)(&mut t, vals, 0);
            out.push((side, Part::Term, t.slots_used()));
        }
        out
    }

    fn context(&self, side: Option<SideId>, vals: &Vals) -> String {
        let a = self.assignment(vals);
        match side {
            Some(s) => format!("{} {} [{}]", self.id, s.name(), a),
            None => format!("{} [{}]", self.id, a),
        }
    }

    pub fn assignment(&self, vals: &Vals) -> Assignment {
        Assignment(
            self.params
                .iter()
                .map(|p| (p.var, vals.get(p.var)))
                .collect(),
        )
    }

    /// Coefficients of one side from its lowest surviving power up to `q^trunc`.
    pub fn eval_window(
        &self,
        side: SideId,
        vals: &Vals,
        trunc: usize,
        mutation: Option<&Mutation>,
    ) -> Result<LaurentWindow> {
        self.check_admissible(vals)?;
        self.build_side(side, vals, trunc, mutation)
            .eval(trunc as i64)
            .map_err(|e| e.context(self.context(Some(side), vals)))
    }

    pub fn eval_side(&self, side: SideId, vals: &Vals, trunc: usize) -> Result<TruncatedSeries> {
        self.eval_window(side, vals, trunc, None)?
            .to_series()
            .map_err(|e| e.context(self.context(Some(side), vals)))
    }

    fn compare(&self, vals: &Vals, trunc: usize, mutation: Option<&Mutation>) -> Result<Verdict> {
        let l = self.eval_window(SideId::Lhs, vals, trunc, mutation)?;
        let r = self.eval_window(SideId::Rhs, vals, trunc, mutation)?;
        Ok(match l.first_difference(&r) {
            None => Verdict::Equal,
            Some(i) => {
                let from = if i >= 0 { (i - 2).max(0) } else { i - 2 };
                let to = (i + 2).min(trunc as i64);
                Verdict::Mismatch {
                    index: i,
                    left: l.coeff(i),
                    right: r.coeff(i),
                    window: MismatchWindow {
                        from,
                        lhs: l.slice(from, to),
                        rhs: r.slice(from, to),
                    },
                }
            }
        })
    }

    pub fn verify_with(
        &self,
        vals: &Vals,
        trunc: usize,
        mutation: Option<&Mutation>,
    ) -> VerificationReport {
        let start = Instant::now();
        let verdict = match self.compare(vals, trunc, mutation) {
            Ok(v) => v,
            Err(e) => Verdict::Error(e.to_string()),
        };
        VerificationReport {
            id: self.id.to_string(),
            params: self.assignment(vals),
            trunc,
            verdict,
            millis: start.elapsed().as_millis() as u64,
        }
    }

    pub fn verify(&self, vals: &Vals, trunc: usize) -> VerificationReport {
        self.verify_with(vals, trunc, None)
    }

    /// Cartesian product of the grid ranges in parameter declaration order,
    /// last parameter varying fastest.
    pub fn assignments(&self, grid: &ParamGrid) -> Result<Vec<Vals>> {
        for (var, _, _) in &grid.ranges {
            if !self.params.iter().any(|p| p.var == *var) {
                return Err(Error::Inadmissible(format!(
                    "{} has no parameter `{}`",
                    self.id, var
                )));
            }
        }
        let mut ranges = Vec::with_capacity(self.params.len());
        for p in &self.params {
            let (lo, hi) = grid.range(p.var).unwrap_or(p.grid);
            if lo <= hi && lo < p.min {
                return Err(Error::Inadmissible(format!(
                    "{}: range {}={}..{} starts below the least admissible value {}",
                    self.id, p.var, lo, hi, p.min
                )));
            }
            ranges.push((p.var, lo, hi));
        }
        let mut out = vec![Vals::default()];
        for (var, lo, hi) in ranges {
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1).max(0) as usize);
            for v in &out {
                for x in lo..=hi {
                    let mut w = *v;
                    w.set(var, x);
                    next.push(w);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Every mutation adding `±1` to a single exponent slot, using the slot
    /// layout at `vals`.
    pub fn unit_mutations(&self, vals: &Vals) -> Vec<Mutation> {
        let mut out = Vec::new();
        for (side, part, n) in self.slot_counts(vals) {
            for slot in 0..n {
                for delta in [1, -1] {
                    out.push(Mutation {
                        side,
                        part,
                        slot,
                        delta,
                    });
                }
            }
        }
        out
    }

    /// Whether `mutation` breaks the identity somewhere on `grid`. Stops at
    /// the first failing point.
    pub fn mutation_detected(&self, grid: &ParamGrid, mutation: &Mutation) -> Result<bool> {
        let points = self.assignments(grid)?;
        Ok(points
            .par_iter()
            .any(|v| !self.verify_with(v, grid.trunc, Some(mutation)).passed()))
    }

    pub fn verify_grid_with(
        &self,
        grid: &ParamGrid,
        mutation: Option<&Mutation>,
    ) -> Result<Vec<VerificationReport>> {
        let points = self.assignments(grid)?;
        Ok(points
            .par_iter()
            .map(|v| self.verify_with(v, grid.trunc, mutation))
            .collect())
    }
}

/// Per-parameter inclusive ranges and a truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamGrid {
    pub ranges: Vec<(Var, i64, i64)>,
    pub trunc: usize,
}

impl ParamGrid {
    pub fn new(trunc: usize) -> Self {
        ParamGrid {
            ranges: Vec::new(),
            trunc,
        }
    }

    pub fn with(mut self, var: Var, lo: i64, hi: i64) -> Self {
        self.ranges.retain(|(v, _, _)| *v != var);
        self.ranges.push((var, lo, hi));
        self
    }

    /// Same range for every listed parameter.
    pub fn uniform(trunc: usize, vars: &[Var], lo: i64, hi: i64) -> Self {
        vars.iter()
            .fold(ParamGrid::new(trunc), |g, v| g.with(*v, lo, hi))
    }

    pub fn range(&self, var: Var) -> Option<(i64, i64)> {
        self.ranges
            .iter()
            .find(|(v, _, _)| *v == var)
            .map(|(_, lo, hi)| (*lo, *hi))
    }

    /// Parses `l=0..3,m=1..2,n=4`.
    pub fn parse_ranges(s: &str) -> Result<Vec<(Var, i64, i64)>> {
        let bad = |part: &str| Error::Inadmissible(format!("bad range `{part}`"));
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, span) = part.split_once('=').ok_or_else(|| bad(part))?;
            let var: Var = name.parse()?;
            let (lo, hi) = match span.split_once("..") {
                Some((a, b)) => (a.trim().parse(), b.trim().parse()),
                None => (span.trim().parse(), span.trim().parse()),
            };
            out.push((var, lo.map_err(|_| bad(part))?, hi.map_err(|_| bad(part))?));
        }
        Ok(out)
    }
}

/// The identities known to the engine.
pub struct Registry {
    records: Vec<IdentityRecord>,
}

impl Default for Registry {
    fn default() -> Self {
        Registry::standard()
    }
}

impl Registry {
    pub fn standard() -> Self {
        Registry {
            records: records::all(),
        }
    }

    pub fn from_records(records: Vec<IdentityRecord>) -> Self {
        Registry { records }
    }

    pub fn records(&self) -> &[IdentityRecord] {
        &self.records
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.records.iter().map(|r| r.id)
    }

    pub fn get(&self, id: &str) -> Result<&IdentityRecord> {
        self.records
            .iter()
            .find(|r| r.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }

    pub fn support_bounds(
        &self,
        id: &str,
        side: SideId,
        vals: &Vals,
        trunc: usize,
    ) -> Result<Option<(i64, i64)>> {
        let r = self.get(id)?;
        r.check_admissible(vals)?;
        Ok(r.support(side, vals, trunc))
    }

    pub fn eval_side(
        &self,
        id: &str,
        side: SideId,
        vals: &Vals,
        trunc: usize,
    ) -> Result<TruncatedSeries> {
        self.get(id)?.eval_side(side, vals, trunc)
    }

    pub fn verify(&self, id: &str, vals: &Vals, trunc: usize) -> Result<VerificationReport> {
        Ok(self.get(id)?.verify(vals, trunc))
    }

    pub fn verify_grid(&self, id: &str, grid: &ParamGrid) -> Result<Vec<VerificationReport>> {
        self.get(id)?.verify_grid_with(grid, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn vals(l: i64, m: i64, n: i64, u: i64, v: i64) -> Vals {
        Vals { l, m, n, u, v }
    }

    fn nv(n: i64) -> Vals {
        Vals {
            n,
            ..Vals::default()
        }
    }

    #[test]
    fn ids_are_unique() {
        let r = Registry::standard();
        let mut ids: Vec<_> = r.ids().collect();
        let len = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), len);
    }

    #[test]
    fn support_examples() {
        let r = Registry::standard();
        assert_eq!(
            r.support_bounds("LMNRS1", SideId::Rhs, &vals(2, 2, 2, 2, 2), 40),
            Ok(Some((-2, 2)))
        );
        assert_eq!(
            r.support_bounds("ANDREWS1", SideId::Lhs, &nv(3), 40),
            Ok(Some((0, 3)))
        );
        // k = -1 carries 1/(q)_{u+k-1} = 1/(q)_{-1} = 0 at u = 1
        assert_eq!(
            r.support_bounds("LMNRS3", SideId::Rhs, &vals(1, 2, 3, 1, 4), 40),
            Ok(Some((0, 1)))
        );
    }

    #[test]
    fn andrews_small_cases() {
        let r = Registry::standard();
        // (1+q)/(1-q)
        let mut c = vec![2i64; 11];
        c[0] = 1;
        let want = TruncatedSeries::from_ints(&c, 10);
        assert_eq!(
            r.eval_side("ANDREWS1", SideId::Lhs, &nv(1), 10),
            Ok(want.clone())
        );
        assert_eq!(r.eval_side("ANDREWS1", SideId::Rhs, &nv(1), 10), Ok(want));
        assert_eq!(
            r.eval_side("ANDREWS1", SideId::Lhs, &nv(0), 7),
            Ok(TruncatedSeries::one(7))
        );
    }

    #[test]
    fn unknown_identity() {
        let r = Registry::standard();
        assert_eq!(
            r.verify("BINO5", &nv(1), 10).unwrap_err(),
            Error::UnknownIdentity("BINO5".into())
        );
    }

    #[test]
    fn spec_point_checks() {
        let r = Registry::standard();
        assert!(r
            .verify("LMNRS1", &vals(1, 1, 1, 1, 1), 40)
            .unwrap()
            .passed());
        assert!(r
            .verify("ABCDE3", &vals(1, 1, 2, 0, 0), 40)
            .unwrap()
            .passed());
    }

    #[test]
    fn grid_enumeration_order_and_empty_range() {
        let r = Registry::standard();
        let rec = r.get("EULERMN1").unwrap();
        let g = ParamGrid::new(5).with(Var::M, 0, 1).with(Var::N, 2, 3);
        let pts: Vec<_> = rec
            .assignments(&g)
            .unwrap()
            .iter()
            .map(|v| (v.m, v.n))
            .collect();
        assert_eq!(pts, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let empty = ParamGrid::new(5).with(Var::M, 2, 1);
        assert!(r.verify_grid("EULERMN1", &empty).unwrap().is_empty());
        let below = ParamGrid::new(5).with(Var::U, 0, 2);
        assert!(matches!(
            r.verify_grid("LMNRS3", &below),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn parse_ranges() {
        assert_eq!(
            ParamGrid::parse_ranges("l=0..3, n=2").unwrap(),
            vec![(Var::L, 0, 3), (Var::N, 2, 2)]
        );
        assert!(ParamGrid::parse_ranges("x=0..1").is_err());
        assert!(ParamGrid::parse_ranges("l=0..").is_err());
    }
}
