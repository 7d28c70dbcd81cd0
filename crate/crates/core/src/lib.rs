//! Exact verification of finite Rogers-Ramanujan type identities.
//!
//! Both sides of every registered identity are evaluated as truncated
//! power series in `q` with big rational coefficients and compared
//! coefficient by coefficient. The crate also checks Bailey-pair
//! derivations, telescoping certificates and the `q → 1` binomial
//! consequences.

pub mod bailey;
pub mod binomial;
pub mod cli;
pub mod error;
pub mod identity;
pub mod pochhammer;
pub mod series;
pub mod telescoping;

pub use error::{Error, Result};
pub use series::{BigRat, MonomialParam, TruncatedSeries};
