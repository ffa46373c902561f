//! Exact q-series machinery for overpartitions with parts separated by parity.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated Laurent series over arbitrary-precision rationals with
//!   explicit precision tracking, plus the [`Monomial`] parameter type.
//! - [`qfunctions`]: q-Pochhammer products, theta/sigma/phi, and a summation
//!   engine for q-hypergeometric sums whose term valuations grow.
//! - [`enumeration`]: combinatorial oracles that list and count the sixteen
//!   (over)partition families directly.
//! - [`identities`]: the identity registry, the transformation checkers and the
//!   coefficient-comparison harness.

pub mod enumeration;
pub mod error;
pub mod identities;
pub mod qfunctions;
pub mod rational;
pub mod series;

pub use enumeration::{
    count_overpartitions, count_sep, enumerate_sep, series_sep, DecoratedPartition, Part, Parity,
    Restriction, SepConfig, Variant,
};
pub use error::{Error, Result};
pub use identities::{
    check, check_with, lookup, registry, CheckReport, CheckStatus, ExprTag, IdentityEntry,
    Mismatch, Perturbation,
};
pub use rational::Rational;
pub use series::{LaurentSeries, Monomial};
