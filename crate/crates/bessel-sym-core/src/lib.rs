//! Evaluators for symmetric finite index sums of Bessel, Gamma and
//! hypergeometric terms, together with the exact combinatorial identities
//! they rest on.
//!
//! The crate is split along the arithmetic used:
//!
//! - [`exact`] — arbitrary-precision integer/rational checks that hold with
//!   zero tolerance (factorial/binomial sums, Pochhammer-reduced Gamma
//!   ratios, polynomial degree certificates),
//! - [`specfun`] — floating-point special functions (J, Y, K, log-Gamma,
//!   ₂F₁, ₃F₂, Tricomi U, Whittaker W) with documented accuracy targets,
//! - [`identities`] — one evaluator per finite-sum identity, each returning
//!   a [`identities::Residual`] with a condition-aware verdict.
//!
//! The crate is `no_std` (allocation required); all float math goes through
//! `libm`. IO, report formats and the sweep driver live in the companion
//! CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod exact;
pub mod identities;
pub mod specfun;

pub use error::Error;
