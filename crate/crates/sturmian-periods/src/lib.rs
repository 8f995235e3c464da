//! Exact-arithmetic toolkit for abelian and k-abelian periods of
//! factors of Sturmian words.
//!
//! A Sturmian word of slope `alpha` codes the orbit of an irrational
//! rotation on the circle. This crate represents the slope by its
//! eventually periodic continued fraction expansion and performs every
//! real comparison through certified rational brackets, so each result
//! is exact: no floating point is used anywhere.
//!
//! The pieces fit together as follows.
//!
//! * [`contfrac`] — convergents, semiconvergents, and certified sign,
//!   floor, and norm computations on linear forms `a + b*alpha`.
//! * [`rotation`] — points and intervals of the circle, rotation
//!   coding, and the interval `[w]` of a factor.
//! * [`language`] — factor enumeration, singular factors, light and
//!   heavy classes, occurrences, return times, complete first returns.
//! * [`abelian`] — Parikh vectors, abelian decompositions, minimum
//!   abelian and ordinary periods, period-set sweeps, exponent scans,
//!   and constructive witnesses.
//! * [`bounds`] — the certified exponent lemmas, the main inequality
//!   pre-filter, and the admissible-period classification.
//! * [`kabelian`] — k-abelian equivalence, both flavors of k-abelian
//!   period, class counting, and the k-abelian exponent estimate.
//! * [`harness`] — named verification scenarios with machine-readable
//!   reports, and parallel period-set sweeps.
//!
//! The `sturmian-periods` binary exposes the harness on the command
//! line; `cargo run --example` gives one runnable tour per capability.

pub mod abelian;
pub mod bounds;
pub mod contfrac;
pub mod error;
pub mod harness;
pub mod kabelian;
pub mod language;
pub mod rotation;

pub use contfrac::{LinearForm, SlopeContext, SlopeSpec};
pub use error::{Error, Result};
pub use language::BinaryWord;
