//! Algebra of piecewise-smooth distributions with point singularities.
//!
//! The value type of this crate is [`PiecewiseDist`]: a function that is
//! smooth off a finite set of breakpoints, plus a finite sum of Dirac deltas
//! and their derivatives at those breakpoints. On that space the crate
//! provides
//!
//! - a closed symbolic algebra of smooth complex-valued functions of one
//!   real variable with exact differentiation ([`expr`]),
//! - the noncommutative star product together with the shifting-delta,
//!   jet-mismatch and modified-derivative operators built from it ([`star`]),
//! - interface conditions `A ψ̄(x₀⁻) = B ψ̄(x₀⁺)` between one-sided jets,
//!   the singular interface operator that encodes them, and the perturbed
//!   n-th order derivative operator ([`interface`]),
//! - construction, application, solving and distributional verification of
//!   ODEs whose global solutions satisfy prescribed interface conditions
//!   ([`ode`]).
//!
//! All values are immutable and all operations are pure; everything is
//! `Send + Sync` and can be shared across threads freely.

pub mod dist;
pub mod error;
pub mod expr;
pub mod interface;
pub mod linalg;
pub mod ode;
pub mod star;
pub mod testkit;

pub use dist::{DiscrepancyReport, PiecewiseDist, TestFn, DEFAULT_WINDOW};
pub use error::{Error, Result};
pub use expr::{BinaryOp, SmoothExpr};
pub use interface::{InterfaceClass, InterfaceKind, InterfaceSpec};
pub use ode::{Ode2Form, Ode2Operator, OdeSpec, SolutionReport, VerifyReport};
pub use star::PointSet;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
