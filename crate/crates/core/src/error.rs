//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    // ---- expression construction and evaluation ----
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("division by structurally-zero expression")]
    DivisionByZeroExpr,
    #[error("cannot compose through an opaque numeric function")]
    ComposeOpaque,
    #[error("pole at x = {x}: denominator of `{node}` vanishes")]
    Pole { x: f64, node: String },
    #[error("evaluation of `{node}` at x = {x} is not finite")]
    NonFinite { x: f64, node: String },

    // ---- distribution construction ----
    #[error("duplicate breakpoint at x = {0}")]
    DuplicateBreakpoint(f64),
    #[error("breakpoints not strictly increasing near x = {0}")]
    UnsortedBreakpoints(f64),
    #[error("expected {expected} pieces for {breakpoints} breakpoints, got {got}")]
    PieceCountMismatch {
        breakpoints: usize,
        expected: usize,
        got: usize,
    },
    #[error("delta term references breakpoint index {index}, but there are only {count} breakpoints")]
    BadDeltaIndex { index: usize, count: usize },
    #[error("delta order {order} exceeds the configured cap {cap}")]
    DeltaOrderTooHigh { order: u32, cap: u32 },
    #[error("test function body is not negligible outside its declared support: |g^({order})({x})| = {magnitude:.3e} > 1e-14")]
    SupportViolated { x: f64, order: u32, magnitude: f64 },

    // ---- numerics ----
    #[error("quadrature did not reach tolerance {tol:.3e} after {panels} panels; achieved error estimate {achieved:.3e}")]
    QuadratureNoConvergence {
        tol: f64,
        panels: usize,
        achieved: f64,
    },
    #[error("ODE stepper failed near x = {x}: {msg}")]
    StepperFailed { x: f64, msg: String },

    // ---- interface and ODE construction ----
    #[error("m ≤ n violated: A is {m}×{n_cols} but the jet length is {n}")]
    InterfaceShape { m: usize, n_cols: usize, n: usize },
    #[error("A and B must have identical shapes: A is {am}×{an}, B is {bm}×{bn}")]
    MatrixShapeMismatch {
        am: usize,
        an: usize,
        bm: usize,
        bn: usize,
    },
    #[error("a_n vanishes near x={x}: |a_{n}({x})| = {magnitude:.3e} ≤ 1e-12")]
    VanishingLeadCoefficient { n: usize, x: f64, magnitude: f64 },
    #[error("duplicate interface points at x = {0}")]
    DuplicateInterfacePoints(f64),
    #[error("coefficient list has {got} entries; order {order} needs {needed}")]
    CoefficientCount {
        order: usize,
        needed: usize,
        got: usize,
    },
    #[error("initial point x = {x} must lie inside the window [{lo}, {hi}] and off the interface set")]
    BadInitialPoint { x: f64, lo: f64, hi: f64 },
    #[error("initial jet has {got} entries; order {order} needs {order}")]
    BadInitialJet { order: usize, got: usize },
    #[error("interface point x = {0} lies outside the window")]
    InterfaceOutsideWindow(f64),

    // ---- serialization ----
    #[error("invalid {field}: {msg}")]
    Schema { field: String, msg: String },
    #[error("piece `{0}` is a numeric interpolant and cannot be serialized as an expression")]
    OpaquePiece(String),
}

impl Error {
    pub fn schema(field: &str, msg: impl Into<String>) -> Self {
        Error::Schema {
            field: field.to_string(),
            msg: msg.into(),
        }
    }
}
