//! Closed symbolic algebra of smooth complex-valued functions of one real
//! variable.
//!
//! An expression tree is built from complex constants, the variable `x`,
//! the four arithmetic operations, integer powers, `exp`/`sin`/`cos`, and
//! composition. The closure is total under exact differentiation, and every
//! tree is pointwise evaluable wherever no division-node denominator
//! vanishes. Trees are immutable and shared through `Arc`, so cloning is
//! cheap and values can be used concurrently without coordination.
//!
//! Structural simplification (constant folding, `0`/`1` identities) is
//! applied by the smart constructors; it never changes values. Semantic
//! equality is decided by sampled evaluation, never by canonical form.

mod parse;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use parse::{parse_expr, ExprParser};

/// Functions that enter an expression tree as opaque numeric leaves.
///
/// `jet(x, order)` returns the values of the function and its derivatives
/// `0..=order` at `x`. Implementors are typically dense-output interpolants
/// of ODE solutions; symbolic differentiation of a leaf simply bumps the
/// derivative order it reads from the jet.
pub trait OpaqueFn: fmt::Debug + Send + Sync {
    fn jet(&self, x: f64, order: usize) -> Result<Vec<Complex64>>;
    fn label(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Exp,
    Sin,
    Cos,
}

#[derive(Debug)]
enum Node {
    Const(Complex64),
    Var,
    Binary(BinaryOp, SmoothExpr, SmoothExpr),
    Pow(SmoothExpr, i32),
    Unary(UnaryFn, SmoothExpr),
    Opaque { f: Arc<dyn OpaqueFn>, order: usize },
}

/// A smooth complex-valued function of one real variable, as a closed
/// symbolic expression.
#[derive(Debug, Clone)]
pub struct SmoothExpr(Arc<Node>);

impl SmoothExpr {
    // ---- constructors ----

    pub fn constant(c: Complex64) -> Self {
        SmoothExpr(Arc::new(Node::Const(c)))
    }

    pub fn real(v: f64) -> Self {
        Self::constant(Complex64::new(v, 0.0))
    }

    pub fn zero() -> Self {
        Self::real(0.0)
    }

    pub fn one() -> Self {
        Self::real(1.0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::constant(Complex64::new(0.0, 1.0))
    }

    pub fn var() -> Self {
        SmoothExpr(Arc::new(Node::Var))
    }

    /// Wrap an opaque numeric function as an expression leaf.
    pub fn opaque(f: Arc<dyn OpaqueFn>) -> Self {
        SmoothExpr(Arc::new(Node::Opaque { f, order: 0 }))
    }

    pub fn add(&self, rhs: &SmoothExpr) -> SmoothExpr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Self::constant(a + b),
            (Some(a), None) if a == Complex64::ZERO => rhs.clone(),
            (None, Some(b)) if b == Complex64::ZERO => self.clone(),
            _ => {
                // fold e + c*e and c1*e + c2*e into (1+c)*e, (c1+c2)*e
                if let Some(merged) = merge_like_terms(self, rhs, Complex64::new(1.0, 0.0)) {
                    return merged;
                }
                SmoothExpr(Arc::new(Node::Binary(
                    BinaryOp::Add,
                    self.clone(),
                    rhs.clone(),
                )))
            }
        }
    }

    pub fn sub(&self, rhs: &SmoothExpr) -> SmoothExpr {
        if self.structural_eq(rhs) {
            return Self::zero();
        }
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Self::constant(a - b),
            (None, Some(b)) if b == Complex64::ZERO => self.clone(),
            _ => {
                if let Some(merged) = merge_like_terms(self, rhs, -Complex64::new(1.0, 0.0)) {
                    return merged;
                }
                SmoothExpr(Arc::new(Node::Binary(
                    BinaryOp::Sub,
                    self.clone(),
                    rhs.clone(),
                )))
            }
        }
    }

    pub fn neg(&self) -> SmoothExpr {
        Self::real(-1.0).mul(self)
    }

    pub fn mul(&self, rhs: &SmoothExpr) -> SmoothExpr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Self::constant(a * b),
            (Some(a), None) => Self::scaled(a, rhs),
            (None, Some(b)) => Self::scaled(b, self),
            _ => SmoothExpr(Arc::new(Node::Binary(
                BinaryOp::Mul,
                self.clone(),
                rhs.clone(),
            ))),
        }
    }

    /// `c * e` with the constant kept as the left factor.
    fn scaled(c: Complex64, e: &SmoothExpr) -> SmoothExpr {
        if c == Complex64::ZERO {
            return Self::zero();
        }
        if c == Complex64::new(1.0, 0.0) {
            return e.clone();
        }
        // collapse c * (c2 * e)
        if let Node::Binary(BinaryOp::Mul, a, b) = &*e.0 {
            if let Some(c2) = a.as_const() {
                return Self::scaled(c * c2, b);
            }
        }
        SmoothExpr(Arc::new(Node::Binary(
            BinaryOp::Mul,
            Self::constant(c),
            e.clone(),
        )))
    }

    pub fn div(&self, rhs: &SmoothExpr) -> Result<SmoothExpr> {
        if rhs.as_const() == Some(Complex64::ZERO) {
            return Err(Error::DivisionByZeroExpr);
        }
        Ok(match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Self::constant(a / b),
            (Some(a), None) if a == Complex64::ZERO => Self::zero(),
            (None, Some(b)) if b == Complex64::new(1.0, 0.0) => self.clone(),
            _ => SmoothExpr(Arc::new(Node::Binary(
                BinaryOp::Div,
                self.clone(),
                rhs.clone(),
            ))),
        })
    }

    pub fn pow(&self, k: i32) -> SmoothExpr {
        if k == 0 {
            return Self::one();
        }
        if k == 1 {
            return self.clone();
        }
        if let Some(c) = self.as_const() {
            return Self::constant(c.powi(k));
        }
        if let Node::Pow(base, j) = &*self.0 {
            if let Some(jk) = j.checked_mul(k) {
                return base.pow(jk);
            }
        }
        SmoothExpr(Arc::new(Node::Pow(self.clone(), k)))
    }

    pub fn exp(&self) -> SmoothExpr {
        self.unary(UnaryFn::Exp)
    }

    pub fn sin(&self) -> SmoothExpr {
        self.unary(UnaryFn::Sin)
    }

    pub fn cos(&self) -> SmoothExpr {
        self.unary(UnaryFn::Cos)
    }

    fn unary(&self, f: UnaryFn) -> SmoothExpr {
        if let Some(c) = self.as_const() {
            return Self::constant(apply_unary(f, c));
        }
        SmoothExpr(Arc::new(Node::Unary(f, self.clone())))
    }

    /// Substitute `inner` for the variable throughout `self`.
    ///
    /// Fails if `self` contains an opaque leaf (there is nothing to
    /// substitute into), unless `inner` is the bare variable.
    pub fn compose(&self, inner: &SmoothExpr) -> Result<SmoothExpr> {
        if matches!(&*inner.0, Node::Var) {
            return Ok(self.clone());
        }
        Ok(match &*self.0 {
            Node::Const(_) => self.clone(),
            Node::Var => inner.clone(),
            Node::Binary(op, a, b) => {
                let a = a.compose(inner)?;
                let b = b.compose(inner)?;
                match op {
                    BinaryOp::Add => a.add(&b),
                    BinaryOp::Sub => a.sub(&b),
                    BinaryOp::Mul => a.mul(&b),
                    BinaryOp::Div => a.div(&b)?,
                }
            }
            Node::Pow(e, k) => e.compose(inner)?.pow(*k),
            Node::Unary(f, e) => e.compose(inner)?.unary(*f),
            Node::Opaque { .. } => return Err(Error::ComposeOpaque),
        })
    }

    // ---- inspection ----

    pub fn as_const(&self) -> Option<Complex64> {
        match &*self.0 {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(Complex64::ZERO)
    }

    /// Structural equality, with a pointer shortcut for shared subtrees.
    pub fn structural_eq(&self, other: &SmoothExpr) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Node::Const(a), Node::Const(b)) => a == b,
            (Node::Var, Node::Var) => true,
            (Node::Binary(op1, a1, b1), Node::Binary(op2, a2, b2)) => {
                op1 == op2 && a1.structural_eq(a2) && b1.structural_eq(b2)
            }
            (Node::Pow(e1, k1), Node::Pow(e2, k2)) => k1 == k2 && e1.structural_eq(e2),
            (Node::Unary(f1, e1), Node::Unary(f2, e2)) => f1 == f2 && e1.structural_eq(e2),
            (
                Node::Opaque { f: f1, order: o1 },
                Node::Opaque { f: f2, order: o2 },
            ) => Arc::ptr_eq(f1, f2) && o1 == o2,
            _ => false,
        }
    }

    pub fn node_count(&self) -> usize {
        match &*self.0 {
            Node::Const(_) | Node::Var | Node::Opaque { .. } => 1,
            Node::Binary(_, a, b) => 1 + a.node_count() + b.node_count(),
            Node::Pow(e, _) | Node::Unary(_, e) => 1 + e.node_count(),
        }
    }

    pub fn contains_opaque(&self) -> bool {
        match &*self.0 {
            Node::Opaque { .. } => true,
            Node::Const(_) | Node::Var => false,
            Node::Binary(_, a, b) => a.contains_opaque() || b.contains_opaque(),
            Node::Pow(e, _) | Node::Unary(_, e) => e.contains_opaque(),
        }
    }

    // ---- evaluation ----

    /// Evaluate at a real point. A vanishing denominator or a non-finite
    /// intermediate reports the offending subtree.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let v = match &*self.0 {
            Node::Const(c) => *c,
            Node::Var => Complex64::new(x, 0.0),
            Node::Binary(op, a, b) => {
                let va = a.eval(x)?;
                let vb = b.eval(x)?;
                match op {
                    BinaryOp::Add => va + vb,
                    BinaryOp::Sub => va - vb,
                    BinaryOp::Mul => va * vb,
                    BinaryOp::Div => {
                        if vb == Complex64::ZERO {
                            return Err(Error::Pole {
                                x,
                                node: self.to_string(),
                            });
                        }
                        va / vb
                    }
                }
            }
            Node::Pow(e, k) => {
                let ve = e.eval(x)?;
                if *k < 0 && ve == Complex64::ZERO {
                    return Err(Error::Pole {
                        x,
                        node: self.to_string(),
                    });
                }
                ve.powi(*k)
            }
            Node::Unary(f, e) => apply_unary(*f, e.eval(x)?),
            Node::Opaque { f, order } => f.jet(x, *order)?[*order],
        };
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite {
                x,
                node: self.to_string(),
            });
        }
        Ok(v)
    }

    // ---- differentiation ----

    /// One exact symbolic derivative.
    fn diff1(&self) -> SmoothExpr {
        match &*self.0 {
            Node::Const(_) => Self::zero(),
            Node::Var => Self::one(),
            Node::Binary(op, a, b) => match op {
                BinaryOp::Add => a.diff1().add(&b.diff1()),
                BinaryOp::Sub => a.diff1().sub(&b.diff1()),
                BinaryOp::Mul => a.diff1().mul(b).add(&a.mul(&b.diff1())),
                BinaryOp::Div => {
                    // (a/b)' = a'/b - a*b'/b^2
                    let da = a.diff1();
                    let db = b.diff1();
                    let num = da.mul(b).sub(&a.mul(&db));
                    num.div(&b.pow(2)).expect("pow(2) of non-zero-checked node")
                }
            },
            Node::Pow(e, k) => Self::real(f64::from(*k))
                .mul(&e.pow(*k - 1))
                .mul(&e.diff1()),
            Node::Unary(f, e) => {
                let outer = match f {
                    UnaryFn::Exp => e.exp(),
                    UnaryFn::Sin => e.cos(),
                    UnaryFn::Cos => e.sin().neg(),
                };
                outer.mul(&e.diff1())
            }
            Node::Opaque { f, order } => SmoothExpr(Arc::new(Node::Opaque {
                f: f.clone(),
                order: order + 1,
            })),
        }
    }

    /// The `k`-th exact symbolic derivative; `diff(e, 0)` is `e` itself.
    pub fn diff(&self, k: usize) -> SmoothExpr {
        let mut e = self.clone();
        for _ in 0..k {
            e = e.diff1();
        }
        e
    }

    /// Values of the expression and its derivatives `0..=k` at `x0`.
    pub fn eval_jet(&self, x0: f64, k: usize) -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(k + 1);
        let mut e = self.clone();
        out.push(e.eval(x0)?);
        for _ in 0..k {
            e = e.diff1();
            out.push(e.eval(x0)?);
        }
        Ok(out)
    }
}

/// Fold `a ± c*b` into `(1 ± c)*a` when `a` and `b` are the same subtree.
fn merge_like_terms(a: &SmoothExpr, b: &SmoothExpr, sign: Complex64) -> Option<SmoothExpr> {
    let (cb, core_b) = split_scale(b);
    let (ca, core_a) = split_scale(a);
    if core_a.structural_eq(&core_b) {
        return Some(SmoothExpr::scaled(ca + sign * cb, &core_a));
    }
    None
}

fn split_scale(e: &SmoothExpr) -> (Complex64, SmoothExpr) {
    if let Node::Binary(BinaryOp::Mul, a, b) = &*e.0 {
        if let Some(c) = a.as_const() {
            return (c, b.clone());
        }
    }
    (Complex64::new(1.0, 0.0), e.clone())
}

fn apply_unary(f: UnaryFn, z: Complex64) -> Complex64 {
    match f {
        UnaryFn::Exp => z.exp(),
        UnaryFn::Sin => z.sin(),
        UnaryFn::Cos => z.cos(),
    }
}

// ---- operator sugar ----

impl std::ops::Add for &SmoothExpr {
    type Output = SmoothExpr;
    fn add(self, rhs: &SmoothExpr) -> SmoothExpr {
        SmoothExpr::add(self, rhs)
    }
}

impl std::ops::Sub for &SmoothExpr {
    type Output = SmoothExpr;
    fn sub(self, rhs: &SmoothExpr) -> SmoothExpr {
        SmoothExpr::sub(self, rhs)
    }
}

impl std::ops::Mul for &SmoothExpr {
    type Output = SmoothExpr;
    fn mul(self, rhs: &SmoothExpr) -> SmoothExpr {
        SmoothExpr::mul(self, rhs)
    }
}

impl std::ops::Neg for &SmoothExpr {
    type Output = SmoothExpr;
    fn neg(self) -> SmoothExpr {
        SmoothExpr::neg(self)
    }
}

// ---- printing (shared text syntax with the CLI DSL) ----

fn fmt_f64(v: f64) -> String {
    format!("{}", v)
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        if c.re < 0.0 {
            format!("({})", fmt_f64(c.re))
        } else {
            fmt_f64(c.re)
        }
    } else if c.re == 0.0 {
        let im = if c.im == 1.0 {
            "i".to_string()
        } else if c.im == -1.0 {
            "-i".to_string()
        } else {
            format!("{}i", fmt_f64(c.im))
        };
        if c.im < 0.0 {
            format!("({})", im)
        } else {
            im
        }
    } else if c.im < 0.0 {
        format!("({}-{}i)", fmt_f64(c.re), fmt_f64(-c.im))
    } else {
        format!("({}+{}i)", fmt_f64(c.re), fmt_f64(c.im))
    }
}

impl SmoothExpr {
    fn precedence(&self) -> u8 {
        match &*self.0 {
            Node::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
            Node::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
            Node::Pow(..) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match &*self.0 {
            Node::Const(c) => write!(f, "{}", fmt_complex(*c)),
            Node::Var => write!(f, "x"),
            Node::Binary(op, a, b) => {
                let (sym, rp) = match op {
                    BinaryOp::Add => ("+", prec),
                    BinaryOp::Sub => ("-", prec + 1),
                    BinaryOp::Mul => ("*", prec),
                    BinaryOp::Div => ("/", prec + 1),
                };
                a.fmt_prec(f, prec)?;
                write!(f, "{}", sym)?;
                b.fmt_prec(f, rp)
            }
            Node::Pow(e, k) => {
                e.fmt_prec(f, 4)?;
                if *k < 0 {
                    write!(f, "^({})", k)
                } else {
                    write!(f, "^{}", k)
                }
            }
            Node::Unary(func, e) => {
                let name = match func {
                    UnaryFn::Exp => "exp",
                    UnaryFn::Sin => "sin",
                    UnaryFn::Cos => "cos",
                };
                write!(f, "{}(", name)?;
                e.fmt_prec(f, 0)?;
                write!(f, ")")
            }
            Node::Opaque { f: func, order } => {
                write!(f, "{}", func.label())?;
                for _ in 0..*order {
                    write!(f, "'")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests;
