//! Expression trees in the complex boost parameter `z`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::minkowski::{boost1, c, complexify_matrix, CMatrix3, RMatrix3, Vec3, C64};

/// Lifted argument of a power base along the real axis, used to pick the
/// sheet at the anchor. The returned value is snapped to the nearest
/// value congruent to the principal argument.
#[derive(Clone)]
pub struct BranchHint(pub Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl fmt::Debug for BranchHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BranchHint(..)")
    }
}

#[derive(Debug, Clone)]
pub enum Node {
    Const(C64),
    /// The parameter `z` itself.
    Param,
    /// Component `index` of `post · Λ₁(−z) · pre · anchor`.
    Momentum { pre_anchor: Vec3, post: CMatrix3, index: usize },
    Sum(HoloExpr, HoloExpr),
    Product(HoloExpr, HoloExpr),
    Quotient(HoloExpr, HoloExpr),
    Exp(HoloExpr),
    Power { base: HoloExpr, exponent: f64, hint: Option<BranchHint> },
}

#[derive(Debug, Clone)]
pub struct HoloExpr(pub(crate) Arc<Node>);

/// How power nodes choose their sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchMode {
    /// Argument ledgers continued step by step.
    Tracked,
    /// Principal branch at every point. Only useful as a negative control.
    Principal,
}

/// Per-power-node state: last accepted base value and its lifted argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerState {
    pub base: C64,
    pub arg: f64,
}

pub(crate) const VANISH_TOL: f64 = 1e-12;
const MAX_ARG_STEP: f64 = std::f64::consts::FRAC_PI_4;
const MAX_REL_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum EvalFail {
    Vanish(usize),
    Jump,
    NonFinite,
}

pub(crate) struct EvalCtx<'a> {
    pub lam: CMatrix3,
    pub z: C64,
    pub mode: BranchMode,
    /// `None` when initialising on the real axis.
    pub old: Option<&'a [PowerState]>,
    pub new: Vec<PowerState>,
}

impl HoloExpr {
    fn wrap(node: Node) -> Self {
        Self(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(v: C64) -> Self {
        Self::wrap(Node::Const(v))
    }

    pub fn real(v: f64) -> Self {
        Self::constant(c(v, 0.0))
    }

    pub fn param() -> Self {
        Self::wrap(Node::Param)
    }

    /// Component of `post · Λ₁(−z) · pre · anchor`.
    pub fn momentum(anchor: &Vec3, pre: &RMatrix3, post: &RMatrix3, index: usize) -> Self {
        assert!(index < 3, "momentum index out of range");
        Self::wrap(Node::Momentum {
            pre_anchor: pre * anchor,
            post: complexify_matrix(post),
            index,
        })
    }

    /// All three components of `post · Λ₁(−z) · pre · anchor`.
    pub fn momentum_vector(anchor: &Vec3, pre: &RMatrix3, post: &RMatrix3) -> [Self; 3] {
        [0, 1, 2].map(|i| Self::momentum(anchor, pre, post, i))
    }

    pub fn exp(self) -> Self {
        Self::wrap(Node::Exp(self))
    }

    pub fn pow(self, exponent: f64) -> Self {
        Self::wrap(Node::Power { base: self, exponent, hint: None })
    }

    pub fn pow_with_hint(self, exponent: f64, hint: BranchHint) -> Self {
        Self::wrap(Node::Power { base: self, exponent, hint: Some(hint) })
    }

    pub fn power_count(&self) -> usize {
        match self.node() {
            Node::Const(_) | Node::Param | Node::Momentum { .. } => 0,
            Node::Sum(a, b) | Node::Product(a, b) | Node::Quotient(a, b) => {
                a.power_count() + b.power_count()
            }
            Node::Exp(a) => a.power_count(),
            Node::Power { base, .. } => 1 + base.power_count(),
        }
    }

    /// Value with every power on the principal branch. Analytic only where
    /// no base crosses the negative axis.
    pub fn eval_principal(&self, z: C64) -> C64 {
        let mut ctx = EvalCtx {
            lam: boost1(-z),
            z,
            mode: BranchMode::Principal,
            old: None,
            new: Vec::new(),
        };
        self.eval(&mut ctx).unwrap_or(c(f64::NAN, f64::NAN))
    }

    pub(crate) fn eval(&self, ctx: &mut EvalCtx<'_>) -> Result<C64, EvalFail> {
        let v = match self.node() {
            Node::Const(v) => *v,
            Node::Param => ctx.z,
            Node::Momentum { pre_anchor, post, index } => {
                let k = post * (ctx.lam * pre_anchor.map(|x| c(x, 0.0)));
                k[*index]
            }
            Node::Sum(a, b) => a.eval(ctx)? + b.eval(ctx)?,
            Node::Product(a, b) => a.eval(ctx)? * b.eval(ctx)?,
            Node::Quotient(a, b) => a.eval(ctx)? / b.eval(ctx)?,
            Node::Exp(a) => a.eval(ctx)?.exp(),
            Node::Power { base, exponent, hint } => {
                let slot = ctx.new.len();
                ctx.new.push(PowerState { base: c(0.0, 0.0), arg: 0.0 });
                let b = base.eval(ctx)?;
                if !b.is_finite() {
                    return Err(EvalFail::NonFinite);
                }
                if b.norm() < VANISH_TOL {
                    return Err(EvalFail::Vanish(slot));
                }
                let arg = match (ctx.mode, ctx.old) {
                    (BranchMode::Principal, _) => b.arg(),
                    (BranchMode::Tracked, None) => match hint {
                        Some(h) => snap_to_branch(b.arg(), (h.0)(ctx.z.re)),
                        None => b.arg(),
                    },
                    (BranchMode::Tracked, Some(old)) => {
                        let prev = old[slot];
                        let delta = (b / prev.base).arg();
                        if delta.abs() >= MAX_ARG_STEP
                            || (b - prev.base).norm() >= MAX_REL_STEP * prev.base.norm()
                        {
                            return Err(EvalFail::Jump);
                        }
                        prev.arg + delta
                    }
                };
                ctx.new[slot] = PowerState { base: b, arg };
                (c(*exponent, 0.0) * c(b.norm().ln(), arg)).exp()
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalFail::NonFinite)
        }
    }
}

/// The value congruent to `principal` modulo 2π closest to `target`.
pub fn snap_to_branch(principal: f64, target: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    principal + tau * ((target - principal) / tau).round()
}

impl From<C64> for HoloExpr {
    fn from(v: C64) -> Self {
        Self::constant(v)
    }
}

impl From<f64> for HoloExpr {
    fn from(v: f64) -> Self {
        Self::real(v)
    }
}

impl Add for HoloExpr {
    type Output = HoloExpr;
    fn add(self, rhs: HoloExpr) -> HoloExpr {
        HoloExpr::wrap(Node::Sum(self, rhs))
    }
}

impl Sub for HoloExpr {
    type Output = HoloExpr;
    fn sub(self, rhs: HoloExpr) -> HoloExpr {
        self + (-rhs)
    }
}

impl Mul for HoloExpr {
    type Output = HoloExpr;
    fn mul(self, rhs: HoloExpr) -> HoloExpr {
        HoloExpr::wrap(Node::Product(self, rhs))
    }
}

impl Div for HoloExpr {
    type Output = HoloExpr;
    fn div(self, rhs: HoloExpr) -> HoloExpr {
        HoloExpr::wrap(Node::Quotient(self, rhs))
    }
}

impl Neg for HoloExpr {
    type Output = HoloExpr;
    fn neg(self) -> HoloExpr {
        HoloExpr::real(-1.0) * self
    }
}

impl Mul<C64> for HoloExpr {
    type Output = HoloExpr;
    fn mul(self, rhs: C64) -> HoloExpr {
        self * HoloExpr::constant(rhs)
    }
}

impl Add<C64> for HoloExpr {
    type Output = HoloExpr;
    fn add(self, rhs: C64) -> HoloExpr {
        self + HoloExpr::constant(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn principal_evaluation_of_simple_trees() {
        let z = c(0.3, 0.4);
        let e = (HoloExpr::param() * c(2.0, 0.0)).exp() + c(1.0, 0.0);
        assert!((e.eval_principal(z) - ((z * 2.0).exp() + 1.0)).norm() < 1e-15);
        let q = HoloExpr::param() / (HoloExpr::param() - HoloExpr::real(1.0));
        assert!((q.eval_principal(z) - z / (z - 1.0)).norm() < 1e-15);
        assert_eq!(q.power_count(), 0);
        assert_eq!(HoloExpr::param().pow(0.5).pow(0.5).power_count(), 2);
    }

    #[test]
    fn momentum_nodes_follow_complex_boost() {
        let m = 1.5;
        let anchor = Vec3::new(m, 0.0, 0.0);
        let id = RMatrix3::identity();
        let [k0, k1, k2] = HoloExpr::momentum_vector(&anchor, &id, &id);
        let z = c(0.0, PI);
        assert!((k0.eval_principal(z) + m).norm() < 1e-14);
        assert!(k1.eval_principal(z).norm() < 1e-14);
        assert!(k2.eval_principal(z).norm() < 1e-15);
        let z = c(0.7, 0.0);
        assert!((k1.eval_principal(z) + m * 0.7f64.sinh()).norm() < 1e-14);
    }

    #[test]
    fn branch_snapping() {
        assert!((snap_to_branch(0.5, 6.0) - (0.5 + 2.0 * PI)).abs() < 1e-15);
        assert!((snap_to_branch(-3.0, -3.2) + 3.0).abs() < 1e-15);
        assert!((snap_to_branch(3.0, -3.2) - (3.0 - 2.0 * PI)).abs() < 1e-15);
    }
}
