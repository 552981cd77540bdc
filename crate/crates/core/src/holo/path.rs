//! Paths in the strip and step-controlled continuation along them.

use std::f64::consts::PI;

use super::expr::{BranchMode, EvalCtx, EvalFail, HoloExpr, PowerState};
use super::HoloError;
use crate::minkowski::{boost1, c, C64};

const STRIP_SLACK: f64 = 1e-12;
const MIN_STEP: f64 = 1e-10;
const STALL_VANISH_TOL: f64 = 1e-6;
/// Default upper bound on a single continuation step.
pub const DEFAULT_MAX_STEP: f64 = 0.1;
/// Lateral offset used to steer around a vanishing power base.
pub const LATERAL_OFFSET: f64 = 1e-3;

fn in_closed_strip(z: C64) -> bool {
    z.is_finite() && z.im >= -STRIP_SLACK && z.im <= PI + STRIP_SLACK
}

/// Polyline in the closed strip `ℝ + i[0, π]` starting on the real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct StripPath {
    vertices: Vec<C64>,
}

impl StripPath {
    /// `start` is the real anchor; `rest` lists the following vertices.
    pub fn new(start: f64, rest: &[C64]) -> Result<Self, HoloError> {
        let mut vertices = vec![c(start, 0.0)];
        vertices.extend_from_slice(rest);
        if let Some(&z) = vertices.iter().find(|z| !in_closed_strip(**z)) {
            return Err(HoloError::OutsideStrip(z));
        }
        Ok(Self { vertices })
    }

    pub fn straight(start: f64, end: C64) -> Result<Self, HoloError> {
        Self::new(start, &[end])
    }

    /// From `t` straight up to `t + iπ`.
    pub fn vertical(t: f64) -> Self {
        Self { vertices: vec![c(t, 0.0), c(t, PI)] }
    }

    pub fn start(&self) -> f64 {
        self.vertices[0].re
    }

    pub fn end(&self) -> C64 {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    /// Bends the segment passing closest to `at` so that it runs through
    /// `at` displaced by `offset` along the left normal of travel.
    pub fn perturbed_at(&self, at: C64, offset: f64) -> Result<Self, HoloError> {
        let (mut best, mut best_d) = (0, f64::INFINITY);
        for (i, w) in self.vertices.windows(2).enumerate() {
            let d = segment_distance(w[0], w[1], at);
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        let (a, b) = (self.vertices[best], self.vertices[best + 1]);
        let dir = b - a;
        if dir.norm() == 0.0 {
            return Ok(self.clone());
        }
        let normal = c(0.0, 1.0) * dir / dir.norm();
        let mut out = self.vertices.clone();
        out.insert(best + 1, at + normal * offset);
        Self::new(out[0].re, &out[1..])
    }
}

fn segment_distance(a: C64, b: C64, z: C64) -> f64 {
    let d = b - a;
    if d.norm_sqr() == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (a + d * t - z).norm()
}

/// Incremental continuation of one expression from a real anchor.
#[derive(Debug, Clone)]
pub struct Continuator<'a> {
    expr: &'a HoloExpr,
    mode: BranchMode,
    z: C64,
    ledger: Vec<PowerState>,
    value: C64,
    max_step: f64,
}

impl<'a> Continuator<'a> {
    pub fn start(expr: &'a HoloExpr, anchor: f64) -> Result<Self, HoloError> {
        Self::start_with(expr, anchor, BranchMode::Tracked, DEFAULT_MAX_STEP)
    }

    pub fn start_with(
        expr: &'a HoloExpr,
        anchor: f64,
        mode: BranchMode,
        max_step: f64,
    ) -> Result<Self, HoloError> {
        let z = c(anchor, 0.0);
        let mut ctx = EvalCtx { lam: boost1(-z), z, mode, old: None, new: Vec::new() };
        let value = expr.eval(&mut ctx).map_err(|f| fail_to_error(f, z))?;
        Ok(Self { expr, mode, z, ledger: ctx.new, value, max_step })
    }

    pub fn position(&self) -> C64 {
        self.z
    }

    pub fn value(&self) -> C64 {
        self.value
    }

    /// Accumulated arguments of the power nodes, in pre-order.
    pub fn ledger(&self) -> Vec<f64> {
        self.ledger.iter().map(|s| s.arg).collect()
    }

    fn try_step(&self, z: C64) -> Result<(C64, Vec<PowerState>), EvalFail> {
        let mut ctx = EvalCtx {
            lam: boost1(-z),
            z,
            mode: self.mode,
            old: Some(&self.ledger),
            new: Vec::with_capacity(self.ledger.len()),
        };
        let v = self.expr.eval(&mut ctx)?;
        Ok((v, ctx.new))
    }

    /// A stalled refinement next to a nearly vanishing base is a collision
    /// with a zero rather than an unbounded phase.
    fn stall_error(&self, z: C64) -> HoloError {
        let smallest = self
            .ledger
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.base.norm().total_cmp(&b.1.base.norm()));
        match smallest {
            Some((node, st)) if st.base.norm() < STALL_VANISH_TOL => {
                HoloError::PowerBaseVanishes { node, z }
            }
            _ => HoloError::RefinementLimit(z),
        }
    }

    /// Continues along the straight segment to `target`, bisecting steps
    /// whose argument increments are too large.
    pub fn advance_to(&mut self, target: C64) -> Result<C64, HoloError> {
        let mut h = self.max_step;
        loop {
            let rest = target - self.z;
            let dist = rest.norm();
            if dist == 0.0 {
                return Ok(self.value);
            }
            let step = h.min(dist);
            let z_new = if step == dist { target } else { self.z + rest * (step / dist) };
            match self.try_step(z_new) {
                Ok((v, ledger)) => {
                    self.z = z_new;
                    self.value = v;
                    self.ledger = ledger;
                    h = (2.0 * step).min(self.max_step);
                }
                Err(EvalFail::Jump) | Err(EvalFail::NonFinite) => {
                    h = step / 2.0;
                    if h < MIN_STEP {
                        return Err(self.stall_error(z_new));
                    }
                }
                Err(EvalFail::Vanish(node)) => {
                    return Err(HoloError::PowerBaseVanishes { node, z: z_new })
                }
            }
        }
    }
}

fn fail_to_error(f: EvalFail, z: C64) -> HoloError {
    match f {
        EvalFail::Vanish(node) => HoloError::PowerBaseVanishes { node, z },
        _ => HoloError::RefinementLimit(z),
    }
}

pub fn continue_along(expr: &HoloExpr, path: &StripPath) -> Result<C64, HoloError> {
    continue_along_with(expr, path, BranchMode::Tracked, DEFAULT_MAX_STEP)
}

pub fn continue_along_with(
    expr: &HoloExpr,
    path: &StripPath,
    mode: BranchMode,
    max_step: f64,
) -> Result<C64, HoloError> {
    let mut cont = Continuator::start_with(expr, path.start(), mode, max_step)?;
    for &v in &path.vertices()[1..] {
        cont.advance_to(v)?;
    }
    Ok(cont.value())
}

/// Continuation that steers around a vanishing power base by a lateral
/// offset. Both sides are tried; a removable zero gives agreeing results,
/// a genuine branch point on the path does not and is reported.
pub fn continue_along_perturbed(expr: &HoloExpr, path: &StripPath) -> Result<C64, HoloError> {
    match continue_along(expr, path) {
        Err(HoloError::PowerBaseVanishes { z, .. }) => {
            let left = continue_along(expr, &path.perturbed_at(z, LATERAL_OFFSET)?)?;
            let right = continue_along(expr, &path.perturbed_at(z, -LATERAL_OFFSET)?)?;
            if (left - right).norm() <= 1e-9 * left.norm().max(1.0) {
                Ok(left)
            } else {
                Err(HoloError::BranchPointOnPath(z))
            }
        }
        other => other,
    }
}

/// Path from the real anchor `t` to `iπ`: straight up to `t + iπ/2`, then
/// straight to `iπ`. For `t = 0` this is the vertical segment.
pub fn path_to_ipi(anchor_t: f64) -> StripPath {
    if anchor_t == 0.0 {
        return StripPath::vertical(0.0);
    }
    StripPath { vertices: vec![c(anchor_t, 0.0), c(anchor_t, PI / 2.0), c(0.0, PI)] }
}

/// Value at `z = iπ` continued from the real anchor `anchor_t`.
pub fn boundary_at_ipi(expr: &HoloExpr, anchor_t: f64) -> Result<C64, HoloError> {
    continue_along(expr, &path_to_ipi(anchor_t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{RMatrix3, Vec3};

    fn k_minus(m: f64) -> HoloExpr {
        let a = Vec3::new(m, 0.0, 0.0);
        let id = RMatrix3::identity();
        let [k0, k1, _] = HoloExpr::momentum_vector(&a, &id, &id);
        k0 - k1
    }

    #[test]
    fn constants_are_unchanged() {
        let e = HoloExpr::constant(c(0.3, -2.0));
        let path = StripPath::new(0.2, &[c(1.0, 1.0), c(-3.0, 2.5), c(0.0, PI)]).unwrap();
        assert_eq!(continue_along(&e, &path).unwrap(), c(0.3, -2.0));
    }

    #[test]
    fn power_tracks_past_the_cut() {
        // k₀ − k₁ = m e^{z} at rest, so its s-th power ends at m^s e^{iπs}.
        let m = 1.3;
        let s = 0.37;
        let e = k_minus(m).pow(s);
        let end = continue_along(&e, &StripPath::vertical(0.0)).unwrap();
        let expected = m.powf(s) * C64::from_polar(1.0, PI * s);
        assert!((end - expected).norm() < 1e-13);
        let fine = continue_along_with(&e, &StripPath::vertical(0.0), BranchMode::Tracked, 0.05)
            .unwrap();
        assert!((end - fine).norm() < 1e-11);
        let principal = e.eval_principal(c(0.0, PI * (1.0 - 1e-9)));
        assert!((principal - expected).norm() < 1e-6);
        let beyond = continue_along(&(k_minus(m) * k_minus(m)).pow(s), &StripPath::vertical(0.0))
            .unwrap();
        assert!((beyond - m.powf(2.0 * s) * C64::from_polar(1.0, 2.0 * PI * s)).norm() < 1e-12);
    }

    #[test]
    fn ledger_reports_lifted_argument() {
        let e = (k_minus(1.0) * k_minus(1.0)).pow(0.5);
        let mut cont = Continuator::start(&e, 0.0).unwrap();
        cont.advance_to(c(0.0, PI)).unwrap();
        assert!((cont.ledger()[0] - 2.0 * PI).abs() < 1e-12);
        assert_eq!(cont.position(), c(0.0, PI));
    }

    #[test]
    fn outside_strip_is_rejected() {
        assert!(StripPath::straight(0.0, c(0.0, 4.0)).is_err());
        assert!(StripPath::straight(0.0, c(0.0, -0.1)).is_err());
    }

    #[test]
    fn vanishing_base_and_detour() {
        // (z − z₀)² has a double zero, so its square root is single valued
        // and the detour must agree from either side.
        let z0 = c(0.0, 1.0);
        let shifted = HoloExpr::param() - HoloExpr::constant(z0);
        let e = (shifted.clone() * shifted).pow(0.5);
        let path = StripPath::straight(0.0, c(0.0, 2.0)).unwrap();
        assert!(matches!(
            continue_along(&e, &path),
            Err(HoloError::PowerBaseVanishes { node: 0, .. })
        ));
        let v = continue_along_perturbed(&e, &path).unwrap();
        // The continued root is proportional to z − z₀.
        let start = e.eval_principal(c(0.0, 0.0));
        let expected = start * (c(0.0, 2.0) - z0) / (c(0.0, 0.0) - z0);
        assert!((v - expected).norm() < 1e-9, "{v}");
    }

    #[test]
    fn simple_zero_detour_is_refused() {
        let z0 = c(0.0, 1.0);
        let e = (HoloExpr::param() - HoloExpr::constant(z0)).pow(0.5);
        let path = StripPath::straight(0.0, c(0.0, 2.0)).unwrap();
        let left = continue_along(&e, &path.perturbed_at(z0, LATERAL_OFFSET).unwrap()).unwrap();
        let right = continue_along(&e, &path.perturbed_at(z0, -LATERAL_OFFSET).unwrap()).unwrap();
        assert!((left - right).norm() > 1.0);
        assert!(matches!(
            continue_along_perturbed(&e, &path),
            Err(HoloError::BranchPointOnPath(_))
        ));
    }
}
