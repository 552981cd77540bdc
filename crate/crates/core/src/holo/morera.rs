//! Closed contour integrals as a numerical analyticity certificate.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use super::expr::{BranchMode, HoloExpr};
use super::path::{Continuator, DEFAULT_MAX_STEP};
use super::HoloError;
use crate::minkowski::{c, C64};

const ORDER: usize = 8;
/// Default panel length along contour edges.
pub const DEFAULT_PANEL: f64 = 0.25;

/// Closed polygon strictly inside the open strip, traversed in vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    vertices: Vec<C64>,
}

impl Contour {
    pub fn new(vertices: Vec<C64>) -> Result<Self, HoloError> {
        if vertices.len() < 3 {
            return Err(HoloError::DegenerateContour);
        }
        if let Some(&z) = vertices.iter().find(|z| !(z.im > 0.0 && z.im < PI && z.re.is_finite())) {
            return Err(HoloError::OutsideStrip(z));
        }
        Ok(Self { vertices })
    }

    /// Counter-clockwise rectangle `[t0, t1] × i[y0, y1]`.
    pub fn rectangle(t0: f64, t1: f64, y0: f64, y1: f64) -> Result<Self, HoloError> {
        Self::new(vec![c(t0, y0), c(t1, y0), c(t1, y1), c(t0, y1)])
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }

    fn edges(&self) -> impl Iterator<Item = (C64, C64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

fn gauss_nodes() -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(ORDER).unwrap());
    let mut pairs = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// `|∮ f dz|` with composite Gauss–Legendre panels of length at most
/// [`DEFAULT_PANEL`], continuing `f` from the real point below the first
/// vertex.
pub fn morera_residual(expr: &HoloExpr, contour: &Contour) -> Result<f64, HoloError> {
    morera_residual_with(expr, contour, DEFAULT_PANEL, BranchMode::Tracked)
}

pub fn morera_residual_with(
    expr: &HoloExpr,
    contour: &Contour,
    panel: f64,
    mode: BranchMode,
) -> Result<f64, HoloError> {
    Ok(contour_integral(expr, contour, panel, mode)?.0)
}

/// [`morera_residual`] divided by the largest `|f|` on the quadrature nodes,
/// for integrands whose size varies strongly along the contour.
pub fn morera_residual_relative(expr: &HoloExpr, contour: &Contour) -> Result<f64, HoloError> {
    let (r, max) = contour_integral(expr, contour, DEFAULT_PANEL, BranchMode::Tracked)?;
    Ok(if max > 0.0 { r / max } else { r })
}

fn contour_integral(
    expr: &HoloExpr,
    contour: &Contour,
    panel: f64,
    mode: BranchMode,
) -> Result<(f64, f64), HoloError> {
    let nodes = gauss_nodes();
    let start = contour.vertices[0];
    let mut cont = Continuator::start_with(expr, start.re, mode, DEFAULT_MAX_STEP)?;
    cont.advance_to(start)?;
    let mut sum = c(0.0, 0.0);
    let mut max = 0.0f64;
    for (a, b) in contour.edges() {
        let d = b - a;
        let panels = (d.norm() / panel).ceil().max(1.0) as usize;
        let h = d / panels as f64;
        for k in 0..panels {
            let left = a + h * k as f64;
            for &(x, w) in &nodes {
                let z = left + h * ((x + 1.0) / 2.0);
                let v = cont.advance_to(z)?;
                max = max.max(v.norm());
                sum += v * h * (w / 2.0);
            }
        }
    }
    Ok((sum.norm(), max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{RMatrix3, Vec3};

    fn k(anchor: Vec3) -> [HoloExpr; 3] {
        let id = RMatrix3::identity();
        HoloExpr::momentum_vector(&anchor, &id, &id)
    }

    #[test]
    fn entire_exponential_has_tiny_residual() {
        let [k0, k1, k2] = k(Vec3::new(1.2f64.hypot(0.4).hypot(1.0), 0.4, 1.0));
        let b = [c(0.1, -1.0), c(0.3, -0.3), c(-0.2, 0.0)];
        let phase = (k0 * b[0] - k1 * b[1] - k2 * b[2]) * c(0.0, 1.0);
        let contour = Contour::rectangle(-0.5, 0.5, 0.5, 1.5).unwrap();
        assert!(contour.perimeter() <= 4.0);
        assert!(morera_residual(&phase.exp(), &contour).unwrap() < 1e-10);
    }

    #[test]
    fn panel_refinement_converges_fast() {
        // exp(6z) on a large rectangle: the panel error must fall at least
        // like h⁴ until it reaches round-off.
        let e = (HoloExpr::param() * c(6.0, 0.0)).exp();
        let contour = Contour::rectangle(-1.0, 1.0, 0.2, 2.9).unwrap();
        let r: Vec<f64> = [4.0, 2.0, 1.0]
            .iter()
            .map(|&p| morera_residual_with(&e, &contour, p, BranchMode::Tracked).unwrap())
            .collect();
        let scale = 6f64.exp();
        assert!(r[0] > 1e-9 * scale, "coarse rule should be visibly inexact: {r:?}");
        for w in r.windows(2) {
            assert!(w[1] < w[0] / 16.0 || w[1] < 1e-12 * scale, "{r:?}");
        }
    }

    #[test]
    fn principal_branch_across_cut_breaks_analyticity() {
        // (k₀ − k₁)² = m² e^{2z} crosses the negative axis at Im z = π/2.
        let m = 1.0;
        let [k0, k1, _] = k(Vec3::new(m, 0.0, 0.0));
        let d = k0 - k1;
        let e = (d.clone() * d).pow(0.3);
        let contour = Contour::rectangle(-0.5, 0.5, 0.3, 2.8).unwrap();
        let tracked = morera_residual(&e, &contour).unwrap();
        let broken = morera_residual_with(&e, &contour, DEFAULT_PANEL, BranchMode::Principal).unwrap();
        assert!(tracked < 1e-12, "{tracked}");
        assert!(broken > 1e-3, "{broken}");
    }

    #[test]
    fn contour_must_be_inside() {
        assert!(Contour::rectangle(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(Contour::rectangle(0.0, 1.0, 0.5, 3.5).is_err());
        assert!(Contour::new(vec![c(0.0, 1.0), c(1.0, 1.0)]).is_err());
    }
}
