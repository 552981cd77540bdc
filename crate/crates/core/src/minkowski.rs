//! Real and complex 2+1 Minkowski vectors, mass shells and the complexified
//! x¹-boost family.
//!
//! The metric signature is fixed to (+,−,−) here and nowhere else. Every other
//! module imports [`METRIC`] or [`minkowski_product`] instead of spelling out
//! signs by hand.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Real spacetime vector `(x⁰, x¹, x²)`.
pub type Vec3 = Vector3<f64>;
/// Complex spacetime vector `(k⁰, k¹, k²)`.
pub type CVec3 = Vector3<C64>;
/// Real 3×3 matrix acting on [`Vec3`].
pub type RMatrix3 = Matrix3<f64>;
/// Complex 3×3 matrix acting on [`CVec3`].
pub type CMatrix3 = Matrix3<C64>;

/// Diagonal of the metric tensor.
pub const METRIC: [f64; 3] = [1.0, -1.0, -1.0];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("mass must be strictly positive, got {0}")]
    NonPositiveMass(f64),
    #[error("momentum component is not finite")]
    NonFinite,
    #[error("vector is not on the positive mass shell (residual {0:e})")]
    OffShell(f64),
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Bilinear (not sesquilinear) Minkowski product `x⁰y⁰ − x¹y¹ − x²y²`.
pub fn minkowski_product(x: &CVec3, y: &CVec3) -> C64 {
    x[0] * y[0] - x[1] * y[1] - x[2] * y[2]
}

pub fn minkowski_product_real(x: &Vec3, y: &Vec3) -> f64 {
    x[0] * y[0] - x[1] * y[1] - x[2] * y[2]
}

pub fn complexify(x: &Vec3) -> CVec3 {
    x.map(|v| c(v, 0.0))
}

pub fn complexify_matrix(m: &RMatrix3) -> CMatrix3 {
    m.map(|v| c(v, 0.0))
}

/// A point on the positive mass shell. Only the spatial momentum and the
/// mass are stored; the energy is always recomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    p1: f64,
    p2: f64,
    m: f64,
}

impl MomentumPoint {
    pub fn new(p1: f64, p2: f64, m: f64) -> Result<Self, KinematicsError> {
        if !(p1.is_finite() && p2.is_finite() && m.is_finite()) {
            return Err(KinematicsError::NonFinite);
        }
        if m <= 0.0 {
            return Err(KinematicsError::NonPositiveMass(m));
        }
        Ok(Self { p1, p2, m })
    }

    /// Rest momentum `(m, 0, 0)`.
    pub fn rest(m: f64) -> Result<Self, KinematicsError> {
        Self::new(0.0, 0.0, m)
    }

    /// Builds a shell point from a real vector whose energy is discarded
    /// after checking it agrees with the shell to `tol` (relative).
    pub fn from_vec(v: &Vec3, m: f64, tol: f64) -> Result<Self, KinematicsError> {
        let p = Self::new(v[1], v[2], m)?;
        let resid = (v[0] - p.p0()).abs() / p.p0();
        if resid > tol {
            return Err(KinematicsError::OffShell(resid));
        }
        Ok(p)
    }

    pub fn p0(&self) -> f64 {
        (self.p1 * self.p1 + self.p2 * self.p2 + self.m * self.m).sqrt()
    }
    pub fn p1(&self) -> f64 {
        self.p1
    }
    pub fn p2(&self) -> f64 {
        self.p2
    }
    pub fn mass(&self) -> f64 {
        self.m
    }

    pub fn to_vec(&self) -> Vec3 {
        Vec3::new(self.p0(), self.p1, self.p2)
    }

    pub fn to_cvec(&self) -> CVec3 {
        complexify(&self.to_vec())
    }

    /// Applies a real Lorentz matrix and re-derives the energy.
    pub fn transform(&self, lorentz: &RMatrix3) -> Self {
        let v = lorentz * self.to_vec();
        Self { p1: v[1], p2: v[2], m: self.m }
    }

    /// The point `−J p = (p⁰, p¹, −p²)` of the positive shell.
    pub fn minus_j(&self) -> Self {
        Self { p1: self.p1, p2: -self.p2, m: self.m }
    }
}

/// Validating constructor for a positive-shell point.
pub fn shell_point(p1: f64, p2: f64, m: f64) -> Result<MomentumPoint, KinematicsError> {
    MomentumPoint::new(p1, p2, m)
}

/// Real x¹-boost with rapidity `t`.
pub fn boost1_real(t: f64) -> RMatrix3 {
    let (ch, sh) = (t.cosh(), t.sinh());
    RMatrix3::new(ch, sh, 0.0, sh, ch, 0.0, 0.0, 0.0, 1.0)
}

/// Spatial rotation by `omega` in the (x¹, x²) plane, counter-clockwise.
pub fn rotation(omega: f64) -> RMatrix3 {
    let (s, co) = omega.sin_cos();
    RMatrix3::new(1.0, 0.0, 0.0, 0.0, co, -s, 0.0, s, co)
}

/// Boost with rapidity `t` along the spatial direction at angle `theta`.
pub fn boost_dir_real(theta: f64, t: f64) -> RMatrix3 {
    rotation(theta) * boost1_real(t) * rotation(-theta)
}

/// The reflection `J = diag(−1, −1, 1)`.
pub fn j_matrix() -> RMatrix3 {
    RMatrix3::from_diagonal(&Vec3::new(-1.0, -1.0, 1.0))
}

/// Complexified x¹-boost `Λ₁(t + iθ) = (J(θ) + i sin θ σ) Λ₁(t)`, where
/// `J(θ) = diag(cos θ, cos θ, 1)` and `σ` swaps x⁰ and x¹ and kills x².
pub fn boost1(z: C64) -> CMatrix3 {
    let (t, theta) = (z.re, z.im);
    let (s, co) = theta.sin_cos();
    let zero = c(0.0, 0.0);
    let factor = CMatrix3::new(
        c(co, 0.0),
        c(0.0, s),
        zero,
        c(0.0, s),
        c(co, 0.0),
        zero,
        zero,
        zero,
        c(1.0, 0.0),
    );
    factor * complexify_matrix(&boost1_real(t))
}

/// `J x = (−x⁰, −x¹, x²)`.
pub fn j_reflect(x: &CVec3) -> CVec3 {
    CVec3::new(-x[0], -x[1], x[2])
}

/// Maximum entrywise deviation of `Λᵀ g Λ` from `g`.
pub fn metric_residual(lambda: &CMatrix3) -> f64 {
    let g = complexify_matrix(&RMatrix3::from_diagonal(&Vec3::new(
        METRIC[0], METRIC[1], METRIC[2],
    )));
    let r = lambda.transpose() * g * lambda - g;
    r.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff_c(a: &CMatrix3, b: &CMatrix3) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff_r(a: &RMatrix3, b: &RMatrix3) -> f64 {
    (a - b).iter().map(|v| v.abs()).fold(0.0, f64::max)
}
