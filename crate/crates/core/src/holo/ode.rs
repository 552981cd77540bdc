//! Continuation of a factor `f₁` through its logarithmic derivative.
//!
//! If `h(t, t₀) = f₂(t) f₁(t + t₀)` is known in closed form and analytic in
//! `t`, then `f₁⁻¹ f₁′ = h⁻¹ ĥ` with `ĥ = ∂_{t₀} h |_{t₀=0}`, and `f₁` can be
//! integrated from its real-axis values. Where `det h` vanishes on the path
//! the integration runs along the path shifted by a real `t₀` and the
//! result is pulled back with `f₁(t) = f₁(t+t₀) h(t+t₀)⁻¹ h(t+t₀, −t₀)`.

use nalgebra::DMatrix;

use super::path::StripPath;
use super::HoloError;
use crate::minkowski::{c, C64};

pub type CMatrixN = DMatrix<C64>;

pub trait ProductFamily {
    /// `h(t, t₀) = f₂(t) f₁(t + t₀)`.
    fn h(&self, t: C64, t0: f64) -> Result<CMatrixN, HoloError>;
    /// `f₁` on the real axis.
    fn f1_real(&self, t: f64) -> CMatrixN;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    /// Largest integration step.
    pub max_step: f64,
    /// Steps are also bounded by `step_scale / ‖h⁻¹ĥ‖`.
    pub step_scale: f64,
    /// Finite-difference step in `t₀`.
    pub delta: f64,
    /// Determinant modulus below which `h` counts as singular.
    pub det_tol: f64,
    /// Real shift of the detour path.
    pub detour_shift: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { max_step: 0.01, step_scale: 0.05, delta: 1e-3, det_tol: 1e-12, detour_shift: 0.1 }
    }
}

fn central(family: &dyn ProductFamily, t: C64, d: f64) -> Result<CMatrixN, HoloError> {
    Ok((family.h(t, d)? - family.h(t, -d)?) / c(2.0 * d, 0.0))
}

/// `h⁻¹ ĥ` at `t`, with a Richardson-extrapolated central difference.
pub fn log_derivative(
    family: &dyn ProductFamily,
    t: C64,
    opts: &OdeOptions,
) -> Result<CMatrixN, HoloError> {
    let h0 = family.h(t, 0.0)?;
    if !(h0.determinant().norm() > opts.det_tol) {
        return Err(HoloError::SingularDeterminant(t));
    }
    let d1 = central(family, t, opts.delta)?;
    let d2 = central(family, t, opts.delta / 2.0)?;
    let hat = (d2 * c(4.0, 0.0) - d1) / c(3.0, 0.0);
    h0.lu().solve(&hat).ok_or(HoloError::SingularDeterminant(t))
}

fn integrate(
    family: &dyn ProductFamily,
    vertices: &[C64],
    mut f: CMatrixN,
    opts: &OdeOptions,
) -> Result<CMatrixN, HoloError> {
    for w in vertices.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = (b - a).norm();
        if len == 0.0 {
            continue;
        }
        let dir = (b - a) / len;
        let mut tau = 0.0;
        while tau < len {
            let z = a + dir * tau;
            let g1 = log_derivative(family, z, opts)?;
            let norm = g1.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let step = opts.max_step.min(opts.step_scale / norm.max(1e-300)).min(len - tau);
            let h = dir * step;
            let k1 = &f * &g1;
            let g2 = log_derivative(family, z + h / 2.0, opts)?;
            let k2 = (&f + &k1 * (h / 2.0)) * &g2;
            let k3 = (&f + &k2 * (h / 2.0)) * &g2;
            let g4 = log_derivative(family, z + h, opts)?;
            let k4 = (&f + &k3 * h) * &g4;
            f += (k1 + k2 * c(2.0, 0.0) + k3 * c(2.0, 0.0) + k4) * (h / 6.0);
            tau += step;
        }
    }
    Ok(f)
}

/// `f₁` at the end of `path` by integrating `f₁′ = f₁ h⁻¹ĥ` from its
/// real-axis value, detouring around singular `h` when needed.
pub fn ode_continue(
    family: &dyn ProductFamily,
    path: &StripPath,
    opts: &OdeOptions,
) -> Result<CMatrixN, HoloError> {
    let start = family.f1_real(path.start());
    match integrate(family, path.vertices(), start, opts) {
        Err(HoloError::SingularDeterminant(_)) => ode_continue_detour(family, path, opts),
        other => other,
    }
}

/// The shifted-path variant used around zeros of `det h`.
pub fn ode_continue_detour(
    family: &dyn ProductFamily,
    path: &StripPath,
    opts: &OdeOptions,
) -> Result<CMatrixN, HoloError> {
    let t0 = opts.detour_shift;
    let shifted: Vec<C64> = path.vertices().iter().map(|v| v + t0).collect();
    let f_shift = integrate(family, &shifted, family.f1_real(path.start() + t0), opts)?;
    let end = path.end() + t0;
    let h_end = family.h(end, 0.0)?;
    let back = h_end.lu().solve(&family.h(end, -t0)?).ok_or(HoloError::SingularDeterminant(end))?;
    Ok(f_shift * back)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Exponential {
        a: C64,
        zero: Option<C64>,
    }

    impl ProductFamily for Exponential {
        fn h(&self, t: C64, t0: f64) -> Result<CMatrixN, HoloError> {
            let f2 = self.zero.map_or(c(1.0, 0.0), |z0| t - z0);
            Ok(CMatrixN::from_element(1, 1, f2 * (c(0.0, 1.0) * self.a * (t + t0)).exp()))
        }
        fn f1_real(&self, t: f64) -> CMatrixN {
            CMatrixN::from_element(1, 1, (c(0.0, t) * self.a).exp())
        }
    }

    #[test]
    fn log_linear_family_is_reproduced() {
        let fam = Exponential { a: c(0.8, -0.3), zero: None };
        let path = StripPath::new(0.2, &[c(0.2, 1.5), c(-0.4, 2.0)]).unwrap();
        let v = ode_continue(&fam, &path, &OdeOptions::default()).unwrap()[(0, 0)];
        let expected = (c(0.0, 1.0) * fam.a * c(-0.4, 2.0)).exp();
        assert!((v - expected).norm() < 1e-9 * expected.norm());
    }

    #[test]
    fn zero_of_determinant_is_detoured() {
        let z0 = c(0.0, 0.5);
        let fam = Exponential { a: c(1.1, 0.0), zero: Some(z0) };
        let path = StripPath::new(0.0, &[z0, c(0.0, 1.0)]).unwrap();
        let opts = OdeOptions::default();
        let direct = super::integrate(&fam, path.vertices(), fam.f1_real(0.0), &opts);
        assert!(matches!(direct, Err(HoloError::SingularDeterminant(_))));
        let v = ode_continue(&fam, &path, &opts).unwrap()[(0, 0)];
        let expected = (c(0.0, 1.0) * fam.a * c(0.0, 1.0)).exp();
        assert!((v - expected).norm() < 1e-8, "{v} {expected}");
    }
}
