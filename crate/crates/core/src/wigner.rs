//! Standard boosts, the lifted Wigner rotation, the compensating functions
//! `u` and the derived multiplier cocycles.
//!
//! `Ω(Λ̃, p)` is additive: `Ω(Λ̃Λ̃′, p) = Ω(Λ̃, p) + Ω(Λ̃′, Λ⁻¹p)` and
//! `Ω(1, p) = 0`. It is read off as the unbounded angle coordinate of the
//! little-group element, so no path tracking is needed.

use std::f64::consts::PI;

use thiserror::Error;

use crate::covergroup::CoverElement;
use crate::minkowski::{c, KinematicsError, MomentumPoint, C64};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WignerError {
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("power base {0} lies on the branch cut")]
    OnBranchCut(C64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerAngle {
    pub value: f64,
}

impl WignerAngle {
    pub fn phase(&self) -> C64 {
        C64::from_polar(1.0, self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocycleValue {
    pub value: C64,
}

/// Which compensator `u` to use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UVariant {
    /// Built on the direction `x¹`.
    Plain,
    /// Built on the direction `x²`, carrying the phase `e^{isπ/2}`.
    PiHalf,
    /// `e^{isΩ(g₀,p)} u(Λ₀⁻¹p)` for a reference element `g₀`.
    Rotated(CoverElement),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CocycleVariant {
    Plain,
    Rotated(CoverElement),
}

/// Principal power `exp(s·Log b)` with the cut on the closed negative axis.
pub fn principal_power(base: C64, s: f64) -> Result<C64, WignerError> {
    if !base.is_finite() || (base.im == 0.0 && base.re <= 0.0) {
        return Err(WignerError::OnBranchCut(base));
    }
    Ok((c(s, 0.0) * base.ln()).exp())
}

/// Rotation-free element whose projection maps `(m,0,0)` to `p`.
pub fn standard_boost(p: &MomentumPoint) -> CoverElement {
    let gamma = c(0.0, 1.0) * c(p.p1(), p.p2()) / (p.p0() + p.mass());
    CoverElement::new(gamma, 0.0)
}

/// `Λ⁻¹ p` for the projection `Λ` of `g`.
pub fn pull_back(g: &CoverElement, p: &MomentumPoint) -> MomentumPoint {
    p.transform(&g.inverse().project())
}

/// `b(p)⁻¹ g b(Λ⁻¹p)`, an element of the (lifted) rotation subgroup.
pub fn little_group_element(g: &CoverElement, p: &MomentumPoint) -> CoverElement {
    let q = pull_back(g, p);
    standard_boost(p).inverse().compose(g).compose(&standard_boost(&q))
}

pub fn wigner_angle(g: &CoverElement, p: &MomentumPoint) -> WignerAngle {
    WignerAngle { value: little_group_element(g, p).omega() }
}

/// Base of the plain compensator before exponentiation.
pub fn u_base_plain(p: &MomentumPoint) -> C64 {
    let (m, a) = (p.mass(), p.p0() - p.p1());
    c(a / m, 0.0) * c(a + m, -p.p2()) / c(a + m, p.p2())
}

/// Base of the `π/2` compensator before exponentiation and phase.
pub fn u_base_pihalf(p: &MomentumPoint) -> C64 {
    let (m, a) = (p.mass(), p.p0() - p.p2());
    c(a / m, 0.0) * c(a + m, p.p1()) / c(a + m, -p.p1())
}

pub fn u_function(p: &MomentumPoint, variant: UVariant, s: f64) -> Result<C64, WignerError> {
    match variant {
        UVariant::Plain => principal_power(u_base_plain(p), s),
        UVariant::PiHalf => {
            Ok(C64::from_polar(1.0, s * PI / 2.0) * principal_power(u_base_pihalf(p), s)?)
        }
        UVariant::Rotated(g0) => {
            let phase = C64::from_polar(1.0, s * wigner_angle(&g0, p).value);
            Ok(phase * u_function(&pull_back(&g0, p), UVariant::Plain, s)?)
        }
    }
}

/// `c(Λ̃,p) = u(p)⁻¹ e^{isΩ(Λ̃,p)} u(Λ⁻¹p)` for the chosen compensator.
pub fn cocycle(
    g: &CoverElement,
    p: &MomentumPoint,
    variant: CocycleVariant,
    s: f64,
) -> Result<CocycleValue, WignerError> {
    let uv = match variant {
        CocycleVariant::Plain => UVariant::Plain,
        CocycleVariant::Rotated(g0) => UVariant::Rotated(g0),
    };
    let phase = C64::from_polar(1.0, s * wigner_angle(g, p).value);
    let value = phase * u_function(&pull_back(g, p), uv, s)? / u_function(p, uv, s)?;
    Ok(CocycleValue { value })
}
