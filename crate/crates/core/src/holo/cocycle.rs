//! Analytic realisations of Wigner factors along the complex boost
//! `z ↦ λ̃(z)Λ̃`.
//!
//! On the real axis `e^{iΩ(λ̃(t)Λ̃, p)}` is the square of the diagonal spinor
//! entry of the little-group element. That entry is a polynomial in
//! `cosh(z/2)`, `sinh(z/2)` and the continued momentum `q(z) = Λ⁻¹Λ₁(−z)p`,
//! divided by `√(2m(p⁰+m)·2m(q⁰+m))`; its square is therefore analytic in
//! `z`. The factor `e^{isΩ}` alone is not, since the square has zeros in
//! the strip; multiplying by a compensating function of `q(z)` removes them.

use std::f64::consts::PI;
use std::sync::Arc;

use super::expr::{BranchHint, HoloExpr};
use crate::covergroup::{lift_boost1, lift_rotation, CoverElement};
use crate::minkowski::{c, MomentumPoint, RMatrix3, C64};
use crate::wigner::{
    cocycle, pull_back, u_base_pihalf, u_base_plain, u_function, wigner_angle, CocycleVariant,
    UVariant, WignerError,
};

/// Compensating function multiplied into the power base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compensator {
    /// No compensation; the result has branch points in the strip.
    Bare,
    /// The plain `u` base, built on `x¹`.
    Plain,
    /// The `π/2` base, built on `x²`.
    PiHalf,
    /// Inverse of the `π/2` base with `x¹ ↦ −x¹`.
    ReflectedPiHalfInverse,
}

/// The reference rotation `r̃(π/2)`.
pub fn quarter_turn() -> CoverElement {
    lift_rotation(PI / 2.0)
}

/// Components of `Λ⁻¹ Λ₁(−z) p`.
pub fn pulled_momentum(g: &CoverElement, p: &MomentumPoint) -> [HoloExpr; 3] {
    HoloExpr::momentum_vector(&p.to_vec(), &RMatrix3::identity(), &g.inverse().project())
}

fn half_hyperbolics() -> (HoloExpr, HoloExpr) {
    let plus = (HoloExpr::param() * c(0.5, 0.0)).exp();
    let minus = (HoloExpr::param() * c(-0.5, 0.0)).exp();
    let ch = (plus.clone() + minus.clone()) * c(0.5, 0.0);
    let sh = (plus - minus) * c(0.5, 0.0);
    (ch, sh)
}

/// `e^{iΩ(λ̃(z)Λ̃, p)}` continued analytically.
pub fn wigner_phase_sq(g: &CoverElement, p: &MomentumPoint) -> HoloExpr {
    let m = p.mass();
    let (a, b) = g.spinor();
    let (ch, sh) = half_hyperbolics();
    let i = c(0.0, 1.0);
    let alpha = ch.clone() * a + sh.clone() * (i * b.conj());
    let beta = ch.clone() * b + sh.clone() * (i * a.conj());
    let alpha_bar = ch.clone() * a.conj() + sh.clone() * (-i * b);
    let beta_bar = ch * b.conj() + sh * (-i * a);
    let [q0, q1, q2] = pulled_momentum(g, p);
    let pp = p.p0() + m;
    let pi_p = c(p.p1(), p.p2());
    let qq = q0 + c(m, 0.0);
    let pi_q_bar = q1 - q2 * i;
    let amp = qq.clone() * alpha * c(pp, 0.0)
        - pi_q_bar.clone() * beta * (i * pp)
        - qq.clone() * beta_bar * (i * pi_p)
        - pi_q_bar * alpha_bar * pi_p;
    let norm = qq * c(4.0 * m * m * pp, 0.0);
    amp.clone() * amp / norm
}

fn compensator_base(comp: Compensator, q: &[HoloExpr; 3], m: f64) -> Option<HoloExpr> {
    let i = c(0.0, 1.0);
    let [q0, q1, q2] = q.clone();
    match comp {
        Compensator::Bare => None,
        Compensator::Plain => {
            let d = q0 - q1;
            Some(
                d.clone() * c(1.0 / m, 0.0) * (d.clone() + c(m, 0.0) - q2.clone() * i)
                    / (d + c(m, 0.0) + q2 * i),
            )
        }
        Compensator::PiHalf => {
            let d = q0 - q2;
            Some(
                d.clone() * c(1.0 / m, 0.0) * (d.clone() + c(m, 0.0) + q1.clone() * i)
                    / (d + c(m, 0.0) - q1 * i),
            )
        }
        Compensator::ReflectedPiHalfInverse => {
            let d = q0 - q2;
            Some(
                (d.clone() + c(m, 0.0) + q1.clone() * i)
                    / (d.clone() * c(1.0 / m, 0.0) * (d + c(m, 0.0) - q1 * i)),
            )
        }
    }
}

fn real_compensator_arg(comp: Compensator, q: &MomentumPoint) -> f64 {
    match comp {
        Compensator::Bare => 0.0,
        Compensator::Plain => u_base_plain(q).arg(),
        Compensator::PiHalf => u_base_pihalf(q).arg(),
        Compensator::ReflectedPiHalfInverse => u_base_pihalf(q).arg(),
    }
}

/// `(e^{iΩ(λ̃(z)Λ̃,p)} · w(q(z)))^s` with the sheet fixed on the real axis by
/// the lifted angle `Ω` and the principal argument of `w`.
pub fn wigner_power(g: &CoverElement, p: &MomentumPoint, s: f64, comp: Compensator) -> HoloExpr {
    wigner_base(g, p, comp).pow_with_hint(s, wigner_branch_hint(g, p, comp))
}

/// The base `e^{iΩ(λ̃(z)Λ̃,p)} · w(q(z))` of [`wigner_power`].
pub fn wigner_base(g: &CoverElement, p: &MomentumPoint, comp: Compensator) -> HoloExpr {
    let phase = wigner_phase_sq(g, p);
    match compensator_base(comp, &pulled_momentum(g, p), p.mass()) {
        Some(w) => phase * w,
        None => phase,
    }
}

/// Argument of [`wigner_base`] on the real axis, on the sheet fixed by `Ω`.
pub fn wigner_branch_hint(g: &CoverElement, p: &MomentumPoint, comp: Compensator) -> BranchHint {
    let (g, p) = (*g, *p);
    BranchHint(Arc::new(move |t: f64| {
        let gt = lift_boost1(t).compose(&g);
        wigner_angle(&gt, &p).value + real_compensator_arg(comp, &pull_back(&gt, &p))
    }))
}

/// `ω(λ̃(z)Λ̃, p) = e^{isΩ(λ̃(z)Λ̃,p)} u_{π/2}(Λ⁻¹Λ₁(−z)p)`.
pub fn omega_factor(g: &CoverElement, p: &MomentumPoint, s: f64) -> HoloExpr {
    wigner_power(g, p, s, Compensator::PiHalf) * C64::from_polar(1.0, s * PI / 2.0)
}

/// `c(λ̃(z)Λ̃, p) = u(p)⁻¹ e^{isΩ(λ̃(z)Λ̃,p)} u(Λ⁻¹Λ₁(−z)p)`.
pub fn cocycle_expr(g: &CoverElement, p: &MomentumPoint, s: f64) -> Result<HoloExpr, WignerError> {
    let u = u_function(p, UVariant::Plain, s)?;
    Ok(wigner_power(g, p, s, Compensator::Plain) * (c(1.0, 0.0) / u))
}

/// `e^{isΩ(λ̃(z)Λ̃,p)}` with no compensation.
pub fn bare_wigner_factor(g: &CoverElement, p: &MomentumPoint, s: f64) -> HoloExpr {
    wigner_power(g, p, s, Compensator::Bare)
}

/// Predicted value of [`omega_factor`] at `z = iπ`:
/// `e^{iπs} e^{isΩ(J Λ̃Λ̃₀ J, p)} u(J(ΛΛ₀)⁻¹J p)` with `Λ̃₀ = r̃(π/2)`.
pub fn omega_factor_boundary(g: &CoverElement, p: &MomentumPoint, s: f64) -> Result<C64, WignerError> {
    let jg = g.compose(&quarter_turn()).j_conjugate();
    let phase = C64::from_polar(1.0, PI * s + s * wigner_angle(&jg, p).value);
    Ok(phase * u_function(&pull_back(&jg, p), UVariant::Plain, s)?)
}

/// Predicted value of [`cocycle_expr`] at `z = iπ`: `e^{iπs} conj c(Λ̃, −Jp)`.
pub fn cocycle_boundary(g: &CoverElement, p: &MomentumPoint, s: f64) -> Result<C64, WignerError> {
    let v = cocycle(g, &p.minus_j(), CocycleVariant::Plain, s)?.value;
    Ok(C64::from_polar(1.0, PI * s) * v.conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conegeom::in_wedge_class;
    use crate::covergroup::lift_boost_dir;
    use crate::holo::{boundary_at_ipi, continue_along, morera_residual, Contour, StripPath};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn admissible(rng: &mut impl Rng) -> CoverElement {
        loop {
            let g = lift_boost_dir(rng.gen_range(-PI..PI), rng.gen_range(0.0..1.5))
                .compose(&lift_rotation(rng.gen_range(-1.2..1.2)));
            if in_wedge_class(&g.compose(&quarter_turn())) {
                return g;
            }
        }
    }

    fn point(rng: &mut impl Rng, m: f64) -> MomentumPoint {
        MomentumPoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), m).unwrap()
    }

    #[test]
    fn real_axis_matches_wigner_angle() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let g = admissible(&mut rng);
            let p = point(&mut rng, 1.3);
            let e = wigner_phase_sq(&g, &p);
            for &t in &[-1.0, 0.0, 0.7] {
                let direct = wigner_angle(&lift_boost1(t).compose(&g), &p).phase();
                assert!((e.eval_principal(c(t, 0.0)) - direct).norm() < 1e-12);
            }
            let s = 0.41;
            let w = continue_along(&omega_factor(&g, &p, s), &StripPath::straight(0.3, c(0.3, 0.0)).unwrap())
                .unwrap();
            let gt = lift_boost1(0.3).compose(&g);
            let direct = C64::from_polar(1.0, s * wigner_angle(&gt, &p).value)
                * u_function(&pull_back(&gt, &p), UVariant::PiHalf, s).unwrap();
            assert!((w - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn boundary_value_and_anchor_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for &s in &[0.37, -0.81, 1.5] {
            for _ in 0..10 {
                let g = admissible(&mut rng);
                let p = point(&mut rng, 0.9);
                let e = omega_factor(&g, &p, s);
                let v0 = boundary_at_ipi(&e, 0.0).unwrap();
                let v1 = boundary_at_ipi(&e, 0.5).unwrap();
                let expected = omega_factor_boundary(&g, &p, s).unwrap();
                assert!((v0 - expected).norm() < 1e-10, "{v0} {expected}");
                assert!((v0 - v1).norm() < 1e-10, "s={s} g={g:?} p={p:?} ratio={}", v1 / v0);
            }
        }
    }

    #[test]
    fn cocycle_boundary_in_wedge_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let s = 0.29;
        for _ in 0..20 {
            let g = admissible(&mut rng).compose(&quarter_turn());
            let p = point(&mut rng, 1.0);
            let v = boundary_at_ipi(&cocycle_expr(&g, &p, s).unwrap(), 0.0).unwrap();
            assert!((v - cocycle_boundary(&g, &p, s).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn compensated_factor_is_analytic() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let contour = Contour::rectangle(-1.5, 1.5, 0.05, PI - 0.05).unwrap();
        for _ in 0..5 {
            let g = admissible(&mut rng);
            let p = point(&mut rng, 1.0);
            let r = morera_residual(&omega_factor(&g, &p, 0.37), &contour).unwrap();
            assert!(r < 1e-8, "{r}");
        }
    }

    #[test]
    fn bare_factor_is_path_dependent() {
        let g = lift_boost_dir(0.7, 0.8).compose(&lift_rotation(0.3));
        let contour = Contour::rectangle(-5.0, 5.0, 0.05, PI - 0.05).unwrap();
        for &(p1, p2) in &[(0.0, 0.0), (0.5, -1.0), (-1.2, 0.4)] {
            let p = MomentumPoint::new(p1, p2, 1.0).unwrap();
            let e = bare_wigner_factor(&g, &p, 0.37);
            let left = boundary_at_ipi(&e, -4.0).unwrap();
            let right = boundary_at_ipi(&e, 4.0).unwrap();
            assert!((left - right).norm() > 1e-3, "{left} {right}");
            assert!(morera_residual(&e, &contour).unwrap() > 1e-3);
            let comp = omega_factor(&g, &p, 0.37);
            let (l, r) = (boundary_at_ipi(&comp, -4.0).unwrap(), boundary_at_ipi(&comp, 4.0).unwrap());
            assert!((l - r).norm() < 1e-10);
        }
    }
}
