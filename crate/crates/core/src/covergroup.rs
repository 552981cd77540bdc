//! The universal covering group of the proper orthochronous Lorentz group in
//! 2+1 dimensions.
//!
//! Elements are stored in Bargmann-type coordinates `(γ, ω)` with `|γ| < 1`
//! and `ω ∈ ℝ` unbounded. They correspond to the SU(1,1) matrix
//!
//! ```text
//!   [[α, β], [β̄, ᾱ]],   α = e^{iω/2} / √(1 − |γ|²),   β = γ α
//! ```
//!
//! which acts on spacetime through the adjoint action on
//! `M(x) = [[i x⁰, x¹ + i x²], [x¹ − i x², −i x⁰]]`. With this choice the
//! rotation subgroup is `(0, ω)` (counter-clockwise rotation by `ω`) and the
//! x¹-boost subgroup is `(i tanh(t/2), 0)`. Since `ω` is never reduced, the
//! 2π-rotation `(0, 2π)` is a nontrivial deck transformation.

use std::f64::consts::PI;
use std::ops::Mul;

use crate::minkowski::{c, RMatrix3, Vec3, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverElement {
    gamma: C64,
    omega: f64,
}

/// One-parameter subgroups with canonical lifts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OneParameter {
    Rotation,
    Boost1,
    /// Boost along the spatial direction at the given angle.
    BoostDir(f64),
}

impl CoverElement {
    /// Panics if `|gamma| >= 1` or a coordinate is not finite.
    pub fn new(gamma: C64, omega: f64) -> Self {
        Self::try_new(gamma, omega).expect("cover coordinates out of range")
    }

    pub fn try_new(gamma: C64, omega: f64) -> Option<Self> {
        (gamma.norm() < 1.0 && gamma.is_finite() && omega.is_finite())
            .then_some(Self { gamma, omega })
    }

    pub fn identity() -> Self {
        Self { gamma: c(0.0, 0.0), omega: 0.0 }
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let phase = C64::from_polar(1.0, -other.omega);
        let den = c(1.0, 0.0) + self.gamma * other.gamma.conj() * phase;
        // |γ₁γ₂| < 1 keeps the denominator in the right half plane, so its
        // principal argument is the continuous one.
        Self {
            gamma: (other.gamma + self.gamma * phase) / den,
            omega: self.omega + other.omega + 2.0 * den.arg(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            gamma: -self.gamma * C64::from_polar(1.0, self.omega),
            omega: -self.omega,
        }
    }

    /// The SU(1,1) entries `(α, β)`.
    pub fn spinor(&self) -> (C64, C64) {
        let alpha = C64::from_polar(1.0, self.omega / 2.0) / (1.0 - self.gamma.norm_sqr()).sqrt();
        (alpha, self.gamma * alpha)
    }

    /// The Lorentz matrix this element covers.
    pub fn project(&self) -> RMatrix3 {
        let (a, b) = self.spinor();
        let mut out = RMatrix3::zeros();
        for j in 0..3 {
            let mut x = Vec3::zeros();
            x[j] = 1.0;
            let y = adjoint_action(a, b, &x);
            out.set_column(j, &y);
        }
        out
    }

    pub fn act_on_vector(&self, x: &Vec3) -> Vec3 {
        let (a, b) = self.spinor();
        adjoint_action(a, b, x)
    }

    /// Lift of `J · project(self) · J` continuous from the identity.
    pub fn j_conjugate(&self) -> Self {
        Self { gamma: -self.gamma.conj(), omega: -self.omega }
    }

    /// Splits `self = boost · rotation` with `boost` a pure boost
    /// (`ω = 0`) and `rotation = lift_rotation(self.omega())`.
    pub fn boost_rotation_split(&self) -> (Self, Self) {
        (
            Self { gamma: self.gamma * C64::from_polar(1.0, self.omega), omega: 0.0 },
            lift_rotation(self.omega),
        )
    }
}

impl Mul for CoverElement {
    type Output = CoverElement;
    fn mul(self, rhs: CoverElement) -> CoverElement {
        self.compose(&rhs)
    }
}

impl Mul<&CoverElement> for &CoverElement {
    type Output = CoverElement;
    fn mul(self, rhs: &CoverElement) -> CoverElement {
        self.compose(rhs)
    }
}

fn adjoint_action(a: C64, b: C64, x: &Vec3) -> Vec3 {
    // g M(x) g⁻¹ with g⁻¹ = [[ᾱ, −β], [−β̄, α]].
    let m00 = c(0.0, x[0]);
    let m01 = c(x[1], x[2]);
    let m10 = c(x[1], -x[2]);
    let m11 = c(0.0, -x[0]);
    let (ac, bc) = (a.conj(), b.conj());
    // g·M
    let t00 = a * m00 + b * m10;
    let t01 = a * m01 + b * m11;
    // (g·M)·g⁻¹, first row only
    let y00 = t00 * ac + t01 * (-bc);
    let y01 = t00 * (-b) + t01 * a;
    Vec3::new(y00.im, y01.re, y01.im)
}

pub fn lift_rotation(omega: f64) -> CoverElement {
    CoverElement { gamma: c(0.0, 0.0), omega }
}

pub fn lift_boost1(t: f64) -> CoverElement {
    CoverElement { gamma: c(0.0, (t / 2.0).tanh()), omega: 0.0 }
}

/// Boost with rapidity `t` along the direction at angle `theta`,
/// i.e. `r̃(θ) λ̃(t) r̃(−θ)`.
pub fn lift_boost_dir(theta: f64, t: f64) -> CoverElement {
    CoverElement {
        gamma: c(0.0, (t / 2.0).tanh()) * C64::from_polar(1.0, theta),
        omega: 0.0,
    }
}

pub fn lift_one_parameter(kind: OneParameter, param: f64) -> CoverElement {
    match kind {
        OneParameter::Rotation => lift_rotation(param),
        OneParameter::Boost1 => lift_boost1(param),
        OneParameter::BoostDir(theta) => lift_boost_dir(theta, param),
    }
}

/// The generator of the deck group, a full 2π rotation.
pub fn deck_generator() -> CoverElement {
    lift_rotation(2.0 * PI)
}

/// Element of the covering group of the Poincaré group, acting as
/// `x ↦ a + Λx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareElement {
    pub translation: Vec3,
    pub lorentz: CoverElement,
}

impl PoincareElement {
    pub fn new(translation: Vec3, lorentz: CoverElement) -> Self {
        Self { translation, lorentz }
    }

    pub fn identity() -> Self {
        Self::new(Vec3::zeros(), CoverElement::identity())
    }

    pub fn translation(a: Vec3) -> Self {
        Self::new(a, CoverElement::identity())
    }

    pub fn lorentz(g: CoverElement) -> Self {
        Self::new(Vec3::zeros(), g)
    }

    /// `(a, Λ̃)(a′, Λ̃′) = (a + Λa′, Λ̃Λ̃′)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            translation: self.translation + self.lorentz.act_on_vector(&other.translation),
            lorentz: self.lorentz.compose(&other.lorentz),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.lorentz.inverse();
        Self { translation: -inv.act_on_vector(&self.translation), lorentz: inv }
    }

    pub fn act_on_point(&self, x: &Vec3) -> Vec3 {
        self.translation + self.lorentz.act_on_vector(x)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::minkowski::{boost1_real, j_matrix, max_abs_diff_r, rotation, METRIC};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_element(rng: &mut impl Rng) -> CoverElement {
        let r: f64 = rng.gen_range(0.0..0.95);
        let phi: f64 = rng.gen_range(-PI..PI);
        CoverElement::new(C64::from_polar(r, phi), rng.gen_range(-9.0..9.0))
    }

    fn assert_close(a: &CoverElement, b: &CoverElement, tol_gamma: f64, tol_omega: f64) {
        assert!((a.gamma - b.gamma).norm() < tol_gamma, "{a:?} vs {b:?}");
        assert!((a.omega - b.omega).abs() < tol_omega, "{a:?} vs {b:?}");
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let g = random_element(&mut rng);
            assert_close(&CoverElement::identity().compose(&g), &g, 1e-15, 1e-15);
            assert_close(&g.compose(&CoverElement::identity()), &g, 1e-15, 1e-15);
        }
    }

    #[test]
    fn deck_rotation_changes_element_but_not_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = random_element(&mut rng);
        let h = deck_generator().compose(&g);
        assert!((h.omega - g.omega - 2.0 * PI).abs() < 1e-12);
        assert!(max_abs_diff_r(&h.project(), &g.project()) < 1e-12);
        assert!(max_abs_diff_r(&deck_generator().project(), &RMatrix3::identity()) < 1e-14);
    }

    #[test]
    fn pi_rotation_flips_boost() {
        for &t in &[-1.3, 0.2, 2.0] {
            let lhs = lift_rotation(PI).compose(&lift_boost1(t));
            let rhs = lift_boost1(-t).compose(&lift_rotation(PI));
            assert_close(&lhs, &rhs, 1e-14, 1e-14);
        }
    }

    #[test]
    fn projections_of_subgroups() {
        assert!(max_abs_diff_r(&lift_rotation(PI / 2.0).project(), &rotation(PI / 2.0)) < 1e-15);
        assert!(max_abs_diff_r(&lift_boost1(0.7).project(), &boost1_real(0.7)) < 1e-14);
        let b = lift_boost_dir(0.4, 1.1).project();
        let expected = crate::minkowski::boost_dir_real(0.4, 1.1);
        assert!(max_abs_diff_r(&b, &expected) < 1e-14);
    }

    #[test]
    fn one_parameter_laws() {
        assert_eq!(lift_rotation(0.0), CoverElement::identity());
        for &(s, t) in &[(0.3, -1.2), (2.0, 1.5), (-0.7, -0.4)] {
            let sum = lift_boost1(s + t);
            assert_close(&lift_boost1(s).compose(&lift_boost1(t)), &sum, 1e-14, 1e-14);
            let sum = lift_boost_dir(1.0, s + t);
            let prod = lift_boost_dir(1.0, s).compose(&lift_boost_dir(1.0, t));
            assert_close(&prod, &sum, 1e-14, 1e-14);
        }
        assert!(lift_rotation(4.0 * PI).omega() != lift_rotation(0.0).omega());
    }

    #[test]
    fn projection_is_proper_orthochronous() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = RMatrix3::from_diagonal(&Vec3::new(METRIC[0], METRIC[1], METRIC[2]));
        for _ in 0..200 {
            let l = random_element(&mut rng).project();
            assert!((l.determinant() - 1.0).abs() < 1e-9 * l.norm().powi(3));
            assert!(l[(0, 0)] >= 1.0 - 1e-12);
            let scale = l.norm().powi(2);
            assert!(max_abs_diff_r(&(l.transpose() * g * l), &g) < 1e-12 * scale);
        }
    }

    #[test]
    fn j_conjugation_cases() {
        let j = j_matrix();
        for &t in &[-0.8, 0.5] {
            assert_close(&lift_boost1(t).j_conjugate(), &lift_boost1(t), 1e-15, 1e-15);
        }
        for &w in &[0.3, -2.0, 7.0] {
            assert_close(&lift_rotation(w).j_conjugate(), &lift_rotation(-w), 1e-15, 1e-15);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let a = random_element(&mut rng);
            let b = random_element(&mut rng);
            assert_close(&a.j_conjugate().j_conjugate(), &a, 1e-15, 1e-15);
            let lhs = a.compose(&b).j_conjugate();
            let rhs = a.j_conjugate().compose(&b.j_conjugate());
            assert_close(&lhs, &rhs, 1e-12, 1e-10);
            let p = a.j_conjugate().project();
            let scale = p.norm();
            assert!(max_abs_diff_r(&p, &(j * a.project() * j)) < 1e-12 * scale);
        }
    }

    #[test]
    fn acting_on_vectors() {
        let x = Vec3::new(0.3, -1.0, 2.0);
        assert!((CoverElement::identity().act_on_vector(&x) - x).norm() < 1e-15);
        let e0 = Vec3::new(0.0, 0.0, -1.0);
        let y = lift_rotation(PI / 2.0).act_on_vector(&e0);
        assert!(y[1] > y[0].abs());
        let m = 1.3;
        let t = 0.9;
        let y = lift_boost1(t).act_on_vector(&Vec3::new(m, 0.0, 0.0));
        assert!((y - Vec3::new(m * t.cosh(), m * t.sinh(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn poincare_composition_matches_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let g = PoincareElement::new(
                Vec3::new(rng.gen(), rng.gen(), rng.gen()),
                random_element(&mut rng),
            );
            let h = PoincareElement::new(
                Vec3::new(rng.gen(), rng.gen(), rng.gen()),
                random_element(&mut rng),
            );
            let x = Vec3::new(rng.gen(), rng.gen(), rng.gen());
            let lhs = g.compose(&h).act_on_point(&x);
            let rhs = g.act_on_point(&h.act_on_point(&x));
            assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
            let back = g.inverse().act_on_point(&g.act_on_point(&x));
            assert!((back - x).norm() < 1e-9 * (1.0 + g.act_on_point(&x).norm()));
        }
    }

    #[test]
    fn boost_rotation_split_recomposes() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let g = random_element(&mut rng);
            let (b, r) = g.boost_rotation_split();
            assert_eq!(b.omega(), 0.0);
            assert_close(&b.compose(&r), &g, 1e-14, 1e-14);
        }
    }
}
