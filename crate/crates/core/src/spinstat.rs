//! The statistics-phase pipeline on a constructed toy model.
//!
//! The model consists of two wave-function matrices `Ψ₁`, `Ψ₂` whose
//! dressed families `Ψ₁(t;p)` and `Ψ₂(t;p)*` are analytic in the strip, and
//! of conjugate matrices `Ψ₁ᶜ`, `Ψ₂ᶜ` built from closed-form boundary values,
//! an injected matrix `D` and the target phase `e^{2πis}`. Every identity
//! below is checked by continuing the dressed families numerically and
//! comparing with the closed forms or with a second continuation route.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::conegeom::{
    difference_dual_contains_negative_axis, exchange_hypothesis, in_wedge_class, path_equivalent, poincare_act_path,
    ConePath, ConeError, SpatialSector,
};
use crate::covergroup::{lift_boost1, lift_rotation, CoverElement, PoincareElement};
use crate::holo::{
    boundary_at_ipi, continue_along, morera_residual_relative, omega_factor, pulled_momentum, quarter_turn,
    wigner_base, wigner_power, CMatrixN, Compensator, Contour, HoloError, HoloExpr, ProductFamily,
    StripPath,
};
use crate::minkowski::{boost1, c, rotation, CVec3, KinematicsError, MomentumPoint, Vec3, C64};
use crate::wigner::{
    principal_power, pull_back, u_base_pihalf, u_function, wigner_angle, UVariant, WignerError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpinStatError {
    #[error(transparent)]
    Holo(#[from] HoloError),
    #[error(transparent)]
    Wigner(#[from] WignerError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("invalid model data: {0}")]
    InvalidModel(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("singular matrix at p = ({0}, {1})")]
    Singular(f64, f64),
    #[error("no scalar relates the two sides (relative mismatch {0:e})")]
    NonScalarMismatch(f64),
}

type Result<T> = std::result::Result<T, SpinStatError>;

/// Data of the toy construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyModel {
    pub s: f64,
    pub m: f64,
    pub n: usize,
    /// Complex translations with past-directed imaginary parts.
    pub shift_first: CVec3,
    pub shift_second: CVec3,
    pub amplitude_first: CMatrixN,
    pub amplitude_second: CMatrixN,
    /// Matrix injected into the conjugate family.
    pub intertwiner: CMatrixN,
    pub omega_target: C64,
    /// Approach paths of the two localisation cones, `path1 = r̃(π)·path2`.
    pub path1: ConePath,
    pub path2: ConePath,
}

/// The four wave-function matrices of a [`ToyModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct WaveMatrixFamily {
    model: ToyModel,
    intertwiner_inverse: CMatrixN,
}

/// Which analytic dressed family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DressedFactor {
    /// `Ψ₁(t;p)`.
    First,
    /// `Ψ₂(t;p)*`, conjugated before continuation.
    SecondAdjoint,
}

fn random_matrix(rng: &mut impl Rng, n: usize) -> CMatrixN {
    CMatrixN::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrixN {
    random_matrix(rng, n).qr().q()
}

fn translation(rng: &mut impl Rng) -> CVec3 {
    let re = [0, 1, 2].map(|_| rng.gen_range(-0.5..0.5));
    let im = [-(0.5 + 0.3 * rng.gen::<f64>()), -0.2 * rng.gen::<f64>(), 0.1 * rng.gen_range(-1.0..1.0)];
    CVec3::new(c(re[0], im[0]), c(re[1], im[1]), c(re[2], im[2]))
}

/// Cone data of the run: `C₁` around `+x¹`, `C₂` around `−x¹`, with the
/// approach path of `C₁` the `π`-rotation of that of `C₂`.
pub fn default_cone_paths() -> Result<(ConePath, ConePath)> {
    let c1 = SpatialSector::with_apex(-0.3, 0.3, Vec3::new(0.0, 1.0, 0.0))?;
    let c2 = SpatialSector::with_apex(PI - 0.3, PI + 0.3, Vec3::new(0.0, -1.0, 0.0))?;
    Ok((ConePath::new(c1, 0.0)?, ConePath::new(c2, -PI)?))
}

/// Validates the cone data: the dual of `C₂ − C₁` contains the negative
/// `x¹` axis, the paths satisfy the exchange hypothesis, and the first path
/// is the `π`-rotation of the second.
pub fn validate_geometry(model: &ToyModel) -> Result<()> {
    let (c1, c2) = (model.path1.sector()?, model.path2.sector()?);
    if !difference_dual_contains_negative_axis(&c1, &c2) {
        return Err(SpinStatError::Hypothesis("negative axis not in dual of difference cone".into()));
    }
    if !exchange_hypothesis(&model.path1, &model.path2) {
        return Err(SpinStatError::Hypothesis("exchange hypothesis fails".into()));
    }
    let rotated = poincare_act_path(&PoincareElement::lorentz(lift_rotation(PI)), &model.path2)?;
    let ambient = c1;
    if !path_equivalent(&rotated, &model.path1, &ambient)
        || (rotated.accumulated_angle() - model.path1.accumulated_angle()).abs() > 1e-12
    {
        return Err(SpinStatError::Hypothesis("first path is not the π-rotated second path".into()));
    }
    Ok(())
}

/// Toy model with a random unitary `D`.
pub fn build_toy_model(s: f64, m: f64, n: usize, seed: u64) -> Result<WaveMatrixFamily> {
    build_toy_model_with(s, m, n, seed, None)
}

/// Toy model with an explicit `D` (used for round trips; only unitary `D`
/// give a consistent conjugate family).
pub fn build_toy_model_with(
    s: f64,
    m: f64,
    n: usize,
    seed: u64,
    d: Option<CMatrixN>,
) -> Result<WaveMatrixFamily> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(SpinStatError::InvalidModel(format!("mass {m}")));
    }
    if !s.is_finite() || n == 0 {
        return Err(SpinStatError::InvalidModel(format!("spin {s}, multiplicity {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b1 = translation(&mut rng);
    let b2 = translation(&mut rng);
    let identity = CMatrixN::identity(n, n);
    let a1 = &identity + random_matrix(&mut rng, n) * c(0.4, 0.0);
    let a2 = &identity + random_matrix(&mut rng, n) * c(0.4, 0.0);
    let d = match d {
        Some(d) if d.shape() != (n, n) => {
            return Err(SpinStatError::InvalidModel(format!("D has shape {:?}", d.shape())))
        }
        Some(d) => d,
        None => random_unitary(&mut rng, n),
    };
    let intertwiner_inverse = d
        .clone()
        .try_inverse()
        .ok_or_else(|| SpinStatError::InvalidModel("D is singular".into()))?;
    for a in [&a1, &a2] {
        if a.determinant().norm() < 1e-8 {
            return Err(SpinStatError::InvalidModel("singular amplitude matrix".into()));
        }
    }
    let (path1, path2) = default_cone_paths()?;
    let model = ToyModel {
        s,
        m,
        n,
        shift_first: b1,
        shift_second: b2,
        amplitude_first: a1,
        amplitude_second: a2,
        intertwiner: d,
        omega_target: C64::from_polar(1.0, 2.0 * PI * s),
        path1,
        path2,
    };
    validate_geometry(&model)?;
    Ok(WaveMatrixFamily { model, intertwiner_inverse })
}

fn dot(b: &CVec3, p: &MomentumPoint) -> C64 {
    b[0] * p.p0() - b[1] * p.p1() - b[2] * p.p2()
}

fn dot_expr(b: &CVec3, k: &[HoloExpr; 3]) -> HoloExpr {
    k[0].clone() * b[0] - k[1].clone() * b[1] - k[2].clone() * b[2]
}

fn conj(a: &CMatrixN) -> CMatrixN {
    a.map(|v| v.conj())
}

fn i_unit() -> C64 {
    c(0.0, 1.0)
}

impl WaveMatrixFamily {
    pub fn model(&self) -> &ToyModel {
        &self.model
    }

    pub fn s(&self) -> f64 {
        self.model.s
    }

    pub fn mass(&self) -> f64 {
        self.model.m
    }

    pub fn point(&self, p1: f64, p2: f64) -> Result<MomentumPoint> {
        Ok(MomentumPoint::new(p1, p2, self.model.m)?)
    }

    /// `Ψ₁(p) = u_{π/2}(p) e^{ib₁·p} A₁`.
    pub fn psi1(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        let u = u_function(p, UVariant::PiHalf, self.model.s)?;
        Ok(&self.model.amplitude_first * (u * (i_unit() * dot(&self.model.shift_first, p)).exp()))
    }

    /// `Ψ₂(p) = conj(u_{π/2}^{[−s]}(p) e^{ib₂·p}) A₂`.
    pub fn psi2(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        let u = u_function(p, UVariant::PiHalf, -self.model.s)?;
        let scalar = (u * (i_unit() * dot(&self.model.shift_second, p)).exp()).conj();
        Ok(&self.model.amplitude_second * scalar)
    }

    /// Closed-form boundary value `e^{−iπs/2} w(p)^s e^{i b̄₁·p} Ā₁` of the
    /// continued first family.
    pub fn hat_closed_form(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        let s = self.model.s;
        let w = principal_power(u_base_pihalf(p), s)?;
        let e = (i_unit() * dot(&self.model.shift_first.map(|v| v.conj()), p)).exp();
        Ok(conj(&self.model.amplitude_first) * (C64::from_polar(1.0, -PI * s / 2.0) * w * e))
    }

    /// Closed-form boundary value `e^{−iπs/2} conj(w(p))^{−s} e^{−ib₂·p} Ā₂`
    /// of the continued second family.
    pub fn check_closed_form(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        let s = self.model.s;
        let w = principal_power(u_base_pihalf(p).conj(), -s)?;
        let e = (-i_unit() * dot(&self.model.shift_second, p)).exp();
        Ok(conj(&self.model.amplitude_second) * (C64::from_polar(1.0, -PI * s / 2.0) * w * e))
    }

    /// `Ψ₁ᶜ(p) = D⁻¹ Ψ̂₁(p)`.
    pub fn psi1_conj(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        Ok(&self.intertwiner_inverse * self.hat_closed_form(p)?)
    }

    /// `Ψ₂ᶜ(p) = e^{−2πis} D⁻¹ Ψ̌₂(p)`.
    pub fn psi2_conj(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        Ok(&self.intertwiner_inverse * self.check_closed_form(p)? * self.model.omega_target.conj())
    }

    /// Scalar part of a dressed family at anchor `q`, as an expression in
    /// the boost parameter; the full matrix is this times [`Self::amplitude`].
    pub fn dressed_expr(&self, factor: DressedFactor, q: &MomentumPoint) -> HoloExpr {
        let id = CoverElement::identity();
        let k = pulled_momentum(&id, q);
        match factor {
            DressedFactor::First => {
                omega_factor(&id, q, self.model.s) * (dot_expr(&self.model.shift_first, &k) * i_unit()).exp()
            }
            DressedFactor::SecondAdjoint => {
                omega_factor(&id, q, -self.model.s) * (dot_expr(&self.model.shift_second, &k) * i_unit()).exp()
            }
        }
    }

    /// `A₁` or `A₂*`.
    pub fn amplitude(&self, factor: DressedFactor) -> CMatrixN {
        match factor {
            DressedFactor::First => self.model.amplitude_first.clone(),
            DressedFactor::SecondAdjoint => self.model.amplitude_second.adjoint(),
        }
    }

    /// Dressed family for real `t`, computed directly from the wave
    /// functions: `e^{isΩ(λ̃(t),p)} Ψ_i(Λ₁(−t)p)` (adjoint for the second).
    pub fn dressed_real(&self, factor: DressedFactor, t: f64, p: &MomentumPoint) -> Result<CMatrixN> {
        let g = lift_boost1(t);
        let phase = C64::from_polar(1.0, self.model.s * wigner_angle(&g, p).value);
        let k = pull_back(&g, p);
        Ok(match factor {
            DressedFactor::First => self.psi1(&k)? * phase,
            DressedFactor::SecondAdjoint => (self.psi2(&k)? * phase).adjoint(),
        })
    }

    /// Dressed family at a strip point, continued vertically from `Re t`.
    pub fn dressed_family(&self, factor: DressedFactor, t: C64, p: &MomentumPoint) -> Result<CMatrixN> {
        let path = StripPath::straight(t.re, t)?;
        let v = continue_along(&self.dressed_expr(factor, p), &path)?;
        Ok(self.amplitude(factor) * v)
    }

    /// `Ψ̂₁(p) = conj(Ψ₁(t; −Jp)|_{t=iπ})` by continuation from `anchor`.
    pub fn tomita_hat_from(&self, p: &MomentumPoint, anchor: f64) -> Result<CMatrixN> {
        let v = boundary_at_ipi(&self.dressed_expr(DressedFactor::First, &p.minus_j()), anchor)?;
        Ok(conj(&self.model.amplitude_first) * v.conj())
    }

    pub fn tomita_hat(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        self.tomita_hat_from(p, 0.0)
    }

    /// `Ψ̌₂(p) = conj(Ψ₂(t; −Jp))|_{t=iπ}` by continuation from `anchor`.
    pub fn tomita_check_from(&self, p: &MomentumPoint, anchor: f64) -> Result<CMatrixN> {
        let v = boundary_at_ipi(&self.dressed_expr(DressedFactor::SecondAdjoint, &p.minus_j()), anchor)?;
        Ok(conj(&self.model.amplitude_second) * v)
    }

    pub fn tomita_check(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        self.tomita_check_from(p, 0.0)
    }
}

/// Offset of momentum grids. At the rest momentum the compensated
/// boundary expressions have a removable singularity exactly at `t = iπ`,
/// which the continuation cannot step onto; grids are kept off it.
pub const GRID_SHIFT: [f64; 2] = [0.05, -0.03];

/// Square `n×n` grid of momenta with `|pᵢ − shiftᵢ| ≤ extent`.
pub fn momentum_grid(n: usize, extent: f64, m: f64) -> Result<Vec<MomentumPoint>> {
    let coord = |k: usize| if n <= 1 { 0.0 } else { -extent + 2.0 * extent * k as f64 / (n - 1) as f64 };
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(MomentumPoint::new(coord(i) + GRID_SHIFT[0], coord(j) + GRID_SHIFT[1], m)?);
        }
    }
    Ok(out)
}

fn max_entry(a: &CMatrixN) -> f64 {
    a.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Smallest `|det Ψ₁|` and `|det Ψ₂|` over the grid.
pub fn invertibility_scan(family: &WaveMatrixFamily, grid: &[MomentumPoint]) -> Result<f64> {
    let mut min = f64::INFINITY;
    for p in grid {
        min = min.min(family.psi1(p)?.determinant().norm()).min(family.psi2(p)?.determinant().norm());
    }
    Ok(min)
}

/// `Ψ₂(p)* Ψ₁(p)`, analytic on the tube, with its continuation along the
/// boost family.
#[derive(Debug, Clone, Copy)]
pub struct TwoPointKernel<'a> {
    family: &'a WaveMatrixFamily,
}

impl<'a> TwoPointKernel<'a> {
    pub fn new(family: &'a WaveMatrixFamily) -> Self {
        Self { family }
    }

    /// `M(p)` on the real shell.
    pub fn eval(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        Ok(self.family.psi2(p)?.adjoint() * self.family.psi1(p)?)
    }

    /// Scalar part of `t ↦ Ψ₂(t;q)* Ψ₁(t;q)` as one expression with both
    /// Wigner powers; multiply by `A₂* A₁`.
    pub fn product_expr(&self, q: &MomentumPoint) -> HoloExpr {
        self.family.dressed_expr(DressedFactor::SecondAdjoint, q)
            * self.family.dressed_expr(DressedFactor::First, q)
    }

    pub fn amplitude(&self) -> CMatrixN {
        self.family.model.amplitude_second.adjoint() * &self.family.model.amplitude_first
    }

    /// `M(−p)` by continuing the whole product from `q = −Jp` to `iπ`.
    pub fn at_negative_shell(&self, p: &MomentumPoint) -> Result<CMatrixN> {
        Ok(self.amplitude() * boundary_at_ipi(&self.product_expr(&p.minus_j()), 0.0)?)
    }

    /// Contour integral of the whole product relative to its size on the
    /// contour.
    pub fn morera_residual(&self, q: &MomentumPoint, contour: &Contour) -> Result<f64> {
        Ok(morera_residual_relative(&self.product_expr(q), contour)?)
    }
}

/// Difference between the dressed product and `M(Λ₁(−t)p)` for real `t`.
pub fn cancellation_residual(family: &WaveMatrixFamily, t: f64, p: &MomentumPoint) -> Result<f64> {
    let dressed = family.dressed_real(DressedFactor::SecondAdjoint, t, p)?
        * family.dressed_real(DressedFactor::First, t, p)?;
    let direct = TwoPointKernel::new(family).eval(&pull_back(&lift_boost1(t), p))?;
    Ok(max_entry(&(dressed - &direct)) / max_entry(&direct))
}

/// Residuals of the two-point boundary relation at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointResidual {
    /// `M(−p)` against `ω (Ψ₁ᶜ(p)* Ψ₂ᶜ(p))ᵀ`.
    pub conjugate_relation: f64,
    /// Whole-product continuation against `(Ψ̂₁(p)* Ψ̌₂(p))ᵀ`.
    pub factorwise: f64,
    /// Relation with the transposition dropped.
    pub untransposed: f64,
}

pub fn two_point_boundary_check(kernel: &TwoPointKernel<'_>, p: &MomentumPoint) -> Result<TwoPointResidual> {
    let f = kernel.family;
    let whole = kernel.at_negative_shell(p)?;
    let conj_side = f.psi1_conj(p)?.adjoint() * f.psi2_conj(p)? * f.model.omega_target;
    let factor = f.tomita_hat(p)?.adjoint() * f.tomita_check(p)?;
    let scale = max_entry(&whole);
    Ok(TwoPointResidual {
        conjugate_relation: max_entry(&(&whole - conj_side.transpose())) / scale,
        factorwise: max_entry(&(&whole - factor.transpose())) / scale,
        untransposed: max_entry(&(&whole - conj_side)) / scale,
    })
}

/// Residuals of the Lorentz transformation law of the continued first
/// family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformationResidual {
    /// Both sides continued to `iπ`.
    pub law: f64,
    /// First factor on the left against its closed-form boundary value.
    pub left_factor: f64,
    /// First factor on the right against its closed-form boundary value.
    pub right_factor: f64,
    /// The two closed-form boundary values against each other.
    pub cocycle: f64,
}

/// Both sides of the transformation law at `t = iπ`: the dressed family of
/// `U(Λ̃)ψ₁` at `−Jp`, and `e^{−isΩ(Λ̃,p)}` times the dressed family of
/// `ψ₁` at `−JΛ⁻¹p`.
pub fn verify_transformation_law(
    g: &CoverElement,
    p: &MomentumPoint,
    family: &WaveMatrixFamily,
) -> Result<TransformationResidual> {
    let g0 = quarter_turn();
    if !in_wedge_class(&g.compose(&g0)) {
        return Err(SpinStatError::Hypothesis("Λ̃Λ̃₀ outside the wedge class".into()));
    }
    let s = family.model.s;
    let b1 = family.model.shift_first;
    let id = CoverElement::identity();
    let q = p.minus_j();
    let q_prime = pull_back(g, p).minus_j();

    let left_first = omega_factor(g, &q, s);
    let left = left_first.clone() * (dot_expr(&b1, &pulled_momentum(g, &q)) * i_unit()).exp();
    let twist = C64::from_polar(1.0, -s * wigner_angle(g, p).value);
    let right_first = omega_factor(&id, &q_prime, s) * twist;
    let right = right_first.clone() * (dot_expr(&b1, &pulled_momentum(&id, &q_prime)) * i_unit()).exp();

    let lhs = boundary_at_ipi(&left, 0.0)?;
    let rhs = boundary_at_ipi(&right, 0.0)?;

    let gg0 = g.compose(&g0);
    let u = u_function(&pull_back(&gg0, p).minus_j(), UVariant::Plain, s)?;
    let bv_left = C64::from_polar(1.0, PI * s - s * wigner_angle(&gg0, p).value) * u;
    let bv_right = C64::from_polar(
        1.0,
        PI * s - s * wigner_angle(g, p).value - s * wigner_angle(&g0, &pull_back(g, p)).value,
    ) * u;
    let lf = boundary_at_ipi(&left_first, 0.0)?;
    let rf = boundary_at_ipi(&right_first, 0.0)?;
    Ok(TransformationResidual {
        law: (lhs - rhs).norm() / lhs.norm(),
        left_factor: (lf - bv_left).norm(),
        right_factor: (rf - bv_right).norm(),
        cocycle: (bv_left - bv_right).norm(),
    })
}

/// Mean of `D(p) = Ψ̂₁(p) Ψ₁ᶜ(p)⁻¹` over a grid and its spread.
#[derive(Debug, Clone, PartialEq)]
pub struct DExtraction {
    pub mean: CMatrixN,
    pub constancy: f64,
}

pub fn extract_d(family: &WaveMatrixFamily, grid: &[MomentumPoint]) -> Result<DExtraction> {
    let n = family.model.n;
    let mut samples = Vec::with_capacity(grid.len());
    for p in grid {
        let inv = family
            .psi1_conj(p)?
            .try_inverse()
            .ok_or(SpinStatError::Singular(p.p1(), p.p2()))?;
        samples.push(family.tomita_hat(p)? * inv);
    }
    let mut mean = CMatrixN::zeros(n, n);
    for d in &samples {
        mean += d;
    }
    mean /= c(samples.len().max(1) as f64, 0.0);
    if mean.determinant().norm() < 1e-12 {
        return Err(SpinStatError::InvalidModel("extracted D is singular".into()));
    }
    let constancy = samples.iter().map(|d| max_entry(&(d - &mean))).fold(0.0, f64::max);
    Ok(DExtraction { mean, constancy })
}

/// Residuals of the `π`-rotation relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationPiResidual {
    /// `Ψ̂₂^π(p)` against `e^{−iπs} Ψ̌₂(r(π)p)`.
    pub rotated_hat: f64,
    /// `Ψ̌₂(p)` against `e^{2πis} D Ψ₂ᶜ(p)`.
    pub check_relation: f64,
    /// `Ψ₂^{π,c}(p)` against `e^{iπs} Ψ₂ᶜ(r(−π)p)`.
    pub conjugate_phase: f64,
}

/// The Tomita image of `U(r̃(π))ψ₂` at `p`, continuing
/// `e^{isΩ(λ̃(t)r̃(π), q)} Ψ₂(R(−π)Λ₁(−t)q)` with `q = −Jp`.
pub fn rotated_second_hat(family: &WaveMatrixFamily, p: &MomentumPoint) -> Result<CMatrixN> {
    let s = family.model.s;
    let g = lift_rotation(PI);
    let q = p.minus_j();
    let k = pulled_momentum(&g, &q);
    let b2_bar = family.model.shift_second.map(|v| v.conj());
    let expr = wigner_power(&g, &q, s, Compensator::ReflectedPiHalfInverse)
        * C64::from_polar(1.0, s * PI / 2.0)
        * (dot_expr(&b2_bar, &k) * -i_unit()).exp();
    let v = boundary_at_ipi(&expr, 0.0)?;
    Ok(conj(&family.model.amplitude_second) * v.conj())
}

pub fn rotation_pi_relation(
    family: &WaveMatrixFamily,
    p: &MomentumPoint,
    d: &CMatrixN,
) -> Result<RotationPiResidual> {
    validate_geometry(&family.model)?;
    let s = family.model.s;
    let rotated = p.transform(&rotation(PI));
    let lhs = rotated_second_hat(family, p)?;
    let rhs = family.tomita_check(&rotated)? * C64::from_polar(1.0, -PI * s);
    let check = family.tomita_check(p)?;
    let predicted = d * family.psi2_conj(p)? * family.model.omega_target;
    let back = p.transform(&rotation(-PI));
    let g = lift_rotation(PI);
    let conj_pi = family.psi2_conj(&pull_back(&g, p))? * C64::from_polar(1.0, s * wigner_angle(&g, p).value);
    let conj_expected = family.psi2_conj(&back)? * C64::from_polar(1.0, PI * s);
    Ok(RotationPiResidual {
        rotated_hat: max_entry(&(&lhs - &rhs)) / max_entry(&rhs),
        check_relation: max_entry(&(&check - &predicted)) / max_entry(&check),
        conjugate_phase: max_entry(&(&conj_pi - &conj_expected)) / max_entry(&conj_expected),
    })
}

/// Statistics phase recovered from the continued Tomita images.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseExtraction {
    /// Least-squares scalar `ω̂` in `Ψ̂₁*Ψ̌₂ = ω̂ Ψ₁ᶜ*Ψ₂ᶜ`.
    pub omega: C64,
    /// Largest relative deviation from the scalar relation over the grid.
    pub mismatch: f64,
    /// `‖D*D e^{2πis} − ω̂·1‖`.
    pub polar_residual: f64,
    /// Smallest eigenvalue of `D*D`.
    pub min_eigenvalue: f64,
}

pub fn extract_statistics_phase(
    family: &WaveMatrixFamily,
    grid: &[MomentumPoint],
    d: &CMatrixN,
    tol: f64,
) -> Result<PhaseExtraction> {
    let mut pairs = Vec::with_capacity(grid.len());
    for p in grid {
        let x = family.tomita_hat(p)?.adjoint() * family.tomita_check(p)?;
        let y = family.psi1_conj(p)?.adjoint() * family.psi2_conj(p)?;
        pairs.push((x, y));
    }
    let (mut num, mut den) = (c(0.0, 0.0), 0.0);
    for (x, y) in &pairs {
        num += y.dotc(x);
        den += y.norm_squared();
    }
    let omega = num / den;
    let mismatch = pairs
        .iter()
        .map(|(x, y)| (x - y * omega).norm() / x.norm())
        .fold(0.0, f64::max);
    if !(mismatch <= tol) {
        return Err(SpinStatError::NonScalarMismatch(mismatch));
    }
    let dd = d.adjoint() * d;
    let n = dd.nrows();
    let twist = C64::from_polar(1.0, 2.0 * PI * family.model.s);
    let polar_residual = max_entry(&(&dd * twist - CMatrixN::identity(n, n) * omega));
    let min_eigenvalue = dd.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(PhaseExtraction { omega, mismatch, polar_residual, min_eigenvalue })
}

/// `h(t, t₀) = Ψ₂(t;q)* Ψ₁(t+t₀;q)` of the toy model in closed form.
#[derive(Debug, Clone)]
pub struct ToyProductFamily<'a> {
    family: &'a WaveMatrixFamily,
    q: MomentumPoint,
    base: HoloExpr,
}

impl<'a> ToyProductFamily<'a> {
    pub fn new(family: &'a WaveMatrixFamily, q: MomentumPoint) -> Self {
        let base = wigner_base(&CoverElement::identity(), &q, Compensator::PiHalf);
        Self { family, q, base }
    }

    fn shell(&self, z: C64) -> CVec3 {
        boost1(-z) * self.q.to_cvec()
    }

    fn cdot(b: &CVec3, k: &CVec3) -> C64 {
        b[0] * k[0] - b[1] * k[1] - b[2] * k[2]
    }
}

impl ProductFamily for ToyProductFamily<'_> {
    fn h(&self, t: C64, t0: f64) -> std::result::Result<CMatrixN, HoloError> {
        let model = &self.family.model;
        let ratio = self.base.eval_principal(t + t0) / self.base.eval_principal(t);
        let power = (ratio.ln() * model.s).exp();
        let phase = i_unit() * (Self::cdot(&model.shift_second, &self.shell(t)) + Self::cdot(&model.shift_first, &self.shell(t + t0)));
        Ok(TwoPointKernel::new(self.family).amplitude() * (power * phase.exp()))
    }

    fn f1_real(&self, t: f64) -> CMatrixN {
        self.family
            .dressed_real(DressedFactor::First, t, &self.q)
            .expect("real-axis evaluation of the toy family")
    }
}
