//! The massive representation `U(a, Λ̃)` of spin `s` and multiplicity `n` on
//! mass-shell wave functions, its numerical generators, and the
//! Pauli–Lubanski scalar.

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::Arc;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::DVector;
use thiserror::Error;

use crate::covergroup::{lift_boost_dir, lift_rotation, lift_boost1, PoincareElement};
use crate::minkowski::{c, MomentumPoint, C64};
use crate::wigner::{pull_back, wigner_angle};

pub type ColorVector = DVector<C64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("invalid representation data: {0}")]
    InvalidConfig(String),
    #[error("quadrature box does not cover the support (edge weight {0:e})")]
    QuadratureSupport(f64),
}

/// Mass, spin and multiplicity of the representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepConfig {
    pub m: f64,
    pub s: f64,
    pub n: usize,
}

impl RepConfig {
    pub fn new(m: f64, s: f64, n: usize) -> Result<Self, RepError> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(RepError::InvalidConfig(format!("mass {m}")));
        }
        if !s.is_finite() {
            return Err(RepError::InvalidConfig(format!("spin {s}")));
        }
        if n == 0 {
            return Err(RepError::InvalidConfig("multiplicity 0".into()));
        }
        Ok(Self { m, s, n })
    }
}

type Evaluator = Arc<dyn Fn(&MomentumPoint) -> ColorVector + Send + Sync>;

/// A smooth `ℂⁿ`-valued function on the positive mass shell.
#[derive(Clone)]
pub struct WaveFunction {
    config: RepConfig,
    eval: Evaluator,
}

impl std::fmt::Debug for WaveFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WaveFunction").field("config", &self.config).finish_non_exhaustive()
    }
}

/// Monomial `coeff · p₁^i p₂^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coeff: C64,
    pub powers: (i32, i32),
}

impl WaveFunction {
    pub fn from_fn(
        config: RepConfig,
        f: impl Fn(&MomentumPoint) -> ColorVector + Send + Sync + 'static,
    ) -> Self {
        Self { config, eval: Arc::new(f) }
    }

    /// `exp(−|p − centre|²/σ²) · Σ monomials · vector`.
    pub fn gaussian(
        config: RepConfig,
        centre: [f64; 2],
        sigma: f64,
        polynomial: Vec<Monomial>,
        vector: ColorVector,
    ) -> Result<Self, RepError> {
        if vector.len() != config.n {
            return Err(RepError::InvalidConfig(format!(
                "vector length {} for multiplicity {}",
                vector.len(),
                config.n
            )));
        }
        if !(sigma > 0.0) {
            return Err(RepError::InvalidConfig(format!("width {sigma}")));
        }
        Ok(Self::from_fn(config, move |p| {
            let (d1, d2) = (p.p1() - centre[0], p.p2() - centre[1]);
            let env = (-(d1 * d1 + d2 * d2) / (sigma * sigma)).exp();
            let poly: C64 = polynomial
                .iter()
                .map(|t| t.coeff * p.p1().powi(t.powers.0) * p.p2().powi(t.powers.1))
                .sum();
            &vector * (poly * env)
        }))
    }

    pub fn config(&self) -> RepConfig {
        self.config
    }

    pub fn eval(&self, p: &MomentumPoint) -> ColorVector {
        (self.eval)(p)
    }
}

/// `(U(a,Λ̃)ψ)(p) = e^{isΩ(Λ̃,p)} e^{ia·p} ψ(Λ⁻¹p)`.
pub fn act(g: &PoincareElement, psi: &WaveFunction) -> WaveFunction {
    let (g, inner, s) = (*g, psi.clone(), psi.config.s);
    WaveFunction::from_fn(psi.config, move |p| {
        let a = g.translation;
        let ap = a[0] * p.p0() - a[1] * p.p1() - a[2] * p.p2();
        let phase = C64::from_polar(1.0, s * wigner_angle(&g.lorentz, p).value + ap);
        inner.eval(&pull_back(&g.lorentz, p)) * phase
    })
}

/// Tensor Gauss–Legendre rule on a square box in `p`-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub centre: [f64; 2],
    pub half_width: f64,
    pub panels: usize,
    pub order: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { centre: [0.0, 0.0], half_width: 8.0, panels: 16, order: 10 }
    }
}

impl Quadrature {
    fn nodes_1d(&self, centre: f64) -> Vec<(f64, f64)> {
        let rule = GaussLegendre::new(NonZeroUsize::new(self.order.max(1)).unwrap());
        let h = 2.0 * self.half_width / self.panels.max(1) as f64;
        let mut out = Vec::new();
        for k in 0..self.panels.max(1) {
            let left = centre - self.half_width + h * k as f64;
            for &(x, w) in rule.as_node_weight_pairs().iter() {
                out.push((left + h * (x + 1.0) / 2.0, w * h / 2.0));
            }
        }
        out
    }
}

/// Relative weight below which the integrand counts as negligible at the
/// edge of the quadrature box.
pub const SUPPORT_TOL: f64 = 1e-12;

/// `∫ d²p/(2p⁰) Σ_α conj(φ_α(p)) ψ_α(p)`.
pub fn inner_product(phi: &WaveFunction, psi: &WaveFunction, grid: &Quadrature) -> Result<C64, RepError> {
    let m = psi.config.m;
    let xs = grid.nodes_1d(grid.centre[0]);
    let ys = grid.nodes_1d(grid.centre[1]);
    let point = |x: f64, y: f64| MomentumPoint::new(x, y, m).expect("mass validated");
    let mut sum = c(0.0, 0.0);
    let mut peak = 0.0f64;
    for &(x, wx) in &xs {
        for &(y, wy) in &ys {
            let p = point(x, y);
            let (a, b) = (phi.eval(&p), psi.eval(&p));
            peak = peak.max(a.norm()).max(b.norm());
            sum += a.dotc(&b) * (wx * wy / (2.0 * p.p0()));
        }
    }
    let hw = grid.half_width;
    let mut edge = 0.0f64;
    for k in 0..=32 {
        let u = -hw + 2.0 * hw * k as f64 / 32.0;
        for (x, y) in [(u, -hw), (u, hw), (-hw, u), (hw, u)] {
            let p = point(grid.centre[0] + x, grid.centre[1] + y);
            edge = edge.max(phi.eval(&p).norm()).max(psi.eval(&p).norm());
        }
    }
    if peak > 0.0 && edge > SUPPORT_TOL * peak {
        return Err(RepError::QuadratureSupport(edge / peak));
    }
    Ok(sum)
}

/// One-parameter subgroups and momentum components whose generators enter
/// the Pauli–Lubanski scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Rotations.
    L0,
    /// Boosts along `x¹`.
    L1,
    /// Boosts along `x²`.
    L2,
    /// Multiplication by `p^μ`.
    P(usize),
}

/// Default finite-difference step for the Lorentz generators.
pub const GENERATOR_STEP: f64 = 1e-2;

fn subgroup(kind: Generator, t: f64) -> PoincareElement {
    PoincareElement::lorentz(match kind {
        Generator::L0 => lift_rotation(t),
        Generator::L1 => lift_boost1(t),
        Generator::L2 => lift_boost_dir(PI / 2.0, t),
        Generator::P(_) => unreachable!(),
    })
}

/// `(Xψ)(p)`; Lorentz generators are `−i d/dt U(·(t))ψ |₀` by a
/// Richardson-extrapolated central difference with steps `h` and `h/2`.
pub fn generator(psi: &WaveFunction, kind: Generator, p: &MomentumPoint) -> ColorVector {
    generator_with_step(psi, kind, p, GENERATOR_STEP)
}

pub fn generator_with_step(psi: &WaveFunction, kind: Generator, p: &MomentumPoint, h: f64) -> ColorVector {
    if let Generator::P(mu) = kind {
        return psi.eval(p) * c(p.to_vec()[mu], 0.0);
    }
    let value = |t: f64| act(&subgroup(kind, t), psi).eval(p);
    let diff = |h: f64| (value(h) - value(-h)) / c(2.0 * h, 0.0);
    let d = (diff(h / 2.0) * c(4.0, 0.0) - diff(h)) / c(3.0, 0.0);
    d * c(0.0, -1.0)
}

/// `P^μ ψ` as a wave function.
pub fn momentum_times(psi: &WaveFunction, mu: usize) -> WaveFunction {
    let inner = psi.clone();
    WaveFunction::from_fn(psi.config, move |p| inner.eval(p) * c(p.to_vec()[mu], 0.0))
}

/// `Wψ = Σ_μ J_μ (P^μ ψ)` with `(J₀, J₁, J₂) = (−L0, L2, −L1)`.
pub fn pauli_lubanski(psi: &WaveFunction, p: &MomentumPoint) -> ColorVector {
    let term = |mu: usize, kind: Generator| generator(&momentum_times(psi, mu), kind, p);
    -term(0, Generator::L0) + term(1, Generator::L2) - term(2, Generator::L1)
}

/// The reversed ordering `Σ_μ P^μ (J_μ ψ)`.
pub fn pauli_lubanski_reversed(psi: &WaveFunction, p: &MomentumPoint) -> ColorVector {
    let v = p.to_vec();
    let j = |kind: Generator| generator(psi, kind, p);
    -j(Generator::L0) * c(v[0], 0.0) + j(Generator::L2) * c(v[1], 0.0) - j(Generator::L1) * c(v[2], 0.0)
}

/// `Wψ` as a wave function.
pub fn pauli_lubanski_fn(psi: &WaveFunction) -> WaveFunction {
    let inner = psi.clone();
    WaveFunction::from_fn(psi.config, move |p| pauli_lubanski(&inner, p))
}
