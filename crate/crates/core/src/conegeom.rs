//! Space-like directions, space-like cones over open salient spatial
//! sectors, their duals and differences, and paths of cones labelled by a
//! lifted direction angle.
//!
//! A space-like direction `e` (with `e·e = −1`) retracts onto the angle of
//! its spatial part, which never vanishes. Homotopy classes of paths from
//! the reference direction `(0, 0, −1)` are therefore encoded by a single
//! real number, the lifted endpoint angle; the reference itself has angle
//! `−π/2`.
//!
//! The cone over a sector `(α, β)` with apex `a` is the causal completion
//! `a + {x : min(n_α·x, n_β·x) > |x⁰|}` with inward edge normals `n_α`,
//! `n_β`. It contains the direction `e` (i.e. `C + e ⊆ C`) iff
//! `min(n_α·e, n_β·e) ≥ |e⁰|`, which does not depend on the apex.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::covergroup::{CoverElement, PoincareElement};
use crate::minkowski::{minkowski_product_real, Vec3};

const TAU: f64 = 2.0 * PI;
const DIRECTION_TOL: f64 = 1e-12;
const SEPARATION_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("sector opening {0} is not in (0, π)")]
    NotSalient(f64),
    #[error("vector is not a space-like unit direction (e·e = {0})")]
    NotSpacelikeUnit(f64),
    #[error("lifted angle {lifted} does not match the direction angle {actual}")]
    LiftMismatch { lifted: f64, actual: f64 },
    #[error("endpoint direction is not contained in the cone")]
    DirectionNotInCone,
    #[error("transformed direction interval is degenerate")]
    DegenerateImage,
}

/// Reduces an angle to `[0, 2π)`.
pub fn mod_tau(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduces an angle to `(−π, π]`.
pub fn wrap_pi(x: f64) -> f64 {
    let r = mod_tau(x + PI) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

fn spatial_angle(e: &Vec3) -> f64 {
    e[2].atan2(e[1])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacelikeDirection {
    e: Vec3,
    lifted_angle: f64,
}

impl SpacelikeDirection {
    pub fn new(e: Vec3, lifted_angle: f64) -> Result<Self, ConeError> {
        let norm = minkowski_product_real(&e, &e);
        if (norm + 1.0).abs() > DIRECTION_TOL * (1.0 + e[0] * e[0]) {
            return Err(ConeError::NotSpacelikeUnit(norm));
        }
        let actual = spatial_angle(&e);
        if wrap_pi(lifted_angle - actual).abs() > 1e-9 {
            return Err(ConeError::LiftMismatch { lifted: lifted_angle, actual });
        }
        Ok(Self { e, lifted_angle })
    }

    /// Direction with time component `e0` and spatial angle `lifted_angle`.
    pub fn from_angle(lifted_angle: f64, e0: f64) -> Self {
        let r = (1.0 + e0 * e0).sqrt();
        let (s, c) = lifted_angle.sin_cos();
        Self { e: Vec3::new(e0, r * c, r * s), lifted_angle }
    }

    /// The reference direction `(0, 0, −1)`.
    pub fn reference() -> Self {
        Self { e: Vec3::new(0.0, 0.0, -1.0), lifted_angle: -FRAC_PI_2 }
    }

    pub fn vector(&self) -> Vec3 {
        self.e
    }

    pub fn lifted_angle(&self) -> f64 {
        self.lifted_angle
    }
}

/// Transports a direction and its lifted angle along the lifted action:
/// the rotation part contributes its unbounded angle, the remaining pure
/// boost moves the spatial angle by less than π.
pub fn transport_direction(g: &CoverElement, dir: &SpacelikeDirection) -> SpacelikeDirection {
    let (boost, rot) = g.boost_rotation_split();
    let rotated = rot.act_on_vector(&dir.e);
    let image = boost.act_on_vector(&rotated);
    let shift = wrap_pi(spatial_angle(&image) - spatial_angle(&rotated));
    let lifted_angle = dir.lifted_angle + rot.omega() + shift;
    let e = image / (-minkowski_product_real(&image, &image)).sqrt();
    SpacelikeDirection { e, lifted_angle }
}

/// Open salient spatial sector `(alpha, beta)` with a spacetime apex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialSector {
    alpha: f64,
    beta: f64,
    apex: Vec3,
}

impl SpatialSector {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, ConeError> {
        Self::with_apex(alpha, beta, Vec3::zeros())
    }

    pub fn with_apex(alpha: f64, beta: f64, apex: Vec3) -> Result<Self, ConeError> {
        let open = beta - alpha;
        if !(open > 0.0 && open < PI) {
            return Err(ConeError::NotSalient(open));
        }
        Ok(Self { alpha, beta, apex })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn apex(&self) -> Vec3 {
        self.apex
    }

    pub fn opening(&self) -> f64 {
        self.beta - self.alpha
    }

    pub fn central_angle(&self) -> f64 {
        (self.alpha + self.beta) / 2.0
    }

    pub fn translated(&self, a: &Vec3) -> Self {
        Self { apex: self.apex + a, ..*self }
    }

    pub fn rotated(&self, omega: f64) -> Self {
        Self { alpha: self.alpha + omega, beta: self.beta + omega, ..*self }
    }

    pub fn contains_angle_open(&self, phi: f64) -> bool {
        let d = mod_tau(phi - self.alpha);
        d > 0.0 && d < self.opening()
    }

    pub fn contains_angle_closed(&self, phi: f64) -> bool {
        let d = mod_tau(phi - self.alpha);
        d <= self.opening() || d >= TAU - 1e-15
    }

    /// Inward unit normals of the two edges.
    pub fn inward_normals(&self) -> [(f64, f64); 2] {
        [(-self.alpha.sin(), self.alpha.cos()), (self.beta.sin(), -self.beta.cos())]
    }

    /// `min(n_α·x, n_β·x) − |x⁰|` for `x` relative to the apex; positive
    /// inside the cone.
    pub fn cone_margin(&self, x: &Vec3) -> f64 {
        let y = x - self.apex;
        self.recession_margin(&y)
    }

    fn recession_margin(&self, e: &Vec3) -> f64 {
        let [n1, n2] = self.inward_normals();
        let d1 = n1.0 * e[1] + n1.1 * e[2];
        let d2 = n2.0 * e[1] + n2.1 * e[2];
        d1.min(d2) - e[0].abs()
    }

    /// `C + e ⊆ C`.
    pub fn contains_direction(&self, e: &SpacelikeDirection) -> bool {
        self.recession_margin(&e.e) >= -DIRECTION_TOL
    }
}

/// `(β − π/2, α + π/2)`: directions with positive product against every
/// nonzero vector of the closed sector.
pub fn dual_sector(cone: &SpatialSector) -> SpatialSector {
    SpatialSector { alpha: cone.beta - FRAC_PI_2, beta: cone.alpha + FRAC_PI_2, apex: Vec3::zeros() }
}

/// Shortest arc covering both arcs, as `(start, length)`.
fn covering_arc(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (oa, ob) = (a.1 - a.0, b.1 - b.0);
    let d = mod_tau(b.0 - a.0);
    let from_a = oa.max(d + ob);
    let from_b = ob.max(TAU - d + oa);
    if from_a <= from_b {
        (a.0, from_a)
    } else {
        (b.0, from_b)
    }
}

/// The spatial sector of `C₂ − C₁`, if salient.
pub fn difference_sector(c1: &SpatialSector, c2: &SpatialSector) -> Option<SpatialSector> {
    let (start, len) = covering_arc((c2.alpha, c2.beta), (c1.alpha + PI, c1.beta + PI));
    SpatialSector::new(start, start + len).ok()
}

pub fn difference_salient(c1: &SpatialSector, c2: &SpatialSector) -> bool {
    difference_sector(c1, c2).is_some()
}

/// Whether the dual of `C₂ − C₁` contains the negative `x¹` axis.
pub fn difference_dual_contains_negative_axis(c1: &SpatialSector, c2: &SpatialSector) -> bool {
    difference_sector(c1, c2).is_some_and(|d| dual_sector(&d).contains_angle_open(PI))
}

/// Causal separation of the two cones: the spatial distance between the
/// bases, maximised over separating directions, must cover the time lag.
pub fn causally_separated(c1: &SpatialSector, c2: &SpatialSector) -> bool {
    // Separating unit vectors u with u·C₂ ≥ 0 and u·C₁ ≤ 0 form the arc
    // [β₂ − π/2, α₂ + π/2] ∩ [β₁ + π/2, α₁ + 3π/2].
    let lo2 = c2.beta - FRAC_PI_2;
    let len2 = PI - c2.opening();
    let lo1 = c1.beta + FRAC_PI_2;
    let len1 = PI - c1.opening();
    let d = mod_tau(lo1 - lo2);
    let (start, len) = if d <= len2 {
        (lo1, (len2 - d).min(len1))
    } else if TAU - d <= len1 {
        (lo2, (len1 - (TAU - d)).min(len2))
    } else {
        return false;
    };
    let delta = c2.apex - c1.apex;
    let (dx, dy) = (delta[1], delta[2]);
    let best = if dx == 0.0 && dy == 0.0 {
        0.0
    } else {
        let target = dy.atan2(dx);
        let r = dx.hypot(dy);
        let inside = mod_tau(target - start) <= len;
        if inside {
            r
        } else {
            let f = |phi: f64| dx * phi.cos() + dy * phi.sin();
            f(start).max(f(start + len))
        }
    };
    best >= delta[0].abs() - SEPARATION_TOL
}

/// A cone (a possibly Lorentz-transformed sector cone) together with the
/// lifted endpoint direction of an approach path from the reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePath {
    sector: SpatialSector,
    frame: CoverElement,
    direction: SpacelikeDirection,
}

impl ConePath {
    /// Path ending at the purely spatial direction with lifted angle
    /// `accumulated_angle`, which must lie in the open sector.
    pub fn new(sector: SpatialSector, accumulated_angle: f64) -> Result<Self, ConeError> {
        if !sector.contains_angle_open(accumulated_angle) {
            return Err(ConeError::DirectionNotInCone);
        }
        Ok(Self {
            sector,
            frame: CoverElement::identity(),
            direction: SpacelikeDirection::from_angle(accumulated_angle, 0.0),
        })
    }

    pub fn accumulated_angle(&self) -> f64 {
        self.direction.lifted_angle
    }

    pub fn direction(&self) -> SpacelikeDirection {
        self.direction
    }

    /// The cone as a sector cone. Rotated images are exact; boosted images
    /// are described by the lifted angles of their transformed edge
    /// directions.
    pub fn sector(&self) -> Result<SpatialSector, ConeError> {
        let (boost, rot) = self.frame.boost_rotation_split();
        if boost.gamma().norm() == 0.0 {
            return Ok(self.sector.rotated(rot.omega()));
        }
        let edge = |phi: f64| {
            transport_direction(&self.frame, &SpacelikeDirection::from_angle(phi, 0.0)).lifted_angle
        };
        let (a, b) = (edge(self.sector.alpha), edge(self.sector.beta));
        SpatialSector::with_apex(a, b, self.sector.apex).map_err(|_| ConeError::DegenerateImage)
    }

    /// `C + e ⊆ C` for the (possibly transformed) cone.
    pub fn contains_direction(&self, e: &SpacelikeDirection) -> bool {
        let back = self.frame.inverse().act_on_vector(&e.e);
        self.sector.recession_margin(&back) >= -DIRECTION_TOL
    }
}

/// Natural action of the covering Poincaré group on paths of cones.
pub fn poincare_act_path(g: &PoincareElement, path: &ConePath) -> Result<ConePath, ConeError> {
    let apex = g.act_on_point(&path.sector.apex);
    let out = ConePath {
        sector: SpatialSector { apex, ..path.sector },
        frame: g.lorentz.compose(&path.frame),
        direction: transport_direction(&g.lorentz, &path.direction),
    };
    if !out.contains_direction(&out.direction) {
        return Err(ConeError::DegenerateImage);
    }
    Ok(out)
}

/// Index of the lift of `ambient`'s direction interval holding `phi`.
fn lift_index(phi: f64, ambient: &SpatialSector) -> f64 {
    ((phi - ambient.alpha) / TAU).floor()
}

/// Equivalence of two approach paths with respect to `ambient`: both end
/// in it and their lifted endpoints lie in the same lift of its interval.
pub fn path_equivalent(path1: &ConePath, path2: &ConePath, ambient: &SpatialSector) -> bool {
    let (d1, d2) = (path1.direction, path2.direction);
    ambient.contains_direction(&d1)
        && ambient.contains_direction(&d2)
        && lift_index(d1.lifted_angle, ambient) == lift_index(d2.lifted_angle, ambient)
}

/// The two paths satisfy the exchange hypothesis: causally separated
/// cones and a composite path turning positively and directly from the
/// second cone to the first.
pub fn exchange_hypothesis(path1: &ConePath, path2: &ConePath) -> bool {
    let (Ok(c1), Ok(c2)) = (path1.sector(), path2.sector()) else {
        return false;
    };
    if !causally_separated(&c1, &c2) {
        return false;
    }
    let gap = mod_tau(c1.alpha - c2.beta);
    let d = path1.accumulated_angle() - path2.accumulated_angle();
    d > gap && d < gap + c1.opening() + c2.opening()
}

/// The wedge `x¹ > |x⁰|` with the class of paths that reach it from the
/// reference direction without winding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WedgePath;

impl WedgePath {
    pub fn contains(&self, dir: &SpacelikeDirection) -> bool {
        let e = dir.e;
        e[1] > e[0].abs() && dir.lifted_angle > -FRAC_PI_2 && dir.lifted_angle < FRAC_PI_2
    }
}

/// Whether `g` carries the reference path class into the wedge class.
pub fn in_wedge_class(g: &CoverElement) -> bool {
    WedgePath.contains(&transport_direction(g, &SpacelikeDirection::reference()))
}
