//! Tube regions on the complex mass shell.

use crate::conegeom::SpatialSector;
use crate::minkowski::{boost1, c, complexify_matrix, minkowski_product, rotation, CVec3, MomentumPoint};

use super::HoloError;

const SHELL_TOL: f64 = 1e-10;
const RECOMPOSE_TOL: f64 = 1e-10;

/// Points of the complex shell whose imaginary spatial part points into an
/// open sector (the dual of a difference cone).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeRegion {
    pub mass: f64,
    pub dual: SpatialSector,
}

impl TubeRegion {
    pub fn new(mass: f64, dual: SpatialSector) -> Self {
        Self { mass, dual }
    }
}

pub fn tube_region_contains(k: &CVec3, region: &TubeRegion) -> bool {
    let shell = (minkowski_product(k, k) - c(region.mass * region.mass, 0.0)).norm();
    let (x, y) = (k[1].im, k[2].im);
    shell < SHELL_TOL && (x != 0.0 || y != 0.0) && region.dual.contains_angle_open(y.atan2(x))
}

/// `k = R(r) Λ₁(iθ) R(r)⁻¹ q` with `θ ∈ (0, π)` and `q` on the positive shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeDecomposition {
    pub r: f64,
    pub theta: f64,
    pub q: MomentumPoint,
}

impl TubeDecomposition {
    pub fn recompose(&self) -> CVec3 {
        let rot = complexify_matrix(&rotation(self.r));
        let inv = complexify_matrix(&rotation(-self.r));
        rot * boost1(c(0.0, self.theta)) * inv * self.q.to_cvec()
    }
}

pub fn tube_decompose(k: &CVec3, m: f64) -> Result<TubeDecomposition, HoloError> {
    let fail = || HoloError::NotInTube;
    let a = k[1].im.hypot(k[2].im);
    if !(a > 0.0) {
        return Err(fail());
    }
    let (n1, n2) = (k[1].im / a, k[2].im / a);
    let r = n2.atan2(n1);
    let (b, cr) = (k[0].im, k[0].re);
    let q0 = a.hypot(cr);
    let theta = a.atan2(cr);
    let q_par = b / theta.sin();
    let q_perp = -k[1].re * n2 + k[2].re * n1;
    let (q1, q2) = (q_par * n1 - q_perp * n2, q_par * n2 + q_perp * n1);
    let q = MomentumPoint::new(q1, q2, m).map_err(|_| fail())?;
    let dec = TubeDecomposition { r, theta, q };
    let scale = k.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let resid = (dec.recompose() - k).iter().map(|v| v.norm()).fold(0.0, f64::max);
    if resid > RECOMPOSE_TOL * scale || (q.p0() - q0).abs() > RECOMPOSE_TOL * scale {
        return Err(fail());
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::complexify;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn negative_axis_region(m: f64) -> TubeRegion {
        TubeRegion::new(m, SpatialSector::new(PI - 0.6, PI + 0.4).unwrap())
    }

    #[test]
    fn membership() {
        let m = 1.1;
        let region = negative_axis_region(m);
        let p = MomentumPoint::new(0.4, -0.7, m).unwrap();
        assert!(!tube_region_contains(&p.to_cvec(), &region));
        for &(t, th) in &[(0.0, 0.5), (1.3, 1.5), (-2.0, 3.0)] {
            let k = boost1(-c(t, th)) * p.to_cvec();
            assert!(tube_region_contains(&k, &region), "{t} {th}");
            assert!(!tube_region_contains(&k.map(|v| v.conj()), &region));
        }
        let off = boost1(-c(0.2, 1.0)) * complexify(&(p.to_vec() * 1.01));
        assert!(!tube_region_contains(&off, &region));
    }

    #[test]
    fn decompose_direct_and_round_trip() {
        let m = 0.9;
        let q = MomentumPoint::new(0.3, 1.2, m).unwrap();
        let k = boost1(c(0.0, 1.1)) * q.to_cvec();
        let d = tube_decompose(&k, m).unwrap();
        assert!(d.r.abs() < 1e-14);
        assert!((d.theta - 1.1).abs() < 1e-12);
        assert!((d.q.p1() - 0.3).abs() < 1e-12 && (d.q.p2() - 1.2).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let dec = TubeDecomposition {
                r: rng.gen_range(-PI..PI),
                theta: rng.gen_range(0.01..PI - 0.01),
                q: MomentumPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), m)
                    .unwrap(),
            };
            let back = tube_decompose(&dec.recompose(), m).unwrap();
            assert!((back.r - dec.r).abs() < 1e-10);
            assert!((back.theta - dec.theta).abs() < 1e-10);
            assert!((back.q.to_vec() - dec.q.to_vec()).norm() < 1e-10 * dec.q.p0());
        }
    }

    #[test]
    fn real_points_are_rejected() {
        let q = MomentumPoint::new(0.3, 1.2, 1.0).unwrap();
        assert_eq!(tube_decompose(&q.to_cvec(), 1.0), Err(HoloError::NotInTube));
    }

    #[test]
    fn strip_points_decompose_with_reversed_axis() {
        let p = MomentumPoint::new(0.5, 0.5, 1.0).unwrap();
        let k = boost1(-c(0.4, 2.0)) * p.to_cvec();
        let d = tube_decompose(&k, 1.0).unwrap();
        assert!((d.r.abs() - PI).abs() < 1e-12);
        assert!((d.theta - 2.0).abs() < 1e-12);
    }
}
