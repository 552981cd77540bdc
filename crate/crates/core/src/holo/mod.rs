//! Branch-tracked analytic continuation in the complex boost parameter.
//!
//! Expressions are built from constants, the parameter `z`, components of
//! continued momenta `post · Λ₁(−z) · pre · p̂`, field operations, `exp` and
//! real powers. Every power node keeps a ledger with its lifted argument,
//! advanced in steps whose argument increment stays below π/4, so the
//! continued value is unique along a path. Only power nodes can leave the
//! principal sheet; all other nodes are entire.

mod cocycle;
mod expr;
mod morera;
mod ode;
mod path;
mod region;

use thiserror::Error;

use crate::minkowski::C64;

pub use cocycle::{
    bare_wigner_factor, cocycle_boundary, cocycle_expr, omega_factor, omega_factor_boundary,
    pulled_momentum, quarter_turn, wigner_base, wigner_branch_hint, wigner_phase_sq, wigner_power, Compensator,
};
pub use expr::{snap_to_branch, BranchHint, BranchMode, HoloExpr, Node, PowerState};
pub use morera::{morera_residual, morera_residual_relative, morera_residual_with, Contour, DEFAULT_PANEL};
pub use ode::{log_derivative, ode_continue, ode_continue_detour, CMatrixN, OdeOptions, ProductFamily};
pub use path::{
    boundary_at_ipi, continue_along, continue_along_perturbed, continue_along_with, path_to_ipi, Continuator,
    StripPath, DEFAULT_MAX_STEP, LATERAL_OFFSET,
};
pub use region::{tube_decompose, tube_region_contains, TubeDecomposition, TubeRegion};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HoloError {
    #[error("base of power node {node} vanishes near {z}")]
    PowerBaseVanishes { node: usize, z: C64 },
    #[error("step refinement limit reached near {0}")]
    RefinementLimit(C64),
    #[error("continuation differs on the two sides of a zero near {0}")]
    BranchPointOnPath(C64),
    #[error("point {0} lies outside the strip")]
    OutsideStrip(C64),
    #[error("contour needs at least three vertices")]
    DegenerateContour,
    #[error("point does not admit a decomposition with θ in (0, π)")]
    NotInTube,
    #[error("determinant of the product family is singular near {0}")]
    SingularDeterminant(C64),
}
