//! Numerical toolkit for anyonic spin-statistics in 2+1 dimensions: the
//! covering Lorentz group, Wigner rotations, analytic continuation in the
//! complex boost parameter, spacelike cone geometry and the statistics-phase
//! pipeline.

pub mod conegeom;
pub mod covergroup;
pub mod holo;
pub mod minkowski;
pub mod repn;
pub mod spinstat;
pub mod wigner;
