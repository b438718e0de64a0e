//! Numerical toolkit for the group-invariant L_p dual Minkowski problem on
//! discrete measures.
//!
//! The crate is organized around six pieces:
//!
//! - [`group`]: finite subgroups of the orthogonal group, built from
//!   generators, with orbit, irreducibility, fixed-point and hemisphere
//!   machinery.
//! - [`bodies`]: convex polytopes represented as height functions over unit
//!   normals (Wulff shapes), radial/support evaluation, polar bodies,
//!   low-dimensional vertex enumeration, and the minimum-volume enclosing
//!   ellipsoid.
//! - [`dualmeasure`]: dual mixed volumes and (p,q)-th dual curvature measures
//!   of height bodies, computed from exact radial cells in 2-D and an
//!   icosahedral quadrature grid in 3-D.
//! - [`solver`]: the variational solver that minimizes the height functional
//!   under a dual-volume normalization, plus the 1-D closed forms and a
//!   residual-based verifier.
//! - [`classify`]: containment relations between the G-invariant bodies and
//!   the classical convex body classes, with witness constructions.
//! - [`json`]: serde schemas for the CLI wire formats.
//!
//! All values are immutable after construction and safe to share across
//! threads.

pub mod bodies;
pub mod classify;
pub mod dualmeasure;
pub mod group;
pub mod json;
pub mod lp;
pub mod measure;
pub mod mvee;
pub mod quadrature;
pub mod solver;

pub use bodies::{BodyError, Ellipsoid, HeightBody, StarBody};
pub use classify::{classify, witness_nonsymmetric, Classification, ClassifyError};
pub use group::{Builtin, FiniteGroup, GroupError, Orbit, OrthogonalMatrix};
pub use measure::DiscreteMeasure;
pub use quadrature::Quadrature;
pub use solver::{
    solve_1d, verify, Problem, Solution, Solution1d, SolverError, SolverOptions,
};
