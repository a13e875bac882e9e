//! Planar two-center solvers.
//!
//! The library solves two congruent-disk covering problems over planar point
//! sets:
//!
//! * the **restricted** two-center problem: cover `S` with two congruent
//!   disks of minimum radius such that both disks contain a given point `o`
//!   (assumed to lie in the optimal overlap);
//! * the **convex-position** two-center problem: cover a set in convex
//!   position with two congruent disks of minimum radius.
//!
//! Optimization reduces to a monotone decision procedure ("can radius `r`
//! cover?") evaluated over an exact grid of candidate radii. The decision
//! procedure works on the boundaries of disk-intersection regions, which are
//! convex chains of equal-radius circular arcs ([`hull::ArcChain`]), organised
//! in balanced range trees ([`rtree::CanonicalTree`]) and searched through a
//! monotone-matrix group decomposition ([`decision`]).
//!
//! Brute-force reference implementations used by the test suite live in
//! [`oracle`]. Instance generators live in [`gen`]; runtime-selectable solver
//! variants live in [`strategy`].

pub mod decision;
pub mod gen;
pub mod geom;
pub mod hull;
pub mod oracle;
pub mod rtree;
pub mod solver;
pub mod strategy;

pub use geom::{angular_order, smallest_enclosing_disk, Disk, EnclosingDisk, Point, Tolerance};
pub use solver::{critical_radii, solve_convex, solve_restricted, SearchMode, TwoCenterSolution};

/// Errors reported by the public API.
///
/// `Contract*` variants indicate an internal invariant violation (a bug or a
/// broken precondition of an internal call), everything else is an input
/// error.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite coordinate at point index {0}")]
    NonFinite(usize),
    #[error("point at index {0} coincides with the pivot o")]
    CoincidentWithPivot(usize),
    #[error("collinear or coincident points: no finite circumcircle")]
    Collinear,
    #[error("points are not in convex position (point index {0})")]
    NotConvexPosition(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal contract violated: {0}")]
    Contract(String),
}

/// Caps the thread pool used by the parallel decision scans.
///
/// Must run before any parallel work; results are bit-identical for every
/// thread count. Fails if the pool is already built.
pub fn set_threads(n: usize) -> Result<(), Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Contract(_))
    }

    /// Internal invariant violation (a bug, not bad input).
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// Input rejection.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
