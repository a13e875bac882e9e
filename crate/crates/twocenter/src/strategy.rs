//! Runtime-selectable solver strategies.
//!
//! Each strategy wraps one solving variant behind a common dynamic interface
//! and registers under a stable name, so front-ends pick a variant with a
//! string: the restricted solver, the convex-position solver, an automatic
//! dispatcher, and the brute-force reference.

use crate::geom::{med, Disk, Point, Tolerance};
use crate::oracle;
use crate::solver::{solve_convex, solve_restricted, SearchMode, TwoCenterSolution};
use crate::Error;

/// Options shared by all strategies.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Group width for the decision engine's split-matrix decomposition.
    pub group_width: usize,
    /// Candidate search mode used by the optimizers.
    pub mode: SearchMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { group_width: 16, mode: SearchMode::Exact }
    }
}

/// A named solving variant.
pub trait Strategy: Sync {
    fn name(&self) -> &'static str;

    /// Solves for `s`; `o` feeds the variants that need a pivot.
    fn solve(
        &self,
        s: &[Point],
        o: Option<Point>,
        opts: &SolveOptions,
    ) -> Result<TwoCenterSolution, Error>;
}

/// The restricted solver: both disks must contain the pivot `o`.
pub struct Restricted;

impl Strategy for Restricted {
    fn name(&self) -> &'static str {
        "restricted"
    }

    fn solve(
        &self,
        s: &[Point],
        o: Option<Point>,
        opts: &SolveOptions,
    ) -> Result<TwoCenterSolution, Error> {
        let o = o.ok_or_else(|| Error::invalid("restricted mode requires a pivot o"))?;
        solve_restricted(s, o, opts.group_width, opts.mode)
    }
}

/// The convex-position solver; any pivot is ignored.
pub struct Convex;

impl Strategy for Convex {
    fn name(&self) -> &'static str {
        "convex"
    }

    fn solve(
        &self,
        s: &[Point],
        _o: Option<Point>,
        opts: &SolveOptions,
    ) -> Result<TwoCenterSolution, Error> {
        solve_convex(s, opts.group_width)
    }
}

/// Dispatches on the input: restricted when a pivot is given, otherwise the
/// convex-position solver.
pub struct Auto;

impl Strategy for Auto {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn solve(
        &self,
        s: &[Point],
        o: Option<Point>,
        opts: &SolveOptions,
    ) -> Result<TwoCenterSolution, Error> {
        match o {
            Some(o) => solve_restricted(s, o, opts.group_width, opts.mode),
            None => solve_convex(s, opts.group_width).map_err(|e| match e {
                Error::NotConvexPosition(i) => Error::invalid(format!(
                    "auto mode needs a pivot o or convex-position input \
                     (point {i} breaks convexity)"
                )),
                other => other,
            }),
        }
    }
}

/// Brute-force reference solver; cost grows polynomially with a high
/// exponent, so it is meant for small instances and verification.
pub struct BruteOracle;

impl Strategy for BruteOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn solve(
        &self,
        s: &[Point],
        o: Option<Point>,
        opts: &SolveOptions,
    ) -> Result<TwoCenterSolution, Error> {
        let _ = opts;
        let res = match o {
            Some(o) => oracle::brute_restricted(s, o)?,
            None => oracle::brute_two_center(s)?,
        };
        Ok(solution_from_partition(s, o, &res.partition))
    }
}

// Rebuild a full solution from a side assignment: each side's smallest
// enclosing disk (with the pivot joined in when given), both inflated to the
// common radius.
fn solution_from_partition(s: &[Point], o: Option<Point>, partition: &[u8]) -> TwoCenterSolution {
    let side = |tag: u8| -> Vec<Point> {
        let mut v: Vec<Point> = s
            .iter()
            .zip(partition)
            .filter(|(_, &t)| t == tag)
            .map(|(p, _)| *p)
            .collect();
        v.extend(o);
        v
    };
    let disk = |pts: &[Point]| -> Disk {
        if pts.is_empty() {
            return Disk::new(o.unwrap_or(Point::new(0.0, 0.0)), 0.0);
        }
        med(pts, &Tolerance::for_points(pts)).disk
    };
    let mut d1 = disk(&side(0));
    let mut d2 = disk(&side(1));
    let radius = d1.radius.max(d2.radius);
    d1.radius = radius;
    d2.radius = radius;
    TwoCenterSolution {
        radius,
        d1,
        d2,
        partition: partition.to_vec(),
        axis: None,
        witness: None,
        o_enlarged: false,
    }
}

static RESTRICTED: Restricted = Restricted;
static CONVEX: Convex = Convex;
static AUTO: Auto = Auto;
static ORACLE: BruteOracle = BruteOracle;
static STRATEGIES: [&dyn Strategy; 4] = [&RESTRICTED, &CONVEX, &AUTO, &ORACLE];

/// All registered strategies.
pub fn strategies() -> &'static [&'static dyn Strategy] {
    &STRATEGIES
}

/// Looks up a registered strategy by name.
pub fn strategy(name: &str) -> Option<&'static dyn Strategy> {
    STRATEGIES.iter().copied().find(|s| s.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square_and_pivot() -> (Vec<Point>, Point) {
        (vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)], pt(0.5, 0.5))
    }

    #[test]
    fn registry_names_and_lookup() {
        let names: Vec<&str> = strategies().iter().map(|s| s.name()).collect();
        assert_eq!(names, ["restricted", "convex", "auto", "oracle"]);
        for name in names {
            assert_eq!(strategy(name).unwrap().name(), name);
        }
        assert!(strategy("nonesuch").is_none());
    }

    #[test]
    fn restricted_requires_pivot() {
        let (s, _) = square_and_pivot();
        let err = strategy("restricted")
            .unwrap()
            .solve(&s, None, &SolveOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn restricted_square_with_center_pivot() {
        // Splitting the square into two adjacent edges gives diametral disks
        // of radius 1/2 whose boundaries pass through the center pivot.
        let (s, o) = square_and_pivot();
        let sol = strategy("restricted")
            .unwrap()
            .solve(&s, Some(o), &SolveOptions::default())
            .unwrap();
        assert!((sol.radius - 0.5).abs() < 1e-12);
        assert!(!sol.o_enlarged);
        sol.check(&s, Some(o)).unwrap();
    }

    #[test]
    fn auto_dispatches_on_pivot() {
        let (s, o) = square_and_pivot();
        let auto = strategy("auto").unwrap();
        let with_pivot = auto.solve(&s, Some(o), &SolveOptions::default()).unwrap();
        assert!((with_pivot.radius - 0.5).abs() < 1e-12);
        // Without a pivot the square is convex-position input.
        let convex = auto.solve(&s, None, &SolveOptions::default()).unwrap();
        let direct = strategy("convex")
            .unwrap()
            .solve(&s, None, &SolveOptions::default())
            .unwrap();
        assert_eq!(convex.radius, direct.radius);
    }

    #[test]
    fn auto_rejects_nonconvex_without_pivot() {
        let mut s = square_and_pivot().0;
        s.push(pt(0.5, 0.5)); // interior point
        let err = strategy("auto")
            .unwrap()
            .solve(&s, None, &SolveOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn oracle_strategy_matches_solver_on_square() {
        let (s, o) = square_and_pivot();
        let sol = strategy("oracle")
            .unwrap()
            .solve(&s, Some(o), &SolveOptions::default())
            .unwrap();
        assert!((sol.radius - 0.5).abs() < 1e-12);
        sol.check(&s, Some(o)).unwrap();
        let unrestricted = strategy("oracle")
            .unwrap()
            .solve(&s, None, &SolveOptions::default())
            .unwrap();
        assert!((unrestricted.radius - 0.5).abs() < 1e-12);
        unrestricted.check(&s, None).unwrap();
    }
}
