//! Independent brute-force references for the two-center problems.
//!
//! Everything here is deliberately naive and shares no machinery with the
//! real solvers beyond the smallest-enclosing-disk primitive; the test suite
//! uses these as ground truth. Performance is a non-goal.

use crate::geom::{angular_order, med, Point, Tolerance};
use crate::Error;

/// Result of a brute-force optimization.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub radius: f64,
    /// Side assignment per input index: 0 for the first disk, 1 for the second.
    pub partition: Vec<u8>,
    /// Number of candidate splits examined.
    pub enumeration_count: usize,
}

/// Optimal two congruent-disk cover by exhaustion over linearly separable
/// bipartitions.
///
/// In an optimal cover each point can be assigned to the nearer center, so
/// some optimal partition is split by a line. Every linear bipartition of a
/// finite set is realized by ordering along some direction `q - p` (both
/// orientations, with a perpendicular tiebreak standing in for infinitesimal
/// rotation) and cutting at a prefix, so enumerating those plus the trivial
/// splits is exhaustive.
pub fn brute_two_center(s: &[Point]) -> Result<OracleResult, Error> {
    validate(s)?;
    let n = s.len();
    let tol = Tolerance::for_points(s);
    if n <= 1 {
        return Ok(OracleResult { radius: 0.0, partition: vec![0; n], enumeration_count: 1 });
    }

    let mut best_radius = med(s, &tol).radius(); // one disk covers everything
    let mut best: (Vec<usize>, usize) = ((0..n).collect(), n); // order, prefix len
    let mut examined = 1usize;

    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = s[j] - s[i];
            // Secondary key = signed perpendicular offset; using both signs
            // covers the two infinitesimal rotations of the cut line.
            for flip in [1.0f64, -1.0] {
                order.sort_by(|&a, &b| {
                    let ka = (s[a].dot(d), flip * s[a].cross(d));
                    let kb = (s[b].dot(d), flip * s[b].cross(d));
                    ka.partial_cmp(&kb).unwrap().then(a.cmp(&b))
                });
                let fwd = prefix_radii(&order, s, &tol);
                let mut rev_order: Vec<usize> = order.iter().rev().copied().collect();
                let bwd = prefix_radii(&rev_order, s, &tol);
                rev_order.clear();
                for k in 0..=n {
                    examined += 1;
                    let r = fwd[k].max(bwd[n - k]);
                    if r < best_radius {
                        best_radius = r;
                        best = (order.clone(), k);
                    }
                }
            }
        }
    }

    let mut partition = vec![1u8; n];
    for &idx in &best.0[..best.1] {
        partition[idx] = 0;
    }
    Ok(OracleResult { radius: best_radius, partition, enumeration_count: examined })
}

// radii[k] = MED radius of the first k points of `order`.
fn prefix_radii(order: &[usize], s: &[Point], tol: &Tolerance) -> Vec<f64> {
    let n = order.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut prefix: Vec<Point> = Vec::with_capacity(n);
    let mut cur = None;
    for &idx in order {
        prefix.push(s[idx]);
        let needs_rebuild = match &cur {
            None => true,
            Some(d) => !crate::geom::Disk::contains(d, s[idx], tol),
        };
        if needs_rebuild {
            cur = Some(med(&prefix, tol).disk);
        }
        out.push(cur.as_ref().unwrap().radius);
    }
    out
}

/// Optimal two congruent-disk cover with `o` required in both disks, by
/// exhaustion over all circular-order cuts about `o`.
///
/// Both disks contain `o`, so each side's points together with `o` span a
/// "wedge" as seen from `o`; an optimal split therefore cuts the angular
/// order of `S` about `o` into two cyclic intervals. Points sharing a ray
/// from `o` are ordered nearest first, which suffices: a disk containing `o`
/// and a farther point of the ray contains the nearer ones too. Each side's
/// disk is the smallest disk enclosing the side plus `o`.
pub fn brute_restricted(s: &[Point], o: Point) -> Result<OracleResult, Error> {
    validate(s)?;
    let n = s.len();
    let tol = Tolerance::for_points(s);
    let order = angular_order(o, s)?; // errors if o coincides with a point
    if n == 0 {
        return Ok(OracleResult { radius: 0.0, partition: vec![], enumeration_count: 1 });
    }

    let mut best_radius = f64::INFINITY;
    let mut best_cut = (0usize, 0usize);
    let mut examined = 0usize;
    let mut side1: Vec<Point> = Vec::with_capacity(n + 1);
    let mut side2: Vec<Point> = Vec::with_capacity(n + 1);

    for a in 0..n {
        for b in a..=n {
            // side1 = order[a..b), side2 = the cyclic complement.
            side1.clear();
            side1.push(o);
            side1.extend(order[a..b].iter().map(|&i| s[i]));
            side2.clear();
            side2.push(o);
            side2.extend(order[b..].iter().map(|&i| s[i]));
            side2.extend(order[..a].iter().map(|&i| s[i]));
            let r = med(&side1, &tol).radius().max(med(&side2, &tol).radius());
            examined += 1;
            if r < best_radius {
                best_radius = r;
                best_cut = (a, b);
            }
        }
    }

    let mut partition = vec![1u8; n];
    for &idx in &order[best_cut.0..best_cut.1] {
        partition[idx] = 0;
    }
    Ok(OracleResult { radius: best_radius, partition, enumeration_count: examined })
}

/// Direct emptiness check for the radius-`r` disk-intersection of `X`:
/// empty exactly when no radius-`r` disk covers `X`, i.e. when the smallest
/// enclosing radius exceeds `r`.
pub fn brute_emptiness(x: &[Point], r: f64) -> Result<bool, Error> {
    validate(x)?;
    let tol = Tolerance::for_points(x);
    Ok(med(x, &tol).radius() > r)
}

fn validate(s: &[Point]) -> Result<(), Error> {
    for (i, p) in s.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    Ok(())
}
