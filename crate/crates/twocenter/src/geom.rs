//! Planar primitives shared by every other module: points, disks, the
//! tolerance policy, smallest enclosing disks, circumcircles, circle-circle
//! intersections, and angular sorting about a pivot.
//!
//! All arithmetic is plain `f64`. Every approximate predicate routes through
//! [`Tolerance::le`] so the comparison policy lives in exactly one place.

use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::Error;

/// A planar point. Also used as a free vector (directions, displacements).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product; positive when `o` points
    /// counterclockwise of `self`.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn dist2(self, o: Point) -> f64 {
        (self - o).norm2()
    }

    /// Rotation by +90 degrees (counterclockwise).
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    /// Lexicographic order by (x, y); used for canonical chain starts.
    pub fn lex_cmp(self, o: Point) -> std::cmp::Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap()
            .then(self.y.partial_cmp(&o.y).unwrap())
    }

    /// Bit-exact key, usable as a hash-map key for points that are copied
    /// around verbatim (never recomputed).
    pub fn bits(self) -> (u64, u64) {
        (self.x.to_bits(), self.y.to_bits())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Orientation of the triple (a, b, c): positive for a counterclockwise turn.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// A disk given by center and radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub const fn new(center: Point, radius: f64) -> Self {
        Self { center, radius }
    }

    /// Membership within tolerance: `dist <= r + slack(r)`.
    pub fn contains(&self, p: Point, tol: &Tolerance) -> bool {
        p.dist(self.center) <= self.radius + tol.slack(self.radius)
    }
}

/// Comparison slack shared by all geometric predicates.
///
/// `eps_rel` is dimensionless; `eps_abs` carries length units and is scaled
/// from the bounding-box diagonal of the data at hand (see
/// [`Tolerance::for_points`]), so the policy behaves identically for unit-box
/// and kilometre-box inputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps_rel: f64,
    pub eps_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_rel: 1e-9, eps_abs: 1e-12 }
    }
}

impl Tolerance {
    /// Tolerance scaled to a point set: `eps_abs = 1e-12 * bbox diagonal`,
    /// floored at 1e-12 so degenerate inputs still compare sanely.
    pub fn for_points(pts: &[Point]) -> Tolerance {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        let diag = if pts.is_empty() { 0.0 } else { hi.dist(lo) };
        Tolerance { eps_rel: 1e-9, eps_abs: 1e-12 * diag.max(1.0) }
    }

    /// Absolute slack for comparisons at the given magnitude.
    pub fn slack(&self, scale: f64) -> f64 {
        self.eps_abs + self.eps_rel * scale.abs()
    }

    /// The one comparison helper: `a <= b` within slack.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a - b <= self.slack(a.abs().max(b.abs()))
    }

    pub fn ge(&self, a: f64, b: f64) -> bool {
        self.le(b, a)
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    /// Strict `a < b`: beyond slack.
    pub fn lt(&self, a: f64, b: f64) -> bool {
        !self.le(b, a)
    }

    /// Near-tangency band, one order coarser than `eps_abs`. A grazing
    /// contact within the band collapses to a single point instead of a
    /// sliver region; the optimizers only depend on predicate signs across a
    /// discrete radius grid, so the band cannot flip a final answer.
    pub fn band(&self) -> f64 {
        10.0 * self.eps_abs
    }
}

/// Smallest enclosing disk together with its determining support points.
#[derive(Clone, Debug)]
pub struct EnclosingDisk {
    pub disk: Disk,
    /// At most three input points that pin the disk (lie on its boundary).
    pub support: SmallVec<[Point; 3]>,
    /// True only for empty input, where center and radius are meaningless.
    pub degenerate: bool,
}

impl EnclosingDisk {
    pub fn radius(&self) -> f64 {
        self.disk.radius
    }

    pub fn center(&self) -> Point {
        self.disk.center
    }
}

/// Smallest disk containing every input point.
///
/// Randomized incremental construction, expected linear time. The internal
/// shuffle is seeded deterministically from the input length, so results are
/// reproducible run to run. Duplicates are fine; the empty set yields a
/// degenerate radius-0 result.
pub fn smallest_enclosing_disk(pts: &[Point]) -> Result<EnclosingDisk, Error> {
    for (i, p) in pts.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    Ok(med(pts, &Tolerance::for_points(pts)))
}

/// Internal entry without input validation, for hot paths that already hold
/// validated data.
pub(crate) fn med(pts: &[Point], tol: &Tolerance) -> EnclosingDisk {
    if pts.is_empty() {
        return EnclosingDisk {
            disk: Disk::new(Point::new(0.0, 0.0), 0.0),
            support: SmallVec::new(),
            degenerate: true,
        };
    }
    let mut work: Vec<Point> = pts.to_vec();
    // Deterministic Fisher-Yates; seeding by length keeps the function pure.
    let mut rng = SplitMix64::new(0x9e37_79b9_7f4a_7c15 ^ (work.len() as u64));
    for i in (1..work.len()).rev() {
        work.swap(i, rng.below(i as u64 + 1) as usize);
    }

    let mut cur = one_point_disk(work[0]);
    for i in 1..work.len() {
        let p = work[i];
        if !disk_holds(&cur.0, p, tol) {
            cur = med_with_one(&work[..=i], p, tol);
        }
    }
    EnclosingDisk { disk: cur.0, support: cur.1, degenerate: false }
}

type DiskSupport = (Disk, SmallVec<[Point; 3]>);

fn one_point_disk(p: Point) -> DiskSupport {
    (Disk::new(p, 0.0), SmallVec::from_slice(&[p]))
}

fn diametral(p: Point, q: Point) -> DiskSupport {
    let c = (p + q) * 0.5;
    let r = c.dist(p).max(c.dist(q));
    (Disk::new(c, r), SmallVec::from_slice(&[p, q]))
}

fn disk_holds(d: &Disk, p: Point, tol: &Tolerance) -> bool {
    d.contains(p, tol)
}

// Smallest disk over `pts` with `p` known to be on the boundary.
fn med_with_one(pts: &[Point], p: Point, tol: &Tolerance) -> DiskSupport {
    let mut cur = one_point_disk(p);
    for (j, &q) in pts.iter().enumerate() {
        if disk_holds(&cur.0, q, tol) {
            continue;
        }
        cur = if cur.0.radius == 0.0 { diametral(p, q) } else { med_with_two(&pts[..=j], p, q, tol) };
    }
    cur
}

// Smallest disk over `pts` with `p` and `q` both on the boundary. Scans for
// the extreme circumcircles on either side of line pq.
fn med_with_two(pts: &[Point], p: Point, q: Point, tol: &Tolerance) -> DiskSupport {
    let base = diametral(p, q);
    let pq = q - p;
    let mut left: Option<(Disk, Point, f64)> = None;
    let mut right: Option<(Disk, Point, f64)> = None;

    for &r in pts {
        if disk_holds(&base.0, r, tol) {
            continue;
        }
        let side = pq.cross(r - p);
        let Some(c) = circumcircle_raw(p, q, r) else { continue };
        let cc = pq.cross(c.center - p);
        if side > 0.0 {
            if left.map_or(true, |(_, _, best)| cc > best) {
                left = Some((c, r, cc));
            }
        } else if side < 0.0 && right.map_or(true, |(_, _, best)| cc < best) {
            right = Some((c, r, cc));
        }
    }

    match (left, right) {
        (None, None) => base,
        (Some((d, r, _)), None) | (None, Some((d, r, _))) => {
            (d, SmallVec::from_slice(&[p, q, r]))
        }
        (Some((dl, rl, _)), Some((dr, rr, _))) => {
            if dl.radius <= dr.radius {
                (dl, SmallVec::from_slice(&[p, q, rl]))
            } else {
                (dr, SmallVec::from_slice(&[p, q, rr]))
            }
        }
    }
}

// Circumcircle with the midpoint-offset trick for conditioning; None when the
// determinant vanishes exactly.
pub(crate) fn circumcircle_raw(a: Point, b: Point, c: Point) -> Option<Disk> {
    let ox = (a.x.min(b.x).min(c.x) + a.x.max(b.x).max(c.x)) / 2.0;
    let oy = (a.y.min(b.y).min(c.y) + a.y.max(b.y).max(c.y)) / 2.0;
    let (ax, ay) = (a.x - ox, a.y - oy);
    let (bx, by) = (b.x - ox, b.y - oy);
    let (cx, cy) = (c.x - ox, c.y - oy);
    let d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0;
    if d == 0.0 {
        return None;
    }
    let x = ox
        + ((ax * ax + ay * ay) * (by - cy)
            + (bx * bx + by * by) * (cy - ay)
            + (cx * cx + cy * cy) * (ay - by))
            / d;
    let y = oy
        + ((ax * ax + ay * ay) * (cx - bx)
            + (bx * bx + by * by) * (ax - cx)
            + (cx * cx + cy * cy) * (bx - ax))
            / d;
    let center = Point::new(x, y);
    let radius = center.dist(a).max(center.dist(b)).max(center.dist(c));
    Some(Disk::new(center, radius))
}

/// Circle through three points.
///
/// Errors on collinear (or coincident) triples, detected by the relative
/// area test `|cross| <= eps_rel * |ab| * |ac|`.
pub fn circumcircle(a: Point, b: Point, c: Point) -> Result<Disk, Error> {
    for (i, p) in [a, b, c].iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    let tol = Tolerance::for_points(&[a, b, c]);
    let area2 = (b - a).cross(c - a).abs();
    if area2 <= tol.eps_rel * (b - a).norm() * (c - a).norm() + tol.eps_abs * tol.eps_abs {
        return Err(Error::Collinear);
    }
    circumcircle_raw(a, b, c).ok_or(Error::Collinear)
}

/// Intersection points of two circle boundaries: 0, 1 (tangency within the
/// tolerance band), or 2 points.
///
/// With two results, the first lies to the left of the directed line from
/// `d1.center` to `d2.center`. Concentric circles report no points.
pub fn circle_circle_points(
    d1: &Disk,
    d2: &Disk,
    tol: &Tolerance,
) -> Result<SmallVec<[Point; 2]>, Error> {
    if !(d1.radius > 0.0 && d2.radius > 0.0) {
        return Err(Error::invalid("circle_circle_points requires positive radii"));
    }
    Ok(circle_circle_raw(d1.center, d1.radius, d2.center, d2.radius, tol))
}

pub(crate) fn circle_circle_raw(
    c1: Point,
    r1: f64,
    c2: Point,
    r2: f64,
    tol: &Tolerance,
) -> SmallVec<[Point; 2]> {
    let mut out = SmallVec::new();
    let dv = c2 - c1;
    let d = dv.norm();
    if d <= tol.eps_abs {
        return out; // concentric: callers treat as "no crossings"
    }
    let band = tol.band();
    if d > r1 + r2 + band || d + r1.min(r2) + band < r1.max(r2) {
        return out; // disjoint or nested beyond the band
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    let u = dv * (1.0 / d);
    let foot = c1 + u * a;
    // Tangency: chord half-length vanishes within the band (length^2 scale).
    if h2 <= band * (r1 + r2) {
        out.push(foot);
        return out;
    }
    let h = h2.sqrt();
    let v = u.perp();
    out.push(foot + v * h); // left of c1 -> c2
    out.push(foot + v * (-h)); // right of c1 -> c2
    out
}

/// Sort indices of `pts` by counterclockwise angle about `o`.
///
/// Angles are measured in [0, 2pi): a point on the positive x-axis from `o`
/// sorts first. Ties in angle break by distance from `o`, nearest first;
/// exact duplicates keep input order (the sort is stable). A point coincident
/// with `o` is an input error carrying its index.
pub fn angular_order(o: Point, pts: &[Point]) -> Result<Vec<usize>, Error> {
    if !o.is_finite() {
        return Err(Error::NonFinite(usize::MAX));
    }
    let tol = Tolerance::for_points(pts);
    let mut dirs = Vec::with_capacity(pts.len());
    for (i, p) in pts.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(i));
        }
        let d = *p - o;
        if d.norm() <= tol.eps_abs {
            return Err(Error::CoincidentWithPivot(i));
        }
        dirs.push(d);
    }
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| cmp_ccw_from_east(dirs[i], dirs[j]));
    Ok(idx)
}

// Half-plane class for the [0, 2pi) angle convention: class 0 covers
// [0, pi) (positive x-axis included), class 1 covers [pi, 2pi).
fn half_class(d: Point) -> u8 {
    if d.y > 0.0 || (d.y == 0.0 && d.x > 0.0) {
        0
    } else {
        1
    }
}

/// Total circular order of direction vectors, counterclockwise from the
/// positive x-axis, built from sign tests only. Parallel same-direction
/// vectors compare by length, shortest first.
pub(crate) fn cmp_ccw_from_east(a: Point, b: Point) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (ca, cb) = (half_class(a), half_class(b));
    if ca != cb {
        return ca.cmp(&cb);
    }
    let cr = a.cross(b);
    if cr > 0.0 {
        Ordering::Less
    } else if cr < 0.0 {
        Ordering::Greater
    } else {
        // Same ray (within a half-open half-turn, cross = 0 means same
        // direction): nearest first.
        a.norm2().partial_cmp(&b.norm2()).unwrap_or(Ordering::Equal)
    }
}

/// Deterministic small RNG for internal shuffles (no external entropy).
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, n) by rejection; n must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next();
            if v < zone {
                return v % n;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
    }

    fn pt_close(a: Point, b: Point) -> bool {
        close(a.x, b.x) && close(a.y, b.y)
    }

    #[test]
    fn med_empty_is_degenerate() {
        let d = smallest_enclosing_disk(&[]).unwrap();
        assert!(d.degenerate);
        assert_eq!(d.radius(), 0.0);
        assert!(d.support.is_empty());
    }

    #[test]
    fn med_diametral_pair() {
        let d = smallest_enclosing_disk(&[pt(0.0, 0.0), pt(2.0, 0.0)]).unwrap();
        assert!(pt_close(d.center(), pt(1.0, 0.0)));
        assert!(close(d.radius(), 1.0));
        assert_eq!(d.support.len(), 2);
    }

    #[test]
    fn med_pair_covers_apex() {
        // (1,1) sits on the midpoint disk of the diametral pair already.
        let d = smallest_enclosing_disk(&[pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 1.0)]).unwrap();
        assert!(pt_close(d.center(), pt(1.0, 0.0)));
        assert!(close(d.radius(), 1.0));
    }

    #[test]
    fn med_rejects_non_finite() {
        let err = smallest_enclosing_disk(&[pt(0.0, 0.0), pt(f64::NAN, 1.0)]).unwrap_err();
        assert_eq!(err, Error::NonFinite(1));
    }

    #[test]
    fn med_single_and_duplicates() {
        let d = smallest_enclosing_disk(&[pt(3.0, -2.0)]).unwrap();
        assert!(pt_close(d.center(), pt(3.0, -2.0)));
        assert_eq!(d.radius(), 0.0);
        let d = smallest_enclosing_disk(&[pt(1.0, 1.0); 5]).unwrap();
        assert!(pt_close(d.center(), pt(1.0, 1.0)));
        assert!(d.radius() <= 1e-12);
    }

    #[test]
    fn circumcircle_right_triangle() {
        let d = circumcircle(pt(0.0, 0.0), pt(2.0, 0.0), pt(0.0, 2.0)).unwrap();
        assert!(pt_close(d.center, pt(1.0, 1.0)));
        assert!(close(d.radius, std::f64::consts::SQRT_2));
    }

    #[test]
    fn circumcircle_collinear_errors() {
        let e = circumcircle(pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)).unwrap_err();
        assert_eq!(e, Error::Collinear);
    }

    #[test]
    fn circumcircle_equilateral_on_unit_circle() {
        let d =
            circumcircle(pt(1.0, 0.0), pt(-0.5, SQRT3 / 2.0), pt(-0.5, -SQRT3 / 2.0)).unwrap();
        assert!(pt_close(d.center, pt(0.0, 0.0)));
        assert!(close(d.radius, 1.0));
    }

    #[test]
    fn circumcircle_invariant_under_permutation() {
        let (a, b, c) = (pt(0.3, 1.7), pt(-2.0, 0.4), pt(1.1, -0.6));
        let d0 = circumcircle(a, b, c).unwrap();
        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            let d = circumcircle(x, y, z).unwrap();
            assert!(pt_close(d.center, d0.center) && close(d.radius, d0.radius));
        }
    }

    #[test]
    fn circles_tangent_meet_in_one_point() {
        let tol = Tolerance::default();
        let ps = circle_circle_points(
            &Disk::new(pt(0.0, 0.0), 1.0),
            &Disk::new(pt(2.0, 0.0), 1.0),
            &tol,
        )
        .unwrap();
        assert_eq!(ps.len(), 1);
        assert!(pt_close(ps[0], pt(1.0, 0.0)));
    }

    #[test]
    fn circles_lens_two_points_left_first() {
        let tol = Tolerance::default();
        let ps = circle_circle_points(
            &Disk::new(pt(0.0, 0.0), 1.0),
            &Disk::new(pt(1.0, 0.0), 1.0),
            &tol,
        )
        .unwrap();
        assert_eq!(ps.len(), 2);
        assert!(pt_close(ps[0], pt(0.5, SQRT3 / 2.0)));
        assert!(pt_close(ps[1], pt(0.5, -SQRT3 / 2.0)));
    }

    #[test]
    fn circles_disjoint_no_points() {
        let tol = Tolerance::default();
        let ps = circle_circle_points(
            &Disk::new(pt(0.0, 0.0), 1.0),
            &Disk::new(pt(3.0, 0.0), 1.0),
            &tol,
        )
        .unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn angular_identity_order() {
        let idx =
            angular_order(pt(0.0, 0.0), &[pt(1.0, 0.0), pt(0.0, 1.0), pt(-1.0, 0.0)]).unwrap();
        assert_eq!(idx, vec![0, 1, 2]);
    }

    #[test]
    fn angular_swapped_order() {
        let idx = angular_order(pt(0.0, 0.0), &[pt(0.0, 1.0), pt(1.0, 0.0)]).unwrap();
        assert_eq!(idx, vec![1, 0]);
    }

    #[test]
    fn angular_tie_nearest_first() {
        let idx = angular_order(pt(0.0, 0.0), &[pt(2.0, 0.0), pt(1.0, 0.0)]).unwrap();
        assert_eq!(idx, vec![1, 0]);
    }

    #[test]
    fn angular_rejects_pivot_coincidence() {
        let e = angular_order(pt(1.0, 1.0), &[pt(0.0, 0.0), pt(1.0, 1.0)]).unwrap_err();
        assert_eq!(e, Error::CoincidentWithPivot(1));
    }

    #[test]
    fn angular_full_turn_is_sorted() {
        // Eight compass directions starting east, already in CCW order.
        let pts = [
            pt(1.0, 0.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
            pt(-1.0, 1.0),
            pt(-1.0, 0.0),
            pt(-1.0, -1.0),
            pt(0.0, -1.0),
            pt(1.0, -1.0),
        ];
        let idx = angular_order(pt(0.0, 0.0), &pts).unwrap();
        assert_eq!(idx, (0..8).collect::<Vec<_>>());
    }

    fn random_points(rng: &mut ChaCha8Rng, n: usize, span: f64) -> Vec<Point> {
        (0..n)
            .map(|_| pt(rng.gen_range(-span..span), rng.gen_range(-span..span)))
            .collect()
    }

    #[test]
    fn med_invariant_under_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..12);
            let pts = random_points(&mut rng, n, 5.0);
            let d0 = smallest_enclosing_disk(&pts).unwrap();
            let mut shuffled = pts.clone();
            for i in (1..shuffled.len()).rev() {
                let j = rng.gen_range(0..=i);
                shuffled.swap(i, j);
            }
            let d1 = smallest_enclosing_disk(&shuffled).unwrap();
            assert!(pt_close(d0.center(), d1.center()), "center moved under permutation");
            assert!(close(d0.radius(), d1.radius()));
        }
    }

    #[test]
    fn med_radius_monotone_under_insertion() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let n = rng.gen_range(1..15);
            let pts = random_points(&mut rng, n, 3.0);
            let r0 = smallest_enclosing_disk(&pts).unwrap().radius();
            let mut ext = pts.clone();
            ext.push(pt(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
            let r1 = smallest_enclosing_disk(&ext).unwrap().radius();
            assert!(r1 + 1e-12 >= r0);
        }
    }

    #[test]
    fn med_support_on_boundary_and_covers_all() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let n = rng.gen_range(1..20);
            let pts = random_points(&mut rng, n, 4.0);
            let d = smallest_enclosing_disk(&pts).unwrap();
            let tol = Tolerance::for_points(&pts);
            assert!(d.support.len() <= 3);
            for s in &d.support {
                assert!(
                    (s.dist(d.center()) - d.radius()).abs() <= 1e-9 * (1.0 + d.radius()),
                    "support point off the boundary"
                );
            }
            for p in &pts {
                assert!(d.disk.contains(*p, &tol));
            }
        }
    }

    #[test]
    fn med_never_beats_circumcircle() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let mut checked = 0;
        while checked < 1000 {
            let pts = random_points(&mut rng, 3, 5.0);
            let Ok(cc) = circumcircle(pts[0], pts[1], pts[2]) else { continue };
            let med = smallest_enclosing_disk(&pts).unwrap();
            assert!(med.radius() <= cc.radius * (1.0 + 1e-9));
            checked += 1;
        }
    }

    #[test]
    fn angular_order_is_genuinely_sorted() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..100 {
            let n = rng.gen_range(2..25);
            let pts = random_points(&mut rng, n, 2.0);
            let o = pt(0.003, -0.007);
            if pts.iter().any(|p| p.dist(o) < 1e-6) {
                continue;
            }
            let idx = angular_order(o, &pts).unwrap();
            for w in idx.windows(2) {
                let a = pts[w[0]] - o;
                let b = pts[w[1]] - o;
                assert_ne!(cmp_ccw_from_east(a, b), std::cmp::Ordering::Greater);
            }
        }
    }
}
