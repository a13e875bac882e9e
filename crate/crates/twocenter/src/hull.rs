//! Boundaries of equal-radius disk intersections and circular hulls.
//!
//! For a point set `X` and radius `r`, the region `I_r(X)` is the common
//! intersection of the radius-`r` disks centered at the points of `X`; it is
//! nonempty exactly when one radius-`r` disk covers `X`. Its boundary is a
//! convex, counterclockwise chain of radius-`r` arcs, each centered at a
//! point of `X` ([`ArcChain`]). The dual region `alpha_r(X)` — the
//! intersection of all radius-`r` disks containing `X` — has the same chain
//! representation with arcs centered at the vertices of `I_r(X)` and vice
//! versa.
//!
//! Everything here reduces to one primitive: clipping a chain by one more
//! congruent disk. A radius-`r` circle crosses the boundary of a radius-`r`
//! disk intersection at most twice, so a clip removes one contiguous run of
//! the boundary and splices in a single new arc.

use std::cmp::Ordering;
use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::geom::{circle_circle_raw, med, orient, Point, Tolerance};
use crate::Error;

/// One counterclockwise arc of radius `r` (the owning chain's radius) about
/// `center`, from `start` to `end`. A full circle is encoded as
/// `start == end` on a chain whose kind is `Region` with a single arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleArc {
    pub center: Point,
    pub start: Point,
    pub end: Point,
}

impl CircleArc {
    fn is_degenerate(&self, tol: &Tolerance) -> bool {
        self.start.dist(self.end) <= tol.band()
    }
}

/// Classification of a chain's region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// No point satisfies all constraints.
    Empty,
    /// The region degenerates to a single point (grazing contact within the
    /// tolerance band).
    Point,
    /// Full-dimensional region bounded by the arcs.
    Region,
    /// No constraints at all (intersection over an empty generator set): the
    /// whole plane. Carries no arcs.
    Plane,
}

/// Boundary of an equal-radius disk intersection (or circular hull).
///
/// Invariants for `kind == Region`: arcs are in counterclockwise order,
/// consecutive arcs share endpoints, turning is convex, every arc center is a
/// distinct generating point, and the chain starts at the arc with
/// lexicographically smallest center. `witness` is a point inside the region
/// (for `Point`, the point itself). For `kind == Point` the single
/// degenerate arc stores the location in `start`/`end`; its center is a
/// generator at distance ~`r` where one exists.
#[derive(Clone, Debug)]
pub struct ArcChain {
    pub r: f64,
    pub tol: Tolerance,
    pub kind: ChainKind,
    pub arcs: Vec<CircleArc>,
    pub witness: Point,
}

impl ArcChain {
    pub fn empty(r: f64, tol: Tolerance, near: Point) -> ArcChain {
        ArcChain { r, tol, kind: ChainKind::Empty, arcs: Vec::new(), witness: near }
    }

    pub fn plane(r: f64, tol: Tolerance) -> ArcChain {
        ArcChain { r, tol, kind: ChainKind::Plane, arcs: Vec::new(), witness: Point::new(0.0, 0.0) }
    }

    pub fn full_circle(center: Point, r: f64, tol: Tolerance) -> ArcChain {
        let east = center + Point::new(r, 0.0);
        ArcChain {
            r,
            tol,
            kind: ChainKind::Region,
            arcs: vec![CircleArc { center, start: east, end: east }],
            witness: center,
        }
    }

    pub fn single_point(at: Point, generator: Point, r: f64, tol: Tolerance) -> ArcChain {
        ArcChain {
            r,
            tol,
            kind: ChainKind::Point,
            arcs: vec![CircleArc { center: generator, start: at, end: at }],
            witness: at,
        }
    }

    /// The location of a `Point`-kind chain.
    pub fn point(&self) -> Point {
        debug_assert_eq!(self.kind, ChainKind::Point);
        self.arcs[0].start
    }

    pub fn is_full_circle(&self) -> bool {
        self.kind == ChainKind::Region
            && self.arcs.len() == 1
            && self.arcs[0].start == self.arcs[0].end
    }

    /// Chain vertices (arc start points). Empty for a full circle, the
    /// location for a point chain.
    pub fn vertices(&self) -> Vec<Point> {
        match self.kind {
            ChainKind::Region if !self.is_full_circle() => {
                self.arcs.iter().map(|a| a.start).collect()
            }
            ChainKind::Point => vec![self.point()],
            _ => Vec::new(),
        }
    }

    /// Generating points that still carry boundary arcs.
    pub fn centers(&self) -> impl Iterator<Item = Point> + '_ {
        self.arcs.iter().map(|a| a.center)
    }

    /// Membership within tolerance, O(log #arcs) for regions: locate the
    /// boundary arc facing `p` from the interior witness, then test that
    /// arc's disk.
    pub fn contains(&self, p: Point) -> bool {
        match self.kind {
            ChainKind::Plane => true,
            ChainKind::Empty => false,
            ChainKind::Point => self.tol.same_point(p, self.point()),
            ChainKind::Region => {
                let slack = self.tol.slack(self.r);
                if (p - self.witness).norm() <= self.tol.eps_abs {
                    return true;
                }
                let k = self.facing_arc(p);
                p.dist(self.arcs[k].center) <= self.r + slack
            }
        }
    }

    /// Index of the boundary arc whose angular wedge (about the witness)
    /// contains the direction towards `p`. Region chains only.
    pub(crate) fn facing_arc(&self, p: Point) -> usize {
        debug_assert_eq!(self.kind, ChainKind::Region);
        if self.arcs.len() == 1 {
            return 0;
        }
        let w = self.witness;
        let d = p - w;
        let base = self.arcs[0].start - w;
        // Largest k with vertex_k at or before d in circular order.
        let mut lo = 0usize;
        let mut hi = self.arcs.len(); // exclusive
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let v = self.arcs[mid].start - w;
            if cmp_about(base, v, d) != Ordering::Greater {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Line-oriented debug dump: one arc per line as
    /// `center_x center_y start_x start_y end_x end_y`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "{:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
                a.center.x, a.center.y, a.start.x, a.start.y, a.end.x, a.end.y
            );
        }
        out
    }

    /// Structural equality within `eps` (same kind, aligned arcs).
    pub fn approx_eq(&self, other: &ArcChain, eps: f64) -> bool {
        if self.kind != other.kind {
            return false;
        }
        match self.kind {
            ChainKind::Empty | ChainKind::Plane => true,
            ChainKind::Point => self.point().dist(other.point()) <= eps,
            ChainKind::Region => {
                if self.arcs.len() != other.arcs.len() {
                    return false;
                }
                self.arcs.iter().zip(&other.arcs).all(|(a, b)| {
                    a.center.dist(b.center) <= eps
                        && a.start.dist(b.start) <= eps
                        && a.end.dist(b.end) <= eps
                })
            }
        }
    }

    /// Consistency check used by tests: endpoint stitching, radius, convex
    /// turning, distinct centers.
    #[allow(dead_code)]
    pub(crate) fn validate(&self) -> Result<(), String> {
        if self.kind != ChainKind::Region {
            return Ok(());
        }
        let eps = self.tol.band().max(1e-9 * self.r);
        for (k, a) in self.arcs.iter().enumerate() {
            for (p, what) in [(a.start, "start"), (a.end, "end")] {
                let d = (p.dist(a.center) - self.r).abs();
                if d > 1e-6 * self.r.max(1.0) {
                    return Err(format!("arc {k} {what} off circle by {d}"));
                }
            }
            let b = &self.arcs[(k + 1) % self.arcs.len()];
            if self.arcs.len() > 1 && a.end.dist(b.start) > eps.max(1e-7 * self.r) {
                return Err(format!("arcs {k} and next do not stitch"));
            }
            for (j, c) in self.arcs.iter().enumerate() {
                if j != k && a.center.dist(c.center) <= self.tol.eps_abs {
                    return Err(format!("duplicate center in arcs {k} and {j}"));
                }
            }
            if self.arcs.len() > 1 {
                let t_out = (a.end - a.center).perp();
                let t_in = (b.start - b.center).perp();
                if t_out.cross(t_in) < -1e-7 * self.r * self.r {
                    return Err(format!("reflex turn between arcs {k} and next"));
                }
            }
        }
        if !self.contains(self.witness) {
            return Err("witness outside region".into());
        }
        Ok(())
    }
}

impl Tolerance {
    /// Spatial coincidence at band precision.
    pub fn same_point(&self, a: Point, b: Point) -> bool {
        a.dist(b) <= self.band()
    }
}

// Total circular order of directions about an implicit origin, starting at
// `base`, built from sign tests only.
fn bucket(base: Point, v: Point) -> u8 {
    let cr = base.cross(v);
    if cr > 0.0 {
        1
    } else if cr < 0.0 {
        3
    } else if base.dot(v) >= 0.0 {
        0
    } else {
        2
    }
}

pub(crate) fn cmp_about(base: Point, a: Point, b: Point) -> Ordering {
    let (ba, bb) = (bucket(base, a), bucket(base, b));
    if ba != bb {
        return ba.cmp(&bb);
    }
    if ba == 1 || ba == 3 {
        let cr = a.cross(b);
        if cr > 0.0 {
            Ordering::Less
        } else if cr < 0.0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    } else {
        Ordering::Equal
    }
}

// Is direction x within the counterclockwise sweep from a to b (inclusive
// within cross-product slack eps)? A zero-length sweep contains only x || a;
// sweeps of exactly pi and beyond are handled via the complement.
fn in_ccw_sweep(a: Point, b: Point, x: Point, eps: f64) -> bool {
    let cab = a.cross(b);
    if cab > 0.0 {
        a.cross(x) >= -eps && x.cross(b) >= -eps
    } else if cab < 0.0 {
        !(b.cross(x) > eps && x.cross(a) > eps)
    } else if a.dot(b) >= 0.0 {
        // same direction: zero-length sweep
        a.cross(x).abs() <= eps && a.dot(x) >= 0.0
    } else {
        // opposite directions: sweep of exactly pi, the left side of a
        a.cross(x) >= -eps
    }
}

// Midpoint direction of the counterclockwise sweep from a to b.
fn sweep_midpoint(a: Point, b: Point) -> Point {
    let an = a * (1.0 / a.norm());
    let bn = b * (1.0 / b.norm());
    let m = an + bn;
    if m.norm() <= 1e-9 {
        return an.perp(); // half-turn sweep
    }
    let mn = m * (1.0 / m.norm());
    if in_ccw_sweep(a, b, mn, 0.0) {
        mn
    } else {
        -mn
    }
}

enum ClipOutcome {
    Unchanged,
    Gone,
    Collapsed(Point),
    Region(Vec<CircleArc>, Vec<u8>),
}

// Clip the closed counterclockwise chain `arcs` (radius r) by the disk of
// radius r about q. Owner tags travel with surviving pieces; the spliced arc
// gets `q_owner`. At most two boundary crossings exist for equal radii, so
// the cut is one contiguous run.
fn clip_arcs(
    arcs: &[CircleArc],
    owners: &[u8],
    r: f64,
    tol: &Tolerance,
    q: Point,
    q_owner: u8,
) -> Result<ClipOutcome, Error> {
    debug_assert_eq!(arcs.len(), owners.len());
    if arcs.iter().any(|a| tol.same_point(a.center, q)) {
        return Ok(ClipOutcome::Unchanged); // q already generates the chain
    }

    // Full circle: splice directly from the two circle crossings.
    if arcs.len() == 1 && arcs[0].start == arcs[0].end {
        let c = arcs[0].center;
        let pts = circle_circle_raw(c, r, q, r, tol);
        return Ok(match pts.len() {
            0 => ClipOutcome::Gone,
            1 => ClipOutcome::Collapsed(pts[0]),
            _ => {
                let (zl, zr) = (pts[0], pts[1]); // left, right of c -> q
                ClipOutcome::Region(
                    vec![
                        CircleArc { center: c, start: zr, end: zl },
                        CircleArc { center: q, start: zl, end: zr },
                    ],
                    vec![owners[0], q_owner],
                )
            }
        });
    }

    struct Seg {
        center: Point,
        s: Point,
        e: Point,
        owner: u8,
        inside: bool,
    }

    let eps_x = tol.eps_abs * r.max(tol.eps_abs);
    let mut segs: Vec<Seg> = Vec::with_capacity(arcs.len() + 2);
    for (a, &ow) in arcs.iter().zip(owners) {
        let ds = a.start - a.center;
        let de = a.end - a.center;
        let mut evs: SmallVec<[Point; 2]> = SmallVec::new();
        for z in circle_circle_raw(a.center, r, q, r, tol) {
            if in_ccw_sweep(ds, de, z - a.center, eps_x)
                && !tol.same_point(z, a.start)
                && !tol.same_point(z, a.end)
            {
                evs.push(z);
            }
        }
        if evs.len() == 2 && !in_ccw_sweep(ds, evs[1] - a.center, evs[0] - a.center, eps_x) {
            evs.swap(0, 1);
        }
        let mut walk: SmallVec<[Point; 4]> = SmallVec::new();
        walk.push(a.start);
        walk.extend(evs);
        walk.push(a.end);
        for w in walk.windows(2) {
            if tol.same_point(w[0], w[1]) {
                continue;
            }
            let mid_dir = sweep_midpoint(w[0] - a.center, w[1] - a.center);
            let mid = a.center + mid_dir * r;
            segs.push(Seg { center: a.center, s: w[0], e: w[1], owner: ow, inside: mid.dist(q) <= r });
        }
    }
    if segs.is_empty() {
        return Err(Error::contract("chain degenerated to zero-length arcs"));
    }

    let n = segs.len();
    let mut k_in: Option<usize> = None;
    let mut k_out: Option<usize> = None;
    let mut transitions = 0usize;
    for k in 0..n {
        let nx = (k + 1) % n;
        match (segs[k].inside, segs[nx].inside) {
            (true, false) => {
                transitions += 1;
                k_out = Some(k);
            }
            (false, true) => {
                transitions += 1;
                k_in = Some(nx);
            }
            _ => {}
        }
    }
    if transitions == 0 {
        return Ok(if segs[0].inside { ClipOutcome::Unchanged } else { ClipOutcome::Gone });
    }
    if transitions != 2 {
        return Err(Error::contract(format!(
            "equal-radius clip produced {transitions} boundary crossings (expected 2); \
             generator separation violated"
        )));
    }
    let (k_in, k_out) = (k_in.unwrap(), k_out.unwrap());
    let z_in = segs[k_in].s;
    let z_out = segs[(k_out + 1) % n].s;

    let mut out_arcs: Vec<CircleArc> = Vec::with_capacity(n + 1);
    let mut out_owners: Vec<u8> = Vec::with_capacity(n + 1);
    let mut k = k_in;
    loop {
        let seg = &segs[k];
        debug_assert!(seg.inside);
        // Merge contiguous pieces of the same source arc.
        if let Some(last) = out_arcs.last_mut() {
            if last.center == seg.center && last.end == seg.s {
                last.end = seg.e;
            } else {
                out_arcs.push(CircleArc { center: seg.center, start: seg.s, end: seg.e });
                out_owners.push(seg.owner);
            }
        } else {
            out_arcs.push(CircleArc { center: seg.center, start: seg.s, end: seg.e });
            out_owners.push(seg.owner);
        }
        if k == k_out {
            break;
        }
        k = (k + 1) % n;
    }
    out_arcs.push(CircleArc { center: q, start: z_out, end: z_in });
    out_owners.push(q_owner);

    let live: Vec<usize> =
        (0..out_arcs.len()).filter(|&i| !out_arcs[i].is_degenerate(tol)).collect();
    if live.len() < 2 {
        return Ok(ClipOutcome::Collapsed(z_in));
    }
    if live.len() < out_arcs.len() {
        let arcs2: Vec<CircleArc> = live.iter().map(|&i| out_arcs[i]).collect();
        let owners2: Vec<u8> = live.iter().map(|&i| out_owners[i]).collect();
        return Ok(ClipOutcome::Region(arcs2, owners2));
    }
    Ok(ClipOutcome::Region(out_arcs, out_owners))
}

// Rotate arcs so the lexicographically smallest center comes first.
fn canonicalize(arcs: &mut Vec<CircleArc>, owners: &mut Vec<u8>) {
    if arcs.len() <= 1 {
        return;
    }
    let mut best = 0;
    for k in 1..arcs.len() {
        if arcs[k].center.lex_cmp(arcs[best].center) == Ordering::Less {
            best = k;
        }
    }
    arcs.rotate_left(best);
    owners.rotate_left(best);
}

fn region_witness(arcs: &[CircleArc]) -> Point {
    // Centroid of the vertices of a convex region lies inside it (chord
    // midpoint for two vertices).
    let mut acc = Point::new(0.0, 0.0);
    for a in arcs {
        acc = acc + a.start;
    }
    acc * (1.0 / arcs.len() as f64)
}

fn finish_region(mut arcs: Vec<CircleArc>, mut owners: Vec<u8>, r: f64, tol: Tolerance) -> ArcChain {
    canonicalize(&mut arcs, &mut owners);
    let witness =
        if arcs.len() == 1 { arcs[0].center } else { region_witness(&arcs) };
    ArcChain { r, tol, kind: ChainKind::Region, arcs, witness }
}

/// Clip `chain` by the congruent disk centered at `q`.
pub(crate) fn chain_clip_disk(chain: &ArcChain, q: Point) -> Result<ArcChain, Error> {
    let tol = chain.tol;
    match chain.kind {
        ChainKind::Empty => Ok(chain.clone()),
        ChainKind::Plane => Ok(ArcChain::full_circle(q, chain.r, tol)),
        ChainKind::Point => {
            let p = chain.point();
            if p.dist(q) <= chain.r + tol.slack(chain.r) {
                Ok(chain.clone())
            } else {
                Ok(ArcChain::empty(chain.r, tol, p))
            }
        }
        ChainKind::Region => {
            let owners = vec![0u8; chain.arcs.len()];
            match clip_arcs(&chain.arcs, &owners, chain.r, &tol, q, 0)? {
                ClipOutcome::Unchanged => Ok(chain.clone()),
                ClipOutcome::Gone => Ok(ArcChain::empty(chain.r, tol, chain.witness)),
                ClipOutcome::Collapsed(p) => Ok(ArcChain::single_point(p, q, chain.r, tol)),
                ClipOutcome::Region(arcs, ow) => Ok(finish_region(arcs, ow, chain.r, tol)),
            }
        }
    }
}

/// Region intersection of two chains built at the same radius.
pub(crate) fn merge_chains(a: &ArcChain, b: &ArcChain) -> Result<ArcChain, Error> {
    debug_assert!((a.r - b.r).abs() <= a.tol.slack(a.r));
    match (a.kind, b.kind) {
        (ChainKind::Empty, _) => Ok(a.clone()),
        (_, ChainKind::Empty) => Ok(b.clone()),
        (ChainKind::Plane, _) => Ok(b.clone()),
        (_, ChainKind::Plane) => Ok(a.clone()),
        (ChainKind::Point, _) => {
            if b.contains(a.point()) {
                Ok(a.clone())
            } else {
                Ok(ArcChain::empty(a.r, a.tol, a.point()))
            }
        }
        (_, ChainKind::Point) => {
            if a.contains(b.point()) {
                Ok(b.clone())
            } else {
                Ok(ArcChain::empty(a.r, a.tol, b.point()))
            }
        }
        (ChainKind::Region, ChainKind::Region) => {
            // Fold the smaller generator list into the larger chain.
            let (base, extra) =
                if a.arcs.len() >= b.arcs.len() { (a, b) } else { (b, a) };
            let mut cur = base.clone();
            for c in extra.centers().collect::<Vec<_>>() {
                cur = chain_clip_disk(&cur, c)?;
                if cur.kind == ChainKind::Empty {
                    break;
                }
            }
            Ok(cur)
        }
    }
}

// Strictly convex hull, counterclockwise, collinear points dropped.
pub(crate) fn convex_hull(pts: &[Point]) -> Vec<Point> {
    let mut p: Vec<Point> = pts.to_vec();
    p.sort_by(|a, b| a.lex_cmp(*b));
    p.dedup();
    let n = p.len();
    if n <= 2 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::with_capacity(n);
    for &q in &p {
        while lower.len() >= 2
            && orient(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0
        {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::with_capacity(n);
    for &q in p.iter().rev() {
        while upper.len() >= 2
            && orient(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0
        {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Boundary of the radius-`r` disk intersection of `x`.
///
/// Kind is gated by the smallest enclosing disk: empty when its radius
/// exceeds `r` beyond the tolerance band, a single point within the band,
/// otherwise a region. The empty generator set yields the whole-plane marker.
pub fn intersection_hull(x: &[Point], r: f64) -> Result<ArcChain, Error> {
    if !(r > 0.0) {
        return Err(Error::invalid("intersection_hull requires r > 0"));
    }
    for (i, p) in x.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    let tol = Tolerance::for_points(x);
    Ok(intersection_hull_tol(x, r, &tol))
}

pub(crate) fn intersection_hull_tol(x: &[Point], r: f64, tol: &Tolerance) -> ArcChain {
    if x.is_empty() {
        return ArcChain::plane(r, *tol);
    }
    let m = med(x, tol);
    let band = tol.band();
    if m.radius() > r + band {
        return ArcChain::empty(r, *tol, m.center());
    }
    if m.radius() > r - band {
        let gen = m
            .support
            .iter()
            .copied()
            .min_by(|a, b| a.lex_cmp(*b))
            .unwrap_or(m.center());
        return ArcChain::single_point(m.center(), gen, r, *tol);
    }
    let hull = convex_hull(x);
    let mut chain = ArcChain::full_circle(hull[0], r, *tol);
    for &p in &hull[1..] {
        chain = match chain_clip_disk(&chain, p) {
            Ok(c) => c,
            Err(_) => return ArcChain::empty(r, *tol, m.center()),
        };
        if chain.kind == ChainKind::Empty {
            // Numerically possible only at the band edge; keep the verdict.
            return chain;
        }
    }
    if chain.kind == ChainKind::Region {
        // The enclosing-disk center is strictly inside every generator disk,
        // which makes it the most robust witness available.
        chain.witness = m.center();
    }
    chain
}

/// Boundary of the radius-`r` circular hull of `x` (the intersection of all
/// radius-`r` disks containing `x`).
///
/// Empty when `r` is smaller than the enclosing radius of `x`. Vertices of
/// the result are the arc centers of `intersection_hull(x, r)` and vice
/// versa; at the diametral radius the hull degenerates to the full disk
/// boundary through the support points.
pub fn circular_hull(x: &[Point], r: f64) -> Result<ArcChain, Error> {
    if !(r > 0.0) {
        return Err(Error::invalid("circular_hull requires r > 0"));
    }
    for (i, p) in x.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    let tol = Tolerance::for_points(x);
    if x.is_empty() {
        return Ok(ArcChain::empty(r, tol, Point::new(0.0, 0.0)));
    }
    let m = med(x, &tol);
    if m.radius() > r + tol.band() {
        return Ok(ArcChain::empty(r, tol, m.center()));
    }
    let distinct = {
        let mut d: Vec<Point> = x.to_vec();
        d.sort_by(|a, b| a.lex_cmp(*b));
        d.dedup_by(|a, b| tol.same_point(*a, *b));
        d
    };
    if distinct.len() == 1 {
        return Ok(ArcChain::single_point(distinct[0], distinct[0], r, tol));
    }
    let inner = intersection_hull_tol(x, r, &tol);
    match inner.kind {
        ChainKind::Empty => Ok(ArcChain::empty(r, tol, m.center())),
        // r equals the enclosing radius: the hull is the one covering disk.
        ChainKind::Point => Ok(ArcChain::full_circle(inner.point(), r, tol)),
        ChainKind::Region => {
            let verts = if inner.is_full_circle() {
                vec![inner.arcs[0].center]
            } else {
                inner.vertices()
            };
            if verts.len() == 1 {
                return Ok(ArcChain::full_circle(verts[0], r, tol));
            }
            Ok(intersection_hull_tol(&verts, r, &tol))
        }
        ChainKind::Plane => unreachable!("nonempty x"),
    }
}

/// Outcome of intersecting two chains whose generator sets are separated by
/// a line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SepResult {
    Disjoint,
    FirstInsideSecond,
    SecondInsideFirst,
    /// Proper boundary crossing at the two points; walking the first chain
    /// counterclockwise from `s` to `e` traverses exactly the part of its
    /// boundary that survives on the intersection.
    Crossing { s: Point, e: Point },
}

/// Trichotomy of Region/degenerate chain intersection for line-separated
/// generator sets: disjoint, one inside the other, or a proper crossing with
/// its two boundary intersection points.
///
/// The crossing points are found by merging the regions with ownership tags:
/// the surviving boundary alternates between first-owned and second-owned
/// runs exactly once each, and the two transition vertices are the
/// crossings. More than two transitions means the separation precondition
/// was violated and reports a contract error.
pub fn separated_intersect(a: &ArcChain, b: &ArcChain) -> Result<SepResult, Error> {
    match (a.kind, b.kind) {
        (ChainKind::Empty, _) | (_, ChainKind::Empty) => Ok(SepResult::Disjoint),
        (ChainKind::Plane, _) => Ok(SepResult::SecondInsideFirst),
        (_, ChainKind::Plane) => Ok(SepResult::FirstInsideSecond),
        (ChainKind::Point, _) => {
            if b.contains(a.point()) {
                Ok(SepResult::FirstInsideSecond)
            } else {
                Ok(SepResult::Disjoint)
            }
        }
        (_, ChainKind::Point) => {
            if a.contains(b.point()) {
                Ok(SepResult::SecondInsideFirst)
            } else {
                Ok(SepResult::Disjoint)
            }
        }
        (ChainKind::Region, ChainKind::Region) => {
            #[cfg(debug_assertions)]
            {
                let ca: Vec<Point> = a.centers().collect();
                let cb: Vec<Point> = b.centers().collect();
                debug_assert!(
                    weakly_separable(&ca, &cb, &a.tol),
                    "separated_intersect precondition: generators not line-separable"
                );
            }
            let tol = a.tol;
            let mut arcs = a.arcs.clone();
            let mut owners = vec![0u8; arcs.len()];
            for c in b.centers().collect::<Vec<_>>() {
                match clip_arcs(&arcs, &owners, a.r, &tol, c, 1)? {
                    ClipOutcome::Unchanged => {}
                    ClipOutcome::Gone => return Ok(SepResult::Disjoint),
                    ClipOutcome::Collapsed(p) => return Ok(SepResult::Crossing { s: p, e: p }),
                    ClipOutcome::Region(na, no) => {
                        arcs = na;
                        owners = no;
                    }
                }
            }
            let n = arcs.len();
            if owners.iter().all(|&o| o == 0) {
                return Ok(SepResult::FirstInsideSecond);
            }
            if owners.iter().all(|&o| o == 1) {
                return Ok(SepResult::SecondInsideFirst);
            }
            let mut s = None;
            let mut e = None;
            let mut transitions = 0;
            for k in 0..n {
                let nx = (k + 1) % n;
                match (owners[k], owners[nx]) {
                    (1, 0) => {
                        transitions += 1;
                        s = Some(arcs[nx].start);
                    }
                    (0, 1) => {
                        transitions += 1;
                        e = Some(arcs[nx].start);
                    }
                    _ => {}
                }
            }
            if transitions != 2 {
                return Err(Error::contract(format!(
                    "separated_intersect saw {transitions} ownership transitions; \
                     generator separation violated"
                )));
            }
            Ok(SepResult::Crossing { s: s.unwrap(), e: e.unwrap() })
        }
    }
}

// Weak line separability of point sets (touching allowed), by the separating
// axis test over both hulls' edge normals. Debug-only helper.
#[cfg(debug_assertions)]
fn weakly_separable(a: &[Point], b: &[Point], tol: &Tolerance) -> bool {
    if a.is_empty() || b.is_empty() {
        return true;
    }
    let ha = convex_hull(a);
    let hb = convex_hull(b);
    let eps = tol.band();
    let mut axes: Vec<Point> = Vec::new();
    for h in [&ha, &hb] {
        match h.len() {
            1 => {}
            2 => axes.push((h[1] - h[0]).perp()),
            _ => {
                for k in 0..h.len() {
                    axes.push((h[(k + 1) % h.len()] - h[k]).perp());
                }
            }
        }
    }
    if ha.len() == 1 && hb.len() == 1 {
        return true;
    }
    // Also the direction joining the two hulls, which separates when both
    // are low-dimensional.
    axes.push(hb[0] - ha[0]);
    for axis in axes {
        if axis.norm() <= eps {
            continue;
        }
        let amax = a.iter().map(|p| p.dot(axis)).fold(f64::NEG_INFINITY, f64::max);
        let bmin = b.iter().map(|p| p.dot(axis)).fold(f64::INFINITY, f64::min);
        let amin = a.iter().map(|p| p.dot(axis)).fold(f64::INFINITY, f64::min);
        let bmax = b.iter().map(|p| p.dot(axis)).fold(f64::NEG_INFINITY, f64::max);
        let scale = axis.norm();
        if amax <= bmin + eps * scale || bmax <= amin + eps * scale {
            return true;
        }
    }
    false
}

/// A contiguous piece of one chain's boundary surviving some intersection.
///
/// `Span { s, e }` is the counterclockwise run from `s` to `e` on the owner
/// chain; `Full` means the whole boundary survives, `Empty` none of it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PartExtent {
    Full,
    Empty,
    Span { s: Point, e: Point },
}

/// A boundary part tagged with the identifier of the chain it lives on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPart {
    pub owner: usize,
    pub extent: PartExtent,
}

impl BoundaryPart {
    pub fn full(owner: usize) -> Self {
        BoundaryPart { owner, extent: PartExtent::Full }
    }

    pub fn span(owner: usize, s: Point, e: Point) -> Self {
        BoundaryPart { owner, extent: PartExtent::Span { s, e } }
    }
}

/// Part of the first chain's boundary surviving on the intersection, from a
/// `separated_intersect` outcome.
pub fn part_on_first(sep: &SepResult) -> PartExtent {
    match sep {
        SepResult::Disjoint => PartExtent::Empty,
        SepResult::FirstInsideSecond => PartExtent::Full,
        SepResult::SecondInsideFirst => PartExtent::Empty,
        SepResult::Crossing { s, e } => PartExtent::Span { s: *s, e: *e },
    }
}

/// Part of the second chain's boundary surviving on the intersection.
pub fn part_on_second(sep: &SepResult) -> PartExtent {
    match sep {
        SepResult::Disjoint => PartExtent::Empty,
        SepResult::FirstInsideSecond => PartExtent::Empty,
        SepResult::SecondInsideFirst => PartExtent::Full,
        // The complementary run, shared endpoints in swapped roles.
        SepResult::Crossing { s, e } => PartExtent::Span { s: *e, e: *s },
    }
}

#[derive(Clone, Copy, Debug)]
struct DirSpan {
    s_dir: Point,
    e_dir: Point,
    s_pt: Point,
    e_pt: Point,
}

fn dir_in_span(d: Point, sp: &DirSpan, eps: f64) -> bool {
    in_ccw_sweep(sp.s_dir, sp.e_dir, d, eps)
}

// Intersection of two circular direction spans: at most two pieces, whose
// endpoints are drawn from the inputs' endpoints. A piece can only begin at
// the start of one span (that start lying inside the other span), and it
// runs counterclockwise to whichever of the two ends comes first.
fn span_intersect(c: &DirSpan, n: &DirSpan, eps: f64) -> SmallVec<[DirSpan; 2]> {
    let mut out: SmallVec<[DirSpan; 2]> = SmallVec::new();
    for (me, other) in [(c, n), (n, c)] {
        if !dir_in_span(me.s_dir, other, eps) {
            continue;
        }
        if out
            .iter()
            .any(|x| x.s_dir.cross(me.s_dir) == 0.0 && x.s_dir.dot(me.s_dir) > 0.0)
        {
            continue; // coincident starts produce one piece, not two
        }
        // x in [s, y] counterclockwise means x is reached no later than y.
        let (e_dir, e_pt) = if in_ccw_sweep(me.s_dir, me.e_dir, other.e_dir, eps) {
            (other.e_dir, other.e_pt)
        } else {
            (me.e_dir, me.e_pt)
        };
        out.push(DirSpan { s_dir: me.s_dir, s_pt: me.s_pt, e_dir, e_pt });
    }
    out
}

/// Connected components of the boundary of `x_chain` surviving inside a
/// family of parts, seen as angular intervals about an interior `witness`.
///
/// Each input part must lie on `x_chain`'s boundary (the caller guarantees
/// this; parts typically come from `separated_intersect` against other
/// regions). `Full` parts impose nothing, an `Empty` part empties the
/// result. Returns at most one component per input part; componentization is
/// exact for arbitrary families. Degenerate single-point components are
/// kept. Errors if `witness` is not inside `x_chain`.
pub fn clip_boundary(
    x_chain: &ArcChain,
    x_owner: usize,
    parts: &[BoundaryPart],
    witness: Point,
) -> Result<Vec<BoundaryPart>, Error> {
    if !x_chain.contains(witness) {
        return Err(Error::contract("clip_boundary witness outside the chain"));
    }
    let eps = x_chain.tol.eps_abs * x_chain.r.max(1.0);
    let mut spans: Vec<DirSpan> = Vec::new();
    for p in parts {
        match p.extent {
            PartExtent::Full => {}
            PartExtent::Empty => return Ok(Vec::new()),
            PartExtent::Span { s, e } => {
                spans.push(DirSpan { s_dir: s - witness, e_dir: e - witness, s_pt: s, e_pt: e });
            }
        }
    }
    if spans.is_empty() {
        return Ok(vec![BoundaryPart::full(x_owner)]);
    }
    let mut comps: Vec<DirSpan> = vec![spans[0]];
    for n in &spans[1..] {
        let mut next: Vec<DirSpan> = Vec::new();
        for c in &comps {
            next.extend(span_intersect(c, n, eps));
        }
        comps = next;
        if comps.is_empty() {
            break;
        }
    }
    debug_assert!(comps.len() <= parts.len().max(1));
    Ok(comps
        .into_iter()
        .map(|c| BoundaryPart::span(x_owner, c.s_pt, c.e_pt))
        .collect())
}

/// Cyclic unimodality of the generator ranks along a chain: walking the
/// boundary, the ranks of the arc centers must increase and then decrease at
/// most once (cyclically). Chains over angularly ordered generator runs have
/// this property; the verdict is used as a structural test oracle.
pub fn check_boundary_order(
    chain: &ArcChain,
    rank_of: impl Fn(Point) -> Option<usize>,
) -> bool {
    if chain.kind != ChainKind::Region {
        return true;
    }
    let ranks: Option<Vec<usize>> = chain.arcs.iter().map(|a| rank_of(a.center)).collect();
    let Some(ranks) = ranks else { return false };
    let k = ranks.len();
    if k <= 2 {
        return true;
    }
    let mut changes = 0;
    let mut prev_sign = 0i8;
    for i in 0..k {
        let a = ranks[i];
        let b = ranks[(i + 1) % k];
        let sign = if b > a { 1i8 } else { -1i8 };
        if prev_sign != 0 && sign != prev_sign {
            changes += 1;
        }
        prev_sign = sign;
    }
    // Close the cycle: compare last sign with first computed sign.
    let first_sign = if ranks[1] > ranks[0] { 1i8 } else { -1i8 };
    if prev_sign != first_sign {
        // already counted in the loop via wraparound pair (k-1 -> 0)
    }
    changes <= 2
}
