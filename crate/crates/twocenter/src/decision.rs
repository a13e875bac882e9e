//! The decision procedure: can S be split by two rays from a shared point o
//! into two parts, each coverable by a disk of radius r?
//!
//! The split is enumerated through an (i, j) matrix. With the points
//! translated so o is the origin and classified into the sequence `up`
//! (strictly above the x-axis, counterclockwise) and `lo` (the rest,
//! counterclockwise from the negative x-axis), row i and column j describe
//! the split
//!
//! ```text
//!   side A = up[i+1..n+] ∪ lo[1..j]        side B = the rest
//! ```
//!
//! whose covering radii are `A[i,j]` and `B[i,j]` (smallest enclosing disk
//! of each side). Every split by two rays, one through the closed upper
//! half-plane and one through the closed lower, has this form. The engine
//! finds the smallest row i admitting max(A, B) <= r, using the monotonicity
//! of A and B in both indices: the search space collapses into row groups
//! whose optimal column is bracketed by precomputed breakpoints, and each
//! row costs one largest-feasible-column search plus a single B-side test.
//!
//! Two interchangeable evaluation paths answer the per-row feasibility
//! probes. The structured path composes stored range-tree chains per group
//! (the form the complexity analysis wants); the swept path folds the same
//! regions incrementally from four boundary sweeps and wins on large inputs.
//! Both must produce identical answers and witnesses.

use rayon::prelude::*;

use crate::geom::{med, Point, Tolerance};
use crate::hull::{
    chain_clip_disk, clip_boundary, merge_chains, part_on_first, part_on_second,
    separated_intersect, ArcChain, BoundaryPart, ChainKind, SepResult,
};
use crate::rtree::{build_d_structure, CanonicalTree, DStructure, HullTree};
use crate::Error;

/// Which coordinate axis separates the two cut rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    /// The instance is rotated by -90 degrees ((x, y) -> (y, -x)) so the
    /// y-axis case reuses the x-axis machinery verbatim.
    Y,
}

/// One split problem: o translated to the origin, the point set classified
/// and angularly ordered into the two sides of the separating axis.
///
/// `up` holds the points strictly above the x-axis in counterclockwise
/// order. `lo` holds the rest: points on the negative x-axis first (nearest
/// first), then the strictly-below points counterclockwise, then points on
/// the positive x-axis (nearest first). On-axis points sit at the ends of
/// `lo` so that prefixes of `lo` always extend counterclockwise from the
/// negative x-axis.
#[derive(Debug)]
pub struct SplitInstance {
    pub o: Point,
    pub axis: Axis,
    pub up: Vec<Point>,
    pub lo: Vec<Point>,
    /// Index into the original input for each `up` entry.
    pub up_src: Vec<usize>,
    /// Index into the original input for each `lo` entry.
    pub lo_src: Vec<usize>,
    pub tol: Tolerance,
    up_hull: HullTree,
    lo_hull: HullTree,
}

impl SplitInstance {
    /// Classify and order `s` about `o` for the given axis. The stored
    /// coordinates are translated (and for [`Axis::Y`] rotated); the `*_src`
    /// maps recover original indices.
    pub fn build(s: &[Point], o: Point, axis: Axis) -> Result<SplitInstance, Error> {
        if !o.is_finite() {
            return Err(Error::NonFinite(usize::MAX));
        }
        let mut all: Vec<Point> = s.to_vec();
        all.push(o);
        let tol = Tolerance::for_points(&all);

        let mut up: Vec<(Point, usize)> = Vec::new();
        let mut lo: Vec<(Point, usize)> = Vec::new();
        for (idx, p) in s.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite(idx));
            }
            let t = *p - o;
            let d = match axis {
                Axis::X => t,
                Axis::Y => Point::new(t.y, -t.x),
            };
            if d.norm() <= tol.eps_abs {
                return Err(Error::CoincidentWithPivot(idx));
            }
            if d.y > 0.0 {
                up.push((d, idx));
            } else {
                lo.push((d, idx));
            }
        }

        // Both sequences live in an open half-plane (on-axis points are
        // ranked separately below), so the cross product is a total
        // counterclockwise order; collinear ties go nearest first.
        let ccw = |a: &Point, b: &Point| {
            let c = a.cross(*b);
            if c > 0.0 {
                std::cmp::Ordering::Less
            } else if c < 0.0 {
                std::cmp::Ordering::Greater
            } else {
                a.dot(*a).partial_cmp(&b.dot(*b)).unwrap()
            }
        };
        up.sort_by(|(a, sa), (b, sb)| ccw(a, b).then(sa.cmp(sb)));

        // lo ranks: negative x-axis (angle pi), strict lower half, positive
        // x-axis (angle 2*pi).
        let rank = |d: &Point| -> u8 {
            if d.y < 0.0 {
                1
            } else if d.x < 0.0 {
                0
            } else {
                2
            }
        };
        lo.sort_by(|(a, sa), (b, sb)| {
            let (ra, rb) = (rank(a), rank(b));
            ra.cmp(&rb)
                .then_with(|| {
                    if ra == 1 {
                        ccw(a, b)
                    } else {
                        a.dot(*a).partial_cmp(&b.dot(*b)).unwrap()
                    }
                })
                .then(sa.cmp(sb))
        });

        let (up, up_src): (Vec<Point>, Vec<usize>) = up.into_iter().unzip();
        let (lo, lo_src): (Vec<Point>, Vec<usize>) = lo.into_iter().unzip();
        let up_hull = HullTree::build(&up);
        let lo_hull = HullTree::build(&lo);
        Ok(SplitInstance { o, axis, up, lo, up_src, lo_src, tol, up_hull, lo_hull })
    }

    pub fn n_plus(&self) -> usize {
        self.up.len()
    }

    pub fn n_minus(&self) -> usize {
        self.lo.len()
    }

    /// Original-input index sets of the two sides of split (i, j):
    /// side A = up[i+1..n+] ∪ lo[1..j], side B = the rest.
    pub fn side_src_indices(&self, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        assert!(i <= self.up.len() && j <= self.lo.len());
        let mut a: Vec<usize> = self.up_src[i..].to_vec();
        a.extend_from_slice(&self.lo_src[..j]);
        let mut b: Vec<usize> = self.up_src[..i].to_vec();
        b.extend_from_slice(&self.lo_src[j..]);
        (a, b)
    }

    // Enclosing-disk radius over gathered canonical hull points; the gather
    // has the same enclosing disk as the raw range union.
    fn probe(&self, up_from: usize, up_to: usize, lo_from: usize, lo_to: usize) -> f64 {
        let mut pts = Vec::new();
        self.up_hull.gather_hull_points(up_from, up_to, &mut pts);
        self.lo_hull.gather_hull_points(lo_from, lo_to, &mut pts);
        med(&pts, &self.tol).radius()
    }

    fn probe_with_pivot(&self, up_from: usize, up_to: usize, lo_from: usize, lo_to: usize) -> f64 {
        let mut pts = vec![Point::new(0.0, 0.0)];
        self.up_hull.gather_hull_points(up_from, up_to, &mut pts);
        self.lo_hull.gather_hull_points(lo_from, lo_to, &mut pts);
        med(&pts, &self.tol).radius()
    }
}

/// Covering radius of side A of split (i, j): the smallest enclosing disk of
/// `up[i+1..n+] ∪ lo[1..j]` (1-based ranges, empty when inverted).
pub fn radius_a(inst: &SplitInstance, i: usize, j: usize) -> f64 {
    assert!(i <= inst.up.len() && j <= inst.lo.len(), "split indices out of range");
    inst.probe(i + 1, inst.up.len(), 1, j)
}

/// Covering radius of side B of split (i, j): mirror of [`radius_a`] over
/// `up[1..i] ∪ lo[j+1..n-]`.
pub fn radius_b(inst: &SplitInstance, i: usize, j: usize) -> f64 {
    assert!(i <= inst.up.len() && j <= inst.lo.len(), "split indices out of range");
    inst.probe(1, i, j + 1, inst.lo.len())
}

/// [`radius_a`] with the pivot joined to the side: the smallest enclosing
/// disk of side A plus the origin. Keeps the same monotone structure, since
/// the extra point is fixed across all splits.
pub fn radius_a_with_pivot(inst: &SplitInstance, i: usize, j: usize) -> f64 {
    assert!(i <= inst.up.len() && j <= inst.lo.len(), "split indices out of range");
    inst.probe_with_pivot(i + 1, inst.up.len(), 1, j)
}

/// [`radius_b`] with the pivot joined to the side.
pub fn radius_b_with_pivot(inst: &SplitInstance, i: usize, j: usize) -> f64 {
    assert!(i <= inst.up.len() && j <= inst.lo.len(), "split indices out of range");
    inst.probe_with_pivot(1, i, j + 1, inst.lo.len())
}

/// On-demand view of the split-radius matrix. Nothing is materialized;
/// every access is an enclosing-disk probe.
pub struct MatrixView<'a> {
    inst: &'a SplitInstance,
}

impl<'a> MatrixView<'a> {
    pub fn new(inst: &'a SplitInstance) -> MatrixView<'a> {
        MatrixView { inst }
    }

    pub fn n_plus(&self) -> usize {
        self.inst.up.len()
    }

    pub fn n_minus(&self) -> usize {
        self.inst.lo.len()
    }

    pub fn a(&self, i: usize, j: usize) -> f64 {
        radius_a(self.inst, i, j)
    }

    pub fn b(&self, i: usize, j: usize) -> f64 {
        radius_b(self.inst, i, j)
    }

    /// max(A, B): the covering radius of split (i, j).
    pub fn r(&self, i: usize, j: usize) -> f64 {
        self.a(i, j).max(self.b(i, j))
    }
}

/// A contiguous block of matrix rows sharing one column window.
///
/// Rows `a..=b` of the matrix are scanned against columns `jl..=jh` only;
/// the table construction guarantees the per-row optimum lies inside the
/// window.
#[derive(Clone, Copy, Debug)]
pub struct Group {
    pub a: usize,
    pub b: usize,
    pub jl: usize,
    pub jh: usize,
}

/// Radius-independent bracketing of the (i, j) search space.
///
/// `j_breaks[t]` are the column breakpoints; `i_breaks[t]` is the largest
/// row i with `A[i, j_t] >= B[i, j_t]` (or -1). Rows between consecutive
/// i-breakpoints have their column optimum inside the corresponding column
/// interval; rows outside are pinned to a sentinel window at column 0 or
/// n-. Row blocks are chunked to width <= g.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub g: usize,
    /// Number of column intervals.
    pub m: usize,
    /// m + 1 entries, 0 = j_0 < ... < j_m = n-.
    pub j_breaks: Vec<usize>,
    /// m + 1 entries, nondecreasing, in [-1, n+].
    pub i_breaks: Vec<i64>,
    pub groups: Vec<Group>,
}

/// Build the group table for `inst` at group width `g`.
///
/// Each i-breakpoint is a rightmost-true binary search on the predicate
/// `A[i, j_t] >= B[i, j_t]`, valid because A - B is nonincreasing in i for
/// fixed j; searches reuse the previous breakpoint as a lower bound since
/// the breakpoints are nondecreasing in t.
pub fn build_group_table(inst: &SplitInstance, g: usize) -> GroupTable {
    let np = inst.up.len();
    let nm = inst.lo.len();
    let g = g.max(1);

    let m = (nm / g).max(1);
    let step = (nm / m).max(1);
    let mut j_breaks: Vec<usize> = (0..m).map(|t| t * step).collect();
    j_breaks.push(nm);

    let pred = |i: usize, jt: usize| radius_a(inst, i, jt) >= radius_b(inst, i, jt);
    let mut i_breaks: Vec<i64> = Vec::with_capacity(m + 1);
    let mut known_true: i64 = -1;
    for &jt in &j_breaks {
        // A - B is also nondecreasing in j, so previous breakpoints stay true.
        let mut lo = known_true;
        let mut hi = np as i64 + 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if pred(mid as usize, jt) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        i_breaks.push(lo);
        known_true = lo;
    }

    let mut groups: Vec<Group> = Vec::new();
    let mut chunk = |row_lo: usize, row_hi: usize, jl: usize, jh: usize| {
        let mut a = row_lo;
        while a <= row_hi {
            let b = (a + g - 1).min(row_hi);
            groups.push(Group { a, b, jl, jh });
            a = b + 1;
        }
    };
    // Rows where A >= B already at column 0: the row optimum is column 0.
    if i_breaks[0] >= 0 {
        chunk(0, i_breaks[0] as usize, 0, 0);
    }
    for t in 0..m {
        if i_breaks[t + 1] > i_breaks[t] {
            chunk(
                (i_breaks[t] + 1) as usize,
                i_breaks[t + 1] as usize,
                j_breaks[t],
                j_breaks[t + 1],
            );
        }
    }
    // Rows where A < B even at column n-: the row optimum is column n-.
    if i_breaks[m] < np as i64 {
        chunk((i_breaks[m] + 1) as usize, np, nm, nm);
    }

    GroupTable { g, m, j_breaks, i_breaks, groups }
}

/// Per-group structures for the structured query path, all fixed at one
/// decision radius.
///
/// Queries against the group concern the region of `up[x..n+] ∪ lo[1..y]`
/// for x in `[a+1, b+1]`, y in `[jl, jh]`. The suffix of `up` splits at
/// `x_hi = b + 1` into a variable head `up[x..x_hi]` (answered by the local
/// tree) and the fixed tail `up[x_hi..n+]` (the stored chain `c2`); the
/// prefix of `lo` splits at `jl` into the fixed `c3 = I(lo[1..jl])` and a
/// variable tail over the local tree. Separations of every local node
/// against the two fixed chains are precomputed in the four part structures.
pub struct GroupContext {
    pub group: Group,
    x_lo: usize,
    x_hi: usize,
    up_base: usize,
    up_top: usize,
    lo_base: usize,
    pub c2: ArcChain,
    pub c3: ArcChain,
    pub sep23: SepResult,
    pub up_local: CanonicalTree,
    pub lo_local: CanonicalTree,
    pub d_up_c2: DStructure,
    pub d_up_c3: DStructure,
    pub d_lo_c2: DStructure,
    pub d_lo_c3: DStructure,
}

fn build_context(
    inst: &SplitInstance,
    up_tree: &CanonicalTree,
    lo_tree: &CanonicalTree,
    gr: Group,
    r: f64,
) -> Result<GroupContext, Error> {
    let np = inst.up.len();
    let x_lo = gr.a + 1;
    let x_hi = gr.b + 1;
    let up_top = x_hi.min(np);
    let lo_base = gr.jl.max(1);

    let up_slice: &[Point] =
        if x_lo <= up_top { &inst.up[x_lo - 1..up_top] } else { &[] };
    let lo_slice: &[Point] =
        if lo_base <= gr.jh { &inst.lo[lo_base - 1..gr.jh] } else { &[] };

    let c2 = up_tree.range_intersection(x_hi, np)?;
    let c3 = lo_tree.range_intersection(1, gr.jl)?;
    let sep23 = separated_intersect(&c2, &c3)?;
    let up_local = CanonicalTree::build(up_slice, r, &inst.tol)?;
    let lo_local = CanonicalTree::build(lo_slice, r, &inst.tol)?;
    let d_up_c2 = build_d_structure(&up_local, &c2)?;
    let d_up_c3 = build_d_structure(&up_local, &c3)?;
    let d_lo_c2 = build_d_structure(&lo_local, &c2)?;
    let d_lo_c3 = build_d_structure(&lo_local, &c3)?;
    Ok(GroupContext {
        group: gr,
        x_lo,
        x_hi,
        up_base: x_lo,
        up_top,
        lo_base,
        c2,
        c3,
        sep23,
        up_local,
        lo_local,
        d_up_c2,
        d_up_c3,
        d_lo_c2,
        d_lo_c3,
    })
}

struct Prepared {
    up_tree: CanonicalTree,
    lo_tree: CanonicalTree,
    ctxs: Vec<GroupContext>,
}

fn prepare(inst: &SplitInstance, table: &GroupTable, r: f64) -> Result<Prepared, Error> {
    let up_tree = CanonicalTree::build(&inst.up, r, &inst.tol)?;
    let lo_tree = CanonicalTree::build(&inst.lo, r, &inst.tol)?;
    let ctxs: Vec<GroupContext> = table
        .groups
        .par_iter()
        .map(|&gr| build_context(inst, &up_tree, &lo_tree, gr, r))
        .collect::<Result<_, _>>()?;
    Ok(Prepared { up_tree, lo_tree, ctxs })
}

/// Build the per-group query structures for one decision radius. Groups are
/// independent and built in parallel.
pub fn group_preprocess(
    inst: &SplitInstance,
    table: &GroupTable,
    r: f64,
) -> Result<Vec<GroupContext>, Error> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::invalid("decision radius must be positive and finite"));
    }
    Ok(prepare(inst, table, r)?.ctxs)
}

// A query source: one region chain plus where its pairwise separations with
// the fixed chains are stored.
#[derive(Clone, Copy, PartialEq)]
enum SrcTag {
    UpNode(usize),
    LoNode(usize),
    C2,
    C3,
}

/// Is the region of `up[x..n+] ∪ lo[1..y]` empty at the context's radius?
///
/// Equivalently, with matrix row i = x - 1: is `A[x-1, y] > r`? The region
/// is assembled from the canonical nodes of the two variable ranges plus the
/// fixed chains; each pair either separates (empty) or contributes boundary
/// parts, and the region is nonempty exactly when some source keeps a
/// boundary component (degenerate single-point components count).
pub fn emptiness_query(ctx: &GroupContext, x: usize, y: usize) -> Result<bool, Error> {
    if x < ctx.x_lo || x > ctx.x_hi || y < ctx.group.jl || y > ctx.group.jh {
        return Err(Error::contract("emptiness query outside the group's index window"));
    }

    let mut chains: Vec<&ArcChain> = Vec::new();
    let mut tags: Vec<SrcTag> = Vec::new();
    if x <= ctx.up_top {
        for idx in ctx.up_local.canonical_nodes(x - ctx.up_base + 1, ctx.up_top - ctx.up_base + 1)
        {
            chains.push(&ctx.up_local.node(idx).chain);
            tags.push(SrcTag::UpNode(idx));
        }
    }
    if y >= ctx.lo_base {
        for idx in ctx.lo_local.canonical_nodes(1, y - ctx.lo_base + 1) {
            chains.push(&ctx.lo_local.node(idx).chain);
            tags.push(SrcTag::LoNode(idx));
        }
    }
    if ctx.c2.kind != ChainKind::Plane {
        chains.push(&ctx.c2);
        tags.push(SrcTag::C2);
    }
    if ctx.c3.kind != ChainKind::Plane {
        chains.push(&ctx.c3);
        tags.push(SrcTag::C3);
    }

    // No constraints at all: the whole plane.
    if chains.is_empty() {
        return Ok(false);
    }
    if chains.iter().any(|c| c.kind == ChainKind::Empty) {
        return Ok(true);
    }
    // A point source pins the answer to one membership test per other source.
    if let Some(k) = chains.iter().position(|c| c.kind == ChainKind::Point) {
        let p = chains[k].point();
        return Ok(!chains.iter().enumerate().all(|(v, c)| v == k || c.contains(p)));
    }
    let k = chains.len();
    if k == 1 {
        return Ok(false);
    }

    // Pairwise separations, oriented first = lower source index. Node-vs-
    // fixed-chain pairs come from the stored part structures; node-vs-node
    // pairs are computed on demand per query.
    let mut seps: Vec<Option<SepResult>> = vec![None; k * k];
    for w in 0..k {
        for v in w + 1..k {
            let sep = match (tags[w], tags[v]) {
                (SrcTag::UpNode(n), SrcTag::C2) => ctx.d_up_c2.parts[n].sep,
                (SrcTag::UpNode(n), SrcTag::C3) => ctx.d_up_c3.parts[n].sep,
                (SrcTag::LoNode(n), SrcTag::C2) => ctx.d_lo_c2.parts[n].sep,
                (SrcTag::LoNode(n), SrcTag::C3) => ctx.d_lo_c3.parts[n].sep,
                (SrcTag::C2, SrcTag::C3) => ctx.sep23,
                _ => separated_intersect(chains[w], chains[v])?,
            };
            if sep == SepResult::Disjoint {
                return Ok(true);
            }
            seps[w * k + v] = Some(sep);
        }
    }

    // Nonempty iff some source's boundary survives inside all the others.
    for w in 0..k {
        let mut parts: Vec<BoundaryPart> = Vec::with_capacity(k - 1);
        for v in 0..k {
            if v == w {
                continue;
            }
            let extent = if w < v {
                part_on_first(seps[w * k + v].as_ref().unwrap())
            } else {
                part_on_second(seps[v * k + w].as_ref().unwrap())
            };
            parts.push(BoundaryPart { owner: v, extent });
        }
        let comps = clip_boundary(chains[w], w, &parts, chains[w].witness)?;
        if !comps.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which evaluation path [`DecideEngine`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecidePath {
    /// Structured below [`SWEPT_MIN`] points, swept at or above.
    Auto,
    /// Per-group range-tree composition ([`group_preprocess`] +
    /// [`emptiness_query`]).
    Structured,
    /// Incremental boundary sweeps; same answers, better constants on large
    /// inputs.
    Swept,
}

/// Point count at which `Auto` switches to the swept path.
pub const SWEPT_MIN: usize = 2048;

/// Reusable decision runner: owns the radius-independent group table so
/// repeated `decide` calls at different radii share the bracketing.
pub struct DecideEngine<'a> {
    inst: &'a SplitInstance,
    table: GroupTable,
    path: DecidePath,
}

impl<'a> DecideEngine<'a> {
    pub fn new(inst: &'a SplitInstance, g: usize) -> DecideEngine<'a> {
        let table = build_group_table(inst, g);
        DecideEngine { inst, table, path: DecidePath::Auto }
    }

    pub fn with_path(mut self, path: DecidePath) -> DecideEngine<'a> {
        self.path = path;
        self
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// Smallest row i with a feasible split at radius r, paired with the
    /// largest column keeping side A coverable in that row; `None` when no
    /// split works. The witness does not depend on the group width or the
    /// evaluation path. Deterministic: parallel scans keep the first hit in
    /// group order.
    pub fn decide(&self, r: f64) -> Result<Option<(usize, usize)>, Error> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::invalid("decision radius must be positive and finite"));
        }
        let swept = match self.path {
            DecidePath::Structured => false,
            DecidePath::Swept => true,
            DecidePath::Auto => self.inst.up.len() + self.inst.lo.len() >= SWEPT_MIN,
        };
        let hit = if swept {
            self.decide_swept(r)?
        } else {
            self.decide_structured(r)?
        };
        // The scans cap the column at the group window; push it to the
        // row-global maximum so the witness is window-independent. Side B
        // only shrinks as the column grows, so feasibility is kept.
        Ok(hit.map(|(i, j)| {
            let nm = self.inst.lo.len();
            let mut lo = j;
            let mut hi = nm + 1;
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if radius_a(self.inst, i, mid) <= r {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (i, lo)
        }))
    }

    fn decide_structured(&self, r: f64) -> Result<Option<(usize, usize)>, Error> {
        let prep = prepare(self.inst, &self.table, r)?;
        let hit = prep
            .ctxs
            .par_iter()
            .find_map_first(|ctx| {
                scan_group_structured(ctx, &prep, self.inst.lo.len()).transpose()
            })
            .transpose()?;
        Ok(hit)
    }

    fn decide_swept(&self, r: f64) -> Result<Option<(usize, usize)>, Error> {
        let inst = self.inst;
        let tol = inst.tol;
        let np = inst.up.len();
        let nm = inst.lo.len();
        let groups = &self.table.groups;
        let n_groups = groups.len();

        // Four boundary sweeps record, per group, the fixed chains the scan
        // folds against: I(up[b+2..]), I(lo[1..jl]), I(up[1..a]),
        // I(lo[jh+1..]). Group order makes each key sequence monotone.
        let mut suf_up: Vec<Option<ArcChain>> = vec![None; n_groups];
        {
            let mut cur = ArcChain::plane(r, tol);
            let mut gi = n_groups;
            for x in (1..=np + 1).rev() {
                while gi > 0 && groups[gi - 1].b + 1 == x {
                    suf_up[gi - 1] = Some(cur.clone());
                    gi -= 1;
                }
                if x >= 2 {
                    cur = chain_clip_disk(&cur, inst.up[x - 2])?;
                }
            }
            debug_assert_eq!(gi, 0);
        }
        let mut pre_lo: Vec<Option<ArcChain>> = vec![None; n_groups];
        {
            let mut cur = ArcChain::plane(r, tol);
            let mut gi = 0;
            for j in 0..=nm {
                while gi < n_groups && groups[gi].jl == j {
                    pre_lo[gi] = Some(cur.clone());
                    gi += 1;
                }
                if j < nm {
                    cur = chain_clip_disk(&cur, inst.lo[j])?;
                }
            }
            debug_assert_eq!(gi, n_groups);
        }
        let mut pre_up: Vec<Option<ArcChain>> = vec![None; n_groups];
        {
            let mut cur = ArcChain::plane(r, tol);
            let mut gi = 0;
            for i in 0..=np {
                while gi < n_groups && groups[gi].a == i {
                    pre_up[gi] = Some(cur.clone());
                    gi += 1;
                }
                if i < np {
                    cur = chain_clip_disk(&cur, inst.up[i])?;
                }
            }
            debug_assert_eq!(gi, n_groups);
        }
        let mut suf_lo: Vec<Option<ArcChain>> = vec![None; n_groups];
        {
            let mut cur = ArcChain::plane(r, tol);
            let mut gi = n_groups;
            for j in (1..=nm + 1).rev() {
                while gi > 0 && groups[gi - 1].jh + 1 == j {
                    suf_lo[gi - 1] = Some(cur.clone());
                    gi -= 1;
                }
                if j >= 2 {
                    cur = chain_clip_disk(&cur, inst.lo[j - 2])?;
                }
            }
            debug_assert_eq!(gi, 0);
        }

        let hit = (0..n_groups)
            .into_par_iter()
            .find_map_first(|gi| {
                scan_group_swept(
                    inst,
                    groups[gi],
                    suf_up[gi].as_ref().unwrap(),
                    pre_lo[gi].as_ref().unwrap(),
                    pre_up[gi].as_ref().unwrap(),
                    suf_lo[gi].as_ref().unwrap(),
                )
                .transpose()
            })
            .transpose()?;
        Ok(hit)
    }
}

// One group under the structured path: per row, feasibility at the window's
// left edge, largest-feasible-column binary search, single B-side test via
// the global trees.
fn scan_group_structured(
    ctx: &GroupContext,
    prep: &Prepared,
    nm: usize,
) -> Result<Option<(usize, usize)>, Error> {
    for i in ctx.group.a..=ctx.group.b {
        let x = i + 1;
        if emptiness_query(ctx, x, ctx.group.jl)? {
            continue; // A(i, jl) > r, row infeasible
        }
        // Largest feasible column: the predicate "A <= r" is a prefix in j.
        let mut lo = ctx.group.jl;
        let mut hi = ctx.group.jh + 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if !emptiness_query(ctx, x, mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let j = lo;
        let side_b = merge_chains(
            &prep.up_tree.range_intersection(1, i)?,
            &prep.lo_tree.range_intersection(j + 1, nm)?,
        )?;
        if side_b.kind != ChainKind::Empty {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

// One group under the swept path. K(x) = I(up[x..] ∪ lo[1..jl]) chains fill
// once per group from the recorded boundaries; the feasible-column pointer
// only advances across rows because the A-side feasible set grows with i.
fn scan_group_swept(
    inst: &SplitInstance,
    gr: Group,
    suf_up: &ArcChain,
    pre_lo: &ArcChain,
    pre_up: &ArcChain,
    suf_lo: &ArcChain,
) -> Result<Option<(usize, usize)>, Error> {
    let rows = gr.b - gr.a + 1;
    let mut ks: Vec<ArcChain> = Vec::with_capacity(rows);
    ks.push(merge_chains(suf_up, pre_lo)?); // K(b + 1), filled backwards
    for idx in (0..rows - 1).rev() {
        // K(x) gains generator up[x] (1-based x = a + 1 + idx).
        let gen = inst.up[gr.a + idx];
        let prev = ks.last().unwrap();
        ks.push(chain_clip_disk(prev, gen)?);
    }
    ks.reverse();

    let mut u = pre_up.clone(); // I(up[1..i]) for the current row
    let mut jptr = gr.jl;
    for (idx, i) in (gr.a..=gr.b).enumerate() {
        let k = &ks[idx];
        if k.kind != ChainKind::Empty {
            // Rebuild the A-side region at the current pointer, then extend.
            let mut cur = k.clone();
            for j in gr.jl + 1..=jptr {
                cur = chain_clip_disk(&cur, inst.lo[j - 1])?;
            }
            debug_assert_ne!(cur.kind, ChainKind::Empty, "pointer passed an infeasible column");
            while jptr < gr.jh {
                let trial = chain_clip_disk(&cur, inst.lo[jptr])?;
                if trial.kind == ChainKind::Empty {
                    break;
                }
                cur = trial;
                jptr += 1;
            }
            let j = jptr;
            let mut side_b = suf_lo.clone();
            for jj in j + 1..=gr.jh {
                side_b = chain_clip_disk(&side_b, inst.lo[jj - 1])?;
                if side_b.kind == ChainKind::Empty {
                    break;
                }
            }
            if side_b.kind != ChainKind::Empty {
                let merged = merge_chains(&u, &side_b)?;
                if merged.kind != ChainKind::Empty {
                    return Ok(Some((i, j)));
                }
            }
        }
        if i < gr.b {
            u = chain_clip_disk(&u, inst.up[i])?;
        }
    }
    Ok(None)
}

/// Convenience wrapper: one-shot decision at radius r and group width g.
pub fn decide(inst: &SplitInstance, r: f64, g: usize) -> Result<Option<(usize, usize)>, Error> {
    DecideEngine::new(inst, g).decide(r)
}

/// A feasible split found by [`decide_both_axes`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecideWitness {
    pub axis: Axis,
    pub i: usize,
    pub j: usize,
}

/// Run the decision for both separating axes and return the first feasible
/// witness (x-axis preferred), or `None`.
///
/// Complete because any two cut rays bounding an optimal split can be taken
/// through the two overlap corners of the disks, which any shared interior
/// point sees at least a quarter turn apart; such rays always land in
/// opposite closed half-planes of one of the two axes.
pub fn decide_both_axes(
    s: &[Point],
    o: Point,
    r: f64,
    g: usize,
) -> Result<Option<DecideWitness>, Error> {
    for axis in [Axis::X, Axis::Y] {
        let inst = SplitInstance::build(s, o, axis)?;
        if let Some((i, j)) = decide(&inst, r, g)? {
            return Ok(Some(DecideWitness { axis, i, j }));
        }
    }
    Ok(None)
}
