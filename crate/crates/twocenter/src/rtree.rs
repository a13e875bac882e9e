//! Balanced range trees over ordered point sequences.
//!
//! A [`CanonicalTree`] stores, for every node of a perfectly balanced binary
//! tree over the input order, the intersection-hull chain of the node's
//! contiguous range at a fixed radius. Any query range decomposes into
//! O(log n) canonical nodes; the intersection over the range is assembled
//! from the stored chains without ever mutating them. [`HullTree`] is the
//! radius-free sibling that stores per-node convex hulls instead, used for
//! enclosing-disk probes while no radius is fixed yet.
//!
//! Range arguments on the public API are 1-based and inclusive, matching the
//! subscript conventions of the decision module ("S[i..j]"); `i > j` denotes
//! the empty range.

use std::collections::HashMap;
use std::sync::Arc;

use crate::geom::{med, Point, Tolerance};
use crate::hull::{
    clip_boundary, convex_hull, merge_chains, part_on_first, part_on_second,
    separated_intersect, ArcChain, BoundaryPart, ChainKind, CircleArc, PartExtent, SepResult,
};
use crate::Error;

#[derive(Clone, Copy, Debug)]
struct Shape {
    lo: usize, // 0-based inclusive
    hi: usize, // 0-based inclusive
    left: Option<usize>,
    right: Option<usize>,
}

// Perfectly balanced midpoint-split hierarchy; root is node 0, children are
// allocated depth-first. n leaves yield exactly 2n-1 nodes.
fn build_shape(n: usize) -> Vec<Shape> {
    fn alloc(nodes: &mut Vec<Shape>, lo: usize, hi: usize) -> usize {
        let idx = nodes.len();
        nodes.push(Shape { lo, hi, left: None, right: None });
        if lo < hi {
            let mid = (lo + hi) / 2;
            let l = alloc(nodes, lo, mid);
            let r = alloc(nodes, mid + 1, hi);
            nodes[idx].left = Some(l);
            nodes[idx].right = Some(r);
        }
        idx
    }
    let mut nodes = Vec::with_capacity(2 * n.max(1));
    if n > 0 {
        alloc(&mut nodes, 0, n - 1);
    }
    nodes
}

fn canonical_indices(shapes: &[Shape], i0: usize, j0: usize) -> Vec<usize> {
    fn walk(shapes: &[Shape], idx: usize, i0: usize, j0: usize, out: &mut Vec<usize>) {
        let s = &shapes[idx];
        if j0 < s.lo || s.hi < i0 {
            return;
        }
        if i0 <= s.lo && s.hi <= j0 {
            out.push(idx);
            return;
        }
        if let (Some(l), Some(r)) = (s.left, s.right) {
            walk(shapes, l, i0, j0, out);
            walk(shapes, r, i0, j0, out);
        }
    }
    let mut out = Vec::new();
    if !shapes.is_empty() && i0 <= j0 {
        walk(shapes, 0, i0, j0, &mut out);
    }
    out
}

/// One node of a [`CanonicalTree`].
pub struct TreeNode {
    /// 0-based inclusive range bounds into the tree's order.
    pub lo: usize,
    pub hi: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
    /// Intersection hull of the node's range at the build radius. Shared;
    /// never mutated after build.
    pub chain: Arc<ArcChain>,
}

/// Balanced tree with per-node intersection hulls at a fixed radius.
pub struct CanonicalTree {
    pub order: Vec<Point>,
    pub r: f64,
    pub tol: Tolerance,
    nodes: Vec<TreeNode>,
    shapes: Vec<Shape>,
}

impl CanonicalTree {
    /// Build over `pts` (already in the caller's angular order) at radius
    /// `r`. Chains are merged bottom-up: leaves are single disks, internal
    /// chains are the merge of their children.
    pub fn build(pts: &[Point], r: f64, tol: &Tolerance) -> Result<CanonicalTree, Error> {
        if !(r > 0.0) {
            return Err(Error::invalid("tree radius must be positive"));
        }
        let shapes = build_shape(pts.len());
        let mut chains: Vec<Option<Arc<ArcChain>>> = vec![None; shapes.len()];
        // Children are allocated after parents, so reverse index order is a
        // valid bottom-up schedule.
        for idx in (0..shapes.len()).rev() {
            let s = shapes[idx];
            let chain = match (s.left, s.right) {
                (None, None) => {
                    let p = pts[s.lo];
                    if !p.is_finite() {
                        return Err(Error::NonFinite(s.lo));
                    }
                    ArcChain::full_circle(p, r, *tol)
                }
                (Some(l), Some(rt)) => {
                    let lc = chains[l].as_ref().unwrap();
                    let rc = chains[rt].as_ref().unwrap();
                    merge_chains(lc, rc)?
                }
                _ => unreachable!("nodes have zero or two children"),
            };
            chains[idx] = Some(Arc::new(chain));
        }
        let nodes = shapes
            .iter()
            .enumerate()
            .map(|(idx, s)| TreeNode {
                lo: s.lo,
                hi: s.hi,
                left: s.left,
                right: s.right,
                chain: chains[idx].take().unwrap(),
            })
            .collect();
        Ok(CanonicalTree { order: pts.to_vec(), r, tol: *tol, nodes, shapes })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, idx: usize) -> &TreeNode {
        &self.nodes[idx]
    }

    /// Canonical decomposition of the 1-based inclusive range `[i, j]`:
    /// node indices whose ranges are disjoint, contiguous, and tile `[i, j]`,
    /// at most `2 * ceil(log2 n)` of them. `i > j` yields the empty list.
    pub fn canonical_nodes(&self, i: usize, j: usize) -> Vec<usize> {
        if i > j || self.order.is_empty() {
            return Vec::new();
        }
        assert!(i >= 1 && j <= self.order.len(), "range [{i},{j}] out of bounds");
        canonical_indices(&self.shapes, i - 1, j - 1)
    }

    /// Intersection hull of `S[i..=j]` (1-based) at the build radius,
    /// assembled from the canonical nodes: pairwise separated-intersections
    /// among the node chains give each node's surviving boundary parts,
    /// `clip_boundary` componentizes them, and the pieces are glued by
    /// shared endpoints into one closed chain. Stored chains are only read.
    ///
    /// The empty range yields the whole-plane marker.
    pub fn range_intersection(&self, i: usize, j: usize) -> Result<ArcChain, Error> {
        if i > j {
            return Ok(ArcChain::plane(self.r, self.tol));
        }
        assert!(i >= 1 && j <= self.order.len(), "range [{i},{j}] out of bounds");
        let nodes = self.canonical_nodes(i, j);
        if nodes.len() == 1 {
            return Ok((*self.nodes[nodes[0]].chain).clone());
        }
        // Kind gate on the range's enclosing disk, mirroring
        // intersection_hull's classification.
        let pts = &self.order[i - 1..j];
        let m = med(pts, &self.tol);
        let band = self.tol.band();
        if m.radius() > self.r + band {
            return Ok(ArcChain::empty(self.r, self.tol, m.center()));
        }
        if m.radius() > self.r - band {
            let g = m
                .support
                .iter()
                .copied()
                .min_by(|a, b| a.lex_cmp(*b))
                .unwrap_or(m.center());
            return Ok(ArcChain::single_point(m.center(), g, self.r, self.tol));
        }

        let chains: Vec<&ArcChain> = nodes.iter().map(|&w| &*self.nodes[w].chain).collect();
        let k = chains.len();
        // Pairwise trichotomies, computed once per unordered pair so shared
        // crossing points stay bit-identical on both sides.
        let mut seps: HashMap<(usize, usize), SepResult> = HashMap::new();
        for a in 0..k {
            for b in a + 1..k {
                let sep = separated_intersect(chains[a], chains[b])?;
                if sep == SepResult::Disjoint {
                    return Err(Error::contract(
                        "range nodes pairwise disjoint below the enclosing radius",
                    ));
                }
                seps.insert((a, b), sep);
            }
        }

        struct Piece {
            arcs: Vec<CircleArc>,
        }
        let mut pieces: Vec<Piece> = Vec::new();
        let mut full_nodes: Vec<usize> = Vec::new();
        for w in 0..k {
            let parts: Vec<BoundaryPart> = (0..k)
                .filter(|&v| v != w)
                .map(|v| {
                    let extent = if w < v {
                        part_on_first(&seps[&(w, v)])
                    } else {
                        part_on_second(&seps[&(v, w)])
                    };
                    BoundaryPart { owner: v, extent }
                })
                .collect();
            let comps = clip_boundary(chains[w], w, &parts, chains[w].witness)?;
            debug_assert!(comps.len() <= 2, "canonical family boundary split >2 ways");
            for comp in comps {
                match comp.extent {
                    PartExtent::Full => full_nodes.push(w),
                    PartExtent::Span { s, e } => {
                        if self.tol.same_point(s, e) {
                            continue; // grazing touch contributes no arc
                        }
                        pieces.push(Piece { arcs: extract_span(chains[w], s, e) });
                    }
                    PartExtent::Empty => unreachable!("empty extents end clip_boundary"),
                }
            }
        }
        if pieces.is_empty() {
            // Some node's region is contained in all others.
            if let Some(&w) = full_nodes.first() {
                return Ok((*chains[w]).clone());
            }
            return Err(Error::contract("no boundary survived a nonempty range merge"));
        }

        // Glue pieces end-to-start; endpoints are shared crossing points and
        // match bit-exactly, with a tolerance fallback.
        let mut by_start: HashMap<(u64, u64), usize> = HashMap::new();
        for (idx, p) in pieces.iter().enumerate() {
            by_start.insert(p.arcs[0].start.bits(), idx);
        }
        let mut used = vec![false; pieces.len()];
        let mut arcs: Vec<CircleArc> = Vec::new();
        let mut cur = 0usize;
        for _ in 0..pieces.len() {
            used[cur] = true;
            arcs.extend(pieces[cur].arcs.iter().copied());
            let tail = arcs.last().unwrap().end;
            if used.iter().all(|&u| u) {
                break;
            }
            cur = match by_start.get(&tail.bits()) {
                Some(&nxt) if !used[nxt] => nxt,
                _ => {
                    // fall back to the nearest unused start within the band
                    let found = (0..pieces.len())
                        .filter(|&idx| !used[idx])
                        .min_by(|&a, &b| {
                            pieces[a].arcs[0]
                                .start
                                .dist(tail)
                                .partial_cmp(&pieces[b].arcs[0].start.dist(tail))
                                .unwrap()
                        })
                        .filter(|&idx| {
                            pieces[idx].arcs[0].start.dist(tail)
                                <= self.tol.band().max(1e-9 * self.r)
                        });
                    match found {
                        Some(idx) => idx,
                        None => {
                            return Err(Error::contract(
                                "range merge pieces do not close up",
                            ))
                        }
                    }
                }
            };
        }
        // Merge adjacent same-center fragments, drop degenerate slivers.
        let mut merged: Vec<CircleArc> = Vec::with_capacity(arcs.len());
        for a in arcs {
            if let Some(last) = merged.last_mut() {
                if last.center == a.center {
                    last.end = a.end;
                    continue;
                }
            }
            merged.push(a);
        }
        if merged.len() > 1 && merged.first().unwrap().center == merged.last().unwrap().center
        {
            let last = merged.pop().unwrap();
            merged[0].start = last.start;
            // rotation below restores canonical start
        }
        merged.retain(|a| a.start.dist(a.end) > band);
        if merged.len() < 2 {
            return Err(Error::contract("range merge collapsed unexpectedly"));
        }
        let mut best = 0;
        for idx in 1..merged.len() {
            if merged[idx].center.lex_cmp(merged[best].center) == std::cmp::Ordering::Less {
                best = idx;
            }
        }
        merged.rotate_left(best);
        Ok(ArcChain {
            r: self.r,
            tol: self.tol,
            kind: ChainKind::Region,
            arcs: merged,
            witness: m.center(),
        })
    }
}

// Extract the counterclockwise sub-chain of `chain` from boundary point `s`
// to boundary point `e` (both on the boundary, s != e) by copying arcs.
fn extract_span(chain: &ArcChain, s: Point, e: Point) -> Vec<CircleArc> {
    debug_assert_eq!(chain.kind, ChainKind::Region);
    let ks = chain.facing_arc(s);
    let ke = chain.facing_arc(e);
    let n = chain.arcs.len();
    if ks == ke {
        let a = &chain.arcs[ks];
        if chain.is_full_circle() {
            return vec![CircleArc { center: a.center, start: s, end: e }];
        }
        // Both endpoints on one arc: either the short way (s before e) or
        // wrapping the entire boundary.
        let base = a.start - a.center;
        let before = crate::hull::cmp_about(base, s - a.center, e - a.center)
            != std::cmp::Ordering::Greater;
        if before {
            return vec![CircleArc { center: a.center, start: s, end: e }];
        }
    }
    let mut arcs = Vec::new();
    let first = &chain.arcs[ks];
    arcs.push(CircleArc { center: first.center, start: s, end: first.end });
    let mut k = (ks + 1) % n;
    while k != ke {
        arcs.push(chain.arcs[k]);
        k = (k + 1) % n;
    }
    if ks == ke {
        // wrapped all the way around: the closing fragment reuses the arc
        arcs.push(CircleArc { center: chain.arcs[ke].center, start: chain.arcs[ke].start, end: e });
    } else {
        let last = &chain.arcs[ke];
        arcs.push(CircleArc { center: last.center, start: last.start, end: e });
    }
    arcs
}

/// Both-side boundary parts of one tree node against a fixed region `R`.
#[derive(Clone, Copy, Debug)]
pub struct NodeParts {
    /// f(S_w, R): the part of the node chain's boundary inside R.
    pub on_node: PartExtent,
    /// f(R, S_w): the part of R's boundary inside the node chain.
    pub on_r: PartExtent,
    pub sep: SepResult,
}

/// Per-node boundary parts of a whole tree against one region, the
/// query-time replacement for storing mutable intersections.
pub struct DStructure {
    pub parts: Vec<NodeParts>,
}

/// Compute boundary parts of every node chain of `t` against `r_chain`.
/// Requires the tree's generators and `r_chain`'s generators to be separated
/// by a line (contract error otherwise, surfaced by the trichotomy).
pub fn build_d_structure(t: &CanonicalTree, r_chain: &ArcChain) -> Result<DStructure, Error> {
    let mut parts = Vec::with_capacity(t.node_count());
    for idx in 0..t.node_count() {
        let sep = separated_intersect(&t.node(idx).chain, r_chain)?;
        parts.push(NodeParts {
            on_node: part_on_first(&sep),
            on_r: part_on_second(&sep),
            sep,
        });
    }
    Ok(DStructure { parts })
}

/// One node of a [`HullTree`].
#[derive(Debug)]
pub struct HullNode {
    pub lo: usize,
    pub hi: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
    /// Convex hull of the node's range, counterclockwise.
    pub hull: Vec<Point>,
}

/// Radius-free balanced tree storing per-node convex hulls; supports
/// enclosing-disk probes over unions of canonical ranges without fixing a
/// radius.
#[derive(Debug)]
pub struct HullTree {
    pub n: usize,
    nodes: Vec<HullNode>,
    shapes: Vec<Shape>,
}

impl HullTree {
    pub fn build(pts: &[Point]) -> HullTree {
        let shapes = build_shape(pts.len());
        let mut hulls: Vec<Option<Vec<Point>>> = vec![None; shapes.len()];
        for idx in (0..shapes.len()).rev() {
            let s = shapes[idx];
            let hull = match (s.left, s.right) {
                (None, None) => vec![pts[s.lo]],
                (Some(l), Some(r)) => {
                    let mut pool = hulls[l].as_ref().unwrap().clone();
                    pool.extend(hulls[r].as_ref().unwrap().iter().copied());
                    convex_hull(&pool)
                }
                _ => unreachable!(),
            };
            hulls[idx] = Some(hull);
        }
        let nodes = shapes
            .iter()
            .enumerate()
            .map(|(idx, s)| HullNode {
                lo: s.lo,
                hi: s.hi,
                left: s.left,
                right: s.right,
                hull: hulls[idx].take().unwrap(),
            })
            .collect();
        HullTree { n: pts.len(), nodes, shapes }
    }

    pub fn node(&self, idx: usize) -> &HullNode {
        &self.nodes[idx]
    }

    pub fn canonical_nodes(&self, i: usize, j: usize) -> Vec<usize> {
        if i > j || self.n == 0 {
            return Vec::new();
        }
        assert!(i >= 1 && j <= self.n, "range [{i},{j}] out of bounds");
        canonical_indices(&self.shapes, i - 1, j - 1)
    }

    /// Append the hull points of the canonical nodes of `[i, j]` (1-based)
    /// to `out`. The enclosing disk of the appended points equals that of
    /// the raw range.
    pub fn gather_hull_points(&self, i: usize, j: usize, out: &mut Vec<Point>) {
        for idx in self.canonical_nodes(i, j) {
            out.extend(self.nodes[idx].hull.iter().copied());
        }
    }
}
