//! Acceptance gate: every promised property of the artifact, checked in one
//! sequential pass with one printed verdict line per criterion. Run with
//! `--nocapture` to see the lines on success; on failure the captured output
//! names the criterion and the offending case.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twocenter::decision::{decide_both_axes, radius_a, radius_b, Axis, SplitInstance};
use twocenter::gen::{ConvexCircle, Generator, TwoCluster};
use twocenter::hull::{check_boundary_order, intersection_hull, ChainKind};
use twocenter::oracle::{brute_restricted, brute_two_center};
use twocenter::rtree::CanonicalTree;
use twocenter::{
    smallest_enclosing_disk, solve_convex, solve_restricted, Disk, Point, SearchMode, Tolerance,
    TwoCenterSolution,
};

fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn rand_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    (0..n).map(|_| pt(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn side_disk(s: &[Point], partition: &[u8], tag: u8, radius: f64) -> Disk {
    let side: Vec<Point> =
        s.iter().zip(partition).filter(|(_, &m)| m == tag).map(|(&p, _)| p).collect();
    let mut d = if side.is_empty() {
        Disk::new(s.first().copied().unwrap_or(pt(0.0, 0.0)), 0.0)
    } else {
        smallest_enclosing_disk(&side).unwrap().disk
    };
    d.radius = radius;
    d
}

// o sampled inside the overlap of the oracle's optimal pair, the regime
// where the restricted optimum equals the unconstrained one.
fn sample_o_in_overlap(rng: &mut ChaCha8Rng, s: &[Point], min_lens_frac: f64) -> Option<Point> {
    let orc = brute_two_center(s).ok()?;
    let d1 = side_disk(s, &orc.partition, 0, orc.radius);
    let d2 = side_disk(s, &orc.partition, 1, orc.radius);
    let gap = d1.center.dist(d2.center);
    if orc.radius <= 0.0 || gap >= 2.0 * orc.radius * (1.0 - min_lens_frac) {
        return None; // lens too thin to sample robustly
    }
    for _ in 0..200 {
        let t = rng.gen_range(0.0..1.0);
        let base = pt(
            d1.center.x + t * (d2.center.x - d1.center.x),
            d1.center.y + t * (d2.center.y - d1.center.y),
        );
        let o = pt(
            base.x + 0.3 * rng.gen_range(-orc.radius..orc.radius),
            base.y + 0.3 * rng.gen_range(-orc.radius..orc.radius),
        );
        let margin = 0.02 * orc.radius;
        if o.dist(d1.center) <= orc.radius - margin
            && o.dist(d2.center) <= orc.radius - margin
            && s.iter().all(|p| p.dist(o) > 1e-9)
        {
            return Some(o);
        }
    }
    None
}

struct RestrictedCase {
    s: Vec<Point>,
    o: Point,
    oracle_radius: f64,
}

fn restricted_corpus(count: usize, seed: u64) -> Vec<RestrictedCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=40);
        let s = rand_points(&mut rng, n);
        let Some(o) = sample_o_in_overlap(&mut rng, &s, 0.05) else { continue };
        let oracle_radius = brute_restricted(&s, o).unwrap().radius;
        out.push(RestrictedCase { s, o, oracle_radius });
    }
    out
}

// Criterion 1 body, parameterized by group width so criterion 6 can rerun
// it; returns the per-case radii for the cross-width identity check.
fn run_restricted_oracle(
    corpus: &[RestrictedCase],
    g: usize,
) -> Result<(Vec<f64>, f64, usize), String> {
    let mut radii = Vec::with_capacity(corpus.len());
    let mut max_rel = 0.0f64;
    let mut enlarged = 0usize;
    for (k, case) in corpus.iter().enumerate() {
        let sol = solve_restricted(&case.s, case.o, g, SearchMode::Exact)
            .map_err(|e| format!("case {k} (g={g}): {e}"))?;
        // On premise the pivot sits inside an optimal overlap, so a solution
        // that had to grow past the ray-split optimum signals a witness gap;
        // counted and reported, judged by the radius comparison below.
        if sol.o_enlarged {
            enlarged += 1;
        }
        sol.check(&case.s, Some(case.o)).map_err(|m| format!("case {k} (g={g}): {m}"))?;
        let rel = (sol.radius - case.oracle_radius).abs() / case.oracle_radius.max(1e-300);
        max_rel = max_rel.max(rel);
        if rel > 1e-9 {
            return Err(format!(
                "case {k} (g={g}): radius {:.17e} vs oracle {:.17e} (rel {rel:.2e})",
                sol.radius, case.oracle_radius
            ));
        }
        radii.push(sol.radius);
    }
    Ok((radii, max_rel, enlarged))
}

fn criterion1(corpus: &[RestrictedCase], corpus_secs: f64) -> Result<String, String> {
    let t0 = Instant::now();
    let (_, max_rel, enlarged) = run_restricted_oracle(corpus, 16)?;
    let total = corpus_secs + t0.elapsed().as_secs_f64();
    if total >= 120.0 {
        return Err(format!("runtime {total:.1}s exceeds the 2 minute budget"));
    }
    Ok(format!(
        "{} premise-held instances, max rel dev {max_rel:.1e}, {enlarged} enlarged, {total:.1}s total",
        corpus.len()
    ))
}

struct ConvexCase {
    s: Vec<Point>,
    oracle_radius: f64,
}

// Contiguous splits of the convex cyclic order are exhaustive for points in
// convex position; the generated order is that cyclic order.
fn brute_convex(s: &[Point]) -> f64 {
    let n = s.len();
    let mut best = smallest_enclosing_disk(s).unwrap().radius();
    let mut side1: Vec<Point> = Vec::with_capacity(n);
    let mut side2: Vec<Point> = Vec::with_capacity(n);
    for a in 0..n {
        for len in 1..n {
            side1.clear();
            side2.clear();
            for k in 0..n {
                let idx = (a + k) % n;
                if k < len {
                    side1.push(s[idx]);
                } else {
                    side2.push(s[idx]);
                }
            }
            let r = smallest_enclosing_disk(&side1)
                .unwrap()
                .radius()
                .max(smallest_enclosing_disk(&side2).unwrap().radius());
            if r < best {
                best = r;
            }
        }
    }
    best
}

fn convex_corpus(count: usize, seed: u64) -> Vec<ConvexCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let n = rng.gen_range(3..=40);
        let base = ConvexCircle.generate(n, seed ^ (k as u64).wrapping_mul(0x9e37_79b9)).points;
        // A random anisotropic scale and shift keeps strict convexity while
        // varying the geometry beyond circles.
        let (sx, sy) = (rng.gen_range(0.6..1.8), rng.gen_range(0.6..1.8));
        let (tx, ty) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let s: Vec<Point> = base.iter().map(|p| pt(sx * p.x + tx, sy * p.y + ty)).collect();
        let oracle_radius = brute_convex(&s);
        out.push(ConvexCase { s, oracle_radius });
    }
    out
}

fn criterion2(corpus: &[ConvexCase]) -> Result<String, String> {
    let mut max_rel = 0.0f64;
    for (k, case) in corpus.iter().enumerate() {
        let sol = solve_convex(&case.s, 16).map_err(|e| format!("case {k}: {e}"))?;
        sol.check(&case.s, None).map_err(|m| format!("case {k}: {m}"))?;
        let rel = (sol.radius - case.oracle_radius).abs() / case.oracle_radius.max(1e-300);
        max_rel = max_rel.max(rel);
        if rel > 1e-9 {
            return Err(format!(
                "case {k}: radius {:.17e} vs oracle {:.17e} (rel {rel:.2e})",
                sol.radius, case.oracle_radius
            ));
        }
    }
    let hexagon: Vec<Point> = (0..6)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / 3.0;
            pt(t.cos(), t.sin())
        })
        .collect();
    let hex = solve_convex(&hexagon, 16).map_err(|e| format!("hexagon: {e}"))?;
    let expect = 3f64.sqrt() / 2.0;
    if (hex.radius - expect).abs() > 1e-9 {
        return Err(format!("hexagon radius {:.17e}, expected {expect:.17e}", hex.radius));
    }
    Ok(format!("{} instances + hexagon, max rel dev {max_rel:.1e}", corpus.len()))
}

struct DecisionCase {
    s: Vec<Point>,
    o: Point,
    r_star: f64,
    grid: Vec<f64>,
}

fn decision_corpus(count: usize, seed: u64) -> Vec<DecisionCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=40);
        let s = rand_points(&mut rng, n);
        let Some(o) = sample_o_in_overlap(&mut rng, &s, 0.05) else { continue };
        let r_star = brute_restricted(&s, o).unwrap().radius;
        if !(r_star > 0.0) {
            continue;
        }
        let mut grid = Vec::with_capacity(20);
        while grid.len() < 20 {
            let r = r_star * rng.gen_range(0.5..1.5);
            if (r - r_star).abs() <= 1e-7 * r_star {
                continue; // exclusion band around the threshold
            }
            grid.push(r);
        }
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.push(DecisionCase { s, o, r_star, grid });
    }
    out
}

// Criterion 3 body, parameterized by group width; returns the yes/no vector
// per case for the cross-width identity check.
fn run_decision_grid(corpus: &[DecisionCase], g: usize) -> Result<Vec<Vec<bool>>, String> {
    let mut all = Vec::with_capacity(corpus.len());
    for (k, case) in corpus.iter().enumerate() {
        let mut answers = Vec::with_capacity(case.grid.len());
        let mut seen_yes = false;
        for &r in &case.grid {
            let yes = decide_both_axes(&case.s, case.o, r, g)
                .map_err(|e| format!("case {k} (g={g}) r={r}: {e}"))?
                .is_some();
            if yes != (r >= case.r_star) {
                return Err(format!(
                    "case {k} (g={g}): decide({r:.17e}) = {yes}, oracle r* = {:.17e}",
                    case.r_star
                ));
            }
            if seen_yes && !yes {
                return Err(format!("case {k} (g={g}): non-monotone grid at r={r:.17e}"));
            }
            seen_yes |= yes;
            answers.push(yes);
        }
        all.push(answers);
    }
    Ok(all)
}

fn criterion3(corpus: &[DecisionCase]) -> Result<(Vec<Vec<bool>>, String), String> {
    let answers = run_decision_grid(corpus, 16)?;
    let radii = corpus.len() * 20;
    Ok((answers, format!("{} instances x 20 radii = {radii} decisions, zero violations", corpus.len())))
}

fn criterion4(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    while checked < 1000 {
        let n = rng.gen_range(1..=32);
        let x = rand_points(&mut rng, n);
        let med_r = smallest_enclosing_disk(&x).unwrap().radius();
        let r = if med_r > 0.0 {
            med_r * rng.gen_range(0.3..2.0)
        } else {
            rng.gen_range(0.01..1.0)
        };
        if !(r > 0.0) {
            continue;
        }
        let tol = Tolerance::for_points(&x);
        if (med_r - r).abs() <= 10.0 * tol.band() {
            skipped += 1;
            continue; // inside the tolerance band the kind may go either way
        }
        let chain = intersection_hull(&x, r).map_err(|e| format!("pair {checked}: {e}"))?;
        let empty = chain.kind == ChainKind::Empty;
        if empty != (med_r > r) {
            return Err(format!(
                "pair {checked}: n={n} r={r:.17e} med={med_r:.17e} kind={:?}",
                chain.kind
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} (X, r) pairs, zero violations ({skipped} in-band resampled)"))
}

// Points all strictly above a pivot, in the split's angular order: the
// precondition for the canonical range trees.
fn ordered_upper(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Point>, Tolerance) {
    loop {
        let s = rand_points(rng, n);
        let o = pt(0.0, -2.0);
        if let Ok(inst) = SplitInstance::build(&s, o, Axis::X) {
            if inst.up.len() == n {
                let tol = inst.tol;
                return (inst.up, tol);
            }
        }
    }
}

fn criterion5(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Lemma 4 order property + canonical node count, 200 random ranges.
    let mut order_checked = 0usize;
    while order_checked < 200 {
        let n = rng.gen_range(8..=64);
        let (up, tol) = ordered_upper(&mut rng, n);
        let med_r = smallest_enclosing_disk(&up).unwrap().radius();
        let r = med_r * rng.gen_range(0.5..2.0);
        if !(r > 0.0) {
            continue;
        }
        let tree = CanonicalTree::build(&up, r, &tol).map_err(|e| format!("{e}"))?;
        let bound = 2 * (n as f64).log2().ceil() as usize;
        for _ in 0..10 {
            let i = rng.gen_range(1..=n);
            let j = rng.gen_range(i..=n);
            let nodes = tree.canonical_nodes(i, j);
            if nodes.len() > bound {
                return Err(format!("range [{i},{j}] of n={n}: {} canonical nodes > {bound}", nodes.len()));
            }
            let chain = tree.range_intersection(i, j).map_err(|e| format!("{e}"))?;
            let ok = check_boundary_order(&chain, |c| up.iter().position(|p| *p == c));
            if !ok {
                return Err(format!("boundary order violated on [{i},{j}] of n={n} r={r:.6e}"));
            }
            order_checked += 1;
        }
    }

    // range_intersection versus the direct hull, 300 random queries.
    let mut range_checked = 0usize;
    while range_checked < 300 {
        let n = rng.gen_range(4..=64);
        let (up, tol) = ordered_upper(&mut rng, n);
        let med_r = smallest_enclosing_disk(&up).unwrap().radius();
        let r = med_r * rng.gen_range(0.3..2.0);
        if !(r > 0.0) {
            continue;
        }
        let tree = CanonicalTree::build(&up, r, &tol).map_err(|e| format!("{e}"))?;
        for _ in 0..4 {
            let i = rng.gen_range(1..=n);
            let j = rng.gen_range(i..=n);
            let sub = &up[i - 1..j];
            let sub_med = smallest_enclosing_disk(sub).unwrap().radius();
            let sub_tol = Tolerance::for_points(sub);
            // The tree and the direct hull carry different tolerance scales;
            // near the classification band their kinds may legitimately
            // differ, so stay outside it.
            if (sub_med - r).abs() <= 10.0 * (tol.band() + sub_tol.band()) {
                continue;
            }
            let got = tree.range_intersection(i, j).map_err(|e| format!("{e}"))?;
            let direct = intersection_hull(sub, r).map_err(|e| format!("{e}"))?;
            if got.kind != direct.kind {
                return Err(format!(
                    "kind mismatch on [{i},{j}] of n={n}: tree {:?}, direct {:?}",
                    got.kind, direct.kind
                ));
            }
            if got.kind == ChainKind::Region && !got.approx_eq(&direct, 1e-6 * r.max(1.0)) {
                return Err(format!("chain mismatch on [{i},{j}] of n={n} r={r:.6e}"));
            }
            range_checked += 1;
        }
    }

    // Monotone crossover column over the split matrix, 100 instances.
    let mut mono_checked = 0usize;
    while mono_checked < 100 {
        let n = rng.gen_range(5..=16);
        let s = rand_points(&mut rng, n);
        let o = pt(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let Ok(inst) = SplitInstance::build(&s, o, Axis::X) else { continue };
        let (np, nm) = (inst.up.len(), inst.lo.len());
        let crossover = |i: usize| -> usize {
            (0..=nm)
                .find(|&j| radius_a(&inst, i, j) >= radius_b(&inst, i, j))
                .unwrap_or(nm + 1)
        };
        let mut prev = 0usize;
        for i in 0..=np {
            let c = crossover(i);
            if c < prev {
                return Err(format!("crossover column decreased at row {i} (instance {mono_checked})"));
            }
            prev = c;
        }
        mono_checked += 1;
    }

    Ok(format!(
        "{order_checked} ordered ranges, {range_checked} range queries, {mono_checked} monotone matrices, zero violations"
    ))
}

fn criterion6(
    corpus1: &[RestrictedCase],
    radii16: &[f64],
    corpus3: &[DecisionCase],
    answers16: &[Vec<bool>],
) -> Result<String, String> {
    for g in [1usize, 2, 5, 64] {
        let (radii, _, _) = run_restricted_oracle(corpus1, g)?;
        if radii != radii16 {
            let k = radii.iter().zip(radii16).position(|(a, b)| a != b).unwrap();
            return Err(format!(
                "g={g} changes case {k}: radius {:.17e} vs {:.17e} at g=16",
                radii[k], radii16[k]
            ));
        }
        let answers = run_decision_grid(corpus3, g)?;
        if answers != answers16 {
            return Err(format!("g={g} changes a decision outcome"));
        }
    }
    Ok("criteria 1 and 3 identical for g in {1, 2, 5, 16, 64}".into())
}

fn criterion7() -> Result<String, String> {
    let gen = TwoCluster { overlap: 0.3 };
    // Largest radius the decision rejects: infeasible answers cannot exit
    // early, so the timed call scans every group. The probe is untimed.
    let no_radius = |pts: &[Point], o: Point| -> Result<f64, String> {
        let n1 = pts.len() - pts.len() / 2;
        let m1 = smallest_enclosing_disk(&pts[..n1]).unwrap().radius();
        let m2 = smallest_enclosing_disk(&pts[n1..]).unwrap().radius();
        let mut r = 0.45 * m1.max(m2);
        for _ in 0..60 {
            if decide_both_axes(pts, o, r, 16).map_err(|e| format!("{e}"))?.is_none() {
                return Ok(r);
            }
            r *= 0.65;
        }
        Err("no infeasible radius found".into())
    };
    // Warm the thread pool so the first measurement is not charged for it.
    {
        let inst = gen.generate(4096, 7);
        let r = no_radius(&inst.points, inst.o.unwrap())?;
        decide_both_axes(&inst.points, inst.o.unwrap(), r, 16).map_err(|e| format!("{e}"))?;
    }
    let sizes = [25_000usize, 50_000, 100_000];
    let mut medians = Vec::with_capacity(sizes.len());
    for (idx, &n) in sizes.iter().enumerate() {
        let mut reps = Vec::with_capacity(3);
        for rep in 0..3u64 {
            let inst = gen.generate(n, 1_000 + 10 * idx as u64 + rep);
            let o = inst.o.unwrap();
            let r = no_radius(&inst.points, o)?;
            let t0 = Instant::now();
            let w = decide_both_axes(&inst.points, o, r, 16).map_err(|e| format!("{e}"))?;
            reps.push(t0.elapsed());
            if w.is_some() {
                return Err(format!("n={n}: probed no-radius decided yes"));
            }
        }
        reps.sort();
        medians.push(reps[1].as_secs_f64());
    }
    if medians[2] >= 5.0 {
        return Err(format!("median decide at n=1e5 took {:.2}s (budget 5s)", medians[2]));
    }
    let mut ratios = Vec::new();
    for k in 0..2 {
        let ratio = medians[k + 1] / medians[k];
        if !(1.6..=3.0).contains(&ratio) {
            return Err(format!(
                "time ratio {:.2} from n={} to n={} is outside [1.6, 3.0] (medians {:?})",
                ratio,
                sizes[k],
                sizes[k + 1],
                medians
            ));
        }
        ratios.push(ratio);
    }
    Ok(format!(
        "decide medians {:.1} / {:.1} / {:.1} ms, ratios {:.2} and {:.2}",
        medians[0] * 1e3,
        medians[1] * 1e3,
        medians[2] * 1e3,
        ratios[0],
        ratios[1]
    ))
}

fn record(sol: &TwoCenterSolution) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = write!(
        s,
        "r={:.16e};d1={:.16e},{:.16e},{:.16e};d2={:.16e},{:.16e},{:.16e};axis={:?};w={:?};part=",
        sol.radius,
        sol.d1.center.x,
        sol.d1.center.y,
        sol.d1.radius,
        sol.d2.center.x,
        sol.d2.center.y,
        sol.d2.radius,
        sol.axis,
        sol.witness,
    );
    for &t in &sol.partition {
        s.push(char::from(b'0' + t));
    }
    s.push('\n');
    s
}

fn criterion8(corpus1: &[RestrictedCase], corpus2: &[ConvexCase]) -> Result<String, String> {
    let pass = || -> Result<String, String> {
        let mut out = String::new();
        for case in corpus1.iter().take(150) {
            let sol = solve_restricted(&case.s, case.o, 16, SearchMode::Exact)
                .map_err(|e| format!("{e}"))?;
            out.push_str(&record(&sol));
        }
        for case in corpus2.iter().take(60) {
            let sol = solve_convex(&case.s, 16).map_err(|e| format!("{e}"))?;
            out.push_str(&record(&sol));
        }
        Ok(out)
    };
    let a = pass()?;
    let b = pass()?;
    if a != b {
        let line = a.lines().zip(b.lines()).position(|(x, y)| x != y);
        return Err(format!("record streams differ at line {line:?}"));
    }
    Ok(format!("two runs, {} records each, byte-identical", a.lines().count()))
}

#[test]
fn acceptance() {
    let t0 = Instant::now();
    let corpus1 = restricted_corpus(500, 0xAC01);
    let corpus1_secs = t0.elapsed().as_secs_f64();
    let corpus2 = convex_corpus(200, 0xAC02);
    let corpus3 = decision_corpus(300, 0xAC03);

    let mut failures: Vec<String> = Vec::new();
    // Written straight to the stdout handle so the per-criterion lines
    // survive the harness capture of passing tests.
    let mut report = |name: &str, res: Result<String, String>| {
        use std::io::Write as _;
        let line = match res {
            Ok(msg) => format!("criterion {name}: PASS ({msg})"),
            Err(msg) => {
                failures.push(format!("{name}: {msg}"));
                format!("criterion {name}: FAIL ({msg})")
            }
        };
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{line}");
        let _ = out.flush();
    };

    report("1 (restricted oracle equivalence)", criterion1(&corpus1, corpus1_secs));
    report("2 (convex oracle equivalence)", criterion2(&corpus2));

    let (answers16, radii16) = match criterion3(&corpus3) {
        Ok((answers, msg)) => {
            report("3 (decision correctness)", Ok(msg));
            let radii16 = run_restricted_oracle(&corpus1, 16).map(|(r, _, _)| r);
            (Some(answers), radii16.ok())
        }
        Err(msg) => {
            report("3 (decision correctness)", Err(msg));
            (None, None)
        }
    };

    report("4 (emptiness duality)", criterion4(0xAC04));
    report("5 (structural lemmas)", criterion5(0xAC05));

    match (answers16.as_ref(), radii16.as_ref()) {
        (Some(answers), Some(radii)) => {
            report("6 (group-parameter robustness)", criterion6(&corpus1, radii, &corpus3, answers));
        }
        _ => report(
            "6 (group-parameter robustness)",
            Err("skipped: criterion 1 or 3 baseline unavailable".into()),
        ),
    }

    report("7 (scaling smoke)", criterion7());
    report("8 (determinism)", criterion8(&corpus1, &corpus2));

    assert!(failures.is_empty(), "acceptance failures:\n{}", failures.join("\n"));
}
