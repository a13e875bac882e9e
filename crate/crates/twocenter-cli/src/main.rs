//! Command-line front-end for the planar two-center solvers.
//!
//! Exit codes: 0 on success, 1 for input errors (bad files, flags, or
//! infeasible requests), 2 for internal invariant violations.

mod format;

use std::io::Read;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use twocenter::decision::decide_both_axes;
use twocenter::gen::{self, Generator};
use twocenter::strategy::{self, SolveOptions};
use twocenter::{smallest_enclosing_disk, Error, Point, SearchMode, Tolerance};

use format::{decide_record, parse_instance, solution_record, write_instance, InstanceFile};

#[derive(Parser)]
#[command(name = "twocenter", version, about = "Planar two-center solvers")]
struct Cli {
    /// Thread count for the parallel decision scans (results are identical
    /// for any count).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance file ("-" reads stdin); prints a solution record.
    Solve {
        file: String,
        /// Solver variant: restricted, convex, auto, or oracle.
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Pivot "X,Y"; overrides the file's o directive.
        #[arg(long)]
        o: Option<String>,
        /// Group width for the decision engine.
        #[arg(long, default_value_t = 16)]
        group_width: usize,
        /// Bisection search instead of the exact candidate grid.
        #[arg(long)]
        bisect: bool,
        /// Re-parse the record, re-check containment, and compare against
        /// the brute-force oracle when n <= the verify cap.
        #[arg(long)]
        verify: bool,
        /// Largest n the verify oracle comparison runs at.
        #[arg(long, default_value_t = 25)]
        verify_cap: usize,
    },
    /// Decide whether radius r is feasible for an instance file.
    Decide {
        file: String,
        /// Radius to test (must be positive).
        #[arg(long)]
        r: f64,
        /// Pivot "X,Y"; overrides the file's o directive.
        #[arg(long)]
        o: Option<String>,
        #[arg(long, default_value_t = 16)]
        group_width: usize,
    },
    /// Generate an instance file on stdout.
    Gen {
        /// Generator kind: uniform, convex, or two-cluster.
        kind: String,
        /// Number of points.
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overlap fraction for the two-cluster kind.
        #[arg(long)]
        overlap: Option<f64>,
    },
    /// Time build+decide and solve over a range of instance sizes.
    Bench {
        /// Generator kind to draw instances from.
        #[arg(long, default_value = "two-cluster")]
        kind: String,
        /// Comma-separated instance sizes.
        #[arg(long, default_value = "25000,50000,100000")]
        sizes: String,
        /// Repetitions per cell; the reported time is the median.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n the solve rows run at (solve uses bisection here).
        #[arg(long, default_value_t = 200)]
        solve_cap: usize,
    },
    /// Solve by brute force; meant for small instances and verification.
    Oracle {
        file: String,
        /// Pivot "X,Y"; overrides the file's o directive.
        #[arg(long)]
        o: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = twocenter::set_threads(k) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Solve { file, mode, o, group_width, bisect, verify, verify_cap } => {
            cmd_solve(&file, &mode, o.as_deref(), group_width, bisect, verify, verify_cap)
        }
        Cmd::Decide { file, r, o, group_width } => cmd_decide(&file, r, o.as_deref(), group_width),
        Cmd::Gen { kind, n, seed, overlap } => cmd_gen(&kind, n, seed, overlap),
        Cmd::Bench { kind, sizes, reps, seed, solve_cap } => {
            cmd_bench(&kind, &sizes, reps, seed, solve_cap)
        }
        Cmd::Oracle { file, o } => cmd_solve(&file, "oracle", o.as_deref(), 16, false, false, 0),
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::invalid(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{path}: {e}")))
}

fn load_instance(path: &str, o_flag: Option<&str>) -> Result<InstanceFile, Error> {
    let text = read_input(path)?;
    let mut inst = parse_instance(&text).map_err(Error::Invalid)?;
    if let Some(spec) = o_flag {
        inst.o = Some(parse_o_flag(spec)?);
    }
    Ok(inst)
}

fn parse_o_flag(spec: &str) -> Result<Point, Error> {
    let parts: Vec<&str> = spec.split(',').collect();
    let [x, y] = parts.as_slice() else {
        return Err(Error::invalid(format!("--o wants \"X,Y\", found {spec:?}")));
    };
    let x: f64 = x.trim().parse().map_err(|_| Error::invalid(format!("--o: bad number {x:?}")))?;
    let y: f64 = y.trim().parse().map_err(|_| Error::invalid(format!("--o: bad number {y:?}")))?;
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::invalid("--o: non-finite coordinate"));
    }
    Ok(Point::new(x, y))
}

fn cmd_solve(
    file: &str,
    mode: &str,
    o_flag: Option<&str>,
    group_width: usize,
    bisect: bool,
    verify: bool,
    verify_cap: usize,
) -> Result<(), Error> {
    let strat = strategy::strategy(mode).ok_or_else(|| {
        let names: Vec<&str> = strategy::strategies().iter().map(|s| s.name()).collect();
        Error::invalid(format!("unknown mode {mode:?}; expected one of {}", names.join(", ")))
    })?;
    let inst = load_instance(file, o_flag)?;
    let opts = SolveOptions {
        group_width,
        mode: if bisect { SearchMode::Bisect } else { SearchMode::Exact },
    };
    let t0 = Instant::now();
    let sol = strat.solve(&inst.points, inst.o, &opts)?;
    let elapsed = t0.elapsed();
    let record = solution_record(&sol, strat.name(), inst.points.len());
    if verify {
        verify_solution(&record, &inst, verify_cap)?;
        eprintln!("verify: ok");
    }
    print!("{record}");
    eprintln!("solve: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    Ok(())
}

// Re-parse the emitted record and re-check it against the input, then
// compare the radius with the brute-force oracle for small n. A failure
// here is an internal invariant violation, not an input error.
fn verify_solution(record: &str, inst: &InstanceFile, verify_cap: usize) -> Result<(), Error> {
    let v: serde_json::Value =
        serde_json::from_str(record).map_err(|e| Error::contract(format!("record parse: {e}")))?;
    let disk = |key: &str| -> Result<(Point, f64), Error> {
        let d = &v[key];
        let num = |f: &str| {
            d[f].as_f64().ok_or_else(|| Error::contract(format!("record {key}.{f} missing")))
        };
        Ok((Point::new(num("x")?, num("y")?), num("radius")?))
    };
    let (c1, r1) = disk("disk1")?;
    let (c2, r2) = disk("disk2")?;
    let parts = v["partition"]
        .as_array()
        .ok_or_else(|| Error::contract("record partition missing"))?;
    if parts.len() != inst.points.len() {
        return Err(Error::contract("record partition length mismatch"));
    }
    let mut all = inst.points.clone();
    all.extend(inst.o);
    let tol = Tolerance::for_points(&all);
    for (p, side) in inst.points.iter().zip(parts) {
        let (c, r) = if side.as_u64() == Some(0) { (c1, r1) } else { (c2, r2) };
        if p.dist(c) > r + tol.slack(r) {
            return Err(Error::contract("re-parsed record fails containment"));
        }
    }
    if v["mode"] != "convex" && !v["o_enlarged"].as_bool().unwrap_or(false) {
        if let Some(o) = inst.o {
            if o.dist(c1) > r1 + tol.slack(r1) || o.dist(c2) > r2 + tol.slack(r2) {
                return Err(Error::contract("re-parsed record fails pivot containment"));
            }
        }
    }
    let radius = v["radius"]
        .as_f64()
        .ok_or_else(|| Error::contract("record radius missing"))?;
    let enlarged = v["o_enlarged"].as_bool().unwrap_or(false);
    if inst.points.len() <= verify_cap && v["mode"] != "oracle" {
        if enlarged {
            eprintln!("verify: oracle comparison skipped (pivot outside the witness overlap)");
        } else {
            let reference = strategy::strategy("oracle")
                .unwrap()
                .solve(&inst.points, if v["mode"] == "convex" { None } else { inst.o },
                       &SolveOptions::default())?;
            if (radius - reference.radius).abs() > 1e-9 * reference.radius.max(1.0) {
                return Err(Error::contract(format!(
                    "radius {radius} disagrees with the oracle {}",
                    reference.radius
                )));
            }
        }
    }
    Ok(())
}

fn cmd_decide(file: &str, r: f64, o_flag: Option<&str>, group_width: usize) -> Result<(), Error> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::invalid("decide needs a positive finite --r"));
    }
    let inst = load_instance(file, o_flag)?;
    let o = inst
        .o
        .ok_or_else(|| Error::invalid("decide needs a pivot: o directive or --o"))?;
    let t0 = Instant::now();
    let witness = decide_both_axes(&inst.points, o, r, group_width)?;
    let elapsed = t0.elapsed();
    print!("{}", decide_record(r, witness.as_ref()));
    eprintln!("decide: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    Ok(())
}

fn cmd_gen(kind: &str, n: usize, seed: u64, overlap: Option<f64>) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::invalid("gen needs n >= 1"));
    }
    let inst = match (kind, overlap) {
        ("two-cluster", Some(f)) => gen::TwoCluster { overlap: f }.generate(n, seed),
        (_, Some(_)) => return Err(Error::invalid("--overlap only applies to two-cluster")),
        (_, None) => gen::generator(kind)
            .ok_or_else(|| {
                let names: Vec<&str> = gen::generators().iter().map(|g| g.name()).collect();
                Error::invalid(format!("unknown kind {kind:?}; expected one of {}", names.join(", ")))
            })?
            .generate(n, seed),
    };
    print!("{}", write_instance(&inst.points, inst.o));
    Ok(())
}

fn median_ms(mut times: Vec<Duration>) -> f64 {
    times.sort();
    times[times.len() / 2].as_secs_f64() * 1e3
}

fn cmd_bench(kind: &str, sizes: &str, reps: usize, seed: u64, solve_cap: usize) -> Result<(), Error> {
    let g = gen::generator(kind).ok_or_else(|| Error::invalid(format!("unknown kind {kind:?}")))?;
    let sizes: Vec<usize> = sizes
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::invalid(format!("bad size {s:?}"))))
        .collect::<Result<_, _>>()?;
    if sizes.is_empty() || reps == 0 {
        return Err(Error::invalid("bench needs at least one size and one rep"));
    }
    println!("{:<8} {:<12} {:>9} {:>12}", "op", "kind", "n", "median_ms");
    for &n in &sizes {
        let mut decide_times = Vec::with_capacity(reps);
        let mut solve_times = Vec::with_capacity(reps);
        for rep in 0..reps {
            // One instance per (kind, n, rep), deterministic in the seed.
            let rep_seed = seed ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15) ^ rep as u64;
            let inst = g.generate(n, rep_seed);
            let o = inst.o.unwrap_or(Point::new(0.0, 0.0));
            // Time the infeasible side: a yes can return from the first
            // feasible split, an infeasible radius always runs the full
            // scan. Shrink until the answer flips to no (untimed).
            let mut r = 0.45 * smallest_enclosing_disk(&inst.points)?.radius();
            for _ in 0..60 {
                if decide_both_axes(&inst.points, o, r, 16)?.is_none() {
                    break;
                }
                r *= 0.65;
            }
            let t0 = Instant::now();
            decide_both_axes(&inst.points, o, r, 16)?;
            decide_times.push(t0.elapsed());
            if n <= solve_cap {
                let opts = SolveOptions { group_width: 16, mode: SearchMode::Bisect };
                let t0 = Instant::now();
                strategy::strategy("auto").unwrap().solve(&inst.points, inst.o, &opts)?;
                solve_times.push(t0.elapsed());
            }
        }
        println!("{:<8} {:<12} {:>9} {:>12.3}", "decide", kind, n, median_ms(decide_times));
        if !solve_times.is_empty() {
            println!("{:<8} {:<12} {:>9} {:>12.3}", "solve", kind, n, median_ms(solve_times));
        }
    }
    Ok(())
}
