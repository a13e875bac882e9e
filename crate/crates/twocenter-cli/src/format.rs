//! Instance file and solution record I/O.
//!
//! Instance files are plain text, one item per line:
//!
//! ```text
//! planar2center v1
//! o: 2.5000000000000000e-1 0.0000000000000000e0
//! 1.0000000000000000e0 2.0000000000000000e0
//! ...
//! ```
//!
//! The header line is mandatory, the `o:` pivot directive is optional, and
//! every other nonempty line is one point. Malformed lines are rejected with
//! their line number. Numbers are printed with 17 significant digits so a
//! print-parse round trip is lossless.
//!
//! Solution records are single JSON objects with a fixed key order and the
//! same number format. Timing goes to stderr, never into the record, so
//! identical inputs produce byte-identical records.

use std::fmt::Write as _;

use twocenter::decision::{Axis, DecideWitness};
use twocenter::{Disk, Point, TwoCenterSolution};

pub const HEADER: &str = "planar2center v1";

#[derive(Debug)]
pub struct InstanceFile {
    pub points: Vec<Point>,
    pub o: Option<Point>,
}

/// 17 significant digits; parses back to the identical f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_instance(points: &[Point], o: Option<Point>) -> String {
    let mut out = String::with_capacity(44 * (points.len() + 2));
    out.push_str(HEADER);
    out.push('\n');
    if let Some(o) = o {
        let _ = writeln!(out, "o: {} {}", fmt_f64(o.x), fmt_f64(o.y));
    }
    for p in points {
        let _ = writeln!(out, "{} {}", fmt_f64(p.x), fmt_f64(p.y));
    }
    out
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, String> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim_end() == HEADER => {}
        Some((_, first)) => {
            return Err(format!("line 1: expected header {HEADER:?}, found {first:?}"))
        }
        None => return Err("line 1: empty input, expected header".into()),
    }
    let mut points = Vec::new();
    let mut o = None;
    for (idx, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        if let Some(rest) = line.strip_prefix("o:") {
            if o.is_some() {
                return Err(format!("line {lineno}: duplicate o directive"));
            }
            o = Some(parse_point(rest.trim(), lineno)?);
        } else {
            points.push(parse_point(line, lineno)?);
        }
    }
    Ok(InstanceFile { points, o })
}

fn parse_point(s: &str, lineno: usize) -> Result<Point, String> {
    let mut it = s.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(format!("line {lineno}: expected \"x y\", found {s:?}"));
    };
    let x: f64 = a.parse().map_err(|_| format!("line {lineno}: bad number {a:?}"))?;
    let y: f64 = b.parse().map_err(|_| format!("line {lineno}: bad number {b:?}"))?;
    if !x.is_finite() || !y.is_finite() {
        return Err(format!("line {lineno}: non-finite coordinate"));
    }
    Ok(Point::new(x, y))
}

fn axis_json(axis: Option<Axis>) -> &'static str {
    match axis {
        Some(Axis::X) => "\"x\"",
        Some(Axis::Y) => "\"y\"",
        None => "null",
    }
}

fn disk_json(d: &Disk) -> String {
    format!(
        "{{\"x\": {}, \"y\": {}, \"radius\": {}}}",
        fmt_f64(d.center.x),
        fmt_f64(d.center.y),
        fmt_f64(d.radius)
    )
}

pub fn solution_record(sol: &TwoCenterSolution, mode: &str, n: usize) -> String {
    let witness = match sol.witness {
        Some((i, j)) => format!("[{i}, {j}]"),
        None => "null".into(),
    };
    let partition: Vec<String> = sol.partition.iter().map(u8::to_string).collect();
    format!(
        "{{\n  \"mode\": \"{mode}\",\n  \"n\": {n},\n  \"radius\": {},\n  \
         \"disk1\": {},\n  \"disk2\": {},\n  \"partition\": [{}],\n  \
         \"axis\": {},\n  \"witness\": {witness},\n  \"o_enlarged\": {}\n}}\n",
        fmt_f64(sol.radius),
        disk_json(&sol.d1),
        disk_json(&sol.d2),
        partition.join(", "),
        axis_json(sol.axis),
        sol.o_enlarged,
    )
}

pub fn decide_record(r: f64, w: Option<&DecideWitness>) -> String {
    match w {
        Some(w) => format!(
            "{{\"r\": {}, \"feasible\": true, \"axis\": {}, \"i\": {}, \"j\": {}}}\n",
            fmt_f64(r),
            axis_json(Some(w.axis)),
            w.i,
            w.j
        ),
        None => format!("{{\"r\": {}, \"feasible\": false}}\n", fmt_f64(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_round_trip_is_lossless() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI, 2.2250738585072014e-308, 1e300] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn instance_round_trip() {
        let pts = vec![Point::new(0.1, -2.5), Point::new(1.0 / 3.0, 7e-11)];
        let o = Some(Point::new(0.25, 0.0));
        let text = write_instance(&pts, o);
        let parsed = parse_instance(&text).unwrap();
        assert_eq!(parsed.points, pts);
        assert_eq!(parsed.o, o);
        let again = write_instance(&parsed.points, parsed.o);
        assert_eq!(text, again);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(parse_instance("nope\n").unwrap_err().starts_with("line 1"));
        let e = parse_instance("planar2center v1\n1 2\nthree four\n").unwrap_err();
        assert!(e.starts_with("line 3"), "{e}");
        let e = parse_instance("planar2center v1\no: 1 2\no: 3 4\n").unwrap_err();
        assert!(e.contains("duplicate"), "{e}");
        let e = parse_instance("planar2center v1\n1 2 3\n").unwrap_err();
        assert!(e.starts_with("line 2"), "{e}");
        let e = parse_instance("planar2center v1\ninf 0\n").unwrap_err();
        assert!(e.contains("non-finite"), "{e}");
    }

    #[test]
    fn records_are_valid_json() {
        let sol = TwoCenterSolution {
            radius: 0.5,
            d1: Disk::new(Point::new(0.5, 0.0), 0.5),
            d2: Disk::new(Point::new(0.5, 1.0), 0.5),
            partition: vec![0, 0, 1, 1],
            axis: Some(Axis::X),
            witness: Some((1, 2)),
            o_enlarged: false,
        };
        let rec = solution_record(&sol, "restricted", 4);
        let v: serde_json::Value = serde_json::from_str(&rec).unwrap();
        assert_eq!(v["radius"].as_f64().unwrap(), 0.5);
        assert_eq!(v["partition"].as_array().unwrap().len(), 4);
        assert_eq!(v["axis"], "x");
        let d = decide_record(1.25, None);
        let v: serde_json::Value = serde_json::from_str(&d).unwrap();
        assert_eq!(v["feasible"], false);
    }
}
