use std::fs;
use std::path::Path;

use super::CliError;
use crate::inference::{IncidenceSeries, TemporalData};
use crate::model::{FinalSizeData, Record, Trajectory};

/// `%g`-style rendering with 6 significant digits.
pub fn format_g(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (5 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn open(path: &Path) -> Result<csv::Reader<fs::File>, CliError> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn malformed(path: &Path, line: u64, what: impl std::fmt::Display) -> CliError {
    CliError::input(format!("{}: line {line}: {what}", path.display()))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.position() {
        Some(pos) => malformed(path, pos.line(), &e),
        None if e.is_io_error() => CliError::io(format!("{}: {e}", path.display())),
        None => malformed(path, 1, &e),
    }
}

fn expect_header(path: &Path, rdr: &mut csv::Reader<fs::File>, allowed: &[&[&str]]) -> Result<usize, CliError> {
    let header = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    let names: Vec<&str> = header.iter().collect();
    allowed
        .iter()
        .find(|h| **h == names.as_slice())
        .map(|h| h.len())
        .ok_or_else(|| {
            let expected: Vec<String> = allowed.iter().map(|h| h.join(",")).collect();
            malformed(path, 1, format!("expected header {}, found {}", expected.join(" or "), names.join(",")))
        })
}

/// Parses every row into numbers, reporting the offending line on failure.
fn numeric_rows(path: &Path, allowed: &[&[&str]]) -> Result<Vec<(u64, Vec<f64>)>, CliError> {
    let mut rdr = open(path)?;
    let width = expect_header(path, &mut rdr, allowed)?;
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != width {
            return Err(malformed(path, line, format!("expected {width} fields, found {}", rec.len())));
        }
        let mut values = Vec::with_capacity(width);
        for field in rec.iter() {
            let v: f64 = field
                .parse()
                .map_err(|_| malformed(path, line, format!("not a number: {field:?}")))?;
            if !v.is_finite() {
                return Err(malformed(path, line, format!("not a finite number: {field:?}")));
            }
            values.push(v);
        }
        rows.push((line, values));
    }
    Ok(rows)
}

fn as_count(path: &Path, line: u64, v: f64, name: &str) -> Result<u64, CliError> {
    if v < 0.0 || v.fract() != 0.0 {
        return Err(malformed(path, line, format!("{name} must be a non-negative integer, found {v}")));
    }
    Ok(v as u64)
}

/// Single-record `n,s,r_tilde_s[,pi_hat]` file.
pub fn read_final_size(path: &Path) -> Result<FinalSizeData, CliError> {
    let rows = numeric_rows(path, &[&["n", "s", "r_tilde_s"], &["n", "s", "r_tilde_s", "pi_hat"]])?;
    let (line, v) = match rows.as_slice() {
        [row] => row,
        [] => return Err(malformed(path, 2, "missing data record")),
        [_, (line, _), ..] => return Err(malformed(path, *line, "expected a single data record")),
    };
    let mut data = FinalSizeData::new(as_count(path, *line, v[0], "n")?, v[1], v[2]);
    if let Some(pi) = v.get(3) {
        data = data.with_reporting_fraction(*pi);
    }
    Ok(data)
}

/// `time,cases` file.
pub fn read_incidence(path: &Path) -> Result<IncidenceSeries, CliError> {
    let rows = numeric_rows(path, &[&["time", "cases"]])?;
    let mut last = f64::NEG_INFINITY;
    for (line, v) in &rows {
        if !(v[0] > last) {
            return Err(malformed(path, *line, "times must be strictly increasing"));
        }
        if v[1] < 0.0 {
            return Err(malformed(path, *line, "cases must be >= 0"));
        }
        last = v[0];
    }
    let (times, counts) = rows.into_iter().map(|(_, v)| (v[0], v[1])).unzip();
    IncidenceSeries::new(times, counts).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// `t,S,I,R` file of counts.
pub fn read_trajectory(path: &Path) -> Result<Trajectory, CliError> {
    let rows = numeric_rows(path, &[&["t", "S", "I", "R"]])?;
    let mut records = Vec::with_capacity(rows.len());
    let mut last = f64::NEG_INFINITY;
    for (line, v) in rows {
        if !(v[0] > last) {
            return Err(malformed(path, line, "times must be strictly increasing"));
        }
        last = v[0];
        records.push(Record {
            t: v[0],
            s: as_count(path, line, v[1], "S")?,
            i: as_count(path, line, v[2], "I")?,
            r: as_count(path, line, v[3], "R")?,
        });
    }
    Ok(Trajectory::from_records(records))
}

/// One duration per line under a `duration` header.
pub fn read_durations(path: &Path) -> Result<Vec<f64>, CliError> {
    let rows = numeric_rows(path, &[&["duration"]])?;
    rows.into_iter()
        .map(|(line, v)| {
            if v[0] < 0.0 {
                Err(malformed(path, line, "durations must be >= 0"))
            } else {
                Ok(v[0])
            }
        })
        .collect()
}

pub fn read_temporal(trajectory: &Path, durations: Option<&Path>) -> Result<TemporalData, CliError> {
    let traj = read_trajectory(trajectory)?;
    let durations = match durations {
        Some(p) => read_durations(p)?,
        None => Vec::new(),
    };
    TemporalData::from_trajectory(&traj, durations)
        .map_err(|e| CliError::input(format!("{}: {e}", trajectory.display())))
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,S,I,R\n");
    for r in &traj.records {
        out.push_str(&format!("{},{},{},{}\n", r.t, r.s, r.i, r.r));
    }
    out
}

pub fn durations_csv(durations: &[f64]) -> String {
    let mut out = String::from("duration\n");
    for d in durations {
        out.push_str(&format!("{d}\n"));
    }
    out
}
