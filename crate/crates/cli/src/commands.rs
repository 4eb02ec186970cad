use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use zassenhaus_core::convergence::geometric_grid;
use zassenhaus_core::format::{boundary_to_csv, series_to_json, series_to_latex, series_to_text};
use zassenhaus_core::verify::verify_matrix_series;
use zassenhaus_core::{
    bayen_radius, converges, domain_boundary, left_oriented, suzuki_radius, verify_associative,
    verify_independence, Error, Orientation, SeriesEngine, VerificationReport,
};

use crate::{Format, ModeArg};

/// Matrix oracle sample size.
const MATRIX_DIM: usize = 4;
const MATRIX_TRIALS: usize = 5;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    VerificationFailed(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::VerificationFailed(m) | CliError::Internal(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::InvalidIndex(_) | Error::Parse { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn emit(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn require_degree(max_degree: usize) -> CliResult {
    if max_degree < 2 {
        return Err(CliError::Usage(format!(
            "--max-degree must be at least 2, got {max_degree}"
        )));
    }
    Ok(())
}

pub fn compute(
    max_degree: usize,
    format: Format,
    orientation: Orientation,
    out: Option<&Path>,
) -> CliResult {
    require_degree(max_degree)?;
    let mut series = zassenhaus_core::zassenhaus_series(max_degree)?;
    if let Some((n, _)) = series.iter().find(|(n, c)| !c.is_homogeneous(*n)) {
        return Err(CliError::Internal(format!("C_{n} is not homogeneous")));
    }
    if orientation == Orientation::Left {
        series = left_oriented(&series);
    }
    let text = match format {
        Format::Text => series_to_text(&series),
        Format::Json => series_to_json(&series) + "\n",
        Format::Latex => series_to_latex(&series),
    };
    emit(&text, out)
}

pub fn verify(max_degree: usize, mode: ModeArg, seed: u64, out: Option<&Path>) -> CliResult {
    require_degree(max_degree)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    if matches!(mode, ModeArg::Associative | ModeArg::All) {
        reports.push(verify_associative(max_degree)?);
    }
    if matches!(mode, ModeArg::Matrix | ModeArg::All) {
        let series = zassenhaus_core::zassenhaus_series(max_degree)?;
        reports.push(verify_matrix_series(
            &series,
            MATRIX_DIM,
            MATRIX_TRIALS,
            seed,
        )?);
    }
    if matches!(mode, ModeArg::Independence | ModeArg::All) {
        reports.push(verify_independence(max_degree)?);
    }
    let json = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .map_err(|e| CliError::Internal(e.to_string()))?;
    emit(&(json + "\n"), out)?;

    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    if failed.is_empty() {
        return Ok(());
    }
    let summary = failed
        .iter()
        .map(|r| match r.lowest_failing_degree() {
            Some(d) => format!("{:?} oracle failed, lowest failing degree {d}", r.mode),
            None => format!("{:?} oracle failed", r.mode),
        })
        .collect::<Vec<_>>()
        .join("; ");
    Err(CliError::VerificationFailed(summary))
}

fn parse_grid(spec: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--grid expects lo:hi:count with 0 < lo <= hi, got {spec:?}"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && lo <= hi && hi.is_finite() && count > 0) {
        return Err(bad());
    }
    Ok((lo, hi, count))
}

fn parse_point(spec: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--point expects x,y, got {spec:?}"));
    let (x, y) = spec.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    Ok((x, y))
}

fn radii_lines() -> Result<String, CliError> {
    Ok(format!(
        "suzuki_radius {:.9}\nbayen_radius {:.9}\n",
        suzuki_radius(),
        bayen_radius()?
    ))
}

pub fn domain(
    n_max: usize,
    grid: &str,
    point: Option<&str>,
    tolerance: f64,
    out: Option<&Path>,
) -> CliResult {
    if let Some(p) = point {
        let (x, y) = parse_point(p)?;
        let v = converges(x, y, n_max)?;
        let verdict = if v.convergent {
            "convergent, ratio<1"
        } else {
            "divergent, ratio>=1"
        };
        let text = format!(
            "{verdict}\nx={x} y={y} n_max={n_max} ratio={:?}\ntrailing_ratios={:?}\n",
            v.final_ratio, v.trailing_ratios
        );
        return emit(&text, out);
    }
    let (lo, hi, count) = parse_grid(grid)?;
    let xs = geometric_grid(lo, hi, count);
    let points = domain_boundary(&xs, n_max, tolerance)?;
    let csv = boundary_to_csv(&points);
    let radii = radii_lines()?;
    match out {
        Some(path) => {
            fs::write(path, csv)?;
            print!("{radii}");
        }
        None => {
            print!("{csv}");
            eprint!("{radii}");
        }
    }
    Ok(())
}

pub fn radii() -> CliResult {
    print!("{}", radii_lines()?);
    Ok(())
}

#[derive(Serialize)]
struct BenchRow {
    degree: usize,
    term_count: usize,
    cumulative_seconds: f64,
}

#[derive(Serialize)]
struct BenchReport {
    max_degree: usize,
    rows: Vec<BenchRow>,
}

pub fn bench(max_degree: usize, out: Option<&Path>) -> CliResult {
    require_degree(max_degree)?;
    let mut engine = SeriesEngine::new();
    let start = Instant::now();
    let mut rows = Vec::with_capacity(max_degree - 1);
    for degree in 2..=max_degree {
        let term_count = engine.next_term()?.len();
        rows.push(BenchRow {
            degree,
            term_count,
            cumulative_seconds: start.elapsed().as_secs_f64(),
        });
    }
    let json = serde_json::to_string_pretty(&BenchReport { max_degree, rows })
        .map_err(|e| CliError::Internal(e.to_string()))?;
    emit(&(json + "\n"), out)
}
