//! State files and report serialization.
//!
//! States travel as JSON: { "dim_a": int, "dim_b": int, "matrix": [[[re,
//! im], ...], ...] }, row-major, A-major ordering. The writer emits every
//! float with 17 significant digits so write-then-read reproduces the
//! matrix exactly and identical inputs produce byte-identical files.
//! Reports serialize to JSON (machine-readable, full structure) or CSV
//! rows with a fixed documented column order for plotting.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::correlations::CorrelationReport;
use crate::linalg::{c64, CMatrix};
use crate::state::DensityMatrix;

/// Failure modes are separated because the command line maps them to
/// different exit codes: unreadable file (I/O), unparseable or
/// wrong-shape content (input), and a parsed matrix that is not a state
/// (physics).
#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Parse(serde_json::Error),
    Shape(String),
    Physics(crate::error::Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "cannot read state file: {e}"),
            LoadError::Parse(e) => write!(f, "malformed state JSON: {e}"),
            LoadError::Shape(msg) => write!(f, "state JSON has wrong shape: {msg}"),
            LoadError::Physics(e) => write!(f, "matrix is not a valid state: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

#[derive(Deserialize)]
struct StateFile {
    dim_a: usize,
    dim_b: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

pub fn state_from_json(text: &str) -> Result<DensityMatrix, LoadError> {
    let file: StateFile = serde_json::from_str(text).map_err(LoadError::Parse)?;
    let n = file.dim_a * file.dim_b;
    if n == 0 {
        return Err(LoadError::Shape("dimensions must be positive".into()));
    }
    if file.matrix.len() != n {
        return Err(LoadError::Shape(format!(
            "expected {n} rows for dims {}x{}, found {}",
            file.dim_a,
            file.dim_b,
            file.matrix.len()
        )));
    }
    let mut m = CMatrix::zeros(n, n);
    for (i, row) in file.matrix.iter().enumerate() {
        if row.len() != n {
            return Err(LoadError::Shape(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, &[real, imag]) in row.iter().enumerate() {
            if !real.is_finite() || !imag.is_finite() {
                return Err(LoadError::Shape(format!(
                    "entry ({i}, {j}) is not finite"
                )));
            }
            m[(i, j)] = c64(real, imag);
        }
    }
    DensityMatrix::new(file.dim_a, file.dim_b, m).map_err(LoadError::Physics)
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    let n = rho.dim();
    let m = rho.matrix();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"dim_a\": {},", rho.dim_a());
    let _ = writeln!(out, "  \"dim_b\": {},", rho.dim_b());
    out.push_str("  \"matrix\": [\n");
    for i in 0..n {
        out.push_str("    [");
        for j in 0..n {
            if j > 0 {
                out.push_str(", ");
            }
            let v = m[(i, j)];
            let _ = write!(out, "[{:.16e}, {:.16e}]", v.re, v.im);
        }
        out.push(']');
        out.push_str(if i + 1 < n { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn load_state(path: &Path) -> Result<DensityMatrix, LoadError> {
    let text = fs::read_to_string(path).map_err(LoadError::Io)?;
    state_from_json(&text)
}

pub fn save_state(path: &Path, rho: &DensityMatrix) -> std::io::Result<()> {
    fs::write(path, state_to_json(rho))
}

pub fn report_to_json(report: &CorrelationReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

/// Fixed CSV column order. `with_param` adds the sweep's `param` column
/// after state_id; single-state reports omit it.
pub fn report_csv_header(n_params: usize, with_param: bool) -> String {
    let mut cols = vec!["state_id".to_string()];
    if with_param {
        cols.push("param".to_string());
    }
    cols.extend(["distance", "total", "classical", "quantum"].map(String::from));
    for k in 0..n_params {
        cols.push(format!("theta{k}"));
    }
    cols.extend(["restarts_used", "converged"].map(String::from));
    cols.join(",")
}

pub fn report_csv_row(report: &CorrelationReport, param: Option<f64>) -> String {
    let mut cols = vec![csv_field(&report.state_id)];
    if let Some(p) = param {
        cols.push(format!("{p:.16e}"));
    }
    cols.push(report.distance.name().to_string());
    for v in [report.total, report.classical, report.quantum] {
        cols.push(format!("{v:.16e}"));
    }
    for t in &report.best_params {
        cols.push(format!("{t:.16e}"));
    }
    cols.push(report.optimizer.restarts_used.to_string());
    cols.push(report.optimizer.converged.to_string());
    cols.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{quantum_correlations, OptimizerConfig};
    use crate::distance::Distance;
    use crate::linalg::max_abs_diff;
    use crate::state::{make_bell, random_density};

    #[test]
    fn round_trip_is_exact() {
        for seed in [1u64, 2, 3] {
            let rho = random_density(2, 3, 4, seed).unwrap();
            let back = state_from_json(&state_to_json(&rho)).unwrap();
            assert_eq!(back.dim_a(), 2);
            assert_eq!(back.dim_b(), 3);
            // 17 significant digits reproduce every double exactly
            assert_eq!(max_abs_diff(rho.matrix(), back.matrix()), 0.0);
        }
    }

    #[test]
    fn writer_is_deterministic() {
        let rho = random_density(3, 2, 5, 9).unwrap();
        assert_eq!(state_to_json(&rho), state_to_json(&rho));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            state_from_json("{ not json"),
            Err(LoadError::Parse(_))
        ));
    }

    #[test]
    fn wrong_shape_is_a_shape_error() {
        let text = r#"{"dim_a": 2, "dim_b": 2, "matrix": [[[1.0, 0.0]]]}"#;
        assert!(matches!(state_from_json(text), Err(LoadError::Shape(_))));
    }

    #[test]
    fn invalid_physics_is_a_physics_error() {
        // trace 2 violates unit trace
        let text = r#"{"dim_a": 1, "dim_b": 2, "matrix": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}"#;
        assert!(matches!(
            state_from_json(text),
            Err(LoadError::Physics(_))
        ));
    }

    #[test]
    fn csv_layout_is_stable() {
        assert_eq!(
            report_csv_header(2, true),
            "state_id,param,distance,total,classical,quantum,theta0,theta1,restarts_used,converged"
        );
        let report = quantum_correlations(
            Distance::Trace,
            &make_bell(),
            &OptimizerConfig::quick(0),
        )
        .unwrap()
        .with_state_id("bell");
        let row = report_csv_row(&report, Some(0.5));
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], "bell");
        assert_eq!(fields[2], "trace");
        assert_eq!(fields.len(), 10);
        let json = report_to_json(&report);
        assert!(json.contains("\"state_id\": \"bell\""));
    }

    #[test]
    fn commas_in_state_ids_are_quoted() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
