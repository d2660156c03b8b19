//! Run records, the JSON-lines store, and CSV export.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::format::sig6;

pub const SCHEMA_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Config keys that never influence results and stay out of the run id.
const NON_SEMANTIC_KEYS: [&str; 4] = ["partitions", "out", "format", "store"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub run_id: String,
    pub subcommand: String,
    pub version: String,
    pub config: Value,
    pub started_at_ms: u128,
    pub finished_at_ms: u128,
    pub payload: Payload,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub disc_zero: u64,
    pub unknown_verdicts: u64,
    pub numeric_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Census(CensusPayload),
    Fiber(FiberPayload),
    Reducible(ReduciblePayload),
    Pila(PilaPayload),
    OracleCubic(OraclePayload),
    Critical(CriticalPayload),
    Fit(FitPayload),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusPayload {
    pub n: usize,
    pub runs: Vec<CensusRun>,
    /// Smallest swept box constant from which `fields` no longer changes.
    pub stabilized_c: Option<String>,
    pub theorem_exp: f64,
    pub schmidt_exp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRun {
    pub c: String,
    pub checkpoints: Vec<CheckpointRow>,
    pub disc_zero: u64,
    pub unresolved_field_disc: u64,
    pub fields_are_proxy: bool,
    pub arithmetic_equivalence_risk: bool,
    /// Slope of `log fields` against `log X` over checkpoints with `fields >= 1`.
    pub fields_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointRow {
    pub x: u64,
    pub points_on_r: u64,
    pub an_polys: u64,
    pub classes: u64,
    pub fields: u64,
    pub unknown_verdicts: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberPayload {
    pub n: usize,
    pub base: Vec<String>,
    /// Coefficients of `p(y)`, lowest degree first.
    pub p: Vec<String>,
    pub geometrically_irreducible: bool,
    pub square_witness: Option<(String, Vec<String>)>,
    pub c: String,
    pub counts: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReduciblePayload {
    pub n: usize,
    pub counts: Vec<(u64, u64)>,
    pub slope: Option<f64>,
    pub hits: Vec<Vec<String>>,
    /// Per-`H` counts of bases with exactly the target fiber polynomial.
    pub target: Option<Vec<String>>,
    pub target_counts: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PilaPayload {
    pub n: usize,
    pub theorem_exp: String,
    pub schmidt_exp: String,
    pub malle_exp: String,
    pub pila_fiber_exp: String,
    pub log_power: u32,
    pub bound: Option<PilaBoundRow>,
    pub scan: Option<FiberScanRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PilaBoundRow {
    pub d: u32,
    pub b: f64,
    pub log10_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberScanRow {
    pub base: Vec<String>,
    pub c: String,
    pub counts: Vec<(u64, u64)>,
    pub slope: f64,
    pub within_pila_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OraclePayload {
    pub xmax: u64,
    pub count: u64,
    pub conductors: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPayload {
    pub n: usize,
    pub base: Vec<String>,
    /// `(re, im)` pairs.
    pub critical_values: Vec<(f64, f64)>,
    pub tolerance: f64,
    pub factorization_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitPayload {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
}

/// `sha256(subcommand, config without non-semantic keys, version)` in hex.
pub fn run_id(subcommand: &str, config: &Value) -> String {
    let mut semantic = config.clone();
    if let Value::Object(map) = &mut semantic {
        for key in NON_SEMANTIC_KEYS {
            map.remove(key);
        }
    }
    let canonical = serde_json::json!({
        "subcommand": subcommand,
        "config": semantic,
        "version": VERSION,
    });
    let digest = Sha256::digest(canonical.to_string().as_bytes());
    format!("{digest:x}")
}

pub fn append(record: &RunRecord, path: &Path) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(path, e))?;
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(path, e))?;
    let mut line = serde_json::to_string(record).map_err(|e| CliError::Domain(e.to_string()))?;
    line.push('\n');
    file.write_all(line.as_bytes()).map_err(|e| CliError::io(path, e))
}

/// All records in store order. A missing store is empty.
pub fn read_store(path: &Path) -> Result<Vec<RunRecord>, CliError> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(CliError::io(path, e)),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| CliError::Domain(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

pub const CSV_HEADER: [&str; 15] = [
    "run_id",
    "subcommand",
    "n",
    "c",
    "x",
    "points_on_r",
    "an_polys",
    "classes",
    "fields",
    "unknown_verdicts",
    "disc_zero",
    "count",
    "slope",
    "theorem_exp",
    "schmidt_exp",
];

#[derive(Default)]
struct Row {
    n: Option<usize>,
    c: Option<String>,
    x: Option<u64>,
    points_on_r: Option<u64>,
    an_polys: Option<u64>,
    classes: Option<u64>,
    fields: Option<u64>,
    unknown_verdicts: Option<u64>,
    disc_zero: Option<u64>,
    count: Option<u64>,
    slope: Option<f64>,
    theorem_exp: Option<f64>,
    schmidt_exp: Option<f64>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn optf(v: Option<f64>) -> String {
    v.map(sig6).unwrap_or_default()
}

fn rows(record: &RunRecord) -> Vec<Row> {
    match &record.payload {
        Payload::Census(p) => p
            .runs
            .iter()
            .flat_map(|run| {
                run.checkpoints.iter().map(move |cp| Row {
                    n: Some(p.n),
                    c: Some(run.c.clone()),
                    x: Some(cp.x),
                    points_on_r: Some(cp.points_on_r),
                    an_polys: Some(cp.an_polys),
                    classes: Some(cp.classes),
                    fields: Some(cp.fields),
                    unknown_verdicts: Some(cp.unknown_verdicts),
                    disc_zero: Some(run.disc_zero),
                    slope: run.fields_slope,
                    theorem_exp: Some(p.theorem_exp),
                    schmidt_exp: Some(p.schmidt_exp),
                    ..Row::default()
                })
            })
            .collect(),
        Payload::Fiber(p) => p
            .counts
            .iter()
            .map(|&(x, k)| Row {
                n: Some(p.n),
                c: Some(p.c.clone()),
                x: Some(x),
                count: Some(k),
                ..Row::default()
            })
            .collect(),
        Payload::Reducible(p) => p
            .counts
            .iter()
            .map(|&(h, k)| Row {
                n: Some(p.n),
                x: Some(h),
                count: Some(k),
                slope: p.slope,
                ..Row::default()
            })
            .collect(),
        Payload::Pila(p) => {
            let (theorem, schmidt) = (ratio_f64(&p.theorem_exp), ratio_f64(&p.schmidt_exp));
            match &p.scan {
                Some(scan) => scan
                    .counts
                    .iter()
                    .map(|&(x, k)| Row {
                        n: Some(p.n),
                        c: Some(scan.c.clone()),
                        x: Some(x),
                        count: Some(k),
                        slope: Some(scan.slope),
                        theorem_exp: theorem,
                        schmidt_exp: schmidt,
                        ..Row::default()
                    })
                    .collect(),
                None => vec![Row {
                    n: Some(p.n),
                    theorem_exp: theorem,
                    schmidt_exp: schmidt,
                    ..Row::default()
                }],
            }
        }
        Payload::OracleCubic(p) => vec![Row {
            n: Some(3),
            x: Some(p.xmax),
            fields: Some(p.count),
            count: Some(p.count),
            ..Row::default()
        }],
        Payload::Critical(p) => vec![Row {
            n: Some(p.n),
            count: Some(p.critical_values.len() as u64),
            ..Row::default()
        }],
        Payload::Fit(p) => vec![Row {
            count: Some(p.points.len() as u64),
            slope: Some(p.slope),
            ..Row::default()
        }],
    }
}

fn ratio_f64(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((a, b)) => Some(a.parse::<f64>().ok()? / b.parse::<f64>().ok()?),
        None => s.parse().ok(),
    }
}

/// CSV with the fixed column order; an empty slice gives the header alone.
pub fn to_csv(records: &[RunRecord]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Domain(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for record in records {
        for r in rows(record) {
            w.write_record([
                record.run_id.clone(),
                record.subcommand.clone(),
                opt(&r.n),
                opt(&r.c),
                opt(&r.x),
                opt(&r.points_on_r),
                opt(&r.an_polys),
                opt(&r.classes),
                opt(&r.fields),
                opt(&r.unknown_verdicts),
                opt(&r.disc_zero),
                opt(&r.count),
                optf(r.slope),
                optf(r.theorem_exp),
                optf(r.schmidt_exp),
            ])
            .map_err(csv_err)?;
        }
    }
    w.into_inner().map_err(|e| CliError::Domain(e.to_string()))
}

/// One JSON object per line.
pub fn to_json_lines(records: &[RunRecord]) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(|e| CliError::Domain(e.to_string()))?;
        out.push(b'\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_id_ignores_partitions() {
        let a = serde_json::json!({"n": 3, "xmax": 100, "partitions": 1});
        let b = serde_json::json!({"partitions": 4, "xmax": 100, "n": 3});
        let c = serde_json::json!({"n": 3, "xmax": 101, "partitions": 1});
        assert_eq!(run_id("census", &a), run_id("census", &b));
        assert_ne!(run_id("census", &a), run_id("census", &c));
        assert_ne!(run_id("census", &a), run_id("fiber", &a));
        assert_eq!(run_id("census", &a).len(), 64);
    }

    #[test]
    fn empty_export_is_header_only() {
        let csv = String::from_utf8(to_csv(&[]).unwrap()).unwrap();
        assert_eq!(csv, format!("{}\n", CSV_HEADER.join(",")));
    }
}
