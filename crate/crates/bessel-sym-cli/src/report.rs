//! Report serialisation.
//!
//! JSON: one top-level object `{"config": …, "results": […], "summary": …}`
//! where each result carries identity, params, lhs, rhs, abs_err, rel_err,
//! cond, pass, notes. Skipped grid points keep their identity/params with
//! nulls for the numeric fields and the skip reason in the notes.
//!
//! CSV: header `identity,m,n,z,x,s,a,b,lambda,lhs,rhs,abs_err,rel_err,cond,pass`
//! with empty cells for parameters an identity does not use, RFC-4180
//! quoting, and an empty pass cell for skipped rows.
//!
//! Emission is byte-deterministic: field order is fixed by struct order,
//! floats print via the shortest round-trip form, and the wall-clock
//! duration deliberately stays out of the byte stream (it goes to stderr).

use bessel_sym_core::identities::{IdentityInstance, ParamValue};
use serde::{Deserialize, Serialize};

use crate::config::{IntRange, OutputFormat, Scalar, SweepConfig};
use crate::sweep::{Outcome, Summary, SweepRecord, SweepReport};

/// Config echo embedded in reports. Delivery details (output path, jobs)
/// are omitted so reports compare equal across parallelism degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub identities: Vec<String>,
    pub m: Option<IntRange>,
    pub n: Option<IntRange>,
    pub z: Option<Vec<f64>>,
    pub x: Option<Vec<f64>>,
    pub s: Option<Vec<f64>>,
    pub a: Option<Vec<f64>>,
    pub b: Option<Vec<f64>>,
    pub lambda: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub format: OutputFormat,
}

fn grid_values(grid: &Option<Vec<Scalar>>) -> Option<Vec<f64>> {
    grid.as_ref().map(|g| g.iter().map(|s| s.value).collect())
}

impl ConfigEcho {
    pub fn from_config(config: &SweepConfig) -> Self {
        ConfigEcho {
            identities: config.identities.iter().map(|i| i.name().into()).collect(),
            m: config.m,
            n: config.n,
            z: grid_values(&config.z),
            x: grid_values(&config.x),
            s: grid_values(&config.s),
            a: grid_values(&config.a),
            b: grid_values(&config.b),
            lambda: grid_values(&config.lambda),
            tol: config.tol,
            format: config.format,
        }
    }
}

/// One JSON result row; numeric fields are null for skipped points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub identity: String,
    pub params: IdentityInstance,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub cond: Option<f64>,
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// Non-finite floats have no JSON representation; map them to null rather
/// than letting the serializer choose.
fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl ResultRow {
    pub fn from_record(record: &SweepRecord) -> Self {
        match &record.outcome {
            Outcome::Evaluated(r) => ResultRow {
                identity: record.identity.name().into(),
                params: r.params.clone(),
                lhs: finite(r.lhs),
                rhs: finite(r.rhs),
                abs_err: finite(r.abs_err),
                rel_err: finite(r.rel_err),
                cond: finite(r.cond),
                pass: Some(r.pass),
                notes: r.notes.clone(),
            },
            Outcome::Skipped { reason } => ResultRow {
                identity: record.identity.name().into(),
                params: record.params.clone(),
                lhs: None,
                rhs: None,
                abs_err: None,
                rel_err: None,
                cond: None,
                pass: None,
                notes: Some(format!("skipped: {reason}")),
            },
        }
    }
}

/// The full JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub config: ConfigEcho,
    pub results: Vec<ResultRow>,
    pub summary: Summary,
}

impl JsonReport {
    pub fn from_report(report: &SweepReport) -> Self {
        JsonReport {
            config: ConfigEcho::from_config(&report.config),
            results: report.records.iter().map(ResultRow::from_record).collect(),
            summary: report.summary,
        }
    }
}

/// Shortest round-trip float form, scientific only when the plain form
/// would sprawl.
fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs();
    if (1e-4..1e15).contains(&magnitude) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.into()
    }
}

fn csv_opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn csv_param(v: &Option<ParamValue>) -> String {
    match v {
        None => String::new(),
        Some(ParamValue::Real(x)) => fmt_f64(*x),
        Some(ParamValue::Rational(r)) => format!("{}/{}", r.numer(), r.denom()),
    }
}

fn csv_row(row: &ResultRow) -> String {
    let p = &row.params;
    let fields = [
        row.identity.clone(),
        p.m.map(|v| v.to_string()).unwrap_or_default(),
        p.n.map(|v| v.to_string()).unwrap_or_default(),
        csv_opt_f64(p.z),
        csv_opt_f64(p.x),
        csv_opt_f64(p.s),
        csv_param(&p.a),
        csv_opt_f64(p.b),
        csv_opt_f64(p.lambda),
        csv_opt_f64(row.lhs),
        csv_opt_f64(row.rhs),
        csv_opt_f64(row.abs_err),
        csv_opt_f64(row.rel_err),
        csv_opt_f64(row.cond),
        row.pass.map(|b| b.to_string()).unwrap_or_default(),
    ];
    fields
        .iter()
        .map(|f| csv_escape(f))
        .collect::<Vec<_>>()
        .join(",")
}

pub const CSV_HEADER: &str = "identity,m,n,z,x,s,a,b,lambda,lhs,rhs,abs_err,rel_err,cond,pass";

/// Serialise the report in the requested format.
pub fn emit_report(report: &SweepReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let doc = JsonReport::from_report(report);
            let mut bytes =
                serde_json::to_vec_pretty(&doc).expect("report serialisation is infallible");
            bytes.push(b'\n');
            bytes
        }
        OutputFormat::Csv => {
            let mut out = String::with_capacity(64 * (report.records.len() + 1));
            out.push_str(CSV_HEADER);
            out.push('\n');
            for record in &report.records {
                out.push_str(&csv_row(&ResultRow::from_record(record)));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_grid, SweepConfig};
    use crate::sweep::run_sweep;
    use bessel_sym_core::identities::Identity;

    fn tiny_report() -> SweepReport {
        let cfg = SweepConfig {
            identities: vec![Identity::Theorem1],
            m: Some(IntRange::parse("1").unwrap()),
            n: Some(IntRange::parse("2").unwrap()),
            z: Some(parse_grid("1.0").unwrap()),
            ..Default::default()
        };
        run_sweep(&cfg).unwrap()
    }

    #[test]
    fn empty_result_list_is_valid_json() {
        let mut report = tiny_report();
        report.records.clear();
        report.summary = Summary::default();
        let bytes = emit_report(&report, OutputFormat::Json);
        let doc: JsonReport = serde_json::from_slice(&bytes).unwrap();
        assert!(doc.results.is_empty());
        assert_eq!(doc.summary.total, 0);
    }

    #[test]
    fn single_theorem1_csv_row_has_empty_unused_columns() {
        let report = tiny_report();
        let bytes = emit_report(&report, OutputFormat::Csv);
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let row = lines.next().unwrap();
        // identity,m,n,z then x,s,a,b,lambda empty
        assert!(row.starts_with("theorem1,1,2,1,,,,,,"), "{row}");
        assert!(row.ends_with(",true"), "{row}");
        assert_eq!(row.split(',').count(), 15);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let report = tiny_report();
        let bytes = emit_report(&report, OutputFormat::Json);
        let doc: JsonReport = serde_json::from_slice(&bytes).unwrap();
        let mut again = serde_json::to_vec_pretty(&doc).unwrap();
        again.push(b'\n');
        assert_eq!(bytes, again);
    }

    #[test]
    fn rational_params_render_as_fractions() {
        let cfg = SweepConfig {
            identities: vec![Identity::Eq18],
            m: Some(IntRange::parse("0..1").unwrap()),
            n: Some(IntRange::parse("0..1").unwrap()),
            a: Some(parse_grid("7/3").unwrap()),
            ..Default::default()
        };
        let report = run_sweep(&cfg).unwrap();
        let csv = String::from_utf8(emit_report(&report, OutputFormat::Csv)).unwrap();
        assert!(csv.contains(",7/3,"), "{csv}");
        let json = String::from_utf8(emit_report(&report, OutputFormat::Json)).unwrap();
        assert!(json.contains("\"a\": \"7/3\""), "{json}");
    }

    #[test]
    fn float_formatting_is_compact_and_lossless() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(-3.25), "-3.25");
        assert_eq!(fmt_f64(4.659504595597239e19), "4.659504595597239e19");
        assert_eq!(fmt_f64(1e-7), "1e-7");
        for v in [0.1, -7.25e-9, 3.0e22, 123456.789] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_quoting_follows_rfc4180() {
        assert_eq!(csv_escape("plain"), "plain");
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
