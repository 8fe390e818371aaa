use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::{BoundRecord, Experiment, ExperimentConfig, Scheme};
use crate::error::Result;

pub const CSV_HEADER: [&str; 13] = [
    "experiment",
    "trial",
    "seed",
    "alpha",
    "beta",
    "norm_sq",
    "exact",
    "upper",
    "lower",
    "upper_applicable",
    "lower_applicable",
    "violation",
    "imag_discarded_max",
];

const SIGNIFICANT: i32 = 12;

/// C-style `%.12g`: 12 significant digits, trailing zeros removed, exponent
/// form outside `1e-4 ≤ |x| < 1e12`.
pub fn format_g(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (SIGNIFICANT - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..SIGNIFICANT).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let fixed = format!("{:.*}", (SIGNIFICANT - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_g).unwrap_or_default()
}

/// Writes the header and one row per record, in trial order.
pub fn write_csv<W: Write>(records: &[BoundRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let mut sorted: Vec<&BoundRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.trial);
    for r in sorted {
        w.write_record([
            r.experiment.id().to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            format_g(r.alpha),
            format_g(r.beta),
            format_g(r.norm_sq),
            format_g(r.exact),
            opt(r.upper),
            opt(r.lower),
            r.upper_applicable.to_string(),
            r.lower_applicable.to_string(),
            r.violation.to_string(),
            format_g(r.imag_discarded_max),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[BoundRecord], path: impl AsRef<Path>) -> Result<()> {
    let file = BufWriter::new(File::create(path)?);
    write_csv(records, file)
}

/// Machine-readable summary of a run and every flagged row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub experiment: Experiment,
    pub trials: usize,
    pub seed: u64,
    pub lambda: Option<f64>,
    pub scheme: Scheme,
    /// Convention used for the complex trace in the Tsallis lower bound.
    pub convention: &'static str,
    pub upper_applicable: usize,
    pub lower_applicable: usize,
    pub imag_discarded_max: f64,
    pub violation_count: usize,
    pub violations: Vec<BoundRecord>,
}

impl ViolationReport {
    pub fn from_records(cfg: &ExperimentConfig, records: &[BoundRecord]) -> Self {
        let violations: Vec<BoundRecord> =
            records.iter().filter(|r| r.violation).cloned().collect();
        Self {
            experiment: cfg.experiment,
            trials: records.len(),
            seed: cfg.seed,
            lambda: cfg.lambda,
            scheme: cfg.scheme,
            convention: "real",
            upper_applicable: records.iter().filter(|r| r.upper_applicable).count(),
            lower_applicable: records.iter().filter(|r| r.lower_applicable).count(),
            imag_discarded_max: records
                .iter()
                .map(|r| r.imag_discarded_max)
                .fold(0.0, f64::max),
            violation_count: violations.len(),
            violations,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xharness::run_experiment;

    #[test]
    fn format_matches_c_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (-2.25, "-2.25"),
            (1.0 / 3.0, "0.333333333333"),
            (123456.789, "123456.789"),
            (1e-5, "1e-05"),
            (1.5e-7, "1.5e-07"),
            (0.0001, "0.0001"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (9.9999999999999, "10"),
            (std::f64::consts::PI, "3.14159265359"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g(x), s, "{x}");
        }
    }

    #[test]
    fn empty_records_give_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), CSV_HEADER.join(",") + "\n");
    }

    #[test]
    fn not_applicable_fields_are_empty() {
        let cfg = ExperimentConfig::new(Experiment::TsallisTwoQubit, 3)
            .lambda(0.3)
            .trials(2);
        let mut buf = Vec::new();
        write_csv(&run_experiment(&cfg).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields.len(), 13);
        assert_eq!(fields[8], "");
        assert_eq!(&fields[9..12], ["true", "false", "false"]);
    }

    #[test]
    fn report_is_valid_json() {
        let cfg = ExperimentConfig::new(Experiment::L1OneQubit, 1).trials(3);
        let recs = run_experiment(&cfg).unwrap();
        let report = ViolationReport::from_records(&cfg, &recs);
        let v: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        assert_eq!(v["experiment"], "l1-1q");
        assert_eq!(v["violation_count"], 0);
        assert_eq!(v["trials"], 3);
    }
}
