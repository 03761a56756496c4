//! CSV + JSON report emission.
//!
//! Numbers are serialized with 17 significant digits so every value
//! round-trips; rows are emitted in a fixed case order and the files use
//! UTF-8 with LF endings, making identical runs byte-identical.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

pub const CSV_HEADER: &str = "case,form,nu,lambda,mu,gamma2,gamma,kernel_u,kernel_v,method";

/// 17 significant digits.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub struct Row {
    pub case_label: String,
    pub form: String,
    pub nu: Option<f64>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    pub gamma2: f64,
    pub gamma: f64,
    pub kernel_u: usize,
    pub kernel_v: usize,
    pub method: String,
}

impl Row {
    fn to_csv(&self) -> String {
        let opt = |v: &Option<f64>| v.map(g17).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.case_label,
            self.form,
            opt(&self.nu),
            opt(&self.lambda),
            opt(&self.mu),
            g17(self.gamma2),
            g17(self.gamma),
            self.kernel_u,
            self.kernel_v,
            self.method
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub max_gamma2: f64,
    pub bound: Option<f64>,
    pub bound_satisfied: Option<bool>,
    pub seed: u64,
}

#[derive(Debug)]
pub struct Report {
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    pub fn new(rows: Vec<Row>, bound: Option<f64>, seed: u64) -> Report {
        let max_gamma2 = rows.iter().map(|r| r.gamma2).fold(0.0f64, f64::max);
        let bound_satisfied = bound.map(|b| max_gamma2 <= b + 1e-8);
        Report {
            rows,
            summary: Summary {
                max_gamma2,
                bound,
                bound_satisfied,
                seed,
            },
        }
    }

    pub fn csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string(&self.summary).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Write `<out>.csv` and `<out>.json`, or print both to stdout when
    /// no path is given.
    pub fn emit(&self, out: Option<&Path>) -> Result<(), CliError> {
        match out {
            Some(path) => {
                let base = path.to_string_lossy();
                fs::write(format!("{base}.csv"), self.csv())
                    .map_err(|e| CliError::Input(format!("cannot write {base}.csv: {e}")))?;
                fs::write(format!("{base}.json"), self.json())
                    .map_err(|e| CliError::Input(format!("cannot write {base}.json: {e}")))?;
            }
            None => {
                print!("{}", self.csv());
                print!("{}", self.json());
            }
        }
        Ok(())
    }

    /// True when a bound exists and the maximum violates it.
    pub fn bound_violated(&self) -> bool {
        self.summary.bound_satisfied == Some(false)
    }
}
