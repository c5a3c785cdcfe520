//! Run reports: the one structured result every subcommand produces.
//!
//! A report carries the echoed inputs, a key→value table of results, and a
//! list of named checks.  Numbers are rendered once, as decimal strings with
//! 15 significant digits, so the JSON form never depends on a reader's
//! float-to-text behaviour.

use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub measured: String,
    pub expected: String,
    pub tolerance: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: BTreeMap<String, String>,
    pub checks: Vec<CheckLine>,
    /// Wall-clock seconds, as a decimal string like every other number.
    pub wall_time: String,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn print_text(&self) {
        println!("command: {}", self.command);
        for (k, v) in &self.inputs {
            println!("  input {k}: {v}");
        }
        if !self.results.is_empty() {
            println!("results:");
            for (k, v) in &self.results {
                println!("  {k}: {v}");
            }
        }
        if !self.checks.is_empty() {
            println!("checks:");
            for c in &self.checks {
                let tag = if c.pass { "pass" } else { "FAIL" };
                println!(
                    "  [{tag}] {}  measured={} expected={} tolerance={}",
                    c.name, c.measured, c.expected, c.tolerance
                );
            }
        }
        println!("wall_time: {} s", self.wall_time);
    }

    pub fn print_json(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("report serializes")
        );
    }
}

/// Accumulates a [`RunReport`] while a command runs; `finish` stamps the
/// elapsed wall time.
pub struct ReportBuilder {
    started: Instant,
    command: String,
    inputs: BTreeMap<String, String>,
    results: BTreeMap<String, String>,
    checks: Vec<CheckLine>,
}

impl ReportBuilder {
    pub fn new(command: &str) -> Self {
        ReportBuilder {
            started: Instant::now(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<String>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn result_num(&mut self, key: &str, value: f64) {
        self.result(key, fmt15(value));
    }

    /// Numeric check: passes when `|measured − expected| ≤ tolerance`.
    pub fn check_num(&mut self, name: &str, measured: f64, expected: f64, tolerance: f64) {
        self.checks.push(CheckLine {
            name: name.to_string(),
            pass: (measured - expected).abs() <= tolerance,
            measured: fmt15(measured),
            expected: fmt15(expected),
            tolerance: fmt15(tolerance),
        });
    }

    /// Exact (symbolic or structural) check; tolerance is reported as
    /// `exact`.
    pub fn check_exact(&mut self, name: &str, pass: bool, measured: impl Into<String>, expected: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.to_string(),
            pass,
            measured: measured.into(),
            expected: expected.into(),
            tolerance: "exact".to_string(),
        });
    }

    pub fn finish(self) -> RunReport {
        RunReport {
            command: self.command,
            inputs: self.inputs,
            results: self.results,
            checks: self.checks,
            wall_time: fmt15(self.started.elapsed().as_secs_f64()),
        }
    }
}

/// Decimal rendering with 15 significant digits; plain notation for
/// moderate magnitudes, scientific outside them.
pub fn fmt15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        let decimals = (14 - mag).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        format!("{:.14e}", x)
    }
}

pub fn fmt_complex(z: num_complex::Complex64) -> String {
    if z.im >= 0.0 {
        format!("{} + {}i", fmt15(z.re), fmt15(z.im))
    } else {
        format!("{} - {}i", fmt15(z.re), fmt15(-z.im))
    }
}
