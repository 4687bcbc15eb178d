use std::fmt::Write;

pub const CSV_HEADER: &str = "check,samples,violations,worst_margin,tolerance,pass";

/// Outcome of one check. A margin is `allowed − observed`; a sample
/// violates when its margin is below minus its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    pub violations: usize,
    pub worst_margin: f64,
    /// Largest tolerance applied to any assertion.
    pub tolerance: f64,
    pub pass: bool,
    /// Set when an evaluation failed outright.
    pub note: Option<String>,
}

/// Accumulates assertions for one check.
#[derive(Debug, Clone)]
pub struct Tally {
    name: String,
    samples: usize,
    violations: usize,
    worst_margin: f64,
    tolerance: f64,
    note: Option<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            samples: 0,
            violations: 0,
            worst_margin: f64::INFINITY,
            tolerance: 0.0,
            note: None,
        }
    }

    pub fn sample(&mut self) {
        self.samples += 1;
    }

    /// Records `margin ≥ −tol`.
    pub fn assert_margin(&mut self, margin: f64, tol: f64) {
        if !(margin >= -tol) {
            self.violations += 1;
        }
        if margin.is_nan() {
            self.worst_margin = f64::NAN;
        } else if !self.worst_margin.is_nan() {
            self.worst_margin = self.worst_margin.min(margin);
        }
        self.tolerance = self.tolerance.max(tol);
    }

    /// Records `margin > 0`.
    pub fn assert_positive(&mut self, margin: f64) {
        self.assert_margin(margin, 0.0);
        if margin == 0.0 {
            self.violations += 1;
        }
    }

    pub fn fail(&mut self, note: impl Into<String>) {
        self.violations += 1;
        self.note.get_or_insert_with(|| note.into());
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            pass: self.violations == 0,
            name: self.name,
            samples: self.samples,
            violations: self.violations,
            worst_margin: if self.worst_margin.is_infinite() {
                0.0
            } else {
                // no `-0` in reports
                self.worst_margin + 0.0
            },
            tolerance: self.tolerance,
            note: self.note,
        }
    }
}

pub fn format_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        writeln!(
            out,
            "{},{},{},{:.6e},{:.3e},{}",
            r.name, r.samples, r.violations, r.worst_margin, r.tolerance, r.pass
        )
        .unwrap();
    }
    out
}

pub fn format_text(reports: &[CheckReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = format!(
        "{:<width$}  {:>8}  {:>10}  {:>13}  {:>10}  result\n",
        "check", "samples", "violations", "worst_margin", "tolerance"
    );
    for r in reports {
        writeln!(
            out,
            "{:<width$}  {:>8}  {:>10}  {:>13.6e}  {:>10.3e}  {}",
            r.name,
            r.samples,
            r.violations,
            r.worst_margin,
            r.tolerance,
            if r.pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
        if let Some(note) = &r.note {
            writeln!(out, "  note: {note}").unwrap();
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    writeln!(out, "{} checks, {} failed", reports.len(), failed).unwrap();
    out
}
