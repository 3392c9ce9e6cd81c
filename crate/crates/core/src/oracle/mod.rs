//! Independent numerical checks for the closed forms: reductions of explicit
//! state vectors, decomposition sampling that brackets convex- and
//! concave-roof quantities, and certification reports.

use std::fmt::Write as _;

use crate::bounds::format_sig12 as fmt12;
use crate::error::{Error, Result};

mod certify;
mod counterexample;
mod random;
mod sampling;

pub use certify::{certify_gw_closed_forms, run_certification, CertifyConfig};
pub use counterexample::{counterexample_numeric, counterexample_state};
pub use random::{random_gw_spec, random_partition, random_partition_into};
pub use sampling::{coa_sampling_max, concurrence_sampling_min, MAX_SAMPLING_RANK};

/// Decomposition sampling settings. Results depend only on these fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    pub trials: usize,
    /// members per decomposition, between the rank and four times the rank;
    /// `None` means the rank
    pub decomposition_size: Option<usize>,
    pub seed: u64,
    pub refine_steps: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            trials: 2000,
            decomposition_size: None,
            seed: 0x5eed,
            refine_steps: 40,
        }
    }
}

impl SamplingConfig {
    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_refine_steps(mut self, steps: usize) -> Self {
        self.refine_steps = steps;
        self
    }

    pub fn with_decomposition_size(mut self, size: usize) -> Self {
        self.decomposition_size = Some(size);
        self
    }
}

/// One line of a certification report.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub expected: f64,
    pub got: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckLine {
    /// `|got - expected| <= tol`
    pub fn close(name: impl Into<String>, expected: f64, got: f64, tol: f64) -> Self {
        let pass = (got - expected).abs() <= tol;
        CheckLine {
            name: name.into(),
            expected,
            got,
            tol,
            pass,
        }
    }

    /// `expected - below <= got <= expected + above`; `tol` records the wider side.
    pub fn bracket(name: impl Into<String>, expected: f64, got: f64, below: f64, above: f64) -> Self {
        let pass = got >= expected - below && got <= expected + above;
        CheckLine {
            name: name.into(),
            expected,
            got,
            tol: below.max(above),
            pass,
        }
    }

    /// `got <= expected + tol`
    pub fn at_most(name: impl Into<String>, expected: f64, got: f64, tol: f64) -> Self {
        CheckLine {
            name: name.into(),
            expected,
            got,
            tol,
            pass: got <= expected + tol,
        }
    }
}

/// Ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CertificationReport {
    pub lines: Vec<CheckLine>,
}

impl CertificationReport {
    pub fn push(&mut self, line: CheckLine) {
        self.lines.push(line);
    }

    pub fn extend(&mut self, other: CertificationReport) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    /// Certification error naming every failed check.
    pub fn ensure_passed(self) -> Result<Self> {
        if self.passed() {
            return Ok(self);
        }
        let names: Vec<String> = self
            .failures()
            .map(|l| format!("{} (expected {}, got {}, tol {:e})", l.name, l.expected, l.got, l.tol))
            .collect();
        Err(Error::Certification(names.join("; ")))
    }

    /// `name,expected,got,tol,pass` header plus one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::from("name,expected,got,tol,pass\n");
        for l in &self.lines {
            let _ = writeln!(
                out,
                "{},{},{},{:e},{}",
                l.name,
                fmt12(l.expected),
                fmt12(l.got),
                l.tol,
                l.pass
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_lines() {
        assert!(CheckLine::close("a", 1.0, 1.0 + 1e-9, 1e-8).pass);
        assert!(!CheckLine::close("a", 1.0, 1.1, 1e-8).pass);
        assert!(CheckLine::bracket("b", 1.0, 0.998, 5e-3, 1e-9).pass);
        assert!(!CheckLine::bracket("b", 1.0, 1.001, 5e-3, 1e-9).pass);
        assert!(CheckLine::at_most("c", 0.0, -0.2, 1e-12).pass);
    }

    #[test]
    fn report_text_and_errors() {
        let mut r = CertificationReport::default();
        r.push(CheckLine::close("ok", 0.5, 0.5, 1e-8));
        assert!(r.clone().ensure_passed().is_ok());
        r.push(CheckLine::close("bad", 0.5, 0.6, 1e-8));
        let text = r.to_text();
        assert!(text.starts_with("name,expected,got,tol,pass\n"));
        assert!(text.contains("bad,0.500000000000,0.600000000000,1e-8,false"));
        let err = r.ensure_passed().unwrap_err();
        assert!(err.to_string().contains("bad"));
    }
}
