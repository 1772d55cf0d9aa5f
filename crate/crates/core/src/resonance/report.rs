use super::config::{LSource, NPolicy, Range, Strategy};
use crate::arith::{FundamentalDiscriminant, Signs};
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

/// A structured warning attached to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        Self {
            code: code.to_owned(),
            message: message.into(),
        }
    }
}

/// The error-term estimates next to the main-term scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    /// `X^(3/4 + 2 eps) N^(3 eps / 2) |M| sum f^2`.
    pub primary: f64,
    /// The same with `X^(3/4 + alpha/2 + 2 eps)`, for the dual sum.
    pub dual: f64,
    /// `(X / zeta(2)) sum f^2`.
    pub main_term_scale: f64,
    /// `primary / main_term_scale`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    #[serde(rename = "X")]
    pub x: u64,
    #[serde(rename = "N")]
    pub n: u64,
    /// `1/2 + alpha`, the point where `L` is evaluated.
    pub sigma: f64,
    pub alpha: f64,
    /// `1/2 + A / log log N`, when the resonator is non-degenerate.
    pub resonator_sigma: Option<f64>,
    #[serde(rename = "P_size")]
    pub p_size: usize,
    #[serde(rename = "M_size")]
    pub m_size: usize,
    /// `sum_d L(1/2 + alpha, chi_d) R_d^2`; absent when only some `L` were computed.
    #[serde(rename = "S1")]
    pub s1: Option<f64>,
    #[serde(rename = "S2")]
    pub s2: f64,
    pub ratio: Option<f64>,
    #[serde(rename = "maxL")]
    pub max_l: f64,
    pub argmax_d: FundamentalDiscriminant,
    /// False when `maxL` is only a lower bound on the maximum over the range.
    pub max_is_exact: bool,
    pub d_count: u64,
    pub l_evaluations: u64,
    /// Asymptotic baseline `exp(lambda(A) sqrt(log X log3 X / log2 X))`.
    pub theorem_baseline: Option<f64>,
    pub error_budget: f64,
    pub error_budget_detail: ErrorBudget,
    /// `S2 / ((X / zeta(2)) sum f^2) - 1`.
    pub s2_eta: f64,
    pub strategy: Strategy,
    pub n_policy: NPolicy,
    pub signs: Signs,
    pub l_source: LSource,
    pub range: Range,
    pub runtime_seconds: f64,
    pub diagnostics: Vec<Diagnostic>,
}

pub const CSV_COLUMNS: [&str; 13] = [
    "X",
    "N",
    "sigma",
    "P_size",
    "M_size",
    "S1",
    "S2",
    "ratio",
    "maxL",
    "argmax_d",
    "theorem_baseline",
    "error_budget",
    "runtime_seconds",
];

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

impl ScanReport {
    pub fn csv_header() -> String {
        CSV_COLUMNS.join(",")
    }

    pub fn csv_row(&self) -> String {
        [
            self.x.to_string(),
            self.n.to_string(),
            float(self.sigma),
            self.p_size.to_string(),
            self.m_size.to_string(),
            opt(self.s1),
            float(self.s2),
            opt(self.ratio),
            float(self.max_l),
            self.argmax_d.to_string(),
            opt(self.theorem_baseline),
            float(self.error_budget),
            float(self.runtime_seconds),
        ]
        .join(",")
    }

    pub fn write_csv<W: Write>(reports: &[ScanReport], mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::csv_header())?;
        for r in reports {
            writeln!(out, "{}", r.csv_row())?;
        }
        Ok(())
    }

    /// A copy with the timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            runtime_seconds: 0.0,
            ..self.clone()
        }
    }

    pub fn has_diagnostic(&self, code: &str) -> bool {
        self.diagnostics.iter().any(|d| d.code == code)
    }
}
