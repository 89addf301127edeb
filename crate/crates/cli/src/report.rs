//! The versioned report emitted by every command.

use std::fmt::Write as _;

use kstar::ThetaSeries;
use serde::Serialize;

pub const SCHEMA: &str = "kstar-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub order: u32,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// The first failing case, when there is one.
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>, witness: Option<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into(), witness }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub dimension: usize,
    pub product: Option<String>,
    pub cap: Option<u32>,
    pub seed: Option<u64>,
    pub result: Vec<Term>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub engine: String,
}

impl Report {
    pub fn new(command: String, dimension: usize) -> Self {
        Report {
            schema: SCHEMA,
            command,
            dimension,
            product: None,
            cap: None,
            seed: None,
            result: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
            engine: concat!("kstar ", env!("CARGO_PKG_VERSION")).to_string(),
        }
    }

    pub fn set_series(&mut self, s: &ThetaSeries) {
        self.result = s.coeffs().map(|(n, p)| Term { order: n, coefficient: p.to_string() }).collect();
    }

    pub fn push(&mut self, c: Check) {
        if !c.pass {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The θ-series as `c0 + theta*(c1) + theta^2*(c2) ...`.
    pub fn series_text(&self) -> String {
        if self.result.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .result
            .iter()
            .map(|t| match t.order {
                0 => t.coefficient.clone(),
                1 => format!("theta*({})", t.coefficient),
                n => format!("theta^{n}*({})", t.coefficient),
            })
            .collect();
        let mut s = parts.join(" + ");
        if let Some(c) = self.cap {
            let _ = write!(s, " + O(theta^{})", c + 1);
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "kstar {}", self.command);
        if self.product.is_some() {
            let _ = writeln!(s, "{}", self.series_text());
        }
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            for line in c.detail.lines() {
                let _ = writeln!(s, "    {line}");
            }
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "    witness: {w}");
            }
        }
        let _ = writeln!(s, "verdict: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}
