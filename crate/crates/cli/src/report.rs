use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{RunConfig, TChoice};
use crate::serial::TruncationRecord;
use crate::suites::Timed;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub passed: bool,
    pub empirical: bool,
    pub facts: BTreeMap<String, String>,
    pub offending: Vec<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub target: String,
    pub truncation: TruncationRecord,
    #[serde(rename = "T")]
    pub t_degree: usize,
    pub auto_window: bool,
    pub seed: u64,
    pub t_source: String,
    /// `t` coefficients by `z`-power, each a list of `num/den` strings.
    pub t: Vec<Vec<String>>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    pub millis: u128,
}

impl RunReport {
    pub fn new(cfg: &RunConfig, results: Vec<Timed>, millis: u128) -> Self {
        let checks: Vec<CheckRecord> = results
            .into_iter()
            .map(|t| CheckRecord {
                suite: t.suite.name().to_string(),
                check: t.report.check,
                passed: t.report.passed,
                empirical: t.report.empirical,
                facts: t.report.facts.into_iter().collect(),
                offending: t.report.offending,
                millis: t.elapsed.as_millis(),
            })
            .collect();
        let tr = cfg.truncation;
        RunReport {
            target: cfg.target.name.clone(),
            truncation: TruncationRecord {
                novikov_order: tr.novikov_order,
                epsilon_order: tr.epsilon_order,
                z_min: tr.z_min,
                z_max: tr.z_max,
            },
            t_degree: cfg.t_degree,
            auto_window: cfg.auto_window,
            seed: cfg.seed,
            t_source: match cfg.t_choice {
                TChoice::Random => "random",
                TChoice::Zero => "zero",
                TChoice::Explicit(_) => "explicit",
            }
            .to_string(),
            t: cfg.t.coeffs().iter().map(|v| v.0.iter().map(|c| c.to_string()).collect()).collect(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            millis,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let tr = &self.truncation;
        let _ = writeln!(
            s,
            "target {} D={} E={} T={} window=[{}, {}]{} seed={} t={}",
            self.target,
            tr.novikov_order,
            tr.epsilon_order,
            self.t_degree,
            tr.z_min,
            tr.z_max,
            if self.auto_window { " (auto)" } else { "" },
            self.seed,
            self.t_source
        );
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let tag = if c.empirical { " (empirical)" } else { "" };
            let _ = writeln!(s, "{status} {}/{}{tag} [{} ms]", c.suite, c.check, c.millis);
            for (k, v) in &c.facts {
                let _ = writeln!(s, "    {k} = {v}");
            }
            for line in c.offending.iter().take(20) {
                let _ = writeln!(s, "    ! {line}");
            }
            if c.offending.len() > 20 {
                let _ = writeln!(s, "    ! ... {} more", c.offending.len() - 20);
            }
        }
        let _ = writeln!(s, "{} [{} ms]", if self.passed { "ALL PASS" } else { "FAILED" }, self.millis);
        s
    }
}
