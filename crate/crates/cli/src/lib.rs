//! Command-line front end for `conelab-core`: run configuration, JSON series
//! format, correlator queries, verification suites and reports.

pub mod config;
pub mod error;
pub mod oracles;
pub mod query;
pub mod random;
pub mod report;
pub mod serial;
pub mod suites;

use std::sync::Arc;
use std::time::Instant;

use conelab_core::givental::required_window;
use conelab_core::localisation::{contribution, enumerate_splittings};
use conelab_core::{ConeContext, Engine, GiventalSeries, Rational, TargetSpace};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::report::RunReport;
use crate::serial::{SeriesDocument, TermRecord};

/// Turn a window overflow into a configuration error that names the window
/// the run needs.
fn window_hint(cfg: &RunConfig, err: CliError) -> CliError {
    match err {
        CliError::Core(e @ conelab_core::Error::WindowOverflow { .. }) => {
            let (lo, hi) = required_window(&cfg.target, cfg.novikov_order, cfg.epsilon_order, cfg.t_degree);
            CliError::Config(format!("{e}; this run needs z_min <= {lo} and z_max >= {hi}"))
        }
        other => other,
    }
}

pub fn verify(cfg: &RunConfig) -> CliResult<RunReport> {
    let start = Instant::now();
    let engine = Engine::new(cfg.target.clone());
    let ctx = ConeContext::new(&engine, cfg.t.clone(), cfg.truncation)?;
    let mut results = Vec::new();
    for &suite in &cfg.suites {
        results.extend(suites::run_suite(suite, &ctx, cfg.seed).map_err(|e| window_hint(cfg, e))?);
    }
    Ok(RunReport::new(cfg, results, start.elapsed().as_millis()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// The cone point over `t`.
    Cone,
    /// `S_t(z)` applied to the cone point.
    SL,
    /// The localisation sum.
    LocSum,
    /// `S_t*(−z)(φ_α z^k)`.
    Tangent { alpha: usize, k: u32 },
}

pub fn series(cfg: &RunConfig, kind: SeriesKind) -> CliResult<GiventalSeries> {
    let engine = Engine::new(cfg.target.clone());
    let ctx = ConeContext::new(&engine, cfg.t.clone(), cfg.truncation)?;
    let run = || -> CliResult<GiventalSeries> {
        Ok(match kind {
            SeriesKind::Cone => ctx.cone_point()?,
            SeriesKind::SL => ctx.s_apply(&ctx.cone_point()?)?,
            SeriesKind::LocSum => conelab_core::localisation::localisation_sum(&ctx)?,
            SeriesKind::Tangent { alpha, k } => {
                if alpha >= cfg.target.rank() {
                    return Err(CliError::Usage(format!("basis index {alpha} out of range for {}", cfg.target.name)));
                }
                ctx.tangent_vector(alpha, k)?
            }
        })
    };
    run().map_err(|e| window_hint(cfg, e))
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingDump {
    pub kind: String,
    pub beta0: Vec<u32>,
    pub n0: u32,
    pub beta_inf: Vec<u32>,
    pub n_inf: u32,
    pub contribution: Vec<TermRecord>,
}

/// Every splitting up to `(D, E)` with its contribution.
pub fn splittings(cfg: &RunConfig) -> CliResult<Vec<SplittingDump>> {
    let engine = Engine::new(cfg.target.clone());
    let ctx = ConeContext::new(&engine, cfg.t.clone(), cfg.truncation)?;
    let mut out = Vec::new();
    for beta in ctx.classes() {
        for n in 0..=cfg.epsilon_order {
            for rec in enumerate_splittings(&beta, n) {
                let c = contribution(&ctx, &rec).map_err(|e| window_hint(cfg, e.into()))?;
                out.push(SplittingDump {
                    kind: rec.kind.to_string(),
                    beta0: rec.beta0.0.clone(),
                    n0: rec.n0,
                    beta_inf: rec.beta_inf.0.clone(),
                    n_inf: rec.n_inf,
                    contribution: SeriesDocument::from_series(&c).terms,
                });
            }
        }
    }
    Ok(out)
}

/// Evaluate a query such as `d=1; (2,0) (2,0)`.
pub fn correlator(target: &str, query_text: &str) -> CliResult<Rational> {
    let target = Arc::new(TargetSpace::make(target).map_err(|e| CliError::Usage(e.to_string()))?);
    let q = query::parse_query(query_text)?;
    if q.beta.rank() != target.class_rank {
        return Err(CliError::Usage(format!(
            "Novikov degree has {} entries; {} needs {}",
            q.beta.rank(),
            target.name,
            target.class_rank
        )));
    }
    if let Some(bad) = q.insertions.iter().find(|i| i.basis >= target.rank()) {
        return Err(CliError::Usage(format!("basis index {} out of range for {}", bad.basis, target.name)));
    }
    let engine = Engine::new(target);
    Ok(engine.eval(&q.beta, &q.insertions)?)
}
