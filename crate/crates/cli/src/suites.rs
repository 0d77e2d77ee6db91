use std::time::{Duration, Instant};

use conelab_core::givental::{
    check_cone_in_tangent, check_inverse, check_lagrangian, check_polynomiality, check_tangent_identity,
    check_transpose, check_universal_relations,
};
use conelab_core::localisation::{check_main_identity, check_weights};
use conelab_core::series::check_darboux;
use conelab_core::{CheckReport, ConeContext, GiventalSeries, Rational};
use num_traits::One;

use crate::config::Suite;
use crate::error::CliResult;
use crate::oracles;

/// One finished check with its wall time.
pub struct Timed {
    pub suite: Suite,
    pub report: CheckReport,
    pub elapsed: Duration,
}

fn timed(suite: Suite, out: &mut Vec<Timed>, f: impl FnOnce() -> CliResult<CheckReport>) -> CliResult<()> {
    let start = Instant::now();
    let report = f()?;
    out.push(Timed { suite, report, elapsed: start.elapsed() });
    Ok(())
}

/// `Ω(τ_r, τ_u) = 0` for `r, u` ranging over `φ_α z^j` with
/// `j ≤ min(j_max, z_max − 1)`.
pub fn lagrangian_pairs(ctx: &ConeContext<'_>, j_max: u32) -> CliResult<CheckReport> {
    let mut report = CheckReport::new("lagrangian");
    let target = ctx.target().clone();
    let tr = ctx.truncation();
    let top = j_max.min((tr.z_max - 1).max(0) as u32);
    let mono = |a: usize, j: u32| {
        GiventalSeries::monomial(target.clone(), tr, j as i32, a, target.zero_class(), 0, Rational::one())
    };
    let mut pairs = 0usize;
    for a in 0..target.rank() {
        for b in 0..target.rank() {
            for j in 0..=top {
                for i in 0..=top {
                    let sub = check_lagrangian(ctx, &mono(a, j)?, &mono(b, i)?)?;
                    pairs += 1;
                    for line in sub.offending {
                        report.fail(format!("r=φ_{a}z^{j}, u=φ_{b}z^{i}: {line}"));
                    }
                }
            }
        }
    }
    report.fact("target", &target.name);
    report.fact("max_z_power", top);
    report.fact("pairs", pairs);
    Ok(report)
}

/// Run one suite against a prepared context.
pub fn run_suite(suite: Suite, ctx: &ConeContext<'_>, seed: u64) -> CliResult<Vec<Timed>> {
    let mut out = Vec::new();
    let tr = ctx.truncation();
    match suite {
        Suite::Darboux => timed(suite, &mut out, || Ok(check_darboux(ctx.target(), 6)?))?,
        Suite::EngineOracles => {
            timed(suite, &mut out, || oracles::point_integrals(8))?;
            timed(suite, &mut out, oracles::p2_primaries)?;
            timed(suite, &mut out, || oracles::path_independence(seed, 60))?;
        }
        Suite::Polynomiality => timed(suite, &mut out, || Ok(check_polynomiality(ctx)?))?,
        Suite::Inverse => {
            timed(suite, &mut out, || Ok(check_inverse(ctx)?))?;
            timed(suite, &mut out, || Ok(check_transpose(ctx)?))?;
        }
        Suite::Universal => timed(suite, &mut out, || Ok(check_universal_relations(ctx, 4)?))?,
        Suite::Lagrangian => timed(suite, &mut out, || lagrangian_pairs(ctx, 1))?,
        Suite::Tangent => {
            timed(suite, &mut out, || Ok(check_tangent_identity(ctx)?))?;
            timed(suite, &mut out, || Ok(check_cone_in_tangent(ctx)?))?;
        }
        Suite::Localisation => {
            timed(suite, &mut out, || Ok(check_main_identity(ctx)?))?;
            timed(suite, &mut out, || {
                Ok(check_weights(ctx.target().class_rank, tr.novikov_order, tr.epsilon_order))
            })?;
        }
    }
    Ok(out)
}
