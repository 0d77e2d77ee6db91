//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use conelab::oracles;
use conelab::random::random_t;
use conelab::suites::lagrangian_pairs;
use conelab_core::givental::{
    auto_truncation, check_cone_in_tangent, check_inverse, check_polynomiality, check_universal_relations,
};
use conelab_core::localisation::{check_main_identity, check_weights};
use conelab_core::series::check_darboux;
use conelab_core::{CheckReport, ConeContext, Engine, TPolynomial, TargetSpace};

const SEEDS: [u64; 3] = [1, 2, 3];

/// `(target, D, E, T)` for criteria 3 to 5 and 9.
const CONFIGS: [(&str, u32, u32, usize); 3] = [("point", 0, 5, 2), ("P1", 3, 3, 2), ("P2", 2, 3, 1)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn merge(reports: Vec<CheckReport>) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .flat_map(|r| r.offending.iter().take(3).map(move |l| format!("{}: {l}", r.check)))
        .collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() { format!("{} checks", reports.len()) } else { failed.join("; ") },
    }
}

fn engine(name: &str) -> Engine {
    Engine::new(Arc::new(TargetSpace::make(name).unwrap()))
}

/// Run `f` on every seeded `t` (and `t = 0` when `with_zero`) for each config.
fn over_configs(
    with_zero: bool,
    f: impl Fn(&ConeContext<'_>) -> conelab_core::Result<CheckReport>,
) -> Vec<(&'static str, Duration, Vec<CheckReport>)> {
    CONFIGS
        .iter()
        .map(|&(name, d, e, t)| {
            let start = Instant::now();
            let eng = engine(name);
            let tr = auto_truncation(eng.target(), d, e, t).unwrap();
            let rank = eng.target().rank();
            let mut ts: Vec<TPolynomial> = SEEDS.iter().map(|&s| random_t(rank, t, s)).collect();
            if with_zero {
                ts.push(TPolynomial::zero(rank));
            }
            let reports = ts
                .into_iter()
                .map(|t| f(&ConeContext::new(&eng, t, tr).unwrap()).unwrap())
                .collect();
            (name, start.elapsed(), reports)
        })
        .collect()
}

/// Passes iff all reports pass and every per-target time is under `limit`.
fn per_target(runs: Vec<(&'static str, Duration, Vec<CheckReport>)>, limit: Duration) -> (Outcome, Duration) {
    let total: Duration = runs.iter().map(|r| r.1).sum();
    let slow: Vec<String> = runs.iter().filter(|r| r.1 > limit).map(|r| format!("{} took {:?}", r.0, r.1)).collect();
    let timings: Vec<String> = runs.iter().map(|r| format!("{} {:.2}s", r.0, r.1.as_secs_f64())).collect();
    let mut out = merge(runs.into_iter().flat_map(|r| r.2).collect());
    if !slow.is_empty() {
        out.passed = false;
        out.detail = format!("{}; {}", out.detail, slow.join("; "));
    }
    out.detail = format!("{} ({})", out.detail, timings.join(", "));
    (out, total)
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

fn within(mut o: (Outcome, Duration), limit: Option<Duration>) -> (Outcome, Duration) {
    if let Some(limit) = limit {
        if o.1 > limit {
            o.0.passed = false;
            o.0.detail = format!("{}; took {:?}, limit {limit:?}", o.0.detail, o.1);
        }
    }
    o
}

fn main() {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let mut results: Vec<(u32, &str, (Outcome, Duration))> = Vec::new();

    results.push((
        1,
        "Darboux relations on P2, k, l <= 6",
        within(
            timed(|| merge(vec![check_darboux(&Arc::new(TargetSpace::make("P2").unwrap()), 6).unwrap()])),
            Some(Duration::from_secs(1)),
        ),
    ));

    results.push((
        2,
        "engine oracles: point integrals n <= 8, N1..N4, 120 reduction paths",
        within(
            timed(|| {
                merge(vec![
                    oracles::point_integrals(8).unwrap(),
                    oracles::p2_primaries().unwrap(),
                    oracles::path_independence(2024, 60).unwrap(),
                ])
            }),
            Some(Duration::from_secs(30)),
        ),
    ));

    results.push((3, "polynomiality S(f) in zH+", per_target(over_configs(false, check_polynomiality), minutes(5))));

    results.push((4, "inverse S(z) S*(-z) = Id", per_target(over_configs(false, check_inverse), minutes(5))));

    results.push((
        5,
        "localisation sum = S(f), seeded t and t = 0",
        per_target(over_configs(true, check_main_identity), Duration::MAX),
    ));

    results.push((
        6,
        "universal relations k = 2..4 on P1, P2 at (2,3)",
        within(
            timed(|| {
                let mut reports = Vec::new();
                for name in ["P1", "P2"] {
                    let eng = engine(name);
                    let tr = auto_truncation(eng.target(), 2, 3, 1).unwrap();
                    for &s in &SEEDS {
                        let ctx = ConeContext::new(&eng, random_t(eng.target().rank(), 1, s), tr).unwrap();
                        reports.push(check_universal_relations(&ctx, 4).unwrap());
                    }
                }
                merge(reports)
            }),
            Some(minutes(2)),
        ),
    ));

    results.push((
        7,
        "Lagrangian residue on P1 at (2,2), i, j <= 1",
        within(
            timed(|| {
                let eng = engine("P1");
                let tr = auto_truncation(eng.target(), 2, 2, 1).unwrap();
                let reports = SEEDS
                    .iter()
                    .map(|&s| {
                        let ctx = ConeContext::new(&eng, random_t(2, 1, s), tr).unwrap();
                        lagrangian_pairs(&ctx, 1).unwrap()
                    })
                    .collect();
                merge(reports)
            }),
            None,
        ),
    ));

    results.push((
        8,
        "tangent membership and span check (empirical) on P1 at (1,1)",
        within(
            timed(|| {
                let eng = engine("P1");
                let tr = auto_truncation(eng.target(), 1, 1, 1).unwrap();
                let reports = SEEDS
                    .iter()
                    .map(|&s| check_cone_in_tangent(&ConeContext::new(&eng, random_t(2, 1, s), tr).unwrap()).unwrap())
                    .collect();
                merge(reports)
            }),
            None,
        ),
    ));

    results.push((
        9,
        "generic splitting weights factor",
        within(
            timed(|| {
                merge(
                    CONFIGS
                        .iter()
                        .map(|&(name, d, e, _)| {
                            check_weights(TargetSpace::make(name).unwrap().class_rank, d, e)
                        })
                        .collect(),
                )
            }),
            None,
        ),
    ));

    let mut all = true;
    for (n, name, (o, dt)) in &results {
        all &= o.passed;
        println!(
            "criterion {n}: {} | {name} | {:.3}s | {}",
            if o.passed { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
