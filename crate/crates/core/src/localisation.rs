//! Fixed-locus splittings `(β₀, n₀ | β∞, n∞)` and their contributions to
//! the localisation sum, which must reproduce `S_t(z)(f)` at the cone point.
//!
//! A splitting is classified by which of its two sides is stable: the
//! `X₀` side carries `n₀ + 1` markings and the `X∞` side `n∞ + 2`. When both
//! are stable the splitting is generic; otherwise it is one of five
//! degenerate cases.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::engine::{is_stable, Insertion, KernelSign};
use crate::error::Result;
use crate::givental::ConeContext;
use crate::report::CheckReport;
use crate::series::GiventalSeries;
use crate::target::NovikovDegree;
use crate::{binomial, factorial, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplittingKind {
    Generic,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
}

impl fmt::Display for SplittingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SplittingKind::Generic => "generic",
            SplittingKind::Case1 => "case1",
            SplittingKind::Case2 => "case2",
            SplittingKind::Case3 => "case3",
            SplittingKind::Case4 => "case4",
            SplittingKind::Case5 => "case5",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplittingRecord {
    pub kind: SplittingKind,
    pub beta0: NovikovDegree,
    pub beta_inf: NovikovDegree,
    pub n0: u32,
    pub n_inf: u32,
}

impl SplittingRecord {
    pub fn beta(&self) -> NovikovDegree {
        &self.beta0 + &self.beta_inf
    }

    pub fn n(&self) -> u32 {
        self.n0 + self.n_inf
    }

    /// `(n choose n∞) / n!`, the weight of the record inside `Q^β ε^n / n!`.
    pub fn weight(&self) -> Rational {
        binomial(self.n(), self.n_inf) / factorial(self.n())
    }

    /// `1/(n₀! n∞!)`, the product of the weights of the two sides.
    pub fn side_weights(&self) -> Rational {
        rat(1) / (factorial(self.n0) * factorial(self.n_inf))
    }
}

impl fmt::Display for SplittingRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} beta0={} n0={} beta_inf={} n_inf={}", self.kind, self.beta0, self.n0, self.beta_inf, self.n_inf)
    }
}

/// Kind of the splitting with the given sides.
pub fn classify(beta0: &NovikovDegree, n0: u32, beta_inf: &NovikovDegree, n_inf: u32) -> SplittingKind {
    let zero_side = is_stable(beta0, n0 as usize + 1);
    let inf_side = is_stable(beta_inf, n_inf as usize + 2);
    match (zero_side, inf_side) {
        (true, true) => SplittingKind::Generic,
        (true, false) => SplittingKind::Case5,
        (false, true) if n0 == 0 => SplittingKind::Case3,
        (false, true) => SplittingKind::Case4,
        (false, false) if n0 + n_inf == 0 => SplittingKind::Case1,
        (false, false) => SplittingKind::Case2,
    }
}

/// Every splitting of `(β, n)`, each once.
pub fn enumerate_splittings(beta: &NovikovDegree, n: u32) -> Vec<SplittingRecord> {
    let mut out = Vec::new();
    for beta0 in beta.splittings() {
        let beta_inf = beta.checked_sub(&beta0).expect("splitting is effective");
        for n0 in 0..=n {
            let n_inf = n - n0;
            out.push(SplittingRecord {
                kind: classify(&beta0, n0, &beta_inf, n_inf),
                beta0: beta0.clone(),
                beta_inf: beta_inf.clone(),
                n0,
                n_inf,
            });
        }
    }
    out
}

/// Contribution of one splitting at grade `Q^β ε^n`.
pub fn contribution(ctx: &ConeContext<'_>, rec: &SplittingRecord) -> Result<GiventalSeries> {
    let target = ctx.target().clone();
    let beta = rec.beta();
    let n = rec.n();
    let mut out = ctx.zero_series();
    if !ctx.truncation().keeps(&beta, n) {
        return Ok(out);
    }
    let duals: Vec<_> = (0..target.rank()).map(|g| target.dual(g)).collect();
    match rec.kind {
        SplittingKind::Case1 => {
            out.add_vector(1, &target.unit(), &beta, 0, &rat(-1))?;
        }
        SplittingKind::Case2 => {
            for (k, v) in ctx.t().coeffs().iter().enumerate() {
                out.add_vector(k as i32, v, &beta, 1, &rat(1))?;
            }
        }
        SplittingKind::Case3 => {
            // −z·1/(z − ψ) = −Σ_l ψ^l z^{-l}
            let raw = factorial(n) * rec.weight();
            for (gamma, dual) in duals.iter().enumerate() {
                for l in 0..=max_psi(ctx, &beta, n as usize + 2) {
                    let v = ctx.bracket(&[Insertion::new(0, l), Insertion::new(gamma, 0)], &beta, n)?;
                    if !v.is_zero() {
                        out.add_vector(-(l as i32), dual, &beta, n, &(-(v * &raw)))?;
                    }
                }
            }
        }
        SplittingKind::Case4 => {
            // t(z)/(z − ψ) with ψ₀ frozen at z: Σ t_m^δ φ_δ ψ^l z^{m−1−l}
            let m_inf = n - 1;
            let raw = factorial(m_inf) * rec.weight();
            for (mono, c) in ctx.t().monomials() {
                for (gamma, dual) in duals.iter().enumerate() {
                    for l in 0..=max_psi(ctx, &beta, m_inf as usize + 2) {
                        let v = ctx.bracket(&[Insertion::new(mono.basis, l), Insertion::new(gamma, 0)], &beta, m_inf)?;
                        if !v.is_zero() {
                            let z = mono.psi as i32 - 1 - l as i32;
                            out.add_vector(z, dual, &beta, n, &(v * &c * &raw))?;
                        }
                    }
                }
            }
        }
        SplittingKind::Case5 => {
            let raw = factorial(n) * rec.weight();
            for (gamma, dual) in duals.iter().enumerate() {
                for (z, v) in ctx.kernel_bracket(&[], &beta, n, gamma, KernelSign::Minus)? {
                    out.add_vector(z, dual, &beta, n, &(v * &raw))?;
                }
            }
        }
        SplittingKind::Generic => {
            // ⟨t^{n₀}, φ_α/(−z − ψ)⟩_{β₀} · ⟨φ^α/(z − ψ), t^{n∞}, φ_γ⟩_{β∞} φ^γ
            let raw = factorial(rec.n0) * factorial(rec.n_inf) * rec.weight();
            let dual_terms = target.inverse_pairing_terms();
            for (alpha, delta, g) in &dual_terms {
                let left = ctx.kernel_bracket(&[], &rec.beta0, rec.n0, *alpha, KernelSign::Minus)?;
                if left.is_empty() {
                    continue;
                }
                for (gamma, dual) in duals.iter().enumerate() {
                    for l in 0..=max_psi(ctx, &rec.beta_inf, rec.n_inf as usize + 2) {
                        let right =
                            ctx.bracket(&[Insertion::new(*delta, l), Insertion::new(gamma, 0)], &rec.beta_inf, rec.n_inf)?;
                        if right.is_zero() {
                            continue;
                        }
                        for (z0, a) in &left {
                            let z = z0 - 1 - l as i32;
                            out.add_vector(z, dual, &beta, n, &(a * &right * g * &raw))?;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn max_psi(ctx: &ConeContext<'_>, beta: &NovikovDegree, points: usize) -> u32 {
    crate::engine::vdim(ctx.target(), beta, points).max(0) as u32
}

/// `Σ_{β ≤ D, n ≤ E} Σ_splittings contribution`.
pub fn localisation_sum(ctx: &ConeContext<'_>) -> Result<GiventalSeries> {
    let mut total = ctx.zero_series();
    for beta in ctx.classes() {
        for n in 0..=ctx.truncation().epsilon_order {
            for rec in enumerate_splittings(&beta, n) {
                total = total.add(&contribution(ctx, &rec)?)?;
            }
        }
    }
    Ok(total)
}

/// Localisation sum against `S_t(z)(f)` at the cone point, coefficient by
/// coefficient.
pub fn check_main_identity(ctx: &ConeContext<'_>) -> Result<CheckReport> {
    let mut report = CheckReport::new("localisation");
    let tr = ctx.truncation();
    report.fact("target", &ctx.target().name);
    report.fact("novikov_order", tr.novikov_order);
    report.fact("epsilon_order", tr.epsilon_order);
    report.fact("window", format!("[{}, {}]", tr.z_min, tr.z_max));
    let mut counts = [0usize; 6];
    for beta in ctx.classes() {
        for n in 0..=tr.epsilon_order {
            for rec in enumerate_splittings(&beta, n) {
                counts[rec.kind as usize] += 1;
            }
        }
    }
    for (i, kind) in ["generic", "case1", "case2", "case3", "case4", "case5"].iter().enumerate() {
        report.fact(&format!("records.{kind}"), counts[i]);
    }
    let lhs = localisation_sum(ctx)?;
    let rhs = ctx.s_apply(&ctx.cone_point()?)?;
    report.fact("terms", rhs.len());
    for (key, _) in lhs.sub(&rhs)?.terms() {
        report.fail(format!("{key}: localisation {} vs S(f) {}", lhs.coeff(key), rhs.coeff(key)));
    }
    Ok(report)
}

/// `(n choose n∞)/n! = 1/(n₀! n∞!)` and the degree/marking bookkeeping for
/// every generic splitting up to `(D, E)`.
pub fn check_weights(class_rank: usize, novikov_order: u32, epsilon_order: u32) -> CheckReport {
    let mut report = CheckReport::new("weights");
    let mut checked = 0usize;
    for beta in NovikovDegree::all_up_to(class_rank, novikov_order) {
        for n in 0..=epsilon_order {
            for rec in enumerate_splittings(&beta, n) {
                if rec.kind != SplittingKind::Generic {
                    continue;
                }
                checked += 1;
                if rec.beta() != beta || rec.n() != n {
                    report.fail(format!("{rec}: sides do not add up to ({beta}, {n})"));
                }
                if rec.weight() != rec.side_weights() {
                    report.fail(format!("{rec}: {} vs {}", rec.weight(), rec.side_weights()));
                }
            }
        }
    }
    report.fact("generic_records", checked);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn d(x: u32) -> NovikovDegree {
        NovikovDegree(vec![x])
    }

    fn kinds(beta: &NovikovDegree, n: u32) -> Vec<SplittingKind> {
        let mut k: Vec<_> = enumerate_splittings(beta, n).into_iter().map(|r| r.kind).collect();
        k.sort();
        k
    }

    #[test]
    fn degree_zero_small_n() {
        assert_eq!(kinds(&d(0), 0), vec![SplittingKind::Case1]);
        // (0,0 | 0,1) is a case-3 splitting: the X∞ side has three markings.
        assert_eq!(kinds(&d(0), 1), vec![SplittingKind::Case2, SplittingKind::Case3]);
        assert_eq!(
            kinds(&d(0), 2),
            vec![SplittingKind::Case3, SplittingKind::Case4, SplittingKind::Case5]
        );
    }

    #[test]
    fn p1_degree_one_one_point() {
        assert_eq!(
            kinds(&d(1), 1),
            vec![SplittingKind::Generic, SplittingKind::Case3, SplittingKind::Case4, SplittingKind::Case5]
        );
    }

    #[test]
    fn weights_factor() {
        let report = check_weights(1, 3, 5);
        assert!(report.passed, "{report}");
    }
}
