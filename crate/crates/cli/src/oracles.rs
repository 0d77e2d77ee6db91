//! Reference computations that share no code with the correlator engine.

use std::collections::HashMap;
use std::sync::Arc;

use conelab_core::engine::vdim;
use conelab_core::{CheckReport, CorrelatorKey, Engine, Insertion, NovikovDegree, Rational, TargetSpace};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliResult;

fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        fact(n) / (fact(k) * fact(n - k))
    }
}

/// `⟨τ_{k_1} … τ_{k_n}⟩_0` on a point using only the string equation and
/// `⟨τ_0³⟩ = 1`.
pub struct PointStringOracle {
    memo: HashMap<Vec<u32>, BigInt>,
}

impl Default for PointStringOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl PointStringOracle {
    pub fn new() -> Self {
        PointStringOracle { memo: HashMap::new() }
    }

    pub fn value(&mut self, ks: &[u32]) -> BigInt {
        let mut ks = ks.to_vec();
        ks.sort_unstable();
        let n = ks.len();
        if n < 3 || ks.iter().sum::<u32>() as usize != n - 3 {
            return BigInt::zero();
        }
        if n == 3 {
            return BigInt::one();
        }
        if let Some(v) = self.memo.get(&ks) {
            return v.clone();
        }
        // Σk = n − 3 forces a zero entry, which sorts first.
        let rest = &ks[1..];
        let mut acc = BigInt::zero();
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut lowered = rest.to_vec();
                lowered[j] -= 1;
                acc += self.value(&lowered);
            }
        }
        self.memo.insert(ks, acc.clone());
        acc
    }
}

/// Sorted ψ-power vectors of length `n` with sum `total`.
fn compositions(n: usize, total: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=max.min(total)).rev() {
        for mut tail in compositions(n - 1, total - first, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Point ψ-integrals for `3 ≤ n ≤ n_max`: engine, string oracle and
/// `(n−3)!/∏k_i!` all agree.
pub fn point_integrals(n_max: usize) -> CliResult<CheckReport> {
    let mut report = CheckReport::new("point_psi_integrals");
    let engine = Engine::new(Arc::new(TargetSpace::make("point")?));
    let zero = NovikovDegree(Vec::new());
    let mut oracle = PointStringOracle::new();
    let mut checked = 0usize;
    for n in 3..=n_max {
        let total = n as u32 - 3;
        for ks in compositions(n, total, total) {
            let ins: Vec<_> = ks.iter().map(|&k| Insertion::new(0, k)).collect();
            let value = engine.eval(&zero, &ins)?;
            let brute = oracle.value(&ks);
            let closed = fact(total) / ks.iter().map(|&k| fact(k)).product::<BigInt>();
            checked += 1;
            if value != Rational::from_integer(brute.clone()) || brute != closed {
                report.fail(format!("{ks:?}: engine {value}, string {brute}, closed form {closed}"));
            }
        }
    }
    report.fact("n_max", n_max);
    report.fact("keys", checked);
    Ok(report)
}

/// `N_d` by Kontsevich's recursion.
pub fn kontsevich(max_d: u32) -> Vec<BigInt> {
    let mut n = vec![BigInt::zero(), BigInt::one()];
    for d in 2..=max_d {
        let mut acc = BigInt::zero();
        for a in 1..d {
            let b = d - a;
            let (ai, bi) = (BigInt::from(a), BigInt::from(b));
            let term = &ai * &ai * &bi * &bi * binom(3 * d - 4, 3 * a - 2) - &ai * &ai * &ai * &bi * binom(3 * d - 4, 3 * a - 1);
            acc += &n[a as usize] * &n[b as usize] * term;
        }
        n.push(acc);
    }
    n
}

/// `⟨pt^{3d−1}⟩_d` on P² against the recursion and the expected
/// `1, 1, 12, 620`.
pub fn p2_primaries() -> CliResult<CheckReport> {
    let mut report = CheckReport::new("p2_primaries");
    let engine = Engine::new(Arc::new(TargetSpace::make("P2")?));
    let recursion = kontsevich(4);
    let expected = [1i64, 1, 12, 620];
    let mut values = Vec::new();
    for d in 1..=4u32 {
        let ins = vec![Insertion::new(2, 0); 3 * d as usize - 1];
        let value = engine.eval(&NovikovDegree(vec![d]), &ins)?;
        values.push(value.to_string());
        let want = Rational::from_integer(BigInt::from(expected[d as usize - 1]));
        if value != Rational::from_integer(recursion[d as usize].clone()) || value != want {
            report.fail(format!("N_{d}: engine {value}, recursion {}, expected {want}", recursion[d as usize]));
        }
    }
    report.fact("N", values.join(", "));
    Ok(report)
}

fn random_key(rng: &mut ChaCha8Rng, target: &TargetSpace) -> Option<CorrelatorKey> {
    let rank = target.rank();
    let beta = NovikovDegree(vec![rng.gen_range(1..=3u32)]);
    let n = rng.gen_range(3..=6usize);
    let mut ins: Vec<Insertion> = (0..n).map(|_| Insertion::new(rng.gen_range(0..rank), 0)).collect();
    ins[0] = Insertion::new(1, 0);
    let used: i64 = ins.iter().map(|i| target.basis_degrees[i.basis] as i64).sum();
    let room = vdim(target, &beta, n) - used;
    if room <= 0 {
        return None;
    }
    for _ in 0..room {
        ins[rng.gen_range(1..n)].psi += 1;
    }
    Some(CorrelatorKey::new(beta, ins))
}

/// Random keys with a divisor and a ψ-carrier: the divisor equation and two
/// TRR splittings give the same value as the engine's default route.
pub fn path_independence(seed: u64, per_target: usize) -> CliResult<CheckReport> {
    let mut report = CheckReport::new("reduction_paths");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    for name in ["P1", "P2"] {
        let engine = Engine::new(Arc::new(TargetSpace::make(name)?));
        let target = engine.target().clone();
        let mut local = 0usize;
        let mut attempts = 0usize;
        while local < per_target && attempts < 100 * per_target {
            attempts += 1;
            let Some(key) = random_key(&mut rng, &target) else { continue };
            let ins = key.insertions();
            let Some(div) = ins.iter().position(|i| i.basis == 1 && i.psi == 0) else { continue };
            let Some(carrier) = ins.iter().position(|i| i.psi > 0) else { continue };
            let others: Vec<usize> = (0..ins.len()).filter(|&i| i != carrier).collect();
            let value = engine.correlator(&key)?;
            let routes = [
                ("divisor", engine.divisor_reduce(&key, div)?),
                ("trr", engine.trr_reduce(&key, carrier, others[0], others[1])?),
                ("trr'", engine.trr_reduce(&key, carrier, others[others.len() - 1], others[0])?),
            ];
            for (route, v) in routes {
                if v != value {
                    report.fail(format!("{name} {key}: {route} gives {v}, engine {value}"));
                }
            }
            local += 1;
        }
        checked += local;
    }
    report.fact("seed", seed);
    report.fact("keys", checked);
    if checked < 2 * per_target {
        report.fail(format!("only {checked} keys sampled"));
    }
    Ok(report)
}
