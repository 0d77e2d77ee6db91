use std::collections::HashMap;
use std::sync::Arc;

use conelab_core::engine::{is_stable, vdim};
use conelab_core::{rat, CorrelatorKey, Engine, Insertion, NovikovDegree, Rational, TargetSpace};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn engine(name: &str) -> Engine {
    Engine::new(Arc::new(TargetSpace::make(name).unwrap()))
}

fn d(x: u32) -> NovikovDegree {
    NovikovDegree(vec![x])
}

fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// ⟨τ_{k_1} … τ_{k_n}⟩ on the point by the string equation alone, starting
/// from ⟨τ_0³⟩ = 1.
fn point_by_string(ks: &mut Vec<u32>, memo: &mut HashMap<Vec<u32>, BigInt>) -> BigInt {
    ks.sort_unstable();
    let n = ks.len();
    let total: u32 = ks.iter().sum();
    if n < 3 || total as usize != n - 3 {
        return BigInt::zero();
    }
    if n == 3 {
        return BigInt::one();
    }
    if let Some(v) = memo.get(ks.as_slice()) {
        return v.clone();
    }
    // Σk = n − 3 < n, so some insertion has k = 0; after sorting it is first.
    let rest: Vec<u32> = ks[1..].to_vec();
    let mut acc = BigInt::zero();
    for j in 0..rest.len() {
        if rest[j] > 0 {
            let mut lowered = rest.clone();
            lowered[j] -= 1;
            acc += point_by_string(&mut lowered, memo);
        }
    }
    memo.insert(ks.clone(), acc.clone());
    acc
}

/// Non-increasing ψ-power vectors of length `n` summing to `total`.
fn partitions(n: usize, total: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=max.min(total)).rev() {
        for mut tail in partitions(n - 1, total - first, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

#[test]
fn point_psi_integrals_match_string_oracle_and_closed_form() {
    let e = engine("point");
    let zero = NovikovDegree(vec![]);
    let mut memo = HashMap::new();
    for n in 3..=8usize {
        for ks in partitions(n, n as u32 - 3, n as u32 - 3) {
            let ins: Vec<_> = ks.iter().map(|&k| Insertion::new(0, k)).collect();
            let value = e.eval(&zero, &ins).unwrap();
            let oracle = point_by_string(&mut ks.clone(), &mut memo);
            let closed = fact(n as u32 - 3) / ks.iter().map(|&k| fact(k)).product::<BigInt>();
            assert_eq!(value, Rational::from_integer(oracle.clone()), "{ks:?}");
            assert_eq!(oracle, closed, "{ks:?}");
        }
    }
}

/// Kontsevich: N_d = Σ N_a N_b [a²b² C(3d−4, 3a−2) − a³b C(3d−4, 3a−1)].
fn kontsevich(max_d: u32) -> Vec<BigInt> {
    let binom = |n: u32, k: u32| -> BigInt {
        if k > n {
            BigInt::zero()
        } else {
            fact(n) / (fact(k) * fact(n - k))
        }
    };
    let mut n = vec![BigInt::zero(), BigInt::one()];
    for dd in 2..=max_d {
        let mut acc = BigInt::zero();
        for a in 1..dd {
            let b = dd - a;
            let (ai, bi) = (BigInt::from(a), BigInt::from(b));
            let term = &ai * &ai * &bi * &bi * binom(3 * dd - 4, 3 * a - 2)
                - &ai * &ai * &ai * &bi * binom(3 * dd - 4, 3 * a - 1);
            acc += &n[a as usize] * &n[b as usize] * term;
        }
        n.push(acc);
    }
    n
}

#[test]
fn p2_primaries_match_kontsevich() {
    let e = engine("P2");
    let oracle = kontsevich(4);
    let expected: Vec<i64> = vec![1, 1, 12, 620];
    for dd in 1..=4u32 {
        let ins = vec![Insertion::new(2, 0); 3 * dd as usize - 1];
        let value = e.eval(&d(dd), &ins).unwrap();
        assert_eq!(value, Rational::from_integer(oracle[dd as usize].clone()));
        assert_eq!(value, rat(expected[dd as usize - 1]));
    }
}

#[test]
fn p1_two_point_descendants_from_j_function() {
    // Degree-one part of z(H+z)^{-2}: ⟨φ_a/(z−ψ)⟩_{0,1,1} expanded in 1/z.
    let e = engine("P1");
    assert_eq!(e.eval(&d(1), &[Insertion::new(1, 0)]).unwrap(), rat(1));
    assert_eq!(e.eval(&d(1), &[Insertion::new(0, 1)]).unwrap(), rat(-2));
    // Two points: ⟨pt, pt⟩ = 1 and the dilaton gives ⟨ψ·1, pt⟩ = −⟨pt⟩.
    assert_eq!(e.eval(&d(1), &[Insertion::new(1, 0), Insertion::new(1, 0)]).unwrap(), rat(1));
    assert_eq!(e.eval(&d(1), &[Insertion::new(0, 1), Insertion::new(1, 0)]).unwrap(), rat(-1));
    assert_eq!(e.eval(&d(1), &[Insertion::new(0, 2), Insertion::new(1, 0)]).unwrap(), rat(0));
}

fn random_key(rng: &mut ChaCha8Rng, target: &TargetSpace) -> Option<CorrelatorKey> {
    let rank = target.rank();
    let dd = rng.gen_range(0..=3u32);
    let n = rng.gen_range(3..=6usize);
    let beta = d(dd);
    let mut ins: Vec<Insertion> = (0..n).map(|_| Insertion::new(rng.gen_range(0..rank), 0)).collect();
    // Force one undecorated divisor and put the remaining dimension as ψ
    // on other insertions.
    ins[0] = Insertion::new(1, 0);
    let used: i64 = ins.iter().map(|i| target.basis_degrees[i.basis] as i64).sum();
    let mut room = vdim(target, &beta, n) - used;
    if room <= 0 {
        return None;
    }
    while room > 0 {
        let j = rng.gen_range(1..n);
        ins[j].psi += 1;
        room -= 1;
    }
    Some(CorrelatorKey::new(beta, ins))
}

#[test]
fn reduction_path_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for name in ["P1", "P2"] {
        let e = engine(name);
        let target = e.target().clone();
        let mut attempts = 0;
        let mut local = 0;
        while local < 60 && attempts < 5000 {
            attempts += 1;
            let Some(key) = random_key(&mut rng, &target) else { continue };
            if key.beta().is_zero() {
                continue;
            }
            let ins = key.insertions();
            let Some(div) = ins.iter().position(|i| i.basis == 1 && i.psi == 0) else { continue };
            let Some(carrier) = ins.iter().position(|i| i.psi > 0) else { continue };
            let others: Vec<usize> = (0..ins.len()).filter(|&i| i != carrier).collect();
            let by_divisor = e.divisor_reduce(&key, div).unwrap();
            let by_trr = e.trr_reduce(&key, carrier, others[0], others[1]).unwrap();
            let by_trr_alt = e.trr_reduce(&key, carrier, others[others.len() - 1], others[0]).unwrap();
            let value = e.correlator(&key).unwrap();
            assert_eq!(by_divisor, value, "{key}");
            assert_eq!(by_trr, value, "{key}");
            assert_eq!(by_trr_alt, value, "{key}");
            local += 1;
        }
        checked += local;
    }
    assert!(checked >= 100, "only {checked} keys");
}

fn string_and_dilaton_hold(e: &Engine, beta: &NovikovDegree, rest: &[Insertion]) {
    let target = e.target().clone();
    let n = rest.len();
    if !is_stable(beta, n) {
        return;
    }
    let mut with_unit = rest.to_vec();
    with_unit.push(Insertion::new(0, 0));
    let lhs = e.eval(beta, &with_unit).unwrap();
    let mut rhs = Rational::zero();
    for j in 0..n {
        if rest[j].psi > 0 {
            let mut lowered = rest.to_vec();
            lowered[j].psi -= 1;
            rhs += e.eval(beta, &lowered).unwrap();
        }
    }
    assert_eq!(lhs, rhs, "string at {beta} {rest:?} on {}", target.name);

    let mut with_dilaton = rest.to_vec();
    with_dilaton.push(Insertion::new(0, 1));
    let lhs = e.eval(beta, &with_dilaton).unwrap();
    let rhs = rat(n as i64 - 2) * e.eval(beta, rest).unwrap();
    assert_eq!(lhs, rhs, "dilaton at {beta} {rest:?} on {}", target.name);
}

#[test]
fn string_and_dilaton_on_low_point_keys() {
    // One- and two-point keys exercise the divisor-inversion path.
    for name in ["P1", "P2"] {
        let e = engine(name);
        let rank = e.target().rank();
        for dd in 1..=3 {
            for a in 0..rank {
                for k in 0..=6 {
                    string_and_dilaton_hold(&e, &d(dd), &[Insertion::new(a, k)]);
                    for b in 0..rank {
                        for l in 0..=3 {
                            string_and_dilaton_hold(&e, &d(dd), &[Insertion::new(a, k), Insertion::new(b, l)]);
                        }
                    }
                }
            }
        }
    }
}

fn insertion_strategy(rank: usize) -> impl Strategy<Value = Insertion> {
    (0..rank, 0u32..4).prop_map(|(b, k)| Insertion::new(b, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_symmetry(ins in proptest::collection::vec(insertion_strategy(3), 1..6), dd in 0u32..3, seed in any::<u64>()) {
        let e = engine("P2");
        let beta = d(dd);
        prop_assume!(is_stable(&beta, ins.len()));
        let mut shuffled = ins.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(e.eval(&beta, &ins).unwrap(), e.eval(&beta, &shuffled).unwrap());
    }

    #[test]
    fn string_and_dilaton_consistency(ins in proptest::collection::vec(insertion_strategy(2), 1..5), dd in 0u32..4) {
        let e = engine("P1");
        string_and_dilaton_hold(&e, &d(dd), &ins);
    }
}

#[test]
fn unstable_and_zero_point_keys_are_errors() {
    let e = engine("P1");
    assert!(e.eval(&d(0), &[Insertion::new(0, 0)]).is_err());
    assert!(e.eval(&d(1), &[]).is_err());
}
