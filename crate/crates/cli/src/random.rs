use conelab_core::{frac, CohVector, TPolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random `t(z)` of the given degree with coefficients `p/q`,
/// `|p| ≤ 9`, `1 ≤ q ≤ 9`.
pub fn random_t(rank: usize, degree: usize, seed: u64) -> TPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..=degree)
        .map(|_| CohVector((0..rank).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect()))
        .collect();
    TPolynomial::new(coeffs).expect("rank is consistent")
}
