//! Sparse truncated elements of the Givental space `H*(X)[z, z⁻¹⟧`.
//!
//! A term is indexed by its `z`-exponent, a basis index, a Novikov degree and
//! an `ε`-order (the number of `t`-insertions it carries). Grades beyond the
//! truncation are dropped, which is exact because every identity is checked
//! grade by grade. A `z`-exponent outside the window is an error.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::target::{CohVector, NovikovDegree, TargetSpace};
use crate::{sign, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    /// Keep Novikov degrees of total degree `≤ novikov_order`.
    pub novikov_order: u32,
    /// Keep `ε`-orders `≤ epsilon_order`.
    pub epsilon_order: u32,
    pub z_min: i32,
    pub z_max: i32,
}

impl Truncation {
    pub fn new(novikov_order: u32, epsilon_order: u32, z_min: i32, z_max: i32) -> Result<Self> {
        if z_min > 0 || z_max < 1 {
            return Err(Error::InvalidTruncation(format!(
                "z-window [{z_min}, {z_max}] must satisfy z_min <= 0 < z_max"
            )));
        }
        Ok(Truncation { novikov_order, epsilon_order, z_min, z_max })
    }

    pub fn keeps(&self, beta: &NovikovDegree, eps: u32) -> bool {
        beta.total() <= self.novikov_order && eps <= self.epsilon_order
    }

    pub fn check_z(&self, exp: i32) -> Result<()> {
        if exp < self.z_min || exp > self.z_max {
            Err(Error::WindowOverflow { exp, z_min: self.z_min, z_max: self.z_max })
        } else {
            Ok(())
        }
    }

    /// Same grading bounds with a different window.
    pub fn with_window(&self, z_min: i32, z_max: i32) -> Result<Self> {
        Self::new(self.novikov_order, self.epsilon_order, z_min, z_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeriesKey {
    pub z_exp: i32,
    pub basis: usize,
    pub beta: NovikovDegree,
    pub eps: u32,
}

impl fmt::Display for SeriesKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{} φ_{} Q^{} ε^{}", self.z_exp, self.basis, self.beta, self.eps)
    }
}

/// Truncated element of the Givental space tensored with the Novikov and
/// `ε` gradings.
#[derive(Clone, Debug)]
pub struct GiventalSeries {
    target: Arc<TargetSpace>,
    trunc: Truncation,
    terms: BTreeMap<SeriesKey, Rational>,
}

impl PartialEq for GiventalSeries {
    fn eq(&self, other: &Self) -> bool {
        self.target.name == other.target.name && self.trunc == other.trunc && self.terms == other.terms
    }
}

impl GiventalSeries {
    pub fn zero(target: Arc<TargetSpace>, trunc: Truncation) -> Self {
        GiventalSeries { target, trunc, terms: BTreeMap::new() }
    }

    /// `coeff · φ_basis z^z_exp Q^beta ε^eps`.
    pub fn monomial(
        target: Arc<TargetSpace>,
        trunc: Truncation,
        z_exp: i32,
        basis: usize,
        beta: NovikovDegree,
        eps: u32,
        coeff: Rational,
    ) -> Result<Self> {
        let mut s = Self::zero(target, trunc);
        s.add_term(SeriesKey { z_exp, basis, beta, eps }, coeff)?;
        Ok(s)
    }

    /// `v · z^z_exp` at grade `(beta, eps)`.
    pub fn from_vector(
        target: Arc<TargetSpace>,
        trunc: Truncation,
        z_exp: i32,
        v: &CohVector,
        beta: &NovikovDegree,
        eps: u32,
    ) -> Result<Self> {
        let mut s = Self::zero(target, trunc);
        s.add_vector(z_exp, v, beta, eps, &Rational::from_integer(1.into()))?;
        Ok(s)
    }

    pub fn target(&self) -> &Arc<TargetSpace> {
        &self.target
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeriesKey, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &SeriesKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulate `coeff` at `key`. Grades beyond the truncation are dropped;
    /// a `z`-exponent outside the window is an error.
    pub fn add_term(&mut self, key: SeriesKey, coeff: Rational) -> Result<()> {
        if coeff.is_zero() || !self.trunc.keeps(&key.beta, key.eps) {
            return Ok(());
        }
        self.trunc.check_z(key.z_exp)?;
        let entry = self.terms.entry(key);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    /// Accumulate `scale · v · z^z_exp` at grade `(beta, eps)`.
    pub fn add_vector(
        &mut self,
        z_exp: i32,
        v: &CohVector,
        beta: &NovikovDegree,
        eps: u32,
        scale: &Rational,
    ) -> Result<()> {
        if !self.trunc.keeps(beta, eps) {
            return Ok(());
        }
        for (basis, c) in v.terms() {
            self.add_term(SeriesKey { z_exp, basis, beta: beta.clone(), eps }, c * scale)?;
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc
            || self.target.name != other.target.name
            || self.target.rank() != other.target.rank()
        {
            return Err(Error::TruncationMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.target.clone(), self.trunc);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    /// `f(z) ↦ f(-z)`.
    pub fn negate_z(&self) -> Self {
        let mut out = self.clone();
        for (k, v) in out.terms.iter_mut() {
            if k.z_exp.rem_euclid(2) == 1 {
                *v = -v.clone();
            }
        }
        out
    }

    /// The part at a single `(β, ε)` grade.
    pub fn grade(&self, beta: &NovikovDegree, eps: u32) -> Self {
        let mut out = Self::zero(self.target.clone(), self.trunc);
        out.terms = self
            .terms
            .iter()
            .filter(|(k, _)| &k.beta == beta && k.eps == eps)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out
    }

    /// Coefficient of `z^z_exp` at a grade, as a cohomology vector.
    pub fn vector_at(&self, z_exp: i32, beta: &NovikovDegree, eps: u32) -> CohVector {
        let mut v = CohVector::zero(self.target.rank());
        for b in 0..self.target.rank() {
            v.0[b] = self.coeff(&SeriesKey { z_exp, basis: b, beta: beta.clone(), eps });
        }
        v
    }

    /// Re-home the series in a wider (or narrower) truncation.
    pub fn retruncate(&self, trunc: Truncation) -> Result<Self> {
        let mut out = Self::zero(self.target.clone(), trunc);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone())?;
        }
        Ok(out)
    }

    /// `(H₊ part, H₋ part)`: non-negative and negative `z`-exponents.
    pub fn split_plus_minus(&self) -> (Self, Self) {
        let mut plus = Self::zero(self.target.clone(), self.trunc);
        let mut minus = Self::zero(self.target.clone(), self.trunc);
        for (k, c) in &self.terms {
            if k.z_exp >= 0 {
                plus.terms.insert(k.clone(), c.clone());
            } else {
                minus.terms.insert(k.clone(), c.clone());
            }
        }
        (plus, minus)
    }

    /// Membership in `H₊` (no negative powers) or `z·H₊` (no non-positive
    /// powers). On failure every offending key is listed.
    pub fn is_z_polynomial(&self, mode: PolyMode) -> PolyCheck {
        let bound = match mode {
            PolyMode::HPlus => -1,
            PolyMode::ZHPlus => 0,
        };
        let offending: Vec<SeriesKey> = self.terms.keys().filter(|k| k.z_exp <= bound).cloned().collect();
        PolyCheck { holds: offending.is_empty(), offending }
    }

    /// Poincaré pairing extended bilinearly in `z`, `Q` and `ε`.
    pub fn pair_extend(&self, other: &Self) -> Result<ScalarSeries> {
        self.compatible(other)?;
        let t = &self.target;
        let mut out = ScalarSeries::zero(self.trunc);
        for (kf, cf) in &self.terms {
            for (kg, cg) in &other.terms {
                let g = &t.pairing[kf.basis][kg.basis];
                if g.is_zero() {
                    continue;
                }
                let beta = &kf.beta + &kg.beta;
                let eps = kf.eps + kg.eps;
                if !self.trunc.keeps(&beta, eps) {
                    continue;
                }
                out.add_term(kf.z_exp + kg.z_exp, beta, eps, cf * cg * g)?;
            }
        }
        Ok(out)
    }

    /// `Ω(f, g) = Res_{z=0} (f(-z), g(z)) dz`.
    ///
    /// Only exponent pairs summing to `-1` reach the residue, so this never
    /// forms the full product and cannot overflow the window.
    pub fn omega(&self, other: &Self) -> Result<GradedScalars> {
        self.compatible(other)?;
        let t = &self.target;
        let mut by_exp: BTreeMap<i32, Vec<(&SeriesKey, &Rational)>> = BTreeMap::new();
        for (k, c) in &other.terms {
            by_exp.entry(k.z_exp).or_default().push((k, c));
        }
        let mut out = GradedScalars::zero(self.trunc);
        for (kf, cf) in &self.terms {
            let Some(partners) = by_exp.get(&(-1 - kf.z_exp)) else { continue };
            let s = sign(kf.z_exp as i64);
            for (kg, cg) in partners {
                let g = &t.pairing[kf.basis][kg.basis];
                if g.is_zero() {
                    continue;
                }
                out.add(&(&kf.beta + &kg.beta), kf.eps + kg.eps, &s * cf * *cg * g);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GiventalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) {k}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyMode {
    /// No negative powers of `z`.
    HPlus,
    /// No non-positive powers of `z`.
    ZHPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCheck {
    pub holds: bool,
    pub offending: Vec<SeriesKey>,
}

/// Scalar series in `z`, `Q` and `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSeries {
    trunc: Truncation,
    terms: BTreeMap<(i32, NovikovDegree, u32), Rational>,
}

impl ScalarSeries {
    pub fn zero(trunc: Truncation) -> Self {
        ScalarSeries { trunc, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, z_exp: i32, beta: NovikovDegree, eps: u32, coeff: Rational) -> Result<()> {
        if coeff.is_zero() || !self.trunc.keeps(&beta, eps) {
            return Ok(());
        }
        self.trunc.check_z(z_exp)?;
        let key = (z_exp, beta, eps);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += coeff;
        if v.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn coeff(&self, z_exp: i32, beta: &NovikovDegree, eps: u32) -> Rational {
        self.terms.get(&(z_exp, beta.clone(), eps)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, NovikovDegree, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Residue: the `z⁻¹` coefficients per grade.
    pub fn residue(&self) -> GradedScalars {
        let mut out = GradedScalars::zero(self.trunc);
        for ((z, b, e), c) in &self.terms {
            if *z == -1 {
                out.add(b, *e, c.clone());
            }
        }
        out
    }
}

/// Scalars graded by Novikov degree and `ε`-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedScalars {
    trunc: Truncation,
    terms: BTreeMap<(NovikovDegree, u32), Rational>,
}

impl GradedScalars {
    pub fn zero(trunc: Truncation) -> Self {
        GradedScalars { trunc, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, beta: &NovikovDegree, eps: u32, coeff: Rational) {
        if coeff.is_zero() || !self.trunc.keeps(beta, eps) {
            return;
        }
        let key = (beta.clone(), eps);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += coeff;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn get(&self, beta: &NovikovDegree, eps: u32) -> Rational {
        self.terms.get(&(beta.clone(), eps)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(NovikovDegree, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_series(&mut self, other: &Self) {
        for ((b, e), c) in &other.terms {
            self.add(b, *e, c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.trunc);
        for ((b, e), v) in &self.terms {
            out.add(b, *e, v * c);
        }
        out
    }

    /// Graded product, truncated.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.trunc);
        for ((b1, e1), c1) in &self.terms {
            for ((b2, e2), c2) in &other.terms {
                out.add(&(b1 + b2), e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// `A_α^k = φ_α z^k` and `B^γ_l = φ^γ (−z)^{−1−l}`: checks
/// `Ω(A, B) = −δ δ` and `Ω(A, A) = Ω(B, B) = 0` for `k, l ≤ k_max`.
pub fn check_darboux(target: &Arc<TargetSpace>, k_max: u32) -> Result<crate::report::CheckReport> {
    let mut report = crate::report::CheckReport::new("darboux");
    let rank = target.rank();
    let reach = k_max as i32 + 1;
    let trunc = Truncation::new(0, 0, -reach, reach)?;
    let zero = target.zero_class();
    let one = Rational::from_integer(1.into());
    let a = |alpha: usize, k: u32| GiventalSeries::from_vector(target.clone(), trunc, k as i32, &target.basis(alpha), &zero, 0);
    let b = |gamma: usize, l: u32| {
        let v = target.dual(gamma).scale(&sign(1 + l as i64));
        GiventalSeries::from_vector(target.clone(), trunc, -1 - l as i32, &v, &zero, 0)
    };
    let mut checked = 0usize;
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..=k_max {
                for l in 0..=k_max {
                    let expected = if i == j && k == l { -one.clone() } else { Rational::zero() };
                    let pairs = [
                        ("A,B", a(i, k)?, b(j, l)?, expected),
                        ("A,A", a(i, k)?, a(j, l)?, Rational::zero()),
                        ("B,B", b(i, k)?, b(j, l)?, Rational::zero()),
                    ];
                    for (name, f, g, want) in pairs {
                        let got = f.omega(&g)?.get(&zero, 0);
                        checked += 1;
                        if got != want {
                            report.fail(format!("Ω({name}) at ({i},{k}),({j},{l}): {got} vs {want}"));
                        }
                    }
                }
            }
        }
    }
    report.fact("target", &target.name);
    report.fact("k_max", k_max);
    report.fact("pairs", checked);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, rat};

    fn setup(name: &str) -> (Arc<TargetSpace>, Truncation) {
        (Arc::new(TargetSpace::make(name).unwrap()), Truncation::new(1, 1, -8, 8).unwrap())
    }

    fn mono(t: &Arc<TargetSpace>, tr: Truncation, z: i32, b: usize, c: Rational) -> GiventalSeries {
        GiventalSeries::monomial(t.clone(), tr, z, b, t.zero_class(), 0, c).unwrap()
    }

    #[test]
    fn truncation_window_must_straddle_zero() {
        assert!(Truncation::new(0, 0, 1, 3).is_err());
        assert!(Truncation::new(0, 0, -1, 0).is_err());
        assert!(Truncation::new(0, 0, 0, 1).is_ok());
    }

    #[test]
    fn add_cancels_and_doubles() {
        let (t, tr) = setup("point");
        let a = mono(&t, tr, 1, 0, rat(1));
        let b = mono(&t, tr, 1, 0, rat(-1));
        assert!(a.add(&b).unwrap().is_zero());
        let c = mono(&t, tr, 0, 0, rat(1));
        assert_eq!(c.add(&c).unwrap(), mono(&t, tr, 0, 0, rat(2)));
        assert_eq!(a.add(&GiventalSeries::zero(t.clone(), tr)).unwrap(), a);
    }

    #[test]
    fn mismatched_truncations_are_rejected() {
        let (t, tr) = setup("point");
        let other = Truncation::new(2, 1, -8, 8).unwrap();
        let a = mono(&t, tr, 0, 0, rat(1));
        let b = GiventalSeries::zero(t.clone(), other);
        assert_eq!(a.add(&b), Err(Error::TruncationMismatch));
    }

    #[test]
    fn out_of_window_terms_fail_loudly() {
        let (t, tr) = setup("P1");
        let err = GiventalSeries::monomial(t, tr, 9, 0, NovikovDegree(alloc::vec![0]), 0, rat(1));
        assert!(matches!(err, Err(Error::WindowOverflow { exp: 9, .. })));
    }

    #[test]
    fn beyond_grade_terms_are_dropped() {
        let (t, tr) = setup("P1");
        let s = GiventalSeries::monomial(t, tr, 0, 0, NovikovDegree(alloc::vec![2]), 0, rat(1)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn pair_extend_examples() {
        let (t, tr) = setup("point");
        let f = mono(&t, tr, 2, 0, rat(3));
        let g = mono(&t, tr, -1, 0, frac(1, 2));
        let p = f.pair_extend(&g).unwrap();
        assert_eq!(p.coeff(1, &t.zero_class(), 0), frac(3, 2));
        assert!(f.pair_extend(&GiventalSeries::zero(t.clone(), tr)).unwrap().is_zero());

        let (p2, tr2) = setup("P2");
        let h = mono(&p2, tr2, 0, 1, rat(1));
        assert_eq!(h.pair_extend(&h).unwrap().coeff(0, &p2.zero_class(), 0), rat(1));
    }

    #[test]
    fn pair_extend_overflow() {
        let (t, tr) = setup("point");
        let f = mono(&t, tr, 5, 0, rat(1));
        assert!(matches!(f.pair_extend(&f), Err(Error::WindowOverflow { exp: 10, .. })));
    }

    #[test]
    fn omega_on_point_matches_residue_formula() {
        let (t, tr) = setup("point");
        // f = Σ a_k z^k, g = Σ b_l z^l with a few terms each.
        let a = [(-3, frac(1, 2)), (0, rat(2)), (2, rat(-1))];
        let b = [(-1, rat(5)), (-3, frac(2, 3)), (1, rat(7)), (2, rat(1))];
        let mut f = GiventalSeries::zero(t.clone(), tr);
        for (k, c) in &a {
            f = f.add(&mono(&t, tr, *k, 0, c.clone())).unwrap();
        }
        let mut g = GiventalSeries::zero(t.clone(), tr);
        for (l, c) in &b {
            g = g.add(&mono(&t, tr, *l, 0, c.clone())).unwrap();
        }
        let mut want = rat(0);
        for (k, ak) in &a {
            for (l, bl) in &b {
                if k + l == -1 {
                    want += sign(*k as i64) * ak * bl;
                }
            }
        }
        assert_eq!(f.omega(&g).unwrap().get(&t.zero_class(), 0), want);
        // Same thing through the residue of the extended pairing.
        let via_pair = f.negate_z().pair_extend(&g).unwrap().residue();
        assert_eq!(via_pair.get(&t.zero_class(), 0), want);
    }

    #[test]
    fn split_and_polynomial_checks() {
        let (t, tr) = setup("P1");
        let up = mono(&t, tr, 1, 0, rat(1));
        let down = mono(&t, tr, -1, 1, rat(1));
        let f = up.add(&down).unwrap();
        let (p, m) = f.split_plus_minus();
        assert_eq!(p, up);
        assert_eq!(m, down);
        let (p0, m0) = GiventalSeries::zero(t.clone(), tr).split_plus_minus();
        assert!(p0.is_zero() && m0.is_zero());

        assert!(mono(&t, tr, 1, 0, rat(-1)).is_z_polynomial(PolyMode::ZHPlus).holds);
        let c = down.is_z_polynomial(PolyMode::HPlus);
        assert!(!c.holds);
        assert_eq!(c.offending, alloc::vec![SeriesKey { z_exp: -1, basis: 1, beta: t.zero_class(), eps: 0 }]);
        let one = mono(&t, tr, 0, 0, rat(1));
        assert!(one.is_z_polynomial(PolyMode::HPlus).holds);
        assert!(!one.is_z_polynomial(PolyMode::ZHPlus).holds);
    }
}
