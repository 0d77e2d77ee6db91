//! Genus-zero descendant correlators `⟨γ₁ψ^{k₁}, …, γ_nψ^{k_n}⟩_{0,n,β}`.
//!
//! Values are produced by a normal-form reduction system and memoized by
//! canonical key:
//!
//! 1. dimension filter;
//! 2. `β = 0`: product formula on `M̄_{0,n}`;
//! 3. string equation (unit insertion without ψ);
//! 4. divisor equation (degree-one insertion without ψ), with descendant
//!    corrections;
//! 5. genus-zero topological recursion on the first ψ-carrying insertion;
//! 6. primary backend (seed `⟨pt, pt⟩_{0,2,1} = 1` on P¹ and P², and the WDVV
//!    recursion for `⟨pt^{3d-1}⟩_{0,3d-1,d}` on P²);
//! 7. one- and two-point descendants by inverting the divisor equation.
//!
//! The cache is single-threaded (`RefCell`); share an [`Engine`] per thread.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::target::{Backend, CohVector, NovikovDegree, TargetSpace};
use crate::{binomial, factorial, rat, sign, Rational};

/// A cohomology basis class `φ_basis` decorated with `ψ^psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Insertion {
    pub basis: usize,
    pub psi: u32,
}

impl Insertion {
    pub fn new(basis: usize, psi: u32) -> Self {
        Insertion { basis, psi }
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.basis, self.psi)
    }
}

/// Curve class plus the insertions kept sorted, so permutations of the same
/// multiset give identical keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorrelatorKey {
    beta: NovikovDegree,
    insertions: Vec<Insertion>,
}

impl CorrelatorKey {
    pub fn new(beta: NovikovDegree, mut insertions: Vec<Insertion>) -> Self {
        insertions.sort_unstable();
        CorrelatorKey { beta, insertions }
    }

    pub fn beta(&self) -> &NovikovDegree {
        &self.beta
    }

    pub fn insertions(&self) -> &[Insertion] {
        &self.insertions
    }

    pub fn n(&self) -> usize {
        self.insertions.len()
    }

    /// Key with the insertion at `pos` removed.
    fn without(&self, pos: usize) -> Vec<Insertion> {
        let mut v = self.insertions.clone();
        v.remove(pos);
        v
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={};", self.beta)?;
        for ins in &self.insertions {
            write!(f, " {ins}")?;
        }
        Ok(())
    }
}

/// `dim X − 3 − K_X·β + n`.
pub fn vdim(target: &TargetSpace, beta: &NovikovDegree, n: usize) -> i64 {
    target.dim as i64 - 3 + target.c1_pairing(beta) + n as i64
}

/// Stable range: `β ≠ 0` or at least three markings.
pub fn is_stable(beta: &NovikovDegree, n: usize) -> bool {
    !beta.is_zero() || n >= 3
}

/// Sign of the kernel `φ_γ / (±z − ψ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelSign {
    /// `1/(z − ψ) = Σ_l ψ^l z^{-1-l}`.
    Plus,
    /// `1/(−z − ψ) = Σ_l (−1)^{l+1} ψ^l z^{-1-l}`.
    Minus,
}

impl KernelSign {
    /// Coefficient of `ψ^l z^{-1-l}` in the expansion.
    pub fn coefficient(self, l: u32) -> Rational {
        match self {
            KernelSign::Plus => rat(1),
            KernelSign::Minus => sign(l as i64 + 1),
        }
    }
}

pub struct Engine {
    target: Arc<TargetSpace>,
    cache: RefCell<BTreeMap<CorrelatorKey, Rational>>,
    in_progress: RefCell<BTreeSet<CorrelatorKey>>,
    dual_terms: Vec<(usize, usize, Rational)>,
}

impl Engine {
    pub fn new(target: Arc<TargetSpace>) -> Self {
        let dual_terms = target.inverse_pairing_terms();
        Engine {
            target,
            cache: RefCell::new(BTreeMap::new()),
            in_progress: RefCell::new(BTreeSet::new()),
            dual_terms,
        }
    }

    pub fn target(&self) -> &Arc<TargetSpace> {
        &self.target
    }

    /// Number of memoized keys.
    pub fn cache_len(&self) -> usize {
        self.cache.borrow().len()
    }

    fn degree_sum(&self, insertions: &[Insertion]) -> i64 {
        insertions
            .iter()
            .map(|i| self.target.basis_degrees[i.basis] as i64 + i.psi as i64)
            .sum()
    }

    /// Rule 1: `Σ (deg γ_i + k_i) = vdim`.
    pub fn passes_dimension(&self, key: &CorrelatorKey) -> bool {
        self.degree_sum(&key.insertions) == vdim(&self.target, &key.beta, key.n())
    }

    fn check_key(&self, key: &CorrelatorKey) -> Result<()> {
        if key.beta.rank() != self.target.class_rank {
            return Err(Error::Contract(format!(
                "class {} has rank {}, target {} expects {}",
                key.beta,
                key.beta.rank(),
                self.target.name,
                self.target.class_rank
            )));
        }
        if let Some(bad) = key.insertions.iter().find(|i| i.basis >= self.target.rank()) {
            return Err(Error::Contract(format!("basis index {} out of range", bad.basis)));
        }
        if !is_stable(&key.beta, key.n()) {
            return Err(Error::Unstable { beta: key.beta.to_string(), n: key.n() });
        }
        if key.n() == 0 {
            return Err(Error::Contract("zero-point correlators are not supported".into()));
        }
        Ok(())
    }

    /// Evaluate a stable correlator.
    pub fn correlator(&self, key: &CorrelatorKey) -> Result<Rational> {
        self.check_key(key)?;
        if !self.passes_dimension(key) {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.cache.borrow().get(key) {
            return Ok(v.clone());
        }
        if !self.in_progress.borrow_mut().insert(key.clone()) {
            return Err(Error::Contract(format!("cyclic reduction at {key}")));
        }
        let value = self.dispatch(key);
        self.in_progress.borrow_mut().remove(key);
        let value = value?;
        self.cache.borrow_mut().insert(key.clone(), value.clone());
        Ok(value)
    }

    /// Convenience wrapper building the key.
    pub fn eval(&self, beta: &NovikovDegree, insertions: &[Insertion]) -> Result<Rational> {
        self.correlator(&CorrelatorKey::new(beta.clone(), insertions.to_vec()))
    }

    fn dispatch(&self, key: &CorrelatorKey) -> Result<Rational> {
        if key.beta.is_zero() {
            return Ok(self.product_formula(key));
        }
        let ins = &key.insertions;
        if ins.len() >= 3 {
            if let Some(pos) = ins.iter().position(|i| i.basis == 0 && i.psi == 0) {
                return self.string_reduce(key, pos);
            }
            if let Some(pos) = self.divisor_position(key) {
                return self.divisor_reduce(key, pos);
            }
            if let Some(pos) = ins.iter().position(|i| i.psi > 0) {
                let (a, b) = trr_companions(ins.len(), pos);
                return self.trr_reduce(key, pos, a, b);
            }
            return self.primary(key);
        }
        if ins.len() == 2 && ins.iter().all(|i| i.psi == 0) {
            return self.primary(key);
        }
        self.invert_divisor(key)
    }

    fn divisor_position(&self, key: &CorrelatorKey) -> Option<usize> {
        key.insertions.iter().position(|i| {
            i.psi == 0 && self.target.basis_degrees[i.basis] == 1 && self.target.divisor_pairing(i.basis, &key.beta).is_some()
        })
    }

    /// Rule 2, `β = 0`: `(∫ γ₁∪⋯∪γ_n) · (n−3)!/∏ k_i!` when `Σ k_i = n − 3`.
    pub fn product_formula(&self, key: &CorrelatorKey) -> Rational {
        let n = key.n();
        let psi_total: u32 = key.insertions.iter().map(|i| i.psi).sum();
        if n < 3 || psi_total as usize != n - 3 {
            return Rational::zero();
        }
        let t = &self.target;
        let mut class = t.unit();
        for ins in &key.insertions {
            class = t.cup_product(&class, &t.basis(ins.basis));
        }
        let integral = t.integrate(&class);
        if integral.is_zero() {
            return integral;
        }
        let mut denom = Rational::one();
        for ins in &key.insertions {
            denom *= factorial(ins.psi);
        }
        integral * factorial((n - 3) as u32) / denom
    }

    /// String equation on the unit insertion at `pos` (which must have no ψ):
    /// `⟨1, x_1, …⟩_{n+1,β} = Σ_j ⟨…, γ_jψ^{k_j−1}, …⟩_{n,β}`.
    pub fn string_reduce(&self, key: &CorrelatorKey, pos: usize) -> Result<Rational> {
        let unit = key.insertions[pos];
        if unit.basis != 0 || unit.psi != 0 {
            return Err(Error::Contract(format!("string equation needs an undecorated unit at {pos}")));
        }
        let rest = key.without(pos);
        let mut acc = Rational::zero();
        for j in 0..rest.len() {
            if rest[j].psi == 0 {
                continue;
            }
            let mut lowered = rest.clone();
            lowered[j].psi -= 1;
            acc += self.eval(&key.beta, &lowered)?;
        }
        Ok(acc)
    }

    /// Divisor equation on the degree-one insertion `D` at `pos` (no ψ):
    /// `⟨D, x_1, …⟩_β = (D·β)⟨x_1, …⟩_β + Σ_j ⟨…, (γ_j ∪ D)ψ^{k_j−1}, …⟩_β`.
    pub fn divisor_reduce(&self, key: &CorrelatorKey, pos: usize) -> Result<Rational> {
        let d = key.insertions[pos];
        let weight = match self.target.divisor_pairing(d.basis, &key.beta) {
            Some(w) if d.psi == 0 => w,
            _ => return Err(Error::Contract(format!("insertion {d} is not an undecorated divisor"))),
        };
        let rest = key.without(pos);
        let mut acc = if weight == 0 { Rational::zero() } else { rat(weight) * self.eval(&key.beta, &rest)? };
        let divisor = self.target.basis(d.basis);
        for j in 0..rest.len() {
            if rest[j].psi == 0 {
                continue;
            }
            let product = self.target.cup_product(&self.target.basis(rest[j].basis), &divisor);
            for (c, coeff) in product.terms() {
                let mut moved = rest.clone();
                moved[j] = Insertion::new(c, rest[j].psi - 1);
                acc += coeff * self.eval(&key.beta, &moved)?;
            }
        }
        Ok(acc)
    }

    /// Genus-zero topological recursion, splitting the ψ on insertion `carrier`
    /// against the companions `a` and `b`:
    ///
    /// `⟨γψ^{k}, x_a, x_b, R⟩_β = Σ_{β₁+β₂=β} Σ_{S⊔T=R}
    ///     ⟨γψ^{k−1}, S, φ_e⟩_{β₁} g^{ef} ⟨φ_f, x_a, x_b, T⟩_{β₂}`,
    ///
    /// dropping unstable first factors.
    pub fn trr_reduce(&self, key: &CorrelatorKey, carrier: usize, a: usize, b: usize) -> Result<Rational> {
        let ins = &key.insertions;
        let n = ins.len();
        if n < 3 || carrier == a || carrier == b || a == b || carrier >= n || a >= n || b >= n {
            return Err(Error::Contract("TRR needs three distinct insertions".into()));
        }
        if ins[carrier].psi == 0 {
            return Err(Error::Contract("TRR carrier has no ψ".into()));
        }
        let lowered = Insertion::new(ins[carrier].basis, ins[carrier].psi - 1);
        let rest: Vec<Insertion> =
            (0..n).filter(|&i| i != carrier && i != a && i != b).map(|i| ins[i]).collect();
        let mut acc = Rational::zero();
        for beta1 in key.beta.splittings() {
            let beta2 = key.beta.checked_sub(&beta1).expect("splitting is effective");
            for mask in 0u32..(1 << rest.len()) {
                let mut left = Vec::with_capacity(rest.len() + 2);
                let mut right = Vec::with_capacity(rest.len() + 3);
                left.push(lowered);
                right.push(ins[a]);
                right.push(ins[b]);
                for (i, r) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(*r);
                    } else {
                        right.push(*r);
                    }
                }
                if !is_stable(&beta1, left.len() + 1) {
                    continue;
                }
                for (e, f, g) in &self.dual_terms {
                    left.push(Insertion::new(*e, 0));
                    right.push(Insertion::new(*f, 0));
                    let lv = self.eval(&beta1, &left)?;
                    if !lv.is_zero() {
                        let rv = self.eval(&beta2, &right)?;
                        if !rv.is_zero() {
                            acc += lv * rv * g;
                        }
                    }
                    left.pop();
                    right.pop();
                }
            }
        }
        Ok(acc)
    }

    /// Dilaton equation, used only as a consistency check:
    /// `⟨ψ·1, x_1, …, x_n⟩_{n+1,β} = (n − 2)⟨x_1, …, x_n⟩_{n,β}`.
    pub fn dilaton_rhs(&self, beta: &NovikovDegree, rest: &[Insertion]) -> Result<Rational> {
        Ok(rat(rest.len() as i64 - 2) * self.eval(beta, rest)?)
    }

    /// Rules 6 and 7 need a divisor with nonzero degree on `β`.
    fn pick_divisor(&self, beta: &NovikovDegree) -> Result<(usize, i64)> {
        self.target
            .divisors
            .iter()
            .filter_map(|(i, _)| self.target.divisor_pairing(*i, beta).filter(|&w| w != 0).map(|w| (*i, w)))
            .next()
            .ok_or_else(|| Error::Capability(self.target.name.clone()))
    }

    /// Rule 7: one- and two-point descendants with `β ≠ 0`, by solving the
    /// divisor equation for the correlator without `D`:
    ///
    /// `⟨x…⟩_β = (⟨D, x…⟩_β − Σ_j ⟨…, (γ_j∪D)ψ^{k_j−1}, …⟩_β) / (D·β)`.
    ///
    /// The three-point side is evaluated by TRR directly (it carries a ψ), so
    /// the recursion strictly lowers `(β, Σψ)`.
    fn invert_divisor(&self, key: &CorrelatorKey) -> Result<Rational> {
        if self.target.backend == Backend::None {
            return Err(Error::Capability(self.target.name.clone()));
        }
        let (d, weight) = self.pick_divisor(&key.beta)?;
        let ins = &key.insertions;
        let mut raised = ins.clone();
        raised.push(Insertion::new(d, 0));
        let raised = CorrelatorKey::new(key.beta.clone(), raised);
        let with_divisor = if ins.len() == 2 {
            if !self.passes_dimension(&raised) {
                Rational::zero()
            } else {
                let carrier = raised.insertions.iter().position(|i| i.psi > 0).expect("two-point key carries ψ");
                let (a, b) = trr_companions(3, carrier);
                self.trr_reduce(&raised, carrier, a, b)?
            }
        } else {
            self.correlator(&raised)?
        };
        let divisor = self.target.basis(d);
        let mut corrections = Rational::zero();
        for j in 0..ins.len() {
            if ins[j].psi == 0 {
                continue;
            }
            let product = self.target.cup_product(&self.target.basis(ins[j].basis), &divisor);
            for (c, coeff) in product.terms() {
                let mut moved = ins.clone();
                moved[j] = Insertion::new(c, ins[j].psi - 1);
                corrections += coeff * self.eval(&key.beta, &moved)?;
            }
        }
        Ok((with_divisor - corrections) / rat(weight))
    }

    /// Rule 6: primary correlators with only top-degree-type insertions left.
    fn primary(&self, key: &CorrelatorKey) -> Result<Rational> {
        let t = &self.target;
        let d = key.beta.total();
        match t.backend {
            Backend::P1 | Backend::P2 => {
                let pt = t.dim as usize;
                if key.insertions.iter().any(|i| i.basis != pt || i.psi != 0) {
                    return Err(Error::Capability(format!("{} primary {key}", t.name)));
                }
                let n = key.n();
                if d == 1 && n == 2 {
                    return Ok(rat(1));
                }
                if t.backend == Backend::P2 && n as u32 + 1 == 3 * d {
                    return self.p2_wdvv(d);
                }
                Err(Error::Capability(format!("{} primary {key}", t.name)))
            }
            _ => Err(Error::Capability(t.name.clone())),
        }
    }

    /// `⟨pt^{3d−1}⟩_{0,3d−1,d}` on P² for `d ≥ 2` from the WDVV equation with
    /// insertions `(H, pt | H, pt)` versus `(H, H | pt, pt)` and `3d − 4`
    /// further point classes. The sought invariant appears only in the
    /// `β₁ = 0` term of the second grouping.
    fn p2_wdvv(&self, d: u32) -> Result<Rational> {
        let h = Insertion::new(1, 0);
        let pt = Insertion::new(2, 0);
        let extra = 3 * d - 4;
        let mut acc = Rational::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let b1 = NovikovDegree(alloc::vec![d1]);
            let b2 = NovikovDegree(alloc::vec![d2]);
            for s in 0..=extra {
                let weight = binomial(extra, s);
                let pts = |count: u32| core::iter::repeat_n(pt, count as usize);
                for (e, f, g) in &self.dual_terms {
                    let phi_e = Insertion::new(*e, 0);
                    let phi_f = Insertion::new(*f, 0);

                    let mut l1: Vec<Insertion> = alloc::vec![h, pt, phi_e];
                    l1.extend(pts(s));
                    let mut r1: Vec<Insertion> = alloc::vec![phi_f, h, pt];
                    r1.extend(pts(extra - s));
                    let mixed = self.eval(&b1, &l1)? * self.eval(&b2, &r1)?;

                    let mut l2: Vec<Insertion> = alloc::vec![h, h, phi_e];
                    l2.extend(pts(s));
                    let mut r2: Vec<Insertion> = alloc::vec![phi_f, pt, pt];
                    r2.extend(pts(extra - s));
                    let paired = self.eval(&b1, &l2)? * self.eval(&b2, &r2)?;

                    acc += &weight * g * (mixed - paired);
                }
            }
        }
        Ok(acc)
    }

    /// Kernel insertion `φ_γ/(±z − ψ)` next to `fixed`, expanded in `z⁻¹`:
    /// returns `z-exponent ↦ coefficient`. Only finitely many `l` survive the
    /// dimension filter.
    pub fn correlator_with_kernel(
        &self,
        beta: &NovikovDegree,
        fixed: &[Insertion],
        gamma: usize,
        kernel: KernelSign,
    ) -> Result<BTreeMap<i32, Rational>> {
        let mut out = BTreeMap::new();
        let n = fixed.len() + 1;
        if !is_stable(beta, n) {
            return Err(Error::Unstable { beta: beta.to_string(), n });
        }
        let room = vdim(&self.target, beta, n) - self.degree_sum(fixed) - self.target.basis_degrees[gamma] as i64;
        if room < 0 {
            return Ok(out);
        }
        let l = room as u32;
        let mut ins = fixed.to_vec();
        ins.push(Insertion::new(gamma, l));
        let v = self.eval(beta, &ins)?;
        if !v.is_zero() {
            out.insert(-1 - l as i32, v * kernel.coefficient(l));
        }
        Ok(out)
    }

    /// Expand a linear combination `Σ c_b φ_b` decorated with `ψ^psi` into
    /// insertions.
    pub fn expand(&self, v: &CohVector, psi: u32) -> Vec<(Insertion, Rational)> {
        v.terms().map(|(b, c)| (Insertion::new(b, psi), c.clone())).collect()
    }
}

/// The lexicographically first two positions other than `carrier`.
fn trr_companions(n: usize, carrier: usize) -> (usize, usize) {
    let mut it = (0..n).filter(|&i| i != carrier);
    (it.next().unwrap(), it.next().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn engine(name: &str) -> Engine {
        Engine::new(Arc::new(TargetSpace::make(name).unwrap()))
    }

    fn ins(list: &[(usize, u32)]) -> Vec<Insertion> {
        list.iter().map(|&(b, k)| Insertion::new(b, k)).collect()
    }

    fn d(x: u32) -> NovikovDegree {
        NovikovDegree(vec![x])
    }

    #[test]
    fn vdim_examples() {
        let pt = TargetSpace::make("point").unwrap();
        let p1 = TargetSpace::make("P1").unwrap();
        let p2 = TargetSpace::make("P2").unwrap();
        assert_eq!(vdim(&pt, &NovikovDegree(vec![]), 3), 0);
        assert_eq!(vdim(&p2, &d(1), 2), 4);
        assert_eq!(vdim(&p1, &d(1), 0), 0);
    }

    #[test]
    fn stability_examples() {
        assert!(!is_stable(&d(0), 2));
        assert!(is_stable(&d(1), 0));
        assert!(is_stable(&d(0), 3));
    }

    #[test]
    fn unstable_keys_are_errors() {
        let e = engine("P1");
        let err = e.eval(&d(0), &ins(&[(1, 0), (1, 0)]));
        assert!(matches!(err, Err(Error::Unstable { n: 2, .. })));
    }

    #[test]
    fn point_basics() {
        let e = engine("point");
        let z = NovikovDegree(vec![]);
        assert_eq!(e.eval(&z, &ins(&[(0, 0); 3])).unwrap(), rat(1));
        assert_eq!(e.eval(&z, &ins(&[(0, 2), (0, 0), (0, 0), (0, 0), (0, 0)])).unwrap(), rat(1));
        assert_eq!(e.eval(&z, &ins(&[(0, 1), (0, 1), (0, 0), (0, 0), (0, 0)])).unwrap(), rat(2));
    }

    #[test]
    fn lines_and_conics() {
        let p2 = engine("P2");
        assert_eq!(p2.eval(&d(1), &ins(&[(1, 0), (2, 0), (2, 0)])).unwrap(), rat(1));
        assert_eq!(p2.eval(&d(1), &ins(&[(2, 0), (2, 0)])).unwrap(), rat(1));
        assert_eq!(p2.eval(&d(2), &ins(&[(2, 0); 5])).unwrap(), rat(1));
        assert_eq!(p2.eval(&d(3), &ins(&[(2, 0); 8])).unwrap(), rat(12));
        let p1 = engine("P1");
        assert_eq!(p1.eval(&d(1), &ins(&[(1, 0), (1, 0)])).unwrap(), rat(1));
    }

    #[test]
    fn p1_low_point_descendants() {
        // Values read off the degree-one term z/(H+z)^2 of the small J-function.
        let p1 = engine("P1");
        assert_eq!(p1.eval(&d(1), &ins(&[(1, 0)])).unwrap(), rat(1));
        assert_eq!(p1.eval(&d(1), &ins(&[(0, 1)])).unwrap(), rat(-2));
        // Dilaton: ⟨ψ·1, pt⟩_{0,2,1} = (1 − 2)⟨pt⟩_{0,1,1}.
        assert_eq!(p1.eval(&d(1), &ins(&[(0, 1), (1, 0)])).unwrap(), rat(-1));
        // String: ⟨ψ²·1, 1⟩_{0,2,1} = ⟨ψ·1⟩_{0,1,1}.
        assert_eq!(p1.eval(&d(1), &ins(&[(0, 2), (0, 0)])).unwrap(), rat(-2));
    }

    #[test]
    fn kernel_expansion_on_point() {
        let e = engine("point");
        let z = NovikovDegree(vec![]);
        let m = e.correlator_with_kernel(&z, &ins(&[(0, 0), (0, 0)]), 0, KernelSign::Minus).unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(-1, rat(-1))]);
        let p = e.correlator_with_kernel(&z, &ins(&[(0, 0), (0, 0)]), 0, KernelSign::Plus).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(-1, rat(1))]);
    }

    #[test]
    fn custom_targets_have_no_positive_degree_backend() {
        let p1 = TargetSpace::make("P1").unwrap();
        let custom = TargetSpace::custom(
            "mine",
            1,
            p1.basis_degrees.clone(),
            p1.pairing.clone(),
            p1.cup.clone(),
            1,
            vec![2],
            vec![(1, vec![1])],
        )
        .unwrap();
        let e = Engine::new(Arc::new(custom));
        assert_eq!(e.eval(&d(0), &ins(&[(0, 0), (0, 0), (1, 0)])).unwrap(), rat(1));
        assert!(matches!(e.eval(&d(1), &ins(&[(1, 0), (1, 0)])), Err(Error::Capability(_))));
    }
}
