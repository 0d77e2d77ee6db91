//! Dilaton shift, the Lagrangian cone, the fundamental solution `S_t` and its
//! adjoint, all built from correlators with `t(ψ)` insertions.
//!
//! The input point `t(z) = Σ t_k z^k` is scaled by the bookkeeping variable
//! `ε`, so a term with `n` copies of `t` sits at `ε^n` and truncation in `ε`
//! is exact.

mod checks;
mod endo;

pub use checks::{
    check_cone_in_tangent, check_inverse, check_lagrangian, check_polynomiality, check_tangent_identity,
    check_transpose, check_universal_relations,
};
pub use endo::{EndoKey, EndoSeries};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use crate::engine::{is_stable, vdim, Engine, Insertion, KernelSign};
use crate::error::{Error, Result};
use crate::series::{GiventalSeries, GradedScalars, SeriesKey, Truncation};
use crate::target::{CohVector, NovikovDegree, TargetSpace};
use crate::{factorial, rat, sign, Rational};

/// `t(z) = Σ_k t_k z^k` with `t_k ∈ H*(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPolynomial {
    coeffs: Vec<CohVector>,
}

impl TPolynomial {
    pub fn new(coeffs: Vec<CohVector>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Contract("t(z) needs at least the z^0 coefficient".into()));
        };
        if coeffs.iter().any(|c| c.len() != first.len()) {
            return Err(Error::Contract("t(z) coefficients have different lengths".into()));
        }
        Ok(TPolynomial { coeffs })
    }

    pub fn zero(rank: usize) -> Self {
        TPolynomial { coeffs: vec![CohVector::zero(rank)] }
    }

    pub fn rank(&self) -> usize {
        self.coeffs[0].len()
    }

    /// Highest power of `z` stored (not necessarily nonzero).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CohVector] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CohVector::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TPolynomial { coeffs: self.coeffs.iter().map(|v| v.scale(c)).collect() }
    }

    /// Nonzero coordinates `t_k^α` as `(φ_α ψ^k, t_k^α)`.
    pub fn monomials(&self) -> Vec<(Insertion, Rational)> {
        let mut out = Vec::new();
        for (k, v) in self.coeffs.iter().enumerate() {
            for (a, c) in v.terms() {
                out.push((Insertion::new(a, k as u32), c.clone()));
            }
        }
        out
    }
}

/// `q(z) = t(z) − z·1`, with `−z·1` at `ε⁰` and `t` at `ε¹`.
pub fn dilaton_shift(target: &Arc<TargetSpace>, trunc: Truncation, t: &TPolynomial) -> Result<GiventalSeries> {
    let zero = target.zero_class();
    let mut q = GiventalSeries::monomial(target.clone(), trunc, 1, 0, zero.clone(), 0, rat(-1))?;
    for (k, v) in t.coeffs.iter().enumerate() {
        q.add_vector(k as i32, v, &zero, 1, &rat(1))?;
    }
    Ok(q)
}

/// Inverse of [`dilaton_shift`]; rejects anything that is not of that shape.
pub fn dilaton_unshift(q: &GiventalSeries) -> Result<TPolynomial> {
    let rank = q.target().rank();
    let mut coeffs: Vec<CohVector> = vec![CohVector::zero(rank)];
    let mut shift_seen = false;
    for (key, c) in q.terms() {
        if !key.beta.is_zero() {
            return Err(Error::Contract(format!("dilaton-shifted point has a Novikov term at {key}")));
        }
        match key.eps {
            0 if key.z_exp == 1 && key.basis == 0 && *c == rat(-1) => shift_seen = true,
            1 if key.z_exp >= 0 => {
                let k = key.z_exp as usize;
                while coeffs.len() <= k {
                    coeffs.push(CohVector::zero(rank));
                }
                coeffs[k].0[key.basis] += c;
            }
            _ => return Err(Error::Contract(format!("unexpected term {key} in a dilaton-shifted point"))),
        }
    }
    if !shift_seen {
        return Err(Error::Contract("dilaton-shifted point lacks the −z·1 term".into()));
    }
    TPolynomial::new(coeffs)
}

/// Window that holds every series built at `(D, E)` from a `t` of degree
/// `t_degree`: the deepest kernel expansion is bounded by the largest virtual
/// dimension reachable with `E + 3` markings, and composing two kernels
/// doubles it.
pub fn required_window(target: &TargetSpace, novikov_order: u32, epsilon_order: u32, t_degree: usize) -> (i32, i32) {
    let depth = NovikovDegree::all_up_to(target.class_rank, novikov_order)
        .iter()
        .map(|b| vdim(target, b, epsilon_order as usize + 3))
        .max()
        .unwrap_or(0)
        .max(0);
    (-2 * (depth as i32 + 1), t_degree as i32 + 1)
}

/// Truncation with the window from [`required_window`].
pub fn auto_truncation(target: &TargetSpace, novikov_order: u32, epsilon_order: u32, t_degree: usize) -> Result<Truncation> {
    let (lo, hi) = required_window(target, novikov_order, epsilon_order, t_degree);
    Truncation::new(novikov_order, epsilon_order, lo, hi)
}

/// Reject a window narrower than [`required_window`], naming the one needed.
pub fn check_window(target: &TargetSpace, trunc: &Truncation, t_degree: usize) -> Result<()> {
    let (lo, hi) = required_window(target, trunc.novikov_order, trunc.epsilon_order, t_degree);
    if trunc.z_min > lo || trunc.z_max < hi {
        return Err(Error::InvalidTruncation(format!(
            "window [{}, {}] is too narrow; need z_min <= {lo} and z_max >= {hi}",
            trunc.z_min, trunc.z_max
        )));
    }
    Ok(())
}

type Expansion = Rc<Vec<(Vec<Insertion>, Rational)>>;
type BracketKey = (Vec<Insertion>, NovikovDegree, u32);

/// A fixed `t` together with the engine and truncation; caches the
/// expansions of `t(ψ)^n / n!` and the brackets built from them.
pub struct ConeContext<'a> {
    engine: &'a Engine,
    target: Arc<TargetSpace>,
    t: TPolynomial,
    trunc: Truncation,
    monomials: Vec<(Insertion, Rational)>,
    duals: Vec<CohVector>,
    expansions: RefCell<BTreeMap<u32, Expansion>>,
    brackets: RefCell<BTreeMap<BracketKey, Rational>>,
}

/// All count vectors of length `m` summing to `n`.
fn compositions(m: usize, n: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            go(i + 1, left - c, cur, out);
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, n, &mut vec![0; m], &mut out);
    out
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl<'a> ConeContext<'a> {
    pub fn new(engine: &'a Engine, t: TPolynomial, trunc: Truncation) -> Result<Self> {
        let target = engine.target().clone();
        if t.rank() != target.rank() {
            return Err(Error::Contract(format!(
                "t(z) has {} coordinates, target {} has rank {}",
                t.rank(),
                target.name,
                target.rank()
            )));
        }
        if t.degree() as i32 > trunc.z_max - 1 {
            return Err(Error::InvalidTruncation(format!(
                "t(z) has degree {} but z_max = {}; need z_max >= {}",
                t.degree(),
                trunc.z_max,
                t.degree() + 1
            )));
        }
        let monomials = t.monomials();
        let duals = (0..target.rank()).map(|i| target.dual(i)).collect();
        Ok(ConeContext {
            engine,
            target,
            t,
            trunc,
            monomials,
            duals,
            expansions: RefCell::new(BTreeMap::new()),
            brackets: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn engine(&self) -> &Engine {
        self.engine
    }

    pub fn target(&self) -> &Arc<TargetSpace> {
        &self.target
    }

    pub fn t(&self) -> &TPolynomial {
        &self.t
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    /// Curve classes within the Novikov truncation.
    pub fn classes(&self) -> Vec<NovikovDegree> {
        NovikovDegree::all_up_to(self.target.class_rank, self.trunc.novikov_order)
    }

    pub(crate) fn zero_series(&self) -> GiventalSeries {
        GiventalSeries::zero(self.target.clone(), self.trunc)
    }

    fn degree_sum(&self, ins: &[Insertion]) -> i64 {
        ins.iter().map(|i| self.target.basis_degrees[i.basis] as i64 + i.psi as i64).sum()
    }

    /// `t(ψ)^n / n!` as a weighted list of insertion multisets.
    fn expansion(&self, n: u32) -> Expansion {
        if let Some(e) = self.expansions.borrow().get(&n) {
            return e.clone();
        }
        let mut out = Vec::new();
        for counts in compositions(self.monomials.len(), n) {
            let mut weight = Rational::one();
            let mut ins = Vec::with_capacity(n as usize);
            for ((m, c), &k) in self.monomials.iter().zip(&counts) {
                weight *= pow(c, k) / factorial(k);
                ins.extend(core::iter::repeat_n(*m, k as usize));
            }
            out.push((ins, weight));
        }
        let e = Rc::new(out);
        self.expansions.borrow_mut().insert(n, e.clone());
        e
    }

    /// `(1/n!) ⟨extras, t(ψ), …, t(ψ)⟩_{0, |extras|+n, β}`.
    pub fn bracket(&self, extras: &[Insertion], beta: &NovikovDegree, n: u32) -> Result<Rational> {
        let points = extras.len() + n as usize;
        if points == 0 {
            return Ok(Rational::zero());
        }
        if !is_stable(beta, points) {
            return Err(Error::Unstable { beta: alloc::string::ToString::to_string(beta), n: points });
        }
        if self.degree_sum(extras) > vdim(&self.target, beta, points) || (n > 0 && self.monomials.is_empty()) {
            return Ok(Rational::zero());
        }
        let mut sorted = extras.to_vec();
        sorted.sort_unstable();
        let key = (sorted, beta.clone(), n);
        if let Some(v) = self.brackets.borrow().get(&key) {
            return Ok(v.clone());
        }
        let mut acc = Rational::zero();
        let mut ins = key.0.clone();
        for (ms, w) in self.expansion(n).iter() {
            ins.truncate(key.0.len());
            ins.extend_from_slice(ms);
            let v = self.engine.eval(beta, &ins)?;
            if !v.is_zero() {
                acc += v * w;
            }
        }
        self.brackets.borrow_mut().insert(key, acc.clone());
        Ok(acc)
    }

    /// `(1/n!) ⟨extras, t(ψ)^n, φ_γ/(±z − ψ)⟩_β` as `(z-exponent, value)`.
    pub fn kernel_bracket(
        &self,
        extras: &[Insertion],
        beta: &NovikovDegree,
        n: u32,
        gamma: usize,
        kernel: KernelSign,
    ) -> Result<Vec<(i32, Rational)>> {
        let points = extras.len() + n as usize + 1;
        let room = vdim(&self.target, beta, points) - self.degree_sum(extras) - self.target.basis_degrees[gamma] as i64;
        let mut out = Vec::new();
        let mut ins = extras.to_vec();
        ins.push(Insertion::new(gamma, 0));
        for l in 0..=room.max(-1) {
            let l = l as u32;
            ins.last_mut().unwrap().psi = l;
            let v = self.bracket(&ins, beta, n)?;
            if !v.is_zero() {
                out.push((-1 - l as i32, v * kernel.coefficient(l)));
            }
        }
        Ok(out)
    }

    pub fn dilaton_shift(&self) -> Result<GiventalSeries> {
        dilaton_shift(&self.target, self.trunc, &self.t)
    }

    /// `F⁰ = Σ Q^β ε^n/n! ⟨t(ψ), …, t(ψ)⟩_{0,n,β}` for `n ≥ 1`.
    pub fn descendant_potential(&self) -> Result<GradedScalars> {
        let mut out = GradedScalars::zero(self.trunc);
        for beta in self.classes() {
            for n in 1..=self.trunc.epsilon_order {
                if is_stable(&beta, n as usize) {
                    out.add(&beta, n, self.bracket(&[], &beta, n)?);
                }
            }
        }
        Ok(out)
    }

    /// `q(z) + Σ Q^β ε^n/n! ⟨t(ψ), …, t(ψ), φ_γ/(−z − ψ)⟩_{0,n+1,β} φ^γ`.
    pub fn cone_point(&self) -> Result<GiventalSeries> {
        let mut f = self.dilaton_shift()?;
        for beta in self.classes() {
            for n in 0..=self.trunc.epsilon_order {
                if !is_stable(&beta, n as usize + 1) {
                    continue;
                }
                for gamma in 0..self.target.rank() {
                    for (z, v) in self.kernel_bracket(&[], &beta, n, gamma, KernelSign::Minus)? {
                        f.add_vector(z, &self.duals[gamma], &beta, n, &v)?;
                    }
                }
            }
        }
        Ok(f)
    }

    /// `∂f/∂t_k^α` of the cone point, computed by differentiating the
    /// expanded polynomial in `t`; the result is regraded down by one `ε` so
    /// that it is directly comparable with [`Self::tangent_vector`].
    pub fn cone_derivative(&self, alpha: usize, k: u32) -> Result<GiventalSeries> {
        let coord = Insertion::new(alpha, k);
        let mut coords = self.monomials.clone();
        let slot = match coords.iter().position(|(m, _)| *m == coord) {
            Some(i) => i,
            None => {
                coords.push((coord, Rational::zero()));
                coords.len() - 1
            }
        };
        let mut out = self.zero_series();
        out.add_term(SeriesKey { z_exp: k as i32, basis: alpha, beta: self.target.zero_class(), eps: 0 }, rat(1))?;
        for n in 1..=self.trunc.epsilon_order + 1 {
            let terms: Vec<(Vec<Insertion>, Rational)> = compositions(coords.len(), n)
                .into_iter()
                .filter(|counts| counts[slot] > 0)
                .map(|counts| {
                    let mut weight = Rational::one();
                    let mut ins = Vec::new();
                    for (i, ((m, c), &cnt)) in coords.iter().zip(&counts).enumerate() {
                        let e = if i == slot { cnt - 1 } else { cnt };
                        weight *= pow(c, e) / factorial(e);
                        ins.extend(core::iter::repeat_n(*m, cnt as usize));
                    }
                    (ins, weight)
                })
                .filter(|(_, w)| !w.is_zero())
                .collect();
            for beta in self.classes() {
                if !is_stable(&beta, n as usize + 1) {
                    continue;
                }
                for gamma in 0..self.target.rank() {
                    for (ins, w) in &terms {
                        let mut full = ins.clone();
                        full.push(Insertion::new(gamma, 0));
                        let room = vdim(&self.target, &beta, full.len()) - self.degree_sum(&full);
                        if room < 0 {
                            continue;
                        }
                        full.last_mut().unwrap().psi = room as u32;
                        let v = self.engine.eval(&beta, &full)?;
                        if v.is_zero() {
                            continue;
                        }
                        let scale = v * w * KernelSign::Minus.coefficient(room as u32);
                        out.add_vector(-1 - room as i32, &self.duals[gamma], &beta, n - 1, &scale)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `S_t(z)(f) = f + Σ Q^β ε^n/n! ⟨f/(z − ψ), t(ψ), …, t(ψ), φ_γ⟩_{0,n+2,β} φ^γ`,
    /// with `f` expanded linearly in `z` and the `φ_α`.
    pub fn s_apply(&self, f: &GiventalSeries) -> Result<GiventalSeries> {
        if f.truncation() != self.trunc || f.target().name != self.target.name {
            return Err(Error::TruncationMismatch);
        }
        let mut out = f.clone();
        let classes = self.classes();
        for (key, c) in f.terms() {
            for beta in &classes {
                if (&key.beta + beta).total() > self.trunc.novikov_order {
                    continue;
                }
                for n in 0..=self.trunc.epsilon_order - key.eps {
                    if !is_stable(beta, n as usize + 2) {
                        continue;
                    }
                    let total_beta = &key.beta + beta;
                    for alpha in 0..self.target.rank() {
                        let extras = [Insertion::new(key.basis, 0), Insertion::new(alpha, 0)];
                        let room = vdim(&self.target, beta, n as usize + 2) - self.degree_sum(&extras);
                        for j in 0..=room.max(-1) {
                            let v = self.bracket(&[Insertion::new(key.basis, j as u32), extras[1]], beta, n)?;
                            if !v.is_zero() {
                                out.add_vector(key.z_exp - 1 - j as i32, &self.duals[alpha], &total_beta, key.eps + n, &(v * c))?;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `S_t(z)`: column `α` is `s_apply(φ_α)`.
    pub fn s_matrix(&self) -> Result<EndoSeries> {
        let mut m = EndoSeries::zero(self.target.clone(), self.trunc);
        let zero = self.target.zero_class();
        for alpha in 0..self.target.rank() {
            let v = GiventalSeries::monomial(self.target.clone(), self.trunc, 0, alpha, zero.clone(), 0, rat(1))?;
            for (key, c) in self.s_apply(&v)?.terms() {
                m.add_term(
                    EndoKey { z_exp: key.z_exp, row: key.basis, col: alpha, beta: key.beta.clone(), eps: key.eps },
                    c.clone(),
                )?;
            }
        }
        Ok(m)
    }

    /// Matrix of `S_t*(z)(v) = v + Σ Q^β ε^n/n! ⟨v, t(ψ), …, φ_γ/(z − ψ)⟩ φ^γ`.
    pub fn s_adjoint_matrix(&self) -> Result<EndoSeries> {
        let mut m = EndoSeries::identity(self.target.clone(), self.trunc)?;
        for beta in self.classes() {
            for n in 0..=self.trunc.epsilon_order {
                if !is_stable(&beta, n as usize + 2) {
                    continue;
                }
                for alpha in 0..self.target.rank() {
                    for gamma in 0..self.target.rank() {
                        let extras = [Insertion::new(alpha, 0)];
                        for (z, v) in self.kernel_bracket(&extras, &beta, n, gamma, KernelSign::Plus)? {
                            for (row, d) in self.duals[gamma].terms() {
                                m.add_term(EndoKey { z_exp: z, row, col: alpha, beta: beta.clone(), eps: n }, d * &v)?;
                            }
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// `r(z) + Σ Q^β ε^n/n! ⟨r(ψ), t(ψ), …, φ_γ/(±z − ψ)⟩ φ^γ`: the extension
    /// of `S_t*(±z)` that substitutes `r(ψ)` into the correlator.
    pub fn s_adjoint_corr_apply(&self, r: &GiventalSeries, kernel: KernelSign) -> Result<GiventalSeries> {
        if r.truncation() != self.trunc || r.target().name != self.target.name {
            return Err(Error::TruncationMismatch);
        }
        let mut out = r.clone();
        for (key, c) in r.terms() {
            if key.z_exp < 0 {
                return Err(Error::Contract(format!("input {key} is not in H+")));
            }
            let slot = [Insertion::new(key.basis, key.z_exp as u32)];
            for beta in self.classes() {
                let total_beta = &key.beta + &beta;
                if total_beta.total() > self.trunc.novikov_order {
                    continue;
                }
                for n in 0..=self.trunc.epsilon_order - key.eps {
                    if !is_stable(&beta, n as usize + 2) {
                        continue;
                    }
                    for gamma in 0..self.target.rank() {
                        for (z, v) in self.kernel_bracket(&slot, &beta, n, gamma, kernel)? {
                            out.add_vector(z, &self.duals[gamma], &total_beta, key.eps + n, &(v * c))?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `φ_α z^k + Σ Q^β ε^n/n! ⟨φ_α ψ^k, t(ψ), …, φ_γ/(−z − ψ)⟩ φ^γ`.
    pub fn tangent_vector(&self, alpha: usize, k: u32) -> Result<GiventalSeries> {
        if k as i32 > self.trunc.z_max - 1 {
            return Err(Error::InvalidTruncation(format!("tangent direction z^{k} needs z_max >= {}", k + 1)));
        }
        let mut out = self.zero_series();
        out.add_term(SeriesKey { z_exp: k as i32, basis: alpha, beta: self.target.zero_class(), eps: 0 }, rat(1))?;
        let fixed = [Insertion::new(alpha, k)];
        for beta in self.classes() {
            for n in 0..=self.trunc.epsilon_order {
                if !is_stable(&beta, n as usize + 2) {
                    continue;
                }
                let points = n as usize + 2;
                for gamma in 0..self.target.rank() {
                    let room =
                        vdim(&self.target, &beta, points) - self.degree_sum(&fixed) - self.target.basis_degrees[gamma] as i64;
                    for l in 0..=room.max(-1) {
                        let l = l as u32;
                        let v = self.bracket(&[fixed[0], Insertion::new(gamma, l)], &beta, n)?;
                        if !v.is_zero() {
                            out.add_vector(-1 - l as i32, &self.duals[gamma], &beta, n, &(v * sign(l as i64 + 1)))?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `⟨⟨fixed⟩⟩_{0,r}(t) = Σ Q^β ε^n/n! ⟨fixed, t(ψ), …, t(ψ)⟩_{0,r+n,β}`.
    pub fn double_bracket(&self, fixed: &[Insertion]) -> Result<GradedScalars> {
        if fixed.is_empty() {
            return Err(Error::Contract("double bracket needs at least one fixed insertion".into()));
        }
        let mut out = GradedScalars::zero(self.trunc);
        for beta in self.classes() {
            for n in 0..=self.trunc.epsilon_order {
                if is_stable(&beta, fixed.len() + n as usize) {
                    out.add(&beta, n, self.bracket(fixed, &beta, n)?);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac;
    use crate::series::PolyMode;

    fn setup(name: &str) -> Engine {
        Engine::new(Arc::new(TargetSpace::make(name).unwrap()))
    }

    fn trunc_for(engine: &Engine, d: u32, e: u32, t_deg: usize) -> Truncation {
        auto_truncation(engine.target(), d, e, t_deg).unwrap()
    }

    fn constant_t(rank: usize, c: Rational) -> TPolynomial {
        let mut v = CohVector::zero(rank);
        v.0[0] = c;
        TPolynomial::new(vec![v]).unwrap()
    }

    #[test]
    fn dilaton_shift_of_zero() {
        let e = setup("P1");
        let tr = trunc_for(&e, 1, 2, 0);
        let q = dilaton_shift(e.target(), tr, &TPolynomial::zero(2)).unwrap();
        assert_eq!(q.len(), 1);
        let key = SeriesKey { z_exp: 1, basis: 0, beta: NovikovDegree(vec![0]), eps: 0 };
        assert_eq!(q.coeff(&key), rat(-1));
    }

    #[test]
    fn dilaton_round_trip() {
        let e = setup("P2");
        let t = TPolynomial::new(vec![
            CohVector(vec![frac(1, 2), rat(0), rat(3)]),
            CohVector(vec![rat(-1), frac(2, 7), rat(0)]),
        ])
        .unwrap();
        let tr = trunc_for(&e, 1, 2, 1);
        let q = dilaton_shift(e.target(), tr, &t).unwrap();
        // q_1^0 = t_1^0 − 1 once ε is set to one.
        let zero = NovikovDegree(vec![0]);
        let at = |eps| q.coeff(&SeriesKey { z_exp: 1, basis: 0, beta: zero.clone(), eps });
        assert_eq!(at(0) + at(1), rat(-2));
        assert_eq!(dilaton_unshift(&q).unwrap(), t);
    }

    #[test]
    fn potential_of_constant_on_point() {
        let e = setup("point");
        let tr = trunc_for(&e, 0, 4, 0);
        let ctx = ConeContext::new(&e, constant_t(1, rat(5)), tr).unwrap();
        let f = ctx.descendant_potential().unwrap();
        let zero = NovikovDegree(vec![]);
        assert_eq!(f.get(&zero, 3), frac(125, 6));
        assert_eq!(f.get(&zero, 4), rat(0));
        let ctx0 = ConeContext::new(&e, TPolynomial::zero(1), tr).unwrap();
        assert!(ctx0.descendant_potential().unwrap().is_zero());
    }

    #[test]
    fn point_cone_at_zero_is_minus_z() {
        let e = setup("point");
        let tr = trunc_for(&e, 0, 3, 0);
        let ctx = ConeContext::new(&e, TPolynomial::zero(1), tr).unwrap();
        let f = ctx.cone_point().unwrap();
        assert_eq!(f, ctx.dilaton_shift().unwrap());
        let s = ctx.s_apply(&f).unwrap();
        assert_eq!(s, f);
        assert!(s.is_z_polynomial(PolyMode::ZHPlus).holds);
    }

    #[test]
    fn cone_starts_at_second_order_in_t_for_degree_zero() {
        let e = setup("point");
        let tr = trunc_for(&e, 0, 3, 0);
        let ctx = ConeContext::new(&e, constant_t(1, rat(2)), tr).unwrap();
        let f = ctx.cone_point().unwrap();
        let (plus, minus) = f.split_plus_minus();
        assert_eq!(plus, ctx.dilaton_shift().unwrap());
        let zero = NovikovDegree(vec![]);
        assert!(minus.grade(&zero, 1).is_zero());
        // ⟨t, t, 1/(−z − ψ)⟩/2! = −t²/(2z).
        let key = SeriesKey { z_exp: -1, basis: 0, beta: zero, eps: 2 };
        assert_eq!(minus.coeff(&key), rat(-2));
    }

    #[test]
    fn double_bracket_examples() {
        let e = setup("point");
        let tr = trunc_for(&e, 0, 3, 0);
        let zero = NovikovDegree(vec![]);
        let ctx0 = ConeContext::new(&e, TPolynomial::zero(1), tr).unwrap();
        let fixed = [Insertion::new(0, 0); 3];
        assert_eq!(ctx0.double_bracket(&fixed).unwrap().get(&zero, 0), rat(1));
        let ctx = ConeContext::new(&e, constant_t(1, frac(3, 2)), tr).unwrap();
        let one = ctx.double_bracket(&[Insertion::new(0, 0)]).unwrap();
        assert_eq!(one.get(&zero, 2), frac(9, 8));
    }

    #[test]
    fn t_degree_must_fit_window() {
        let e = setup("P1");
        let tr = Truncation::new(1, 1, -4, 1).unwrap();
        let t = TPolynomial::new(vec![CohVector::zero(2), CohVector::zero(2)]).unwrap();
        assert!(matches!(ConeContext::new(&e, t, tr), Err(Error::InvalidTruncation(_))));
    }

    #[test]
    fn narrow_window_names_requirement() {
        let e = setup("P1");
        let tr = Truncation::new(2, 2, -2, 1).unwrap();
        let err = check_window(e.target(), &tr, 0).unwrap_err();
        let (lo, _) = required_window(e.target(), 2, 2, 0);
        assert!(alloc::string::ToString::to_string(&err).contains(&format!("z_min <= {lo}")));
    }
}
