use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{GiventalSeries, SeriesKey, Truncation};
use crate::target::{NovikovDegree, TargetSpace};
use crate::{rat, sign, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndoKey {
    pub z_exp: i32,
    pub row: usize,
    pub col: usize,
    pub beta: NovikovDegree,
    pub eps: u32,
}

impl fmt::Display for EndoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{} [{},{}] Q^{} eps^{}", self.z_exp, self.row, self.col, self.beta, self.eps)
    }
}

/// `End(H*(X))`-valued series in `z`, `Q` and `ε`.
#[derive(Clone, Debug)]
pub struct EndoSeries {
    target: Arc<TargetSpace>,
    trunc: Truncation,
    entries: BTreeMap<EndoKey, Rational>,
}

impl PartialEq for EndoSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.target.name == other.target.name && self.entries == other.entries
    }
}

impl EndoSeries {
    pub fn zero(target: Arc<TargetSpace>, trunc: Truncation) -> Self {
        EndoSeries { target, trunc, entries: BTreeMap::new() }
    }

    pub fn identity(target: Arc<TargetSpace>, trunc: Truncation) -> Result<Self> {
        let zero = target.zero_class();
        let mut m = Self::zero(target.clone(), trunc);
        for i in 0..target.rank() {
            m.add_term(EndoKey { z_exp: 0, row: i, col: i, beta: zero.clone(), eps: 0 }, rat(1))?;
        }
        Ok(m)
    }

    pub fn target(&self) -> &Arc<TargetSpace> {
        &self.target
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn entries(&self) -> impl Iterator<Item = (&EndoKey, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, key: &EndoKey) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, key: EndoKey, c: Rational) -> Result<()> {
        if c.is_zero() || !self.trunc.keeps(&key.beta, key.eps) {
            return Ok(());
        }
        self.trunc.check_z(key.z_exp)?;
        let v = self.entries.entry(key.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc || self.target.name != other.target.name {
            return Err(Error::TruncationMismatch);
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.entries {
            out.add_term(k.clone(), -c)?;
        }
        Ok(out)
    }

    /// `z ↦ −z`.
    pub fn negate_z(&self) -> Self {
        let mut out = Self::zero(self.target.clone(), self.trunc);
        for (k, c) in &self.entries {
            out.entries.insert(k.clone(), c * sign(k.z_exp as i64));
        }
        out
    }

    /// Matrix product `a(z) · b(±z)`, grades added and truncated.
    pub fn compose(a: &Self, b: &Self, flip_second: bool) -> Result<Self> {
        a.compatible(b)?;
        let mut by_row: BTreeMap<usize, Vec<(&EndoKey, &Rational)>> = BTreeMap::new();
        for (k, c) in &b.entries {
            by_row.entry(k.row).or_default().push((k, c));
        }
        let mut out = Self::zero(a.target.clone(), a.trunc);
        for (ka, ca) in &a.entries {
            let Some(partners) = by_row.get(&ka.col) else { continue };
            for (kb, cb) in partners {
                let beta = &ka.beta + &kb.beta;
                let eps = ka.eps + kb.eps;
                if !a.trunc.keeps(&beta, eps) {
                    continue;
                }
                let mut c = ca * *cb;
                if flip_second && kb.z_exp % 2 != 0 {
                    c = -c;
                }
                out.add_term(EndoKey { z_exp: ka.z_exp + kb.z_exp, row: ka.row, col: kb.col, beta, eps }, c)?;
            }
        }
        Ok(out)
    }

    /// Adjoint with respect to the Poincaré pairing, blockwise:
    /// `A* = G⁻¹ Aᵀ G`.
    pub fn adjoint(&self) -> Result<Self> {
        let t = &self.target;
        let mut out = Self::zero(t.clone(), self.trunc);
        for (k, c) in &self.entries {
            // (Aᵀ)_{col,row} = c; then G⁻¹ on the left and G on the right.
            for (i, gi) in t.pairing_inv.iter().enumerate() {
                let left = &gi[k.col];
                if left.is_zero() {
                    continue;
                }
                for (j, g) in t.pairing[k.row].iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    out.add_term(
                        EndoKey { z_exp: k.z_exp, row: i, col: j, beta: k.beta.clone(), eps: k.eps },
                        left * c * g,
                    )?;
                }
            }
        }
        Ok(out)
    }

    /// Column `col` as a vector-valued series.
    pub fn column(&self, col: usize) -> Result<GiventalSeries> {
        let mut out = GiventalSeries::zero(self.target.clone(), self.trunc);
        for (k, c) in &self.entries {
            if k.col == col {
                out.add_term(SeriesKey { z_exp: k.z_exp, basis: k.row, beta: k.beta.clone(), eps: k.eps }, c.clone())?;
            }
        }
        Ok(out)
    }

    /// Entries where `self` differs from the identity.
    pub fn identity_defects(&self) -> Result<Vec<(EndoKey, Rational)>> {
        let id = Self::identity(self.target.clone(), self.trunc)?;
        Ok(self.sub(&id)?.entries.into_iter().collect())
    }
}

impl fmt::Display for EndoSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.entries {
            writeln!(f, "{k}: {c}")?;
        }
        Ok(())
    }
}
