//! Cohomology presentations of target spaces.
//!
//! A [`TargetSpace`] carries a homogeneous basis `φ_0 = 1, φ_1, …`, the
//! Poincaré pairing, cup-product structure constants and the intersection data
//! of curve classes with `c_1` and with the degree-one basis classes. Only even
//! cohomology is modelled.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{rat, Rational};

/// Effective curve class, recorded by its coordinates in the generators of the
/// effective cone. Empty for the point.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NovikovDegree(pub Vec<u32>);

impl NovikovDegree {
    pub fn zero(rank: usize) -> Self {
        NovikovDegree(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `self - other` if it is still effective.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.0.len() != other.0.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(NovikovDegree)
    }

    /// Every effective class `β₁ ≤ self` (componentwise), so that
    /// `self = β₁ + (self - β₁)` runs over all ordered splittings.
    pub fn splittings(&self) -> Vec<NovikovDegree> {
        let mut out = vec![Vec::new()];
        for &d in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (d as usize + 1));
            for prefix in &out {
                for i in 0..=d {
                    let mut p = prefix.clone();
                    p.push(i);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(NovikovDegree).collect()
    }

    /// All classes of the given rank with total degree at most `max_total`.
    pub fn all_up_to(rank: usize, max_total: u32) -> Vec<NovikovDegree> {
        let mut out = vec![(Vec::new(), 0u32)];
        for _ in 0..rank {
            let mut next = Vec::new();
            for (prefix, used) in &out {
                for i in 0..=(max_total - used) {
                    let mut p = prefix.clone();
                    p.push(i);
                    next.push((p, used + i));
                }
            }
            out = next;
        }
        out.into_iter().map(|(v, _)| NovikovDegree(v)).collect()
    }
}

impl Add for &NovikovDegree {
    type Output = NovikovDegree;

    fn add(self, rhs: &NovikovDegree) -> NovikovDegree {
        assert_eq!(self.0.len(), rhs.0.len(), "Novikov rank mismatch");
        NovikovDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for NovikovDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Element of `H*(X)` in the chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohVector(pub Vec<Rational>);

impl CohVector {
    pub fn zero(len: usize) -> Self {
        CohVector(vec![Rational::zero(); len])
    }

    /// The basis vector `φ_index`.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[index] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CohVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Nonzero coordinates as `(index, value)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &CohVector {
    type Output = CohVector;

    fn add(self, rhs: &CohVector) -> CohVector {
        assert_eq!(self.len(), rhs.len(), "cohomology dimension mismatch");
        CohVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CohVector {
    type Output = CohVector;

    fn sub(self, rhs: &CohVector) -> CohVector {
        assert_eq!(self.len(), rhs.len(), "cohomology dimension mismatch");
        CohVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &CohVector {
    type Output = CohVector;

    fn neg(self) -> CohVector {
        CohVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Which correlator backend a target can use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Point,
    P1,
    P2,
    /// User-supplied presentation: validated only.
    None,
}

/// Finite presentation of `H*(X)` together with the curve-class data the
/// correlator engine needs.
#[derive(Clone, Debug)]
pub struct TargetSpace {
    pub name: String,
    pub dim: u32,
    pub basis_degrees: Vec<u32>,
    pub pairing: Vec<Vec<Rational>>,
    /// Inverse of `pairing`; `φ^α = Σ_β pairing_inv[α][β] φ_β`.
    pub pairing_inv: Vec<Vec<Rational>>,
    /// `cup[a][b]` is `φ_a ∪ φ_b` in the basis.
    pub cup: Vec<Vec<CohVector>>,
    pub class_rank: usize,
    /// `-K_X · β = Σ_i c1[i] β_i`.
    pub c1: Vec<i64>,
    /// For each degree-one basis index, `D · β = Σ_i row[i] β_i`.
    pub divisors: Vec<(usize, Vec<i64>)>,
    pub backend: Backend,
}

impl TargetSpace {
    /// Built-in targets: `point`, `P1`, `P2`.
    pub fn make(name: &str) -> Result<Self> {
        match name {
            "point" | "pt" => Ok(Self::projective_space(0, "point", Backend::Point)),
            "P1" => Ok(Self::projective_space(1, "P1", Backend::P1)),
            "P2" => Ok(Self::projective_space(2, "P2", Backend::P2)),
            other => Err(Error::UnknownTarget(other.to_string())),
        }
    }

    /// `Pʳ` with basis `1, H, …, Hʳ`.
    fn projective_space(r: u32, name: &str, backend: Backend) -> Self {
        let n = r as usize + 1;
        let pairing: Vec<Vec<Rational>> = (0..n)
            .map(|a| (0..n).map(|b| if a + b == r as usize { rat(1) } else { rat(0) }).collect())
            .collect();
        let cup = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if a + b <= r as usize {
                            CohVector::basis(n, a + b)
                        } else {
                            CohVector::zero(n)
                        }
                    })
                    .collect()
            })
            .collect();
        let (class_rank, c1, divisors) = if r == 0 {
            (0, Vec::new(), Vec::new())
        } else {
            (1, vec![r as i64 + 1], vec![(1, vec![1])])
        };
        TargetSpace {
            name: name.to_string(),
            dim: r,
            basis_degrees: (0..=r).collect(),
            pairing_inv: pairing.clone(),
            pairing,
            cup,
            class_rank,
            c1,
            divisors,
            backend,
        }
    }

    /// A user-supplied presentation. All structural invariants are checked; the
    /// result has no correlator backend.
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        name: &str,
        dim: u32,
        basis_degrees: Vec<u32>,
        pairing: Vec<Vec<Rational>>,
        cup: Vec<Vec<CohVector>>,
        class_rank: usize,
        c1: Vec<i64>,
        divisors: Vec<(usize, Vec<i64>)>,
    ) -> Result<Self> {
        let n = basis_degrees.len();
        let bad = |msg: String| Err(Error::InvalidTarget(msg));
        if n == 0 {
            return bad("empty basis".into());
        }
        if basis_degrees[0] != 0 {
            return bad("basis element 0 must be the unit (degree 0)".into());
        }
        if let Some(d) = basis_degrees.iter().find(|&&d| d > dim) {
            return bad(format!("basis degree {d} exceeds dimension {dim}"));
        }
        if pairing.len() != n || pairing.iter().any(|row| row.len() != n) {
            return bad(format!("pairing must be {n}x{n}"));
        }
        if cup.len() != n || cup.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return bad(format!("cup tensor must be {n}x{n}x{n}"));
        }
        if c1.len() != class_rank {
            return bad("c1 pairing length must equal class rank".into());
        }
        for (idx, row) in &divisors {
            if *idx >= n || basis_degrees[*idx] != 1 {
                return bad(format!("divisor index {idx} is not a degree-one basis class"));
            }
            if row.len() != class_rank {
                return bad("divisor pairing length must equal class rank".into());
            }
        }
        let pairing_inv = match crate::linalg::inverse(&pairing) {
            Some(inv) => inv,
            None => return bad("pairing is not invertible".into()),
        };
        let t = TargetSpace {
            name: name.to_string(),
            dim,
            basis_degrees,
            pairing,
            pairing_inv,
            cup,
            class_rank,
            c1,
            divisors,
            backend: Backend::None,
        };
        t.validate()?;
        Ok(t)
    }

    /// Check symmetry of the pairing, unit, associativity, commutativity,
    /// grading, and `(φ_α, φ^β) = δ`.
    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        let bad = |msg: String| Err(Error::InvalidTarget(msg));
        for a in 0..n {
            for b in 0..n {
                if self.pairing[a][b] != self.pairing[b][a] {
                    return bad(format!("pairing not symmetric at ({a},{b})"));
                }
                let expected = if a == b { rat(1) } else { rat(0) };
                if self.poincare_pair(&self.basis(a), &self.dual(b)) != expected {
                    return bad(format!("dual basis fails at ({a},{b})"));
                }
                if self.cup[0][b] != self.basis(b) || self.cup[b][0] != self.basis(b) {
                    return bad(format!("basis 0 is not a unit on φ_{b}"));
                }
                if self.cup[a][b] != self.cup[b][a] {
                    return bad(format!("cup not commutative at ({a},{b})"));
                }
                let deg = self.basis_degrees[a] + self.basis_degrees[b];
                for (c, _) in self.cup[a][b].terms() {
                    if self.basis_degrees[c] != deg {
                        return bad(format!("cup of φ_{a} and φ_{b} not homogeneous of degree {deg}"));
                    }
                }
                for c in 0..n {
                    let left = self.cup_product(&self.cup[a][b], &self.basis(c));
                    let right = self.cup_product(&self.basis(a), &self.cup[b][c]);
                    if left != right {
                        return bad(format!("cup not associative on ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of basis elements.
    pub fn rank(&self) -> usize {
        self.basis_degrees.len()
    }

    pub fn basis(&self, index: usize) -> CohVector {
        CohVector::basis(self.rank(), index)
    }

    /// `φ^index` expressed in the `φ_β` basis.
    pub fn dual(&self, index: usize) -> CohVector {
        CohVector(self.pairing_inv[index].clone())
    }

    /// The unit `1_X`.
    pub fn unit(&self) -> CohVector {
        self.basis(0)
    }

    pub fn zero_class(&self) -> NovikovDegree {
        NovikovDegree::zero(self.class_rank)
    }

    pub fn cup_product(&self, a: &CohVector, b: &CohVector) -> CohVector {
        let n = self.rank();
        let mut out = CohVector::zero(n);
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let xy = x * y;
                for (k, c) in self.cup[i][j].terms() {
                    out.0[k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn poincare_pair(&self, a: &CohVector, b: &CohVector) -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let g = &self.pairing[i][j];
                if !g.is_zero() {
                    acc += x * y * g;
                }
            }
        }
        acc
    }

    /// `∫_X γ`: the pairing with the unit.
    pub fn integrate(&self, a: &CohVector) -> Rational {
        self.poincare_pair(&self.unit(), a)
    }

    /// `-K_X · β`.
    pub fn c1_pairing(&self, beta: &NovikovDegree) -> i64 {
        self.c1.iter().zip(&beta.0).map(|(c, b)| c * *b as i64).sum()
    }

    /// `D · β` for the degree-one basis class `index`, if it is a divisor.
    pub fn divisor_pairing(&self, index: usize, beta: &NovikovDegree) -> Option<i64> {
        self.divisors
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, row)| row.iter().zip(&beta.0).map(|(c, b)| c * *b as i64).sum())
    }

    /// Nonzero entries `(α, β, g^{αβ})` of the inverse pairing.
    pub fn inverse_pairing_terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (a, row) in self.pairing_inv.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, c.clone()));
                }
            }
        }
        out
    }
}
