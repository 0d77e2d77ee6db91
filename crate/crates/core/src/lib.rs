//! Exact genus-zero Gromov–Witten computations on the Givental space.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact rational
//! arithmetic; gradings by curve class and by the number of `t`-insertions are
//! truncated, never approximated.
//!
//! Layout:
//!
//! * [`target`]: cohomology presentations of the point, P¹ and P².
//! * [`series`]: sparse truncated elements of the Givental space and the
//!   symplectic form.
//! * [`engine`]: memoized descendant correlators.
//! * [`givental`]: dilaton shift, cone point, fundamental solution matrix,
//!   its adjoint, and the verifiers built on them.
//! * [`localisation`]: fixed-locus splittings and the assembled
//!   localisation sum.
#![no_std]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod givental;
pub mod linalg;
pub mod localisation;
pub mod report;
pub mod series;
pub mod target;

pub use engine::{CorrelatorKey, Engine, Insertion};
pub use error::{Error, Result};
pub use givental::{ConeContext, EndoSeries, TPolynomial};
pub use report::CheckReport;
pub use series::{GiventalSeries, GradedScalars, PolyMode, ScalarSeries, SeriesKey, Truncation};
pub use target::{CohVector, NovikovDegree, TargetSpace};

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub(crate) fn factorial(n: u32) -> Rational {
    let mut acc = num_bigint::BigInt::from(1u32);
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

pub(crate) fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return rat(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub(crate) fn sign(exp: i64) -> Rational {
    if exp.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}
