//! Exact base-`b` digit sums and their summatory functions, with defect
//! evaluators for the classical summatory inequalities, exhaustive grid
//! scans and explicit counterexamples.
//!
//! Integer kernels are generic over [`Natural`] (`u32`, `u64`, `u128`,
//! [`BigUint`](num_bigint::BigUint)); real-valued ones over
//! [`num_traits::Float`].
//!
//! ```
//! use digitsum::{summatory_digit_sum, Base, Nat};
//!
//! let b = Base::new(3).unwrap();
//! assert_eq!(summatory_digit_sum(&9u64, b), 18);
//! let big: Nat = "1000000000000000000000000".parse().unwrap();
//! assert!(summatory_digit_sum(&big, b) > Nat::from(0u32));
//! ```

pub mod digits;
pub mod error;
pub mod explorer;
pub mod inequalities;
pub mod natural;
pub mod report;
pub mod summatory;

pub use digits::{
    digit_sum, from_digits, pattern_count, to_digits, valuation, DigitVector, DigitWord,
};
pub use error::{Error, Result};
pub use inequalities::{
    allaart_p_defect, base3_defect, bio_defect, carry_identity_check, graham_defect,
    partial_tuple_defect, subadditivity_defect, symmetric_defect, variation_defect,
    variation_partial_defect,
};
pub use natural::{Base, Natural, SignedScalar};
pub use report::{DefectReport, DefectValue, InequalityId, Relation, Value, EPSILON};
pub use summatory::{
    bit_count_below, factorial_valuation, scaling_identity_check, summatory_digit_sum,
    summatory_digit_sum_oracle, weighted_digit_sum, weighted_summatory, WeightSequence,
    DEFAULT_ORACLE_CAP,
};

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;
/// Signed companion of [`Nat`].
pub type Int = num_bigint::BigInt;
/// Exact rational, as used for probe coefficients.
pub type Rational = num_rational::BigRational;
/// Word-sized natural used by the grid sweeps.
pub type SmallNat = u64;
/// Default real type.
pub type Real = f64;
/// Weight sequence over [`Real`].
pub type Weights = WeightSequence<Real>;
/// Defect report over arbitrary-precision integers.
pub type ExactReport = DefectReport<Int>;
/// Defect report over [`Real`].
pub type RealReport = DefectReport<Real>;
