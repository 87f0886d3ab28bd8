//! Defect reports: one evaluated instance of an inequality or identity.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::Sub;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Absolute tolerance for every real-valued comparison.
pub const EPSILON: f64 = 1e-9;

/// Tolerance used when the real type is `f32`, whose unit roundoff is far
/// above [`EPSILON`].
pub const EPSILON_F32: f32 = 1e-4;

/// Scalar types a defect can be expressed in.
pub trait DefectValue: Clone + PartialOrd + fmt::Debug + Send + Sync {
    /// Strictly below zero, beyond tolerance for real types.
    fn is_negative_defect(&self) -> bool;
    /// Zero, within tolerance for real types.
    fn is_zero_defect(&self) -> bool;
    fn into_value(self) -> Value;
}

macro_rules! exact_defect_value {
    ($($t:ty),*) => {$(
        impl DefectValue for $t {
            fn is_negative_defect(&self) -> bool {
                Signed::is_negative(self)
            }
            fn is_zero_defect(&self) -> bool {
                Zero::is_zero(self)
            }
            fn into_value(self) -> Value {
                Value::Int(BigInt::from(self))
            }
        }
    )*};
}

exact_defect_value!(i64, i128, BigInt);

impl DefectValue for Ratio<i128> {
    fn is_negative_defect(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_zero_defect(&self) -> bool {
        Zero::is_zero(self)
    }
    fn into_value(self) -> Value {
        let (n, d) = self.into_raw();
        Value::Ratio(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl DefectValue for BigRational {
    fn is_negative_defect(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_zero_defect(&self) -> bool {
        Zero::is_zero(self)
    }
    fn into_value(self) -> Value {
        Value::Ratio(self)
    }
}

impl DefectValue for f64 {
    fn is_negative_defect(&self) -> bool {
        *self < -EPSILON
    }
    fn is_zero_defect(&self) -> bool {
        self.abs() <= EPSILON
    }
    fn into_value(self) -> Value {
        Value::Real(self)
    }
}

impl DefectValue for f32 {
    fn is_negative_defect(&self) -> bool {
        *self < -EPSILON_F32
    }
    fn is_zero_defect(&self) -> bool {
        self.abs() <= EPSILON_F32
    }
    fn into_value(self) -> Value {
        Value::Real(self as f64)
    }
}

/// An exact-or-real quantity, the common currency of reports once their
/// evaluation-time scalar type has been erased.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Ratio(BigRational),
    Real(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Int(i) => i.to_f64().unwrap_or(f64::NAN),
            Value::Ratio(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Real(x) => *x,
        }
    }

    fn as_ratio(&self) -> Option<BigRational> {
        match self {
            Value::Int(i) => Some(BigRational::from_integer(i.clone())),
            Value::Ratio(r) => Some(r.clone()),
            Value::Real(_) => None,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
            (Value::Real(a), Value::Real(b)) => a.partial_cmp(b),
            _ => match (self.as_ratio(), other.as_ratio()) {
                (Some(a), Some(b)) => Some(a.cmp(&b)),
                _ => self.to_f64().partial_cmp(&other.to_f64()),
            },
        }
    }
}

impl DefectValue for Value {
    fn is_negative_defect(&self) -> bool {
        match self {
            Value::Int(i) => i.is_negative(),
            Value::Ratio(r) => r.is_negative(),
            Value::Real(x) => x.is_negative_defect(),
        }
    }
    fn is_zero_defect(&self) -> bool {
        match self {
            Value::Int(i) => i.is_zero(),
            Value::Ratio(r) => r.is_zero(),
            Value::Real(x) => x.is_zero_defect(),
        }
    }
    fn into_value(self) -> Value {
        self
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Ratio(r) => write!(f, "{r}"),
            Value::Real(x) => write!(f, "{}", round_significant(*x)),
        }
    }
}

/// Rounds to 12 significant digits, the precision reals are reported at.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Name of a report input or auxiliary quantity.
pub type Label = Cow<'static, str>;

/// Which relation a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `lhs <= rhs`; holds iff the defect is nonnegative.
    AtMost,
    /// `lhs = rhs`; holds iff the defect is zero.
    Identity,
    /// A constructed violation of an `lhs <= rhs` bound; holds iff the defect is negative.
    Violation,
}

/// Every relation the crate knows how to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityId {
    Graham,
    Bio,
    PartialTuple,
    Variation,
    VariationPartial,
    Base3,
    Symmetric,
    Allaart,
    Subadditivity,
    CarryIdentity,
    Scaling,
    Optimality,
    Divergence,
    Block,
}

impl InequalityId {
    pub const ALL: [InequalityId; 14] = [
        InequalityId::Graham,
        InequalityId::Bio,
        InequalityId::PartialTuple,
        InequalityId::Variation,
        InequalityId::VariationPartial,
        InequalityId::Base3,
        InequalityId::Symmetric,
        InequalityId::Allaart,
        InequalityId::Subadditivity,
        InequalityId::CarryIdentity,
        InequalityId::Scaling,
        InequalityId::Optimality,
        InequalityId::Divergence,
        InequalityId::Block,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::Graham => "graham",
            InequalityId::Bio => "bio",
            InequalityId::PartialTuple => "partial-tuple",
            InequalityId::Variation => "variation",
            InequalityId::VariationPartial => "variation-partial",
            InequalityId::Base3 => "base3",
            InequalityId::Symmetric => "symmetric",
            InequalityId::Allaart => "allaart",
            InequalityId::Subadditivity => "subadditivity",
            InequalityId::CarryIdentity => "carry-identity",
            InequalityId::Scaling => "scaling",
            InequalityId::Optimality => "optimality",
            InequalityId::Divergence => "divergence",
            InequalityId::Block => "block",
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownInequality(s.to_string()))
    }
}

/// One evaluated instance: both sides, `defect = rhs - lhs`, and whether the
/// relation holds there.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport<V> {
    pub id: InequalityId,
    pub base: Option<u32>,
    pub inputs: Vec<(Label, V)>,
    pub lhs: V,
    pub rhs: V,
    pub defect: V,
    pub relation: Relation,
    pub holds: bool,
    /// False when the inputs lie outside the range where the relation is proven.
    pub guaranteed: bool,
    /// Auxiliary quantities specific to the relation.
    pub extras: Vec<(Label, V)>,
}

impl<V: DefectValue + Sub<Output = V>> DefectReport<V> {
    pub fn new(
        id: InequalityId,
        base: Option<u32>,
        inputs: Vec<(Label, V)>,
        lhs: V,
        rhs: V,
        relation: Relation,
    ) -> Self {
        let defect = rhs.clone() - lhs.clone();
        let holds = match relation {
            Relation::AtMost => !defect.is_negative_defect(),
            Relation::Identity => defect.is_zero_defect(),
            Relation::Violation => defect.is_negative_defect(),
        };
        DefectReport {
            id,
            base,
            inputs,
            lhs,
            rhs,
            defect,
            relation,
            holds,
            guaranteed: true,
            extras: Vec::new(),
        }
    }
}

impl<V: DefectValue> DefectReport<V> {
    pub fn input(&self, name: &str) -> Option<&V> {
        self.inputs.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    pub fn extra(&self, name: &str) -> Option<&V> {
        self.extras.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    /// Input values in declaration order.
    pub fn witness(&self) -> Vec<V> {
        self.inputs.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn into_values(self) -> DefectReport<Value> {
        let conv = |xs: Vec<(Label, V)>| {
            xs.into_iter()
                .map(|(k, v)| (k, v.into_value()))
                .collect::<Vec<_>>()
        };
        DefectReport {
            id: self.id,
            base: self.base,
            inputs: conv(self.inputs),
            lhs: self.lhs.into_value(),
            rhs: self.rhs.into_value(),
            defect: self.defect.into_value(),
            relation: self.relation,
            holds: self.holds,
            guaranteed: self.guaranteed,
            extras: conv(self.extras),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_follows_relation() {
        let r = DefectReport::new(
            InequalityId::Graham,
            Some(2),
            vec![],
            3i128,
            5,
            Relation::AtMost,
        );
        assert_eq!(r.defect, 2);
        assert!(r.holds);
        let r = DefectReport::new(
            InequalityId::Scaling,
            None,
            vec![],
            3i128,
            5,
            Relation::Identity,
        );
        assert!(!r.holds);
        let r = DefectReport::new(
            InequalityId::Optimality,
            None,
            vec![],
            10i128,
            7,
            Relation::Violation,
        );
        assert_eq!(r.defect, -3);
        assert!(r.holds);
    }

    #[test]
    fn real_tolerance() {
        let r = DefectReport::new(
            InequalityId::Allaart,
            None,
            vec![],
            1.0 + 5e-10,
            1.0,
            Relation::AtMost,
        );
        assert!(r.holds);
        assert!(r.defect.is_zero_defect());
        let r = DefectReport::new(
            InequalityId::Allaart,
            None,
            vec![],
            1.0 + 5e-9,
            1.0,
            Relation::AtMost,
        );
        assert!(!r.holds);
    }

    #[test]
    fn ids_round_trip_through_names() {
        for id in InequalityId::ALL {
            assert_eq!(id.as_str().parse::<InequalityId>().unwrap(), id);
        }
        assert!(matches!(
            "nope".parse::<InequalityId>(),
            Err(Error::UnknownInequality(_))
        ));
    }

    #[test]
    fn mixed_value_ordering() {
        let half = Value::Ratio(BigRational::new(1.into(), 2.into()));
        assert!(Value::Int(0.into()) < half);
        assert!(half < Value::Int(1.into()));
        assert!(Value::Real(0.25) < half);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(round_significant(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_significant(123456.7890123456), 123456.789012);
        assert_eq!(round_significant(0.0), 0.0);
    }
}
