//! The integer scalar abstraction shared by every digit routine.
//!
//! All exact arithmetic in the crate is written against [`Natural`], so the
//! same kernels run on machine words for dense grid sweeps and on
//! [`BigUint`] for inputs far beyond word range. Each natural type names a
//! signed companion wide enough to hold differences of its values, which is
//! where defects (which may be negative) live.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive, Unsigned};

use crate::error::{Error, Result};
use crate::report::DefectValue;

/// Signed integer companion of a [`Natural`].
pub trait SignedScalar:
    Integer
    + Signed
    + NumAssign
    + Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + FromPrimitive
    + ToPrimitive
    + Into<BigInt>
    + DefectValue
    + 'static
{
}

impl SignedScalar for i64 {}
impl SignedScalar for i128 {}
impl SignedScalar for BigInt {}

/// A nonnegative integer type usable as an operand of the digit functions.
pub trait Natural:
    Integer
    + Unsigned
    + NumAssign
    + Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    type Signed: SignedScalar;

    fn to_signed(&self) -> Self::Signed;

    fn from_small(v: u32) -> Self;

    /// Least-significant-first digits in radix `b`; empty for zero.
    fn radix_digits_le(&self, b: u32) -> Vec<u32> {
        let radix = Self::from_small(b);
        let mut n = self.clone();
        let mut out = Vec::new();
        while !n.is_zero() {
            let (q, r) = n.div_rem(&radix);
            out.push(r.to_u32().expect("remainder below radix"));
            n = q;
        }
        out
    }

    fn to_biguint(&self) -> BigUint;
}

macro_rules! impl_machine_natural {
    ($t:ty, $s:ty, $conv:expr) => {
        impl Natural for $t {
            type Signed = $s;

            #[inline]
            fn to_signed(&self) -> $s {
                $conv(*self)
            }

            #[inline]
            fn from_small(v: u32) -> Self {
                v as $t
            }

            fn to_biguint(&self) -> BigUint {
                BigUint::from(*self)
            }
        }
    };
}

impl_machine_natural!(u32, i64, i64::from);
impl_machine_natural!(u64, i128, i128::from);
impl_machine_natural!(u128, BigInt, BigInt::from);

impl Natural for BigUint {
    type Signed = BigInt;

    fn to_signed(&self) -> BigInt {
        BigInt::from(self.clone())
    }

    fn from_small(v: u32) -> Self {
        BigUint::from(v)
    }

    fn radix_digits_le(&self, b: u32) -> Vec<u32> {
        if num_traits::Zero::is_zero(self) {
            return Vec::new();
        }
        if b <= 256 {
            self.to_radix_le(b).into_iter().map(u32::from).collect()
        } else {
            let radix = BigUint::from(b);
            let mut n = self.clone();
            let mut out = Vec::new();
            while !num_traits::Zero::is_zero(&n) {
                let (q, r) = n.div_rem(&radix);
                out.push(r.to_u32().expect("remainder below radix"));
                n = q;
            }
            out
        }
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}

/// A numeration base `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub const BINARY: Base = Base(2);
    pub const TERNARY: Base = Base(3);

    pub fn new(b: u32) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidBase(b));
        }
        Ok(Base(b))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_natural<N: Natural>(self) -> N {
        N::from_small(self.0)
    }

    /// Trial-division primality of the base.
    pub fn is_prime(self) -> bool {
        let b = self.0;
        if b < 4 {
            return b >= 2;
        }
        if b.is_multiple_of(2) {
            return false;
        }
        let mut d = 3u32;
        while (d as u64) * (d as u64) <= b as u64 {
            if b.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        true
    }
}

impl Display for Base {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for Base {
    type Error = Error;

    fn try_from(b: u32) -> Result<Self> {
        Base::new(b)
    }
}

/// `b^e` in `N`.
pub fn power<N: Natural>(b: Base, e: u32) -> N {
    num_traits::pow::pow(b.as_natural::<N>(), e as usize)
}
