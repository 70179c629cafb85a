//! Exact integer and rational helpers shared by every counting routine.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative count (Steiner-tree counts, indices).
pub type BigCount = BigUint;

/// Binomial coefficient with `C(n, 0) = 1` and `C(n, k) = 0` for `n < k`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

/// `binomial` for callers that only need a capacity estimate.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    binomial(n, k).to_u128().unwrap_or(u128::MAX)
}

/// `2^e` as a big count.
pub fn pow2(e: u64) -> BigCount {
    BigCount::one() << e
}

/// Exact rational in lowest terms with a positive denominator.
///
/// Integer-valued ratios display without a denominator (`"4"`), all others as
/// `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "ExactRatio with zero denominator");
        ExactRatio(BigRational::new(numer.into(), denom))
    }

    pub fn from_count(c: &BigCount) -> Self {
        ExactRatio(BigRational::from_integer(BigInt::from(c.clone())))
    }

    pub fn from_int(i: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(i.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Parses `"p"` or `"p/q"`.
    pub fn parse(s: &str) -> Option<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if d.is_zero() {
            return None;
        }
        Some(ExactRatio::new(n, d))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<BigRational> for ExactRatio {
    fn from(r: BigRational) -> Self {
        ExactRatio(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactRatio {
            type Output = ExactRatio;
            fn $m(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRatio> for &'a ExactRatio {
            type Output = ExactRatio;
            fn $m(self, rhs: &'a ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactRatio> for ExactRatio {
    fn add_assign(&mut self, rhs: &ExactRatio) {
        self.0 += &rhs.0;
    }
}

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

impl Sum for ExactRatio {
    fn sum<I: Iterator<Item = ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRatio> for ExactRatio {
    fn sum<I: Iterator<Item = &'a ExactRatio>>(iter: I) -> Self {
        let mut acc = ExactRatio::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}
