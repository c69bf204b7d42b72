use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision reduced fraction.
///
/// The denominator is always positive and coprime to the numerator. The
/// symplectic pairing of Pauli operators takes values in `(1/Q)Z`, so most
/// instances here are small, but group orders and logical dimensions are
/// products of moduli and can exceed machine words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Builds `numerator / denominator`, reduced, with a positive denominator.
    ///
    /// Panics if `denominator` is zero.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(numerator: N, denominator: D) -> Self {
        let den = denominator.into();
        assert!(!den.is_zero(), "rational denominator must be nonzero");
        ExactRational(BigRational::new(numerator.into(), den))
    }

    pub fn from_integer<N: Into<BigInt>>(n: N) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    /// The canonical representative mod 1, in `[0, 1)`.
    pub fn mod_one(&self) -> Self {
        ExactRational(&self.0 - self.0.floor())
    }

    /// True when the value reduces to zero mod 1, i.e. is an integer.
    pub fn is_zero_mod_one(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact conversion to f64 via numerator/denominator division.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational representable as f64")
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}
