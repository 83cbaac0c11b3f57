//! Exact arbitrary-precision rational numbers.
//!
//! [`Rational`] is the scalar for every numeric computation in this crate.
//! All arithmetic is exact; there is no floating point anywhere in the
//! computation path.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GsnError;

/// An exact rational number in canonical form: positive denominator,
/// numerator and denominator coprime. Backed by [`num_rational::BigRational`],
/// which maintains that canonical form on every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact fraction `n/d`. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    /// `self^e` for a non-negative exponent, with the convention `0^0 = 1`.
    pub fn pow(&self, e: usize) -> Self {
        if e == 0 {
            return Rational::one();
        }
        Rational(self.0.pow(e as i32))
    }
}

impl fmt::Display for Rational {
    /// Text format: optional sign, decimal numerator, and `/denominator`
    /// only when the denominator is not 1 (e.g. `-3/2`, `7`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = GsnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, GsnError> {
            t.parse::<BigInt>()
                .map_err(|_| GsnError::BadRational(s.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            Some((n, d)) => {
                let numer = parse_int(n)?;
                let denom = parse_int(d)?;
                if denom <= BigInt::zero() {
                    return Err(GsnError::BadRational(s.to_string()));
                }
                Ok(Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["0", "7", "-3/2", "22/7", "-1"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // non-canonical input normalizes
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert_eq!("-4/2".parse::<Rational>().unwrap().to_string(), "-2");
    }

    #[test]
    fn parse_rejects_bad_input() {
        for s in ["", "1/0", "1/-2", "a", "1.5", "3/"] {
            assert!(s.parse::<Rational>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn zero_pow_zero_is_one() {
        assert_eq!(Rational::zero().pow(0), Rational::one());
        assert_eq!(Rational::zero().pow(3), Rational::zero());
        assert_eq!(Rational::new(2, 3).pow(3), Rational::new(8, 27));
    }

    #[test]
    fn canonical_form() {
        let r = Rational::new(-4, -6);
        assert_eq!(r, Rational::new(2, 3));
        assert!(r.denom() > &BigInt::zero());
    }
}
