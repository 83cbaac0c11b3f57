//! The scalar layer: exact rationals or symbolic polynomials, plus the
//! factorial/binomial primitives every formula in the crate is built from.
//!
//! All number-family operations are generic over [`Scalar`], so the same
//! code path evaluates numerically (rational parameters) and symbolically
//! (parameters as indeterminates). A computation begun in one mode stays in
//! that mode.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::MultiPoly;
use crate::rational::Rational;

/// A value that is either an exact rational or a polynomial in named
/// indeterminates. Mixed arithmetic promotes the rational side to a
/// constant polynomial.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Rat(Rational),
    Poly(MultiPoly),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(Rational::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Scalar::Poly(MultiPoly::var(name))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Scalar::Poly(p) if p.as_constant().is_none())
    }

    /// The rational value, when not genuinely symbolic.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Poly(p) => p.as_constant(),
        }
    }

    /// Collapse constant polynomials to `Rat`; trim unused registry entries.
    pub fn normalized(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r),
            Scalar::Poly(p) => match p.as_constant() {
                Some(c) => Scalar::Rat(c),
                None => Scalar::Poly(p.trimmed()),
            },
        }
    }

    fn as_poly(&self) -> MultiPoly {
        match self {
            Scalar::Rat(r) => MultiPoly::constant(r.clone()),
            Scalar::Poly(p) => p.clone(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => Scalar::Poly(self.as_poly().add(&other.as_poly())).normalized(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => Scalar::Poly(self.as_poly().mul(&other.as_poly())).normalized(),
        }
    }

    /// Exact division by a non-zero rational.
    pub fn div_rat(&self, d: &Rational) -> Scalar {
        assert!(!d.is_zero(), "division by zero");
        match self {
            Scalar::Rat(r) => Scalar::Rat(r / d),
            Scalar::Poly(p) => Scalar::Poly(p.scale(&d.recip())),
        }
    }

    pub fn scale_int(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_int(n))
    }

    /// `self^e`, non-negative exponent, `0^0 = 1`.
    pub fn pow(&self, e: usize) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.pow(e)),
            Scalar::Poly(p) => {
                if e == 0 {
                    Scalar::one()
                } else {
                    Scalar::Poly(p.pow(e)).normalized()
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Exact `n!`.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_bigint(acc)
}

/// Integer binomial coefficient with the conventions required by the
/// explicit formulas: `0` for `k < 0`, and upper negation for negative `n`
/// (`binom(n, k) = n(n-1)...(n-k+1)/k!`).
pub fn binom_int(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
    }
    Rational::from_bigint(num) / factorial(k as usize)
}

/// Generalized binomial `binom(x, r) = x(x-1)...(x-r+1)/r!` for any scalar
/// (or polynomial) `x`; `1` for `r = 0`.
pub fn binom_scalar(x: &Scalar, r: usize) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..r {
        acc = acc.mul(&x.sub(&Scalar::from_int(i as i64)));
    }
    acc.div_rat(&factorial(r))
}

/// `x^e` with the global convention `0^0 = 1`.
pub fn power_scalar(x: &Scalar, e: usize) -> Scalar {
    x.pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Rational::one());
        assert_eq!(factorial(5), Rational::from_int(120));
        // oracle: repeated multiplication
        let mut acc = Rational::one();
        for i in 1..=20i64 {
            acc = acc * Rational::from_int(i);
        }
        assert_eq!(factorial(20), acc);
        assert_eq!(factorial(20).to_string(), "2432902008176640000");
    }

    #[test]
    fn binom_int_conventions() {
        assert_eq!(binom_int(5, 2), Rational::from_int(10));
        assert_eq!(binom_int(3, -1), Rational::zero());
        // upper negation: binom(-3, 2) = (-3)(-4)/2 = 6
        assert_eq!(binom_int(-3, 2), Rational::from_int(6));
        assert_eq!(binom_int(-3, 2), binom_int(3 + 2 - 1, 2));
        assert_eq!(binom_int(0, 0), Rational::one());
        assert_eq!(binom_int(2, 5), Rational::zero());
    }

    #[test]
    fn binom_scalar_rational_and_symbolic() {
        // (7/2 choose 2) = (7/2)(5/2)/2 = 35/8
        let v = binom_scalar(&Scalar::Rat(Rational::new(7, 2)), 2);
        assert_eq!(v, Scalar::Rat(Rational::new(35, 8)));
        // r = 0 is the empty product
        assert_eq!(binom_scalar(&Scalar::var("x"), 0), Scalar::one());
        // (n choose 2) = (n^2 - n)/2
        let n = MultiPoly::var("n");
        let expect = n.pow(2).sub(&n).scale(&Rational::new(1, 2));
        assert_eq!(binom_scalar(&Scalar::var("n"), 2), Scalar::Poly(expect));
    }

    #[test]
    fn binom_scalar_matches_recurrence() {
        // binom(x, r) = binom(x-1, r-1) * x / r for 1 <= r <= 8
        for num in [-5i64, -1, 0, 3, 7] {
            for den in [1i64, 2, 3] {
                let x = Scalar::Rat(Rational::new(num, den));
                for r in 1..=8usize {
                    let lhs = binom_scalar(&x, r);
                    let rhs = binom_scalar(&x.sub(&Scalar::one()), r - 1)
                        .mul(&x)
                        .div_rat(&Rational::from_int(r as i64));
                    assert_eq!(lhs, rhs, "x={x}, r={r}");
                }
            }
        }
    }

    #[test]
    fn power_scalar_conventions() {
        assert_eq!(power_scalar(&Scalar::zero(), 0), Scalar::one());
        assert_eq!(
            power_scalar(&Scalar::Rat(Rational::new(2, 3)), 3),
            Scalar::Rat(Rational::new(8, 27))
        );
        let b1 = Scalar::var("b1");
        assert_eq!(power_scalar(&b1, 2), b1.mul(&b1));
    }

    #[test]
    fn vandermonde_convolution_symbolic() {
        // sum_i binom(x, i) binom(y, m-i) = binom(x+y, m) for m <= 8
        let x = Scalar::var("x");
        let y = Scalar::var("y");
        for m in 0..=8usize {
            let mut lhs = Scalar::zero();
            for i in 0..=m {
                lhs = lhs.add(&binom_scalar(&x, i).mul(&binom_scalar(&y, m - i)));
            }
            let rhs = binom_scalar(&x.add(&y), m);
            assert_eq!(lhs, rhs, "m={m}");
        }
    }
}
