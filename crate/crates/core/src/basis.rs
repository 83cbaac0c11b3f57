//! Polynomial basis conversions: powers of `z` to powers of `z-1` (Taylor
//! shift by synthetic division) and expansion over the binomial basis
//! `{binom(n,k)}` via forward differences.

use crate::error::GsnError;
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// Rewrite `sum_j coeffs[j] z^j` as `sum_j c_j (z-1)^j`; returns the `c_j`
/// ascending. Repeated synthetic division by `(z - 1)`: after pass `i`,
/// slot `i` holds the remainder `c_i`.
pub fn shift_to_zm1(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut c = coeffs.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i + 1..n).rev() {
            c[j - 1] = c[j - 1].add(&c[j]);
        }
    }
    c
}

/// Inverse of [`shift_to_zm1`]: coefficients in powers of `z-1` back to
/// powers of `z`.
pub fn shift_from_zm1(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut c = coeffs.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i + 1..n).rev() {
            c[j - 1] = c[j - 1].sub(&c[j]);
        }
    }
    c
}

/// Rewrite a polynomial, viewed as univariate in `var`, in powers of
/// `var - 1`. Coefficients may involve other indeterminates.
pub fn rebase_z_to_zm1(poly: &MultiPoly, var: &str) -> Vec<Scalar> {
    shift_to_zm1(&poly.coeffs_in(var))
}

/// Expand `f`, viewed as a polynomial in `var` of degree at most `d`, over
/// the basis `{binom(var, k)}_{k=0..d}`.
///
/// Coefficients come from iterated forward differences at 0:
/// `coeff_k = Delta^k f(0)`.
pub fn expand_in_binomial_basis(
    f: &MultiPoly,
    var: &str,
    d: usize,
) -> Result<Vec<Scalar>, GsnError> {
    let deg = f.degree_in(var);
    if deg > d {
        return Err(GsnError::DegreeOverflow { found: deg, bound: d });
    }
    let mut values: Vec<Scalar> = (0..=d)
        .map(|n| f.substitute(var, &Scalar::from_int(n as i64)))
        .collect();
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        coeffs.push(values[0].clone());
        for i in 0..values.len() - 1 {
            values[i] = values[i + 1].sub(&values[i]);
        }
        values.pop();
    }
    Ok(coeffs)
}
