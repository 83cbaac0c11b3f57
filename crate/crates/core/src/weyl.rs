//! Normal ordering in the Weyl algebra generated by multiplication-by-`x`
//! and differentiation `D`, subject to `D x = x D + 1`.
//!
//! A [`WeylWord`] is kept in normal-ordered canonical form: a finite sum of
//! monomials `c x^a D^b` with every `x` to the left of every `D`. The GSN
//! of the `a = 1` family appear as the diagonal coefficients of powers of
//! the base operator, and satisfy a row recurrence in `p`; both facts are
//! implemented here.

use std::collections::BTreeMap;

use crate::error::GsnError;
use crate::gsn::{gsn_explicit, Factor, ParamSpec};
use crate::rational::Rational;
use crate::scalar::{binom_int, binom_scalar, factorial, Scalar};

/// A normal-ordered operator `sum c_{a,b} x^a D^b`; no zero coefficients
/// are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylWord {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl WeylWord {
    pub fn zero() -> Self {
        WeylWord { terms: BTreeMap::new() }
    }

    /// The multiplicative identity `x^0 D^0`.
    pub fn identity() -> Self {
        WeylWord::monomial(0, 0, Scalar::one())
    }

    /// `coeff * x^xpow D^dpow`.
    pub fn monomial(xpow: u32, dpow: u32, coeff: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((xpow, dpow), coeff);
        }
        WeylWord { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^a D^b` (zero when absent).
    pub fn coeff(&self, xpow: u32, dpow: u32) -> Scalar {
        self.terms
            .get(&(xpow, dpow))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Every stored term has `xpow == dpow`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a == b)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (u32, u32), coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &WeylWord) -> WeylWord {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.insert(key, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> WeylWord {
        let mut out = WeylWord::zero();
        for (&key, v) in &self.terms {
            out.insert(key, v.mul(c));
        }
        out
    }

    /// Normal-ordered product. Composition of monomials follows from the
    /// commutation relation:
    /// `x^a D^b x^c D^d = sum_i binom(b,i) c(c-1)...(c-i+1) x^{a+c-i} D^{b+d-i}`.
    pub fn mul(&self, other: &WeylWord) -> WeylWord {
        let mut out = WeylWord::zero();
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &other.terms {
                let coeff = ca.mul(cb);
                for i in 0..=b.min(c) {
                    let mut falling = Rational::one();
                    for step in 0..i {
                        falling = falling * Rational::from_int((c - step) as i64);
                    }
                    let w = binom_int(b as i64, i as i64) * falling;
                    out.insert((a + c - i, b + d - i), coeff.mul(&Scalar::Rat(w)));
                }
            }
        }
        out
    }

    /// `self^p` by iterated multiplication.
    pub fn pow(&self, p: usize) -> WeylWord {
        let mut acc = WeylWord::identity();
        for _ in 0..p {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The base operator of the differential characterization:
/// `r! sum_{j=0}^{r} (binom(b, r-j) / j!) x^j D^j`.
pub fn operator_lhs(b: &Scalar, r: usize) -> WeylWord {
    let rf = factorial(r);
    let mut out = WeylWord::zero();
    for j in 0..=r {
        let coeff = binom_scalar(b, r - j)
            .mul(&Scalar::Rat(&rf / &factorial(j)));
        out = out.add(&WeylWord::monomial(j as u32, j as u32, coeff));
    }
    out
}

/// True iff the `p`-th power of the base operator is diagonal with the
/// GSN row `S_{1,b,r}(p,k)` as its coefficients.
pub fn verify_operator_identity(b: &Scalar, r: usize, p: usize) -> bool {
    let word = operator_lhs(b, r).pow(p);
    if !word.is_diagonal() {
        return false;
    }
    let params = ParamSpec::new(Scalar::one(), b.clone(), r, p, Vec::new());
    let d = params.degree() as i64;
    for k in 0..=d {
        if word.coeff(k as u32, k as u32) != gsn_explicit(&params, k) {
            return false;
        }
    }
    // nothing beyond the expected range
    word.terms.keys().all(|&(a, _)| (a as i64) <= d)
}

fn recurrence_rows_51(
    b: &Scalar,
    r: usize,
    factors: &[Factor],
    up_to_p: usize,
) -> Vec<Vec<Scalar>> {
    let base_params = ParamSpec::new(Scalar::one(), b.clone(), r, 0, factors.to_vec());
    let sigma = base_params.sigma();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(up_to_p + 1);
    rows.push(
        (0..=sigma as i64)
            .map(|k| gsn_explicit(&base_params, k))
            .collect(),
    );
    let rf = factorial(r);
    for p in 1..=up_to_p {
        let prev = &rows[p - 1];
        let width = r * p + sigma + 1;
        let row: Vec<Scalar> = (0..width as i64)
            .map(|k| {
                let mut acc = Scalar::zero();
                for t in 0..=r.min(k.max(0) as usize) as i64 {
                    let idx = k - t;
                    if idx < 0 || idx >= prev.len() as i64 {
                        continue;
                    }
                    let arg = b.add(&Scalar::from_int(k - t));
                    let w = binom_scalar(&arg, r - t as usize)
                        .div_rat(&factorial(t as usize));
                    acc = acc.add(&w.mul(&prev[idx as usize]));
                }
                acc.mul(&Scalar::Rat(rf.clone()))
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// The row recurrence for the `a = 1` family:
/// `S(p,k) = r! sum_{t=0}^{r} (1/t!) binom(b+k-t, r-t) S(p-1, k-t)`,
/// built from the `p = 0` base row. Requires `p >= 1`.
pub fn recurrence_51(b: &Scalar, r: usize, p: usize, k: i64) -> Result<Scalar, GsnError> {
    recurrence_51_factored(b, r, &[], p, k)
}

/// [`recurrence_51`] with an extra-factor list; the recursion still runs
/// only over `p`.
pub fn recurrence_51_factored(
    b: &Scalar,
    r: usize,
    factors: &[Factor],
    p: usize,
    k: i64,
) -> Result<Scalar, GsnError> {
    if p == 0 {
        return Err(GsnError::RecurrenceBase("recurrence_51"));
    }
    let params = ParamSpec::new(Scalar::one(), b.clone(), r, p, factors.to_vec());
    if k < 0 || k > params.degree() as i64 {
        return Ok(Scalar::zero());
    }
    let rows = recurrence_rows_51(b, r, factors, p);
    Ok(rows[p][k as usize].clone())
}
