//! Classical special numbers: Stirling numbers of the second kind, unsigned
//! Stirling numbers of the first kind, and Eulerian numbers.
//!
//! Each family has two independent computation routes (row recurrence and
//! explicit formula) so the triangles cross-validate. Rows are memoized per
//! process behind a mutex; the observable contract is referential
//! transparency.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gsn::ParamSpec;
use crate::rational::Rational;
use crate::scalar::{binom_int, factorial, Scalar};

/// Which triangle a [`NumberTable`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Stirling2,
    Stirling1Unsigned,
    Eulerian,
    Gen,
    Gsn,
}

/// How a [`NumberTable`] was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Recurrence,
    Explicit,
    Conversion,
}

/// A computed triangle (or vector) of special numbers, with the provenance
/// of the computation route. Entries outside the stored range are
/// semantically zero.
#[derive(Clone, Debug)]
pub struct NumberTable {
    pub kind: TableKind,
    pub params: Option<ParamSpec>,
    pub rows: Vec<Vec<Scalar>>,
    pub route: Route,
}

impl NumberTable {
    /// Entry at `(p, k)`, zero outside the stored rows.
    pub fn get(&self, p: usize, k: i64) -> Scalar {
        match self.rows.get(p) {
            None => Scalar::zero(),
            Some(row) => {
                if k < 0 || k as usize >= row.len() {
                    Scalar::zero()
                } else {
                    row[k as usize].clone()
                }
            }
        }
    }
}

fn triangle_cache(
    cell: &'static OnceLock<Mutex<Vec<Vec<BigInt>>>>,
    p: usize,
    grow: impl Fn(&[Vec<BigInt>]) -> Vec<BigInt>,
) -> Vec<BigInt> {
    let cache = cell.get_or_init(|| Mutex::new(Vec::new()));
    let mut rows = cache.lock().unwrap();
    while rows.len() <= p {
        let next = grow(&rows);
        rows.push(next);
    }
    rows[p].clone()
}

fn stirling2_row_cached(p: usize) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    triangle_cache(&CACHE, p, |rows| {
        let p = rows.len();
        if p == 0 {
            return vec![BigInt::one()];
        }
        let prev = &rows[p - 1];
        // S(p,k) = S(p-1,k-1) + k S(p-1,k)
        (0..=p)
            .map(|k| {
                let carry = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                let stay = if k < prev.len() {
                    BigInt::from(k) * &prev[k]
                } else {
                    BigInt::zero()
                };
                carry + stay
            })
            .collect()
    })
}

fn stirling1_row_cached(p: usize) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    triangle_cache(&CACHE, p, |rows| {
        let p = rows.len();
        if p == 0 {
            return vec![BigInt::one()];
        }
        let prev = &rows[p - 1];
        // s(p,k) = s(p-1,k-1) + (p-1) s(p-1,k)
        (0..=p)
            .map(|k| {
                let carry = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                let stay = if k < prev.len() {
                    BigInt::from(p - 1) * &prev[k]
                } else {
                    BigInt::zero()
                };
                carry + stay
            })
            .collect()
    })
}

fn eulerian_row_cached(p: usize) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    triangle_cache(&CACHE, p, |rows| {
        let p = rows.len();
        if p == 0 {
            return vec![BigInt::one()];
        }
        let prev = &rows[p - 1];
        // A(p,i) = i A(p-1,i) + (p-i+1) A(p-1,i-1), with A(p,0) = 0 for p >= 1
        (0..=p)
            .map(|i| {
                let stay = if i < prev.len() {
                    BigInt::from(i) * &prev[i]
                } else {
                    BigInt::zero()
                };
                let carry = if i >= 1 && i - 1 < prev.len() {
                    BigInt::from(p - i + 1) * &prev[i - 1]
                } else {
                    BigInt::zero()
                };
                stay + carry
            })
            .collect()
    })
}

/// Stirling number of the second kind `S(p,k)`: partitions of a `p`-set
/// into `k` non-empty blocks. Zero for `k < 0` or `k > p`.
pub fn stirling2(p: usize, k: i64) -> Rational {
    if k < 0 || k as usize > p {
        return Rational::zero();
    }
    Rational::from_bigint(stirling2_row_cached(p)[k as usize].clone())
}

/// `S(p,k)` accepting a possibly-negative row index (zero for `p < 0`),
/// as needed by identity sums that reindex rows.
pub fn stirling2_i(p: i64, k: i64) -> Rational {
    if p < 0 {
        return Rational::zero();
    }
    stirling2(p as usize, k)
}

/// Unsigned Stirling number of the first kind `s(p,k)`: permutations of
/// `p` elements with `k` cycles. Zero outside `0 <= k <= p`.
pub fn stirling1_unsigned(p: usize, k: i64) -> Rational {
    if k < 0 || k as usize > p {
        return Rational::zero();
    }
    Rational::from_bigint(stirling1_row_cached(p)[k as usize].clone())
}

/// Eulerian number `A(p,i)` under the indexing where `A(0,0) = 1` and
/// `A(p,0) = 0` for `p >= 1` (so `n^p = sum_i A(p,i) binom(n+p-i, p)`
/// holds at `n = 0`). Zero outside `0 <= i <= p`.
pub fn eulerian(p: usize, i: i64) -> Rational {
    if i < 0 || i as usize > p {
        return Rational::zero();
    }
    Rational::from_bigint(eulerian_row_cached(p)[i as usize].clone())
}

/// Explicit-formula route for `S(p,k)`, kept independent of the recurrence
/// for cross-validation: `S(p,k) = (1/k!) sum_j (-1)^j binom(k,j) (k-j)^p`.
pub fn stirling2_explicit(p: usize, k: i64) -> Rational {
    if k < 0 || k as usize > p {
        return Rational::zero();
    }
    let k = k as usize;
    let mut sum = Rational::zero();
    for j in 0..=k {
        let term = binom_int(k as i64, j as i64) * Rational::from_int((k - j) as i64).pow(p);
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
    sum / factorial(k)
}

/// Explicit-formula route for the Eulerian numbers:
/// `A(p,i) = sum_j (-1)^j binom(p+1, j) (i-j)^p` (with `0^0 = 1`).
pub fn eulerian_explicit(p: usize, i: i64) -> Rational {
    if i < 0 || i as usize > p {
        return Rational::zero();
    }
    let mut sum = Rational::zero();
    for j in 0..=i {
        let term = binom_int(p as i64 + 1, j) * Rational::from_int(i - j).pow(p);
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
    sum
}

fn classical_table(kind: TableKind, rows_upto: usize, row: impl Fn(usize) -> Vec<BigInt>) -> NumberTable {
    NumberTable {
        kind,
        params: None,
        rows: (0..=rows_upto)
            .map(|p| {
                row(p)
                    .into_iter()
                    .map(|v| Scalar::Rat(Rational::from_bigint(v)))
                    .collect()
            })
            .collect(),
        route: Route::Recurrence,
    }
}

/// The `S(p,k)` triangle for `p = 0..=rows`.
pub fn stirling2_table(rows: usize) -> NumberTable {
    classical_table(TableKind::Stirling2, rows, stirling2_row_cached)
}

/// The unsigned `s(p,k)` triangle for `p = 0..=rows`.
pub fn stirling1_table(rows: usize) -> NumberTable {
    classical_table(TableKind::Stirling1Unsigned, rows, stirling1_row_cached)
}

/// The Eulerian triangle for `p = 0..=rows`.
pub fn eulerian_table(rows: usize) -> NumberTable {
    classical_table(TableKind::Eulerian, rows, eulerian_row_cached)
}
