//! The two-family specialization `r = r_s = 1, L = 2`: numbers
//! `S_{a1,b1}^{a2,b2,p2}(p1,k)` expanding `(a1 n + b1)^{p1} (a2 n + b2)^{p2}`
//! over the binomial basis, together with the parameter-transformation,
//! shift, convolution and power-sum identities that hold for them.
//!
//! Identity entry points that return a pair evaluate the two sides through
//! independent code paths, sharing nothing beyond the scalar layer.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::classic::{stirling1_unsigned, stirling2, stirling2_i, NumberTable, Route, TableKind};
use crate::error::GsnError;
use crate::gsn::{Factor, ParamSpec};
use crate::rational::Rational;
use crate::scalar::{binom_int, factorial, Scalar};

/// Parameters of the two-family GSN `S_{a1,b1}^{a2,b2,p2}(p1,k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateParams {
    pub a1: Scalar,
    pub b1: Scalar,
    pub a2: Scalar,
    pub b2: Scalar,
    pub p1: usize,
    pub p2: usize,
}

/// Target family `(c1,d1,c2,d2)` for the parameter-transformation formulas.
#[derive(Clone, Debug)]
pub struct TargetParams {
    pub c1: Scalar,
    pub d1: Scalar,
    pub c2: Scalar,
    pub d2: Scalar,
}

impl TargetParams {
    pub fn standard() -> Self {
        TargetParams {
            c1: Scalar::one(),
            d1: Scalar::zero(),
            c2: Scalar::one(),
            d2: Scalar::zero(),
        }
    }

    pub fn ints(c1: i64, d1: i64, c2: i64, d2: i64) -> Self {
        TargetParams {
            c1: Scalar::from_int(c1),
            d1: Scalar::from_int(d1),
            c2: Scalar::from_int(c2),
            d2: Scalar::from_int(d2),
        }
    }

    /// Rational values of `(c1, c2)`, which must be invertible.
    fn inverses(&self, p1: usize, p2: usize) -> Result<Rational, GsnError> {
        let c1 = self
            .c1
            .as_rational()
            .filter(|c| !c.is_zero())
            .ok_or(GsnError::NotInvertible("c1"))?;
        let c2 = self
            .c2
            .as_rational()
            .filter(|c| !c.is_zero())
            .ok_or(GsnError::NotInvertible("c2"))?;
        Ok(c1.recip().pow(p1) * c2.recip().pow(p2))
    }
}

impl BivariateParams {
    pub fn new(a1: Scalar, b1: Scalar, a2: Scalar, b2: Scalar, p1: usize, p2: usize) -> Self {
        BivariateParams { a1, b1, a2, b2, p1, p2 }
    }

    pub fn ints(a1: i64, b1: i64, a2: i64, b2: i64, p1: usize, p2: usize) -> Self {
        BivariateParams::new(
            Scalar::from_int(a1),
            Scalar::from_int(b1),
            Scalar::from_int(a2),
            Scalar::from_int(b2),
            p1,
            p2,
        )
    }

    /// Indeterminates `a1, b1, a2, b2`.
    pub fn symbolic(p1: usize, p2: usize) -> Self {
        BivariateParams::new(
            Scalar::var("a1"),
            Scalar::var("b1"),
            Scalar::var("a2"),
            Scalar::var("b2"),
            p1,
            p2,
        )
    }

    pub fn degree(&self) -> usize {
        self.p1 + self.p2
    }

    /// `(a1 t + b1)^{p1} (a2 t + b2)^{p2}` at integer `t`.
    pub fn weight(&self, t: i64) -> Scalar {
        let tt = Scalar::from_int(t);
        self.a1
            .mul(&tt)
            .add(&self.b1)
            .pow(self.p1)
            .mul(&self.a2.mul(&tt).add(&self.b2).pow(self.p2))
    }

    /// Same scalars, different exponents.
    pub fn with_exponents(&self, p1: usize, p2: usize) -> Self {
        BivariateParams::new(
            self.a1.clone(),
            self.b1.clone(),
            self.a2.clone(),
            self.b2.clone(),
            p1,
            p2,
        )
    }

    /// `b -> a m + b` in both slots.
    pub fn shifted(&self, m: i64) -> Self {
        let mm = Scalar::from_int(m);
        BivariateParams::new(
            self.a1.clone(),
            self.a1.mul(&mm).add(&self.b1),
            self.a2.clone(),
            self.a2.mul(&mm).add(&self.b2),
            self.p1,
            self.p2,
        )
    }

    /// Swap the two families.
    pub fn swapped(&self) -> Self {
        BivariateParams::new(
            self.a2.clone(),
            self.b2.clone(),
            self.a1.clone(),
            self.b1.clone(),
            self.p2,
            self.p1,
        )
    }

    /// The equivalent general-family parameters (`r = r_2 = 1`).
    pub fn to_param_spec(&self) -> ParamSpec {
        ParamSpec::new(
            self.a1.clone(),
            self.b1.clone(),
            1,
            self.p1,
            vec![Factor {
                alpha: self.a2.clone(),
                beta: self.b2.clone(),
                r: 1,
                p: self.p2,
            }],
        )
    }

    fn cache_key(&self) -> String {
        format!("{}|{}|{}|{}|{}", self.a1, self.b1, self.a2, self.b2, self.p2)
    }
}

/// Single-family GSN `S_{a,b}(p,k)` (the `p2 = 0` case).
pub fn gsn_single(a: &Scalar, b: &Scalar, p: usize, k: i64) -> Scalar {
    gsn2(
        &BivariateParams::new(a.clone(), b.clone(), Scalar::one(), Scalar::zero(), p, 0),
        k,
    )
}

/// Explicit formula for the two-family GSN:
/// `S(p1,k) = (1/k!) sum_j (-1)^j binom(k,j) (a1(k-j)+b1)^{p1} (a2(k-j)+b2)^{p2}`.
/// Zero outside `0..=p1+p2`.
pub fn gsn2(bp: &BivariateParams, k: i64) -> Scalar {
    if k < 0 || k as usize > bp.degree() {
        return Scalar::zero();
    }
    let mut acc = Scalar::zero();
    for j in 0..=k {
        let term = bp.weight(k - j).mul(&Scalar::Rat(binom_int(k, j)));
        if j % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc.div_rat(&factorial(k as usize))
}

fn recurrence_rows(bp: &BivariateParams) -> Arc<Vec<Vec<Scalar>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Vec<Vec<Scalar>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    let key = bp.cache_key();
    let existing = map.get(&key).cloned();
    let have = existing.as_ref().map_or(0, |rows| rows.len());
    if have > bp.p1 {
        return existing.unwrap();
    }
    let mut rows: Vec<Vec<Scalar>> = existing.map(|a| (*a).clone()).unwrap_or_default();
    if rows.is_empty() {
        // base row p1 = 0: S(0,k) = S_{a2,b2}(p2,k)
        let base = bp.with_exponents(0, bp.p2);
        rows.push((0..=bp.p2 as i64).map(|k| gsn2(&base, k)).collect());
    }
    while rows.len() <= bp.p1 {
        let p1 = rows.len();
        let prev = &rows[p1 - 1];
        let width = p1 + bp.p2 + 1;
        let row: Vec<Scalar> = (0..width as i64)
            .map(|k| {
                let carry = if k >= 1 && (k - 1) < prev.len() as i64 {
                    bp.a1.mul(&prev[(k - 1) as usize])
                } else {
                    Scalar::zero()
                };
                let stay = if k < prev.len() as i64 {
                    bp.a1
                        .scale_int(k)
                        .add(&bp.b1)
                        .mul(&prev[k as usize])
                } else {
                    Scalar::zero()
                };
                carry.add(&stay)
            })
            .collect();
        rows.push(row);
    }
    let arc = Arc::new(rows);
    map.insert(key, arc.clone());
    arc
}

/// The recurrence route `S(p1,k) = a1 S(p1-1,k-1) + (a1 k + b1) S(p1-1,k)`,
/// built row by row from the `p1 = 0` base row. Requires `p1 >= 1`.
pub fn gsn2_recurrence(bp: &BivariateParams, k: i64) -> Result<Scalar, GsnError> {
    if bp.p1 == 0 {
        return Err(GsnError::RecurrenceBase("gsn2_recurrence"));
    }
    if k < 0 || k as usize > bp.degree() {
        return Ok(Scalar::zero());
    }
    let rows = recurrence_rows(bp);
    Ok(rows[bp.p1][k as usize].clone())
}

/// Triangle of rows `p1 = 0..=rows` for fixed `(a1,b1,a2,b2,p2)`, computed
/// by the recurrence and cross-checked against the explicit formula on
/// every entry.
pub fn triangle(
    a1: &Scalar,
    b1: &Scalar,
    a2: &Scalar,
    b2: &Scalar,
    p2: usize,
    rows: usize,
) -> NumberTable {
    let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), rows, p2);
    let all = recurrence_rows(&bp);
    let mut out = Vec::with_capacity(rows + 1);
    for p1 in 0..=rows {
        let row = &all[p1];
        let explicit = bp.with_exponents(p1, p2);
        for (k, v) in row.iter().enumerate() {
            let w = gsn2(&explicit, k as i64);
            assert!(*v == w, "recurrence/explicit mismatch at p1={p1} k={k}");
        }
        out.push(row.clone());
    }
    NumberTable {
        kind: TableKind::Gsn,
        params: Some(bp.to_param_spec()),
        rows: out,
        route: Route::Recurrence,
    }
}

/// Right-hand side of the parameter-transformation formula (the `m = 0`
/// case of the shift representation): expresses `S_{a1,b1}^{a2,b2,p2}` in
/// terms of the target family `S_{c1,d1}^{c2,d2,j2}`.
pub fn transform_params(
    bp: &BivariateParams,
    target: &TargetParams,
    k: i64,
) -> Result<Scalar, GsnError> {
    let scale = target.inverses(bp.p1, bp.p2)?;
    let u1 = bp.b1.mul(&target.c1).sub(&bp.a1.mul(&target.d1));
    let u2 = bp.b2.mul(&target.c2).sub(&bp.a2.mul(&target.d2));
    let mut acc = Scalar::zero();
    for j1 in 0..=bp.p1 {
        for j2 in 0..=bp.p2 {
            let tf = BivariateParams::new(
                target.c1.clone(),
                target.d1.clone(),
                target.c2.clone(),
                target.d2.clone(),
                j1,
                j2,
            );
            let coeff = Scalar::Rat(
                binom_int(bp.p1 as i64, j1 as i64) * binom_int(bp.p2 as i64, j2 as i64),
            );
            let term = coeff
                .mul(&bp.a1.pow(j1))
                .mul(&bp.a2.pow(j2))
                .mul(&u1.pow(bp.p1 - j1))
                .mul(&u2.pow(bp.p2 - j2))
                .mul(&gsn2(&tf, k));
            acc = acc.add(&term);
        }
    }
    Ok(acc.mul(&Scalar::Rat(scale)))
}

/// `S` with `b -> a + b` in both slots, via
/// `S_{a1,a1+b1}^{a2,a2+b2,p2}(p1,k) = S(p1,k) + (k+1) S(p1,k+1)`.
pub fn shift_b(bp: &BivariateParams, k: i64) -> Scalar {
    gsn2(bp, k).add(&gsn2(bp, k + 1).scale_int(k + 1))
}

/// Right-hand side of the `m`-parameterized representation over a general
/// target family; equals `k! S_{a1,b1}^{a2,b2,p2}(p1,k)` for every `m >= 0`.
pub fn m_shift_with_target(
    bp: &BivariateParams,
    target: &TargetParams,
    m: usize,
    k: i64,
) -> Result<Scalar, GsnError> {
    let scale = target.inverses(bp.p1, bp.p2)?;
    let mm = Scalar::from_int(m as i64);
    let u1 = bp
        .b1
        .mul(&target.c1)
        .sub(&bp.a1.mul(&target.c1).mul(&mm))
        .sub(&bp.a1.mul(&target.d1));
    let u2 = bp
        .b2
        .mul(&target.c2)
        .sub(&bp.a2.mul(&target.c2).mul(&mm))
        .sub(&bp.a2.mul(&target.d2));
    let mut acc = Scalar::zero();
    for j1 in 0..=bp.p1 {
        for j2 in 0..=bp.p2 {
            let tf = BivariateParams::new(
                target.c1.clone(),
                target.d1.clone(),
                target.c2.clone(),
                target.d2.clone(),
                j1,
                j2,
            );
            let mut inner = Scalar::zero();
            for t in 0..=m as i64 {
                let w = binom_int(m as i64, t) * factorial((k + t) as usize);
                inner = inner.add(&gsn2(&tf, k + t).mul(&Scalar::Rat(w)));
            }
            let coeff = Scalar::Rat(
                binom_int(bp.p1 as i64, j1 as i64) * binom_int(bp.p2 as i64, j2 as i64),
            );
            let term = coeff
                .mul(&bp.a1.pow(j1))
                .mul(&bp.a2.pow(j2))
                .mul(&u1.pow(bp.p1 - j1))
                .mul(&u2.pow(bp.p2 - j2))
                .mul(&inner);
            acc = acc.add(&term);
        }
    }
    Ok(acc.mul(&Scalar::Rat(scale)))
}

/// The standard-target instance of the shift representation; equals
/// `k! S_{a1,b1}^{a2,b2,p2}(p1,k)` for every `m >= 0`.
pub fn m_shift_representation(bp: &BivariateParams, m: usize, k: i64) -> Scalar {
    let mm = Scalar::from_int(m as i64);
    let u1 = bp.b1.sub(&bp.a1.mul(&mm));
    let u2 = bp.b2.sub(&bp.a2.mul(&mm));
    let mut acc = Scalar::zero();
    for j1 in 0..=bp.p1 {
        for j2 in 0..=bp.p2 {
            let mut inner = Rational::zero();
            for t in 0..=m as i64 {
                if k + t < 0 {
                    continue;
                }
                inner += &(binom_int(m as i64, t)
                    * factorial((k + t) as usize)
                    * stirling2(j1 + j2, k + t));
            }
            let coeff = binom_int(bp.p1 as i64, j1 as i64) * binom_int(bp.p2 as i64, j2 as i64);
            let term = Scalar::Rat(coeff * inner)
                .mul(&bp.a1.pow(j1))
                .mul(&bp.a2.pow(j2))
                .mul(&u1.pow(bp.p1 - j1))
                .mul(&u2.pow(bp.p2 - j2));
            acc = acc.add(&term);
        }
    }
    acc
}

/// The first-kind-Stirling form of the shift representation (`m >= 1`);
/// equals `S_{a1,b1}^{a2,b2,p2}(p1,k)` itself.
pub fn m_shift_via_stirling1(bp: &BivariateParams, m: usize, k: i64) -> Scalar {
    assert!(m >= 1, "shift parameter must be positive");
    let mm = Scalar::from_int(m as i64);
    let u1 = bp.b1.sub(&bp.a1.mul(&mm));
    let u2 = bp.b2.sub(&bp.a2.mul(&mm));
    let mut acc = Scalar::zero();
    for j1 in 0..=bp.p1 {
        for j2 in 0..=bp.p2 {
            let mut inner = Rational::zero();
            for t in 0..m as i64 {
                let w = stirling1_unsigned(m, m as i64 - t)
                    * stirling2_i(j1 as i64 + j2 as i64 + m as i64 - t, k + m as i64);
                if t % 2 == 0 {
                    inner += &w;
                } else {
                    inner -= &w;
                }
            }
            let coeff = binom_int(bp.p1 as i64, j1 as i64) * binom_int(bp.p2 as i64, j2 as i64);
            let term = Scalar::Rat(coeff * inner)
                .mul(&bp.a1.pow(j1))
                .mul(&bp.a2.pow(j2))
                .mul(&u1.pow(bp.p1 - j1))
                .mul(&u2.pow(bp.p2 - j2));
            acc = acc.add(&term);
        }
    }
    acc
}

/// `S_{1,m}(p,k)` written purely in standard Stirling numbers of both
/// kinds; `m` must be a positive integer.
pub fn integer_b_in_stirling(m: i64, p: usize, k: i64) -> Result<Rational, GsnError> {
    if m < 1 {
        return Err(GsnError::NotPositiveInteger {
            name: "m",
            value: m.to_string(),
        });
    }
    let mut acc = Rational::zero();
    for t in 0..m {
        let w = stirling1_unsigned(m as usize, m - t) * stirling2_i(p as i64 + m - t, k + m);
        if t % 2 == 0 {
            acc += &w;
        } else {
            acc -= &w;
        }
    }
    Ok(acc)
}

/// Both sides of the binomial/Stirling exchange lemma, for `0 <= k <= j`
/// and `m >= 1`:
/// LHS `sum_t binom(m,t) (k+t)! S(j,k+t)`,
/// RHS `k! sum_t (-1)^t s(m,m-t) S(j+m-t, k+m)`.
pub fn lemma3_sides(j: usize, k: usize, m: usize) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    for t in 0..=m as i64 {
        lhs += &(binom_int(m as i64, t)
            * factorial(k + t as usize)
            * stirling2(j, k as i64 + t));
    }
    let mut rhs = Rational::zero();
    for t in 0..m as i64 {
        let w = stirling1_unsigned(m, m as i64 - t)
            * stirling2_i(j as i64 + m as i64 - t, (k + m) as i64);
        if t % 2 == 0 {
            rhs += &w;
        } else {
            rhs -= &w;
        }
    }
    rhs = rhs * factorial(k);
    (lhs, rhs)
}

/// `S(p1+p2, l)` rebuilt from lower rows and first-kind numbers:
/// `sum_{k=1}^{p2-1} (-1)^{p2+1+k} s(p2,k) S(p1+k, l)
///  + sum_j binom(p1,j) p2^{p1-j} S(j, l-p2)`, for `p2 >= 1`.
pub fn stirling_recurrence_family(p1: usize, p2: usize, l: i64) -> Rational {
    assert!(p2 >= 1, "p2 must be positive");
    let mut acc = Rational::zero();
    for k in 1..p2 as i64 {
        let w = stirling1_unsigned(p2, k) * stirling2(p1 + k as usize, l);
        if (p2 as i64 + 1 + k) % 2 == 0 {
            acc += &w;
        } else {
            acc -= &w;
        }
    }
    for j in 0..=p1 {
        acc += &(binom_int(p1 as i64, j as i64)
            * Rational::from_int(p2 as i64).pow(p1 - j)
            * stirling2_i(j as i64, l - p2 as i64));
    }
    acc
}

/// Two-step iteration of the standard recurrence:
/// `S(p+2,l) = l^2 S(p,l) + (2l-1) S(p,l-1) + S(p,l-2)`.
pub fn stirling_iterated2(p: usize, l: i64) -> Rational {
    Rational::from_int(l).pow(2) * stirling2(p, l)
        + Rational::from_int(2 * l - 1) * stirling2(p, l - 1)
        + stirling2(p, l - 2)
}

/// Three-step iteration of the standard recurrence:
/// `S(p+3,l) = l^3 S(p,l) + (3l^2-3l+1) S(p,l-1) + 3(l-1) S(p,l-2) + S(p,l-3)`.
pub fn stirling_iterated3(p: usize, l: i64) -> Rational {
    Rational::from_int(l).pow(3) * stirling2(p, l)
        + Rational::from_int(3 * l * l - 3 * l + 1) * stirling2(p, l - 1)
        + Rational::from_int(3 * (l - 1)) * stirling2(p, l - 2)
        + stirling2(p, l - 3)
}

/// Right-hand side of the factor-splitting convolution:
/// `S_{a1,b1}^{a2,b2,q1+q2}(p2,l) = sum_m S_{a1,b1}^{a2,b2,q2}(p2,m)
///  S_{a2, a2 m + b2}(q1, l-m)`.
pub fn lemma4_rhs(
    a1: &Scalar,
    b1: &Scalar,
    a2: &Scalar,
    b2: &Scalar,
    p2: usize,
    q1: usize,
    q2: usize,
    l: i64,
) -> Scalar {
    let inner = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p2, q2);
    let mut acc = Scalar::zero();
    for m in 0..=(p2 + q2) as i64 {
        let shift_b2 = a2.scale_int(m).add(b2);
        let term = gsn2(&inner, m).mul(&gsn_single(a2, &shift_b2, q1, l - m));
        acc = acc.add(&term);
    }
    acc
}

/// Right-hand side of the full convolution:
/// `S^{q1+q2}(p1+p2,l) = sum_m S^{q2}(p2,m)
///  S_{a1,a1 m+b1}^{a2,a2 m+b2,q1}(p1, l-m)`.
pub fn prop2_rhs(
    a1: &Scalar,
    b1: &Scalar,
    a2: &Scalar,
    b2: &Scalar,
    p1: usize,
    p2: usize,
    q1: usize,
    q2: usize,
    l: i64,
) -> Scalar {
    let inner = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p2, q2);
    let mut acc = Scalar::zero();
    for m in 0..=(p2 + q2) as i64 {
        let shifted = BivariateParams::new(
            a1.clone(),
            a1.scale_int(m).add(b1),
            a2.clone(),
            a2.scale_int(m).add(b2),
            p1,
            q1,
        );
        acc = acc.add(&gsn2(&inner, m).mul(&gsn2(&shifted, l - m)));
    }
    acc
}

/// The reported three-part convolution (`N = 3`).
pub fn triple_rhs(
    a1: &Scalar,
    b1: &Scalar,
    a2: &Scalar,
    b2: &Scalar,
    p: [usize; 3],
    q: [usize; 3],
    l: i64,
) -> Scalar {
    let [p1, p2, p3] = p;
    let [q1, q2, q3] = q;
    let f3 = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p3, q3);
    let mut acc = Scalar::zero();
    for n in 0..=(p3 + q3) as i64 {
        let f2 = BivariateParams::new(
            a1.clone(),
            a1.scale_int(n).add(b1),
            a2.clone(),
            a2.scale_int(n).add(b2),
            p2,
            q2,
        );
        for m in 0..=(p2 + q2) as i64 {
            let f1 = BivariateParams::new(
                a1.clone(),
                a1.scale_int(m + n).add(b1),
                a2.clone(),
                a2.scale_int(m + n).add(b2),
                p1,
                q1,
            );
            acc = acc.add(
                &gsn2(&f3, n)
                    .mul(&gsn2(&f2, m))
                    .mul(&gsn2(&f1, l - n - m)),
            );
        }
    }
    acc
}

/// Single-family case of the convolution:
/// `S_{a,b}(p1+p2,l) = sum_m S_{a,b}(p2,m) S_{a,am+b}(p1,l-m)`.
pub fn merge_rhs(a: &Scalar, b: &Scalar, p1: usize, p2: usize, l: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for m in 0..=p2 as i64 {
        let shift = a.scale_int(m).add(b);
        acc = acc.add(&gsn_single(a, b, p2, m).mul(&gsn_single(a, &shift, p1, l - m)));
    }
    acc
}

/// Standard-case convolution, expressing `S(p1+p2,l)` through lower rows:
/// `sum_m sum_j binom(p1,j) m^{p1-j} S(j,l-m) S(p2,m)`.
pub fn standard_conv_rhs(p1: usize, p2: usize, l: i64) -> Rational {
    let mut acc = Rational::zero();
    for m in 0..=p2 as i64 {
        for j in 0..=p1 {
            acc += &(binom_int(p1 as i64, j as i64)
                * Rational::from_int(m).pow(p1 - j)
                * stirling2(j, l - m)
                * stirling2(p2, m));
        }
    }
    acc
}

/// Both sides of the truncated-convolution identity (`p2 >= 1`):
/// LHS `sum_{m<p2} sum_j binom(p1,j) m^{p1-j} S(j,l-m) S(p2,m)`,
/// RHS `sum_{k=1}^{p2-1} (-1)^{p2+k+1} s(p2,k) S(p1+k,l)`.
pub fn identity_3281_sides(p1: usize, p2: usize, l: i64) -> (Rational, Rational) {
    assert!(p2 >= 1, "p2 must be positive");
    let mut lhs = Rational::zero();
    for m in 0..p2 as i64 {
        for j in 0..=p1 {
            lhs += &(binom_int(p1 as i64, j as i64)
                * Rational::from_int(m).pow(p1 - j)
                * stirling2(j, l - m)
                * stirling2(p2, m));
        }
    }
    let mut rhs = Rational::zero();
    for k in 1..p2 as i64 {
        let w = stirling1_unsigned(p2, k) * stirling2(p1 + k as usize, l);
        if (p2 as i64 + k + 1) % 2 == 0 {
            rhs += &w;
        } else {
            rhs -= &w;
        }
    }
    (lhs, rhs)
}

/// The convolution rewritten through the shift representation with free
/// positive shift `shift_n`; equals `S_{a,b}(p1+p2,l)`.
pub fn conv_via_mshift(
    a: &Scalar,
    b: &Scalar,
    p1: usize,
    p2: usize,
    shift_n: usize,
    l: i64,
) -> Scalar {
    assert!(shift_n >= 1, "shift parameter must be positive");
    let n = shift_n as i64;
    let mut acc = Scalar::zero();
    for m in 0..=p2 as i64 {
        let u = b.sub(&a.scale_int(n - m));
        let mut mid = Scalar::zero();
        for j1 in 0..=p1 {
            let mut inner = Rational::zero();
            for t in 0..n {
                let w = stirling1_unsigned(shift_n, n - t)
                    * stirling2_i(j1 as i64 + n - t, l - m + n);
                if t % 2 == 0 {
                    inner += &w;
                } else {
                    inner -= &w;
                }
            }
            mid = mid.add(
                &Scalar::Rat(binom_int(p1 as i64, j1 as i64) * inner)
                    .mul(&a.pow(j1))
                    .mul(&u.pow(p1 - j1)),
            );
        }
        acc = acc.add(&mid.mul(&gsn_single(a, b, p2, m)));
    }
    acc
}

/// Both sides of the bilinear Stirling identity obtained by expanding the
/// convolution in powers of `b`, for `0 <= l,t <= p1+p2+q1+q2`.
pub fn cor3_sides(
    p1: usize,
    p2: usize,
    q1: usize,
    q2: usize,
    l: i64,
    t: i64,
) -> (Rational, Rational) {
    let (p1i, p2i, q1i, q2i) = (p1 as i64, p2 as i64, q1 as i64, q2 as i64);
    let mut lhs = Rational::zero();
    for r in 0..=q1i + q2i {
        lhs += &(binom_int(p1i + p2i + r, t)
            * binom_int(q1i + q2i, r)
            * stirling2_i(p1i + p2i + r - t, l));
    }
    let mut rhs = Rational::zero();
    for m in 0..=p2i + q2i {
        for r1 in 0..=q1i {
            for r2 in 0..=q2i {
                for k in 0..=p1i + r1 {
                    for s in 0..=k {
                        let c = binom_int(q1i, r1)
                            * binom_int(q2i, r2)
                            * binom_int(p1i + r1, k)
                            * binom_int(p2i + r2, t - s)
                            * binom_int(k, s);
                        if c.is_zero() {
                            continue;
                        }
                        rhs += &(c
                            * Rational::from_int(m).pow((k - s) as usize)
                            * stirling2_i(p2i + r2 - t + s, m)
                            * stirling2_i(p1i + r1 - k, l - m));
                    }
                }
            }
        }
    }
    (lhs, rhs)
}

/// Both sides of the supporting claim
/// `S_{a,b}^{a,b+1,q}(p,k) = sum_r binom(q,r) S_{a,b}(p+r,k)`.
pub fn claim_336_sides(a: &Scalar, b: &Scalar, q: usize, p: usize, k: i64) -> (Scalar, Scalar) {
    let lhs = gsn2(
        &BivariateParams::new(a.clone(), b.clone(), a.clone(), b.add(&Scalar::one()), p, q),
        k,
    );
    let mut rhs = Scalar::zero();
    for r in 0..=q {
        rhs = rhs.add(
            &gsn_single(a, b, p + r, k).mul(&Scalar::Rat(binom_int(q as i64, r as i64))),
        );
    }
    (lhs, rhs)
}

/// The `q1 = q2 = 0` case of [`cor3_sides`].
pub fn eq_339_sides(p1: usize, p2: usize, l: i64, t: i64) -> (Rational, Rational) {
    let (p1i, p2i) = (p1 as i64, p2 as i64);
    let lhs = binom_int(p1i + p2i, t) * stirling2_i(p1i + p2i - t, l);
    let mut rhs = Rational::zero();
    for m in 0..=p2i {
        for k in 0..=p1i {
            for s in 0..=k {
                let c = binom_int(p1i, k) * binom_int(p2i, t - s) * binom_int(k, s);
                if c.is_zero() {
                    continue;
                }
                rhs += &(c
                    * Rational::from_int(m).pow((k - s) as usize)
                    * stirling2_i(p2i - t + s, m)
                    * stirling2_i(p1i - k, l - m));
            }
        }
    }
    (lhs, rhs)
}

/// The `t = p1 + p2` case of [`cor3_sides`].
pub fn eq_3401_sides(p1: usize, p2: usize, q1: usize, q2: usize, l: i64) -> (Rational, Rational) {
    cor3_sides(p1, p2, q1, q2, l, (p1 + p2) as i64)
}

/// Both sides of the pure-binomial identity obtained at `l = 1`.
pub fn eq_341_sides(p1: usize, p2: usize, q1: usize, q2: usize) -> (Rational, Rational) {
    let (p1i, p2i, q1i, q2i) = (p1 as i64, p2 as i64, q1 as i64, q2 as i64);
    let mut lhs = Rational::zero();
    for r in 1..=q1i + q2i {
        lhs += &(binom_int(p1i + p2i + r, r) * binom_int(q1i + q2i, r));
    }
    let mut rhs = Rational::zero();
    for r2 in 1..=q2i {
        let mut inner = binom_int(p1i, r2);
        for s in 0..r2 {
            inner += &(binom_int(p2i + r2, r2 - s) * binom_int(p1i, s));
        }
        rhs += &(binom_int(q2i, r2) * inner);
    }
    for r1 in 1..=q1i {
        let mut inner = binom_int(p1i + r1, r1);
        for s in 0..r1 {
            inner += &(binom_int(p2i, r1 - s) * binom_int(p1i + r1, s));
        }
        rhs += &(binom_int(q1i, r1) * inner);
    }
    for r1 in 1..=q1i {
        for r2 in 1..=q2i {
            let mut inner = binom_int(p1i + r1, r1 + r2);
            for s in 0..r1 + r2 {
                inner += &(binom_int(p2i + r2, r2 + r1 - s) * binom_int(p1i + r1, s));
            }
            rhs += &(binom_int(q1i, r1) * binom_int(q2i, r2) * inner);
        }
    }
    (lhs, rhs)
}

/// Both sides of the weighted power-sum formula, for `m >= 1` and
/// `0 <= k <= m-1`:
/// LHS `sum_t binom(m,t+k+1) t! S_{-a1,b1+a1 m}^{-a2,b2+a2 m,p2}(p1,t)`,
/// RHS `sum_{t=k+1}^m binom(t-1,k) (b1+a1 t)^{p1} (b2+a2 t)^{p2}`.
///
/// The left side expands the summand at arguments counted down from `m`,
/// so the shifted family carries negated slopes: with
/// `T(t) = S_{-a1,b1+a1 m}^{-a2,b2+a2 m,p2}(p1,t)` the weight
/// `(a1(m-u)+b1)^{p1} (a2(m-u)+b2)^{p2}` equals
/// `sum_t t! T(t) binom(u,t)`, and
/// `sum_u binom(u,t) binom(m-1-u,k) = binom(m,t+k+1)` collapses the sum.
pub fn power_sum_sides(
    bp: &BivariateParams,
    m: usize,
    k: i64,
) -> Result<(Scalar, Scalar), GsnError> {
    if m < 1 {
        return Err(GsnError::NotPositiveInteger {
            name: "m",
            value: m.to_string(),
        });
    }
    if k < 0 || k >= m as i64 {
        return Err(GsnError::IndexOutOfRange {
            index: k,
            max: m as i64 - 1,
        });
    }
    let mi = m as i64;
    let mm = Scalar::from_int(mi);
    let reversed = BivariateParams::new(
        bp.a1.neg(),
        bp.a1.mul(&mm).add(&bp.b1),
        bp.a2.neg(),
        bp.a2.mul(&mm).add(&bp.b2),
        bp.p1,
        bp.p2,
    );
    let mut lhs = Scalar::zero();
    for t in 0..=(mi - k - 1) {
        let w = binom_int(mi, t + k + 1) * factorial(t as usize);
        lhs = lhs.add(&gsn2(&reversed, t).mul(&Scalar::Rat(w)));
    }
    let mut rhs = Scalar::zero();
    for t in (k + 1)..=mi {
        rhs = rhs.add(&bp.weight(t).mul(&Scalar::Rat(binom_int(t - 1, k))));
    }
    Ok((lhs, rhs))
}

/// First displayed power-sum example:
/// `sum_{t=k+1}^m binom(t-1,k) (m-t) (t-m-1)^2` against
/// `4 binom(m+1,k+3) + 6 binom(m+1,k+4)`.
pub fn power_sum_example1(m: i64, k: i64) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    for t in (k + 1)..=m {
        lhs += &(binom_int(t - 1, k)
            * Rational::from_int(m - t)
            * Rational::from_int(t - m - 1).pow(2));
    }
    let rhs = Rational::from_int(4) * binom_int(m + 1, k + 3)
        + Rational::from_int(6) * binom_int(m + 1, k + 4);
    (lhs, rhs)
}

/// Second displayed power-sum example:
/// `sum_{t=k+1}^m binom(t-1,k) (m-t)^3` against
/// `binom(m,k+2) + 6 binom(m+1,k+4)`.
pub fn power_sum_example2(m: i64, k: i64) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    for t in (k + 1)..=m {
        lhs += &(binom_int(t - 1, k) * Rational::from_int(m - t).pow(3));
    }
    let rhs = binom_int(m, k + 2) + Rational::from_int(6) * binom_int(m + 1, k + 4);
    (lhs, rhs)
}

/// Both sides of the binomial convolution
/// `binom(k+mu,k) S(p1,k+mu) = sum sum binom(p1,j1) binom(p2,j2)
///  S_{a1,0}^{a2,0,p2-j2}(p1-j1,mu) S_{a1,b1}^{a2,b2,j2}(j1,k)`.
pub fn vandermonde_sides(bp: &BivariateParams, k: i64, mu: i64) -> (Scalar, Scalar) {
    let lhs = gsn2(bp, k + mu).mul(&Scalar::Rat(binom_int(k + mu, k)));
    let mut rhs = Scalar::zero();
    for j2 in 0..=bp.p2 {
        for j1 in 0..=bp.p1 {
            let zero_b = BivariateParams::new(
                bp.a1.clone(),
                Scalar::zero(),
                bp.a2.clone(),
                Scalar::zero(),
                bp.p1 - j1,
                bp.p2 - j2,
            );
            let low = bp.with_exponents(j1, j2);
            let c = binom_int(bp.p1 as i64, j1 as i64) * binom_int(bp.p2 as i64, j2 as i64);
            rhs = rhs.add(&gsn2(&zero_b, mu).mul(&gsn2(&low, k)).mul(&Scalar::Rat(c)));
        }
    }
    (lhs, rhs)
}

/// LHS and the three displayed standard-Stirling forms of
/// `S_{1,1}^{1,0,p2}(p1,k)`.
pub fn eq_317_forms(p1: usize, p2: usize, k: i64) -> (Rational, [Rational; 3]) {
    let lhs = gsn2(&BivariateParams::ints(1, 1, 1, 0, p1, p2), k)
        .as_rational()
        .expect("numeric");
    let mut f1 = Rational::zero();
    for j1 in 0..=p1 {
        f1 += &(binom_int(p1 as i64, j1 as i64) * stirling2(j1 + p2, k));
    }
    let mut f2 = Rational::zero();
    for j2 in 0..=p2 {
        let w = binom_int(p2 as i64, j2 as i64) * stirling2(p1 + j2 + 1, k + 1);
        if (p2 - j2) % 2 == 0 {
            f2 += &w;
        } else {
            f2 -= &w;
        }
    }
    let mut f3 = Rational::zero();
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            let sign = if (p1 - j1) % 2 == 0 { 1 } else { -1 };
            let c = binom_int(p1 as i64, j1 as i64)
                * binom_int(p2 as i64, j2 as i64)
                * Rational::from_int(sign)
                * Rational::from_int(-2).pow(p2 - j2);
            f3 += &(c * (stirling2(j1 + j2 + 2, k + 2) - stirling2(j1 + j2 + 1, k + 2)));
        }
    }
    (lhs, [f1, f2, f3])
}

/// LHS and the three displayed standard-Stirling forms of
/// `S_{1,2}^{1,0,p2}(p1,k)`.
pub fn eq_318_forms(p1: usize, p2: usize, k: i64) -> (Rational, [Rational; 3]) {
    let lhs = gsn2(&BivariateParams::ints(1, 2, 1, 0, p1, p2), k)
        .as_rational()
        .expect("numeric");
    let mut f1 = Rational::zero();
    for j1 in 0..=p1 {
        f1 += &(binom_int(p1 as i64, j1 as i64)
            * Rational::from_int(2).pow(p1 - j1)
            * stirling2(j1 + p2, k));
    }
    let mut f2 = Rational::zero();
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            let w = binom_int(p1 as i64, j1 as i64)
                * binom_int(p2 as i64, j2 as i64)
                * stirling2(j1 + j2 + 1, k + 1);
            if (p2 - j2) % 2 == 0 {
                f2 += &w;
            } else {
                f2 -= &w;
            }
        }
    }
    let mut f3 = Rational::zero();
    for j2 in 0..=p2 {
        let c = binom_int(p2 as i64, j2 as i64) * Rational::from_int(-2).pow(p2 - j2);
        f3 += &(c * (stirling2(p1 + j2 + 2, k + 2) - stirling2(p1 + j2 + 1, k + 2)));
    }
    (lhs, [f1, f2, f3])
}

/// LHS and the three displayed standard-Stirling forms of
/// `S_{1,1}^{1,2,p2}(p1,k)`.
pub fn eq_319_forms(p1: usize, p2: usize, k: i64) -> (Rational, [Rational; 3]) {
    let lhs = gsn2(&BivariateParams::ints(1, 1, 1, 2, p1, p2), k)
        .as_rational()
        .expect("numeric");
    let mut f1 = Rational::zero();
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            f1 += &(binom_int(p1 as i64, j1 as i64)
                * binom_int(p2 as i64, j2 as i64)
                * Rational::from_int(2).pow(p2 - j2)
                * stirling2(j1 + j2, k));
        }
    }
    let mut f2 = Rational::zero();
    for j2 in 0..=p2 {
        f2 += &(binom_int(p2 as i64, j2 as i64) * stirling2(p1 + j2 + 1, k + 1));
    }
    let mut f3 = Rational::zero();
    for j1 in 0..=p1 {
        let sign = if (p1 - j1) % 2 == 0 { 1 } else { -1 };
        let c = binom_int(p1 as i64, j1 as i64) * Rational::from_int(sign);
        f3 += &(c * (stirling2(j1 + p2 + 2, k + 2) - stirling2(j1 + p2 + 1, k + 2)));
    }
    (lhs, [f1, f2, f3])
}

/// The three cross-family relations between the `(1,1,1,0)`, `(1,2,1,0)`
/// and `(1,1,1,2)` families; each entry is `(lhs, rhs)`.
pub fn eq_320_relations(p1: usize, p2: usize, k: i64) -> [(Rational, Rational); 3] {
    let s110 = |j1: usize, j2: usize, k: i64| -> Rational {
        gsn2(&BivariateParams::ints(1, 1, 1, 0, j1, j2), k)
            .as_rational()
            .expect("numeric")
    };
    let s120 = |j1: usize, j2: usize, k: i64| -> Rational {
        gsn2(&BivariateParams::ints(1, 2, 1, 0, j1, j2), k)
            .as_rational()
            .expect("numeric")
    };
    let s112 = |j1: usize, j2: usize, k: i64| -> Rational {
        gsn2(&BivariateParams::ints(1, 1, 1, 2, j1, j2), k)
            .as_rational()
            .expect("numeric")
    };

    let lhs1 = s110(p1, p2, k);
    let mut rhs1 = Rational::zero();
    for j1 in 0..=p1 {
        let sign = if (p1 - j1) % 2 == 0 { 1 } else { -1 };
        rhs1 += &(binom_int(p1 as i64, j1 as i64) * Rational::from_int(sign) * s120(j1, p2, k));
    }

    let lhs2 = s110(p1, p2, k);
    let mut rhs2 = Rational::zero();
    for j2 in 0..=p2 {
        rhs2 += &(binom_int(p2 as i64, j2 as i64)
            * Rational::from_int(-2).pow(p2 - j2)
            * s112(p1, j2, k));
    }

    let lhs3 = s120(p1, p2, k);
    let mut rhs3 = Rational::zero();
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            rhs3 += &(binom_int(p1 as i64, j1 as i64)
                * binom_int(p2 as i64, j2 as i64)
                * Rational::from_int(-2).pow(p2 - j2)
                * s112(j1, j2, k));
        }
    }
    [(lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3)]
}

/// The two relation chains of the standard-Stirling rewriting; returns
/// three `(lhs, rhs)` pairs that must each agree.
pub fn eq_321_relations(p: usize, q: usize, k: i64) -> [(Rational, Rational); 3] {
    let (pi, qi) = (p as i64, q as i64);
    let mut a0 = Rational::zero();
    for j in 0..=pi {
        a0 += &(binom_int(pi, j) * stirling2_i(qi + j, k));
    }
    let mut a1 = Rational::zero();
    for l in 0..=pi {
        for j in 0..=l {
            let sign = if (pi - l) % 2 == 0 { 1 } else { -1 };
            a1 += &(binom_int(pi, l)
                * binom_int(l, j)
                * Rational::from_int(sign)
                * Rational::from_int(2).pow((l - j) as usize)
                * stirling2_i(qi + j, k));
        }
    }
    let mut a2 = Rational::zero();
    for l in 0..=qi {
        for j in 0..=l {
            a2 += &(binom_int(qi, l)
                * binom_int(l, j)
                * Rational::from_int(-2).pow((qi - l) as usize)
                * stirling2_i(pi + j + 1, k + 1));
        }
    }
    let mut b0 = Rational::zero();
    for j in 0..=pi {
        b0 += &(binom_int(pi, j)
            * Rational::from_int(2).pow((pi - j) as usize)
            * stirling2_i(qi + j, k));
    }
    let mut b1 = Rational::zero();
    for j in 0..=pi {
        for i in 0..=qi {
            for l in 0..=i {
                b1 += &(binom_int(pi, j)
                    * binom_int(qi, i)
                    * binom_int(i, l)
                    * Rational::from_int(-2).pow((qi - i) as usize)
                    * stirling2_i(j + l + 1, k + 1));
            }
        }
    }
    [(a0.clone(), a1), (a0, a2), (b0, b1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsn::gsn_explicit;

    fn int_row(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn row(bp: &BivariateParams) -> Vec<Scalar> {
        (0..=bp.degree() as i64).map(|k| gsn2(bp, k)).collect()
    }

    #[test]
    fn known_triangle_rows_explicit() {
        assert_eq!(row(&BivariateParams::ints(1, 1, 1, 0, 1, 2)), int_row(&[0, 2, 4, 1]));
        assert_eq!(row(&BivariateParams::ints(1, 2, 1, 1, 1, 1)), int_row(&[2, 4, 1]));
    }

    #[test]
    fn small_symbolic_values() {
        let bp = BivariateParams::symbolic(1, 0);
        assert_eq!(gsn2(&bp, 1), Scalar::var("a1"));
        assert_eq!(gsn2(&bp, 0), Scalar::var("b1"));
        // first two values and last value of a symbolic row
        let bp2 = BivariateParams::symbolic(2, 1);
        assert_eq!(
            gsn2(&bp2, 0),
            Scalar::var("b1").pow(2).mul(&Scalar::var("b2"))
        );
        assert_eq!(
            gsn2(&bp2, 3),
            Scalar::var("a1").pow(2).mul(&Scalar::var("a2"))
        );
    }

    #[test]
    fn recurrence_matches_explicit() {
        let bp = BivariateParams::ints(1, 1, 1, 0, 2, 1);
        let r: Vec<Scalar> = (0..=3)
            .map(|k| gsn2_recurrence(&bp, k).unwrap())
            .collect();
        assert_eq!(r, int_row(&[0, 4, 5, 1]));

        let fam = BivariateParams::ints(1, 2, 1, 1, 2, 2);
        let r4: Vec<Scalar> = (0..=4)
            .map(|k| gsn2_recurrence(&fam, k).unwrap())
            .collect();
        assert_eq!(r4, int_row(&[4, 32, 38, 12, 1]));

        // standard case matches the classical triangle
        for p in 1..=10usize {
            let std = BivariateParams::ints(1, 0, 1, 0, p, 0);
            for k in 0..=p as i64 {
                assert_eq!(
                    gsn2_recurrence(&std, k).unwrap(),
                    Scalar::Rat(stirling2(p, k))
                );
            }
        }

        assert!(gsn2_recurrence(&BivariateParams::ints(1, 0, 1, 0, 0, 2), 1).is_err());
    }

    #[test]
    fn symmetry_and_merge() {
        let bp = BivariateParams::ints(2, -1, 1, 3, 2, 1);
        for k in -1..=4i64 {
            assert_eq!(gsn2(&bp, k), gsn2(&bp.swapped(), k));
        }
        // merged families: S_{a,b}^{a,b,p2}(p1,k) = S_{a,b}(p1+p2,k)
        let merged = BivariateParams::ints(2, -1, 2, -1, 2, 2);
        let single = Scalar::from_int(2);
        let single_b = Scalar::from_int(-1);
        for k in 0..=4i64 {
            assert_eq!(gsn2(&merged, k), gsn_single(&single, &single_b, 4, k));
        }
    }

    #[test]
    fn agrees_with_general_family() {
        let bp = BivariateParams::ints(1, 2, 1, 1, 2, 2);
        let ps = bp.to_param_spec();
        for k in 0..=bp.degree() as i64 {
            assert_eq!(gsn2(&bp, k), gsn_explicit(&ps, k));
        }
    }

    #[test]
    fn shift_relations_to_standard() {
        // S_{1,1}(p,k) = S(p+1,k+1); S_{1,2}(p,k) = S(p+2,k+2) - S(p+1,k+2)
        let one = Scalar::one();
        for p in 0..=12usize {
            for k in 0..=p as i64 {
                assert_eq!(
                    gsn_single(&one, &Scalar::from_int(1), p, k),
                    Scalar::Rat(stirling2(p + 1, k + 1))
                );
                assert_eq!(
                    gsn_single(&one, &Scalar::from_int(2), p, k),
                    Scalar::Rat(stirling2(p + 2, k + 2) - stirling2(p + 1, k + 2))
                );
            }
        }
    }

    #[test]
    fn transform_reduces_and_inverts() {
        let bp = BivariateParams::ints(1, 1, 1, 0, 2, 2);
        // identity target: bp itself
        let same = TargetParams {
            c1: bp.a1.clone(),
            d1: bp.b1.clone(),
            c2: bp.a2.clone(),
            d2: bp.b2.clone(),
        };
        for k in 0..=4i64 {
            assert_eq!(transform_params(&bp, &same, k).unwrap(), gsn2(&bp, k));
            assert_eq!(
                transform_params(&bp, &TargetParams::standard(), k).unwrap(),
                gsn2(&bp, k)
            );
        }
        // non-invertible target rejected
        let bad = TargetParams::ints(0, 0, 1, 0);
        assert!(transform_params(&bp, &bad, 0).is_err());
    }

    #[test]
    fn inverse_standard_expansion() {
        // S(p,k) = c^{-p} sum_j binom(p,j) (-d)^{p-j} S_{c,d}(j,k)
        let c = Rational::from_int(2);
        let d = Scalar::from_int(3);
        for p in 0..=6usize {
            for k in 0..=p as i64 {
                let mut sum = Scalar::zero();
                for j in 0..=p {
                    let w = binom_int(p as i64, j as i64) * Rational::from_int(-3).pow(p - j);
                    sum = sum.add(
                        &gsn_single(&Scalar::from_int(2), &d, j, k).mul(&Scalar::Rat(w)),
                    );
                }
                sum = sum.div_rat(&c.pow(p));
                assert_eq!(sum, Scalar::Rat(stirling2(p, k)), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn shift_b_matches_definition() {
        let bp = BivariateParams::ints(1, 1, 1, 0, 1, 1);
        // row [0,2,1]; shifting b gives S_{1,2}^{1,1,1}(1,.) = [2,4,1]
        let shifted: Vec<Scalar> = (0..=2).map(|k| shift_b(&bp, k)).collect();
        assert_eq!(shifted, int_row(&[2, 4, 1]));
        // symbolic check at k = 0
        let sym = BivariateParams::symbolic(1, 0);
        assert_eq!(
            shift_b(&sym, 0),
            Scalar::var("a1").add(&Scalar::var("b1"))
        );
    }

    #[test]
    fn m_shift_all_routes_agree() {
        let bp = BivariateParams::ints(1, 3, 2, -1, 2, 1);
        for k in 0..=bp.degree() as i64 {
            let want = gsn2(&bp, k);
            let want_scaled = want.mul(&Scalar::Rat(factorial(k as usize)));
            for m in 0..=3usize {
                assert_eq!(m_shift_representation(&bp, m, k), want_scaled, "m={m} k={k}");
                assert_eq!(
                    m_shift_with_target(&bp, &TargetParams::standard(), m, k).unwrap(),
                    want_scaled
                );
            }
            for m in 1..=3usize {
                assert_eq!(m_shift_via_stirling1(&bp, m, k), want, "m={m} k={k}");
            }
        }
        // general target
        let target = TargetParams::ints(2, 1, 1, -1);
        for k in 0..=3i64 {
            let want = gsn2(&bp, k).mul(&Scalar::Rat(factorial(k as usize)));
            for m in 0..=2usize {
                assert_eq!(m_shift_with_target(&bp, &target, m, k).unwrap(), want);
            }
        }
    }

    #[test]
    fn integer_b_rows() {
        // S_{1,3}(p,k) = S(p+3,k+3) - 3S(p+2,k+3) + 2S(p+1,k+3)
        for p in 0..=8usize {
            for k in 0..=p as i64 {
                let direct = gsn_single(&Scalar::one(), &Scalar::from_int(3), p, k);
                let via = integer_b_in_stirling(3, p, k).unwrap();
                assert_eq!(direct, Scalar::Rat(via.clone()));
                let expanded = stirling2(p + 3, k + 3)
                    - Rational::from_int(3) * stirling2(p + 2, k + 3)
                    + Rational::from_int(2) * stirling2(p + 1, k + 3);
                assert_eq!(via, expanded);
            }
        }
        assert!(integer_b_in_stirling(0, 2, 1).is_err());
        assert!(integer_b_in_stirling(-2, 2, 1).is_err());
    }

    #[test]
    fn lemma3_small_cases() {
        // m = 1: both sides k! S(j+1,k+1)
        for j in 0..=6usize {
            for k in 0..=j {
                let (l, r) = lemma3_sides(j, k, 1);
                assert_eq!(l, r);
                assert_eq!(l, factorial(k) * stirling2(j + 1, k as i64 + 1));
            }
        }
        let (l, r) = lemma3_sides(4, 2, 3);
        assert_eq!(l, r);
        let (l, r) = lemma3_sides(5, 5, 2);
        assert_eq!(l, r);
    }

    #[test]
    fn stirling_family_recurrences() {
        for p1 in 0..=6usize {
            for p2 in 1..=6usize {
                for l in 0..=(p1 + p2) as i64 {
                    assert_eq!(
                        stirling_recurrence_family(p1, p2, l),
                        stirling2(p1 + p2, l),
                        "p1={p1} p2={p2} l={l}"
                    );
                }
            }
        }
        // displayed low-order consequences
        for p2 in 1..=8usize {
            let lhs = stirling2(p2 + 1, p2 as i64);
            let rhs = stirling1_unsigned(p2, p2 as i64 - 1) + Rational::from_int(p2 as i64);
            assert_eq!(lhs, rhs);
            let lhs2 = stirling2(p2 + 2, p2 as i64);
            let s1 = stirling1_unsigned(p2, p2 as i64 - 1);
            let rhs2 = s1.pow(2) + Rational::from_int(p2 as i64) * s1
                - stirling1_unsigned(p2, p2 as i64 - 2)
                + Rational::from_int(p2 as i64).pow(2);
            assert_eq!(lhs2, rhs2);
        }
        // iterated standard recurrences
        for p in 0..=8usize {
            for l in 0..=(p + 3) as i64 {
                assert_eq!(stirling_iterated2(p, l), stirling2(p + 2, l));
                assert_eq!(stirling_iterated3(p, l), stirling2(p + 3, l));
            }
        }
    }

    #[test]
    fn convolutions() {
        let (a1, b1) = (Scalar::from_int(1), Scalar::from_int(2));
        let (a2, b2) = (Scalar::from_int(1), Scalar::from_int(1));
        // factor-splitting form
        for (p2, q1, q2) in [(1usize, 1usize, 1usize), (2, 1, 0), (0, 2, 1), (2, 2, 2)] {
            let lhs_params =
                BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p2, q1 + q2);
            for l in 0..=lhs_params.degree() as i64 {
                assert_eq!(
                    gsn2(&lhs_params, l),
                    lemma4_rhs(&a1, &b1, &a2, &b2, p2, q1, q2, l)
                );
            }
        }
        // full form
        for (p1, p2, q1, q2) in [(1usize, 1usize, 1usize, 1usize), (2, 1, 0, 2), (2, 0, 1, 1)] {
            let lhs_params = BivariateParams::new(
                a1.clone(),
                b1.clone(),
                a2.clone(),
                b2.clone(),
                p1 + p2,
                q1 + q2,
            );
            for l in 0..=lhs_params.degree() as i64 {
                assert_eq!(
                    gsn2(&lhs_params, l),
                    prop2_rhs(&a1, &b1, &a2, &b2, p1, p2, q1, q2, l)
                );
            }
        }
        // triple form
        let (p, q) = ([1usize, 1, 1], [1usize, 0, 1]);
        let lhs_params = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), 3, 2);
        for l in 0..=5i64 {
            assert_eq!(
                gsn2(&lhs_params, l),
                triple_rhs(&a1, &b1, &a2, &b2, p, q, l)
            );
        }
    }

    #[test]
    fn standard_convolution_and_truncation() {
        for p1 in 0..=6usize {
            for p2 in 0..=6usize {
                for l in 0..=(p1 + p2) as i64 {
                    assert_eq!(standard_conv_rhs(p1, p2, l), stirling2(p1 + p2, l));
                }
            }
        }
        for p1 in 0..=5usize {
            for p2 in 1..=5usize {
                for l in 0..=(p1 + p2) as i64 {
                    let (lh, rh) = identity_3281_sides(p1, p2, l);
                    assert_eq!(lh, rh, "p1={p1} p2={p2} l={l}");
                }
            }
        }
    }

    #[test]
    fn conv_via_shift_parameter() {
        for (a, b) in [(1i64, 0i64), (1, 1), (2, -1)] {
            let (sa, sb) = (Scalar::from_int(a), Scalar::from_int(b));
            for n in 1..=3usize {
                for p1 in 0..=4usize {
                    for p2 in 0..=4usize {
                        for l in 0..=(p1 + p2) as i64 {
                            assert_eq!(
                                conv_via_mshift(&sa, &sb, p1, p2, n, l),
                                gsn_single(&sa, &sb, p1 + p2, l),
                                "a={a} b={b} n={n} p1={p1} p2={p2} l={l}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corollary3_family() {
        for (p1, p2, q1, q2) in [(1usize, 1usize, 1usize, 1usize), (2, 1, 1, 0), (1, 2, 0, 2)] {
            let top = (p1 + p2 + q1 + q2) as i64;
            for l in 0..=top {
                for t in 0..=top {
                    let (lh, rh) = cor3_sides(p1, p2, q1, q2, l, t);
                    assert_eq!(lh, rh, "p=({p1},{p2},{q1},{q2}) l={l} t={t}");
                }
            }
        }
        // claim 3.36 numeric and symbolic
        for q in 0..=3usize {
            for p in 0..=4usize {
                for k in 0..=(p + q) as i64 {
                    let (lh, rh) =
                        claim_336_sides(&Scalar::one(), &Scalar::one(), q, p, k);
                    assert_eq!(lh, rh);
                }
            }
        }
        let (lh, rh) = claim_336_sides(&Scalar::var("a"), &Scalar::var("b"), 2, 2, 2);
        assert_eq!(lh, rh);
        // 3.39 / 3.401 / 3.41
        for p1 in 0..=3usize {
            for p2 in 0..=3usize {
                for l in 0..=(p1 + p2) as i64 {
                    for t in 0..=(p1 + p2) as i64 {
                        let (lh, rh) = eq_339_sides(p1, p2, l, t);
                        assert_eq!(lh, rh);
                    }
                }
            }
        }
        let (lh, rh) = eq_3401_sides(2, 1, 1, 2, 3);
        assert_eq!(lh, rh);
        for p1 in 0..=4usize {
            for p2 in 0..=4usize {
                for q1 in 0..=4usize {
                    for q2 in 0..=4usize {
                        let (lh, rh) = eq_341_sides(p1, p2, q1, q2);
                        assert_eq!(lh, rh, "{p1},{p2},{q1},{q2}");
                    }
                }
            }
        }
    }

    #[test]
    fn power_sums() {
        let bp = BivariateParams::ints(1, 1, 2, -1, 2, 1);
        for m in 1..=6usize {
            for k in 0..m as i64 {
                let (lh, rh) = power_sum_sides(&bp, m, k).unwrap();
                assert_eq!(lh, rh, "m={m} k={k}");
            }
        }
        // base case m = 1, k = 0: single term equals the weight at 1
        let (lh, rh) = power_sum_sides(&bp, 1, 0).unwrap();
        assert_eq!(lh, bp.weight(1));
        assert_eq!(rh, bp.weight(1));
        assert!(power_sum_sides(&bp, 1, 1).is_err());
        assert!(power_sum_sides(&bp, 0, 0).is_err());
        // displayed examples
        for m in 1..=12i64 {
            for k in 0..m {
                let (l1, r1) = power_sum_example1(m, k);
                assert_eq!(l1, r1);
                let (l2, r2) = power_sum_example2(m, k);
                assert_eq!(l2, r2);
            }
        }
    }

    #[test]
    fn vandermonde_style_convolution() {
        let bp = BivariateParams::ints(1, 2, 1, 1, 2, 1);
        for k in 0..=3i64 {
            for mu in 0..=3i64 {
                let (lh, rh) = vandermonde_sides(&bp, k, mu);
                assert_eq!(lh, rh, "k={k} mu={mu}");
            }
        }
        // standard case: classical convolution for binomial-weighted Stirling
        let std = BivariateParams::ints(1, 0, 1, 0, 5, 0);
        let (lh, rh) = vandermonde_sides(&std, 2, 2);
        assert_eq!(lh, rh);
        // symbolic difference vanishes
        let sym = BivariateParams::symbolic(2, 1);
        let (lh, rh) = vandermonde_sides(&sym, 1, 1);
        assert_eq!(lh, rh);
    }

    #[test]
    fn displayed_family_forms() {
        for p1 in 0..=5usize {
            for p2 in 0..=5usize {
                for k in 0..=(p1 + p2 + 1) as i64 {
                    let (lhs, forms) = eq_317_forms(p1, p2, k);
                    for f in &forms {
                        assert_eq!(lhs, *f, "3.17 p1={p1} p2={p2} k={k}");
                    }
                    let (lhs, forms) = eq_318_forms(p1, p2, k);
                    for f in &forms {
                        assert_eq!(lhs, *f, "3.18 p1={p1} p2={p2} k={k}");
                    }
                    let (lhs, forms) = eq_319_forms(p1, p2, k);
                    for f in &forms {
                        assert_eq!(lhs, *f, "3.19 p1={p1} p2={p2} k={k}");
                    }
                    for (l, r) in eq_320_relations(p1, p2, k) {
                        assert_eq!(l, r, "3.20 p1={p1} p2={p2} k={k}");
                    }
                    for (l, r) in eq_321_relations(p1, p2, k) {
                        assert_eq!(l, r, "3.21 p={p1} q={p2} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn cross_triangle_observation() {
        // S_{1,2}^{1,1,1}(p,k) = S_{1,1}^{1,0,2}(p,k+1)
        for p in 0..=8usize {
            let left = BivariateParams::ints(1, 2, 1, 1, p, 1);
            let right = BivariateParams::ints(1, 1, 1, 0, p, 2);
            for k in 0..=left.degree() as i64 {
                assert_eq!(gsn2(&left, k), gsn2(&right, k + 1), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn triangle_tables() {
        let one = Scalar::one();
        let zero = Scalar::zero();
        let t1 = triangle(&one, &one, &one, &zero, 1, 2);
        assert_eq!(t1.rows[0], int_row(&[0, 1]));
        assert_eq!(t1.rows[1], int_row(&[0, 2, 1]));
        assert_eq!(t1.rows[2], int_row(&[0, 4, 5, 1]));

        let t2 = triangle(&one, &one, &one, &zero, 2, 2);
        assert_eq!(t2.rows[0], int_row(&[0, 1, 1]));
        assert_eq!(t2.rows[1], int_row(&[0, 2, 4, 1]));
        assert_eq!(t2.rows[2], int_row(&[0, 4, 14, 8, 1]));

        let two = Scalar::from_int(2);
        let t4 = triangle(&one, &two, &one, &one, 2, 2);
        assert_eq!(t4.rows[0], int_row(&[1, 3, 1]));
        assert_eq!(t4.rows[1], int_row(&[2, 10, 7, 1]));
        assert_eq!(t4.rows[2], int_row(&[4, 32, 38, 12, 1]));
    }
}
