//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`MultiPoly`] is a map from exponent vectors to [`Rational`]
//! coefficients over an ordered registry of named indeterminates. Terms with
//! zero coefficient are never stored, so the zero polynomial has an empty
//! term map. Addition, multiplication, exact powers and substitution are
//! closed and exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;
use crate::scalar::Scalar;

/// Sparse polynomial over named indeterminates.
///
/// The registry (`vars`) is ordered by first appearance; operations on two
/// polynomials first align both onto the union registry. Display uses a
/// graded ordering (total degree descending, then exponents lexicographically
/// descending in registry order) so serialization is reproducible.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    /// The indeterminate `name` as a polynomial.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ordered indeterminate registry.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// `Some(c)` when no indeterminate occurs with a positive exponent.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> usize {
        match self.vars.iter().position(|v| v == var) {
            None => 0,
            Some(i) => self
                .terms
                .keys()
                .map(|e| e.get(i).copied().unwrap_or(0) as usize)
                .max()
                .unwrap_or(0),
        }
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u32>, Rational>, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&exps) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    terms.remove(&exps);
                }
            }
            None => {
                terms.insert(exps, c);
            }
        }
    }

    /// Union registry: `self`'s order, then unseen vars of `other` appended.
    fn unified_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    /// Re-key all exponent vectors onto `new_vars` (a superset of `self.vars`).
    fn reindex(&self, new_vars: &[String]) -> MultiPoly {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let mut e = vec![0u32; new_vars.len()];
            for (i, &x) in exps.iter().enumerate() {
                e[map[i]] = x;
            }
            terms.insert(e, c.clone());
        }
        MultiPoly {
            vars: new_vars.to_vec(),
            terms,
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let vars = self.unified_vars(other);
        let a = self.reindex(&vars);
        let b = other.reindex(&vars);
        let mut terms = a.terms;
        for (exps, c) in b.terms {
            Self::insert_term(&mut terms, exps, c);
        }
        MultiPoly { vars, terms }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let vars = self.unified_vars(other);
        let a = self.reindex(&vars);
        let b = other.reindex(&vars);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, exps, ca * cb);
            }
        }
        MultiPoly { vars, terms }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    /// Exact non-negative power by repeated multiplication.
    pub fn pow(&self, e: usize) -> MultiPoly {
        let mut acc = MultiPoly::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate one indeterminate at a scalar; other indeterminates remain.
    ///
    /// The result collapses to a `Scalar::Rat` when no indeterminate
    /// survives with a positive exponent.
    pub fn substitute(&self, var: &str, value: &Scalar) -> Scalar {
        let idx = match self.vars.iter().position(|v| v == var) {
            None => return Scalar::Poly(self.clone()).normalized(),
            Some(i) => i,
        };
        let rest_vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let mut acc = Scalar::Rat(Rational::zero());
        for (exps, c) in &self.terms {
            let vpow = exps.get(idx).copied().unwrap_or(0) as usize;
            let rest: Vec<u32> = exps
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, &x)| x)
                .collect();
            let mut mono_terms = BTreeMap::new();
            mono_terms.insert(rest, c.clone());
            let mono = MultiPoly {
                vars: rest_vars.clone(),
                terms: mono_terms,
            };
            let term = Scalar::Poly(mono).mul(&value.pow(vpow));
            acc = acc.add(&term);
        }
        acc.normalized()
    }

    /// Dense coefficient vector of `self` viewed as univariate in `var`;
    /// entry `j` is the (possibly polynomial) coefficient of `var^j`.
    pub fn coeffs_in(&self, var: &str) -> Vec<Scalar> {
        let deg = self.degree_in(var);
        let idx = self.vars.iter().position(|v| v == var);
        let rest_vars: Vec<String> = self
            .vars
            .iter()
            .filter(|v| v.as_str() != var)
            .cloned()
            .collect();
        let mut buckets: Vec<MultiPoly> = (0..=deg)
            .map(|_| MultiPoly {
                vars: rest_vars.clone(),
                terms: BTreeMap::new(),
            })
            .collect();
        for (exps, c) in &self.terms {
            let (vpow, rest): (usize, Vec<u32>) = match idx {
                None => (0, exps.clone()),
                Some(i) => (
                    exps.get(i).copied().unwrap_or(0) as usize,
                    exps.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, &x)| x)
                        .collect(),
                ),
            };
            Self::insert_term(&mut buckets[vpow].terms, rest, c.clone());
        }
        buckets
            .into_iter()
            .map(|p| Scalar::Poly(p).normalized())
            .collect()
    }

    /// Canonical form for equality: unused vars dropped, registry sorted by name.
    fn normalized_parts(&self) -> (Vec<String>, BTreeMap<Vec<u32>, Rational>) {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e.get(i).copied().unwrap_or(0) > 0))
            .collect();
        let mut vars: Vec<(String, usize)> = used
            .iter()
            .map(|&i| (self.vars[i].clone(), i))
            .collect();
        vars.sort();
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let e: Vec<u32> = vars
                .iter()
                .map(|(_, i)| exps.get(*i).copied().unwrap_or(0))
                .collect();
            terms.insert(e, c.clone());
        }
        (vars.into_iter().map(|(v, _)| v).collect(), terms)
    }

    /// Drop registry entries that no term uses.
    pub(crate) fn trimmed(&self) -> MultiPoly {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e.get(i).copied().unwrap_or(0) > 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Vec<String> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let e: Vec<u32> = used.iter().map(|&i| exps.get(i).copied().unwrap_or(0)).collect();
            terms.insert(e, c.clone());
        }
        MultiPoly { vars, terms }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.normalized_parts() == other.normalized_parts()
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // total degree descending, then exponents descending in registry order
        let mut entries: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        entries.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        for (pos, (exps, coeff)) in entries.iter().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            let (sign, mag) = if coeff.is_negative() {
                ("-", -(*coeff).clone())
            } else {
                ("+", (*coeff).clone())
            };
            if pos == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> MultiPoly {
        MultiPoly::var("n")
    }

    #[test]
    fn zero_has_empty_term_map() {
        assert!(MultiPoly::zero().is_zero());
        let p = n().sub(&n());
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_canonical_order() {
        // 2*a1^2*b2 - 1/3
        let a1 = MultiPoly::var("a1");
        let b2 = MultiPoly::var("b2");
        let p = a1
            .pow(2)
            .mul(&b2)
            .scale(&Rational::from_int(2))
            .add(&MultiPoly::constant(Rational::new(-1, 3)));
        assert_eq!(p.to_string(), "2*a1^2*b2 - 1/3");
    }

    #[test]
    fn registry_union_keeps_first_appearance_order() {
        let p = MultiPoly::var("a1").mul(&MultiPoly::var("b1"));
        let q = MultiPoly::var("b1").mul(&MultiPoly::var("z"));
        let s = p.add(&q);
        assert_eq!(s.vars(), &["a1".to_string(), "b1".into(), "z".into()]);
    }

    #[test]
    fn substitution_collapses_to_rational() {
        // (n^2 + n) at n = 3 -> 12
        let p = n().pow(2).add(&n());
        let v = p.substitute("n", &Scalar::from_int(3));
        assert_eq!(v, Scalar::from_int(12));
    }

    #[test]
    fn substitution_keeps_other_vars() {
        // a*n + b at n = 2 -> 2a + b
        let p = MultiPoly::var("a").mul(&n()).add(&MultiPoly::var("b"));
        let v = p.substitute("n", &Scalar::from_int(2));
        let expect = MultiPoly::var("a")
            .scale(&Rational::from_int(2))
            .add(&MultiPoly::var("b"));
        assert_eq!(v, Scalar::Poly(expect));
    }

    #[test]
    fn equality_ignores_registry_order() {
        let p = MultiPoly::var("x").add(&MultiPoly::var("y"));
        let q = MultiPoly::var("y").add(&MultiPoly::var("x"));
        assert_eq!(p, q);
    }

    #[test]
    fn coeffs_in_univariate_view() {
        // z^3 + 2z: coefficients [0, 2, 0, 1]
        let z = MultiPoly::var("z");
        let p = z.pow(3).add(&z.scale(&Rational::from_int(2)));
        let cs = p.coeffs_in("z");
        let want: Vec<i64> = vec![0, 2, 0, 1];
        assert_eq!(cs.len(), 4);
        for (c, w) in cs.iter().zip(want) {
            assert_eq!(*c, Scalar::from_int(w));
        }
    }
}
