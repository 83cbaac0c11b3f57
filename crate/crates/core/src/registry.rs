//! Declarative catalog of the verifiable identities: each entry carries an
//! id, a parameter schema, the modes it supports, and a runner that
//! evaluates both sides of the identity over a deterministic grid and
//! records any disagreement.
//!
//! Reports serialize to JSON with stable field order; wall time is kept on
//! the struct for display but excluded from serialization so identical
//! runs produce byte-identical reports.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::basis::shift_to_zm1;
use crate::bivariate::{
    claim_336_sides, conv_via_mshift, cor3_sides, eq_317_forms, eq_318_forms, eq_319_forms,
    eq_320_relations, eq_321_relations, eq_339_sides, eq_3401_sides, eq_341_sides, gsn2,
    gsn2_recurrence, gsn_single, identity_3281_sides, integer_b_in_stirling, lemma3_sides,
    lemma4_rhs, m_shift_representation, m_shift_via_stirling1, m_shift_with_target, merge_rhs,
    power_sum_example1, power_sum_example2, power_sum_sides, prop2_rhs, standard_conv_rhs,
    stirling_iterated2, stirling_iterated3, stirling_recurrence_family, transform_params,
    triple_rhs, vandermonde_sides, BivariateParams, TargetParams,
};
use crate::classic::stirling2;
use crate::error::GsnError;
use crate::grid;
use crate::gsn::{
    gen_row, gen_row_from_gsn, gsn_explicit, gsn_row, gsn_row_from_gen, Factor,
    ParamSpec,
};
use crate::rational::Rational;
use crate::scalar::{binom_int, factorial, Scalar};
use crate::weyl::{recurrence_51_factored, verify_operator_identity};

/// Evaluation mode for an identity run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Numeric,
    Symbolic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Numeric => write!(f, "numeric"),
            Mode::Symbolic => write!(f, "symbolic"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "numeric" => Ok(Mode::Numeric),
            "symbolic" => Ok(Mode::Symbolic),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Grid bounds for a verification run.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Cap on degree-driving ranges in numeric mode.
    pub numeric_degree: usize,
    /// Cap on degree sums in symbolic mode (polynomial sizes grow fast).
    pub symbolic_degree: usize,
    /// When set, each scalar grid gains extra random points drawn
    /// deterministically from this seed.
    pub seed: Option<u64>,
    /// Number of extra random scalar points per grid when seeded.
    pub random_cases: usize,
    /// Restrict the operator/recurrence checks to one `b` value.
    pub scope_b: Option<Rational>,
    /// Restrict the operator/recurrence checks to one binomial order `r`.
    pub scope_r: Option<usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            numeric_degree: 10,
            symbolic_degree: 6,
            seed: None,
            random_cases: 16,
            scope_b: None,
            scope_r: None,
        }
    }
}

/// One failing case: the parameter assignment and both evaluated sides.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub assignment: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of running one identity in one mode.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub identity: String,
    pub mode: String,
    pub grid: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// JSON with the declared field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}

/// Case accumulator handed to identity runners.
pub struct Recorder {
    grid: String,
    cases: u64,
    failures: Vec<Failure>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            grid: String::new(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    /// Describe the grid this run enumerates.
    pub fn describe(&mut self, grid: impl Into<String>) {
        self.grid = grid.into();
    }

    /// Record one two-sided comparison.
    pub fn check(&mut self, lhs: &Scalar, rhs: &Scalar, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if lhs != rhs {
            self.failures.push(Failure {
                assignment: ctx(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    pub fn check_rat(&mut self, lhs: &Rational, rhs: &Rational, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if lhs != rhs {
            self.failures.push(Failure {
                assignment: ctx(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    /// Record a named structural predicate (used by the operator checks).
    pub fn check_flag(&mut self, ok: bool, what: &str, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                assignment: ctx(),
                lhs: format!("{what}: false"),
                rhs: format!("{what}: true"),
            });
        }
    }
}

/// A registered identity: id, description, parameter schema, supported
/// modes, and the two-sided grid runner.
pub struct IdentityCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub arity: &'static str,
    pub modes: &'static [Mode],
    run: fn(&Bounds, Mode, &mut Recorder),
}

impl IdentityCheck {
    pub fn supports(&self, mode: Mode) -> bool {
        self.modes.contains(&mode)
    }
}

const NUMERIC_ONLY: &[Mode] = &[Mode::Numeric];
const BOTH_MODES: &[Mode] = &[Mode::Numeric, Mode::Symbolic];

fn quads(bounds: &Bounds, mode: Mode) -> Vec<(Scalar, Scalar, Scalar, Scalar)> {
    match mode {
        Mode::Symbolic => vec![(
            Scalar::var("a1"),
            Scalar::var("b1"),
            Scalar::var("a2"),
            Scalar::var("b2"),
        )],
        Mode::Numeric => {
            let mut out = grid::scalar_quads();
            if let Some(seed) = bounds.seed {
                out.extend(grid::random_quads(seed, bounds.random_cases));
            }
            out
        }
    }
}

fn pairs(bounds: &Bounds, mode: Mode) -> Vec<(Scalar, Scalar)> {
    match mode {
        Mode::Symbolic => vec![(Scalar::var("a1"), Scalar::var("b1"))],
        Mode::Numeric => {
            let mut out = grid::scalar_pairs();
            if let Some(seed) = bounds.seed {
                out.extend(grid::random_pairs(seed, bounds.random_cases));
            }
            out
        }
    }
}

fn param_specs(bounds: &Bounds, mode: Mode) -> Vec<ParamSpec> {
    match mode {
        Mode::Symbolic => {
            // indeterminate parameters over a few exponent shapes
            let shapes: &[(usize, usize, &[(usize, usize)])] = &[
                (1, 2, &[(1, 1)]),
                (1, 1, &[(1, 2)]),
                (2, 1, &[]),
                (1, 3, &[]),
            ];
            shapes
                .iter()
                .filter(|(r, p, fs)| {
                    r * p + fs.iter().map(|(rs, ps)| rs * ps).sum::<usize>()
                        <= bounds.symbolic_degree
                })
                .map(|&(r, p, fs)| {
                    ParamSpec::new(
                        Scalar::var("a1"),
                        Scalar::var("b1"),
                        r,
                        p,
                        fs.iter()
                            .map(|&(rs, ps)| Factor {
                                alpha: Scalar::var("a2"),
                                beta: Scalar::var("b2"),
                                r: rs,
                                p: ps,
                            })
                            .collect(),
                    )
                })
                .collect()
        }
        Mode::Numeric => {
            let mut out = grid::param_grid();
            if let Some(seed) = bounds.seed {
                out.extend(grid::random_param_specs(seed, bounds.random_cases));
            }
            out
        }
    }
}

fn exponent_cap(bounds: &Bounds, mode: Mode, numeric_cap: usize) -> usize {
    match mode {
        Mode::Numeric => numeric_cap.min(bounds.numeric_degree),
        Mode::Symbolic => bounds.symbolic_degree,
    }
}

fn exp_pairs(cap: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p1 in 0..=cap {
        for p2 in 0..=cap - p1 {
            out.push((p1, p2));
        }
    }
    out
}

fn exp_triples(cap: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=cap {
        for b in 0..=cap - a {
            for c in 0..=cap - a - b {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn exp_quads(cap: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=cap {
        for b in 0..=cap - a {
            for c in 0..=cap - a - b {
                for d in 0..=cap - a - b - c {
                    out.push((a, b, c, d));
                }
            }
        }
    }
    out
}

fn fact_scalar(k: i64) -> Scalar {
    Scalar::Rat(factorial(k as usize))
}

// --- individual runners -------------------------------------------------

fn run_eq_2_16(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let specs = param_specs(bounds, mode);
    rec.describe(format!(
        "defining GSN expansion pointwise at n = 0..=deg over {} parameter points",
        specs.len()
    ));
    for ps in &specs {
        let d = ps.degree() as i64;
        let norm = ps.normalizer();
        let row = gsn_row(ps);
        for n in 0..=d {
            let mut sum = Scalar::zero();
            for (k, s) in row.iter().enumerate() {
                sum = sum.add(&s.mul(&Scalar::Rat(factorial(k) * binom_int(n, k as i64))));
            }
            rec.check(&sum.div_rat(&norm), &ps.weight(n), || {
                format!("params={ps:?}, n={n}")
            });
        }
    }
}

fn run_eq_2_19(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let specs = param_specs(bounds, mode);
    rec.describe(format!(
        "GEP in powers of z-1: rebase of GEN row vs k! GSN / norm, {} parameter points",
        specs.len()
    ));
    for ps in &specs {
        let d = ps.degree();
        let gens = gen_row(ps);
        let ascending: Vec<Scalar> = (0..=d).map(|m| gens[d - m].clone()).collect();
        let rebased = shift_to_zm1(&ascending);
        let norm = ps.normalizer();
        let gsns = gsn_row(ps);
        for j in 0..=d {
            let k = d - j;
            let direct = gsns[k].mul(&Scalar::Rat(factorial(k))).div_rat(&norm);
            rec.check(&rebased[j], &direct, || format!("params={ps:?}, power j={j}"));
        }
    }
}

fn run_eq_2_21(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let specs = param_specs(bounds, mode);
    rec.describe(format!(
        "GSN from GEN row equals explicit GSN, {} parameter points, all k",
        specs.len()
    ));
    for ps in &specs {
        let converted = gsn_row_from_gen(ps);
        let explicit = gsn_row(ps);
        for (k, (via, direct)) in converted.iter().zip(&explicit).enumerate() {
            rec.check(via, direct, || format!("params={ps:?}, k={k}"));
        }
    }
}

fn run_eq_2_24(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let specs = param_specs(bounds, mode);
    rec.describe(format!(
        "GEN from GSN row equals explicit GEN, {} parameter points, all i",
        specs.len()
    ));
    for ps in &specs {
        let converted = gen_row_from_gsn(ps);
        let explicit = gen_row(ps);
        for (i, (via, direct)) in converted.iter().zip(&explicit).enumerate() {
            rec.check(via, direct, || format!("params={ps:?}, i={i}"));
        }
    }
}

fn run_eq_3_2a(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let ab = pairs(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "merged families S_(a,b)^(a,b,p2)(p1,k) = S_(a,b)(p1+p2,k), {} pairs, p1+p2 <= {cap}",
        ab.len()
    ));
    for (a, b) in &ab {
        for (p1, p2) in exp_pairs(cap) {
            let merged =
                BivariateParams::new(a.clone(), b.clone(), a.clone(), b.clone(), p1, p2);
            for k in 0..=(p1 + p2) as i64 {
                rec.check(&gsn2(&merged, k), &gsn_single(a, b, p1 + p2, k), || {
                    format!("a={a}, b={b}, p1={p1}, p2={p2}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_2b(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 10);
    rec.describe(format!(
        "S(0,0) = b2^p2, {} quads, p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for p2 in 0..=cap {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), 0, p2);
            rec.check(&gsn2(&bp, 0), &b2.pow(p2), || {
                format!("a1={a1}, b1={b1}, a2={a2}, b2={b2}, p2={p2}")
            });
        }
    }
}

fn run_eq_3_2c(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "family-swap symmetry, {} quads, p1+p2 <= {cap}, all k",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for (p1, p2) in exp_pairs(cap) {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
            let sw = bp.swapped();
            for k in 0..=(p1 + p2) as i64 {
                rec.check(&gsn2(&bp, k), &gsn2(&sw, k), || {
                    format!("a1={a1}, b1={b1}, a2={a2}, b2={b2}, p1={p1}, p2={p2}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_2d(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "S(0,k) = S_(a2,b2)(p2,k), {} quads, p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for p2 in 0..=cap {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), 0, p2);
            for k in 0..=p2 as i64 {
                rec.check(&gsn2(&bp, k), &gsn_single(a2, b2, p2, k), || {
                    format!("a1={a1}, b1={b1}, a2={a2}, b2={b2}, p2={p2}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_3(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree;
    rec.describe(format!(
        "S_(1,1)(p,k) = S(p+1,k+1) and S_(1,2)(p,k) = S(p+2,k+2) - S(p+1,k+2), p <= {cap}"
    ));
    let one = Scalar::one();
    for p in 0..=cap {
        for k in 0..=p as i64 {
            rec.check(
                &gsn_single(&one, &Scalar::one(), p, k),
                &Scalar::Rat(stirling2(p + 1, k + 1)),
                || format!("b=1, p={p}, k={k}"),
            );
            rec.check(
                &gsn_single(&one, &Scalar::from_int(2), p, k),
                &Scalar::Rat(stirling2(p + 2, k + 2) - stirling2(p + 1, k + 2)),
                || format!("b=2, p={p}, k={k}"),
            );
        }
    }
}

fn run_eq_3_5(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "row recurrence vs explicit formula, {} quads, p1 in 1..={cap}, p1+p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for (p1, p2) in exp_pairs(cap) {
            if p1 == 0 {
                continue;
            }
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
            for k in 0..=(p1 + p2) as i64 {
                let via = gsn2_recurrence(&bp, k).expect("p1 >= 1");
                rec.check(&via, &gsn2(&bp, k), || {
                    format!("a1={a1}, b1={b1}, a2={a2}, b2={b2}, p1={p1}, p2={p2}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_6(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    let targets = [
        TargetParams::standard(),
        TargetParams::ints(2, 1, 1, -1),
        TargetParams::ints(-1, 2, 2, 3),
    ];
    rec.describe(format!(
        "parameter transformation vs direct value, {} quads x 3 targets, p1+p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for target in &targets {
            for (p1, p2) in exp_pairs(cap) {
                let bp =
                    BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
                for k in 0..=(p1 + p2) as i64 {
                    let via = transform_params(&bp, target, k).expect("invertible target");
                    rec.check(&via, &gsn2(&bp, k), || {
                        format!(
                            "a1={a1}, b1={b1}, a2={a2}, b2={b2}, target={target:?}, p1={p1}, p2={p2}, k={k}"
                        )
                    });
                }
            }
        }
    }
}

fn run_eq_3_7(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "standard-Stirling expansion with coefficients a^j b^(p-j), {} quads, p1+p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for (p1, p2) in exp_pairs(cap) {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
            for k in 0..=(p1 + p2) as i64 {
                let mut rhs = Scalar::zero();
                for j1 in 0..=p1 {
                    for j2 in 0..=p2 {
                        let c = binom_int(p1 as i64, j1 as i64)
                            * binom_int(p2 as i64, j2 as i64)
                            * stirling2(j1 + j2, k);
                        if c.is_zero() {
                            continue;
                        }
                        rhs = rhs.add(
                            &Scalar::Rat(c)
                                .mul(&a1.pow(j1))
                                .mul(&a2.pow(j2))
                                .mul(&b1.pow(p1 - j1))
                                .mul(&b2.pow(p2 - j2)),
                        );
                    }
                }
                rec.check(&gsn2(&bp, k), &rhs, || {
                    format!("a1={a1}, b1={b1}, a2={a2}, b2={b2}, p1={p1}, p2={p2}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_71(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let ab = pairs(bounds, mode);
    let cap = exponent_cap(bounds, mode, 10);
    rec.describe(format!(
        "single-family standard-Stirling expansion, {} pairs, p <= {cap}",
        ab.len()
    ));
    for (a, b) in &ab {
        for p in 0..=cap {
            for k in 0..=p as i64 {
                let mut rhs = Scalar::zero();
                for j in 0..=p {
                    let c = binom_int(p as i64, j as i64) * stirling2(j, k);
                    if c.is_zero() {
                        continue;
                    }
                    rhs = rhs.add(&Scalar::Rat(c).mul(&a.pow(j)).mul(&b.pow(p - j)));
                }
                rec.check(&gsn_single(a, b, p, k), &rhs, || {
                    format!("a={a}, b={b}, p={p}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_8(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = exponent_cap(bounds, Mode::Numeric, 6);
    let targets: Vec<_> = grid::scalar_quads()
        .into_iter()
        .filter(|(c1, _, c2, _)| {
            !c1.as_rational().unwrap().is_zero() && !c2.as_rational().unwrap().is_zero()
        })
        .collect();
    rec.describe(format!(
        "standard Stirling from an arbitrary invertible family, {} targets, p1+p2 <= {cap}",
        targets.len()
    ));
    for (c1, d1, c2, d2) in &targets {
        let c1r = c1.as_rational().unwrap();
        let c2r = c2.as_rational().unwrap();
        for (p1, p2) in exp_pairs(cap) {
            let scale = c1r.recip().pow(p1) * c2r.recip().pow(p2);
            for k in 0..=(p1 + p2) as i64 {
                let mut rhs = Scalar::zero();
                for j1 in 0..=p1 {
                    for j2 in 0..=p2 {
                        let tf = BivariateParams::new(
                            c1.clone(),
                            d1.clone(),
                            c2.clone(),
                            d2.clone(),
                            j1,
                            j2,
                        );
                        let c = binom_int(p1 as i64, j1 as i64) * binom_int(p2 as i64, j2 as i64);
                        rhs = rhs.add(
                            &Scalar::Rat(c)
                                .mul(&d1.neg().pow(p1 - j1))
                                .mul(&d2.neg().pow(p2 - j2))
                                .mul(&gsn2(&tf, k)),
                        );
                    }
                }
                rhs = rhs.mul(&Scalar::Rat(scale.clone()));
                rec.check(&rhs, &Scalar::Rat(stirling2(p1 + p2, k)), || {
                    format!("c1={c1}, d1={d1}, c2={c2}, d2={d2}, p1={p1}, p2={p2}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_81(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree;
    let targets: Vec<_> = grid::scalar_pairs()
        .into_iter()
        .filter(|(c, _)| !c.as_rational().unwrap().is_zero())
        .collect();
    rec.describe(format!(
        "single-family inverse expansion, {} targets, p <= {cap}",
        targets.len()
    ));
    for (c, d) in &targets {
        let cr = c.as_rational().unwrap();
        for p in 0..=cap {
            for k in 0..=p as i64 {
                let mut rhs = Scalar::zero();
                for j in 0..=p {
                    let w = Scalar::Rat(binom_int(p as i64, j as i64))
                        .mul(&d.neg().pow(p - j))
                        .mul(&gsn_single(c, d, j, k));
                    rhs = rhs.add(&w);
                }
                rhs = rhs.div_rat(&cr.pow(p));
                rec.check(&rhs, &Scalar::Rat(stirling2(p, k)), || {
                    format!("c={c}, d={d}, p={p}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_9(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "b-shift lemma, {} quads, p1+p2 <= {cap}, all k",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for (p1, p2) in exp_pairs(cap) {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
            let shifted = bp.shifted(1);
            for k in 0..=(p1 + p2) as i64 {
                rec.check(&crate::bivariate::shift_b(&bp, k), &gsn2(&shifted, k), || {
                    format!("a1={a1}, b1={b1}, a2={a2}, b2={b2}, p1={p1}, p2={p2}, k={k}")
                });
            }
        }
    }
}

fn run_eq_3_11(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 4);
    let targets = [TargetParams::standard(), TargetParams::ints(2, 1, 1, -1)];
    let m_max = if mode == Mode::Symbolic { 2 } else { 3 };
    rec.describe(format!(
        "m-parameterized transformation over general targets, {} quads x 2 targets, m <= {m_max}, p1+p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for target in &targets {
            for m in 0..=m_max {
                for (p1, p2) in exp_pairs(cap) {
                    let bp = BivariateParams::new(
                        a1.clone(),
                        b1.clone(),
                        a2.clone(),
                        b2.clone(),
                        p1,
                        p2,
                    );
                    for k in 0..=(p1 + p2) as i64 {
                        let via = m_shift_with_target(&bp, target, m, k).expect("invertible");
                        let want = gsn2(&bp, k).mul(&fact_scalar(k));
                        rec.check(&via, &want, || {
                            format!(
                                "a1={a1}, b1={b1}, a2={a2}, b2={b2}, target={target:?}, m={m}, p1={p1}, p2={p2}, k={k}"
                            )
                        });
                    }
                }
            }
        }
    }
}

fn run_eq_3_13(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    let m_max = if mode == Mode::Symbolic { 3 } else { 4 };
    rec.describe(format!(
        "m-parameterized standard-Stirling representation, {} quads, m <= {m_max}, p1+p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for m in 0..=m_max {
            for (p1, p2) in exp_pairs(cap) {
                let bp =
                    BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
                for k in 0..=(p1 + p2) as i64 {
                    let want = gsn2(&bp, k).mul(&fact_scalar(k));
                    rec.check(&m_shift_representation(&bp, m, k), &want, || {
                        format!(
                            "a1={a1}, b1={b1}, a2={a2}, b2={b2}, m={m}, p1={p1}, p2={p2}, k={k}"
                        )
                    });
                }
            }
        }
    }
}

fn run_eq_3_14(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let jmax = bounds.numeric_degree.min(8);
    rec.describe(format!(
        "binomial/Stirling exchange lemma, 0 <= k <= j <= {jmax}, m <= 5"
    ));
    for j in 0..=jmax {
        for k in 0..=j {
            for m in 1..=5usize {
                let (lhs, rhs) = lemma3_sides(j, k, m);
                rec.check_rat(&lhs, &rhs, || format!("j={j}, k={k}, m={m}"));
            }
        }
    }
}

fn run_eq_3_15(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    let m_max = if mode == Mode::Symbolic { 3 } else { 4 };
    rec.describe(format!(
        "first-kind-Stirling representation, {} quads, 1 <= m <= {m_max}, p1+p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for m in 1..=m_max {
            for (p1, p2) in exp_pairs(cap) {
                let bp =
                    BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
                for k in 0..=(p1 + p2) as i64 {
                    rec.check(&m_shift_via_stirling1(&bp, m, k), &gsn2(&bp, k), || {
                        format!(
                            "a1={a1}, b1={b1}, a2={a2}, b2={b2}, m={m}, p1={p1}, p2={p2}, k={k}"
                        )
                    });
                }
            }
        }
    }
}

fn run_eq_3_151(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let pmax = bounds.numeric_degree.min(8);
    rec.describe(format!(
        "S_(1,m)(p,k) in standard Stirling numbers of both kinds, m <= 5, p <= {pmax}"
    ));
    let one = Scalar::one();
    for m in 1..=5i64 {
        for p in 0..=pmax {
            for k in 0..=p as i64 {
                let via = integer_b_in_stirling(m, p, k).expect("m positive");
                let direct = gsn_single(&one, &Scalar::from_int(m), p, k);
                rec.check(&Scalar::Rat(via), &direct, || format!("m={m}, p={p}, k={k}"));
            }
        }
    }
}

fn run_eq_3_153(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(6);
    rec.describe(format!(
        "Stirling recurrence through first-kind numbers, p1 <= {cap}, 1 <= p2 <= {cap}, all l"
    ));
    for p1 in 0..=cap {
        for p2 in 1..=cap {
            for l in 0..=(p1 + p2) as i64 {
                rec.check_rat(
                    &stirling_recurrence_family(p1, p2, l),
                    &stirling2(p1 + p2, l),
                    || format!("p1={p1}, p2={p2}, l={l}"),
                );
            }
        }
    }
}

fn run_eq_3_16(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 5);
    rec.describe(format!(
        "m = 0,1,2 representations all agree, {} quads, p1+p2 <= {cap}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for (p1, p2) in exp_pairs(cap) {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
            for k in 0..=(p1 + p2) as i64 {
                let want = gsn2(&bp, k).mul(&fact_scalar(k));
                for m in 0..=2usize {
                    rec.check(&m_shift_representation(&bp, m, k), &want, || {
                        format!(
                            "a1={a1}, b1={b1}, a2={a2}, b2={b2}, m={m}, p1={p1}, p2={p2}, k={k}"
                        )
                    });
                }
            }
        }
    }
}

fn run_family_forms(
    bounds: &Bounds,
    rec: &mut Recorder,
    name: &str,
    forms: fn(usize, usize, i64) -> (Rational, [Rational; 3]),
) {
    let cap = bounds.numeric_degree.min(5);
    rec.describe(format!(
        "{name}: three standard-Stirling forms, p1, p2 <= {cap}, all k"
    ));
    for p1 in 0..=cap {
        for p2 in 0..=cap {
            for k in 0..=(p1 + p2 + 1) as i64 {
                let (lhs, fs) = forms(p1, p2, k);
                for (i, f) in fs.iter().enumerate() {
                    rec.check_rat(&lhs, f, || format!("form {i}: p1={p1}, p2={p2}, k={k}"));
                }
            }
        }
    }
}

fn run_eq_3_17(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    run_family_forms(bounds, rec, "S_(1,1)^(1,0,p2)", eq_317_forms);
}

fn run_eq_3_18(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    run_family_forms(bounds, rec, "S_(1,2)^(1,0,p2)", eq_318_forms);
}

fn run_eq_3_19(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    run_family_forms(bounds, rec, "S_(1,1)^(1,2,p2)", eq_319_forms);
}

fn run_eq_3_20(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(5);
    rec.describe(format!(
        "cross-family relations between the three displayed families, p1, p2 <= {cap}"
    ));
    for p1 in 0..=cap {
        for p2 in 0..=cap {
            for k in 0..=(p1 + p2 + 1) as i64 {
                for (i, (lhs, rhs)) in eq_320_relations(p1, p2, k).iter().enumerate() {
                    rec.check_rat(lhs, rhs, || {
                        format!("relation {i}: p1={p1}, p2={p2}, k={k}")
                    });
                }
            }
        }
    }
}

fn run_eq_3_21(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(5);
    rec.describe(format!(
        "standard-Stirling relation chains, p, q <= {cap}, all k"
    ));
    for p in 0..=cap {
        for q in 0..=cap {
            for k in 0..=(p + q + 1) as i64 {
                for (i, (lhs, rhs)) in eq_321_relations(p, q, k).iter().enumerate() {
                    rec.check_rat(lhs, rhs, || format!("chain {i}: p={p}, q={q}, k={k}"));
                }
            }
        }
    }
}

fn run_eq_3_22(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = match mode {
        Mode::Numeric => 2usize, // per-exponent cap
        Mode::Symbolic => bounds.symbolic_degree,
    };
    rec.describe(format!(
        "factor-splitting convolution, {} quads, exponent budget {cap}",
        qs.len()
    ));
    let combos: Vec<(usize, usize, usize)> = match mode {
        Mode::Numeric => {
            let mut v = Vec::new();
            for p2 in 0..=cap {
                for q1 in 0..=cap {
                    for q2 in 0..=cap {
                        v.push((p2, q1, q2));
                    }
                }
            }
            v
        }
        Mode::Symbolic => exp_triples(cap),
    };
    for (a1, b1, a2, b2) in &qs {
        for &(p2, q1, q2) in &combos {
            let lhs_params =
                BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p2, q1 + q2);
            for l in 0..=lhs_params.degree() as i64 {
                let rhs = lemma4_rhs(a1, b1, a2, b2, p2, q1, q2, l);
                rec.check(&gsn2(&lhs_params, l), &rhs, || {
                    format!(
                        "a1={a1}, b1={b1}, a2={a2}, b2={b2}, p2={p2}, q1={q1}, q2={q2}, l={l}"
                    )
                });
            }
        }
    }
}

fn run_eq_3_23(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let combos: Vec<(usize, usize, usize, usize)> = match mode {
        Mode::Numeric => {
            let mut v = Vec::new();
            for p1 in 0..=2usize {
                for p2 in 0..=2usize {
                    for q1 in 0..=2usize {
                        for q2 in 0..=2usize {
                            v.push((p1, p2, q1, q2));
                        }
                    }
                }
            }
            v
        }
        Mode::Symbolic => exp_quads(bounds.symbolic_degree),
    };
    rec.describe(format!(
        "full convolution of exponent splits, {} quads, {} exponent combos",
        qs.len(),
        combos.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for &(p1, p2, q1, q2) in &combos {
            let lhs_params = BivariateParams::new(
                a1.clone(),
                b1.clone(),
                a2.clone(),
                b2.clone(),
                p1 + p2,
                q1 + q2,
            );
            for l in 0..=lhs_params.degree() as i64 {
                let rhs = prop2_rhs(a1, b1, a2, b2, p1, p2, q1, q2, l);
                rec.check(&gsn2(&lhs_params, l), &rhs, || {
                    format!(
                        "a1={a1}, b1={b1}, a2={a2}, b2={b2}, p1={p1}, p2={p2}, q1={q1}, q2={q2}, l={l}"
                    )
                });
            }
        }
    }
}

fn run_eq_3_26(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let ab = pairs(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "single-family convolution, {} pairs, p1+p2 <= {cap}",
        ab.len()
    ));
    for (a, b) in &ab {
        for (p1, p2) in exp_pairs(cap) {
            for l in 0..=(p1 + p2) as i64 {
                rec.check(
                    &gsn_single(a, b, p1 + p2, l),
                    &merge_rhs(a, b, p1, p2, l),
                    || format!("a={a}, b={b}, p1={p1}, p2={p2}, l={l}"),
                );
            }
        }
    }
}

fn run_eq_3_27(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(6);
    rec.describe(format!(
        "standard-case convolution, p1, p2 <= {cap}, all l"
    ));
    for p1 in 0..=cap {
        for p2 in 0..=cap {
            for l in 0..=(p1 + p2) as i64 {
                rec.check_rat(&standard_conv_rhs(p1, p2, l), &stirling2(p1 + p2, l), || {
                    format!("p1={p1}, p2={p2}, l={l}")
                });
            }
        }
    }
}

fn run_eq_3_28(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(8);
    rec.describe(format!(
        "two- and three-step iterated standard recurrences, p <= {cap}"
    ));
    for p in 0..=cap {
        for l in 0..=(p + 3) as i64 {
            rec.check_rat(&stirling_iterated2(p, l), &stirling2(p + 2, l), || {
                format!("order 2: p={p}, l={l}")
            });
            rec.check_rat(&stirling_iterated3(p, l), &stirling2(p + 3, l), || {
                format!("order 3: p={p}, l={l}")
            });
        }
    }
}

fn run_eq_3_281(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(5);
    rec.describe(format!(
        "truncated-convolution identity, p1 <= {cap}, 1 <= p2 <= {cap}, all l"
    ));
    for p1 in 0..=cap {
        for p2 in 1..=cap {
            for l in 0..=(p1 + p2) as i64 {
                let (lhs, rhs) = identity_3281_sides(p1, p2, l);
                rec.check_rat(&lhs, &rhs, || format!("p1={p1}, p2={p2}, l={l}"));
            }
        }
    }
}

fn run_eq_3_30(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(4);
    let ab = grid::scalar_pairs();
    rec.describe(format!(
        "convolution through the shift representation, {} pairs, shift_n <= 3, p1, p2 <= {cap}",
        ab.len()
    ));
    for (a, b) in &ab {
        for shift_n in 1..=3usize {
            for p1 in 0..=cap {
                for p2 in 0..=cap {
                    for l in 0..=(p1 + p2) as i64 {
                        rec.check(
                            &conv_via_mshift(a, b, p1, p2, shift_n, l),
                            &gsn_single(a, b, p1 + p2, l),
                            || format!("a={a}, b={b}, n={shift_n}, p1={p1}, p2={p2}, l={l}"),
                        );
                    }
                }
            }
        }
    }
}

fn run_eq_3_34(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = 2usize.min(bounds.numeric_degree);
    rec.describe(format!(
        "bilinear Stirling identity, p1, p2, q1, q2 <= {cap}, all l, t"
    ));
    for p1 in 0..=cap {
        for p2 in 0..=cap {
            for q1 in 0..=cap {
                for q2 in 0..=cap {
                    let top = (p1 + p2 + q1 + q2) as i64;
                    for l in 0..=top {
                        for t in 0..=top {
                            let (lhs, rhs) = cor3_sides(p1, p2, q1, q2, l, t);
                            rec.check_rat(&lhs, &rhs, || {
                                format!("p1={p1}, p2={p2}, q1={q1}, q2={q2}, l={l}, t={t}")
                            });
                        }
                    }
                }
            }
        }
    }
}

fn run_eq_3_36(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let ab = pairs(bounds, mode);
    let pcap = exponent_cap(bounds, mode, 6);
    let qcap = 3usize.min(pcap);
    rec.describe(format!(
        "b+1 factor expansion, {} pairs, q <= {qcap}, p <= {pcap}",
        ab.len()
    ));
    for (a, b) in &ab {
        for q in 0..=qcap {
            for p in 0..=pcap.saturating_sub(q) {
                for k in 0..=(p + q) as i64 {
                    let (lhs, rhs) = claim_336_sides(a, b, q, p, k);
                    rec.check(&lhs, &rhs, || format!("a={a}, b={b}, q={q}, p={p}, k={k}"));
                }
            }
        }
    }
}

fn run_eq_3_39(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(3);
    rec.describe(format!(
        "no-factor case of the bilinear identity, p1, p2 <= {cap}, all l, t"
    ));
    for p1 in 0..=cap {
        for p2 in 0..=cap {
            for l in 0..=(p1 + p2) as i64 {
                for t in 0..=(p1 + p2) as i64 {
                    let (lhs, rhs) = eq_339_sides(p1, p2, l, t);
                    rec.check_rat(&lhs, &rhs, || {
                        format!("p1={p1}, p2={p2}, l={l}, t={t}")
                    });
                }
            }
        }
    }
}

fn run_eq_3_401(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = 2usize.min(bounds.numeric_degree);
    rec.describe(format!(
        "top-degree case of the bilinear identity, p1, p2, q1, q2 <= {cap}, all l"
    ));
    for p1 in 0..=cap {
        for p2 in 0..=cap {
            for q1 in 0..=cap {
                for q2 in 0..=cap {
                    for l in 0..=(p1 + p2 + q1 + q2) as i64 {
                        let (lhs, rhs) = eq_3401_sides(p1, p2, q1, q2, l);
                        rec.check_rat(&lhs, &rhs, || {
                            format!("p1={p1}, p2={p2}, q1={q1}, q2={q2}, l={l}")
                        });
                    }
                }
            }
        }
    }
}

fn run_eq_3_41(bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    let cap = bounds.numeric_degree.min(4);
    rec.describe(format!(
        "pure-binomial identity, p1, p2, q1, q2 <= {cap} exhaustive"
    ));
    for p1 in 0..=cap {
        for p2 in 0..=cap {
            for q1 in 0..=cap {
                for q2 in 0..=cap {
                    let (lhs, rhs) = eq_341_sides(p1, p2, q1, q2);
                    rec.check_rat(&lhs, &rhs, || {
                        format!("p1={p1}, p2={p2}, q1={q1}, q2={q2}")
                    });
                }
            }
        }
    }
}

fn run_eq_3_42(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let configs: &[([usize; 3], [usize; 3])] = &[
        ([1, 1, 1], [0, 0, 0]),
        ([1, 0, 1], [1, 1, 0]),
        ([1, 1, 1], [1, 0, 1]),
        ([2, 1, 0], [0, 1, 1]),
    ];
    rec.describe(format!(
        "three-part convolution, {} quads, {} exponent configs",
        qs.len(),
        configs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for &(p, q) in configs {
            let psum: usize = p.iter().sum();
            let qsum: usize = q.iter().sum();
            if mode == Mode::Symbolic && psum + qsum > bounds.symbolic_degree {
                continue;
            }
            let lhs_params =
                BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), psum, qsum);
            for l in 0..=(psum + qsum) as i64 {
                rec.check(
                    &gsn2(&lhs_params, l),
                    &triple_rhs(a1, b1, a2, b2, p, q, l),
                    || format!("a1={a1}, b1={b1}, a2={a2}, b2={b2}, p={p:?}, q={q:?}, l={l}"),
                );
            }
        }
    }
}

fn run_eq_3_43(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 4);
    let m_max = if mode == Mode::Symbolic { 4 } else { 6 };
    rec.describe(format!(
        "weighted power sums, {} quads, p1+p2 <= {cap}, m <= {m_max}",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for (p1, p2) in exp_pairs(cap) {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
            for m in 1..=m_max {
                for k in 0..m as i64 {
                    let (lhs, rhs) = power_sum_sides(&bp, m, k).expect("valid m, k");
                    rec.check(&lhs, &rhs, || {
                        format!(
                            "a1={a1}, b1={b1}, a2={a2}, b2={b2}, p1={p1}, p2={p2}, m={m}, k={k}"
                        )
                    });
                }
            }
        }
    }
}

fn run_eq_3_43_ex1(_bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    // fixed regression range for the displayed example
    let m_max = 12i64;
    rec.describe(format!("first displayed power-sum example, m <= {m_max}"));
    for m in 1..=m_max {
        for k in 0..m {
            let (lhs, rhs) = power_sum_example1(m, k);
            rec.check_rat(&lhs, &rhs, || format!("m={m}, k={k}"));
        }
    }
}

fn run_eq_3_43_ex2(_bounds: &Bounds, _mode: Mode, rec: &mut Recorder) {
    // fixed regression range for the displayed example
    let m_max = 12i64;
    rec.describe(format!("second displayed power-sum example, m <= {m_max}"));
    for m in 1..=m_max {
        for k in 0..m {
            let (lhs, rhs) = power_sum_example2(m, k);
            rec.check_rat(&lhs, &rhs, || format!("m={m}, k={k}"));
        }
    }
}

fn run_eq_3_44(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let qs = quads(bounds, mode);
    let cap = exponent_cap(bounds, mode, 6);
    rec.describe(format!(
        "binomial convolution, {} quads, p1+p2 <= {cap}, k + mu <= degree + 1",
        qs.len()
    ));
    for (a1, b1, a2, b2) in &qs {
        for (p1, p2) in exp_pairs(cap) {
            let bp = BivariateParams::new(a1.clone(), b1.clone(), a2.clone(), b2.clone(), p1, p2);
            let top = (p1 + p2) as i64 + 1;
            for k in 0..=top {
                for mu in 0..=(top - k) {
                    let (lhs, rhs) = vandermonde_sides(&bp, k, mu);
                    rec.check(&lhs, &rhs, || {
                        format!(
                            "a1={a1}, b1={b1}, a2={a2}, b2={b2}, p1={p1}, p2={p2}, k={k}, mu={mu}"
                        )
                    });
                }
            }
        }
    }
}

fn weyl_b_grid(bounds: &Bounds, mode: Mode) -> Vec<Scalar> {
    if let Some(b) = &bounds.scope_b {
        return vec![Scalar::Rat(b.clone())];
    }
    match mode {
        Mode::Symbolic => vec![Scalar::var("b1")],
        Mode::Numeric => vec![
            Scalar::zero(),
            Scalar::one(),
            Scalar::from_int(2),
            Scalar::Rat(Rational::new(1, 2)),
            Scalar::from_int(-1),
        ],
    }
}

fn weyl_r_range(bounds: &Bounds, rmax: usize) -> std::ops::RangeInclusive<usize> {
    match bounds.scope_r {
        Some(r) => r..=r,
        None => 0..=rmax,
    }
}

fn run_eq_5_1(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let bs = weyl_b_grid(bounds, mode);
    let (rmax, pmax) = match mode {
        Mode::Numeric => (3usize, 4usize.min(bounds.numeric_degree)),
        Mode::Symbolic => (2, 3usize.min(bounds.symbolic_degree)),
    };
    rec.describe(format!(
        "row recurrence for a = 1 vs explicit formula, {} b values, r range {:?}, p <= {pmax}, plus a factored variant",
        bs.len(),
        weyl_r_range(bounds, rmax)
    ));
    let factored = vec![Factor {
        alpha: Scalar::one(),
        beta: Scalar::zero(),
        r: 1,
        p: 1,
    }];
    for b in &bs {
        for r in weyl_r_range(bounds, rmax) {
            for p in 1..=pmax {
                for (label, factors) in [("plain", &Vec::new()), ("factored", &factored)] {
                    let params =
                        ParamSpec::new(Scalar::one(), b.clone(), r, p, factors.clone());
                    for k in 0..=params.degree() as i64 {
                        let via = recurrence_51_factored(b, r, factors, p, k).expect("p >= 1");
                        rec.check(&via, &gsn_explicit(&params, k), || {
                            format!("{label}: b={b}, r={r}, p={p}, k={k}")
                        });
                    }
                }
            }
        }
    }
}

fn run_eq_5_2(bounds: &Bounds, mode: Mode, rec: &mut Recorder) {
    let bs = weyl_b_grid(bounds, mode);
    let (rmax, pmax) = match mode {
        Mode::Numeric => (3usize, 4usize.min(bounds.numeric_degree)),
        Mode::Symbolic => (2, 2),
    };
    rec.describe(format!(
        "operator power equals diagonal GSN word, {} b values, r range {:?}, p <= {pmax}",
        bs.len(),
        weyl_r_range(bounds, rmax)
    ));
    for b in &bs {
        for r in weyl_r_range(bounds, rmax) {
            for p in 0..=pmax {
                let word = crate::weyl::operator_lhs(b, r).pow(p);
                rec.check_flag(word.is_diagonal(), "diagonal", || {
                    format!("b={b}, r={r}, p={p}")
                });
                rec.check_flag(
                    verify_operator_identity(b, r, p),
                    "operator identity",
                    || format!("b={b}, r={r}, p={p}"),
                );
            }
        }
    }
}

/// The full identity catalog, in registration (id) order.
pub fn registry() -> Vec<IdentityCheck> {
    vec![
        IdentityCheck {
            id: "EQ-2.16",
            description: "defining expansion of the product over the binomial basis",
            arity: "params over grid; n = 0..=degree",
            modes: BOTH_MODES,
            run: run_eq_2_16,
        },
        IdentityCheck {
            id: "EQ-2.19",
            description: "GEP coefficients in powers of z-1 equal scaled GSN",
            arity: "params over grid; coefficient index",
            modes: BOTH_MODES,
            run: run_eq_2_19,
        },
        IdentityCheck {
            id: "EQ-2.21",
            description: "GSN from the GEN row equals the explicit GSN formula",
            arity: "params over grid; k",
            modes: BOTH_MODES,
            run: run_eq_2_21,
        },
        IdentityCheck {
            id: "EQ-2.24",
            description: "GEN from the GSN row equals the explicit GEN formula",
            arity: "params over grid; i",
            modes: BOTH_MODES,
            run: run_eq_2_24,
        },
        IdentityCheck {
            id: "EQ-3.2a",
            description: "equal families merge exponents",
            arity: "a,b; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_2a,
        },
        IdentityCheck {
            id: "EQ-3.2b",
            description: "value at (0,0) is b2^p2",
            arity: "a1,b1,a2,b2; p2",
            modes: BOTH_MODES,
            run: run_eq_3_2b,
        },
        IdentityCheck {
            id: "EQ-3.2c",
            description: "swapping the two families fixes the numbers",
            arity: "a1,b1,a2,b2; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_2c,
        },
        IdentityCheck {
            id: "EQ-3.2d",
            description: "p1 = 0 row is the second family's row",
            arity: "a1,b1,a2,b2; p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_2d,
        },
        IdentityCheck {
            id: "EQ-3.3",
            description: "b = 1, 2 rows as shifted standard Stirling numbers",
            arity: "p; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_3,
        },
        IdentityCheck {
            id: "EQ-3.5",
            description: "row recurrence in p1",
            arity: "a1,b1,a2,b2; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_5,
        },
        IdentityCheck {
            id: "EQ-3.6",
            description: "parameter transformation onto an arbitrary invertible family",
            arity: "a1,b1,a2,b2; target c,d; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_6,
        },
        IdentityCheck {
            id: "EQ-3.7",
            description: "expansion in standard Stirling numbers, coefficients a^j b^(p-j)",
            arity: "a1,b1,a2,b2; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_7,
        },
        IdentityCheck {
            id: "EQ-3.71",
            description: "single-family standard-Stirling expansion",
            arity: "a,b; p; k",
            modes: BOTH_MODES,
            run: run_eq_3_71,
        },
        IdentityCheck {
            id: "EQ-3.8",
            description: "standard Stirling numbers from an arbitrary family",
            arity: "target c,d; p1,p2; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_8,
        },
        IdentityCheck {
            id: "EQ-3.81",
            description: "single-family inverse of the standard expansion",
            arity: "target c,d; p; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_81,
        },
        IdentityCheck {
            id: "EQ-3.9",
            description: "shifting b by a adds (k+1) times the next value",
            arity: "a1,b1,a2,b2; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_9,
        },
        IdentityCheck {
            id: "EQ-3.11",
            description: "m-parameterized transformation over general targets",
            arity: "a1,b1,a2,b2; target; m; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_11,
        },
        IdentityCheck {
            id: "EQ-3.13",
            description: "m-parameterized standard-Stirling representation",
            arity: "a1,b1,a2,b2; m; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_13,
        },
        IdentityCheck {
            id: "EQ-3.14",
            description: "binomial sums of shifted rows as first-kind combinations",
            arity: "j; k; m",
            modes: NUMERIC_ONLY,
            run: run_eq_3_14,
        },
        IdentityCheck {
            id: "EQ-3.15",
            description: "representation through unsigned first-kind numbers",
            arity: "a1,b1,a2,b2; m; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_15,
        },
        IdentityCheck {
            id: "EQ-3.151",
            description: "integer-b rows purely in standard Stirling numbers",
            arity: "m; p; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_151,
        },
        IdentityCheck {
            id: "EQ-3.153",
            description: "new Stirling recurrence through first-kind numbers",
            arity: "p1; p2; l",
            modes: NUMERIC_ONLY,
            run: run_eq_3_153,
        },
        IdentityCheck {
            id: "EQ-3.16",
            description: "the m = 0, 1, 2 representations agree",
            arity: "a1,b1,a2,b2; m in 0..=2; p1,p2; k",
            modes: BOTH_MODES,
            run: run_eq_3_16,
        },
        IdentityCheck {
            id: "EQ-3.17",
            description: "three forms of the (1,1),(1,0) family",
            arity: "p1; p2; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_17,
        },
        IdentityCheck {
            id: "EQ-3.18",
            description: "three forms of the (1,2),(1,0) family",
            arity: "p1; p2; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_18,
        },
        IdentityCheck {
            id: "EQ-3.19",
            description: "three forms of the (1,1),(1,2) family",
            arity: "p1; p2; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_19,
        },
        IdentityCheck {
            id: "EQ-3.20",
            description: "relations between the three displayed families",
            arity: "p1; p2; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_20,
        },
        IdentityCheck {
            id: "EQ-3.21",
            description: "the family relations written in standard Stirling numbers",
            arity: "p; q; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_21,
        },
        IdentityCheck {
            id: "EQ-3.22",
            description: "convolution splitting the second-family exponent",
            arity: "a1,b1,a2,b2; p2; q1; q2; l",
            modes: BOTH_MODES,
            run: run_eq_3_22,
        },
        IdentityCheck {
            id: "EQ-3.23",
            description: "convolution splitting both exponents",
            arity: "a1,b1,a2,b2; p1,p2,q1,q2; l",
            modes: BOTH_MODES,
            run: run_eq_3_23,
        },
        IdentityCheck {
            id: "EQ-3.26",
            description: "single-family convolution",
            arity: "a,b; p1,p2; l",
            modes: BOTH_MODES,
            run: run_eq_3_26,
        },
        IdentityCheck {
            id: "EQ-3.27",
            description: "standard-case convolution over lower rows",
            arity: "p1; p2; l",
            modes: NUMERIC_ONLY,
            run: run_eq_3_27,
        },
        IdentityCheck {
            id: "EQ-3.28",
            description: "iterated standard recurrences of orders 2 and 3",
            arity: "p; l",
            modes: NUMERIC_ONLY,
            run: run_eq_3_28,
        },
        IdentityCheck {
            id: "EQ-3.281",
            description: "truncated convolution equals first-kind combination",
            arity: "p1; p2; l",
            modes: NUMERIC_ONLY,
            run: run_eq_3_281,
        },
        IdentityCheck {
            id: "EQ-3.30",
            description: "convolution through the shift representation",
            arity: "a,b; shift_n; p1,p2; l",
            modes: NUMERIC_ONLY,
            run: run_eq_3_30,
        },
        IdentityCheck {
            id: "EQ-3.34",
            description: "bilinear Stirling identity from the b-expansion",
            arity: "p1,p2,q1,q2; l; t",
            modes: NUMERIC_ONLY,
            run: run_eq_3_34,
        },
        IdentityCheck {
            id: "EQ-3.36",
            description: "raising the second parameter by one expands binomially",
            arity: "a,b; q; p; k",
            modes: BOTH_MODES,
            run: run_eq_3_36,
        },
        IdentityCheck {
            id: "EQ-3.39",
            description: "no-factor case of the bilinear identity",
            arity: "p1,p2; l; t",
            modes: NUMERIC_ONLY,
            run: run_eq_3_39,
        },
        IdentityCheck {
            id: "EQ-3.401",
            description: "top-degree case of the bilinear identity",
            arity: "p1,p2,q1,q2; l",
            modes: NUMERIC_ONLY,
            run: run_eq_3_401,
        },
        IdentityCheck {
            id: "EQ-3.41",
            description: "pure-binomial consequence at l = 1",
            arity: "p1,p2,q1,q2",
            modes: NUMERIC_ONLY,
            run: run_eq_3_41,
        },
        IdentityCheck {
            id: "EQ-3.42",
            description: "three-part convolution",
            arity: "a1,b1,a2,b2; p1..p3, q1..q3; l",
            modes: BOTH_MODES,
            run: run_eq_3_42,
        },
        IdentityCheck {
            id: "EQ-3.43",
            description: "weighted power sums through shifted rows",
            arity: "a1,b1,a2,b2; p1,p2; m; k",
            modes: BOTH_MODES,
            run: run_eq_3_43,
        },
        IdentityCheck {
            id: "EQ-3.43-EX1",
            description: "first displayed power-sum example",
            arity: "m; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_43_ex1,
        },
        IdentityCheck {
            id: "EQ-3.43-EX2",
            description: "second displayed power-sum example",
            arity: "m; k",
            modes: NUMERIC_ONLY,
            run: run_eq_3_43_ex2,
        },
        IdentityCheck {
            id: "EQ-3.44",
            description: "binomial convolution over split exponents",
            arity: "a1,b1,a2,b2; p1,p2; k; mu",
            modes: BOTH_MODES,
            run: run_eq_3_44,
        },
        IdentityCheck {
            id: "EQ-5.1",
            description: "row recurrence for the a = 1 family",
            arity: "b; r; p; k",
            modes: BOTH_MODES,
            run: run_eq_5_1,
        },
        IdentityCheck {
            id: "EQ-5.2",
            description: "operator powers realize the a = 1 GSN diagonally",
            arity: "b; r; p",
            modes: BOTH_MODES,
            run: run_eq_5_2,
        },
    ]
}

/// All registered ids, in catalog order.
pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

fn execute(check: &IdentityCheck, mode: Mode, bounds: &Bounds) -> VerifyReport {
    let start = Instant::now();
    let mut rec = Recorder::new();
    if check.supports(mode) {
        (check.run)(bounds, mode, &mut rec);
    } else {
        rec.describe(format!("not applicable in {mode} mode"));
    }
    VerifyReport {
        identity: check.id.to_string(),
        mode: mode.to_string(),
        grid: rec.grid,
        cases: rec.cases,
        failures: rec.failures,
        wall: start.elapsed(),
    }
}

/// Run a single identity by id.
pub fn run_identity(id: &str, mode: Mode, bounds: &Bounds) -> Result<VerifyReport, GsnError> {
    let reg = registry();
    let check = reg
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| GsnError::UnknownIdentity(id.to_string()))?;
    Ok(execute(check, mode, bounds))
}

/// Run every registered identity (in catalog order); identities that do
/// not support `mode` produce vacuous zero-case reports.
pub fn run_all(mode: Mode, bounds: &Bounds) -> Vec<VerifyReport> {
    registry()
        .iter()
        .map(|check| execute(check, mode, bounds))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(
            run_identity("EQ-9.9", Mode::Numeric, &Bounds::default()),
            Err(GsnError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn ids_are_unique_and_well_formed() {
        let all = ids();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert!(all.len() >= 35);
        for id in all {
            assert!(id.starts_with("EQ-"), "{id}");
        }
    }

    #[test]
    fn single_identity_small_bounds() {
        let bounds = Bounds {
            numeric_degree: 4,
            ..Bounds::default()
        };
        let report = run_identity("EQ-3.3", Mode::Numeric, &bounds).unwrap();
        assert!(report.passed());
        assert!(report.cases > 0);
        // symbolic runs on a symbolic-capable identity
        let sym = Bounds {
            symbolic_degree: 3,
            ..Bounds::default()
        };
        let report = run_identity("EQ-3.9", Mode::Symbolic, &sym).unwrap();
        assert!(report.passed());
        assert!(report.cases > 0);
        // numeric-only identity yields a vacuous symbolic report
        let report = run_identity("EQ-3.3", Mode::Symbolic, &sym).unwrap();
        assert!(report.passed());
        assert_eq!(report.cases, 0);
    }

    #[test]
    fn report_serialization_is_deterministic_and_skips_wall_time() {
        let bounds = Bounds {
            numeric_degree: 3,
            seed: Some(7),
            random_cases: 4,
            ..Bounds::default()
        };
        let a = run_identity("EQ-3.71", Mode::Numeric, &bounds).unwrap();
        let b = run_identity("EQ-3.71", Mode::Numeric, &bounds).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("wall"));
        assert!(a.cases > 0);
    }

    #[test]
    fn seeded_extension_adds_cases() {
        let base = Bounds {
            numeric_degree: 3,
            ..Bounds::default()
        };
        let seeded = Bounds {
            numeric_degree: 3,
            seed: Some(11),
            random_cases: 8,
            ..Bounds::default()
        };
        let a = run_identity("EQ-3.71", Mode::Numeric, &base).unwrap();
        let b = run_identity("EQ-3.71", Mode::Numeric, &seeded).unwrap();
        assert!(b.cases > a.cases);
        assert!(b.passed());
    }
}
