//! `gsn`: exact generalized Stirling/Eulerian number computation.
//!
//! Subcommands: `triangle` (emit a number triangle), `eval` (one value),
//! `verify` (run identity checks), `bfile` (OEIS-style sequence export).
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
//! 3 degree-guard rejection.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gsn_core::registry::{run_all, run_identity, Bounds, Mode, VerifyReport};
use gsn_core::{
    gsn2, gsn_explicit, gsn_table, triangle, Factor, GsnError, NumberTable, ParamSpec, Rational,
    Scalar,
};

use gsn_cli::config::{self, CliConfig, OutputFormat};
use gsn_cli::output::{
    table_to_bfile, table_to_csv, table_to_json, table_to_markdown, Linearization,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGREE_GUARD: u8 = 3;

#[derive(Debug)]
struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn usage(message: impl Into<String>) -> Self {
        AppError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn degree_guard(degree: usize, guard: usize) -> Self {
        AppError {
            code: EXIT_DEGREE_GUARD,
            message: format!(
                "degree {degree} exceeds the configured guard {guard} (raise with --max-degree or {})",
                config::ENV_MAX_DEGREE
            ),
        }
    }
}

type AppResult<T> = Result<T, AppError>;

#[derive(Parser)]
#[command(
    name = "gsn",
    version,
    about = "Exact generalized Stirling and Eulerian numbers: triangles, single values, identity verification, b-file export"
)]
struct Cli {
    /// Config file with key=value lines (max_degree, format, seed)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Maximum admissible degree rp+sigma (default 64; env GSN_MAX_DEGREE)
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<usize>,

    /// Seed for the randomized grid extension of `verify`
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a triangle of generalized Stirling numbers for p = 0..=ROWS
    Triangle(TriangleArgs),
    /// Evaluate a single generalized Stirling number
    Eval(EvalArgs),
    /// Run identity verification and report pass/fail
    Verify(VerifyArgs),
    /// Export a triangle as an OEIS-style b-file (integer values only)
    Bfile(BfileArgs),
}

/// Parameter flags shared by the table-producing commands. Either the
/// two-family form (--a1/--b1/--a2/--b2/--p2) or the general form
/// (--a/--b/--r with repeatable --factor alpha,beta,r_s,p_s).
#[derive(Args, Clone)]
struct FamilyArgs {
    /// First-family slope (two-family form)
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    /// First-family offset
    #[arg(long, allow_hyphen_values = true)]
    b1: Option<String>,
    /// Second-family slope
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
    /// Second-family offset
    #[arg(long, allow_hyphen_values = true)]
    b2: Option<String>,
    /// Second-family exponent
    #[arg(long)]
    p2: Option<usize>,

    /// Base slope (general form)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Base offset (general form)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Base binomial order r (general form)
    #[arg(long)]
    r: Option<usize>,
    /// Extra factor `alpha,beta,r_s,p_s`; repeatable (general form)
    #[arg(long = "factor", value_name = "A,B,R,P", allow_hyphen_values = true)]
    factors: Vec<String>,

    /// Comma-separated parameter names to treat as indeterminates
    /// (e.g. `--symbolic a1,b1`)
    #[arg(long, value_name = "NAMES")]
    symbolic: Option<String>,
}

#[derive(Args)]
struct TriangleArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Number of rows beyond row zero (emits p = 0..=ROWS)
    #[arg(long, default_value_t = 0)]
    rows: usize,
    /// Output format: csv, json or markdown
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// First-family exponent (two-family form)
    #[arg(long)]
    p1: Option<usize>,
    /// Exponent p (general form)
    #[arg(long)]
    p: Option<usize>,
    /// Column index k
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id (e.g. EQ-3.23) or `all`
    #[arg(long)]
    id: String,
    /// numeric or symbolic
    #[arg(long, default_value = "numeric")]
    mode: String,
    /// Cap on degree-driving ranges in numeric mode
    #[arg(long, value_name = "N")]
    max_p: Option<usize>,
    /// Cap on degree sums in symbolic mode
    #[arg(long, value_name = "N")]
    max_sym: Option<usize>,
    /// Extra random grid points per identity when --seed is given
    #[arg(long, value_name = "N")]
    random_cases: Option<usize>,
    /// Restrict the operator/recurrence checks (EQ-5.1, EQ-5.2) to one b
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Restrict the operator/recurrence checks to one binomial order r
    #[arg(long)]
    r: Option<usize>,
    /// Output format: json (default) or markdown/csv for a plain summary
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct BfileArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Sequence layout: rows, column or diagonal
    #[arg(long, default_value = "rows")]
    linearize: String,
    /// Column index for --linearize column
    #[arg(long)]
    k: Option<usize>,
    /// Offset from the row end for --linearize diagonal
    #[arg(long, default_value_t = 0)]
    offset: usize,
    /// Number of sequence entries to emit
    #[arg(long)]
    count: usize,
}

/// Which family form the flags selected.
enum Family {
    Bivariate {
        a1: Scalar,
        b1: Scalar,
        a2: Scalar,
        b2: Scalar,
        p2: usize,
    },
    General {
        a: Scalar,
        b: Scalar,
        r: usize,
        factors: Vec<Factor>,
    },
}

impl Family {
    /// Degree of row `p`.
    fn row_degree(&self, p: usize) -> usize {
        match self {
            Family::Bivariate { p2, .. } => p + p2,
            Family::General { r, factors, .. } => {
                r * p + factors.iter().map(|f| f.r * f.p).sum::<usize>()
            }
        }
    }

    fn value(&self, p: usize, k: i64) -> Scalar {
        match self {
            Family::Bivariate { a1, b1, a2, b2, p2 } => gsn2(
                &gsn_core::BivariateParams::new(
                    a1.clone(),
                    b1.clone(),
                    a2.clone(),
                    b2.clone(),
                    p,
                    *p2,
                ),
                k,
            ),
            Family::General { a, b, r, factors } => gsn_explicit(
                &ParamSpec::new(a.clone(), b.clone(), *r, p, factors.clone()),
                k,
            ),
        }
    }

    fn table(&self, rows: usize) -> NumberTable {
        match self {
            Family::Bivariate { a1, b1, a2, b2, p2 } => triangle(a1, b1, a2, b2, *p2, rows),
            Family::General { a, b, r, factors } => gsn_table(
                &ParamSpec::new(a.clone(), b.clone(), *r, 0, factors.clone()),
                rows,
            ),
        }
    }
}

fn parse_scalar(
    name: &str,
    flag: &Option<String>,
    symbolic: &[String],
    required: bool,
) -> AppResult<Scalar> {
    if symbolic.iter().any(|s| s == name) {
        return Ok(Scalar::var(name));
    }
    match flag {
        Some(text) => {
            let r: Rational = text
                .parse()
                .map_err(|e: GsnError| AppError::usage(e.to_string()))?;
            Ok(Scalar::Rat(r))
        }
        None if required => Err(AppError::usage(format!(
            "missing required parameter --{name}"
        ))),
        None => Ok(Scalar::zero()),
    }
}

fn parse_factor(text: &str) -> AppResult<Factor> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(AppError::usage(format!(
            "--factor expects `alpha,beta,r_s,p_s`, got `{text}`"
        )));
    }
    let alpha: Rational = parts[0]
        .trim()
        .parse()
        .map_err(|e: GsnError| AppError::usage(e.to_string()))?;
    let beta: Rational = parts[1]
        .trim()
        .parse()
        .map_err(|e: GsnError| AppError::usage(e.to_string()))?;
    let r: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| AppError::usage(format!("bad factor order `{}`", parts[2])))?;
    let p: usize = parts[3]
        .trim()
        .parse()
        .map_err(|_| AppError::usage(format!("bad factor exponent `{}`", parts[3])))?;
    Ok(Factor {
        alpha: Scalar::Rat(alpha),
        beta: Scalar::Rat(beta),
        r,
        p,
    })
}

fn resolve_family(args: &FamilyArgs) -> AppResult<Family> {
    let symbolic: Vec<String> = args
        .symbolic
        .as_deref()
        .unwrap_or("")
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let general_form =
        args.a.is_some() || args.b.is_some() || args.r.is_some() || !args.factors.is_empty();
    let bivariate_form = args.a1.is_some()
        || args.b1.is_some()
        || args.a2.is_some()
        || args.b2.is_some()
        || args.p2.is_some();
    let symbolic_general = symbolic.iter().any(|s| s == "a" || s == "b");
    let symbolic_bivariate = symbolic
        .iter()
        .any(|s| matches!(s.as_str(), "a1" | "b1" | "a2" | "b2"));
    if (general_form || symbolic_general) && (bivariate_form || symbolic_bivariate) {
        return Err(AppError::usage(
            "mix of general (--a/--b/--r/--factor) and two-family (--a1/--b1/--a2/--b2/--p2) flags",
        ));
    }
    if general_form || symbolic_general {
        let a = parse_scalar("a", &args.a, &symbolic, true)?;
        let b = parse_scalar("b", &args.b, &symbolic, true)?;
        let r = args.r.unwrap_or(1);
        let factors = args
            .factors
            .iter()
            .map(|f| parse_factor(f))
            .collect::<AppResult<Vec<_>>>()?;
        Ok(Family::General { a, b, r, factors })
    } else {
        let p2 = args.p2.unwrap_or(0);
        let a1 = parse_scalar("a1", &args.a1, &symbolic, true)?;
        let b1 = parse_scalar("b1", &args.b1, &symbolic, true)?;
        // the second family is irrelevant when p2 = 0
        let a2 = parse_scalar("a2", &args.a2, &symbolic, p2 > 0)?;
        let b2 = parse_scalar("b2", &args.b2, &symbolic, p2 > 0)?;
        Ok(Family::Bivariate { a1, b1, a2, b2, p2 })
    }
}

fn cmd_triangle(cfg: &CliConfig, args: &TriangleArgs) -> AppResult<()> {
    let family = resolve_family(&args.family)?;
    let degree = family.row_degree(args.rows);
    cfg.check_degree(degree)
        .map_err(|d| AppError::degree_guard(d, cfg.max_degree))?;
    let table = family.table(args.rows);
    let text = match args.format.unwrap_or(cfg.format) {
        OutputFormat::Csv => table_to_csv(&table),
        OutputFormat::Json => table_to_json(&table),
        OutputFormat::Markdown => table_to_markdown(&table),
        OutputFormat::Bfile => {
            return Err(AppError::usage(
                "use the `bfile` subcommand for b-file output",
            ))
        }
    };
    print!("{text}");
    if !text.ends_with('\n') {
        println!();
    }
    Ok(())
}

fn cmd_eval(cfg: &CliConfig, args: &EvalArgs) -> AppResult<()> {
    let family = resolve_family(&args.family)?;
    let p = match (&family, args.p1, args.p) {
        (Family::Bivariate { .. }, Some(p1), None) => p1,
        (Family::Bivariate { .. }, None, None) => {
            return Err(AppError::usage("missing --p1"));
        }
        (Family::General { .. }, None, Some(p)) => p,
        (Family::General { .. }, None, None) => {
            return Err(AppError::usage("missing --p"));
        }
        _ => {
            return Err(AppError::usage(
                "use --p1 with the two-family form and --p with the general form",
            ));
        }
    };
    let degree = family.row_degree(p);
    cfg.check_degree(degree)
        .map_err(|d| AppError::degree_guard(d, cfg.max_degree))?;
    println!("{}", family.value(p, args.k));
    Ok(())
}

fn render_reports(reports: &[VerifyReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let rendered: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("report to json"))
                .collect();
            format!("{}\n", serde_json::Value::Array(rendered))
        }
        _ => {
            let mut out = String::new();
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{status} {} [{}] cases={} grid: {}\n",
                    r.identity, r.mode, r.cases, r.grid
                ));
                for f in &r.failures {
                    out.push_str(&format!(
                        "  counterexample {} lhs={} rhs={}\n",
                        f.assignment, f.lhs, f.rhs
                    ));
                }
            }
            out
        }
    }
}

fn cmd_verify(cfg: &CliConfig, args: &VerifyArgs) -> AppResult<()> {
    let mode: Mode = args.mode.parse().map_err(|e: String| AppError::usage(e))?;
    let mut bounds = Bounds::default();
    if let Some(p) = args.max_p {
        bounds.numeric_degree = p;
    }
    if let Some(s) = args.max_sym {
        bounds.symbolic_degree = s;
    }
    bounds.seed = cfg.seed;
    if let Some(n) = args.random_cases {
        bounds.random_cases = n;
    }
    if let Some(text) = &args.b {
        let b: Rational = text
            .parse()
            .map_err(|e: GsnError| AppError::usage(e.to_string()))?;
        bounds.scope_b = Some(b);
    }
    bounds.scope_r = args.r;
    if bounds.numeric_degree > cfg.max_degree || bounds.symbolic_degree > cfg.max_degree {
        return Err(AppError::degree_guard(
            bounds.numeric_degree.max(bounds.symbolic_degree),
            cfg.max_degree,
        ));
    }
    let reports = if args.id == "all" {
        run_all(mode, &bounds)
    } else {
        vec![run_identity(&args.id, mode, &bounds)
            .map_err(|e| AppError::usage(e.to_string()))?]
    };
    print!(
        "{}",
        render_reports(&reports, args.format.unwrap_or(OutputFormat::Json))
    );
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(AppError {
            code: EXIT_VERIFY_FAILED,
            message: format!(
                "{} of {} identity runs failed",
                reports.iter().filter(|r| !r.passed()).count(),
                reports.len()
            ),
        })
    }
}

fn cmd_bfile(cfg: &CliConfig, args: &BfileArgs) -> AppResult<()> {
    let family = resolve_family(&args.family)?;
    let linearization = match args.linearize.as_str() {
        "rows" => Linearization::Rows,
        "column" => {
            let k = args
                .k
                .ok_or_else(|| AppError::usage("--linearize column requires --k"))?;
            Linearization::Column { k }
        }
        "diagonal" => Linearization::Diagonal {
            offset: args.offset,
        },
        other => {
            return Err(AppError::usage(format!(
                "unknown linearization `{other}` (expected rows, column or diagonal)"
            )))
        }
    };
    if args.count == 0 {
        return Err(AppError::usage("--count must be at least 1"));
    }
    // rows needed to produce `count` entries
    let rows = match linearization {
        Linearization::Rows => {
            let mut total = 0usize;
            let mut p = 0usize;
            loop {
                total += family.row_degree(p) + 1;
                if total >= args.count {
                    break p;
                }
                p += 1;
            }
        }
        _ => args.count.saturating_sub(1),
    };
    let degree = family.row_degree(rows);
    cfg.check_degree(degree)
        .map_err(|d| AppError::degree_guard(d, cfg.max_degree))?;
    let table = family.table(rows);
    let text = table_to_bfile(&table, linearization, args.count)
        .map_err(|e| AppError::usage(e.to_string()))?;
    print!("{text}");
    Ok(())
}

fn run() -> AppResult<()> {
    let cli = Cli::parse();
    let cfg = CliConfig::resolve(cli.config.as_deref(), cli.max_degree, cli.seed)
        .map_err(|e| AppError::usage(format!("{e:#}")))?;
    match &cli.command {
        Command::Triangle(args) => cmd_triangle(&cfg, args),
        Command::Eval(args) => cmd_eval(&cfg, args),
        Command::Verify(args) => cmd_verify(&cfg, args),
        Command::Bfile(args) => cmd_bfile(&cfg, args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
