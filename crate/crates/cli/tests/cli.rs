//! End-to-end tests of the `gsn` binary: flag grammar, output formats,
//! configuration precedence, and the stable exit-code contract.

use std::io::Write;
use std::process::{Command, Output};

use gsn_cli::output::table_from_csv;
use gsn_core::gsn::gsn_explicit;
use gsn_core::weyl::recurrence_51_factored;
use gsn_core::{triangle, Factor, ParamSpec, Scalar};

fn gsn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsn"))
        .args(args)
        .env_remove("GSN_MAX_DEGREE")
        .output()
        .expect("spawn gsn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn triangle_csv_roundtrips_to_the_table() {
    let out = gsn(&[
        "triangle", "--a1", "1", "--b1", "1", "--a2", "1", "--b2", "0", "--p2", "1", "--rows",
        "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let parsed = table_from_csv(&stdout(&out)).unwrap();
    let direct = triangle(
        &Scalar::one(),
        &Scalar::one(),
        &Scalar::one(),
        &Scalar::zero(),
        1,
        2,
    );
    assert_eq!(parsed, direct.rows);
}

#[test]
fn triangle_rows_zero_emits_single_row() {
    let out = gsn(&[
        "triangle", "--a1", "1", "--b1", "1", "--a2", "1", "--b2", "0", "--p2", "2", "--rows",
        "0",
    ]);
    assert!(out.status.success());
    // row p = 0 of this family is [0, 1, 1]
    assert_eq!(stdout(&out), "p,k,value\n0,0,0\n0,1,1\n0,2,1\n");
}

#[test]
fn triangle_general_family_agrees_with_the_recurrence() {
    let out = gsn(&[
        "triangle", "--a", "1", "--b", "0", "--r", "2", "--factor", "1,1,1,2", "--rows", "3",
    ]);
    assert!(out.status.success());
    let parsed = table_from_csv(&stdout(&out)).unwrap();
    let factors = vec![Factor {
        alpha: Scalar::one(),
        beta: Scalar::one(),
        r: 1,
        p: 2,
    }];
    let b = Scalar::zero();
    for (p, row) in parsed.iter().enumerate() {
        let params = ParamSpec::new(Scalar::one(), b.clone(), 2, p, factors.clone());
        assert_eq!(row.len(), params.degree() + 1);
        for (k, v) in row.iter().enumerate() {
            assert_eq!(*v, gsn_explicit(&params, k as i64), "explicit p={p} k={k}");
            if p >= 1 {
                assert_eq!(
                    *v,
                    recurrence_51_factored(&b, 2, &factors, p, k as i64).unwrap(),
                    "recurrence p={p} k={k}"
                );
            }
        }
    }
}

#[test]
fn eval_examples() {
    let out = gsn(&[
        "eval", "--a1", "1", "--b1", "1", "--a2", "1", "--b2", "0", "--p2", "2", "--p1", "2",
        "--k", "2",
    ]);
    assert_eq!(stdout(&out), "14\n");

    let out = gsn(&[
        "eval", "--a1", "1", "--b1", "1", "--a2", "1", "--b2", "0", "--p2", "1", "--p1", "3",
        "--k", "-2",
    ]);
    assert_eq!(stdout(&out), "0\n");

    let out = gsn(&["eval", "--symbolic", "a1,b1", "--p1", "2", "--p2", "0", "--k", "0"]);
    assert_eq!(stdout(&out), "b1^2\n");

    // rationals in the -n/d form
    let out = gsn(&[
        "eval", "--a1", "1/2", "--b1", "-3/2", "--p2", "0", "--p1", "1", "--k", "0",
    ]);
    assert_eq!(stdout(&out), "-3/2\n");
}

#[test]
fn verify_scoped_operator_identity() {
    let out = gsn(&[
        "verify", "--id", "EQ-5.2", "--b", "1", "--r", "2", "--max-p", "3",
    ]);
    assert!(out.status.success(), "{:?}", out);
    let text = stdout(&out);
    assert!(text.contains("\"identity\":\"EQ-5.2\""));
    assert!(text.contains("\"failures\":[]"));
}

#[test]
fn exit_codes_are_stable() {
    // 0: pass
    let ok = gsn(&["verify", "--id", "EQ-3.3", "--max-p", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    // 2: unknown identity id
    let unknown = gsn(&["verify", "--id", "EQ-9.9"]);
    assert_eq!(unknown.status.code(), Some(2));
    // 2: malformed rational
    let bad = gsn(&["eval", "--a1", "x", "--b1", "1", "--p2", "0", "--p1", "1", "--k", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    // 2: non-integer b-file value
    let frac = gsn(&[
        "bfile", "--a1", "1", "--b1", "1/2", "--a2", "1", "--b2", "0", "--p2", "1", "--count",
        "4",
    ]);
    assert_eq!(frac.status.code(), Some(2));
    // 3: degree guard
    let guarded = gsn(&[
        "triangle", "--a1", "1", "--b1", "1", "--a2", "1", "--b2", "0", "--p2", "1", "--rows",
        "80",
    ]);
    assert_eq!(guarded.status.code(), Some(3));
    // clap usage errors are also 2
    let usage = gsn(&["triangle", "--rows"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn bfile_layouts() {
    let out = gsn(&[
        "bfile", "--a1", "1", "--b1", "1", "--a2", "1", "--b2", "0", "--p2", "1", "--count", "6",
    ]);
    assert_eq!(stdout(&out), "1 0\n2 1\n3 0\n4 2\n5 1\n6 0\n");

    let out = gsn(&[
        "bfile", "--a1", "1", "--b1", "1", "--a2", "1", "--b2", "0", "--p2", "1", "--linearize",
        "diagonal", "--count", "5",
    ]);
    assert_eq!(stdout(&out), "1 1\n2 1\n3 1\n4 1\n5 1\n");

    // standard Stirling column k = 2: S(p,2) = 0, 0, 1, 3, 7, 15, ...
    let out = gsn(&[
        "bfile", "--a1", "1", "--b1", "0", "--p2", "0", "--linearize", "column", "--k", "2",
        "--count", "6",
    ]);
    assert_eq!(stdout(&out), "1 0\n2 0\n3 1\n4 3\n5 7\n6 15\n");
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gsn.conf");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "# defaults for this project").unwrap();
    writeln!(file, "max_degree = 5").unwrap();
    writeln!(file, "format = markdown").unwrap();
    drop(file);
    let path_str = path.to_str().unwrap();

    // config file applies: markdown default format, guard 5 rejects rows 6
    let out = Command::new(env!("CARGO_BIN_EXE_gsn"))
        .args(["triangle", "--a1", "1", "--b1", "0", "--p2", "0", "--rows", "2", "--config", path_str])
        .env_remove("GSN_MAX_DEGREE")
        .output()
        .unwrap();
    assert!(stdout(&out).starts_with("| p\\k |"));
    let out = Command::new(env!("CARGO_BIN_EXE_gsn"))
        .args(["triangle", "--a1", "1", "--b1", "0", "--p2", "0", "--rows", "6", "--config", path_str])
        .env_remove("GSN_MAX_DEGREE")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // environment overrides the file
    let out = Command::new(env!("CARGO_BIN_EXE_gsn"))
        .args(["triangle", "--a1", "1", "--b1", "0", "--p2", "0", "--rows", "6", "--config", path_str])
        .env("GSN_MAX_DEGREE", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // flag overrides the environment
    let out = Command::new(env!("CARGO_BIN_EXE_gsn"))
        .args(["triangle", "--a1", "1", "--b1", "0", "--p2", "0", "--rows", "6", "--config", path_str, "--max-degree", "4"])
        .env("GSN_MAX_DEGREE", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
