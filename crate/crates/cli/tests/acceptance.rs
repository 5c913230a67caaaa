//! Acceptance suite for the command-line contract: deterministic output,
//! CSV round-trip at the declared precision, the exit-code contract, and the
//! self-test budget.

use qfermi_cli::table::fmt_sig;
use std::process::{Command, Output};
use std::time::Instant;

fn qfermi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfermi"))
        .args(args)
        .output()
        .expect("binary should launch")
}

/// One fixed flag set per subcommand.
fn fixed_invocations() -> Vec<Vec<&'static str>> {
    vec![
        vec![
            "betas",
            "--algebra",
            "A",
            "--n-max",
            "8",
            "--q",
            "0.5",
            "--exact",
        ],
        vec!["betas", "--algebra", "B", "--n-max", "6", "--exact"],
        vec![
            "basic", "--kind", "fermion", "--n-max", "10", "--q", "0.7", "--exact",
        ],
        vec![
            "basic",
            "--kind",
            "boson",
            "--n-max",
            "6",
            "--q",
            "0.5",
            "--factorial",
        ],
        vec!["spectrum", "--n-max", "6", "--q", "0.5"],
        vec![
            "jd",
            "--kind",
            "fermionic",
            "--coeffs",
            "1,2,0,3",
            "--q",
            "0.5",
        ],
        vec![
            "jd", "--kind", "bosonic", "--coeffs", "0,1,1", "--q", "0.5", "--at", "2.0",
        ],
        vec!["fermifn", "--nu", "1.5", "--y-list", "0.1,0.5,0.9,2.0"],
        vec!["dist", "--q", "0.5", "--t", "0.25", "--sweep", "E:-2:2:21"],
        vec![
            "thermo",
            "--q",
            "0.5",
            "--quantity",
            "P",
            "--sweep",
            "z:0.01:5:11:log",
        ],
        vec![
            "thermo",
            "--q",
            "0.5",
            "--quantity",
            "S",
            "--sweep",
            "T:0.5:2:4",
            "--z",
            "0.3",
        ],
        vec![
            "thermo",
            "--q",
            "0.5",
            "--quantity",
            "mu",
            "--sweep",
            "T:0.02:0.2:5",
            "--fermi-energy",
            "1",
        ],
        vec!["virial", "--q-list", "0.3,0.7,1.0", "--order", "4"],
        vec!["mu", "--q", "0.7", "--sweep", "T:0.02:0.35:6"],
        vec!["selftest"],
    ]
}

#[test]
fn acceptance_10_selftest_green_and_fast() {
    let start = Instant::now();
    let out = qfermi(&["selftest"]);
    let elapsed = start.elapsed();
    assert!(
        out.status.success(),
        "selftest failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(elapsed.as_secs() < 30, "selftest took {elapsed:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 20);
    assert!(!text.contains("FAIL "));
    println!("acceptance 10a selftest: PASS ({elapsed:?}, exit 0)");
}

#[test]
fn acceptance_10_byte_identical_output() {
    for args in fixed_invocations() {
        let first = qfermi(&args);
        let second = qfermi(&args);
        assert_eq!(
            first.stdout, second.stdout,
            "output of {args:?} differs between runs"
        );
        assert_eq!(first.status.code(), second.status.code());
        // and the JSON mirror is deterministic too
        let mut json_args = args.clone();
        json_args.push("--format");
        json_args.push("json");
        let jf = qfermi(&json_args);
        let js = qfermi(&json_args);
        assert_eq!(jf.stdout, js.stdout, "json output of {args:?} differs");
    }
    println!("acceptance 10b determinism: PASS (every subcommand, csv and json)");
}

#[test]
fn acceptance_10_exit_code_contract() {
    // 0 on success
    assert_eq!(
        qfermi(&["virial", "--q-list", "0.5"]).status.code(),
        Some(0)
    );
    // 2 on usage errors, message on the diagnostic stream
    let bad_q = qfermi(&["betas", "--algebra", "A", "--n-max", "3", "--q", "1.5"]);
    assert_eq!(bad_q.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_q.stderr).contains("deformation parameter"));
    assert!(bad_q.stdout.is_empty());
    let bad_flag = qfermi(&["betas", "--algebra", "Z", "--n-max", "3"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_sweep = qfermi(&["dist", "--q", "0.5", "--sweep", "E:5:1:10"]);
    assert_eq!(bad_sweep.status.code(), Some(2));
    // 1 on numeric failure, with the table still emitted and marked
    let diverging = qfermi(&[
        "fermifn", "--nu", "1.5", "--y-list", "0.5,2.0", "--method", "series",
    ]);
    assert_eq!(diverging.status.code(), Some(1));
    let text = String::from_utf8_lossy(&diverging.stdout);
    assert!(text.contains("ERROR"), "expected an ERROR marker:\n{text}");
    assert!(
        text.lines().count() == 3,
        "both rows still emitted:\n{text}"
    );
    // 1 when the self-test is perturbed via the test hook
    assert_eq!(
        qfermi(&["selftest", "--inject-failure"]).status.code(),
        Some(1)
    );
    println!("acceptance 10c exit codes: PASS (0 success, 1 numeric/self-test, 2 usage)");
}

#[test]
fn acceptance_10_csv_round_trip() {
    for args in fixed_invocations() {
        if args[0] == "selftest" {
            continue;
        }
        let out = qfermi(&args);
        let text = String::from_utf8(out.stdout).unwrap();
        let mut lines = text.lines();
        let header = lines.next().expect("header row");
        let width = header.split(',').count();
        for line in lines {
            assert_eq!(
                line.split(',').count(),
                width,
                "ragged row in {args:?}: {line}"
            );
            for cell in line.split(',') {
                if let Ok(v) = cell.parse::<f64>() {
                    // re-rendering the parsed value reproduces the cell
                    assert_eq!(
                        fmt_sig(v, 12),
                        cell,
                        "cell `{cell}` of {args:?} does not round-trip"
                    );
                }
            }
        }
        // LF endings, no CR anywhere
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
    }
    println!("acceptance 10d csv round-trip: PASS (all tables, declared precision)");
}

#[test]
fn json_mirrors_csv_values() {
    let args = [
        "thermo",
        "--q",
        "0.5",
        "--quantity",
        "P",
        "--sweep",
        "z:0.1:2:5",
    ];
    let csv = String::from_utf8(qfermi(&args).stdout).unwrap();
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: serde_json::Value =
        serde_json::from_slice(&qfermi(&json_args).stdout).expect("valid json");
    let rows = json.as_array().unwrap();
    let mut csv_lines = csv.lines();
    let header: Vec<&str> = csv_lines.next().unwrap().split(',').collect();
    for (row, line) in rows.iter().zip(csv_lines) {
        for (name, cell) in header.iter().zip(line.split(',')) {
            let jv = &row[*name];
            if let Ok(v) = cell.parse::<f64>() {
                assert_eq!(jv.as_f64().unwrap(), v, "column {name}");
            } else {
                assert_eq!(jv.as_str().unwrap(), cell, "column {name}");
            }
        }
    }
}

#[test]
fn out_flag_writes_identical_bytes() {
    let dir = std::env::temp_dir().join("qfermi-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("virial.csv");
    let direct = qfermi(&["virial", "--q-list", "0.3,1.0", "--order", "2"]);
    let to_file = qfermi(&[
        "virial",
        "--q-list",
        "0.3,1.0",
        "--order",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, direct.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn precision_flag_controls_digits() {
    let coarse = qfermi(&[
        "virial",
        "--q-list",
        "1.0",
        "--order",
        "2",
        "--precision",
        "4",
    ]);
    let text = String::from_utf8(coarse.stdout).unwrap();
    assert!(text.contains("0.1768"), "{text}");
    let bad = qfermi(&["virial", "--q-list", "1.0", "--precision", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}
