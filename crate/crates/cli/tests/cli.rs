use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn definition(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../definitions")
        .join(format!("{name}.toml"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewring"))
        .args(args)
        .env_remove("SKEWRING_TUPLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn structured(def: &str, args: &[&str]) -> String {
    let path = definition(def);
    let mut full = vec!["check", path.to_str().unwrap()];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "structured"]);
    let out = run(&full);
    assert!(code(&out) <= 1, "{}", stderr(&out));
    stdout(&out)
}

#[test]
fn validate_reports_ring_summary() {
    let path = definition("z2-squared-swap");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("size 4, unital, automorphism, orbit (0,2)"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn validate_rejects_malformed_documents() {
    let dir = TempDir::new().unwrap();
    let bad_kind = write(
        &dir,
        "kind.toml",
        "schema_version = \"skewring/1\"\nlabel = \"x\"\n[ring]\nkind = \"banana\"\n",
    );
    assert_eq!(code(&run(&["validate", bad_kind.to_str().unwrap()])), 2);

    let missing = dir.path().join("missing.toml");
    assert_eq!(code(&run(&["validate", missing.to_str().unwrap()])), 2);
}

#[test]
fn validate_names_the_failing_triple() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "nonassoc.toml",
        r#"schema_version = "skewring/1"
label = "nonassoc"
[ring]
kind = "table"
add = [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]
mul = [[0,0,0,0],[0,1,2,3],[0,0,1,1],[0,1,3,2]]
"#,
    );
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(
        err.contains("associativity") && err.contains("[2, 1, 2]"),
        "{err}"
    );
}

#[test]
fn check_exit_codes() {
    let z4 = definition("z4-trivial-extension-negated");
    let z4 = z4.to_str().unwrap();
    let out = run(&[
        "check",
        z4,
        "--property",
        "q-alpha-skew-armendariz",
        "--deg",
        "1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("value = (0,2)"), "{}", stdout(&out));

    let z2 = definition("z2-squared-swap");
    assert_eq!(
        code(&run(&[
            "check",
            z2.to_str().unwrap(),
            "--property",
            "reduced"
        ])),
        0
    );

    let out = run(&[
        "check",
        z4,
        "--property",
        "q-alpha-skew-armendariz",
        "--deg",
        "9",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn check_requires_matching_envelope_flags() {
    let z2 = definition("z2-squared-swap");
    let z2 = z2.to_str().unwrap();
    assert_eq!(
        code(&run(&["check", z2, "--property", "alpha-skew-armendariz"])),
        2
    );
    assert_eq!(
        code(&run(&["check", z2, "--property", "reduced", "--deg", "1"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "check",
            z2,
            "--property",
            "laurent-q-alpha-skew",
            "--deg",
            "1"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "check",
            z2,
            "--property",
            "no-such-property",
            "--deg",
            "1"
        ])),
        2
    );
    let out = run(&[
        "check",
        z2,
        "--property",
        "laurent-q-alpha-skew",
        "--window",
        "0,1,0,1",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&[
        "check",
        z2,
        "--property",
        "powerseries-q-alpha-skew",
        "--trunc",
        "2",
        "--tail",
        "zero",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn budget_comes_from_the_environment() {
    let z2 = definition("z2-squared-swap");
    let out = Command::new(env!("CARGO_BIN_EXE_skewring"))
        .args([
            "check",
            z2.to_str().unwrap(),
            "--property",
            "q-alpha-skew-armendariz",
            "--deg",
            "2",
        ])
        .env("SKEWRING_TUPLE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_skewring"))
        .args(["check", z2.to_str().unwrap(), "--property", "reduced"])
        .env("SKEWRING_TUPLE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn structured_failures_replay() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&str]); 5] = [
        (
            "z4-trivial-extension-negated",
            &["--property", "q-alpha-skew-armendariz", "--deg", "1"],
        ),
        ("z4-trivial-extension-negated", &["--property", "reduced"]),
        (
            "z4-trivial-extension-negated",
            &["--property", "laurent-q-alpha-skew", "--window", "1,0,1,0"],
        ),
        (
            "z4-trivial-extension-negated",
            &["--property", "powerseries-q-alpha-skew", "--trunc", "2"],
        ),
        (
            "z2-squared-swap",
            &["--property", "alpha-skew-armendariz", "--deg", "1"],
        ),
    ];
    for (i, (def, args)) in cases.iter().enumerate() {
        let record = structured(def, args);
        assert!(record.contains("outcome = \"fails\""), "{record}");
        let path = write(&dir, &format!("v{i}.toml"), &record);
        let out = run(&["replay", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{def} {args:?}: {}", stderr(&out));
    }
}

#[test]
fn holding_records_are_rechecked() {
    let dir = TempDir::new().unwrap();
    let record = structured(
        "gf4-frobenius",
        &["--property", "q-alpha-skew-armendariz", "--deg", "1"],
    );
    assert!(record.contains("outcome = \"holds\""));
    let path = write(&dir, "holds.toml", &record);
    assert_eq!(code(&run(&["replay", path.to_str().unwrap()])), 0);

    let flipped = record.replace("builtin = \"frobenius\"", "builtin = \"identity\"");
    let path = write(&dir, "renamed.toml", &flipped);
    assert_eq!(code(&run(&["replay", path.to_str().unwrap()])), 1);
}

#[test]
fn tampered_records_are_rejected() {
    let dir = TempDir::new().unwrap();
    let record = structured(
        "z4-trivial-extension-negated",
        &["--property", "q-alpha-skew-armendariz", "--deg", "1"],
    );
    assert!(record.contains("\nvalue = 2\n"), "{record}");

    let zeroed = record
        .replace("\nvalue = 2\n", "\nvalue = 0\n")
        .replace("value_label = \"(0,2)\"", "value_label = \"(0,0)\"");
    let path = write(&dir, "zeroed.toml", &zeroed);
    let out = run(&["replay", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("(0,2)"), "{}", stderr(&out));

    let half = record.replace("\nvalue = 2\n", "\nvalue = 0\n");
    let path = write(&dir, "half.toml", &half);
    assert_eq!(code(&run(&["replay", path.to_str().unwrap()])), 1);

    let out_of_range = record.replace("\nmiddle = 4\n", "\nmiddle = 99\n");
    assert_ne!(out_of_range, record);
    let path = write(&dir, "range.toml", &out_of_range);
    assert_eq!(code(&run(&["replay", path.to_str().unwrap()])), 2);

    let path = write(&dir, "garbage.toml", "this is not a record");
    assert_eq!(code(&run(&["replay", path.to_str().unwrap()])), 2);
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["--property", "q-alpha-skew-armendariz", "--deg", "1"];
    let first = structured("z4-trivial-extension-negated", &args);
    for _ in 0..3 {
        assert_eq!(structured("z4-trivial-extension-negated", &args), first);
    }
}

#[test]
fn corpus_single_entry_and_unknown_entry() {
    let out = run(&[
        "corpus",
        "--entry",
        "z4-trivial-extension-negated",
        "--deg",
        "1",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("corpus: all checks passed"));

    assert_eq!(code(&run(&["corpus", "--entry", "nope", "--deg", "1"])), 2);
    assert_eq!(code(&run(&["corpus", "--deg", "1"])), 2);
}

#[test]
fn corpus_all_passes_and_is_deterministic() {
    let first = run(&["corpus", "--all", "--deg", "2"]);
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    assert!(!stdout(&first).contains("FAIL"));
    let second = run(&["corpus", "--all", "--deg", "2"]);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn corpus_reports_expectation_mismatches() {
    let dir = TempDir::new().unwrap();
    let manifest = write(
        &dir,
        "manifest.toml",
        r#"schema_version = "skewring-corpus/1"

[[entry]]
name = "z2-squared-swap"
builder = "swap_on_z2_squared"

[[entry.expect]]
property = "reduced"
envelope = { kind = "exhaustive" }
outcome = "fails"
source = "computed"
"#,
    );
    let out = run(&[
        "corpus",
        "--entry",
        "z2-squared-swap",
        "--deg",
        "1",
        "--seeds",
        "2",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(
        stdout(&out).contains("FAIL expect reduced (exhaustive) fails, got holds"),
        "{}",
        stdout(&out)
    );

    let broken = write(
        &dir,
        "broken.toml",
        "schema_version = \"skewring-corpus/9\"\n",
    );
    let out = run(&[
        "corpus",
        "--all",
        "--deg",
        "1",
        "--manifest",
        broken.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}
