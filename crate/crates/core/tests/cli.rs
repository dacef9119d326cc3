//! Golden-file regression for the command-line surface, plus exit codes of
//! the real binary.

use std::path::PathBuf;
use std::process::Command;

use atkin_ut::cli::{run, scan_from_json, scan_to_json, spectral_from_json, spectral_to_json, RunConfig};
use clap::Parser;

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run_args(args: &str) -> String {
    let cfg = RunConfig::try_parse_from(std::iter::once("atkin").chain(args.split_whitespace())).unwrap();
    let out = run(&cfg).unwrap();
    assert!(out.success);
    out.text
}

#[test]
fn goldens() {
    let cases = [
        ("matrix --q 8 --j 3 --n 5 --coeffs", "matrix_3_5_8.txt"),
        ("matrix --q 9 --j 0 --n 12 --coeffs", "matrix_0_12_9.txt"),
        ("charpoly --q 3 --j 1 --n 4", "charpoly_1_4_3.txt"),
        ("slopes --q 9 --k 40 --m 4 --format json", "slopes_9_40_4.json"),
        ("split --q 9 --k 40 --m 4", "split_9_40_4.txt"),
        ("scan --q 2 --k 8..40 --alpha-max 4 --track 5/2 --format csv", "scan_2_8_40.csv"),
        ("scan --q 2 --k 8..98 --alpha-max 8", "scan_2_8_98.txt"),
    ];
    for (args, file) in cases {
        assert_eq!(run_args(args), golden(file), "{args}");
    }
}

#[test]
fn scan_table_lists_the_three_patterns() {
    let text = golden("scan_2_8_98.txt");
    for line in [
        "  k ≡ 1 mod 4: d = 2",
        "  k ≡ 0 mod 8: d = 3",
        "  k ≡ 4 mod 8: d = 1",
        "  k ≡ 0 mod 16: d = 5",
        "  k ≡ 8 mod 16: d = 1",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?}");
    }
    assert!(!text.contains("NOT constant"));
}

#[test]
fn json_round_trips() {
    let text = run_args("diag --q 8 --k 27 --format json");
    let back = spectral_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(atkin_ut::cli::emit_json(&spectral_to_json(&back)), text);

    let text = run_args("scan --q 3 --k 6..30 --alpha-max 3 --format json");
    let back = scan_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(atkin_ut::cli::emit_json(&scan_to_json(&back)), text);
}

#[test]
fn binary_exit_codes_and_out_file() {
    let bin = env!("CARGO_BIN_EXE_atkin");
    let ok = Command::new(bin).args(["charpoly", "--q", "3", "--j", "1", "--n", "4"]).output().unwrap();
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), golden("charpoly_1_4_3.txt"));

    let bad = Command::new(bin).args(["split", "--q", "9", "--k", "40"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("split requires --m"));

    let dir = std::env::temp_dir().join(format!("atkin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("m.txt");
    let st = Command::new(bin)
        .args(["matrix", "--q", "8", "--j", "3", "--n", "5", "--coeffs", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden("matrix_3_5_8.txt"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_atkin");
    let args = ["slopes", "--q", "4", "--k", "30", "--format", "json"];
    let a = Command::new(bin).args(args).output().unwrap().stdout;
    let b = Command::new(bin).args(args).output().unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn verify_passes() {
    let text = run_args("verify");
    assert!(text.trim_end().ends_with(" 0 failed"), "{text}");
}
