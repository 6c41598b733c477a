//! End-to-end runs of the `wesym` binary.

use std::path::Path;
use std::process::{Command, Output};

fn wesym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wesym"))
        .args(args)
        .env_remove("PRECISION")
        .env_remove("BUDGET")
        .env_remove("FORMAT")
        .env_remove("CACHE_DIR")
        .env_remove("SEED")
        .env_remove("THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = wesym(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn coeffs(v: &serde_json::Value) -> Vec<u64> {
    v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse().unwrap()).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn poly_file(coeffs: &[u64]) -> String {
    let mut s = format!("{}\n", coeffs.len() - 1);
    for c in coeffs {
        s += &format!("{c}\n");
    }
    s
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn enum_reed_muller_text() {
    let o = wesym(&["enum", "rm", "q=2", "r=1", "m=3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let values: Vec<&str> = text.lines().map(|l| l.split(" = ").nth(1).unwrap()).collect();
    assert_eq!(values, ["1", "0", "0", "0", "14", "0", "0", "0", "1"]);
    assert!(text.starts_with("A_0 = 1\n"));
}

#[test]
fn enum_from_file_matches_hand_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "x2.txt", "# X2\n2 3 6\n1 0 0 1 1 1\n0 1 0 1 1 1\n0 0 1 1 1 1\n");
    let v = json(&["enum", &format!("file={path}"), "--format", "json"]);
    // (x^2 + y^2)^3.
    assert_eq!(coeffs(&v), [1, 0, 3, 0, 3, 0, 1]);
}

#[test]
fn enum_ternary_golay() {
    let v = json(&["enum", "golay12_ternary", "--format", "json"]);
    assert_eq!(coeffs(&v), [1, 0, 0, 0, 0, 0, 264, 0, 0, 440, 0, 0, 24]);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "2 2 3\n1 0 1\n0 1 7\n");
    let o = wesym(&["enum", &format!("file={path}")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn budget_errors_exit_3_with_the_dual_hint() {
    let o = wesym(&["enum", "--direct", "--budget", "2^20", "rm", "q=2", "r=5", "m=7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("drop --direct"));
    // Without --direct the dual route is taken.
    let v = json(&["enum", "--budget", "2^20", "--format", "json", "rm", "q=2", "r=5", "m=7"]);
    let c = v["coeffs"].as_array().unwrap();
    // RM(5,7) is the extended Hamming code of length 128: distance 4 and
    // A_4 = N (N - 1) (N - 2) / 24.
    assert_eq!(c.len(), 129);
    assert_eq!((c[0].as_str(), c[2].as_str(), c[4].as_str()), (Some("1"), Some("0"), Some("85344")));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(wesym(&["--precision", "32", "enum", "hamming8"]).status.code(), Some(64));
    assert_eq!(wesym(&["--budget", "2^41", "enum", "hamming8"]).status.code(), Some(64));
}

#[test]
fn env_overrides_flags_defaults() {
    let o = Command::new(env!("CARGO_BIN_EXE_wesym")).args(["enum", "hamming8"]).env("FORMAT", "json").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 4);
    let o = Command::new(env!("CARGO_BIN_EXE_wesym")).args(["sym", "hamming8"]).env("PRECISION", "128").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["precision"], 128);
}

#[test]
fn sym_named_codes() {
    let v = json(&["sym", "hamming8"]);
    assert_eq!(v["iso"]["type"], "S4");
    assert_eq!((v["proj_order"].as_u64(), v["full_order"].as_u64()), (Some(24), Some(192)));
    assert_eq!(v["elements"].as_array().unwrap().len(), 24);
    let v = json(&["sym", "rm", "q=3", "r=1", "m=2"]);
    assert_eq!((v["iso"]["type"].as_str(), v["iso"]["parameter"].as_u64()), (Some("Cyclic"), Some(3)));
}

#[test]
fn sym_zero_code_shape() {
    let v = json(&["sym", "--poly", "zero-code", "n=5"]);
    assert_eq!((v["kind"].as_str(), v["case"].as_str()), (Some("Infinite"), Some("ZeroCode")));
}

#[test]
fn sym_trivial_group_carries_a_certificate() {
    let v = json(&["sym", "rm", "q=4", "r=2", "m=2"]);
    assert_eq!(v["proj_order"], 1);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn tables_binary_and_ternary_match() {
    let o = wesym(&["tables", "--field", "2", "--max-m", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = wesym(&["tables", "--field", "3", "--max-m", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn tables_quaternary_reports_the_two_dihedral_cells() {
    // RM_4(0,1) has enumerator x^4 + 3y^4, a rescaling of x^4 + y^4, whose
    // group the binary reference itself lists as D_4. The quaternary
    // reference says D_8 there and at the dual cell (2,1).
    let o = wesym(&["tables", "--field", "4", "--max-m", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let bad: Vec<(u64, u64)> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["matches"] == false)
        .map(|c| (c["r"].as_u64().unwrap(), c["m"].as_u64().unwrap()))
        .collect();
    assert_eq!(bad, [(0, 1), (2, 1)]);
    let cell = |r: u64, m: u64| v["cells"].as_array().unwrap().iter().find(|c| c["r"] == r && c["m"] == m).unwrap()["computed"].clone();
    assert_eq!(cell(2, 2), "{Id}");
    assert_eq!(cell(3, 2), "{Id}");
    assert_eq!(cell(0, 1), "D_4");
}

#[test]
fn macwilliams_fixes_hamming8_and_infers_k() {
    let dir = tempfile::tempdir().unwrap();
    let h8 = [1, 0, 0, 0, 14, 0, 0, 0, 1];
    let path = write(dir.path(), "h8.txt", &poly_file(&h8));
    let with_k = stdout(&wesym(&["macwilliams", "--poly", &path, "--q", "2", "--k", "4"]));
    let inferred = stdout(&wesym(&["macwilliams", "--poly", &path, "--q", "2"]));
    assert_eq!(with_k, inferred);
    let values: Vec<&str> = with_k.lines().skip(1).collect();
    assert_eq!(values, h8.map(|c| format!("{c}/1")));
    // 31 codewords is not a power of 2.
    let path = write(dir.path(), "odd.txt", &poly_file(&[1, 30]));
    assert_eq!(wesym(&["macwilliams", "--poly", &path, "--q", "2"]).status.code(), Some(64));
}

#[test]
fn decompose_rm_2_5_over_gleason() {
    let dir = tempfile::tempdir().unwrap();
    let counts = coeffs(&json(&["enum", "rm", "q=2", "r=2", "m=5", "--format", "json"]));
    let path = write(dir.path(), "rm25.txt", &poly_file(&counts));
    let v = json(&["decompose", "--poly", &path, "--gleason"]);
    assert_eq!(v["unique"], true);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        assert!(t["coeff"].as_str().unwrap().contains('/'));
    }
}

#[test]
fn decompose_rejects_non_members() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.txt", &poly_file(&[1, 0, 0, 0, 13, 0, 0, 0, 1]));
    let o = wesym(&["decompose", "--poly", &path, "--gleason"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_binary_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let pairs: Vec<u64> = (0..=14).map(|i| if i % 2 == 0 { binomial(7, i / 2) } else { 0 }).collect();
    let path = write(dir.path(), "pairs7.txt", &poly_file(&pairs));
    let v = json(&["classify", "--poly", &path, "--q", "2"]);
    assert_eq!(v["case"], "SumOfPairs");
    assert_eq!(v["structure"], "ClassificationOpen");
    assert!(!v["notes"].as_array().unwrap().is_empty());
    let v = json(&["classify", "pairs", "q=5", "copies=3"]);
    assert_eq!(v["structure"], "DirectSumOfPairs(3)");
    let v = json(&["classify", "hamming8"]);
    assert_eq!(v["kind"], "Finite");
}

#[test]
fn dual_and_divisibility() {
    let dual = stdout(&wesym(&["dual", "rm", "q=2", "r=1", "m=4"]));
    assert!(dual.starts_with("2 11 16\n"));
    assert_eq!(stdout(&wesym(&["divisibility", "golay24"])).lines().next(), Some("divisibility: 4"));
    let v = json(&["divisibility", "golay12_ternary", "--format", "json"]);
    assert_eq!((v["divisibility"].as_u64(), v["witness_verified"].as_bool()), (Some(3), Some(true)));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let fresh = wesym(&["enum", "golay24", "--format", "json"]);
    let first = wesym(&["enum", "golay24", "--format", "json", "--cache-dir", cache]);
    let entries: Vec<_> = std::fs::read_dir(cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = wesym(&["enum", "golay24", "--format", "json", "--cache-dir", cache]);
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    let text_fresh = wesym(&["enum", "golay24"]);
    let text_hit = wesym(&["enum", "golay24", "--cache-dir", cache]);
    assert_eq!(text_fresh.stdout, text_hit.stdout);
}
