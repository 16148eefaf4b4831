use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};
use tropgr::combinat::KSubset;
use tropgr::planar::{planar_basis_vector, planar_combination};
use tropgr::rational::{frac, int, parse_rational};
use tropgr::Rational;

fn tropgr(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tropgr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tropgr");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn subset(n: usize, e: &[usize]) -> KSubset {
    KSubset::new(n, e).unwrap()
}

fn weight_four_3_12_json() -> String {
    const TERMS: [(i64, [usize; 3]); 12] = [
        (-1, [1, 4, 11]),
        (1, [1, 4, 12]),
        (-1, [1, 8, 10]),
        (1, [1, 8, 11]),
        (1, [1, 9, 10]),
        (-1, [2, 4, 7]),
        (1, [2, 4, 11]),
        (1, [2, 5, 7]),
        (1, [3, 4, 7]),
        (-1, [5, 7, 10]),
        (1, [5, 8, 10]),
        (1, [6, 7, 10]),
    ];
    let c: Vec<(KSubset, Rational)> = TERMS.iter().map(|(v, e)| (subset(12, e), int(*v))).collect();
    serde_json::to_string(&planar_combination(3, 12, &c).unwrap()).unwrap()
}

#[test]
fn duality_passes() {
    for (k, n, size) in [("3", "6", 14), ("2", "5", 5)] {
        let out = tropgr(&["duality", "--k", k, "--n", n], None);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["identity"], true);
        assert_eq!(v["size"], size);
        assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn weight_of_weight_four_3_12_vector() {
    let out = tropgr(&["weight", "--in", "-"], Some(&weight_four_3_12_json()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["pk_weight"], "4");
    assert_eq!(v["nc_weight"], "4");
    assert_eq!(v["agree"], true);
}

#[test]
fn decompose_zero_is_empty() {
    let out = tropgr(&["decompose", "--in", r#"{"k":3,"n":6,"rows":[["0","0","0"],["0","0","0"]]}"#], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn rho_then_psi_round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("tropgr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let t = r#"{"k":3,"n":6,"rows":[["0","2","1/2"],["3","0","1"]]}"#;
    let pi_path = dir.join("pi.json");
    let out = tropgr(&["rho", "--in", t, "--out", pi_path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let back = tropgr(&["psi", "--in", pi_path.to_str().unwrap()], None);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(json(&back), serde_json::from_str::<Value>(t).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bounded_two_block_gives_known_vertices() {
    let h = serde_json::to_string(&planar_basis_vector(&subset(6, &[2, 3, 6])).unwrap()).unwrap();
    let out = tropgr(&["bounded", "--in", &h, "--edges"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let parse = |s: &Value| -> Rational { parse_rational(s.as_str().unwrap()).unwrap() };
    let mut got: Vec<Vec<Rational>> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            let r: Vec<Rational> = row.as_array().unwrap().iter().map(parse).collect();
            r.iter().map(|x| x - r[0]).collect()
        })
        .collect();
    got.sort();
    let third = frac(1, 3);
    let mut want: Vec<Vec<Rational>> = [
        [int(-1), int(-1), int(-1), -third, -third, -third],
        [-third * int(2), -third * int(2), -third * int(2), int(-1), int(-1), int(-1)],
    ]
    .iter()
    .map(|r| r.iter().map(|x| x - r[0]).collect())
    .collect();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
}

#[test]
fn diameter_of_three_split_holds() {
    let h = serde_json::to_string(&planar_basis_vector(&subset(6, &[2, 4, 6])).unwrap()).unwrap();
    let out = tropgr(&["diameter", "--in", &h], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["max_coordinate_spread"], "1");
    assert_eq!(v["within_dilate"], true);
}

#[test]
fn verify_is_deterministic_and_thread_independent() {
    let a = tropgr(&["verify", "--k", "3", "--n", "6", "--seed", "5", "--samples", "20"], None);
    let b = tropgr(&["verify", "--k", "3", "--n", "6", "--seed", "5", "--samples", "20", "--threads", "4"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);
}

#[test]
fn schema_errors_exit_two_with_pointer() {
    let out = tropgr(&["psi", "--in", r#"{"k":2,"n":4,"entries":{"1,2":"0"},"extra":1}"#], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/extra"));
    let out = tropgr(&["decompose", "--in", r#"{"k":3,"n":6,"rows":[["0","0","0"],["0","five","0"]]}"#], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/rows/1/1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tropgr(&["duality", "--k", "3"], None).status.code(), Some(2));
    assert_eq!(tropgr(&["duality", "--k", "7", "--n", "14"], None).status.code(), Some(2));
    assert_eq!(tropgr(&["weight", "--in", "/nonexistent/file.json"], None).status.code(), Some(2));
}

#[test]
fn non_positive_input_is_rejected() {
    // π_13 + π_24 > min(π_12 + π_34, π_14 + π_23) fails the positive relation.
    let pi = r#"{"k":2,"n":4,"entries":{"1,2":"0","1,3":"1","1,4":"0","2,3":"0","2,4":"1","3,4":"0"}}"#;
    let out = tropgr(&["bounded", "--in", pi], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a positive"));
}
