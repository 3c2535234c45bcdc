use std::process::Command;

fn gkm(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gkm")).args(args).env_remove("GKM_THREADS").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gkm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn grassmannian_listing() {
    let (code, out, _) = gkm(&["info", "--grassmannian", "2", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[0], "GKM graph with 6 nodes, valency 4 and axial function:");
    assert_eq!(lines[1], "13 -> 12 => (0, -1, 1, 0)");
    assert_eq!(lines[12], "34 -> 24 => (0, -1, 1, 0)");
}

#[test]
fn product_curve_classes_from_saved_file() {
    let path = tmp("g24sq.json");
    let p = path.to_str().unwrap();
    let (code, _, _) = gkm(&["info", "--product", "grassmannian:2:4", "grassmannian:2:4", "--save", p]);
    assert_eq!(code, 0);
    let (code, out, _) = gkm(&["curve-classes", "--file", p]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "34,12 -> 24,12: (1, 0), Chern number: 4"));
    assert!(out.lines().any(|l| l == "12,13 -> 12,12: (0, 1), Chern number: 4"));
    let (code, out, _) = gkm(&[
        "gw", "--file", p, "--beta", "1,1", "--ev", "1:pt@12,12", "--ev", "2:pd@34,12/24,12 + pd@12,13/12,12",
    ]);
    assert_eq!((code, out.as_str()), (0, "0\n"));
}

#[test]
fn save_load_round_trip_is_byte_identical() {
    let a = tmp("g2b.json");
    let b = tmp("g2b-again.json");
    assert_eq!(gkm(&["validate", "--fixture", "g2b", "--save", a.to_str().unwrap()]).0, 0);
    assert_eq!(gkm(&["validate", "--file", a.to_str().unwrap(), "--save", b.to_str().unwrap()]).0, 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read_to_string(&a).unwrap(), gkm::fixtures::source("g2b").unwrap());
}

#[test]
fn bps_row_and_table() {
    assert_eq!(gkm(&["bps", "--k", "2", "--dmax", "7"]).1, "1 -1 2 -7 31 -156 863\n");
    let (_, table, _) = gkm(&["bps", "--kmax", "5", "--dmax", "7"]);
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0], "k\td=1\td=2\td=3\td=4\td=5\td=6\td=7");
    assert_eq!(rows[6], "5\t-1\t-6\t-100\t-2450\t-75050\t-2647580\t-102998030");
}

#[test]
fn exit_codes() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, r#"{"rank": 2, "vertices": ["a", "b"], "edges": [{"src": "a", "dst": "b", "weight": [0, 0]}]}"#).unwrap();
    let (code, out, _) = gkm(&["validate", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("zero weight"));
    assert_eq!(gkm(&["info", "--file", bad.to_str().unwrap()]).0, 2);
    assert_eq!(gkm(&["frobnicate"]).0, 1);
    assert_eq!(gkm(&["info"]).0, 1);
    assert_eq!(gkm(&["info", "--pn", "2", "--flag", "3"]).0, 1);
    assert_eq!(gkm(&["info", "--fixture", "nonesuch"]).0, 1);
    assert_eq!(gkm(&["info", "--file", "/nonexistent/graph.json"]).0, 1);
    assert_eq!(gkm(&["--help"]).0, 0);
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["qh", "--grassmannian", "2", "4", "--a", "c1", "--b", "pt@12", "--chern-bound", "4"];
    let runs: Vec<String> = ["1", "3", "8"]
        .iter()
        .map(|t| {
            let mut a = vec!["--threads", t];
            a.extend_from_slice(&args);
            let (code, out, _) = gkm(&a);
            assert_eq!(code, 0);
            out
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert!(runs.iter().all(|r| r == &runs[0]));
    let env = Command::new(env!("CARGO_BIN_EXE_gkm")).args(args).env("GKM_THREADS", "2").output().unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), runs[0]);
}

#[test]
fn other_subcommands() {
    assert_eq!(gkm(&["betti", "--fixture", "cycle8"]).1, "2 4 2\n");
    assert_eq!(gkm(&["gw", "--fixture", "cycle8", "--beta", "1,1,0,0,0,0"]).1, "1/(t1^2*t2 - t1*t2^2)\n");
    assert_eq!(gkm(&["gw", "--fixture", "g2b", "--beta", "0,1", "--ev", "1:pt@id"]).1, "1\n");
    assert_eq!(gkm(&["integrate", "--pn", "2", "--class", "c1^2"]).1, "9\n");
    assert_eq!(gkm(&["cy", "--k", "2", "--d", "2", "--localize"]).1, "-7/8\n-7/8\n");
    assert_eq!(gkm(&["cy", "--k", "1", "--d", "2", "--spec", "k1:3"]).1, "3/8\n");
    let (code, out, _) = gkm(&["chern", "--pn", "2"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.ends_with(": 3")));
    let (_, out, _) = gkm(&["connection", "--pn", "1"]);
    assert_eq!(out, "1 -> 0: \n");
    let (_, out, _) = gkm(&["realizable", "--fixture", "twisted-flag"]);
    assert!(out.starts_with("B2 -> B1: pass"));
    let (_, out, _) = gkm(&["gw", "--pn", "1", "--beta", "1", "--psi", "1:1", "--cotangent-psi"]);
    assert_eq!(out, "-2\n");
    assert_eq!(gkm(&["gw", "--pn", "1", "--beta", "1", "--psi", "1:1"]).0, 1);
}
