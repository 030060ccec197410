use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use unidom::constructions::construct_bipartite;
use unidom::emit_graph6;
use unidom_cli::{run_with, verify_file, Expectations};

const EXTREMAL_10_3: &str = "# a11 a12 a21 a22 b11 b12 c1 x1 y1 y2
10 15
7 4
7 5
7 6
8 0
8 1
9 2
9 3
4 0
4 1
4 2
4 3
6 0
6 1
6 2
6 3
";

fn unidom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unidom")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("unidom").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn validated(schema: &str, text: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{schema}.json"));
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let doc: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{text}");
    assert_eq!(doc["schema"], "unidom/1");
    doc
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn bound_json() {
    let o = unidom(&["bound", "--n", "10", "--gamma", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = validated("bound", &stdout(&o));
    assert_eq!(doc["m_bipartite"], 15);
    assert_eq!(doc["m_fischermann"], 18);
    assert_eq!(doc["vizing"], "63/2");
    assert_eq!(doc["phi"], 0);
}

#[test]
fn bound_tables() {
    let (code, out, _) = in_process(&["bound", "--n", "6..9", "--gamma", "2..3", "--json"]);
    assert_eq!(code, 0);
    let doc = validated("bound", &out);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);

    let (code, out, _) = in_process(&["bound", "--n", "6..7", "--gamma", "2", "--tsv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n\tgamma\tm_bipartite\tm_fischermann\tvizing\tphi\n6\t2\t6\t6\t12\t0\n7\t2\t9\t10\t35/2\t0\n");

    let (code, out, _) = in_process(&["bound", "--n", "10", "--gamma", "3"]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().contains("m_bipartite"));
}

#[test]
fn bound_usage_errors() {
    assert_eq!(in_process(&["bound", "--n", "10", "--gamma", "3", "--json", "--tsv"]).0, 2);
    assert_eq!(in_process(&["bound", "--n", "5", "--gamma", "2"]).0, 2);
    assert_eq!(in_process(&["bound", "--n", "2..5", "--gamma", "2"]).0, 2);
    assert_eq!(in_process(&["bound", "--n", "x", "--gamma", "2"]).0, 2);
    assert_eq!(in_process(&["frobnicate"]).0, 2);
    assert_eq!(in_process(&["--help"]).0, 0);
}

#[test]
fn construct_verify_case_one() {
    let o = unidom(&["construct", "--family", "bipartite", "--n", "6", "--gamma", "2", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), emit_graph6(&construct_bipartite(6, 2).unwrap().graph));
    assert!(!stderr(&o).contains("FAIL"));
}

#[test]
fn construct_verify_whole_sweep() {
    for family in ["bipartite", "fischermann"] {
        for gamma in 2..=6u64 {
            for n in 3 * gamma..=3 * gamma + 12 {
                let (n, g) = (n.to_string(), gamma.to_string());
                let (code, _, err) = in_process(&["construct", "--family", family, "--n", &n, "--gamma", &g, "--verify"]);
                assert_eq!(code, 0, "{family} ({n}, {g}): {err}");
            }
        }
    }
    assert_eq!(in_process(&["construct", "--family", "star", "--n", "5", "--verify"]).0, 0);
}

#[test]
fn construct_json_and_formats() {
    let (code, out, _) = in_process(&["construct", "--family", "bipartite", "--n", "10", "--gamma", "3", "--verify", "--json"]);
    assert_eq!(code, 0);
    let doc = validated("construct", &out);
    assert_eq!(doc["size"], 15);
    assert_eq!(doc["certificate"]["passed"], true);
    assert_eq!(doc["layout"]["names"][0], "x1");

    let (code, out, _) = in_process(&["construct", "--family", "fischermann", "--n", "7", "--gamma", "2", "--json"]);
    assert_eq!(code, 0);
    assert!(validated("construct", &out)["certificate"].is_null());

    let (_, dot, _) = in_process(&["construct", "--family", "bipartite", "--n", "10", "--gamma", "3", "--format", "dot"]);
    assert!(dot.contains("x1 (D_X)"));
    let (_, list, _) = in_process(&["construct", "--family", "bipartite", "--n", "6", "--gamma", "2", "--format", "edgelist"]);
    assert!(list.starts_with("6 6\n"));

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.g6");
    let p = path.to_str().unwrap();
    let (code, out, _) = in_process(&["construct", "--family", "bipartite", "--n", "6", "--gamma", "2", "--out", p]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(fs::read_to_string(&path).unwrap().trim(), "ESX_");
}

#[test]
fn construct_usage_errors() {
    assert_eq!(in_process(&["construct", "--family", "bipartite", "--n", "5", "--gamma", "2"]).0, 2);
    assert_eq!(in_process(&["construct", "--family", "bipartite", "--n", "6"]).0, 2);
    assert_eq!(in_process(&["construct", "--family", "star", "--n", "5", "--gamma", "2"]).0, 2);
    assert_eq!(in_process(&["construct", "--family", "petersen", "--n", "10"]).0, 2);
}

#[test]
fn verify_extremal_10_3() {
    let dir = TempDir::new().unwrap();
    let path = file(&dir, "extremal.txt", EXTREMAL_10_3);
    let cert = verify_file(&path, &Expectations { gamma: Some(3), size: Some(15) }).unwrap();
    assert!(cert.passed && cert.report.unique && cert.report.perfectly_dominated);
    assert_eq!(cert.report.gamma, 3);

    let o = unidom(&["verify", "--in", path.to_str().unwrap(), "--expect-gamma", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = validated("verify", &stdout(&o));
    assert_eq!(doc["report"]["min_sets"][0], serde_json::json!([7, 8, 9]));
    assert_eq!(doc["report"]["epn"]["7"], serde_json::json!([4, 5, 6]));
    assert_eq!(doc["report"]["perfect"], true);
}

#[test]
fn verify_negative_paths() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let cert = verify_file(&c4, &Expectations::default()).unwrap();
    assert!(!cert.report.unique && !cert.passed);
    let o = unidom(&["verify", "--in", c4.to_str().unwrap(), "--expect-gamma", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    let empty = file(&dir, "empty.g6", "D??\n");
    let (code, out, err) = in_process(&["verify", "--in", empty.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(validated("verify", &out)["report"]["gamma"], 5);
    assert!(err.contains("warning: isolated vertices"));

    let missing = dir.path().join("missing.g6");
    assert_eq!(in_process(&["verify", "--in", missing.to_str().unwrap()]).0, 2);
    let junk = file(&dir, "junk.g6", "not a graph\n");
    let (code, _, err) = in_process(&["verify", "--in", junk.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: cannot parse"));
}

#[test]
fn search_max_and_witnesses() {
    let dir = TempDir::new().unwrap();
    let w = dir.path().join("w.g6");
    let o = Command::new(env!("CARGO_BIN_EXE_unidom"))
        .args(["search", "--n", "7", "--gamma", "2", "--json", "--witnesses", w.to_str().unwrap()])
        .env("UNIDOM_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let doc = validated("search", &stdout(&o));
    assert_eq!(doc["max_size"], 9);
    assert_eq!(doc["complete"], true);
    let lines: Vec<String> = fs::read_to_string(&w).unwrap().lines().map(String::from).collect();
    assert_eq!(serde_json::json!(lines), doc["witnesses"]);
    assert!(stderr(&o).contains("scanned="));
    assert!(stderr(&o).contains("best=9"));
}

#[test]
fn search_count_and_limits() {
    let (code, out, _) = in_process(&["search", "--n", "6", "--gamma", "2", "--size", "7", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(validated("search", &out)["count"], 0);
    let (code, out, _) = in_process(&["search", "--n", "6", "--gamma", "2", "--size", "6", "--sequential"]);
    assert_eq!(code, 0);
    assert!(out.contains("classes=2"));

    let (code, out, _) = in_process(&["search", "--n", "8", "--gamma", "2", "--budget", "0"]);
    assert_eq!(code, 3);
    assert!(out.contains("complete=false"));
    assert_eq!(in_process(&["search", "--n", "11", "--gamma", "3"]).0, 2);
    assert_eq!(in_process(&["search", "--n", "6", "--gamma", "2", "--budget", "-1"]).0, 2);

    let o = Command::new(env!("CARGO_BIN_EXE_unidom"))
        .args(["search", "--n", "6", "--gamma", "2"])
        .env("UNIDOM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn complement_round_trip() {
    let dir = TempDir::new().unwrap();
    let g6 = emit_graph6(&construct_bipartite(6, 2).unwrap().graph);
    let g = file(&dir, "g.g6", &g6);
    let (code, out, _) = in_process(&["complement", "--in", g.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let doc = validated("complement", &out);
    let sides = [&doc["partition"]["a"], &doc["partition"]["b"]].map(|s| s.as_array().unwrap().len());
    assert_eq!(doc["size"].as_u64().unwrap() as usize + 6, sides[0] * sides[1]);
    let bc = file(&dir, "bc.g6", doc["graph6"].as_str().unwrap());
    let a: Vec<String> = doc["partition"]["a"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let (code, back, _) = in_process(&["complement", "--in", bc.to_str().unwrap(), "--side", &a.join(",")]);
    assert_eq!(code, 0);
    assert_eq!(back.trim(), g6);

    let k3 = file(&dir, "k3.g6", "Bw\n");
    assert_eq!(in_process(&["complement", "--in", k3.to_str().unwrap()]).0, 1);
    assert_eq!(in_process(&["complement", "--in", g.to_str().unwrap(), "--side", "0,1"]).0, 1);
    assert_eq!(in_process(&["complement", "--in", g.to_str().unwrap(), "--side", "9"]).0, 2);
}

#[test]
fn iso_command() {
    let dir = TempDir::new().unwrap();
    let fig = file(&dir, "extremal.txt", EXTREMAL_10_3);
    let built = file(&dir, "built.g6", &emit_graph6(&construct_bipartite(10, 3).unwrap().graph));
    let other = file(&dir, "other.g6", &emit_graph6(&construct_bipartite(10, 2).unwrap().graph));
    let (f, b, o) = (fig.to_str().unwrap(), built.to_str().unwrap(), other.to_str().unwrap());

    let (code, out, _) = in_process(&["iso", f, b, "--json"]);
    assert_eq!(code, 0);
    let doc = validated("iso", &out);
    assert_eq!(doc["isomorphic"], true);
    assert_eq!(doc["mapping"].as_array().unwrap().len(), 10);

    let (code, out, _) = in_process(&["iso", f, o]);
    assert_eq!(code, 1);
    assert_eq!(out, "not isomorphic\n");
    let (code, out, _) = in_process(&["iso", f, o, "--json"]);
    assert_eq!(code, 1);
    assert!(validated("iso", &out)["mapping"].is_null());
}
