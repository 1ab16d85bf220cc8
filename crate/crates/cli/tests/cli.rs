use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polycycle"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args, None, &[]);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn records(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).expect("one JSON value per line")).collect()
}

#[test]
fn proper_53_census_has_39_records() {
    assert_eq!(records(&ok(&["enumerate", "--r", "5", "--q", "3", "--filter", "proper"])).len(), 39);
}

#[test]
fn chiral_split_adds_mirror_images() {
    let recs = records(&ok(&["enumerate", "--r", "5", "--q", "3", "--filter", "proper", "--chiral-split"]));
    assert_eq!(recs.len(), 51);
    let right = recs.iter().filter(|r| r["orientation"] == "right").count();
    assert_eq!(right, 12);
}

#[test]
fn golden_catalogs() {
    let cases: [(&str, &[&str]); 8] = [
        ("proper-3-3", &["--r", "3", "--q", "3", "--filter", "proper"]),
        ("proper-4-3", &["--r", "4", "--q", "3", "--filter", "proper"]),
        ("proper-3-4", &["--r", "3", "--q", "4", "--filter", "proper"]),
        ("proper-5-3", &["--r", "5", "--q", "3", "--filter", "proper"]),
        ("proper-3-5", &["--r", "3", "--q", "5", "--filter", "proper"]),
        ("helicene-4-3", &["--r", "4", "--q", "3", "--filter", "helicene"]),
        ("helicene-5-3", &["--r", "5", "--q", "3", "--filter", "helicene", "--max-faces", "7"]),
        ("helicene-3-5", &["--r", "3", "--q", "5", "--filter", "helicene", "--max-faces", "10"]),
    ];
    for (name, args) in cases {
        let mut argv = vec!["enumerate"];
        argv.extend_from_slice(args);
        let got: Vec<String> = records(&ok(&argv))
            .iter()
            .map(|r| {
                let chiral = if r["chiral"].as_bool().unwrap() { "chiral" } else { "achiral" };
                format!("{} {} {chiral}", r["faces"], r["code"].as_str().unwrap())
            })
            .collect();
        let want = std::fs::read_to_string(fixture(&format!("golden/{name}.txt"))).unwrap();
        assert_eq!(got, want.lines().collect::<Vec<_>>(), "{name}");
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["enumerate", "--r", "3", "--q", "5", "--max-faces", "9", "--format", "pmap"];
    let one = run(&args, None, &[("RAYON_NUM_THREADS", "1")]);
    let many = run(&args, None, &[("RAYON_NUM_THREADS", "4")]);
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn cube_minus_edge_is_accepted() {
    let path = fixture("fixtures/cube-minus-edge.edges");
    let rec = &records(&ok(&["recognize", "--r", "4", "--q", "3", path.to_str().unwrap()]))[0];
    assert_eq!(rec["verdict"], "accepted");
    assert_eq!(rec["stats"]["p_r"], 4);
    let text = std::fs::read_to_string(path).unwrap();
    let out = run(&["recognize", "--r", "4", "--q", "3"], Some(&text), &[]);
    assert_eq!(records(&String::from_utf8(out.stdout).unwrap())[0]["verdict"], "accepted");
}

#[test]
fn wrong_parameters_are_rejected() {
    let path = fixture("fixtures/cube-minus-edge.edges");
    let rec = &records(&ok(&["recognize", "--r", "5", "--q", "3", path.to_str().unwrap()]))[0];
    assert_eq!(rec["verdict"], "rejected");
}

#[test]
fn vertex_split_is_not_embeddable() {
    let path = fixture("fixtures/vertex-split-34.pmap");
    let rec = &records(&ok(&["embed", path.to_str().unwrap()]))[0];
    assert_eq!(rec["embeddable"], false);
    assert!(rec["obstruction"]["detail"].is_string());
}

#[test]
fn realization_from_edges_matches_fixture() {
    let edges = fixture("fixtures/vertex-split-34.edges");
    let got = ok(&["realize", "--r", "3", "--q", "4", edges.to_str().unwrap()]);
    let want = std::fs::read_to_string(fixture("fixtures/vertex-split-34.pmap")).unwrap();
    assert_eq!(got, want);
    // canonical PMAP is a fixed point
    let out = run(&["realize"], Some(&got), &[]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), got);
}

#[test]
fn classify_reports_folding() {
    let path = fixture("fixtures/vertex-split-34.pmap");
    let rec = &records(&ok(&["classify", path.to_str().unwrap()]))[0];
    assert_eq!(rec["proper"], false);
    assert_eq!(rec["vertex_injective"], false);
    assert_eq!(rec["fiber_histograms"]["vertex"]["2"], 1);
}

#[test]
fn embed_certificate_and_obstruction() {
    let pair = "pmap 4 3 6\n1: 2 4\n2: 3 5 1\n3: 6 2\n4: 1 5\n5: 4 2 6\n6: 5 3\nouter: 1 4\n";
    let out = run(&["embed"], Some(pair), &[]);
    let rec = &records(&String::from_utf8(out.stdout).unwrap())[0];
    assert_eq!(rec["embeddable"], true);
    assert_eq!(rec["scale"], 1);
    assert_eq!(rec["dimension"], 3);
    assert_eq!(rec["labels"].as_array().unwrap().len(), 6);
    let path = fixture("fixtures/cube-minus-edge.edges");
    let rec = &records(&ok(&["embed", "--r", "4", "--q", "3", path.to_str().unwrap()]))[0];
    assert_eq!(rec["embeddable"], false);
}

#[test]
fn extremal_range() {
    let recs = records(&ok(&["extremal", "--r", "5", "--q", "3", "--x-range", "1..8"]));
    let n: Vec<u64> = recs.iter().map(|r| r["n_of_x"].as_u64().unwrap()).collect();
    assert_eq!(n, [0, 0, 1, 2, 3, 5, 6, 8]);
    assert!(recs.iter().all(|r| r["n_of_x"] == r["formula"] && r.get("witnesses").is_none()));
    let with = records(&ok(&["extremal", "--r", "5", "--q", "3", "--x-range", "8..8", "--witnesses"]));
    assert_eq!(with[0]["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn tessellation_dump() {
    let cube = ok(&["tess", "dump", "--r", "4", "--q", "3", "--coronas", "5"]);
    assert!(cube.starts_with("pmap 4 3 8\n"));
    let square = ok(&["tess", "dump", "--r", "4", "--q", "4", "--coronas", "1"]);
    assert!(square.starts_with("pmap 4 4 16\n"));
}

#[test]
fn symmetry_census_lines() {
    let recs = records(&ok(&["symmetry", "--census", "--r", "3", "--q", "3"]));
    let classes: Vec<u64> = recs.iter().map(|r| r["classes"].as_u64().unwrap()).collect();
    assert_eq!(classes, [1, 1, 1]);
    assert!(recs.iter().all(|r| r["chiral"] == 0));
}

#[test]
fn render_and_kernel() {
    let path = fixture("fixtures/vertex-split-34.pmap");
    let svg = ok(&["render", path.to_str().unwrap()]);
    assert_eq!(svg.matches("class=\"face\"").count(), 6);
    let rec = &records(&ok(&["kernel", path.to_str().unwrap()]))[0];
    assert_eq!(rec["elementary"], false);
}

#[test]
fn reciprocal_of_a_pentagon() {
    let pmap = "pmap 5 3 5\n1: 2 5\n2: 1 3\n3: 2 4\n4: 3 5\n5: 1 4\nouter: 1 2\n";
    let out = run(&["reciprocal", "--format", "json"], Some(pmap), &[]);
    let rec = &records(&String::from_utf8(out.stdout).unwrap())[0];
    assert_eq!(rec["stats"]["p_r"], 11);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--r", "5"], None, &[]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--r", "4", "--q", "4"], None, &[]).status.code(), Some(2));
    assert_eq!(run(&["recognize"], Some("0 1\n"), &[]).status.code(), Some(2));
    assert_eq!(run(&["embed"], Some("pmap 4 3 2\n"), &[]).status.code(), Some(1));
    assert_eq!(run(&["extremal", "--r", "5", "--q", "3", "--x-range", "4..2"], None, &[]).status.code(), Some(2));
    let budget = run(&["enumerate", "--r", "3", "--q", "5"], None, &[("POLYCYCLE_BUDGET", "10")]);
    assert_eq!(budget.status.code(), Some(1));
    assert_eq!(run(&["--help"], None, &[]).status.code(), Some(0));
}
