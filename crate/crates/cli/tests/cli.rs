use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropskel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const UNIT: &str = r#"{"points": [[0,0],[1,0],[0,1]], "triangles": [[0,1,2]]}"#;

fn three_delta() -> String {
    let t = tropskel::lattice::Triangulation::dilated_simplex(3);
    serde_json::to_string(&tropskel::io::TriangulationFile::from_triangulation(&t)).unwrap()
}

#[test]
fn check_passes_on_unit_triangle() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "unit.json", UNIT);
    let o = run(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(g, n) = (0, 3)"), "{out}");
    assert!(out.contains("all stages pass"));
}

#[test]
fn check_reports_genus_one_for_three_delta() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "t.json", &three_delta());
    let o = run(&["--format", "json", "check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let details: Vec<&str> = v["stages"].as_array().unwrap().iter().map(|s| s["detail"].as_str().unwrap()).collect();
    assert!(details.contains(&"(g, n) = (1, 9)"));
}

#[test]
fn non_unimodular_fails_validation() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "bad.json", r#"{"points": [[0,0],[2,0],[0,1]], "triangles": [[0,1,2]]}"#);
    let o = run(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("validate             FAIL"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "broken.json", "{ \"points\": [");
    assert_eq!(run(&["check", f.to_str().unwrap()]).status.code(), Some(2));
    let g = write(dir.path(), "odd.json", r#"{"hello": 1}"#);
    assert_eq!(run(&["validate", g.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["--direction", "1", "quiver", "+"]).status.code(), Some(2));
}

#[test]
fn quiver_json_lists_arrows() {
    let o = run(&["--format", "json", "quiver", "+-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k0_rank"], 2);
    assert_eq!(v["quiver"]["arrows"], serde_json::json!([[0, 1], [0, 1]]));
    let r = run(&["--format", "json", "quiver", "--reversed", "+-"]);
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["quiver"]["arrows"], serde_json::json!([[1, 0], [1, 0]]));
}

#[test]
fn hom_between_simples_of_the_kronecker_quiver() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "m.json", r#"{"dims": [1, 0], "maps": [[], []]}"#);
    let n = write(dir.path(), "n.json", r#"{"dims": [0, 1], "maps": [[[]], [[]]]}"#);
    let o = run(&["--format", "json", "hom", "--pattern", "+-", m.to_str().unwrap(), n.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["hom"]["h0"].as_i64(), v["hom"]["h1"].as_i64()), (Some(0), Some(2)));
    assert_eq!(v["euler_form"], -2);
}

#[test]
fn json_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "t.json", &three_delta());
    for cmd in ["check", "synthesize", "diagram", "sweep"] {
        let args = ["--format", "json", "--seed", "7", cmd, f.to_str().unwrap()];
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn written_files_parse_back() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "t.json", &three_delta());
    let dual = run(&["--format", "json", "dual", f.to_str().unwrap()]);
    let g = tropskel::io::parse_tropical(&stdout(&dual)).unwrap();
    assert_eq!(g.num_vertices(), 9);
    let trop = write(dir.path(), "trop.json", &stdout(&dual));
    let o = run(&["invariants", trop.to_str().unwrap()]);
    assert!(stdout(&o).contains("(g, n) = (1, 9)"));

    let sk = dir.path().join("skeleton.json");
    let o = run(&["synthesize", f.to_str().unwrap(), "-o", sk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let data: tropskel::ribbon::RibbonData = serde_json::from_str(&std::fs::read_to_string(&sk).unwrap()).unwrap();
    let x = tropskel::ribbon::RibbonGraph::try_from(data).unwrap();
    let s = tropskel::ribbon::surface_invariants(&x).unwrap();
    assert_eq!((s.genus, s.punctures), (1, 9));
    assert!(stdout(&run(&["invariants", sk.to_str().unwrap()])).contains("(g, n) = (1, 9)"));
}

#[test]
fn dot_and_svg_renderings() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "unit.json", UNIT);
    assert!(stdout(&run(&["--format", "dot", "dual", f.to_str().unwrap()])).starts_with("graph tropical"));
    assert!(stdout(&run(&["--format", "svg", "dual", f.to_str().unwrap()])).starts_with("<svg"));
    assert!(stdout(&run(&["--format", "dot", "diagram", f.to_str().unwrap()])).contains("digraph charts"));
}
