use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use rainbow_cli::report::ReportFile;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn rainbow(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rainbow").chain(args.iter().copied());
    let code = rainbow_cli::run(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

const TETRA: &str = r#"{"facets": [["a","b","c"],["a","b","d"],["a","c","d"],["b","c","d"]], "classes": [["a"],["b"],["c","d"]]}"#;
const SQUARE: &str = r#"{"facets": [["a","b"],["b","c"],["c","d"],["a","d"]], "classes": [["a","c"],["b","d"]]}"#;
const TWO_EDGES: &str = r#"{"facets": [["a","b"],["c","d"]], "classes": [["a","c"],["b","d"]]}"#;

#[test]
fn meshulam_on_tetrahedron_boundary() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tetra.json", TETRA);
    let r = rainbow(&["check", &f, "--theorem", "meshulam", "--field", "q"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("rainbow simplices: 2\n  a b c\n  a b d\n"), "{}", r.out);
}

#[test]
fn torus_betti() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "torus7.json");
    assert_eq!(rainbow(&["gen", "torus7", "--out", &t]).code, 0);
    let r = rainbow(&["betti", &t, "--field", "q"]);
    assert_eq!(r.out, "β̃ = (0, 2, 1) over Q\n");
}

#[test]
fn alternating_square_meets_the_condition() {
    // singleton classes only need to be nonempty and the whole square is
    // connected, so every subset passes
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cycle4.json", SQUARE);
    let r = rainbow(&["check", &f, "--theorem", "meshulam", "--field", "q"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.contains("rainbow simplices: 4\n"));
}

#[test]
fn failing_hypothesis_exits_one_and_keeps_witnesses() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "edges.json", TWO_EDGES);
    let r = rainbow(&["check", &f, "--theorem", "meshulam", "--field", "q"]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("fail       vanish S={0,1} [Q]: β̃_0(K_{0,1}) = 1"), "{}", r.out);
    assert!(r.out.contains("rainbow simplices: 2\n  a b\n  c d\n"), "{}", r.out);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = write(
        &dir,
        "missing.json",
        r#"{"facets": [["a","b","c"],["a","b","d"],["a","c","d"],["b","c","d"]], "classes": [["a"],["b"],["c"]]}"#,
    );
    let r = rainbow(&["check", &missing, "--theorem", "meshulam"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("vertex d is uncolored"), "{}", r.err);

    let repeated = write(&dir, "rep.json", r#"{"facets": [["a","a","b"]]}"#);
    let r = rainbow(&["info", &repeated]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("repeats vertex `a`"), "{}", r.err);

    let broken = write(&dir, "broken.json", "{\"facets\": [[\"a\",\n ]]}");
    let r = rainbow(&["info", &broken]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("broken.json:2:"), "{}", r.err);

    assert_eq!(rainbow(&["betti", &path(&dir, "nope.json")]).code, 2);
    assert_eq!(rainbow(&["frobnicate"]).code, 2);
    assert_eq!(rainbow(&["betti", &broken, "--field", "4"]).code, 2);
    assert_eq!(rainbow(&["gen", "klein_bottle"]).code, 2);
}

#[test]
fn arity_and_precondition_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tetra.json", TETRA);
    let r = rainbow(&["check", &f, "--theorem", "three"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("three"), "{}", r.err);
    let t = path(&dir, "t.json");
    rainbow(&["gen", "torus7", "--out", &t]);
    let colored = fs::read_to_string(&t).unwrap().trim_end().trim_end_matches('}').to_string()
        + r#", "classes": [["0","1"],["2","3"],["4","5","6"]]}"#;
    let t = write(&dir, "tc.json", &colored);
    let r = rainbow(&["audit-duality", &t, "--field", "q"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("not a homology 2-sphere"), "{}", r.err);
}

#[test]
fn duality_audit_passes_on_sphere() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tetra.json", TETRA);
    let r = rainbow(&["audit-duality", &f, "--field", "2", "--field", "q"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert_eq!(r.out.matches("result: pass").count(), 2);
}

#[test]
fn json_report_matches_exit_status() {
    let dir = TempDir::new().unwrap();
    for (name, body) in [("tetra", TETRA), ("square", SQUARE), ("edges", TWO_EDGES)] {
        let f = write(&dir, &format!("{name}.json"), body);
        let j = path(&dir, &format!("{name}.report.json"));
        let r = rainbow(&["check", &f, "--theorem", "meshulam", "--field", "2", "--field", "q", "--json", &j]);
        let report = ReportFile::from_json(&fs::read_to_string(&j).unwrap()).unwrap();
        assert_eq!(report.schema_version, 1);
        if r.code == 0 {
            assert!(report.report.all_hold && !report.report.rainbow_witnesses.is_empty(), "{name}");
        } else {
            assert!(!report.report.all_hold, "{name}");
        }
    }
}

#[test]
fn relative_homology_of_triangle_rel_boundary() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "tri.json", r#"{"facets": [["a","b","c"]]}"#);
    let l = write(&dir, "bd.txt", "a b\nb c\na c\n");
    let r = rainbow(&["relbetti", &k, "--sub", &l, "--field", "q"]);
    assert_eq!(r.out, "H(K, L) = (0, 0, 1) over Q\n", "{}", r.err);
}

#[test]
fn subdivision_and_sperner_files() {
    let dir = TempDir::new().unwrap();
    let s = path(&dir, "s.json");
    assert_eq!(rainbow(&["gen", "sphere(2)", "--out", &s]).code, 0);
    let sd = path(&dir, "sd.json");
    let r = rainbow(&["sd", &s, "--out", &sd]);
    assert_eq!(r.out, "wrote sd(simplex_boundary(2)) (24 facets)\n");
    let r = rainbow(&["info", &sd]);
    assert!(r.out.contains("f-vector: (14, 36, 24)"), "{}", r.out);
    assert_eq!(rainbow(&["betti", &sd, "--field", "2"]).out, "β̃ = (0, 0, 1) over GF(2)\n");

    let sp = path(&dir, "sp.json");
    let r = rainbow(&["sperner", "--dim", "2", "--depth", "2", "--out", &sp]);
    assert_eq!(r.out, "wrote sperner(2,2) (36 facets, 1 rainbow)\n");
    let r = rainbow(&["rainbow", &sp]);
    assert!(r.out.starts_with("rainbow simplices: 1\n"));
    let r = rainbow(&["check", &sp, "--theorem", "meshulam", "--field", "q"]);
    assert_eq!(r.code, 0, "{}", r.out);
}

#[test]
fn text_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tetra.json", TETRA);
    let a = rainbow(&["check", &f, "--theorem", "sphere"]);
    let b = rainbow(&["check", &f, "--theorem", "sphere"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    assert_eq!(rainbow(&["gen", "rp2_6"]).out, rainbow(&["gen", "rp2_6"]).out);
}

fn binary(args: &[&str], stdin: &[u8]) -> (i32, Vec<u8>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), out.stdout)
}

#[test]
fn gen_into_check_pipeline() {
    let (code, sperner) = binary(&["sperner", "--dim", "3", "--depth", "1"], b"");
    assert_eq!(code, 0);
    let first = binary(&["check", "-", "--theorem", "sphere", "--field", "q"], &sperner);
    let second = binary(&["check", "-", "--theorem", "sphere", "--field", "q"], &sperner);
    assert_eq!(first, second);
    // Δ³ has a boundary, so the closed-manifold hypothesis fails
    assert_eq!(first.0, 1);
    let (code, out) = binary(&["rainbow", "-"], &sperner);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().starts_with("rainbow simplices: 1\n"));
    assert!(Path::new(env!("CARGO_BIN_EXE_rainbow")).exists());
}
