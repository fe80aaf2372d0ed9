use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn usvkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_usvkit")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_graph(dir: &Path, name: &str, n: usize, edges: &[(usize, usize)]) -> PathBuf {
    let mut s = format!("p usv {n} {}\n", edges.len());
    for (u, v) in edges {
        s.push_str(&format!("e {u} {v}\n"));
    }
    let path = dir.join(name);
    std::fs::write(&path, s).unwrap();
    path
}

#[test]
fn star_with_five_leaves_is_not_a_grid_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k15.graph", 6, &[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]);
    let o = usvkit(&["recognize", "--class", "usgv", p(&g)]);
    assert_eq!(code(&o), 10, "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict=no"));
}

#[test]
fn yes_verdict_writes_a_witness_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "c4.graph", 4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
    let w = dir.path().join("c4.layout");
    let o = usvkit(&["--format", "json", "recognize", "--class", "usgv", "--witness", p(&w), p(&g)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["witness"], p(&w));
    assert_eq!(code(&usvkit(&["verify", p(&w), p(&g)])), 0);

    // without --witness the layout lands next to the graph
    let o = usvkit(&["recognize", "--class", "usv", p(&g)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let default = dir.path().join("c4.graph.witness.layout");
    assert_eq!(code(&usvkit(&["verify", p(&default), p(&g)])), 0);
}

#[test]
fn tiny_budget_gives_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let edges: Vec<(usize, usize)> = (1..=8).map(|i| (i, i % 8 + 1)).collect();
    let g = write_graph(dir.path(), "c8.graph", 8, &edges);
    let o = usvkit(&["recognize", "--class", "usv", "--budget", "3", "--deterministic", p(&g)]);
    assert_eq!(code(&o), 20, "{}", stderr(&o));
}

#[test]
fn nae_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (g, l) = (dir.path().join("nae.graph"), dir.path().join("nae.layout"));
    let f = fixture("nae_formula.cnf");
    let o = usvkit(&["reduce", "nae3sat", p(&f), "-o", p(&g), "--witness", p(&l)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(g.exists() && l.exists());
    assert_eq!(code(&usvkit(&["verify", p(&l), p(&g)])), 0);

    let o = usvkit(&["--format", "json", "reduce", "nae3sat", "--mode", "core", p(&f), "-o", p(&g), "--witness", p(&l)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["vertices"], 148);
    assert_eq!(code(&usvkit(&["verify", p(&l), p(&g)])), 0);
}

#[test]
fn partition_witness_and_unsolvable_instance() {
    let dir = tempfile::tempdir().unwrap();
    let (g, l) = (dir.path().join("p.graph"), dir.path().join("p.layout"));
    let o = usvkit(&["reduce", "3partition", p(&fixture("partition_12_444.txt")), "-o", p(&g), "--witness", p(&l)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&usvkit(&["verify", p(&l), p(&g)])), 0);

    let inst = dir.path().join("no.txt");
    std::fs::write(&inst, "16\n5 5 5 5 5 7\n").unwrap();
    let l2 = dir.path().join("no.layout");
    let o = usvkit(&["reduce", "3partition", p(&inst), "-o", p(&g), "--witness", p(&l2)]);
    assert_eq!(code(&o), 10, "{}", stderr(&o));
    assert!(!l2.exists());
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!(r#"class="{class}""#)).count()
}

#[test]
fn render_is_deterministic_and_counts_match() {
    let f = fixture("k33_subdivision.layout");
    let a = usvkit(&["render", p(&f), "--show-visibilities"]);
    let b = usvkit(&["render", p(&f), "--show-visibilities"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    assert_eq!(count(&svg, "square"), 18);
    assert_eq!(count(&svg, "visibility"), 21);

    let svg = stdout(&usvkit(&["render", p(&fixture("k4.layout")), "--show-visibilities"]));
    assert_eq!((count(&svg, "square"), count(&svg, "visibility")), (4, 6));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.svg");
    let o = usvkit(&["render", p(&fixture("nonplanar.layout")), "--show-crossings", "-o", p(&out)]);
    assert_eq!(code(&o), 0);
    assert!(count(&std::fs::read_to_string(&out).unwrap(), "crossing") >= 1);
}

#[test]
fn input_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.layout");
    std::fs::write(&bad, "layout grid 2\ns 0 0 0\ns 1 1/2 0\n").unwrap();
    let o = usvkit(&["extract", p(&bad)]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("bad.layout") && err.contains("line 3"), "{err}");

    let o = usvkit(&["verify", p(&fixture("k26_as_drawn.layout")), p(&fixture("k26_as_drawn.graph"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("touch"));

    assert_eq!(code(&usvkit(&["extract", p(&dir.path().join("missing.layout"))])), 1);
    assert_eq!(code(&usvkit(&["no-such-command"])), 1);
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_usvkit"))
        .args(["extract", p(&fixture("k4.layout"))])
        .env("USVKIT_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_usvkit"))
        .args(["extract", p(&fixture("k4.layout"))])
        .env("USVKIT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn classify_and_visomorphic_exit_codes() {
    let c = |f: &str| code(&usvkit(&["classify", "--class", "usv", p(&fixture(f))]));
    assert_eq!(c("k16.graph"), 0);
    assert_eq!(c("k26_as_drawn.graph"), 20);
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_graph(dir.path(), "k5.graph", 5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]);
    assert_eq!(code(&usvkit(&["classify", "--class", "usv", p(&k5)])), 10);

    let (a, b) = (fixture("k4_class1.layout"), fixture("k4_class2.layout"));
    assert_eq!(code(&usvkit(&["visomorphic", p(&a), p(&a)])), 0);
    assert_eq!(code(&usvkit(&["visomorphic", p(&a), p(&b)])), 10);
}

#[test]
fn drawing_conversions_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let drawing = dir.path().join("d.drawing");
    // two stacked vertices without an edge and a horizontal path
    std::fs::write(&drawing, "drawing 4 2\nv 0 0 0\nv 1 0 1\nv 2 1 1\nv 3 2 1\ne 1 2\ne 2 3\n").unwrap();
    let weak = dir.path().join("weak.layout");
    let strong = dir.path().join("strong.layout");
    assert_eq!(code(&usvkit(&["drawing-to-layout", p(&drawing), "-o", p(&weak)])), 0);
    assert_eq!(code(&usvkit(&["drawing-to-layout", p(&drawing), "--strong", "-o", p(&strong)])), 0);
    let g = write_graph(dir.path(), "g.graph", 4, &[(2, 3), (3, 4)]);
    assert_eq!(code(&usvkit(&["verify", p(&weak), p(&g)])), 10);
    assert_eq!(code(&usvkit(&["verify", p(&strong), p(&g)])), 0);

    let s2 = dir.path().join("s2.layout");
    assert_eq!(code(&usvkit(&["strengthen", p(&weak), p(&g), "-o", p(&s2)])), 0);
    assert_eq!(code(&usvkit(&["verify", p(&s2), p(&g)])), 0);

    let back = dir.path().join("back.drawing");
    assert_eq!(code(&usvkit(&["layout-to-drawing", p(&strong), "-o", p(&back)])), 0);
    let text = std::fs::read_to_string(&back).unwrap();
    assert!(text.starts_with("drawing 4 2"), "{text}");
}

#[test]
fn enumerate_classes_writes_representatives() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "p3.graph", 3, &[(1, 2), (2, 3)]);
    let out = dir.path().join("classes");
    let o = usvkit(&["--format", "json", "enumerate-classes", "--class", "usgv", "--out-dir", p(&out), p(&g)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let k = v["classes"].as_u64().unwrap() as usize;
    assert!(k >= 2, "straight and bent paths differ");
    for i in 1..=k {
        let l = out.join(format!("class_{i}.layout"));
        assert_eq!(code(&usvkit(&["verify", p(&l), p(&g)])), 0);
    }
}
