use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect()
}

fn tricert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricert")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn certify_then_verify() {
    let dir = std::env::temp_dir().join(format!("tricert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, code) in [("seven.graph", 0), ("two_k4.graph", 2)] {
        let g = fixture(name);
        let cert = dir.join(format!("{name}.cert"));
        let o = tricert(&["certify", path(&g), "-o", path(&cert)]);
        assert_eq!(o.status.code(), Some(code), "{name}");
        let v = tricert(&["verify", path(&g), path(&cert)]);
        assert_eq!(v.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&v.stderr));
    }
    // a certificate for one graph does not check against another
    let v = tricert(&["verify", path(&fixture("ring9.graph")), path(&dir.join("seven.graph.cert"))]);
    assert_eq!(v.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn certify_order_on_seven_vertices() {
    let o = tricert(&["certify", path(&fixture("seven.graph"))]);
    let text = stdout(&o);
    let chains: Vec<&str> = text.lines().skip(1).map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(chains, ["1", "2", "4", "3", "5"]);
    let g = tricert(&["certify", "--algo", "greedy", path(&fixture("seven.graph"))]);
    assert!(stdout(&g).starts_with("MADER\n"));
}

#[test]
fn chains_text() {
    let o = tricert(&["chains", path(&fixture("seven.graph"))]);
    assert_eq!(
        stdout(&o),
        "1 0 0 cycle -: 6 4 3 2 1 0\n2 0 5 unclassified 1: 7 5\n3 1 3 nested 1: 8\n\
         4 2 6 interlacing 2: 9\n5 3 4 nested 1: 10\n"
    );
}

#[test]
fn cactus_and_components() {
    // more than one component means the graph is not 3-edge-connected
    let o = tricert(&["components", path(&fixture("ring9.graph"))]);
    assert_eq!(o.status.code(), Some(2));
    let mut lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    lines.sort();
    assert_eq!(lines, ["0 8", "1 4 5", "2 3", "6 7"]);
    let c = tricert(&["cactus", path(&fixture("ring9.graph"))]);
    assert_eq!(c.status.code(), Some(2));
    assert_eq!(stdout(&c).lines().filter(|l| l.starts_with("cedge")).count(), 5);
    let one = tricert(&["components", path(&fixture("seven.graph"))]);
    assert_eq!((one.status.code(), stdout(&one)), (Some(0), "0 1 2 3 4 5 6\n".to_string()));
}

#[test]
fn gen_output_loads() {
    let o = tricert(&["gen", "--n", "12", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let g = tricert::load_graph(&stdout(&o)).unwrap();
    assert_eq!(g.n(), 12);
}

#[test]
fn error_exit_codes() {
    assert_eq!(tricert(&["certify", "/nonexistent/graph"]).status.code(), Some(74));
    assert_eq!(tricert(&["certify"]).status.code(), Some(64));
    let dir = std::env::temp_dir().join(format!("tricert-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "3 2\n0 1\n").unwrap();
    assert_eq!(tricert(&["certify", path(&bad)]).status.code(), Some(65));
    std::fs::remove_dir_all(&dir).unwrap();
}
