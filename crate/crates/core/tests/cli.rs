use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use wmesc::{parse_instance, IntersectionGraph};

const P3: &str = "4 3\n1.0 2 0 1\n1.0 2 1 2\n1.0 2 2 3\n";

fn wmesc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmesc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_path_file() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.wmesc", P3);
    let out = wmesc(&["solve", &p3]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"chosen\":[0,2],\"covered\":4,\"weight\":2.0}\n");
}

#[test]
fn solve_with_stats() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.wmesc", P3);
    let out = wmesc(&["solve", &p3, "--stats", "--tol", "1e-6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "chosen",
        "covered",
        "weight",
        "branch_nodes",
        "leaves",
        "max_depth",
        "elapsed_s",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["leaves"], 3);
    assert_eq!(v["branch_nodes"], 1);
}

#[test]
fn solve_empty_instance() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.wmesc", "0 0\n");
    let out = wmesc(&["solve", &f]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"chosen\":[],\"covered\":0,\"weight\":0.0}\n");
}

#[test]
fn malformed_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "neg.wmesc", "2 1\n-1.0 1 0\n");
    let out = wmesc(&["solve", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(wmesc(&["solve", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(wmesc(&["solve", &f, "--tol", "-1"]).status.code(), Some(1));
    assert_eq!(wmesc(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn oracle_matches_solve_shape() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.wmesc", P3);
    let out = wmesc(&["oracle", &p3]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"chosen\":[0,2],\"covered\":4,\"weight\":2.0}\n");
}

#[test]
fn oracle_guard_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("big.wmesc");
    let out = wmesc(&[
        "gen",
        "random",
        "--n",
        "60",
        "--m",
        "30",
        "--max-size",
        "3",
        "--overlap",
        "0.3",
        "--seed",
        "1",
        "-o",
        f.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(wmesc(&["oracle", f.to_str().unwrap()]).status.code(), Some(1));
    assert!(wmesc(&["solve", f.to_str().unwrap()]).status.success());
}

#[test]
fn gen_path_and_ring() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.wmesc");
    let out = wmesc(&["gen", "path", "--m", "3", "--seed", "1", "-o", f.to_str().unwrap()]);
    assert!(out.status.success());
    let inst = parse_instance(&fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(IntersectionGraph::build(&inst).edges(), vec![(0, 1), (1, 2)]);

    assert_eq!(wmesc(&["gen", "ring", "--m", "2"]).status.code(), Some(1));
    assert_eq!(wmesc(&["gen", "random", "--m", "2"]).status.code(), Some(1));
    assert_eq!(wmesc(&["gen", "hexagon", "--m", "2"]).status.code(), Some(1));
}

#[test]
fn gen_is_byte_identical() {
    let args = [
        "gen",
        "random",
        "--n",
        "30",
        "--m",
        "12",
        "--max-size",
        "4",
        "--overlap",
        "0.4",
        "--seed",
        "9",
    ];
    let a = wmesc(&args);
    let b = wmesc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let planted = ["gen", "planted", "--n", "9", "--k", "3", "--noise", "4", "--seed", "7"];
    let a = wmesc(&planted);
    assert!(a.status.success());
    assert_eq!(a.stdout, wmesc(&planted).stdout);
    assert!(stdout(&a).starts_with("# planted:"));
    assert_eq!(parse_instance(&stdout(&a)).unwrap().m(), 7);
}

#[test]
fn bench_directory() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    write(&corpus, "a.wmesc", P3);
    write(&corpus, "b.wmesc", "3 1\n7 3 0 1 2\n");
    write(&corpus, "c.wmesc", "0 0\n");
    let csv = dir.path().join("out.csv");
    let out = wmesc(&["bench", corpus.to_str().unwrap(), "-o", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(
        lines[0],
        "m,n,covered,weight,branch_nodes,leaves,max_depth,elapsed_s,leaf_ratio,status"
    );
    assert!(lines[1].starts_with("3,4,4,2,1,3,"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn bench_empty_and_missing_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = wmesc(&["bench", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);
    assert_eq!(wmesc(&["bench", "/nonexistent/dir"]).status.code(), Some(1));
}

#[test]
fn bench_timeout_row() {
    let dir = tempfile::tempdir().unwrap();
    // clique of 150 pairwise-overlapping subsets
    let mut text = String::from("151 150\n");
    for i in 0..150 {
        text.push_str(&format!("1 2 0 {}\n", i + 1));
    }
    write(dir.path(), "clique.wmesc", &text);
    let out = wmesc(&["bench", dir.path().to_str().unwrap(), "--timeout", "0.000001"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.lines().nth(1).unwrap().ends_with(",timeout"), "{body}");
}

#[test]
fn reduce_packing_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "pack.txt", "a b c\nc d e\nf g h");
    let out_path = dir.path().join("red.wmesc");
    let out = wmesc(&["reduce", &f, "-o", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let inst = parse_instance(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!((inst.n(), inst.m()), (8, 3));

    let single = write(dir.path(), "one.txt", "x y z\n");
    let out = wmesc(&["reduce", &single]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3 1\n1 3 0 1 2\n");

    let bad = write(dir.path(), "bad.txt", "a a b\n");
    assert_eq!(wmesc(&["reduce", &bad]).status.code(), Some(1));
}
