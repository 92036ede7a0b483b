use std::path::{Path, PathBuf};
use std::process::Command;

use schur_clusters_cli::{run, Output};
use serde_json::Value;
use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let f = Files {
            dir: TempDir::new().unwrap(),
        };
        f.write("a2.q", "n 2\n1 2\n");
        f.write("a2op.q", "n 2\n2 1\n");
        f.write("a3.q", "n 3\n1 2\n2 3\n");
        f.write("kronecker.q", "n 2\n1 2\n1 2\n");
        f.write("chain2.p", "n 2\n1 2\n");
        f.write("point.p", "n 1\n");
        f.write("bad.q", "n 2\n1 3\n");
        f.write("cycle.q", "n 2\n1 2\n2 1\n");
        f.write("e8.q", "n 8\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n3 8\n");
        f
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.dir.path().join(name), text).unwrap();
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }

    fn run(&self, args: &[&str]) -> Output {
        let mut full = vec!["schur-clusters".to_string()];
        for a in args {
            if a.ends_with(".q") || a.ends_with(".p") {
                full.push(self.path(a));
            } else {
                full.push(a.to_string());
            }
        }
        run(full)
    }
}

fn json(out: &Output) -> Value {
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn a2_clusters_json() {
    let f = Files::new();
    let v = json(&f.run(&["clusters", "--quiver", "a2.q", "--format", "json"]));
    assert_eq!(v["command"], "clusters");
    assert_eq!(v["result"].as_array().unwrap().len(), 5);
    assert_eq!(v["meta"]["seed"], 0);
    assert_eq!(v["meta"]["probe_budget"], 8);
    assert_eq!(v["meta"]["complete"], true);
    assert_eq!(
        v["result"][0],
        serde_json::json!([{"type": "neg_simple", "vertex": 1}, {"type": "neg_simple", "vertex": 2}])
    );
}

#[test]
fn a2_poset_dot_is_a_pentagon() {
    let f = Files::new();
    let out = f.run(&["poset", "--quiver", "a2.q", "--format", "dot"]);
    assert_eq!(out.code, 0);
    let nodes = out.stdout.lines().filter(|l| l.contains("[label=")).count();
    let edges = out.stdout.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (5, 5));
    assert!(out.stdout.contains("label=\"(0,1), (1,1)\""));
    assert!(out.stdout.contains("label=\"-e1, -e2\""));
}

#[test]
fn torsion_count_examples() {
    let f = Files::new();
    let out = f.run(&["torsion-count", "--quiver", "a2.q", "--poset", "chain2.p"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "13\n"));
    let out = f.run(&["torsion-count", "--quiver", "a2.q", "--poset", "point.p"]);
    assert_eq!(out.stdout, "5\n");
    let out = f.run(&[
        "torsion-count",
        "--quiver",
        "kronecker.q",
        "--poset",
        "point.p",
        "--bound",
        "5",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error[not_dynkin]"));
}

#[test]
fn kronecker_needs_a_bound() {
    let f = Files::new();
    let out = f.run(&["clusters", "--quiver", "kronecker.q"]);
    assert_eq!(out.code, 1);
    assert!(
        out.stderr.contains("height bound required"),
        "{}",
        out.stderr
    );
    let v = json(&f.run(&[
        "clusters",
        "--quiver",
        "kronecker.q",
        "--bound",
        "7",
        "--format",
        "json",
    ]));
    assert_eq!(v["meta"]["complete"], false);
    assert!(v["result"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.as_array().unwrap().len() == 2));
}

#[test]
fn input_errors_exit_two() {
    let f = Files::new();
    let out = f.run(&["roots", "--quiver", "bad.q"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    let out = f.run(&["roots", "--quiver", "cycle.q"]);
    assert_eq!(out.code, 2);
    let out = f.run(&["roots", "--quiver", "a2.q", "--format", "svg"]);
    assert_eq!(out.code, 2);
    let out = f.run(&["roots", "--quiver", "missing.q"]);
    assert_eq!(out.code, 2);
    let out = f.run(&["frobnicate"]);
    assert_eq!(out.code, 2);
    let out = f.run(&["einv", "--quiver", "a2.q", "--x", "1,0,0", "--y", "0,1"]);
    assert_eq!(out.code, 2);
}

#[test]
fn large_instances_are_gated() {
    let f = Files::new();
    let out = f.run(&["clusters", "--quiver", "e8.q"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error[too_large]"), "{}", out.stderr);
    let out = f.run(&["roots", "--quiver", "e8.q"]);
    assert_eq!(out.stdout.lines().count(), 120);
}

#[test]
fn einv_and_schur() {
    let f = Files::new();
    let out = f.run(&["einv", "--quiver", "a2.q", "--x", "1,0", "--y", "0,1"]);
    assert_eq!(out.stdout, "1\t1\t1\n");
    let v = json(&f.run(&[
        "einv", "--quiver", "a2.q", "--x", "0,1", "--y", "1,0", "--format", "json", "--stats",
    ]));
    assert_eq!(v["result"]["e"], 0);
    assert!(v["result"]["stats"]["misses"].is_u64());
    let out = f.run(&["schur", "--quiver", "kronecker.q", "--bound", "7"]);
    assert_eq!(out.stdout.lines().count(), 8);
    let out = f.run(&["schur", "--quiver", "kronecker.q", "--alpha", "1,1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("(1,1)\tfalse"), "{}", out.stdout);
    let out = f.run(&["schur", "--quiver", "a2.q", "--alpha", "1,1"]);
    assert!(out.stdout.starts_with("(1,1)\ttrue"));
}

#[test]
fn preclusters_and_empty_lists() {
    let f = Files::new();
    let out = f.run(&["preclusters", "--quiver", "a2.q"]);
    assert_eq!(out.stdout.lines().count(), 11);
    let out = f.run(&["preclusters", "--quiver", "a2.q", "--positive-only"]);
    assert_eq!(out.stdout.lines().count(), 6);
    f.write("empty.q", "n 0\n");
    let v = json(&f.run(&["clusters", "--quiver", "empty.q", "--format", "json"]));
    assert_eq!(v["result"], serde_json::json!([[]]));
    let v = json(&f.run(&["roots", "--quiver", "empty.q", "--format", "json"]));
    assert_eq!(v["result"], serde_json::json!([]));
}

#[test]
fn realize_and_stilt() {
    let f = Files::new();
    let v = json(&f.run(&[
        "realize", "--quiver", "a2.q", "--vars", "1,1;0,1", "--format", "json",
    ]));
    let reps = v["result"].as_array().unwrap();
    assert_eq!(reps.len(), 2);
    assert_eq!(reps[1]["rep"]["dims"], serde_json::json!([1, 1]));
    let out = f.run(&[
        "realize", "--quiver", "a2.q", "--vars", "1,0;0,1", "--format", "json",
    ]);
    assert_eq!(out.code, 2);
    assert!(
        out.stderr.starts_with("error[not_precluster]"),
        "{}",
        out.stderr
    );
    let out = f.run(&["stilt", "--quiver", "a3.q", "--format", "tsv"]);
    assert_eq!(
        out.stdout.lines().filter(|l| l.starts_with("node")).count(),
        14
    );
}

#[test]
fn verify_reports_every_check() {
    let f = Files::new();
    let out = f.run(&["verify", "--quiver", "a2op.q"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out
        .stdout
        .lines()
        .all(|l| l.starts_with("PASS") || l.starts_with("SKIP")));
    assert!(out.stdout.contains("stilt-isomorphism"));
}

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_schur-clusters"))
}

fn exec(dir: &Path, args: &[&str], threads: &str) -> std::process::Output {
    Command::new(binary())
        .current_dir(dir)
        .env("SCHUR_CLUSTERS_THREADS", threads)
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn binary_is_deterministic() {
    let f = Files::new();
    let dir = f.dir.path();
    let runs: &[&[&str]] = &[
        &["poset", "--quiver", "a3.q", "--format", "json"],
        &[
            "clusters",
            "--quiver",
            "kronecker.q",
            "--bound",
            "7",
            "--format",
            "json",
        ],
        &[
            "realize",
            "--quiver",
            "a3.q",
            "--vars",
            "1,1,1;0,1,1;0,0,1",
            "--seed",
            "5",
            "--format",
            "json",
        ],
    ];
    for args in runs {
        let a = exec(dir, args, "1");
        let b = exec(dir, args, "4");
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let out = exec(dir, &["clusters", "--quiver", "kronecker.q"], "2");
    assert_eq!(out.status.code(), Some(1));
    let out = exec(dir, &["--help"], "2");
    assert_eq!(out.status.code(), Some(0));
}
