use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn emcat(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_emcat")).args(args).current_dir(fixtures()).output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn instance_for(file: &str) -> &'static str {
    match file.rsplit('.').next() {
        Some("poset") => "pos",
        Some("graph") => "gph",
        Some("set") => "finset",
        _ if file == "collapse.fn" => "finset",
        _ if file == "sub_ab.map" => "pos",
        _ => "cat",
    }
}

/// Fixtures that are deliberately malformed.
const INVALID: [&str; 2] = ["broken.fn", "antisym.poset"];

#[test]
fn every_valid_fixture_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if INVALID.contains(&name.as_str()) {
            continue;
        }
        let inst = instance_for(&name);
        // sub_ab.map takes its target from the space before it
        let mut args = vec!["check", "--instance", inst];
        if name == "sub_ab.map" {
            args.push("VEE.poset");
        }
        args.push(&name);
        let first = emcat(&args);
        assert_eq!(first.code, 0, "{name}: {}", first.stderr);
        let copy = dir.path().join(&name);
        std::fs::write(&copy, &first.stdout).unwrap();
        let second = emcat(&["check", "--instance", inst, copy.to_str().unwrap()]);
        assert_eq!(second.code, 0, "{name} re-read: {}", second.stderr);
        assert_eq!(first.stdout, second.stdout, "{name}");
        seen += 1;
    }
    assert_eq!(seen, 10);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["check", "TWO.fincat"], 0),
        (&["final", "bang_two.fn"], 0),
        (&["final", "s_point.fn"], 1),
        (&["check", "broken.fn"], 2),
        (&["--instance", "pos", "check", "antisym.poset"], 2),
        (&["check", "VEE.poset"], 2),
        (&["check", "missing.fincat"], 2),
        (&["frobnicate", "TWO.fincat"], 2),
        (&["neighborhood", "TWO.fincat", "nowhere"], 2),
        (&["--instance", "pos", "colimit", "VEE.poset", "sub_ab.map"], 0),
        (&["--instance", "finset", "final", "collapse.fn"], 0),
        (&["--instance", "finset", "dense", "collapse.fn"], 0),
        (&["--instance", "finset", "ff", "collapse.fn"], 1),
        (&["discrete", "THREE.fincat", "--budget", "10"], 3),
        (&["--out", "dot", "components", "TWO.fincat"], 2),
    ];
    for (args, code) in cases {
        let r = emcat(args);
        assert_eq!(r.code, *code, "{args:?}: {}{}", r.stdout, r.stderr);
    }
}

#[test]
fn final_names_the_failing_fiber() {
    let r = emcat(&["final", "s_point.fn"]);
    assert!(r.stdout.contains("`1`"), "{}", r.stdout);
}

#[test]
fn broken_functor_reports_the_pair() {
    let r = emcat(&["check", "broken.fn"]);
    assert!(r.stderr.contains("broken.fn") && r.stderr.contains("(u, v)"), "{}", r.stderr);
}

#[test]
fn generated_names_are_writable() {
    for args in [
        &["xstar", "TWO.fincat"][..],
        &["neighborhood", "TWO.fincat", "1"],
        &["reflect", "s_point.fn"],
        &["factorize", "bang_two.fn"],
    ] {
        let r = emcat(args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    }
    let dir = tempfile::tempdir().unwrap();
    let nbh = emcat(&["neighborhood", "THREE.fincat", "2"]);
    let file = dir.path().join("nbh.fn");
    std::fs::write(&file, &nbh.stdout).unwrap();
    assert_eq!(emcat(&["check", file.to_str().unwrap()]).code, 0);
}

#[test]
fn suite_json_is_deterministic() {
    let args = ["suite", "--instance", "finset", "--max-obj", "3", "--filter", "FIN-01"];
    let a = emcat(&args);
    let b = emcat(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["instance"], "finset");
}

#[test]
fn suite_failure_exits_one() {
    let r = emcat(&["suite", "--instance", "finset", "--max-obj", "2", "--filter", "FIN-03"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stdout.contains("\"fail\""));
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let nodes = dot.lines().filter(|l| l.trim_start().starts_with('n') && !l.contains("->")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    (nodes, edges)
}

#[test]
fn dot_of_two_has_two_nodes_and_one_edge() {
    let r = emcat(&["dot", "TWO.fincat"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("digraph"));
    assert_eq!(dot_counts(&r.stdout), (2, 1), "{}", r.stdout);
}

#[test]
fn dot_of_the_empty_category() {
    let r = emcat(&["dot", "@EMPTY"]);
    assert_eq!(r.code, 0);
    assert_eq!(dot_counts(&r.stdout), (0, 0), "{}", r.stdout);
}

#[test]
fn dot_of_a_neighborhood_is_clustered_by_fiber() {
    let r = emcat(&["--out", "dot", "neighborhood", "TWO.fincat", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.matches("subgraph cluster_").count(), 3, "{}", r.stdout);
    assert!(r.stdout.contains("cluster_base"));
}
