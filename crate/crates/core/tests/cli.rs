use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn tpconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpconv")).args(args).output().expect("binary runs")
}

fn schema_path(command: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(format!("{command}.schema.json"))
}

/// Runs `args` with `--json`, checks the exit code, and validates the
/// report against the shipped schema for its command.
fn report(args: &[&str], expected_exit: i32) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = tpconv(&full);
    assert_eq!(
        out.status.code(),
        Some(expected_exit),
        "{args:?}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: Value = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    let command = value["command"].as_str().expect("report names its command").to_string();
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path(&command)).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{command} report fails its schema: {errors:?}\n{value}");
    value
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tpconv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const BOWTIE: &str = "# w=0, triangles {0,1,2} and {0,3,4}\n0 1\n0 2\n1 2\n0 3\n0 4\n3 4\n";

#[test]
fn convexity_number_of_bowtie_file() {
    let path = write_temp("bowtie.txt", BOWTIE);
    let v = report(&["convexity-number", "--graph", path.to_str().unwrap()], 0);
    assert_eq!(v["value"], 3);
    assert_eq!(v["stats"]["n"], 5);
    assert_eq!(v["stats"]["m"], 6);
    assert_eq!(v["stats"]["atoms"], 2);
}

#[test]
fn dimacs_is_sniffed_and_overridable() {
    let dimacs = "c bowtie\np edge 5 6\ne 1 2\ne 1 3\ne 2 3\ne 1 4\ne 1 5\ne 4 5\n";
    let path = write_temp("bowtie.dimacs", dimacs);
    let v = report(&["decompose", "--graph", path.to_str().unwrap()], 0);
    assert_eq!(v["atoms"], serde_json::json!([[0, 1, 2], [0, 3, 4]]));
    assert_eq!(v["r_sets"], serde_json::json!([[0]]));

    let renamed = write_temp("bowtie-dimacs.txt", dimacs);
    let out = tpconv(&["decompose", "--graph", renamed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "edge-list parse of DIMACS text must fail");
    report(&["decompose", "--graph", renamed.to_str().unwrap(), "--format", "dimacs"], 0);
}

#[test]
fn hull_number_of_c5() {
    let v = report(&["hull-number", "--generate", "cycle:5"], 0);
    assert_eq!(v["value"], 2);
    assert_eq!(v["verified"], true);
    let text = String::from_utf8(tpconv(&["hull-number", "--generate", "cycle:5"]).stdout).unwrap();
    assert!(text.contains("hull number 2"), "{text}");
}

#[test]
fn every_command_matches_its_schema() {
    let v = report(&["convex-test", "--generate", "cycle:5", "--set", "0,1"], 0);
    assert_eq!(v["convex"], true);
    assert_eq!(v["witness"]["kind"], "none");
    let v = report(&["convex-test", "--generate", "cycle:5", "--set", "0,2"], 0);
    assert_eq!(v["witness"]["kind"], "p3-violation");
    let v = report(&["convex-test", "--generate", "cycle:6", "--set", "0 3"], 0);
    assert_eq!(v["convex"], false);

    let v = report(&["hull", "--generate", "path:4", "--set", "0,3"], 0);
    assert_eq!(v["hull"], serde_json::json!([0, 1, 2, 3]));
    let v = report(&["hull", "--generate", "path:4", "--set", ""], 0);
    assert_eq!(v["hull"], serde_json::json!([]));

    let v = report(&["enumerate-prime", "--generate", "cycle:5", "--check-prime"], 0);
    assert_eq!(v["count"], 12);

    report(&["decompose", "--generate", "triangle_star:3"], 0);
    let v = report(&["hull-number", "--generate", "triangle_star:3"], 0);
    assert_eq!(v["value"], 3);
    let v = report(&["generate", "--generate", "bowtie"], 0);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    let v = report(&["bench", "--algorithm", "convexity-number", "--sizes", "10,20", "--reps", "1"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    let v = report(&["oracle-compare", "--generate", "bowtie"], 0);
    assert_eq!(v["clean"], true);
}

#[test]
fn oracle_compare_exhaustive_corpus() {
    let v = report(&["oracle-compare", "--corpus", "exhaustive:5", "--threads", "4"], 0);
    assert_eq!(v["graphs"], 728);
    assert_eq!(v["clean"], true);
    assert!(v["stats"].is_null());
    let single = report(&["oracle-compare", "--corpus", "exhaustive:5"], 0);
    assert_eq!(single["comparisons"], v["comparisons"], "thread count must not change the work done");
}

#[test]
fn generate_round_trips_through_files() {
    for format in ["edge-list", "dimacs"] {
        let out =
            tpconv(&["generate", "--generate", "random_connected:12:0.3", "--seed", "5", "--format", format]);
        assert_eq!(out.status.code(), Some(0));
        let path = write_temp(&format!("g12.{format}"), &String::from_utf8(out.stdout).unwrap());
        let from_file = report(&["generate", "--graph", path.to_str().unwrap(), "--format", format], 0);
        let direct = report(&["generate", "--generate", "random_connected:12:0.3:5"], 0);
        assert_eq!(from_file["edges"], direct["edges"]);
    }
}

#[test]
fn seed_controls_random_graphs() {
    let a = report(&["generate", "--generate", "random_connected:15:0.2", "--seed", "1"], 0);
    let b = report(&["generate", "--generate", "random_connected:15:0.2", "--seed", "1"], 0);
    let c = report(&["generate", "--generate", "random_connected:15:0.2", "--seed", "2"], 0);
    assert_eq!(a["edges"], b["edges"]);
    assert_ne!(a["edges"], c["edges"]);
}

#[test]
fn bench_csv() {
    let out = tpconv(&["bench", "--algorithm", "hull-number", "--sizes", "20,40,80", "--reps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "algorithm,n,m,median_ms,reps");
    assert_eq!(lines.len(), 4);
    for (line, n) in lines[1..].iter().zip([20, 40, 80]) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[0], "hull-number");
        assert_eq!(fields[1], n.to_string());
        assert!(fields[3].parse::<f64>().unwrap() >= 0.0);
        assert_eq!(fields[4], "3");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(tpconv(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(tpconv(&["hull-number", "--generate", "cycle:5", "--frob"]).status.code(), Some(64));
    assert_eq!(tpconv(&["hull-number", "--generate", "cycle:5", "--threads", "0"]).status.code(), Some(64));
    assert_eq!(tpconv(&["help"]).status.code(), Some(0));
    assert_eq!(tpconv(&["--version"]).status.code(), Some(0));
    assert_eq!(tpconv(&["hull-number", "--generate", "cycle:2"]).status.code(), Some(1));
    assert_eq!(tpconv(&["hull-number", "--graph", "/nonexistent/graph.txt"]).status.code(), Some(1));
    let disconnected = write_temp("two-edges.txt", "0 1\n2 3\n");
    let out = tpconv(&["hull-number", "--graph", disconnected.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
    let out = tpconv(&["enumerate-prime", "--generate", "bowtie", "--check-prime"]);
    assert_eq!(out.status.code(), Some(1));
}
