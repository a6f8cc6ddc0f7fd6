use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotcocycle"))
        .args(args)
        .env_remove("KNOTCOCYCLE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn phi_of_trefoil() {
    assert_eq!(
        stdout(&[
            "invariant",
            "phi",
            "--knot",
            "torus:3",
            "--quandle",
            "q6",
            "--cocycle",
            "q6z4"
        ]),
        "0:6 1:24\n"
    );
    let doc = json(&[
        "invariant",
        "phi",
        "--knot",
        "sknot:3,3",
        "--cocycle",
        "q6z4",
    ]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["multiset"]["text"], "0:30 2:24");
}

#[test]
fn quandle_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r5.qnd");
    let p = path.to_str().unwrap();
    stdout(&["quandle", "build", "r5", "--out", p]);
    assert_eq!(
        stdout(&["quandle", "verify", "--file", p]),
        "axioms: pass pass pass\n"
    );
    assert_eq!(stdout(&["quandle", "type", "--quandle", p]), "type: 2\n");

    // R_3 with (0,1) overwritten to 0
    let bad = dir.path().join("bad.qnd");
    fs::write(&bad, "3\n0 0 1\n2 1 0\n1 0 2\n").unwrap();
    let text = stdout(&["quandle", "verify", "--file", bad.to_str().unwrap()]);
    assert!(text.starts_with("axioms: pass fail"), "{text}");
    assert!(text.contains("column 1"));

    let q6 = stdout(&["quandle", "build", "q6"]);
    assert!(q6.lines().nth(1).unwrap().ends_with("# (1234)"));
}

#[test]
fn cocycle_generation_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.coc");
    let p = path.to_str().unwrap();
    stdout(&["cocycle", "gen", "q6z4", "--out", p]);
    let text = stdout(&["cocycle", "verify", "--cocycle", p, "--quandle", "q6"]);
    assert!(text.contains("identity pass"), "{text}");

    // φ(1,5) changed from 2 to 3 in one-based numbering
    let tampered = fs::read_to_string(&path)
        .unwrap()
        .replace("0 4 2\n", "0 4 3\n");
    fs::write(&path, tampered).unwrap();
    let doc = json(&["cocycle", "verify", "--cocycle", p, "--quandle", "q6"]);
    assert_eq!(doc["passes"], false);
    assert!(doc["report"]["identity"]["tuple"].is_array());

    let doc = json(&["cocycle", "verify", "--cocycle", "mochizuki:7"]);
    assert_eq!(doc["passes"], true);
    let m3 = stdout(&["cocycle", "gen", "mochizuki", "--p", "3"]);
    assert!(m3.starts_with("cocycle3 3 3\n"));
    assert!(m3.contains("0 1 2 2\n"));
}

#[test]
fn cocycle_enumeration_cap() {
    let doc = json(&[
        "cocycle",
        "enumerate",
        "--quandle",
        "r3",
        "--modulus",
        "3",
        "--list",
    ]);
    assert_eq!(doc["count"], "9");
    assert_eq!(doc["cocycles"].as_array().unwrap().len(), 9);
    let out = run(&[
        "cocycle",
        "enumerate",
        "--quandle",
        "r5",
        "--modulus",
        "5",
        "--list",
        "--cap",
        "10",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn colorings() {
    assert_eq!(
        stdout(&["knot", "colorings", "--braid", "2: s1^3", "--quandle", "q6"]),
        "colorings: 30\n"
    );
    let doc = json(&[
        "knot",
        "colorings",
        "--knot",
        "torus:3",
        "--quandle",
        "r3",
        "--list",
    ]);
    assert_eq!(doc["count"], 9);
    let out = run(&["knot", "colorings", "--braid", "2: s3", "--quandle", "r3"]);
    assert!(!out.status.success());
}

#[test]
fn omega_and_twistspun() {
    let text = stdout(&[
        "invariant",
        "omega",
        "--knot",
        "torus:3",
        "--cocycle",
        "q6z4",
        "--r",
        "4",
    ]);
    assert!(text.contains("k=2: 0:6 2:24"));
    let out = run(&[
        "invariant",
        "omega",
        "--knot",
        "torus:3",
        "--cocycle",
        "q6z4",
        "--r",
        "2",
    ]);
    assert!(!out.status.success());
    assert_eq!(
        stdout(&["invariant", "twistspun", "--q", "3"]),
        "0:3 1:6\nsupport: 0 1\n"
    );
    assert_eq!(
        stdout(&["invariant", "twistspun", "--q", "5", "--p", "3"]),
        "0:3\n"
    );
}

#[test]
fn verdicts_are_payload() {
    let doc = json(&[
        "concordance",
        "cor43",
        "--l",
        "3",
        "--m",
        "3",
        "--n",
        "3",
        "--r",
        "0",
        "--s",
        "0",
    ]);
    let v = &doc["verdict"];
    assert_eq!(v["obstructed"], true);
    assert_eq!(v["theorem"], "1.2");
    assert_eq!(v["witness"]["member"], 1);
    assert_eq!(v["inputs"]["l"], 3);

    let doc = json(&["concordance", "cor21", "--q", "5", "--mirror"]);
    assert_eq!(doc["verdicts"][0]["obstructed"], false);
    assert!(doc["verdicts"][0]["witness"].is_null());

    let doc = json(&[
        "concordance",
        "thm11",
        "--phi1",
        "0:3",
        "--phi0",
        "0:1 2:1",
        "--modulus",
        "3",
    ]);
    assert_eq!(doc["verdict"]["obstructed"], false);

    let out = run(&[
        "concordance",
        "cor43",
        "--l",
        "3",
        "--m",
        "3",
        "--n",
        "3",
        "--r",
        "2",
        "--s",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = [
        "cocycle",
        "enumerate",
        "--quandle",
        "q6",
        "--modulus",
        "4",
        "--json",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_knotcocycle"))
        .args(args)
        .env("KNOTCOCYCLE_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_knotcocycle"))
        .args(args)
        .arg("--threads")
        .arg("4")
        .output()
        .unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);

    let list = [
        "knot",
        "colorings",
        "--knot",
        "sknot:9,9",
        "--quandle",
        "q6",
        "--list",
    ];
    let a = stdout(&list);
    let mut with_threads = list.to_vec();
    with_threads.extend(["--threads", "3"]);
    assert_eq!(a, stdout(&with_threads));
}

#[test]
fn shipped_schema_matches_the_emitted_version() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/output-schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let doc = json(&["quandle", "type", "--quandle", "r3"]);
    assert_eq!(
        schema["properties"]["schema_version"]["const"],
        doc["schema_version"]
    );
    for def in ["verdict", "multiset", "omega"] {
        assert!(schema["$defs"][def].is_object(), "{def}");
    }
}
