use std::fs;
use std::process::{Command, Output};

use idom::edgelist;
use idom::FamilySpec;
use serde_json::Value;

fn idom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_round_trips_through_every_verb() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        "cycle:5",
        "kbip:2,3",
        "corona:(path:2),(empty:2)",
        "random:6,0.4,3",
    ] {
        let path = dir.path().join("d.dg");
        let path_str = path.to_str().unwrap();
        let o = idom(&["generate", "--family", text, "--output", path_str]);
        assert_eq!(o.status.code(), Some(0));
        let expected = text.parse::<FamilySpec>().unwrap().build().unwrap();
        assert_eq!(
            edgelist::parse(&fs::read_to_string(&path).unwrap()).unwrap(),
            expected
        );

        for verb in ["gamma", "reinforce"] {
            let from_file: Value =
                serde_json::from_str(&stdout(&idom(&[verb, "--file", path_str]))).unwrap();
            let from_family: Value =
                serde_json::from_str(&stdout(&idom(&[verb, "--family", text]))).unwrap();
            assert_eq!(from_file["value"], from_family["value"], "{verb} {text}");
            assert_eq!(
                from_file["witness"], from_family["witness"],
                "{verb} {text}"
            );
        }
    }
}

#[test]
fn documented_examples() {
    let o = idom(&["gamma", "--family", "cycle:6", "--format", "plain"]);
    assert_eq!(stdout(&o).lines().next(), Some("gamma_I = 6"));

    let o = idom(&["reinforce", "--family", "cycle:5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 1);
    assert_eq!(v["witness"].as_array().unwrap().len(), 1);

    let o = idom(&["bondage", "--family", "complete:4", "--format", "plain"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "b_I = 4");
    let mut arcs = lines[1..].to_vec();
    arcs.sort();
    assert_eq!(arcs, lines[1..]);
}

#[test]
fn exit_codes() {
    assert_eq!(
        idom(&["gamma", "--file", "missing.dg"]).status.code(),
        Some(2)
    );
    assert_eq!(
        idom(&["bondage", "--family", "path:4"]).status.code(),
        Some(4)
    );
    assert_eq!(
        idom(&["gamma-classic", "--family", "empty:25"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(idom(&["verify", "--orders", "2"]).status.code(), Some(0));
    // the small star K*_{1,2} has bondage number 2, not the tabulated 1
    assert_eq!(
        idom(&["verify", "--family", "kbip:1,2"]).status.code(),
        Some(1)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dg");
    fs::write(&bad, "3 1\n0 0\n").unwrap();
    assert_eq!(
        idom(&["gamma", "--file", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_reads_corpus_file_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.json");
    fs::write(
        &corpus,
        r#"{"exhaustive_orders":[2],"random":[{"n":5,"p":0.5,"seed":7,"count":5}],"family_catalog":["corona:(empty:2),(path:2)","join1:(path:2),(cycle:3)"]}"#,
    )
    .unwrap();
    let c = corpus.to_str().unwrap();
    let a = idom(&["verify", "--corpus", c, "--workers", "1"]);
    let b = idom(&["verify", "--corpus", c, "--workers", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["instances"], 4 + 5 + 2);
    assert_eq!(report["checks"].as_array().unwrap().len(), 17);
}
