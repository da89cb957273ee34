use std::process::Command;

use qclosed_cli::{parse_args, render_text, resolve_quiver, run, Output};
use serde_json::Value;

fn run_args(args: &[&str]) -> Output {
    let cli = parse_args(std::iter::once("qclosed").chain(args.iter().copied())).unwrap();
    run(&cli).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_args(args).stdout).unwrap()
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qclosed"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn w2cat_triangle_example() {
    let v = json(&["w2cat", "--quiver", "triangle", "--word", "1 2 3 2 1"]);
    assert_eq!(v["positions"], serde_json::json!([1, 2, 3, 5, 7]));
    assert_eq!(
        v["missing"],
        serde_json::json!(["P1", "P2", "P3", "t-1P2", "t-2P1"])
    );
}

#[test]
fn w2cat_a3_examples() {
    let empty = json(&["w2cat", "--quiver", "A3", "--word", ""]);
    assert_eq!(empty["missing"], serde_json::json!([]));
    let v = json(&["w2cat", "--quiver", "A3", "--word", "s1s2s3s2"]);
    assert_eq!(v["missing"], serde_json::json!(["P1", "P2", "P3", "t-1P2"]));
}

#[test]
fn cat2w_examples() {
    let v = json(&["cat2w", "--quiver", "A3", "--missing", "P1 P2 P3 t-1P2"]);
    assert_eq!(v["word"], serde_json::json!([1, 2, 3, 2]));
    assert_eq!(v["quotient_closed"], Value::Bool(true));
    assert_eq!(v["reduced"], Value::Bool(true));
    let e = json(&["cat2w", "--quiver", "A3", "--missing", ""]);
    assert_eq!(e["word"], serde_json::json!([]));
    assert_eq!(e["element"]["length"], 0);
    // s2 is the element whose leftmost subword sits at P2 alone.
    let p2 = json(&["cat2w", "--quiver", "A3", "--missing", "P2"]);
    assert_eq!(p2["word"], serde_json::json!([2]));
    assert_eq!(p2["leftmost_for_element"], Value::Bool(true));
    assert_eq!(p2["quotient_closed"], Value::Bool(true));
    let bad = json(&["cat2w", "--quiver", "A3", "--missing", "P1 P1 t-1P1"]);
    assert_eq!(bad["quotient_closed"], Value::Bool(false));
}

#[test]
fn cat2w_rejects_invalid_indices() {
    for missing in ["P4", "t-3P1", "Q1", r#"[{"j":0,"k":0}]"#] {
        let cli = parse_args(["qclosed", "cat2w", "--quiver", "A3", "--missing", missing]).unwrap();
        assert!(run(&cli).is_err(), "{missing}");
    }
}

#[test]
fn verify_suites() {
    let out = run_args(&[
        "verify", "--quiver", "A2", "--suite", "all", "--n", "3", "--k", "2",
    ]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
    for (name, order) in [("A3", 24), ("D4", 192)] {
        let v = json(&["verify", "--quiver", name, "--suite", "bijection"]);
        assert_eq!(v["checks"][0]["detail"]["quotient_closed"], order);
        assert_eq!(v["checks"][0]["detail"]["group_order"], order);
    }
}

#[test]
fn verify_le_and_antimatroid() {
    let le = run_args(&["verify-le", "--n", "4", "--k", "2"]);
    assert_eq!(le.code, 0);
    let anti = json(&["verify-antimatroid", "--quiver", "A2", "--word", "1 2 1"]);
    assert_eq!(anti["feasible_sets"], 6);
    assert_eq!(anti["supersolvable"], true);
    let infinite = json(&[
        "verify-antimatroid",
        "--quiver",
        "kronecker",
        "--word",
        "1 2 1 2 1",
    ]);
    assert_eq!(infinite["antimatroid"], true);
}

#[test]
fn ideal_and_sorting() {
    let v = json(&["ideal", "--quiver", "A2", "--word", "1"]);
    assert_eq!(v["dim_Pi"], 4);
    assert_eq!(v["dim_Iw"], 3);
    assert_eq!(v["missing"], serde_json::json!(["P1"]));
    assert_eq!(v["C_of_labels"], serde_json::json!(["P2", "t-1P1"]));
    assert_eq!(v["C_of"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(v["C_of_quotient"], serde_json::json!([[1, 0]]));
    let s = json(&["sorting", "--quiver", "A2", "--word", "2 1"]);
    assert_eq!(s["c_sortable"], false);
    assert_eq!(s["sort_c"], serde_json::json!([2]));
    assert_eq!(s["torsion"], true);
    assert_eq!(s["w"], serde_json::json!([2, 1]));
}

#[test]
fn table_formats() {
    let v = json(&["table", "--quiver", "A3"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    let dot = run_args(&["table", "--quiver", "A2", "--format", "dot"]).stdout;
    assert!(dot.starts_with("digraph"));
    let kron = json(&["table", "--quiver", "kronecker", "--kmax", "3"]);
    assert_eq!(kron["rows"].as_array().unwrap().len(), 8);
    let cli = parse_args([
        "qclosed",
        "verify-le",
        "--n",
        "2",
        "--k",
        "1",
        "--format",
        "dot",
    ])
    .unwrap();
    assert!(run(&cli).is_err());
}

#[test]
fn quiver_sources() {
    assert_eq!(resolve_quiver("D4").unwrap().n(), 4);
    let inline = resolve_quiver(r#"{"n":2,"arrows":[[1,2]]}"#).unwrap();
    assert!(inline.is_dynkin());
    let dir = std::env::temp_dir().join(format!("qclosed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    std::fs::write(
        &path,
        r#"{"n":3,"arrows":[[1,2],[2,3],[1,3]],"name":"tri"}"#,
    )
    .unwrap();
    assert_eq!(resolve_quiver(path.to_str().unwrap()).unwrap().n(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(resolve_quiver("Z9").is_err());
    assert!(resolve_quiver(r#"{"n":2,"arrows":[[2,1]]}"#).is_err());
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify", "--quiver", "A3", "--suite", "sorting", "--seed", "7",
    ];
    assert_eq!(binary(&args).stdout, binary(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(binary(&["w2cat", "--word", "1 2"]).status.code(), Some(0));
    assert_eq!(binary(&["w2cat", "--word", "1 9"]).status.code(), Some(2));
    assert_eq!(binary(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        binary(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        binary(&["verify", "--quiver", "triangle"]).status.code(),
        Some(2)
    );
    assert_eq!(
        binary(&["verify-le", "--n", "3", "--k", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn text_rendering() {
    let v = serde_json::json!({"a": [1, 2], "b": {"c": null}, "d": [], "e": [{"f": true}]});
    assert_eq!(
        render_text(&v),
        "a: 1 2\nb:\n  c: -\nd: -\ne:\n  [1]\n    f: true\n"
    );
}
