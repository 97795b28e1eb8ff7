use std::process::Command;

use serde_json::Value;

fn umrow(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_umrow")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_ok(args: &[&str]) -> Value {
    let (code, stdout, stderr) = umrow(args);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn tangent_class_on_the_two_sphere() {
    let v = json_ok(&["row", "class", "--ring", "sphere2", "--row", "z,x,y"]);
    assert_eq!(v["class"], serde_json::json!([1]));
    assert_eq!(v["components"], serde_json::json!(["S2"]));
    assert_eq!(v["convention"], "tangent=+1");
}

#[test]
fn refutation_is_not_an_error() {
    let v = json_ok(&["row", "check", "--ring", "sphere2", "--row", "x,y"]);
    assert_eq!(v["unimodular"], false);
    let v = json_ok(&["row", "check", "--ring", "sphere2", "--row", r#"["z","x","y"]"#]);
    assert_eq!(v["unimodular"], true);
}

#[test]
fn mwk_product_vanishes_over_f5() {
    let v = json_ok(&["mwk", "eval", "--base", "F5", "[2]*[3]"]);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["milnor"]["value"], "0");
    assert_eq!(v["witt"]["entries"], serde_json::json!([]));
}

#[test]
fn exit_codes() {
    assert_eq!(umrow(&["row", "class", "--ring", "sphere2", "--row", "x,y"]).0, 1);
    assert_eq!(umrow(&["row", "class", "--ring", "sphere2", "--row", "x,,"]).0, 2);
    assert_eq!(umrow(&["row", "class", "--row", "z,x,y"]).0, 2);
    assert_eq!(umrow(&["row", "class", "--ring", "torus", "--row", "z,x,y"]).0, 2);
    assert_eq!(umrow(&["mwk", "eval", "--base", "F4", "[1]"]).0, 2);
    assert_eq!(umrow(&["gersten", "xi", "--n", "0"]).0, 2);
    let (code, _, stderr) = umrow(&["row", "prep", "--ring", "sphere2", "--row", "x,y,w"]);
    assert_eq!(code, 2);
    let err: Value = serde_json::from_str(&stderr).unwrap();
    assert_eq!(err["exit"], 2);
}

#[test]
fn byte_deterministic() {
    let cases: [&[&str]; 4] = [
        &["row", "prep", "--ring", "sphere2", "--row", "z,(z-2)*x,(z-2)*y", "--seed", "7"],
        &["row", "class", "--ring", "sphere2", "--row", "z,(z-2)*x,(z-2)*y", "--seed", "3"],
        &["gersten", "eq1"],
        &["demo", "sphere", "--dim", "3"],
    ];
    for args in cases {
        let a = umrow(args);
        let b = umrow(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn demos() {
    let v = json_ok(&["demo", "sphere2"]);
    assert_eq!((v["class"].clone(), v["combined"].clone()), (serde_json::json!([1]), "not free".into()));
    let v = json_ok(&["demo", "sphere", "--dim", "3"]);
    assert_eq!(v["completion_verified"], true);
    assert_eq!(v["combined"], "free");
    let v = json_ok(&["demo", "sphere4"]);
    assert_eq!(v["verdict"], "not free");
    let v = json_ok(&["demo", "sphere7"]);
    assert_eq!(v["combined"], "free");
    let (_, _, human) = umrow(&["demo", "sphere2"]);
    assert!(human.contains("verdict: not free"));
}

#[test]
fn ring_from_file() {
    let dir = std::env::temp_dir().join(format!("umrow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("circle.json");
    std::fs::write(
        &path,
        r#"{"vars":["x","y"],"relations":["x^2+y^2-1"],"dim":1,"complete_intersection":true,"rational":true,"trivial_canonical":true}"#,
    )
    .unwrap();
    let v = json_ok(&["row", "check", "--ring-file", path.to_str().unwrap(), "--row", "x,y"]);
    assert_eq!(v["unimodular"], true);
    let v = json_ok(&["row", "complete-verify", "--ring-file", path.to_str().unwrap(), "--row", "x,y"]);
    assert_eq!(v["verified"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn ops_and_completions() {
    let v = json_ok(&["row", "apply-ops", "--ring", "sphere2", "--row", "z,x,y", "--ops", r#"[{"i":2,"j":1,"h":"x"}]"#]);
    assert_eq!(v["certificate_verified"], true);
    let v = json_ok(&[
        "row", "complete-verify", "--ring", "sphere2", "--row", "1,x,y", "--matrix", r#"["1,x,y","0,1,0","0,0,1"]"#,
    ]);
    assert_eq!(v["verified"], true);
    let v = json_ok(&["row", "verdict", "--ring", "sphere3", "--row", "x1,x2,x3,x4", "--matrix",
        r#"["x1,x2,x3,x4","-x2,x1,-x4,x3","-x3,x4,x1,-x2","-x4,-x3,x2,x1"]"#]);
    assert_eq!(v["verdict"], "indeterminate under SL-action");
    assert_eq!(v["completion_verified"], true);
    let v = json_ok(&["row", "compare", "--ring", "sphere3", "--row", "x1,x2,x3,x4", "--other", "x2,x3,x1,x4"]);
    assert_eq!(v["comparison"], "E-equivalent");
}

#[test]
fn gersten_outputs() {
    let v = json_ok(&["gersten", "boundary", "--n", "3"]);
    assert_eq!(v["boundary"]["generator"], true);
    assert_eq!(v["boundary"]["twist"], "Kos(x1,x2,x3,x4)");
    let v = json_ok(&["gersten", "xi", "--n", "3"]);
    assert_eq!(v["twist"], "Kos(x2,x3,x4)");
    let v = json_ok(&["gersten", "table", "--n", "2", "--j", "3"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
    let v = json_ok(&["gersten", "eq1"]);
    assert_eq!(v["verdict"], "equal");
    assert!(v["perturbations"].as_array().unwrap().iter().all(|p| p["verdict"] == "unequal"));
    let v = json_ok(&["mwk", "relation", "--base", "F7", "--id", "1", "--args", "3,-2"]);
    assert!(v["holds"].is_boolean());
}
