use std::path::Path;

use knotrep_cli::{digest, run};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn knotrep(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("knotrep").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = knotrep(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn colorings_of_the_trefoil() {
    let t = fixture("trefoil.braid");
    assert_eq!(knotrep(&["colorings", "--knot", &t, "--n", "3"]), (0, "9\n".into(), String::new()));
    let (code, v) = json(&["colorings", "--knot", &t]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["colorings"], 9);
    assert_eq!(v["knot"]["sha256"], digest(&std::fs::read_to_string(&t).unwrap()));
    assert_eq!(knotrep(&["colorings", "--knot", &t, "--n", "1"]).0, 1);
}

#[test]
fn bundled_fixtures_resolve_by_name() {
    let (code, v) = json(&["colorings", "--knot", "figure8.dt", "--n", "5"]);
    assert_eq!((code, v["colorings"].as_u64()), (0, Some(25)));
    let (code, _, err) = knotrep(&["colorings", "--knot", "missing.braid"]);
    assert_eq!(code, 1);
    assert!(err.contains("missing.braid"));
    let odd = std::env::temp_dir().join(format!("knotrep-{}.txt", std::process::id()));
    std::fs::write(&odd, "4, 6, 2\n").unwrap();
    let odd = odd.to_string_lossy().into_owned();
    let (code, _, err) = knotrep(&["colorings", "--knot", &odd]);
    assert_eq!(code, 1);
    assert!(err.contains("--format"), "{err}");
    let (code, out, _) = knotrep(&["colorings", "--knot", &odd, "--format", "dt"]);
    std::fs::remove_file(&odd).unwrap();
    assert_eq!((code, out.as_str()), (0, "9\n"));
}

#[test]
fn hom_counts_and_separation() {
    let (code, v) = json(&[
        "homs",
        "--knot",
        "trefoil.dt",
        "--group",
        "C3,S3,q8.perm",
        "--conjugacy",
        "--separate",
        "g0 g1 g0^-1 g1^-1",
    ]);
    assert_eq!(code, 0);
    let counts: Vec<u64> = v["targets"].as_array().unwrap().iter().map(|t| t["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [3, 12, 8]);
    assert_eq!(v["separation"]["status"], "found");
    assert_eq!(v["separation"]["group"], "S3");
    assert_eq!(v["separation"]["satisfied"], true);
}

#[test]
fn hom_budget_is_reported_as_incomplete() {
    let (code, v) = json(&["homs", "--knot", "cinquefoil.braid", "--group", "S5", "--max-search", "10"]);
    assert_eq!(code, 2);
    assert_eq!(v["targets"][0]["incomplete"], true);
    assert_eq!(v["targets"][0]["search_space"], 120 * 120);
}

#[test]
fn wirtinger_and_parse() {
    let (code, out, _) = knotrep(&["wirtinger", "--knot", "figure8.pd"]);
    assert_eq!(code, 0);
    assert!(out.contains("deficiency 1"));
    assert!(out.contains("abelianization: Z\n"));
    let (code, v) = json(&["parse", "--knot", "trefoil.braid"]);
    assert_eq!(code, 0);
    assert_eq!(v["crossings"], 3);
    assert_eq!(v["writhe"], 3);
}

#[test]
fn unsupported_targets_are_usage_errors() {
    let (code, _, err) = knotrep(&["dim", "--knot", "trefoil.braid", "--model", "so5"]);
    assert_eq!(code, 1);
    assert!(err.contains("SO(5)"), "{err}");
    assert_eq!(knotrep(&["dim", "--knot", "trefoil.braid", "--gauge", "fix2"]).0, 1);
    assert_eq!(knotrep(&["frobnicate"]).0, 1);
    assert_eq!(knotrep(&["--help"]).0, 0);
}

#[test]
fn ideal_dump_has_a_header_and_is_reproducible() {
    let args = ["ideal", "--knot", "trefoil.braid", "--model", "su2", "--gauge", "fix1"];
    let (code, a, _) = knotrep(&args);
    assert_eq!(code, 0);
    assert_eq!(knotrep(&args).1, a);
    let header: serde_json::Value = serde_json::from_str(a.lines().next().unwrap()).unwrap();
    assert_eq!(header["schema"], 1);
    assert!(a.contains("vars: "));
}

#[test]
fn dimension_of_the_trefoil() {
    let (code, v) = json(&["dim", "--knot", "trefoil.braid", "--model", "su2,so2", "--gauge", "fix1"]);
    assert_eq!(code, 0);
    let d = &v["dimensions"];
    assert_eq!(d[0]["dimension_list"], serde_json::json!([2, 1]));
    assert_eq!(d[0]["variables"], 6);
    assert_eq!(d[1]["dimension_list"], serde_json::json!([1]));
}

#[test]
fn compare_unknot_with_itself() {
    let (code, v) = json(&["compare", "--a", "unknot.pd", "--b", "unknot.braid", "--model", "su2"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["combined"], "ConsistentBothOrEqual");
    assert_eq!(v["report"]["entries"][0]["verdict"], "Equal");
}

#[test]
fn compare_output_is_deterministic() {
    let args = ["--json", "compare", "--a", "trefoil.pd", "--b", "unknot.pd", "--model", "su2,so2", "--gauge", "fix1"];
    let (code, first, _) = knotrep(&args);
    assert_eq!(code, 0);
    assert_eq!(knotrep(&args).1, first);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["report"]["combined"], "ConsistentWith(A>=B)");
    assert_eq!(v["report"]["heuristic"], true);
}

#[test]
fn exhausted_time_budget_exits_two() {
    let (code, v) = json(&["dim", "--knot", "figure8.dt", "--model", "so3", "--gauge", "none", "--budget-secs", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["dimensions"][0]["complete"], false);
}

#[test]
fn lemma_demo_passes() {
    let (code, v) = json(&["lemma-demo"]);
    assert_eq!(code, 0);
    assert!(v["demos"].as_array().unwrap().iter().all(|d| d["ok"] == true));
}
