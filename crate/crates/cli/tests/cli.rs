use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn flipforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flipforge"))
        .args(args)
        .env_remove("FLIPFORGE_MATERIALIZE_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn construct_4_5_with_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "g.json");
    let plan = path(dir.path(), "plan.json");
    let out = flipforge(&["construct-br", "--b", "4", "--r", "5", "--verify", "--out", &graph, "--plan-out", &plan]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "order 40\nvertices 40\ndeg (4,5)\ne (7,5)\nPASS\n");
    let plan: serde_json::Value = serde_json::from_str(&fs::read_to_string(plan).unwrap()).unwrap();
    assert_eq!(plan["n"], 40);

    let out = flipforge(&["verify", "--in", &graph, "--sequence", "4,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("PASS\n"));
    let out = flipforge(&["verify", "--in", &graph, "--sequence", "4,6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("sequence-mismatch"));
}

#[test]
fn construct_6_7_order() {
    let out = flipforge(&["construct-br", "--b", "6", "--r", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "order 56\n");
}

#[test]
fn construct_range_error() {
    let out = flipforge(&["construct-br", "--b", "3", "--r", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("b ≥ 4 required"));
    let out = flipforge(&["construct-br", "--b", "4", "--r", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("= 6 required"));
}

#[test]
fn verify_failures_and_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = path(dir.path(), "c4.json");
    fs::write(&c4, r#"{"vertices":4,"colours":2,"edges":[[0,1,1],[1,2,2],[2,3,1],[0,3,2]]}"#).unwrap();
    let out = flipforge(&["verify", "--in", &c4]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"));
    assert!(text.contains("degrees-not-increasing"));

    let out = flipforge(&["verify", "--in", &c4, "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "fail");

    let bad = path(dir.path(), "bad.json");
    fs::write(&bad, r#"{"vertices":4,"colours":2,"edges":[[0,1"#).unwrap();
    assert_eq!(flipforge(&["verify", "--in", &bad]).status.code(), Some(2));
    assert_eq!(flipforge(&["verify", "--in", &path(dir.path(), "missing.json")]).status.code(), Some(2));
    assert_eq!(flipforge(&["verify"]).status.code(), Some(2));
}

#[test]
fn cartesian_of_two_edges_is_alternating_c4() {
    let dir = tempfile::tempdir().unwrap();
    let (left, right) = (path(dir.path(), "k2c1.json"), path(dir.path(), "k2c2.json"));
    fs::write(&left, r#"{"vertices":2,"colours":2,"edges":[[0,1,1]]}"#).unwrap();
    fs::write(&right, r#"{"vertices":2,"colours":2,"edges":[[0,1,2]]}"#).unwrap();
    let out = flipforge(&["product", "--kind", "cartesian", "--left", &left, "--right", &right]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        r#"{"vertices":4,"colours":2,"edges":[[0,1,2],[0,2,1],[1,3,1],[2,3,2]]}"#
    );
    let out = flipforge(&["product", "--kind", "strong", "--left", &left, "--right", &right]);
    let g: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(g["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn cayley_pack_merge_export() {
    let dir = tempfile::tempdir().unwrap();
    let blue = path(dir.path(), "blue.json");
    let red = path(dir.path(), "red.json");
    let graph = path(dir.path(), "g.json");
    let direct = path(dir.path(), "direct.json");
    let merged = path(dir.path(), "m.json");

    let out = flipforge(&["cayley", "--group", "z:40", "--class", "1=9,18,22,31", "--sets-out", &blue]);
    assert_eq!(out.status.code(), Some(0));
    let out = flipforge(&["cayley", "--group", "z:40", "--class", "2=6,7,20,33,34", "--sets-out", &red]);
    assert_eq!(out.status.code(), Some(0));
    let out = flipforge(&["pack", "--group", "z:40", "--first", &blue, "--second", &red, "--out", &graph]);
    assert_eq!(out.status.code(), Some(0));
    let out = flipforge(&[
        "cayley", "--group", "z:40", "--class", "1=9,18,22,31", "--class", "2=6,7,20,33,34", "--out", &direct,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&graph).unwrap(), fs::read_to_string(&direct).unwrap());
    assert_eq!(flipforge(&["verify", "--in", &graph, "--sequence", "4,5"]).status.code(), Some(0));

    // overlapping connecting sets cannot be packed
    let out = flipforge(&["pack", "--group", "z:40", "--first", &blue, "--second", &blue]);
    assert_eq!(out.status.code(), Some(2));

    let out = flipforge(&["merge", "--in", &graph, "--partition", "1,2", "--out", &merged]);
    assert_eq!(out.status.code(), Some(0));
    let out = flipforge(&["verify", "--in", &merged]);
    assert!(stdout(&out).contains("deg (9)\ne (12)"));
    assert_eq!(flipforge(&["merge", "--in", &graph, "--partition", "1|1,2"]).status.code(), Some(2));

    let out = flipforge(&["export", "--in", &graph, "--dot"]);
    assert!(stdout(&out).starts_with("graph G {"));
    let out = flipforge(&["export", "--in", &graph]);
    assert_eq!(stdout(&out), fs::read_to_string(&graph).unwrap() + "\n");
}

#[test]
fn cayley_product_group_elements() {
    let out = flipforge(&["cayley", "--group", "z2xz:4", "--class", "1=0.2,1.0"]);
    assert_eq!(out.status.code(), Some(0));
    let g: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(g["vertices"], 8);
    // 0.1 is not inverse-closed on its own
    assert_eq!(flipforge(&["cayley", "--group", "z2xz:4", "--class", "1=0.1"]).status.code(), Some(2));
}

#[test]
fn bounds_table_for_11_and_25() {
    let out = flipforge(&["bounds", "--b", "11,25", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,r,old_bound,new_bound"));
    let rows: Vec<Vec<u64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 7 + 31);
    assert!(rows.iter().all(|r| r[3] < r[2]));

    let union = flipforge(&["bounds", "--b", "11", "--range", "union"]);
    assert!(stdout(&union).lines().count() > 8);
    let json = flipforge(&["bounds", "--b", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v[0]["old_bound"], 80);
    assert_eq!(v[0]["new_bound"], 56);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["bounds", "--b", "11,25"][..],
        &["construct-br", "--b", "11", "--r", "13", "--verify"],
        &["gaps-plan", "--k", "9", "--D", "110,109", "--a", "101,102", "--f-order", "1000"],
        &["search-sumfree", "--group", "z:2,10", "--mode", "greedy"],
    ] {
        assert_eq!(flipforge(args).stdout, flipforge(args).stdout);
    }
}

#[test]
fn gaps_plan_from_arithmetic_input() {
    let out = flipforge(&["gaps-plan", "--q", "2", "--k", "9", "--D", "110,109", "--a", "101,102", "--f-order", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("materialization skipped"));
    let plan: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(plan["gap"]["slack"], 1);
    assert_eq!(plan["deg_increasing"], true);
    assert_eq!(plan["e_decreasing"], true);

    let out = flipforge(&["gaps-plan", "--k", "9", "--D", "110,109", "--a", "101,102", "--f-order", "1", "--t", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("below the minimum"));
}

#[test]
fn gaps_plan_from_the_42_135_graph_reports_the_gap_condition() {
    let out = flipforge(&["gaps-plan", "--q", "2", "--k", "9", "--from-br", "42,135"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("slack -171"), "{}", stderr(&out));
}

#[test]
fn gaps_plan_relaxed_materializes() {
    let out = flipforge(&["gaps-plan", "--k", "5", "--from-br", "4,5", "--t", "1", "--relaxed"]);
    // the small instance is not a flip graph, but the prediction is exact
    assert_eq!(out.status.code(), Some(1));
    let res: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(res["outcome"]["kind"], "materialized");
    assert_eq!(res["predicted"]["deg"], res["plan"]["deg_at_t"]);

    let limited = Command::new(env!("CARGO_BIN_EXE_flipforge"))
        .args(["gaps-plan", "--k", "5", "--from-br", "4,5", "--t", "1", "--relaxed"])
        .env("FLIPFORGE_MATERIALIZE_LIMIT", "100")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(0));
    assert!(String::from_utf8(limited.stderr).unwrap().contains("exceeds limit 100"));
}

#[test]
fn search_sumfree() {
    let out = flipforge(&["search-sumfree", "--group", "z:8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["size"], 4);
    let out = flipforge(&["search-sumfree", "--group", "z:7", "--mode", "exhaustive"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(flipforge(&["search-sumfree", "--group", "z:30"]).status.code(), Some(2));
    assert_eq!(flipforge(&["search-sumfree", "--group", "z:20", "--budget", "5"]).status.code(), Some(2));
    assert_eq!(flipforge(&["search-sumfree", "--group", "q:8"]).status.code(), Some(2));
}
