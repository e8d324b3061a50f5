use std::io::Write;
use std::process::{Command, Output, Stdio};

use genprod::catalog;
use genprod::io::{serialize_instance, write_edge_list};
use genprod::product::otimes_h;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_genprod"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", out.stdout))
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let a = run(&["gen", "--seed", "7", "--kind", "circ", "--mixed"], "");
    let b = run(&["gen", "--seed", "7", "--kind", "circ", "--mixed"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let inst = genprod::io::parse_instance(&text).unwrap();
    assert_eq!(serialize_instance(&inst), text);
}

#[test]
fn gen_refuses_unsatisfiable_constraints() {
    let out = run(&["gen", "--density", "0", "--min-degree-one"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn connect_four_triangles() {
    let out = run(&["connect", "-"], &serialize_instance(&catalog::four_triangles().into()));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["bfs"]["component_count"], 4);
    // perfect matchings are disconnected members, outside the theorem
    assert!(v["theorem"]["error"].is_string());
    assert_eq!(v["family"]["component_count"], 4);
}

#[test]
fn product_formats() {
    let doc = serialize_instance(&catalog::two_hexagons().into());
    let out = run(&["product", "-", "--format", "edgelist"], &doc);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("12 12\n"));
    let out = run(&["product", "-"], &doc);
    let v = json(&out);
    assert_eq!(v["graph"]["order"], 12);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
}

#[test]
fn invariant_with_bounds() {
    let doc = serialize_instance(&catalog::k4_bound_strict().into());
    let v = json(&run(&["invariant", "chi", "-"], &doc));
    assert_eq!(v["value"], 3);
    assert!(v["bounds"].as_array().unwrap().iter().all(|b| b["satisfied"] == true));
    let v = json(&run(&["invariant", "chi_h", "-", "--demands", "2,2,2,2,2"], &write_edge_list(&genprod::Graph::cycle(5))));
    assert_eq!(v["value"], 5);
}

#[test]
fn kappa_matches_formula_on_circ() {
    let doc = serialize_instance(&catalog::diamond_circ().into());
    let out = run(&["kappa", "-"], &doc);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"], v["formula"]);
    let out = run(&["lambda", "-"], &doc);
    let v = json(&out);
    assert_eq!(v["value"], v["formula"]);
}

#[test]
fn decompose_two_hexagons() {
    let g = otimes_h(&catalog::two_hexagons()).graph;
    let out = run(&["decompose", "-", "--k", "3"], &write_edge_list(&g));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["decomposition"]["blocks"].as_array().unwrap().len(), 3);
    let out = run(&["decompose", "-", "--k", "3"], &write_edge_list(&genprod::Graph::complete(3)));
    assert!(json(&out)["decomposition"].is_null());
}

#[test]
fn verify_reports_in_seed_order() {
    let out = run(&["verify", "--suite", "fiber-family", "--seed", "5..20"], "");
    assert!(out.status.success());
    let v = json(&out);
    let seeds: Vec<u64> = v["reports"].as_array().unwrap().iter().map(|r| r["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, (5..=20).collect::<Vec<_>>());
    assert_eq!(v["tally"]["violations"], 0);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&["verify", "--suite", "nope"], "").status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    let out = run(&["connect", "-"], "{\"kind\":\"otimes\",\n\"base\":3}");
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn missing_assignment_names_the_edge() {
    let doc = r#"{"assignment":[["0-1",0]],"base":{"edges":[[0,1],[1,2]],"order":3},"family":[{"edges":[[0,1]],"order":2}],"kind":"otimes"}"#;
    let out = run(&["connect", "-"], doc);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1-2"));
}

#[test]
fn kappa_formula_refused_on_mixed_orders() {
    let out = run(&["kappa", "-"], &serialize_instance(&catalog::triangle_circ().into()));
    assert!(out.status.success());
    assert!(json(&out)["formula"].is_null());
    assert!(String::from_utf8_lossy(&out.stderr).contains("formula not applicable"));
}
