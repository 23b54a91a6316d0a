//! End-to-end tests driving the compiled binary. Every run strips the
//! ceiling environment variable first so the ambient shell cannot change
//! outcomes; tests that need it set it explicitly.

use std::path::PathBuf;
use std::process::Output;

use serde_json::Value;
use specialty::constructions::icosahedron;
use specialty::formulas::{max_specialty_bipartite, max_specialty_planar};
use specialty::graph6::{decode_graph6, encode_graph6};
use specialty::planarity::{is_bipartite, is_forest, is_planar};
use specialty::specialty as specialty_of;

fn run(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_specialty"))
        .args(args)
        .env_remove("SPECIALTY_CEILING")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], value: &str) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_specialty"))
        .args(args)
        .env("SPECIALTY_CEILING", value)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn report(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).expect("stdout is one JSON report")
}

/// Fresh path in the system temp dir; each caller passes a distinct tag.
fn temp_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("specialty-cli-{}-{tag}", std::process::id()))
}

#[test]
fn formula_matches_the_documented_values() {
    let out = run(&["formula", "--family", "all", "2017"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "formula");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["inputs"]["n"], "2017");
    assert_eq!(r["results"][0]["value"], 127_009);
    assert_eq!(r["results"][0]["N"], 2017);

    let out = run(&["formula", "--family", "all", "15"]);
    assert_eq!(report(&out)["results"][0]["value"], 75);

    let out = run(&["formula", "--family", "forest", "1"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["results"][0]["value"], 1);
}

#[test]
fn formula_reports_the_open_planar_range_as_unknown() {
    let out = run(&["formula", "--family", "planar", "20"]);
    assert_eq!(code(&out), 0, "a lower bound is an answer, not an error");
    let r = report(&out);
    assert_eq!(r["status"], "unknown");
    assert_eq!(r["results"][0]["case_label"], "open-question-lower-bound");
    assert_eq!(r["results"][0]["value"], 80);
}

#[test]
fn usage_errors_exit_with_code_two() {
    // Unknown family, zero edges, missing arguments, unknown subcommand.
    let out = run(&["formula", "--family", "trees", "5"]);
    assert_eq!(code(&out), 2);

    let out = run(&["formula", "--family", "all", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("edge count"));
    assert!(stdout(&out).is_empty());

    let out = run(&["formula"]);
    assert_eq!(code(&out), 2);

    let out = run(&["conjure"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_emits_a_verified_graph6_witness() {
    let out = run(&["construct", "--family", "all", "31"]);
    assert_eq!(code(&out), 0);
    let g = decode_graph6(stdout(&out).trim()).unwrap();
    assert_eq!(g.edge_count(), 31);
    assert_eq!(g.vertex_count(), 9);
    assert_eq!(specialty_of(&g), 211);
    assert!(stderr(&out).contains("specialty = 211"));

    let out = run(&["construct", "--family", "bipartite", "45"]);
    let g = decode_graph6(stdout(&out).trim()).unwrap();
    assert!(is_bipartite(&g));
    assert_eq!(g.vertex_count(), 14);
    assert_eq!(specialty_of(&g), max_specialty_bipartite(45).unwrap().value);

    let out = run(&["construct", "--family", "planar", "42"]);
    let g = decode_graph6(stdout(&out).trim()).unwrap();
    assert!(is_planar(&g));
    assert_eq!(g.edge_count(), 42);
    assert_eq!(specialty_of(&g), max_specialty_planar(42).unwrap().value);

    let out = run(&["construct", "--family", "forest", "5"]);
    let g = decode_graph6(stdout(&out).trim()).unwrap();
    assert!(is_forest(&g));
    assert_eq!(specialty_of(&g), 8);
}

#[test]
fn construct_dot_output_is_a_graph_block() {
    let out = run(&["construct", "--family", "planar", "42", "--format", "dot"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("graph {"));
    assert!(text.trim_end().ends_with('}'));
    assert_eq!(text.matches(" -- ").count(), 42);
}

#[test]
fn construct_json_carries_the_witness_and_open_status() {
    let out = run(&["construct", "--family", "planar", "31", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "construct");
    assert_eq!(r["status"], "unknown");
    let row = &r["results"][0];
    assert_eq!(row["value"], 149);
    assert_eq!(row["case_label"], "open-question-lower-bound");
    let g = decode_graph6(row["witness"].as_str().unwrap()).unwrap();
    assert!(is_planar(&g));
    assert_eq!(g.edge_count(), 31);
    assert_eq!(specialty_of(&g), 149);
}

#[test]
fn construct_below_the_planar_floor_is_an_input_error() {
    let out = run(&["construct", "--family", "planar", "12"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("21"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn verify_is_quiet_on_success_and_deterministic() {
    let a = run(&["verify", "--family", "all", "1..200"]);
    assert_eq!(code(&a), 0);
    let r = report(&a);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["results"].as_array().unwrap().len(), 0);
    assert!(stderr(&a).is_empty());

    let b = run(&["verify", "--family", "all", "1..200"]);
    assert_eq!(a.stdout, b.stdout);

    // A bare edge count is the one-element range.
    let out = run(&["verify", "--family", "bipartite", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["inputs"]["range"], "7..7");
}

#[test]
fn verify_marks_unbuildable_edge_counts_unknown() {
    // No planar witness exists below 21 edges, which is a gap in coverage,
    // not a formula failure.
    let out = run(&["verify", "--family", "planar", "1..40"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["status"], "unknown");
    assert_eq!(r["results"].as_array().unwrap().len(), 0);
    assert!(stderr(&out).contains("N=20"));
    assert!(!stderr(&out).contains("N=21"));

    let out = run(&["verify", "--family", "planar", "21..60"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["status"], "ok");
}

#[test]
fn verify_rejects_malformed_ranges() {
    for bad in ["0..5", "9..3", "a..b", ""] {
        let out = run(&["verify", "--family", "all", bad]);
        assert_eq!(code(&out), 2, "range {bad:?}");
    }
}

#[test]
fn oracle_agrees_with_the_formula() {
    let out = run(&["oracle", "--family", "all", "15", "--cap", "lemma"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["results"][0]["value"], 75);
    let oracle = &r["results"][1];
    assert_eq!(oracle["max_value"], 75);
    assert_eq!(oracle["cap_mode"], "lemma");
    assert_eq!(oracle["witnesses"], serde_json::json!(["E~~w"]));

    let out = run(&["oracle", "--family", "bipartite", "6"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    let oracle = &r["results"][1];
    assert_eq!(oracle["max_value"], 12);
    for w in oracle["witnesses"].as_array().unwrap() {
        let g = decode_graph6(w.as_str().unwrap()).unwrap();
        assert!(is_bipartite(&g));
        assert_eq!(g.edge_count(), 6);
        assert_eq!(specialty_of(&g), 12);
    }
}

#[test]
fn oracle_workers_do_not_change_the_answer() {
    // The report echoes the jobs count among its inputs, so compare the
    // findings: results with the timing removed, plus the verdict.
    let strip = |out: &Output| {
        let mut r = report(out);
        r["results"][1]
            .as_object_mut()
            .unwrap()
            .remove("elapsed")
            .expect("oracle reports carry a timing field");
        (r["results"].clone(), r["status"].clone())
    };
    let one = run(&["oracle", "--family", "all", "7"]);
    let two = run(&["oracle", "--family", "all", "7", "--jobs", "2"]);
    assert_eq!(code(&one), 0);
    assert_eq!(code(&two), 0);
    assert_eq!(strip(&one), strip(&two));
}

#[test]
fn oracle_refuses_oversized_enumerations_with_code_three() {
    // 15 edges under the assumption-free cap means up to 30 vertices;
    // the class-count estimate is far beyond the default ceiling.
    let out = run(&["oracle", "--family", "all", "15"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("exceeds the ceiling"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn ceiling_comes_from_flag_then_environment() {
    let out = run_with_env(&["oracle", "--family", "forest", "3"], "1");
    assert_eq!(code(&out), 3);

    // The flag outranks the environment.
    let out = run_with_env(
        &["oracle", "--family", "forest", "3", "--ceiling", "1000000"],
        "1",
    );
    assert_eq!(code(&out), 0);

    let out = run_with_env(&["oracle", "--family", "forest", "3"], "three");
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("SPECIALTY_CEILING"));
}

#[test]
fn lemma_cap_is_rejected_outside_the_unrestricted_family() {
    let out = run(&["oracle", "--family", "forest", "6", "--cap", "lemma"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unrestricted"));
}

#[test]
fn inspect_reports_one_record_per_graph_line() {
    let path = temp_path("inspect-ok");
    let ico = encode_graph6(&icosahedron());
    std::fs::write(&path, format!("C~\n\n   \nE~~w\n{ico}\n")).unwrap();
    let out = run(&["inspect", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rows: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3, "blank lines are skipped");
    assert_eq!(rows[0]["line"], 1);
    assert_eq!(rows[1]["line"], 4);
    assert_eq!(rows[2]["line"], 5);

    // K4: every edge has min degree 3, one triangle per omitted vertex.
    assert_eq!(rows[0]["vertices"], 4);
    assert_eq!(rows[0]["edges"], 6);
    assert_eq!(rows[0]["S"], 18);
    assert_eq!(rows[0]["M1"], 36);
    assert_eq!(rows[0]["M3"], 0);
    assert_eq!(rows[0]["triangles"], 4);
    assert_eq!(rows[0]["bipartite"], false);
    assert_eq!(rows[0]["forest"], false);
    assert_eq!(rows[0]["planar"], true);

    // K6 is the smallest clique that loses planarity.
    assert_eq!(rows[1]["S"], 75);
    assert_eq!(rows[1]["triangles"], 20);
    assert_eq!(rows[1]["planar"], false);

    assert_eq!(rows[2]["vertices"], 12);
    assert_eq!(rows[2]["edges"], 30);
    assert_eq!(rows[2]["S"], 150);
    assert_eq!(rows[2]["planar"], true);
    std::fs::remove_file(&path).ok();
}

#[test]
fn inspect_flags_bad_lines_and_keeps_going() {
    let path = temp_path("inspect-bad");
    std::fs::write(&path, "C~\n#garbage\nE~~w\n").unwrap();
    let out = run(&["inspect", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"));
    assert_eq!(
        stdout(&out).lines().count(),
        2,
        "good lines still produce records"
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn inspect_handles_empty_and_missing_files() {
    let path = temp_path("inspect-empty");
    std::fs::write(&path, "").unwrap();
    let out = run(&["inspect", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    std::fs::remove_file(&path).ok();

    let out = run(&["inspect", "/nonexistent/specialty-probe"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn explore_is_seeded_and_reports_the_open_status() {
    let args = &["explore", "24", "--seed", "7", "--budget", "2000"];
    let a = run(args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, run(args).stdout, "same seed, same bytes");
    assert!(stderr(&a).contains("lower bound (open question)"));

    let r = report(&a);
    assert_eq!(r["command"], "explore");
    assert_eq!(r["status"], "unknown");
    let row = &r["results"][0];
    assert_eq!(row["case_label"], "open-question-lower-bound");
    let value = row["value"].as_u64().unwrap();
    assert!(value >= max_specialty_planar(24).unwrap().value);
    let g = decode_graph6(row["witness"].as_str().unwrap()).unwrap();
    assert!(is_planar(&g));
    assert_eq!(g.edge_count(), 24);
    assert_eq!(specialty_of(&g), value);
}

#[test]
fn explore_is_limited_to_the_open_range() {
    for n in ["9", "33"] {
        let out = run(&["explore", n]);
        assert_eq!(code(&out), 2, "N = {n}");
        assert!(stderr(&out).contains("10..=32"));
    }
}

#[test]
fn pretty_adds_stderr_without_touching_stdout() {
    let plain = run(&["formula", "--family", "all", "15"]);
    let pretty = run(&["formula", "--family", "all", "15", "--pretty"]);
    assert_eq!(plain.stdout, pretty.stdout);
    assert!(stderr(&plain).is_empty());
    assert!(stderr(&pretty).contains("case"));
}
