//! End-to-end tests of the command-line interface: golden stdout,
//! exit codes, the JSON dump shape, and error reporting.

use std::path::PathBuf;
use std::process::Command;

fn program(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("programs")
        .join(format!("{name}.whl"))
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run(args: &[&str]) -> Run {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polystrata"));
    cmd.args(args).env_remove("POLYSTRATA_RATIONAL_STYLE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is UTF-8"),
        code: out.status.code().expect("no signal"),
    }
}

fn analyze(name: &str, extra: &[&str]) -> Run {
    let path = program(name);
    let mut args = vec!["analyze", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn classic_counter_golden_stdout() {
    let r = analyze("count_to_six", &["--method", "classic"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "\
method: classic
domain: polyhedra
node 0:
  true
node 1 [loop test]:
  i <= 6
  i >= 1
node 2 [loop head]:
  i <= 5
  i >= 1
node 3:
  i = 6
widenings: 1
narrowing passes: 2
"
    );
}

#[test]
fn golden_widening_trace_stdout() {
    let r = analyze(
        "triangular_sum",
        &[
            "--method",
            "classic",
            "--widen-at",
            "body-entry",
            "--delay",
            "0",
            "--narrowing",
            "1",
            "--trace",
        ],
    );
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "\
method: classic
domain: polyhedra
trace:
  n2 seed: j = 0 ; i = 1
  n2 widen: i - j = 1 ; j >= 0
  n2 widen: -i + j >= -1 ; 7*i - 4*j >= 7
  n2 widen: -i + j >= -1
  n2 widen: true
  n2 narrow: i <= 5
node 0:
  true
node 1 [loop test]:
  i <= 6
node 2 [loop head]:
  i <= 5
node 3:
  i <= 5
node 4:
  i = 6
widenings: 4
narrowing passes: 1
"
    );
}

#[test]
fn dump_strata_golden() {
    let r = analyze(
        "triangular_sum",
        &["--method", "strata-v1", "--delay", "0", "--dump-strata"],
    );
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "\
method: strata-v1
domain: polyhedra
strata:
  S0 = { i }
  S1 = { i, j }
  S0 < S1
node 0:
  true
node 1 [loop test]:
  -3*i + j >= -6
  -2*i + j >= -3
  i <= 6
  -i + j >= -1
  i >= 1
node 2 [loop head]:
  -3*i + j >= -6
  -2*i + j >= -3
  i <= 5
  -i + j >= -1
  i >= 1
node 3:
  -4*i + j >= -6
  -3*i + j >= -3
  -2*i + j >= -1
  i <= 5
  i >= 1
node 4:
  i = 6
  j >= 12
widenings: 4
narrowing passes: 2
"
    );
}

#[test]
fn default_method_is_strata_v2() {
    let r = analyze("triangular_sum", &[]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .starts_with("method: strata-v2\ndomain: polyhedra\n"));
    // The up-to variant with the default one-iteration delay keeps one
    // more hull facet than the raw variant run undelayed.
    assert!(r
        .stdout
        .contains("node 2 [loop head]:\n  -4*i + j >= -10\n"));
    assert!(r.stdout.ends_with("widenings: 3\nnarrowing passes: 2\n"));
}

#[test]
fn product_band_golden() {
    let r = analyze("race", &["--method", "product-w2", "--delay", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "\
method: product-w2
domain: polyhedra
node 0:
  true
node 1 [loop test]:
  -i + j >= -1
  j >= 0
  i - j >= 0
node 2 [loop head]:
  -i + j >= -1
  j >= 0
  i - j >= 0
node 3:
  i - j = 0
  j >= 0
node 4:
  i - j = 1
  j >= 0
widenings: 2
narrowing passes: 1
"
    );
}

#[test]
fn divergence_reports_trailing_iterates_and_exits_2() {
    let r = analyze("race", &["--method", "product-closure", "--delay", "4"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.starts_with("method: product-closure\n"));
    assert!(r
        .stdout
        .contains("divergence suspected: node 1 exceeded 100 widenings\n"));
    assert!(r.stdout.contains("last iterates at node 1:\n"));
    // The alternating interval creep of the closure variant is visible in
    // the final recorded tuples.
    assert!(r.stdout.contains(
        "n1 widen | {i}: i <= 52 ; i >= 0 | {j}: j <= 52 ; j >= 0 | \
         {i,j}: i <= 52 ; -i + j >= -1 ; j >= 0 ; i - j >= 0\n"
    ));
}

#[test]
fn interval_domain_golden() {
    let r = analyze(
        "triangular_sum",
        &["--method", "classic", "--domain", "intervals"],
    );
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "\
method: classic
domain: intervals
node 0:
  true
node 1 [loop test]:
  i >= 1
  i <= 6
  j >= 0
node 2 [loop head]:
  i >= 1
  i <= 5
  j >= 0
node 3:
  i >= 1
  i <= 5
  j >= 1
node 4:
  i = 6
  j >= 0
widenings: 1
narrowing passes: 2
"
    );
}

#[test]
fn json_dump_shape() {
    let r = analyze("count_to_six", &["--method", "classic", "--json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(v["method"], "classic");
    assert_eq!(v["domain"], "polyhedra");
    assert_eq!(v["iterations"], 1);
    assert_eq!(v["converged"], true);
    assert!(
        v.get("divergence").is_none(),
        "no divergence key on success"
    );
    let nodes = v["nodes"].as_array().expect("nodes array");
    assert_eq!(nodes.len(), 4);
    assert!(nodes[0].get("role").is_none(), "plain nodes carry no role");
    assert_eq!(nodes[1]["role"], "loop test");
    assert_eq!(nodes[2]["role"], "loop head");
    assert_eq!(
        nodes[2]["invariant"],
        serde_json::json!(["i <= 5", "i >= 1"])
    );
}

#[test]
fn json_divergence_shape() {
    let r = analyze(
        "race",
        &["--method", "product-closure", "--delay", "4", "--json"],
    );
    assert_eq!(r.code, 2);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(v["converged"], false);
    assert_eq!(v["iterations"], 100);
    assert_eq!(v["divergence"]["node"], 1);
    assert_eq!(v["divergence"]["widenings"], 100);
    // Partial invariants are still dumped.
    assert!(v["nodes"].as_array().is_some_and(|n| n.len() == 5));
}

#[test]
fn compare_golden() {
    let path = program("triangular_sum");
    let r = run(&[
        "compare",
        path.to_str().unwrap(),
        "--method-a",
        "classic",
        "--method-b",
        "strata-v1",
        "--delay",
        "0",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "\
method a: classic (polyhedra)
method b: strata-v1 (polyhedra)
node 0: equal
node 1 [loop test]: stronger
node 2 [loop head]: stronger
node 3: stronger
node 4: stronger
summary: equal 1, stronger 4, weaker 0, incomparable 0
"
    );
}

#[test]
fn compare_across_domains() {
    // Classic interval narrowing recovers bounds (i >= 1, j >= 0) that
    // classic polyhedral widening discarded, so on this program the boxes
    // are strictly tighter at the loop nodes: method b reads as weaker.
    let path = program("triangular_sum");
    let r = run(&[
        "compare",
        path.to_str().unwrap(),
        "--method-a",
        "classic",
        "--domain-a",
        "intervals",
        "--method-b",
        "classic",
        "--domain-b",
        "polyhedra",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "\
method a: classic (intervals)
method b: classic (polyhedra)
node 0: equal
node 1 [loop test]: weaker
node 2 [loop head]: weaker
node 3: weaker
node 4: weaker
summary: equal 1, stronger 0, weaker 4, incomparable 0
"
    );
}

#[test]
fn compare_self_is_equal_everywhere() {
    let path = program("race");
    let r = run(&[
        "compare",
        path.to_str().unwrap(),
        "--method-a",
        "product-w2",
        "--method-b",
        "product-w2",
        "--delay",
        "4",
    ]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .ends_with("summary: equal 5, stronger 0, weaker 0, incomparable 0\n"));
}

#[test]
fn compare_divergence_exits_2() {
    let path = program("race");
    let r = run(&[
        "compare",
        path.to_str().unwrap(),
        "--method-a",
        "classic",
        "--method-b",
        "product-closure",
        "--delay",
        "4",
    ]);
    assert_eq!(r.code, 2);
    assert!(r
        .stdout
        .contains("method b diverged: node 1 exceeded 100 widenings; no comparison"));
}

#[test]
fn oracle_check_reports_exhaustive_agreement() {
    let r = analyze("triangular_sum", &["--check-oracle"]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .contains("oracle: 306 states enumerated over [-8, 8], cap 100000 (complete)\n"));
    assert!(r.stdout.ends_with("oracle: no violations\n"));
}

#[test]
fn parse_errors_carry_location_and_exit_1() {
    let dir = std::env::temp_dir();
    let path = dir.join("polystrata_cli_test_bad.whl");
    std::fs::write(&path, "int i = 1\nint j = 2;\n").unwrap();
    let r = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(
        r.stderr.contains(":2:1: syntax error: expected ',' or ';'"),
        "stderr was: {}",
        r.stderr
    );
    assert!(r.stdout.is_empty());
    std::fs::remove_file(&path).ok();
}

#[test]
fn missing_file_exits_1() {
    let r = run(&["analyze", "/nonexistent/nothing.whl"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("error:"));
}

#[test]
fn incompatible_placement_is_a_config_error() {
    let r = analyze(
        "count_to_six",
        &["--method", "strata-v1", "--widen-at", "body-entry"],
    );
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("configuration error"));
}

#[test]
fn zero_max_iterations_rejected() {
    let r = analyze("count_to_six", &["--max-iterations", "0"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("--max-iterations"));
}

#[test]
fn invalid_rational_style_env_exits_1() {
    let r = run_with_env(
        &["analyze", program("count_to_six").to_str().unwrap()],
        &[("POLYSTRATA_RATIONAL_STYLE", "bogus")],
    );
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("POLYSTRATA_RATIONAL_STYLE"));
}

#[test]
fn timing_goes_to_stderr_only() {
    let r = analyze("count_to_six", &[]);
    assert_eq!(r.code, 0);
    assert!(!r.stdout.contains("wall time"));
    assert!(r.stderr.contains("wall time:"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = analyze("fan", &[]);
    let b = analyze("fan", &[]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let a = analyze("nested_counters", &["--method", "product-w1", "--trace"]);
    let b = analyze("nested_counters", &["--method", "product-w1", "--trace"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn help_lists_both_commands() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("analyze"));
    assert!(r.stdout.contains("compare"));
}
