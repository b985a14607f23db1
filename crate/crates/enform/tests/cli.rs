//! End-to-end tests of the command-line surface: output formats, exit
//! codes, the result cache, and the shipped fixture files.

use std::path::PathBuf;

use enform::cli::{run, CliOutcome, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn enform(args: &[&str]) -> CliOutcome {
    run(std::iter::once("enform").chain(args.iter().copied()))
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    path.to_str().unwrap().to_string()
}

fn json_of(out: &CliOutcome) -> Value {
    assert_eq!(out.code, EXIT_OK, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON output")
}

#[test]
fn count_family_fixture_via_cli() {
    let out = enform(&["count", "--box", "65536", &fixture("thm7_n10.json")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.trim(), "1156");

    let out = enform(&["count", "--box", "65536", "--format", "json", &fixture("thm7_n12.json")]);
    let v = json_of(&out);
    assert_eq!(v["count"], "4624");
    assert_eq!(v["box_radius"], 65536);
}

#[test]
fn solve_chain_fixture() {
    let out = enform(&[
        "solve",
        "--box",
        "256",
        "--format",
        "json",
        &fixture("chain_n4.json"),
    ]);
    let v = json_of(&out);
    assert_eq!(v["count"], "2");
    assert_eq!(v["solutions"][0], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(v["solutions"][1], serde_json::json!([2, 4, 16, 256]));
    assert_eq!(v["truncated"], false);
}

#[test]
fn fixtures_match_builders() {
    // Guard against fixture drift: the shipped files must equal the
    // gallery constructions.
    let quintic = enform::lower::lower_compact(
        &enform::poly::parse_equation("x1^5 - x1 = x2^2 - x2").unwrap(),
    )
    .target;
    let cases: [(&str, enform::ensys::EnSystem); 5] = [
        ("chain_n4.json", enform::gallery::build_chain(4)),
        ("thm7_n10.json", enform::gallery::build_family_1156(10)),
        ("thm7_n12.json", enform::gallery::build_family_1156(12)),
        ("thm8_depth2.json", enform::gallery::build_beyond_bound(2).system),
        ("quintic_n7.json", quintic),
    ];
    for (name, expected) in cases {
        let data = std::fs::read_to_string(fixture(name)).unwrap();
        let sys: enform::ensys::EnSystem = serde_json::from_str(&data).unwrap();
        assert_eq!(sys, expected, "{name} drifted from its builder");
        // And the files are in canonical serialized form.
        assert_eq!(
            data.trim(),
            serde_json::to_string(&expected).unwrap(),
            "{name} is not canonically serialized"
        );
    }
}

#[test]
fn gallery_example_json_has_all_solutions() {
    let out = enform(&["gallery", "example", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["n"], 7);
    assert_eq!(v["bound"], "2^(2^6)");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 12);
    assert_eq!(v["solutions"][11], serde_json::json!([30, 4930]));
}

#[test]
fn tilde_hat_rationalize_surfaces() {
    // tilde over a file with a one-equation.
    let dir = std::env::temp_dir().join(format!("enform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let sys_path = dir.join("one.json");
    std::fs::write(&sys_path, r#"{"n":2,"eqs":[["one",1]]}"#).unwrap();
    let out = enform(&["tilde", "--format", "json", sys_path.to_str().unwrap()]);
    let v = json_of(&out);
    assert_eq!(
        v["system"]["eqs"],
        serde_json::json!([["mul", 1, 1, 1], ["mul", 1, 2, 2]])
    );

    let out = enform(&["hat", "--format", "json", "x1 - 2"]);
    let v = json_of(&out);
    assert_eq!(v["num_vars"], 5);

    let out = enform(&["rationalize", "--format", "json", sys_path.to_str().unwrap()]);
    let v = json_of(&out);
    assert_eq!(v["num_vars"], 24);
    assert_eq!(v["equations"].as_array().unwrap().len(), 1 + 3 * 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lower_compact_matches_published_shape() {
    let out = enform(&[
        "lower",
        "--mode",
        "compact",
        "--format",
        "json",
        "x1^5 - x1 = x2^2 - x2",
    ]);
    let v = json_of(&out);
    assert_eq!(v["n"], 7);
    assert_eq!(v["map"]["q"], Value::Null);
    assert_eq!(v["map"]["meaning"]["5"], "x1^5");
}

#[test]
fn exit_codes() {
    assert_eq!(enform(&["no-such-command"]).code, EXIT_USAGE);
    assert_eq!(enform(&["parse", "x1 +"]).code, EXIT_USAGE);
    assert_eq!(enform(&["count", "--box", "1", "/no/such/file.json"]).code, EXIT_USAGE);
    assert_eq!(
        enform(&["lower", "--mode", "canonical", "x1^5 - x1 = x2^2 - x2"]).code,
        EXIT_INFEASIBLE
    );
    assert_eq!(enform(&["--help"]).code, EXIT_OK);
}

#[test]
fn survey_is_jsonl_and_seed_stable() {
    let a = enform(&["survey", "--n", "1", "--growth-box", "50", "--format", "json"]);
    assert_eq!(a.code, EXIT_OK);
    for line in a.stdout.lines() {
        let v: Value = serde_json::from_str(line).expect("each line is a JSON document");
        assert!(v["status"].is_string());
        assert!(v["system"]["n"].is_number());
    }
    let b = enform(&["survey", "--n", "1", "--growth-box", "50", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout, "same seed, same bytes");

    let c = enform(&[
        "survey", "--n", "3", "--growth-box", "50", "--seed", "42", "--samples", "20",
        "--format", "json",
    ]);
    let d = enform(&[
        "survey", "--n", "3", "--growth-box", "50", "--seed", "42", "--samples", "20",
        "--format", "json",
    ]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn threads_do_not_change_bytes() {
    for args in [
        vec!["gallery", "example", "--format", "json"],
        vec!["count", "--box", "65536", "--format", "json"],
        vec!["survey", "--n", "2", "--growth-box", "100", "--format", "json"],
    ] {
        let mut with_file = args.clone();
        let fixture_path = fixture("thm7_n10.json");
        if args[0] == "count" {
            with_file.push(&fixture_path);
        }
        let mut one = with_file.clone();
        one.extend(["--threads", "1"]);
        let mut four = with_file.clone();
        four.extend(["--threads", "4"]);
        let a = enform(&one);
        let b = enform(&four);
        assert_eq!(a.code, EXIT_OK);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
    }
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("enform-cache-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    let dir_s = dir.to_str().unwrap();
    let args = [
        "bound", "--domain", "integer", "--format", "json", "--cache-dir", dir_s,
        "x1 - 1 = 0",
    ];
    let first = enform(&args);
    assert_eq!(first.code, EXIT_OK);
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(files.len(), 1, "one cache document per result");
    let cached: Value =
        serde_json::from_str(&std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap())
            .unwrap();
    assert_eq!(cached["key"]["cmd"], "bound");
    assert_eq!(cached["output"], first.stdout.as_str());

    let second = enform(&args);
    assert_eq!(second.stdout, first.stdout, "cache must replay identical bytes");

    // A different flag produces a different cache entry.
    let text = enform(&[
        "bound", "--domain", "integer", "--cache-dir", dir_s, "x1 - 1 = 0",
    ]);
    assert_eq!(text.code, EXIT_OK);
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn semi_cli_round_trip() {
    let out = enform(&[
        "semi",
        "--override-start",
        "3",
        "--cutoff",
        "10",
        "--format",
        "json",
        "x1 = x2",
    ]);
    let v = json_of(&out);
    assert_eq!(v["outcome"]["outcome"], "found_at_shell");
    assert_eq!(v["outcome"]["alpha"], 3);
    assert_eq!(v["outcome"]["witness"], serde_json::json!([3, 3]));

    let refused = enform(&["semi", "--format", "json", "x1 - 1 = 0"]);
    let v = json_of(&refused);
    assert_eq!(v["outcome"]["outcome"], "refused_symbolic_start");
    assert_eq!(v["start"]["expression"], "2^(2^8)+1");
}

#[test]
fn probe_strict_flag() {
    let lax = enform(&["probe", "--horizon", "50", "--format", "json", "5,25"]);
    let v = json_of(&lax);
    assert_eq!(v["verdict"]["witness"], serde_json::json!([3, 9]));
    let strict = enform(&["probe", "--strict", "--horizon", "50", "--format", "json", "5,25"]);
    let v = json_of(&strict);
    assert_eq!(v["verdict"]["witness"], serde_json::json!([6, 36]));
}

#[test]
fn gallery_beyond_bound_summary() {
    let out = enform(&["gallery", "thm8", "--depth", "2", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["base"], 16);
    assert_eq!(v["modulus"], "73728");
    assert_eq!(v["witness_valid"], true);
    assert_eq!(v["x11_meets_floor"], true);
    assert_eq!(v["system"]["n"], 21);
}
