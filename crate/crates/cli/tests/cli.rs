use std::path::Path;
use std::process::Command;

use sdgroup_cli::{run, ResultRecord, EXIT_MATH, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

const F5_MAP: &str = r#"{"domain":{"p":5,"ell":1,"modulus":[0,1]},"codomain":{"p":5,"ell":1,"modulus":[0,1]},"images":[[0],[1],[3],[2],[4]]}"#;
const F5_SQUARE: &str = r#"{"domain":{"p":5,"ell":1,"modulus":[0,1]},"codomain":{"p":5,"ell":1,"modulus":[0,1]},"images":[[0],[1],[4],[4],[1]]}"#;

fn sd(args: &[&str]) -> sdgroup_cli::Outcome {
    run(std::iter::once("sd").chain(args.iter().copied()))
}

fn record(args: &[&str]) -> (ResultRecord, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = sd(&full);
    let rec: ResultRecord = serde_json::from_str(out.stdout.trim_end())
        .unwrap_or_else(|e| panic!("{args:?}: bad record {e}: {:?} / {:?}", out.stdout, out.stderr));
    (rec, out.code)
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/result-record.schema.json");
    let text = std::fs::read_to_string(path).expect("schema file shipped in docs/");
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

#[test]
fn exit_code_matrix() {
    let bin = env!("CARGO_BIN_EXE_sd");
    let cases: &[(&[&str], i32)] = &[
        (&["group", "--q", "5"], EXIT_OK),
        (&["group", "--q", "4"], EXIT_OK),
        (&["group", "--q", "6"], EXIT_USAGE),
        (&["group"], EXIT_USAGE),
        (&["frobnicate"], EXIT_USAGE),
        (&["sweep", "--max-q", "2", "--no-cache"], EXIT_USAGE),
        (&["sweep", "--max-q", "30", "--jobs", "0", "--no-cache"], EXIT_USAGE),
        (&["sweep", "--max-q", "30", "--no-cache"], EXIT_OK),
        (&["power", "--m", "3", "--q", "5"], EXIT_OK),
        (&["power", "--m", "2", "--q", "7"], EXIT_MATH),
        (&["power", "--m", "3", "--descriptor", r#"{"characteristic":2}"#], EXIT_USAGE),
        (&["power", "--m", "3", "--descriptor", r#"{"characteristic":2,"roots_of_unity":"prime_field_only"}"#], EXIT_OK),
        (&["power", "--m", "3", "--descriptor", "not json"], EXIT_USAGE),
        (&["check-map", "--map", F5_MAP], EXIT_OK),
        (&["check-map", "--map", F5_SQUARE], EXIT_MATH),
        (&["check-map", "--map", "{}"], EXIT_USAGE),
        (&["f5", "--q", "7"], EXIT_OK),
        (&["f5", "--q", "8"], EXIT_USAGE),
        (&["recurrence", "--n", "6"], EXIT_OK),
        (&["verify-identities", "--kmax", "10"], EXIT_OK),
        (&["verify-identities", "--kmax", "0"], EXIT_USAGE),
        (&["hensel", "--p", "7", "--poly", "-2,0,1", "--x0", "3"], EXIT_OK),
        (&["hensel", "--p", "7", "--poly", "-2,0,1", "--x0", "1"], EXIT_MATH),
        (&["hensel", "--p", "3", "--poly", "-1,0,1", "--x0", "1", "--prec", "4"], EXIT_OK),
        (&["hensel", "--p", "8", "--poly", "-2,0,1", "--x0", "3"], EXIT_USAGE),
        (&["padic-unit-check", "--p", "7", "--value", "1/2"], EXIT_OK),
        (&["padic-unit-check", "--p", "7", "--value", "1/0"], EXIT_USAGE),
        (&["oracle", "--domain", "5", "--codomain", "13", "--mode", "pruned"], EXIT_OK),
        (&["oracle", "--domain", "4", "--codomain", "4", "--mode", "pruned"], EXIT_USAGE),
        (&["oracle", "--domain", "7", "--codomain", "7", "--budget", "3"], EXIT_MATH),
        (&["--help"], EXIT_OK),
    ];
    for (args, want) in cases {
        let out = Command::new(bin).args(*args).env("SD_CACHE_DIR", tempfile::tempdir().unwrap().path()).output().unwrap();
        assert_eq!(out.status.code(), Some(*want), "sd {args:?}: stderr {}", String::from_utf8_lossy(&out.stderr));
        if *want == EXIT_USAGE {
            assert!(!out.stderr.is_empty(), "usage error without a message: {args:?}");
        }
    }
}

#[test]
fn usage_errors_name_the_flag() {
    let out = sd(&["group", "--q", "6"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--q") && out.stderr.contains("6 is not a prime power"), "{}", out.stderr);
    let out = sd(&["verify-identities", "--kmax", "5000"]);
    assert!(out.stderr.contains("--kmax") && out.stderr.contains("1..="), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn group_records() {
    let (rec, code) = record(&["group", "--q", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(rec.output["exponents"], serde_json::json!([1, 3]));
    assert_eq!(rec.output["is_exceptional"], Value::Bool(true));

    let (rec, _) = record(&["group", "--q", "4"]);
    let fact: u64 = (1..4).product();
    assert_eq!(rec.output["census_count"], Value::String(fact.to_string()));
}

#[test]
fn every_subcommand_matches_the_schema_and_round_trips() {
    let validator = schema();
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let invocations: &[&[&str]] = &[
        &["group", "--q", "9"],
        &["group", "--q", "8"],
        &["sweep", "--max-q", "30", "--cache-dir", cache],
        &["power", "--m", "3", "--q", "5"],
        &["power", "--m", "4", "--q", "5"],
        &["power", "--m", "9", "--descriptor", r#"{"characteristic":3,"roots_of_unity":{"orders":[2]}}"#],
        &["check-map", "--map", F5_MAP],
        &["check-map", "--map", F5_SQUARE],
        &["f5", "--q", "5"],
        &["recurrence", "--n", "9"],
        &["verify-identities", "--kmax", "8"],
        &["hensel", "--p", "7", "--poly", "-2,0,1", "--x0", "3", "--prec", "6"],
        &["hensel", "--p", "7", "--poly", "-2,0,1", "--x0", "2"],
        &["padic-unit-check", "--p", "5", "--value", "1/5"],
        &["oracle", "--domain", "3", "--codomain", "9", "--list"],
        &["--timing", "group", "--q", "3"],
    ];
    for args in invocations {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let out = sd(&full);
        let value: Value = serde_json::from_str(out.stdout.trim_end()).unwrap();
        if let Err(e) = validator.validate(&value) {
            panic!("{args:?} violates the schema: {e}\n{value}");
        }
        let rec: ResultRecord = serde_json::from_value(value.clone()).unwrap();
        assert_eq!(serde_json::to_value(&rec).unwrap(), value);
        assert_eq!(rec.to_json(), out.stdout.trim_end());
        assert_eq!(rec.ok, out.code == EXIT_OK, "{args:?}");
    }
    let bogus: Value = serde_json::json!({
        "schema_version": 1, "artifact_version": "0.1.0", "subcommand": "group",
        "input": {}, "output": {}, "ok": true, "extra": 1
    });
    assert!(validator.validate(&bogus).is_err());
}

#[test]
fn json_is_byte_identical_across_runs_and_jobs() {
    let bin = env!("CARGO_BIN_EXE_sd");
    let runs: Vec<Vec<u8>> = ["1", "2", "4", "4"]
        .iter()
        .map(|j| {
            let out = Command::new(bin).args(["--json", "sweep", "--max-q", "400", "--no-cache", "--jobs", j]).output().unwrap();
            assert_eq!(out.status.code(), Some(EXIT_OK));
            out.stdout
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));

    for args in [&["--json", "recurrence", "--n", "12"][..], &["--json", "oracle", "--domain", "7", "--codomain", "7", "--list"]] {
        assert_eq!(sd(args).stdout, sd(args).stdout);
    }
}

#[test]
fn sweep_cache_is_reused_and_rebuilt_when_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--json", "sweep", "--max-q", "30", "--cache-dir", cache];

    let first = sd(&args);
    assert_eq!(first.code, EXIT_OK);
    assert!(first.stderr.contains("0 hits"), "{}", first.stderr);
    let file = dir.path().join(sdgroup_cli::cache::CACHE_FILE);
    let lines = std::fs::read_to_string(&file).unwrap().lines().count();
    assert_eq!(lines, 12, "one line per odd prime power up to 30");

    let second = sd(&args);
    assert_eq!(second.stdout, first.stdout);
    assert!(second.stderr.contains("12 hits, 0 computed"), "{}", second.stderr);
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), lines, "append-only, no duplicates");

    let (rec, _) = record(&["sweep", "--max-q", "40", "--cache-dir", cache]);
    assert_eq!(rec.output["rows"].as_array().unwrap().len(), 14);
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 14);

    std::fs::write(&file, "{\"version\":\"0.1.0\",\"q\":3,\n garbage").unwrap();
    let rebuilt = sd(&args);
    assert_eq!(rebuilt.code, EXIT_OK);
    assert!(rebuilt.stderr.contains("corrupt"), "{}", rebuilt.stderr);
    assert_eq!(rebuilt.stdout, first.stdout);
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 12);
}

#[test]
fn cache_dir_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_sd"))
        .args(["sweep", "--max-q", "11"])
        .env(sdgroup_cli::cache::CACHE_ENV, dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(dir.path().join(sdgroup_cli::cache::CACHE_FILE).exists());
}

#[test]
fn sweep_small_ranges() {
    let (rec, code) = record(&["sweep", "--max-q", "3", "--no-cache"]);
    assert_eq!(code, EXIT_OK);
    let rows = rec.output["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["q"], 3);
    assert_eq!(rows[0]["exponents"], serde_json::json!([1]));

    let (rec, _) = record(&["sweep", "--max-q", "30", "--no-cache"]);
    assert_eq!(rec.output["exceptional"], serde_json::json!([5]));
    assert_eq!(rec.output["exceptional_iff_q5"], Value::Bool(true));
}

#[test]
fn human_output_shapes() {
    let out = sd(&["hensel", "--p", "7", "--poly", "-2,0,1", "--x0", "3", "--prec", "3"]);
    assert!(out.stdout.starts_with("root: 0:3,1,2\n"), "{}", out.stdout);
    let out = sd(&["recurrence", "--n", "3"]);
    assert_eq!(out.stdout, "f(3) = (u + 1)/(u - 1)\n");
    let out = sd(&["group", "--q", "5"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].len(), lines[1].len(), "fixed-width table");
    let out = sd(&["--timing", "group", "--q", "5"]);
    assert!(out.stdout.contains("time: "));
}

#[test]
fn map_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.json");
    std::fs::write(&path, F5_MAP).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(sd(&["check-map", "--map", &arg]).code, EXIT_OK);
    assert_eq!(sd(&["check-map", "--map", "@/nonexistent/map.json"]).code, EXIT_USAGE);
}
