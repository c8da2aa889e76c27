use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::sync::Arc;

use incgrade::{run, split_csv, Command, Outcome, RunReport, FIXTURES};
use incgrade_core::algebra::{induced_auto, PosetRef};
use incgrade_core::{corpus, Poset};
use serde_json::Value;

fn incgrade(args: &str) -> Outcome {
    run(std::iter::once("incgrade").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Value) {
    let out = incgrade(&format!("{args} --format json"));
    assert!(out.stderr.is_empty() || out.code == 2, "{}", out.stderr);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}: {:?}", out.stderr));
    (out.code, v)
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn assert_schema_valid(command: &str, report: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{command}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft202012)
        .compile(&schema)
        .expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(report) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{command} report violates its schema: {msgs:?}\n{report:#}");
}

#[test]
fn chains_of_example_poset() {
    let out = incgrade("chains --poset example.json");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "C1: p1 < p4\nC2: p2 < p3\nC3: p2 < p4\n");
    let (_, v) = json("chains --poset example.json");
    assert_eq!(v["results"]["chains"], serde_json::json!([["p1", "p4"], ["p2", "p3"], ["p2", "p4"]]));
}

#[test]
fn count_on_three_chain_is_verified() {
    let out = incgrade("count --poset c3.json --group C2 --verify");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("4"));
    let (_, v) = json("count --poset c3.json --group C2 --verify");
    assert_eq!(v["results"]["formula"], 4);
    assert_eq!(v["results"]["enumerated"], 4);
}

#[test]
fn example_gradings_not_equivalent() {
    let out = incgrade("equiv --poset example.json --group C3 --theta 1,h,h^2,1 --mu 1,h^2,h,1");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "not equivalent");
    let (code, v) = json("equiv --poset example --group C3 --theta 1,h,h^2,1 --mu 1,h^2,h,1 --verify");
    assert_eq!(code, 0);
    assert_eq!(v["results"]["equivalent"], false);
    assert_eq!(v["results"]["verified"], true);
}

#[test]
fn example_gradings_have_equal_slices() {
    let (code, v) = json("compare-identities --poset example --group C3 --theta 1,h,h^2,1 --mu 1,h^2,h,1");
    assert_eq!(code, 0);
    assert_eq!(v["results"]["equal"], true);
}

#[test]
fn equivalent_gradings_report_witness() {
    // shift the single component of the diamond by h and swap a, b
    let (code, v) = json("equiv --poset diamond --group C3 --theta 1,1,h,1 --mu h,h^2,h,h --verify");
    assert_eq!(code, 0);
    assert_eq!(v["results"]["equivalent"], true);
    assert_eq!(v["results"]["witness"]["shifts"], serde_json::json!(["h"]));
    assert_eq!(v["results"]["witness"]["sigma"], serde_json::json!(["bot", "b", "a", "top"]));
    assert_eq!(v["results"]["verified"], true);
}

fn sample_invocations(dir: &Path) -> Vec<(Command, String)> {
    let morphism = dir.join("swap.json");
    let p = Arc::new(corpus::diamond());
    let sigma = p.automorphisms().into_iter().find(|s| !s.is_identity()).unwrap();
    let file = induced_auto(&p, &sigma).unwrap().to_file(PosetRef::Named("diamond".into()));
    std::fs::write(&morphism, serde_json::to_string(&file).unwrap()).unwrap();

    let polynomial = dir.join("comm.json");
    std::fs::write(
        &polynomial,
        r#"{"multidegree":["1","1","1","1"],"terms":[
            {"perm":[1,2,3,4],"coeff":"1"},{"perm":[2,1,3,4],"coeff":"-1"},
            {"perm":[1,2,4,3],"coeff":"-1"},{"perm":[2,1,4,3],"coeff":"1"}]}"#,
    )
    .unwrap();

    let cases = [
        (Command::Validate, "--poset example --group C3 --theta 1,h,h^2,1".to_string()),
        (Command::Validate, "--poset c2+c3".to_string()),
        (Command::Chains, "--poset diamond".to_string()),
        (Command::Components, "--poset c2+c3".to_string()),
        (Command::Bound, "--poset c4".to_string()),
        (Command::Aut, "--poset a3".to_string()),
        (Command::ChainTransitive, "--poset diamond".to_string()),
        (Command::ChainTransitive, "--poset example".to_string()),
        (Command::Mobius, "--poset diamond --verify".to_string()),
        (Command::Decompose, format!("--morphism {}", morphism.display())),
        (Command::Decompose, "--poset example --seed 7".to_string()),
        (Command::Grade, "--poset example --group C3 --theta 1,h,h^2,1".to_string()),
        (Command::Count, "--poset c2+c3 --group S3 --verify".to_string()),
        (Command::Count, "--poset diamond --group C2xC2".to_string()),
        (Command::Classify, "--poset c3 --group C2".to_string()),
        (Command::Equiv, "--poset c2+c3 --group C2 --theta 1,h,1,1,h --mu h,1,1,h,h --verify".to_string()),
        (Command::Slice, "--poset c2 --group C1 --theta 1,1 --multidegree 1,1 --verify".to_string()),
        (Command::Slice, format!("--poset c2 --group C1 --theta 1,1 --polynomial {} --verify", polynomial.display())),
        (Command::CompareIdentities, "--poset c3 --group C2 --theta 1,1,h --mu 1,h,h".to_string()),
        (Command::VerifyReduction, "--poset example --group C3 --theta 1,h,h^2,1 --max-degree 2".to_string()),
        (Command::Monomials, "--poset c2 --group C2 --theta 1,h --max-degree 2".to_string()),
        (Command::TransitivityCheck, "--poset c2 --group C3".to_string()),
        (Command::TransitivityCheck, "--poset c3 --group C2".to_string()),
    ];
    cases.into_iter().map(|(c, a)| (c, format!("{} {a}", c.name()))).collect()
}

#[test]
fn every_subcommand_matches_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let cases = sample_invocations(dir.path());
    for c in Command::ALL {
        assert!(cases.iter().any(|(k, _)| *k == c), "no sample for {}", c.name());
    }
    for (c, args) in cases {
        let (code, v) = json(&args);
        assert!(code == 0 || code == 1, "{args}: exit {code}");
        assert_eq!(v["command"], c.name());
        assert_schema_valid(c.name(), &v);
    }
}

#[test]
fn json_output_is_byte_identical_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (_, args) in sample_invocations(dir.path()) {
        let a = incgrade(&format!("{args} --format json"));
        let b = incgrade(&format!("{args} --format json"));
        assert_eq!(a.stdout, b.stdout, "{args}");
        let report: RunReport = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(Some(&report), a.report.as_ref());
        assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", a.stdout);
    }
}

#[test]
fn decompose_recovers_swap_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let cases = sample_invocations(dir.path());
    let (_, args) = cases.iter().find(|(c, a)| *c == Command::Decompose && a.contains("--morphism")).unwrap();
    let (code, v) = json(args);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["sigma"], serde_json::json!(["bot", "b", "a", "top"]));
    assert_eq!(v["results"]["reconstructs"], true);
}

#[test]
fn commutator_product_is_an_ordinary_identity() {
    let dir = tempfile::tempdir().unwrap();
    let cases = sample_invocations(dir.path());
    let (_, args) = cases.iter().find(|(_, a)| a.contains("--polynomial")).unwrap();
    let (code, v) = json(args);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["contains_polynomial"], true);
    assert_eq!(v["results"]["verified"], true);
    let (_, v) = json("slice --poset c2 --group C1 --theta 1,1 --multidegree 1,1");
    assert_eq!(v["results"]["dimension"], 0);
}

#[test]
fn unseparated_pairs_exit_with_assertion_failure() {
    let (code, v) = json("transitivity-check --poset c3 --group C2");
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    let u = &v["results"]["unseparated"][0];
    assert_eq!(u["first"], serde_json::json!(["1", "1", "h"]));
    assert_eq!(u["second"], serde_json::json!(["1", "h", "h"]));
    assert_eq!(u["slice_difference"], serde_json::json!(["1", "1", "h"]));
}

#[test]
fn input_errors_exit_two_and_name_the_flag() {
    for (args, needle) in [
        ("count --poset c3", "--group"),
        ("chains", "--poset"),
        ("chains --poset no-such-poset", "--poset"),
        ("count --poset c3 --group Q8", "--group"),
        ("grade --poset c3 --group C2 --theta 1,h", "--theta"),
        ("grade --poset c3 --group C2 --theta 1,h,g", "--theta"),
        ("slice --poset c2 --group C2 --theta 1,h", "--multidegree"),
        ("decompose --poset c2", "--morphism"),
    ] {
        let out = incgrade(args);
        assert_eq!(out.code, 2, "{args}");
        assert!(out.stderr.contains(needle), "{args}: {}", out.stderr);
        assert!(out.stdout.is_empty());
    }
    assert_eq!(incgrade("frobnicate").code, 2);
    assert_eq!(incgrade("chains --poset c2 --format yaml").code, 2);
    let out = incgrade("transitivity-check --poset example --group C2");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("transitively"));
    let out = incgrade("slice --poset c2 --group C1 --theta 1,1 --multidegree 1,1,1,1,1");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("cap"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(incgrade("--help").code, 0);
    assert!(incgrade("--version").stdout.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn fixtures_match_core_corpus() {
    assert_eq!(FIXTURES.len(), corpus::NAMES.len());
    for (name, text) in FIXTURES {
        assert_eq!(Poset::from_json(text).unwrap(), corpus::by_name(name).unwrap(), "{name}");
        let on_disk = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"));
        assert!(on_disk.is_file());
    }
}

#[test]
fn poset_file_on_disk_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    std::fs::write(&path, r#"{"elements":["a","b","c"],"relation":[[0,2],[1,2]]}"#).unwrap();
    let (code, v) = json(&format!("chains --poset {}", path.display()));
    assert_eq!(code, 0);
    assert_eq!(v["results"]["chains"], serde_json::json!([["a", "c"], ["b", "c"]]));
    std::fs::write(&path, r#"{"elements":["a","b"],"relation":[[0,1],[1,0]]}"#).unwrap();
    assert_eq!(incgrade(&format!("chains --poset {}", path.display())).code, 2);
}

#[test]
fn product_group_names_split_on_top_level_commas() {
    assert_eq!(split_csv("(h,1), (1,h),1"), vec!["(h,1)", "(1,h)", "1"]);
    let (code, v) = json("grade --poset c2 --group C2xC2 --theta (1,1),(h,h)");
    assert_eq!(code, 0);
    assert_eq!(v["results"]["support"], serde_json::json!(["(1,1)", "(h,h)"]));
}

#[test]
fn budget_env_var_limits_enumeration() {
    let bin = env!("CARGO_BIN_EXE_incgrade");
    let out = Process::new(bin)
        .args(["count", "--poset", "c4", "--group", "S3", "--verify"])
        .env("INCGRADE_MAX_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = Process::new(bin).args(["count", "--poset", "c4", "--group", "S3", "--verify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().next(), Some("216"));
    let out = Process::new(bin)
        .args(["classify", "--poset", "c2", "--group", "C2"])
        .env("INCGRADE_MAX_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("INCGRADE_MAX_BUDGET"));
}

#[test]
fn schemas_reject_malformed_reports() {
    let (_, mut v) = json("chains --poset diamond");
    v["results"]["count"] = Value::from("three");
    let result = std::panic::catch_unwind(|| assert_schema_valid("chains", &v));
    assert!(result.is_err());
    let (_, mut v) = json("bound --poset c2");
    v["results"]["extra"] = Value::from(1);
    assert!(std::panic::catch_unwind(|| assert_schema_valid("bound", &v)).is_err());
}
