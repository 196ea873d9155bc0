use std::path::Path;
use std::process::{Command, Output};

use sfcgroup_cli::cache::TableCache;
use sfcgroup_cli::Report;

fn sfcgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfcgroup"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn classify_json(spec: &str, extra: &[&str]) -> Report {
    let mut args = vec!["classify", spec, "--json"];
    args.extend_from_slice(extra);
    let o = sfcgroup(&args);
    assert!(
        o.status.success(),
        "{spec}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_examples() {
    let r = classify_json("Q8 x C2", &[]);
    assert_eq!(r.sfc.status.as_str(), "fails_sfc");
    assert_eq!(r.sfc.rule.unwrap().as_str(), "R0-known-table");
    let r = classify_json("C1", &[]);
    assert_eq!(
        (r.sfc.status.as_str(), r.sfc.rule.unwrap().as_str()),
        ("has_sfc", "R1-eichler")
    );
    let r = classify_json("Ttilde", &[]);
    assert_eq!(
        (r.m_h, r.whitehead_rank, r.sfc.status.as_str()),
        (1, 0, "has_sfc")
    );
    let r = classify_json("sd(C5^2, C4, [[-1,0],[0,-1]])", &[]);
    assert_eq!((r.qn_max, r.sfc.status.as_str()), (6, "unknown"));
    let r = classify_json("C2", &[]);
    assert!(r.bp_quotients.is_empty());
}

#[test]
fn json_round_trip_is_byte_identical() {
    for spec in ["Q8 x C2", "sd(C4, C4, [[-1]])", "C1"] {
        for extra in [&[][..], &["--explain"][..]] {
            let mut args = vec!["classify", spec, "--json"];
            args.extend_from_slice(extra);
            let text = stdout(&sfcgroup(&args));
            let r: Report = serde_json::from_str(&text).unwrap();
            assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
        }
    }
}

#[test]
fn verify_and_explain_keep_the_verdict() {
    for spec in [
        "Q8 x C7",
        "Q28",
        "Q8 x C2 x C3",
        "Ttilde x Ttilde",
        "Q12 x C2",
    ] {
        let plain = classify_json(spec, &[]);
        let checked = classify_json(spec, &["--verify", "--explain"]);
        assert_eq!(
            (plain.sfc.status, plain.sfc.rule),
            (checked.sfc.status, checked.sfc.rule),
            "{spec}"
        );
        assert!(checked.sfc.consistency_checks.len() >= plain.sfc.consistency_checks.len());
        assert_eq!(checked.sfc.trace.unwrap().len(), 8);
    }
}

#[test]
fn exit_codes() {
    let o = sfcgroup(&["classify", "Q7"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("\"Q7\"") && err.contains("column 2"), "{err}");
    assert_eq!(sfcgroup(&["classify", "Q8 x"]).status.code(), Some(1));
    assert_eq!(
        sfcgroup(&["classify", "Itilde", "--max-order", "100"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sfcgroup(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        sfcgroup(&["survey", "/nonexistent/file"]).status.code(),
        Some(1)
    );
    assert_eq!(sfcgroup(&["info", "Q8"]).status.code(), Some(0));
}

#[test]
fn chartab_output() {
    let o = sfcgroup(&["chartab", "Q8", "--verify"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().last().unwrap().ends_with('-'));
    let o = sfcgroup(&["chartab", "C5", "--json"]);
    let t: sfcgroup::chartab::CharacterTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.degrees, [1; 5]);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn survey_is_ordered_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(
        dir.path(),
        "c.txt",
        "Q12\n# skip\nQ8 x C2\nC5\nTtilde x C5\n",
    );
    let cache = dir.path().join("cache");
    let cache_arg = cache.to_str().unwrap();
    let one = sfcgroup(&["survey", &corpus, "--json", "--jobs", "1"]);
    let many = sfcgroup(&[
        "survey", &corpus, "--json", "--jobs", "4", "--cache", cache_arg,
    ]);
    let cached = sfcgroup(&[
        "survey", &corpus, "--json", "--jobs", "4", "--cache", cache_arg,
    ]);
    assert_eq!(stdout(&one), stdout(&many));
    assert_eq!(stdout(&one), stdout(&cached));
    let specs: Vec<String> = stdout(&one)
        .lines()
        .map(|l| serde_json::from_str::<Report>(l).unwrap().spec)
        .collect();
    assert_eq!(specs, ["Q12", "Q8 x C2", "C5", "Ttilde x C5"]);
    assert!(cache
        .join(format!("{}.json", TableCache::key("Q12")))
        .exists());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 4);

    // a corrupt entry is replaced, not trusted
    std::fs::write(cache.join(format!("{}.json", TableCache::key("C5"))), "{}").unwrap();
    let again = sfcgroup(&["survey", &corpus, "--json", "--cache", cache_arg]);
    assert_eq!(stdout(&one), stdout(&again));
}

#[test]
fn survey_csv_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(dir.path(), "c.txt", "Q8\nQ9\nQ28\n");
    let o = sfcgroup(&["survey", &corpus, "--csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "spec,order,m_h,qn_max,status,rule\nQ8,8,1,1,has_sfc,R0-known-table\nQ28,28,3,0,fails_sfc,R0-known-table\n"
    );
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2: Q9"));
}

#[test]
fn custom_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "t.txt", "Q12 x C2, yes, local-note, 0\n");
    let r = classify_json("Q12 x C2", &["--table", &table]);
    assert_eq!(
        (r.sfc.status.as_str(), r.sfc.rule.unwrap().as_str()),
        ("has_sfc", "R0-known-table")
    );
    let bad = write(dir.path(), "bad.txt", "Q12, perhaps, x, 0\n");
    assert_eq!(
        sfcgroup(&["classify", "Q8", "--table", &bad]).status.code(),
        Some(1)
    );
}
