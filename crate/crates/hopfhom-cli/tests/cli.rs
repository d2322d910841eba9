use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn hopfhom(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfhom"))
        .args(args)
        .env("HOPFHOM_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn dims(v: &Value) -> Vec<u64> {
    v["degrees"].as_array().unwrap().iter().map(|d| d["dim"].as_u64().unwrap()).collect()
}

fn verdict(v: &Value) -> (&str, &str) {
    let c = &v["checks"][0];
    (c["verdict"].as_str().unwrap(), c["witness"].as_str().unwrap_or(""))
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["z2.json", "z2_constants.json", "pair2.json", "h4.json", "z2_sign_action.json"] {
        let o = hopfhom(&["validate", path(&data(f))], dir.path());
        assert_eq!(o.status.code(), Some(0), "{f}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let o = hopfhom(&["validate", path(&data("broken_associativity.json"))], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let (verdict_s, witness) = verdict(&v);
    assert_eq!(verdict_s, "fail");
    assert!(witness.contains("associativity") && witness.contains("indices (1, 1, 1)"), "{witness}");
}

#[test]
fn schema_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind":"group_algebra","group":{"cyclic":2},"colour":"red"}"#).unwrap();
    assert_eq!(hopfhom(&["validate", path(&bad)], dir.path()).status.code(), Some(2));
    std::fs::write(&bad, r#"{"kind":"structure_constants","dim":1,"mult":[[0,0,0,"2/2"]],"unit":[[0,"1"]],"comult":[[0,0,0,"1"]],"counit":[[0,"1"]],"antipode":[[0,0,"1"]]}"#).unwrap();
    assert_eq!(hopfhom(&["validate", path(&bad)], dir.path()).status.code(), Some(2));
    let z2 = data("z2.json");
    assert_eq!(hopfhom(&["check", "thm-9.9", path(&z2)], dir.path()).status.code(), Some(2));
    assert_eq!(hopfhom(&["check", "hc-parity", path(&z2)], dir.path()).status.code(), Some(2));
    assert_eq!(hopfhom(&["homology", path(&z2), "--construction", "extended"], dir.path()).status.code(), Some(2));
    assert_eq!(hopfhom(&["homology", path(&data("z3.json")), "--construction", "kr", "--delta", "sign"], dir.path()).status.code(), Some(2));
    assert_eq!(hopfhom(&["homology", path(&z2), "--construction", "kr", "--theory", "hq"], dir.path()).status.code(), Some(2));
}

#[test]
fn homology_examples() {
    let dir = tempfile::tempdir().unwrap();
    let kr = hopfhom(&["homology", path(&data("z2.json")), "--construction", "kr", "--theory", "hc", "--max-degree", "4"], dir.path());
    assert_eq!(kr.status.code(), Some(0));
    assert_eq!(dims(&json(&kr)), [1, 0, 1, 0, 1]);

    let hp = json(&hopfhom(&["homology", path(&data("z3.json")), "--construction", "cm", "--theory", "hp"], dir.path()));
    assert_eq!(hp["periodic"][0]["parity"], "even");
    assert_eq!((hp["periodic"][0]["dim"].as_u64(), hp["periodic"][1]["dim"].as_u64()), (Some(1), Some(0)));
    assert_eq!(hp["stabilized"]["even"], true);

    let ext = hopfhom(&["homology", path(&data("pair2.json")), "--construction", "extended", "--max-degree", "3"], dir.path());
    assert_eq!(dims(&json(&ext)), [2, 0, 2, 0]);
}

#[test]
fn named_checks() {
    let dir = tempfile::tempdir().unwrap();
    let o = hopfhom(&["check", "thm-6.2", path(&data("z2_sign_action.json"))], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(verdict(&json(&o)).0, "pass");

    let o = hopfhom(&["check", "uq-homotopy", "--q", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));

    let o = hopfhom(&["check", "thm-4.1", path(&data("h4.json"))], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let (s, w) = verdict(&v);
    assert_eq!(s, "fail");
    assert!(w.contains("involution"), "{w}");

    let o = hopfhom(&["check", "uq-resolution", "--reading", "verbatim"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn list_checks_covers_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let o = hopfhom(&["list-checks"], dir.path());
    let text = String::from_utf8(o.stdout).unwrap();
    for id in [
        "thm-4.1", "thm-4.2", "prop-4.1", "haar-hp", "char-map-cm", "char-map-kr", "cocycle-2", "cocycle-group",
        "thm-5.1", "haar-system", "hc-parity", "conjecture-5.1", "thm-6.1", "thm-6.2", "thm-6.3", "prop-6.1",
        "ss-6.4", "thm-7.1", "prop-7.2", "morita", "thm-7.3", "cm-cotriple-iso", "uq-resolution", "uq-homotopy",
        "thm-4.4", "cor-4.2",
    ] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(id)), "{id}");
    }
    assert_eq!(text.lines().count(), 26);
}

#[test]
fn reports_are_deterministic_and_cache_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let s3 = data("s3.json");
    let args = ["homology", path(&s3), "--construction", "kr", "--delta", "sign", "--max-degree", "3"];
    let first = hopfhom(&args, &cache);
    assert_eq!(first.status.code(), Some(0));
    let second = hopfhom(&args, &cache);
    assert_eq!(first.stdout, second.stdout);
    let mut uncached = args.to_vec();
    uncached.push("--no-cache");
    assert_eq!(hopfhom(&uncached, &cache).stdout, first.stdout);
    // whitespace and key order in the spec do not change the object id
    let respaced = dir.path().join("s3.json");
    std::fs::write(&respaced, "{ \"group\" : \"S3\",\n  \"kind\" : \"group_algebra\" }\n").unwrap();
    let mut moved = args.to_vec();
    moved[1] = path(&respaced);
    assert_eq!(hopfhom(&moved, &cache).stdout, first.stdout);
}

#[test]
fn poisoned_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let z2 = data("z2.json");
    let args = ["homology", path(&z2), "--construction", "kr", "--theory", "hc"];
    let clean = hopfhom(&args, &cache);
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let original = std::fs::read_to_string(&entries[0]).unwrap();
    std::fs::write(&entries[0], original.replace("\"dims\":[1,0,1,0,1]", "\"dims\":[7,0,1,0,1]")).unwrap();
    let again = hopfhom(&args, &cache);
    assert_eq!(again.stdout, clean.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("corrupt cache entry"));
    assert_eq!(std::fs::read_to_string(&entries[0]).unwrap(), original);
    std::fs::write(&entries[0], "{").unwrap();
    assert_eq!(hopfhom(&args, &cache).stdout, clean.stdout);
}

#[test]
fn distinct_delta_distinct_cache_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let z2 = data("z2.json");
    let a = hopfhom(&["homology", path(&z2), "--construction", "kr", "--delta", "eps"], &cache);
    let b = hopfhom(&["homology", path(&z2), "--construction", "kr", "--delta", "sign"], &cache);
    assert_eq!((a.status.code(), b.status.code()), (Some(0), Some(0)));
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);
}
