use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn neolex(args: &[&str], cwd: &Path) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_neolex")).args(args).current_dir(cwd).output().unwrap();
    assert!(
        out.status.success(),
        "neolex {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

const CORPUS: &str = r#"{"id":"1","kind":"post","text":"Хочу лайкнуть этот пост про кота"}
{"id":"2","kind":"post","text":"новый фэшн-блог и фэшн-индустрия"}
{"id":"3","kind":"comment","text":"лайкнуть и репостнуть"}
not json
{"id":"4","kind":"comment","text":"hello world"}
"#;

#[test]
fn full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    fs::write(d.join("corpus.jsonl"), CORPUS).unwrap();
    fs::create_dir(d.join("refs")).unwrap();
    fs::write(d.join("refs/words.txt"), "репостнуть\n").unwrap();
    let dict = data.join("dict/mini.tsv");
    let dict = dict.to_str().unwrap();

    let stats = neolex(&["stats", "corpus.jsonl", "--json"], d);
    let stats: Value = serde_json::from_slice(&stats.stdout).unwrap();
    assert_eq!((stats["n_posts"].as_u64(), stats["n_comments"].as_u64()), (Some(2), Some(1)));

    neolex(&["freq", "corpus.jsonl", "--dict", dict, "--oov-only", "--shards", "2", "-o", "freq.tsv"], d);
    let freq = fs::read_to_string(d.join("freq.tsv")).unwrap();
    assert!(freq.starts_with("lemma\tpos\tin_dict\tfreq\n"));
    assert!(freq.contains("лайкнуть\tUnknown\tfalse\t2\n"));
    assert!(!freq.contains("пост\t"));

    neolex(&["candidates", "freq.tsv", "--refs", "refs", "--auto-reject", "--corpus", "corpus.jsonl", "--dict", dict, "-o", "cands.json"], d);
    let cands: Value = serde_json::from_str(&fs::read_to_string(d.join("cands.json")).unwrap()).unwrap();
    let find = |v: &Value, l: &str| v.as_array().unwrap().iter().find(|c| c["lemma"] == l).cloned().unwrap();
    let layk = find(&cands, "лайкнуть");
    assert_eq!((layk["status"].as_str(), layk["pos"].as_str()), (Some("pending"), Some("V")));
    assert_eq!(layk["contexts"].as_array().unwrap().len(), 2);
    assert_eq!(find(&cands, "репостнуть")["reject_reason"], "in_reference");

    neolex(&["classify", "cands.json", "--corpus", "corpus.jsonl", "-o", "classified.json"], d);
    let classified: Value = serde_json::from_str(&fs::read_to_string(d.join("classified.json")).unwrap()).unwrap();
    let s = &find(&classified, "лайкнуть")["suggested"];
    assert_eq!(s["deriv_type"], "Суффикс");
    assert_eq!(s["model"], "ST-ну");

    // No decisions yet: header-only export.
    neolex(&["export", "--candidates", "classified.json", "--log", "log.jsonl", "-o", "lexicon.tsv"], d);
    assert_eq!(fs::read_to_string(d.join("lexicon.tsv")).unwrap().lines().count(), 1);
}

#[test]
fn report_on_the_fixture_lexicon() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixture/gold_lexicon.tsv");
    let out = neolex(&["report", fixture.to_str().unwrap(), "--json", "--check-published"], dir.path());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["size"], 168);
    assert_eq!(report["derived_count"], 67);
    assert!(String::from_utf8_lossy(&out.stderr).contains("published 7, lexicon has 8"));
}

#[test]
fn bad_thresholds_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.json"), "[]").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_neolex"))
        .args(["classify", "c.json", "--nmod-threshold", "0.2", "-o", "x.json"])
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(!out.status.success());
}
