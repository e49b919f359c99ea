use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn latkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const D4: &str = "lattice D4\nelements: 0 a b 1\ncovers: 0<a 0<b a<1 b<1\n";

#[test]
fn check_exit_codes() {
    let ok = scratch("d4.lat", D4);
    assert_eq!(latkit(&["check", s(&ok)]).status.code(), Some(0));

    let cyclic = scratch("cyclic.lat", "lattice X\nelements: 0 a 1\ncovers: 0<a a<1\ncovers: 1<a\n");
    let out = latkit(&["check", s(&cyclic)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let bad_ortho = scratch("bad_ortho.lat", "lattice C3\nelements: 0 m 1\ncovers: 0<m m<1\northo: 0->1 m->0 1->0\n");
    let out = latkit(&["check", s(&bad_ortho)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad_ortho.lat"), "{}", stderr(&out));

    let unresolved = scratch("unresolved.lat", "map f : D4 -> Q\n0 |-> 0\n");
    assert_eq!(latkit(&["check", s(&ok), s(&unresolved)]).status.code(), Some(2));
}

#[test]
fn adjoints_from_files() {
    let dir = corpus_dir();
    let out = latkit(&["adjoint", "id_D4", "right", s(&dir)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("a |-> a\nb |-> b"));

    // right adjoint of alpha_a is C^a: 1 exactly above a
    let out = latkit(&["adjoint", "alpha_a_D4", "right", s(&dir)]);
    assert_eq!(stdout(&out), "map alpha_a_D4_right : D4 -> C2\n0 |-> 0\na |-> 1\nb |-> 0\n1 |-> 1\n");

    let once = latkit(&["adjoint", "embed_B4_B8", "dagger", s(&dir)]);
    assert_eq!(once.status.code(), Some(0));
    let file = scratch("dagger.lat", &stdout(&once));
    let twice = latkit(&["adjoint", "embed_B4_B8_dagger", "dagger", s(&dir), s(&file)]);
    let original = std::fs::read_to_string(dir.join("maps.lat")).unwrap();
    let body: String = stdout(&twice).lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert!(original.contains(&format!("map embed_B4_B8 : Boolean4 -> Boolean8\n{body}")));

    let out = latkit(&["adjoint", "meet_only_D4", "right", s(&dir)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hom_and_count() {
    let dir = corpus_dir();
    let out = latkit(&["count", "PS", "C2", "D4", s(&dir)]);
    assert_eq!(stdout(&out).trim(), "4");
    let out = latkit(&["count", "FS", "D4", "C2", s(&dir)]);
    assert_eq!(stdout(&out).trim(), "8");
    let out = latkit(&["hom", "C2", "C3", s(&dir)]);
    assert_eq!(stdout(&out), "0 0\n0 m\n0 1\n3 maps\n");
    let out = latkit(&["count", "TS", "Boolean16", "Boolean16", s(&dir)]);
    assert_eq!(out.status.code(), Some(3));
    let out = latkit(&["--max-size", "8", "hom", "C2", "C3", s(&dir)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn suite_filter_and_json() {
    let dir = corpus_dir();
    let out = latkit(&["suite", s(&dir), "--filter", "prop=6.2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["prop"], "6.2");
        assert_eq!(r["status"], "pass");
        assert!(r["object"].is_string() && r["millis"].is_u64());
        assert!(r.get("witness").is_none());
    }
    let keys: Vec<(String, String)> = reports.iter().map(|r| (r["prop"].to_string(), r["object"].to_string())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn witnesses_and_equivalences() {
    let dir = corpus_dir();
    let out = latkit(&["witness", "D4", "unbased", s(&dir)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("umap unbased_D4 : D4 -> D4"));
    let out = latkit(&["witness", "D4", "strict", "--at", "a", s(&dir)]);
    assert!(stdout(&out).contains("1 |-> {a,1}"));
    let out = latkit(&["equiv", "OS4", s(&dir)]);
    assert!(stdout(&out).starts_with("lattice L(OS4)"));
    let out = latkit(&["equiv", "MO2", s(&dir)]);
    assert!(stdout(&out).contains("ospace Sigma(MO2)"));
    let out = latkit(&["closure", "D4", s(&dir)]);
    assert!(stdout(&out).contains("cspace C(D4)"));
}
