use std::path::PathBuf;

use latkit::shipped::{shipped_files, write_shipped};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Set `LATKIT_BLESS=1` to rewrite the directory from the generator.
#[test]
fn shipped_corpus_matches_the_generator() {
    let dir = corpus_dir();
    if std::env::var_os("LATKIT_BLESS").is_some() {
        write_shipped(&dir).unwrap();
    }
    for (name, text) in shipped_files().unwrap() {
        let on_disk = std::fs::read_to_string(dir.join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, text, "{name} is stale; rerun with LATKIT_BLESS=1");
    }
}
