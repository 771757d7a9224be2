use jordan_dgla::corpus;
use jordan_dgla::Algebra;

fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_files_match_builtin_corpus() {
    for e in corpus::corpus() {
        let path = corpus_dir().join(format!("{}.json", e.name));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
        assert_eq!(text, e.algebra.to_json() + "\n", "{}", e.name);
        assert_eq!(Algebra::from_json(&text).unwrap(), e.algebra);
    }
}
