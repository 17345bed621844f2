//! Shared fixtures for integration tests: the bundled corpus and the small
//! named graphs used throughout.
#![allow(dead_code)] // not every test file uses every fixture

use std::path::PathBuf;

use matchrank::Graph;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("..")
        .join("..")
        .join("corpus")
}

pub fn load_corpus() -> Vec<(String, Graph)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().map_or(false, |x| x == "graph"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().to_string();
            let text = std::fs::read_to_string(&p).expect("corpus file");
            (name, Graph::parse(&text).expect("corpus graph parses"))
        })
        .collect()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::from_edges(n, e).unwrap()
}
