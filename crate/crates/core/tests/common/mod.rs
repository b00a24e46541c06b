#![allow(dead_code)]

use std::path::PathBuf;

use vlhvs::io::read_ppm;
use vlhvs::RgbImage;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load_dir(sub: &str) -> Vec<(String, Vec<u8>, RgbImage)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir().join(sub))
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ppm"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let bytes = std::fs::read(&p).unwrap();
            let img = read_ppm(&bytes).unwrap();
            (
                p.file_stem().unwrap().to_string_lossy().into_owned(),
                bytes,
                img,
            )
        })
        .collect()
}

/// Natural photographs: (name, file bytes, decoded image).
pub fn natural() -> Vec<(String, Vec<u8>, RgbImage)> {
    load_dir("natural")
}

/// Flat-fill and text-edge images.
pub fn synthetic() -> Vec<(String, Vec<u8>, RgbImage)> {
    load_dir("synthetic")
}
