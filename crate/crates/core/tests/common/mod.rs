#![allow(dead_code)]

use std::sync::Arc;

use shapelab_core::compile;
use shapelab_core::typeck::TypedProgram;

pub fn corpus(name: &str) -> String {
    let path = format!("{}/../../programs/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn corpus_names() -> Vec<String> {
    let dir = format!("{}/../../programs", env!("CARGO_MANIFEST_DIR"));
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".shp"))
        .collect();
    names.sort();
    names
}

pub fn typed(src: &str) -> Arc<TypedProgram> {
    let c = compile(src);
    match c.program {
        Some(p) => p,
        None => panic!("{:?}", c.diagnostics.iter().map(|d| d.render()).collect::<Vec<_>>()),
    }
}
pub mod gen;
pub mod oracle;
pub mod svgcheck;
