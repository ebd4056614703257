//! Renders a program's initial view: `cargo run --example render -- file.shp`
use std::sync::Arc;

fn main() {
    let path = std::env::args().nth(1).expect("usage: render <file.shp>");
    let src = std::fs::read_to_string(path).expect("readable file");
    let compiled = shapelab_core::compile(&src);
    let Some(p) = compiled.program else {
        for d in &compiled.diagnostics {
            eprintln!("{}", d.cli_line());
        }
        std::process::exit(1);
    };
    let session = shapelab_core::Session::new(Arc::clone(&p)).expect("view evaluates");
    print!("{}", session.svg());
}
