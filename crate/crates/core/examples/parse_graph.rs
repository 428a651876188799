//! Reads a graph file (edge list or MatrixMarket) and prints its shape.
//!
//! cargo run --example parse_graph -- path/to/graph.mtx

use std::path::PathBuf;

use mt_submod::prelude::*;

fn main() -> mt_submod::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/synthetic-80.txt"));
    let g = parse_graph(&path, GraphFormat::from_path(&path))?;
    println!("{}: {} vertices, {} edges", path.display(), g.vertex_count(), g.edge_count());
    println!("max closed neighborhood: {}", g.max_degree() + 1);
    let isolated = g.degrees().iter().filter(|&&d| d == 0).count();
    println!("isolated vertices: {isolated}");

    let mut mtx = Vec::new();
    g.write_matrix_market(&mut mtx).unwrap();
    let head: Vec<&str> = std::str::from_utf8(&mtx).unwrap().lines().take(4).collect();
    println!("as MatrixMarket:\n{}", head.join("\n"));
    Ok(())
}
