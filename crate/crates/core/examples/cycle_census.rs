//! Simple cycles by length. Pass an edge-list file, or get the complete
//! digraph on 6 vertices.
//!
//!     cargo run --example cycle_census -- graph.txt

use cyclehopf::census::{cycle_census_conv, hamiltonian_count};
use cyclehopf::detperm::{build_minor_tables, DEFAULT_SIZE_CAP};
use cyclehopf::digraph::{parse_edge_list, Digraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = match std::env::args().nth(1) {
        Some(path) => parse_edge_list(&std::fs::read_to_string(path)?)?,
        None => Digraph::complete(6),
    };
    let tables = build_minor_tables(&g, DEFAULT_SIZE_CAP)?;
    let census = cycle_census_conv(&tables, None)?;

    println!("{} vertices, {} arcs", g.n(), g.edge_count());
    for (length, count) in census.nonzero() {
        println!("  length {length:>2}: {count}");
    }
    println!("total {}, hamiltonian {}", census.total(), hamiltonian_count(&tables)?);
    Ok(())
}
