//! Hamiltonian cycles from determinant and permanent minors, checked against
//! a depth-first search.

use cyclehopf::census::hamiltonian_count;
use cyclehopf::detperm::{build_minor_tables, DEFAULT_SIZE_CAP};
use cyclehopf::digraph::Digraph;
use cyclehopf::oracle::brute_force_hamiltonian;

fn main() {
    println!("{:>3} {:>12} {:>12}", "n", "minors", "search");
    for n in 1..=9 {
        // directed cycle 0 -> 1 -> .. -> 0 plus chords i -> i+2
        let mut g = Digraph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
            g.add_edge(i, (i + 2) % n);
        }
        let t = build_minor_tables(&g, DEFAULT_SIZE_CAP).unwrap();
        println!("{n:>3} {:>12} {:>12}", hamiltonian_count(&t).unwrap(), brute_force_hamiltonian(&g));
    }

    let k = Digraph::complete(12);
    let t = build_minor_tables(&k, DEFAULT_SIZE_CAP).unwrap();
    println!("complete digraph on 12 vertices: {} (11! = 39916800)", hamiltonian_count(&t).unwrap());
}
