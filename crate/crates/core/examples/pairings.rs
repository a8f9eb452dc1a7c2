//! The census computed from either pairing of minors, with timings.
//! Each pairing also checks itself against its sign-flipped variant.

use std::time::Instant;

use cyclehopf::census::{cycle_census_with, Pairing};
use cyclehopf::detperm::{build_minor_tables, DEFAULT_SIZE_CAP};
use cyclehopf::digraph::Digraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(14);
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }

    let start = Instant::now();
    let t = build_minor_tables(&g, DEFAULT_SIZE_CAP).unwrap();
    println!("minor tables for n = {n}: {:.2?}", start.elapsed());

    let mut results = Vec::new();
    for pairing in [Pairing::DetWithPermSums, Pairing::PermWithDetSums] {
        let start = Instant::now();
        let census = cycle_census_with(&t, None, pairing).unwrap();
        println!("{pairing:?}: {:.2?}, {} cycles", start.elapsed(), census.total());
        results.push(census);
    }
    assert_eq!(results[0], results[1]);
}
