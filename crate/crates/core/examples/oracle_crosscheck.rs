//! Random digraphs: convolution census against explicit cycle enumeration.

use cyclehopf::census::cycle_census_conv;
use cyclehopf::detperm::{build_minor_tables, DEFAULT_SIZE_CAP};
use cyclehopf::digraph::Digraph;
use cyclehopf::oracle::{brute_force_census, DEFAULT_CYCLE_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 4..=11 {
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if rng.gen_bool(0.4) {
                    g.add_edge(u, v);
                }
            }
        }
        let t = build_minor_tables(&g, DEFAULT_SIZE_CAP).unwrap();
        let conv = cycle_census_conv(&t, None).unwrap();
        let brute = brute_force_census(&g, DEFAULT_CYCLE_BUDGET).unwrap();
        let verdict = if conv == brute { "agree" } else { "DIFFER" };
        println!("n = {n:>2}, {:>3} arcs, {:>8} cycles: {verdict}", g.edge_count(), conv.total());
        assert_eq!(conv, brute);
    }
}
