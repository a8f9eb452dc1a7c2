//! Powers of the zeta series weight every hike by `k^omega`, negative `k`
//! included.

use cyclehopf::digraph::parse_edge_list;
use cyclehopf::hopf::{HikeUniverse, DEFAULT_HIKE_BUDGET};

fn main() {
    let g = parse_edge_list("0 1\n1 0\n2 3\n3 2\n0 0\n2 2\n1 2\n2 1").unwrap();
    let u = HikeUniverse::from_graph(&g, DEFAULT_HIKE_BUDGET).unwrap();
    let zeta = u.zeta();

    print!("{:<16}", "hike");
    let ks = [-2i64, -1, 0, 1, 2, 3];
    for k in ks {
        print!("{k:>6}");
    }
    println!();
    let powers: Vec<_> = ks.iter().map(|&k| zeta.star_power(k).unwrap()).collect();
    for h in u.hikes() {
        print!("{:<16}", h.to_string());
        for p in &powers {
            print!("{:>6}", p.coeff(h).to_string());
        }
        println!();
    }
}
