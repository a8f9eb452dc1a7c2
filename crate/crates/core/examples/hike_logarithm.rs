//! Series of self-avoiding hikes on a graph with a loop `a` at 0, a
//! backtrack `b` between 0 and 1 and a loop `c` at 2. The logarithm of the
//! zeta series keeps exactly the three cycles.

use cyclehopf::digraph::parse_edge_list;
use cyclehopf::hopf::{HikeUniverse, DEFAULT_HIKE_BUDGET};

fn main() {
    let g = parse_edge_list("0 0\n0 1\n1 0\n2 2").unwrap();
    let u = HikeUniverse::from_graph(&g, DEFAULT_HIKE_BUDGET).unwrap();

    println!("mobius series:\n{}", u.mobius());
    println!("zeta series:\n{}", u.zeta());
    let log = u.zeta().star_log().unwrap();
    println!("log(zeta):\n{log}");
    assert_eq!(log, u.prime_series());
    assert_eq!(log.star_exp().unwrap(), u.zeta());
}
