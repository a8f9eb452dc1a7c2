//! Eulerian and Dynkin idempotents on the complete digraph on 4 vertices, and
//! the cycle census read off their z-images.

use cyclehopf::census::cycle_census_conv;
use cyclehopf::detperm::{build_minor_tables, DEFAULT_SIZE_CAP};
use cyclehopf::digraph::Digraph;
use cyclehopf::hopf::{dynkin_of, eulerian_of, HikeUniverse, DEFAULT_HIKE_BUDGET};

fn main() {
    let g = Digraph::complete(4);
    let u = HikeUniverse::from_graph(&g, DEFAULT_HIKE_BUDGET).unwrap();
    println!("{} cycles, {} self-avoiding hikes", u.primes().len(), u.hikes().len());

    let eulerian = eulerian_of(&u).unwrap();
    let dynkin = dynkin_of(&u).unwrap();
    assert_eq!(eulerian, dynkin);
    print!("{eulerian}");

    let z = eulerian.z_specialize(g.n()).unwrap();
    let census = cycle_census_conv(&build_minor_tables(&g, DEFAULT_SIZE_CAP).unwrap(), None).unwrap();
    println!("z-image: {z}");
    println!("census:  {}", census.generating_function());
}
