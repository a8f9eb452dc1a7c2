//! Principal minors of the adjacency matrix and the two polynomials they sum to.

use cyclehopf::census::{mobius_poly, zeta_poly};
use cyclehopf::detperm::{build_minor_tables, det_i_minus_za_direct, exact_det, exact_perm, DEFAULT_PERM_DIM_CAP};
use cyclehopf::digraph::{parse_edge_list, VertexSet};

fn main() {
    let g = parse_edge_list("0 1\n1 2\n2 0\n1 0\n2 2\n2 3\n3 2").unwrap();
    let t = build_minor_tables(&g, 20).unwrap();

    println!("{:<12} {:>5} {:>5}", "subset", "det", "perm");
    for s in VertexSet::all_subsets(g.n()).filter(|s| t.perm(*s) != 0) {
        let members: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        println!("{:<12} {:>5} {:>5}", format!("{{{}}}", members.join(",")), t.det(s), t.perm(s));
    }

    let a = g.adjacency();
    println!("det(A) = {}, perm(A) = {}", exact_det(&a), exact_perm(&a, DEFAULT_PERM_DIM_CAP).unwrap());
    println!("det(I - zA)  = {}", mobius_poly(&t));
    println!("perm(I + zA) = {}", zeta_poly(&t));
    assert_eq!(mobius_poly(&t), det_i_minus_za_direct(&g));
}
