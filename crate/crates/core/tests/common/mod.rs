//! Graph corpora shared by the integration tests.
#![allow(dead_code)]

use cyclehopf::digraph::{parse_edge_list, Digraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cap on the exhaustive part of the corpus.
pub const SMALL_CORPUS_CAP: usize = 5000;

/// The graph whose arc pattern is the bits of `pattern`, row-major over `n x n`.
pub fn from_pattern(n: usize, pattern: u64) -> Digraph {
    let masks: Vec<u64> = (0..n).map(|u| (pattern >> (u * n)) & ((1u64 << n) - 1)).collect();
    Digraph::from_out_masks(n, &masks)
}

/// Every arc pattern for `n <= 3`, then evenly strided `n = 4` patterns until
/// `cap` graphs are reached.
pub fn small_exhaustive(cap: usize) -> Vec<Digraph> {
    let mut out: Vec<Digraph> = Vec::new();
    for n in 0..=3usize {
        for pattern in 0..1u64 << (n * n) {
            out.push(from_pattern(n, pattern));
        }
    }
    let total4 = 1u64 << 16;
    let room = cap.saturating_sub(out.len()) as u64;
    if room >= total4 {
        out.extend((0..total4).map(|p| from_pattern(4, p)));
    } else {
        // always include the empty and complete patterns
        out.extend((0..room).map(|i| from_pattern(4, i * (total4 - 1) / (room - 1).max(1))));
    }
    out
}

/// Each arc `u -> v` (loops included) independently with probability `p`.
pub fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_corpus(ns: impl IntoIterator<Item = usize>, ps: &[f64], per: usize, seed: u64) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in ns {
        for &p in ps {
            out.extend((0..per).map(|_| random_digraph(n, p, &mut rng)));
        }
    }
    out
}

/// Exhaustive small graphs plus 50 random graphs per `n` in 5..=10 and per
/// edge probability 0.2, 0.5.
pub fn oracle_corpus() -> Vec<Digraph> {
    let mut out = small_exhaustive(SMALL_CORPUS_CAP);
    out.extend(random_corpus(5..=10, &[0.2, 0.5], 50, 0x5eed));
    out
}

/// Loop at 0, backtrack between 0 and 1, loop at 2.
pub fn worked_example() -> Digraph {
    parse_edge_list("0 0\n0 1\n1 0\n2 2").unwrap()
}

/// The complete digraph with every loop added.
pub fn complete_with_loops(n: usize) -> Digraph {
    let mut g = Digraph::complete(n);
    for v in 0..n {
        g.add_edge(v, v);
    }
    g
}

/// Graphs with at most six vertices for the symbolic identities.
pub fn hopf_corpus() -> Vec<Digraph> {
    let mut out = vec![worked_example(), Digraph::empty(0), Digraph::empty(4), Digraph::complete(3)];
    out.push(parse_edge_list("0 0\n1 1").unwrap());
    for n in 4..=6 {
        out.push(Digraph::complete(n));
        out.push(complete_with_loops(n));
    }
    let small = small_exhaustive(SMALL_CORPUS_CAP);
    out.extend(small.into_iter().step_by(25));
    out.extend(random_corpus(5..=6, &[0.2, 0.5], 15, 0xc0ffee));
    out
}
