//! Brute-force ground truth: explicit enumeration of simple cycles.
//!
//! Two enumerators are provided so they can check each other: a Johnson-style
//! circuit search with blocking lists, and a plain depth-first search that
//! only extends paths through vertices larger than the start.

use num_bigint::BigInt;
use thiserror::Error;

use crate::census::CycleCensus;
use crate::digraph::{Digraph, VertexSet};
use crate::hopf::SimpleCycle;

/// Default maximum number of cycles an enumerator may emit.
pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("more than {limit} simple cycles")]
    Budget { limit: usize },
}

struct Johnson<'g> {
    g: &'g Digraph,
    start: usize,
    allowed: u64,
    blocked: Vec<bool>,
    block_lists: Vec<u64>,
    stack: Vec<usize>,
    out: Vec<SimpleCycle>,
    budget: usize,
}

impl Johnson<'_> {
    fn successors(&self, v: usize) -> VertexSet {
        VertexSet(self.g.out_neighbors(v).bits() & self.allowed & !(1u64 << v))
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        let waiting = std::mem::take(&mut self.block_lists[u]);
        for w in VertexSet(waiting).iter() {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: usize) -> Result<bool, OracleError> {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for w in self.successors(v).iter() {
            if w == self.start {
                if self.out.len() >= self.budget {
                    return Err(OracleError::Budget { limit: self.budget });
                }
                self.out.push(SimpleCycle::from_canonical(self.stack.clone()));
                found = true;
            } else if !self.blocked[w] && self.circuit(w)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for w in self.successors(v).iter() {
                self.block_lists[w] |= 1u64 << v;
            }
        }
        self.stack.pop();
        Ok(found)
    }
}

/// Every simple cycle of `g` exactly once, canonically rotated, sorted.
/// Loops come from a separate pass; the circuit search ignores them.
pub fn enumerate_simple_cycles(g: &Digraph, budget: usize) -> Result<Vec<SimpleCycle>, OracleError> {
    let n = g.n();
    let mut cycles = Vec::new();
    for v in (0..n).filter(|&v| g.has_edge(v, v)) {
        if cycles.len() >= budget {
            return Err(OracleError::Budget { limit: budget });
        }
        cycles.push(SimpleCycle::from_canonical(vec![v]));
    }
    let mut search = Johnson {
        g,
        start: 0,
        allowed: 0,
        blocked: vec![false; n],
        block_lists: vec![0; n],
        stack: Vec::with_capacity(n),
        out: cycles,
        budget,
    };
    for s in 0..n {
        search.start = s;
        search.allowed = VertexSet::full(n).bits() & !((1u64 << s) - 1);
        search.blocked.iter_mut().for_each(|b| *b = false);
        search.block_lists.iter_mut().for_each(|b| *b = 0);
        search.circuit(s)?;
    }
    let mut cycles = search.out;
    cycles.sort();
    Ok(cycles)
}

/// Second, independent enumerator: depth-first search from each start vertex
/// through larger vertices only.
pub fn enumerate_simple_cycles_dfs(g: &Digraph, budget: usize) -> Result<Vec<SimpleCycle>, OracleError> {
    fn extend(
        g: &Digraph,
        start: usize,
        path: &mut Vec<usize>,
        visited: u64,
        out: &mut Vec<SimpleCycle>,
        budget: usize,
    ) -> Result<(), OracleError> {
        let v = *path.last().expect("path starts at the start vertex");
        for w in g.out_neighbors(v).iter() {
            if w == start {
                if out.len() >= budget {
                    return Err(OracleError::Budget { limit: budget });
                }
                out.push(SimpleCycle::from_canonical(path.clone()));
            } else if w > start && visited >> w & 1 == 0 {
                path.push(w);
                extend(g, start, path, visited | 1 << w, out, budget)?;
                path.pop();
            }
        }
        Ok(())
    }

    let mut out = Vec::new();
    for s in 0..g.n() {
        extend(g, s, &mut vec![s], 1 << s, &mut out, budget)?;
    }
    out.sort();
    Ok(out)
}

/// Cycle counts by length, read off the Johnson enumeration.
pub fn brute_force_census(g: &Digraph, budget: usize) -> Result<CycleCensus, OracleError> {
    let cycles = enumerate_simple_cycles(g, budget)?;
    Ok(census_of(g.n(), &cycles))
}

/// Counts by length of an explicit cycle list.
pub fn census_of(n: usize, cycles: &[SimpleCycle]) -> CycleCensus {
    let mut counts = vec![BigInt::from(0); n + 1];
    for c in cycles {
        counts[c.len()] += 1;
    }
    CycleCensus::from_counts(n, counts)
}

/// Hamiltonian cycles by exhaustive search: paths from vertex 0 through every
/// vertex, closed by an arc back to 0. Zero for the empty graph.
pub fn brute_force_hamiltonian(g: &Digraph) -> BigInt {
    fn walk(g: &Digraph, v: usize, visited: u64, full: u64) -> u128 {
        if visited == full {
            return g.has_edge(v, 0) as u128;
        }
        g.out_neighbors(v).iter().filter(|&w| visited >> w & 1 == 0).map(|w| walk(g, w, visited | 1 << w, full)).sum()
    }

    match g.n() {
        0 => BigInt::from(0),
        1 => BigInt::from(g.has_edge(0, 0) as u8),
        n => BigInt::from(walk(g, 0, 1, VertexSet::full(n).bits())),
    }
}
