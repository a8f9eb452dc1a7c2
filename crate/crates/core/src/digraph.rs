//! Directed graphs with loops, vertex subsets, and the edge-list text format.
//!
//! Vertices are `0..n` with `n <= 64`, so a vertex subset fits in one `u64`
//! and every induced subgraph of a graph is addressed by a bit mask.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest vertex count a [`Digraph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed line `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: negative vertex index `{text}`")]
    NegativeIndex { line: usize, text: String },
    #[error("line {line}: duplicate edge {u} -> {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex index {index} is out of range for declared n = {n}")]
    IndexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: vertex count {n} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { line: usize, n: usize },
}

/// A subset of `{0, .., 63}` stored as a bit mask.
///
/// The natural integer encoding doubles as the subset's index in every
/// `2^n`-sized table of the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> VertexSet {
        VertexSet(vertices.into_iter().fold(0, |acc, v| acc | (1u64 << v)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    #[inline]
    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        })
    }

    /// All `2^n` subsets of `{0, .., n-1}`, ascending by integer encoding.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
        assert!(n < MAX_VERTICES, "cannot iterate 2^{n} subsets");
        (0..1u64 << n).map(VertexSet)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Square integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> IntMatrix {
        IntMatrix { dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows do not form a square matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> IntMatrix {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "matrix is not square");
            entries.extend_from_slice(row);
        }
        IntMatrix { dim, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Finite directed graph on vertices `0..n`, loops allowed, no parallel arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
    inc: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Digraph {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        Digraph { n, out: vec![0; n], inc: vec![0; n] }
    }

    /// Builds a graph from arcs, rejecting duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Digraph, ParseError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(ParseError::TooManyVertices { line: 0, n });
        }
        let mut g = Digraph::empty(n);
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(ParseError::IndexOutOfRange { line: 0, index, n });
                }
            }
            if !g.add_edge(u, v) {
                return Err(ParseError::DuplicateEdge { line: 0, u, v });
            }
        }
        Ok(g)
    }

    /// Every arc `u -> v` with `u != v`, in both directions, for each undirected pair given.
    pub fn bidirected<I>(n: usize, pairs: I) -> Digraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::empty(n);
        for (u, v) in pairs {
            g.add_edge(u, v);
            g.add_edge(v, u);
        }
        g
    }

    /// Complete bidirected graph without loops.
    pub fn complete(n: usize) -> Digraph {
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Graph whose adjacency rows are the given out-neighbour masks.
    pub fn from_out_masks(n: usize, masks: &[u64]) -> Digraph {
        assert_eq!(masks.len(), n);
        let mut g = Digraph::empty(n);
        for (u, &mask) in masks.iter().enumerate() {
            for v in VertexSet(mask & VertexSet::full(n).0).iter() {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Returns false if the arc was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range for n = {}", self.n);
        if self.has_edge(u, v) {
            return false;
        }
        self.out[u] |= 1 << v;
        self.inc[v] |= 1 << u;
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    /// Out-neighbours of `u` as a vertex set.
    #[inline]
    pub fn out_neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.out[u])
    }

    /// In-neighbours of `v` as a vertex set.
    #[inline]
    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.inc[v])
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Arcs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).iter().map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Adjacency matrix of the subgraph induced by `s`, rows and columns in
    /// ascending vertex order.
    pub fn induced_adjacency(&self, s: VertexSet) -> IntMatrix {
        debug_assert!(s.is_subset_of(self.vertices()));
        let members: Vec<usize> = s.iter().collect();
        let mut m = IntMatrix::zeros(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if self.has_edge(u, v) {
                    m.set(i, j, 1);
                }
            }
        }
        m
    }

    pub fn adjacency(&self) -> IntMatrix {
        self.induced_adjacency(self.vertices())
    }

    /// `V(G) \ s`.
    pub fn subset_complement(&self, s: VertexSet) -> VertexSet {
        s.complement(self.n)
    }

    /// True when some vertex of `s` has no out-arc or no in-arc inside `s`.
    /// The induced adjacency then has a zero row or column.
    #[inline]
    pub fn has_dead_vertex(&self, s: VertexSet) -> bool {
        s.iter().any(|v| self.out[v] & s.0 == 0 || self.inc[v] & s.0 == 0)
    }

    /// Serializes to the edge-list format with an explicit `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut text = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            text.push_str(&format!("{u} {v}\n"));
        }
        text
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, ParseError> {
    if token.starts_with('-') && token[1..].chars().all(|c| c.is_ascii_digit()) && token.len() > 1 {
        return Err(ParseError::NegativeIndex { line, text: token.to_string() });
    }
    if !token.chars().all(|c| c.is_ascii_digit()) {
        return Err(ParseError::Malformed { line, text: token.to_string() });
    }
    token.parse::<usize>().map_err(|_| ParseError::Malformed { line, text: token.to_string() })
}

/// Parses the edge-list format: one `u v` arc per line, `#` comments, blank
/// lines ignored, and an optional leading `n N` header fixing the vertex
/// count. Without a header the vertex count is one more than the largest index.
pub fn parse_edge_list(text: &str) -> Result<Digraph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut seen_content = false;
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::Malformed { line, text: raw.to_string() });
        }
        if tokens[0] == "n" {
            if seen_content {
                return Err(ParseError::Malformed { line, text: raw.to_string() });
            }
            let n = parse_index(tokens[1], line)?;
            if n > MAX_VERTICES {
                return Err(ParseError::TooManyVertices { line, n });
            }
            declared = Some(n);
            seen_content = true;
            continue;
        }
        seen_content = true;
        let u = parse_index(tokens[0], line)?;
        let v = parse_index(tokens[1], line)?;
        arcs.push((line, u, v));
    }

    let n = match declared {
        Some(n) => n,
        None => arcs.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    if n > MAX_VERTICES {
        let line = arcs.iter().find(|&&(_, u, v)| u.max(v) >= MAX_VERTICES).map_or(0, |a| a.0);
        return Err(ParseError::TooManyVertices { line, n });
    }
    let mut g = Digraph::empty(n);
    for (line, u, v) in arcs {
        for index in [u, v] {
            if index >= n {
                return Err(ParseError::IndexOutOfRange { line, index, n });
            }
        }
        if !g.add_edge(u, v) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
    }
    Ok(g)
}

impl FromStr for Digraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_edge_list(s)
    }
}
