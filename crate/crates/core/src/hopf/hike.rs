use std::fmt;

use super::HopfError;
use crate::digraph::{Digraph, VertexSet};

/// A simple cycle `v_0 -> v_1 -> ... -> v_{l-1} -> v_0`, rotated so that
/// `v_0` is its smallest vertex. Length 1 is a loop, length 2 a backtrack.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleCycle {
    vertices: Vec<usize>,
    support: VertexSet,
}

impl SimpleCycle {
    /// Canonicalizes a vertex sequence; fails on repeats or an empty sequence.
    pub fn new(mut vertices: Vec<usize>) -> Result<SimpleCycle, HopfError> {
        let support = VertexSet::from_vertices(vertices.iter().copied());
        if vertices.is_empty() || support.len() != vertices.len() {
            return Err(HopfError::InvalidCycle(format!("{vertices:?}")));
        }
        let pos = vertices.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
        vertices.rotate_left(pos);
        Ok(SimpleCycle { vertices, support })
    }

    /// Caller guarantees distinct vertices with the minimum first.
    pub(crate) fn from_canonical(vertices: Vec<usize>) -> SimpleCycle {
        let support = VertexSet::from_vertices(vertices.iter().copied());
        debug_assert_eq!(support.len(), vertices.len());
        debug_assert_eq!(support.min(), vertices.first().copied());
        SimpleCycle { vertices, support }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn support(&self) -> VertexSet {
        self.support
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn min_vertex(&self) -> usize {
        self.vertices[0]
    }

    /// Every consecutive arc, including the closing one, is present in `g`.
    pub fn is_cycle_of(&self, g: &Digraph) -> bool {
        self.vertices.iter().all(|&v| v < g.n())
            && self.vertices.iter().zip(self.vertices.iter().cycle().skip(1)).all(|(&u, &v)| g.has_edge(u, v))
    }
}

impl fmt::Display for SimpleCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SimpleCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A set of pairwise vertex-disjoint simple cycles, sorted by smallest vertex.
/// The empty set is the unit hike.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SelfAvoidingHike {
    components: Vec<SimpleCycle>,
    support: VertexSet,
}

impl SelfAvoidingHike {
    pub fn unit() -> SelfAvoidingHike {
        SelfAvoidingHike::default()
    }

    pub fn prime(cycle: SimpleCycle) -> SelfAvoidingHike {
        let support = cycle.support();
        SelfAvoidingHike { components: vec![cycle], support }
    }

    /// Fails if two components share a vertex.
    pub fn new(mut components: Vec<SimpleCycle>) -> Result<SelfAvoidingHike, HopfError> {
        let mut support = VertexSet::EMPTY;
        for c in &components {
            if !support.is_disjoint(c.support()) {
                return Err(HopfError::OverlappingComponents);
            }
            support = support.union(c.support());
        }
        components.sort_by_key(SimpleCycle::min_vertex);
        Ok(SelfAvoidingHike { components, support })
    }

    pub fn components(&self) -> &[SimpleCycle] {
        &self.components
    }

    pub fn support(&self) -> VertexSet {
        self.support
    }

    /// Total arc count, equal to the number of vertices visited.
    pub fn length(&self) -> usize {
        self.support.len()
    }

    /// Number of prime factors; also the number of connected components.
    pub fn omega(&self) -> usize {
        self.components.len()
    }

    pub fn is_unit(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_prime(&self) -> bool {
        self.components.len() == 1
    }

    /// The product `self * other`, or `None` when the supports meet.
    pub fn disjoint_product(&self, other: &SelfAvoidingHike) -> Option<SelfAvoidingHike> {
        if !self.support.is_disjoint(other.support) {
            return None;
        }
        let mut components = Vec::with_capacity(self.omega() + other.omega());
        let (mut a, mut b) = (self.components.iter().peekable(), other.components.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.min_vertex() < y.min_vertex() => a.next(),
                (Some(_), Some(_)) => b.next(),
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (None, None) => break,
            };
            components.push(next.expect("peeked").clone());
        }
        Some(SelfAvoidingHike { components, support: self.support.union(other.support) })
    }

    /// The divisor made of the components selected by `mask`.
    pub fn restrict(&self, mask: u64) -> SelfAvoidingHike {
        let mut support = VertexSet::EMPTY;
        let components: Vec<SimpleCycle> = self
            .components
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| {
                support = support.union(c.support());
                c.clone()
            })
            .collect();
        SelfAvoidingHike { components, support }
    }
}

impl fmt::Display for SelfAvoidingHike {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SelfAvoidingHike {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every set of pairwise disjoint cycles drawn from `primes`, the unit hike
/// included, in a deterministic order.
pub fn enumerate_sa_hikes(
    g: &Digraph,
    primes: &[SimpleCycle],
    budget: usize,
) -> Result<Vec<SelfAvoidingHike>, HopfError> {
    if let Some(bad) = primes.iter().find(|p| !p.is_cycle_of(g)) {
        return Err(HopfError::InvalidCycle(bad.to_string()));
    }
    let mut primes = primes.to_vec();
    primes.sort();
    primes.dedup();

    fn grow(
        primes: &[SimpleCycle],
        from: usize,
        current: &mut Vec<SimpleCycle>,
        used: VertexSet,
        out: &mut Vec<SelfAvoidingHike>,
        budget: usize,
    ) -> Result<(), HopfError> {
        if out.len() >= budget {
            return Err(HopfError::Budget { limit: budget });
        }
        out.push(SelfAvoidingHike::new(current.clone())?);
        for (i, p) in primes.iter().enumerate().skip(from) {
            if used.is_disjoint(p.support()) {
                current.push(p.clone());
                grow(primes, i + 1, current, used.union(p.support()), out, budget)?;
                current.pop();
            }
        }
        Ok(())
    }

    let mut out = Vec::new();
    grow(&primes, 0, &mut Vec::new(), VertexSet::EMPTY, &mut out, budget)?;
    out.sort();
    Ok(out)
}

/// All `2^omega(h)` splits `(d, h/d)`, one per subset of components, in
/// ascending order of the subset's bit mask.
pub fn coproduct(h: &SelfAvoidingHike) -> Vec<(SelfAvoidingHike, SelfAvoidingHike)> {
    let k = h.omega();
    let all = (1u64 << k) - 1;
    (0..=all).map(|mask| (h.restrict(mask), h.restrict(all & !mask))).collect()
}

/// 1 on the unit hike, 0 elsewhere.
pub fn counit(h: &SelfAvoidingHike) -> i64 {
    h.is_unit() as i64
}

/// `l(h)` on primes, 0 on every other self-avoiding hike.
pub fn von_mangoldt_sa(h: &SelfAvoidingHike) -> i64 {
    if h.is_prime() {
        h.length() as i64
    } else {
        0
    }
}

/// `(-1)^omega(h)`, which agrees with the Mobius function on self-avoiding hikes.
pub fn liouville_sa(h: &SelfAvoidingHike) -> i64 {
    if h.omega().is_multiple_of(2) {
        1
    } else {
        -1
    }
}
