//! Simple-cycle and Hamiltonian-cycle counts from induced-subgraph
//! convolutions of the minor tables.
//!
//! Write `sd(S) = (-1)^|S| det(A_S)` for the coefficient of `det(-z A_S)` and
//! `perm(A_S)` for the coefficient of `perm(z A_S)`. Every identity here is a
//! sum over ordered pairs `(S, U)` of disjoint subsets, one factor taken on
//! the exact subset and the other summed over all subsets of the remainder.
//! Grouping the pairs by `(|S|, |U|)` gives a small square [`PairingTable`];
//! the census, its variant, and the inverse identities are all linear
//! read-outs of that table.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::detperm::{det_i_minus_za, perm_i_plus_za, MinorTables};
use crate::digraph::VertexSet;
use crate::polyring::{CapMismatch, TruncPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("coefficient {value} of z^{length} in the prime derivative is not divisible by {length}")]
    Divisibility { length: usize, value: BigInt },
    #[error("census variants disagree at length {length}: {left} vs {right}")]
    VariantMismatch { length: usize, left: BigInt, right: BigInt },
    #[error("Hamiltonian sum {value} is not divisible by n = {n}")]
    HamiltonianDivisibility { n: usize, value: BigInt },
    #[error("intermediate value does not fit in 128 bits")]
    Overflow,
    #[error(transparent)]
    Cap(#[from] CapMismatch),
}

/// Number of simple cycles of each length `1..=max_length`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleCensus {
    n: usize,
    counts: Vec<BigInt>,
}

impl CycleCensus {
    /// `counts[l]` is the number of cycles of length `l`; `counts[0]` must be zero.
    pub fn from_counts(n: usize, counts: Vec<BigInt>) -> CycleCensus {
        assert!(!counts.is_empty() && counts[0].is_zero(), "no cycle has length 0");
        assert!(counts.iter().all(|c| !c.is_negative()), "negative cycle count");
        CycleCensus { n, counts }
    }

    pub fn zero(n: usize, max_length: usize) -> CycleCensus {
        CycleCensus { n, counts: vec![BigInt::zero(); max_length + 1] }
    }

    /// Reads counts off `Pi(z) = sum_l c_l z^l`.
    pub fn from_generating_function(n: usize, pi: &TruncPoly) -> CycleCensus {
        CycleCensus::from_counts(n, pi.coeffs().to_vec())
    }

    /// Order of the graph the census was taken on.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest length the census covers.
    pub fn max_length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, length: usize) -> BigInt {
        self.counts.get(length).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// `(length, count)` for every non-zero count, ascending by length.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Cycles through every vertex, when the census reaches length `n`.
    pub fn hamiltonian(&self) -> Option<BigInt> {
        (self.max_length() >= self.n).then(|| self.count(self.n))
    }

    /// The same census cut at `max_length`.
    pub fn truncated(&self, max_length: usize) -> CycleCensus {
        let keep = max_length.min(self.max_length());
        CycleCensus { n: self.n, counts: self.counts[..=keep].to_vec() }
    }

    pub fn generating_function(&self) -> TruncPoly {
        TruncPoly::from_coeffs(self.counts.iter().cloned(), self.max_length())
    }
}

impl fmt::Debug for CycleCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.nonzero()).finish()
    }
}

/// `(f * g)[G] = sum_{S subset V} f[S] g[V \ S]` over all `2^n` subsets.
pub fn subgraph_convolve<F, G>(n: usize, cap: usize, f: F, g: G) -> Result<TruncPoly, CapMismatch>
where
    F: Fn(VertexSet) -> TruncPoly,
    G: Fn(VertexSet) -> TruncPoly,
{
    let mut total = TruncPoly::zero(cap);
    for s in VertexSet::all_subsets(n) {
        let term = f(s).try_mul(&g(s.complement(n)))?;
        total.add_assign(&term)?;
    }
    Ok(total)
}

/// Identity of the induced-subgraph convolution: 1 on the empty graph, 0 elsewhere.
pub fn delta(s: VertexSet, cap: usize) -> TruncPoly {
    if s.is_empty() {
        TruncPoly::constant(1, cap)
    } else {
        TruncPoly::zero(cap)
    }
}

/// Sum over subsets of one rank: returns `out[T] = sum_{U subset T, |U| = rank} values[U]`.
fn ranked_zeta(values: &[i128], n: usize, rank: usize) -> Result<Vec<i128>, CensusError> {
    let mut out: Vec<i128> = values
        .par_iter()
        .enumerate()
        .map(|(u, &v)| if (u as u64).count_ones() as usize == rank { v } else { 0 })
        .collect();
    const BLOCK: usize = 1 << 12;
    for bit in 0..n {
        let half = 1usize << bit;
        let block = (2 * half).max(BLOCK).min(out.len());
        out.par_chunks_mut(block).try_for_each(|chunk| {
            for pair in chunk.chunks_mut(2 * half) {
                let (lo, hi) = pair.split_at_mut(half);
                for (h, l) in hi.iter_mut().zip(lo.iter()) {
                    *h = h.checked_add(*l).ok_or(CensusError::Overflow)?;
                }
            }
            Ok::<(), CensusError>(())
        })?;
    }
    Ok(out)
}

/// Which table is taken on exact subsets and which is summed over subsets of
/// the remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// `det(-z A_S)` against `perm(I + z A_{V\S})`.
    DetWithPermSums,
    /// `perm(z A_S)` against `det(I - z A_{V\S})`.
    PermWithDetSums,
}

/// `cell[j][k] = sum_{|S| = j} x(S) * sum_{U subset V\S, |U| = k} y(U)` where
/// `x` is the exact-subset factor and `y` the summed factor of the pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingTable {
    pairing: Pairing,
    cap: usize,
    cells: Vec<Vec<i128>>,
}

impl PairingTable {
    pub fn build(t: &MinorTables, cap: usize, pairing: Pairing) -> Result<PairingTable, CensusError> {
        let n = t.n();
        let cap = cap.min(n);
        let full = t.full();
        let (exact, summed): (Vec<i128>, Vec<i128>) = match pairing {
            Pairing::DetWithPermSums => {
                (VertexSet::all_subsets(n).map(|s| t.signed_det(s)).collect(), t.perm_table().to_vec())
            }
            Pairing::PermWithDetSums => {
                (t.perm_table().to_vec(), VertexSet::all_subsets(n).map(|s| t.signed_det(s)).collect())
            }
        };
        let mut columns = Vec::with_capacity(cap + 1);
        for k in 0..=cap {
            let sums = ranked_zeta(&summed, n, k)?;
            let column: Vec<i128> = (0..1u64 << n)
                .into_par_iter()
                .try_fold(
                    || vec![0i128; cap + 1],
                    |mut acc, bits| {
                        let s = VertexSet(bits);
                        let j = s.len();
                        let x = exact[s.index()];
                        if j + k <= cap && x != 0 {
                            let y = sums[(full.bits() & !bits) as usize];
                            let term = x.checked_mul(y).ok_or(CensusError::Overflow)?;
                            acc[j] = acc[j].checked_add(term).ok_or(CensusError::Overflow)?;
                        }
                        Ok::<_, CensusError>(acc)
                    },
                )
                .try_reduce(
                    || vec![0i128; cap + 1],
                    |mut a, b| {
                        for (x, y) in a.iter_mut().zip(b) {
                            *x = x.checked_add(y).ok_or(CensusError::Overflow)?;
                        }
                        Ok(a)
                    },
                )?;
            columns.push(column);
        }
        let cells = (0..=cap).map(|j| columns.iter().map(|col| col[j]).collect()).collect();
        Ok(PairingTable { pairing, cap, cells })
    }

    pub fn pairing(&self) -> Pairing {
        self.pairing
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `cells[j][k]`, grouped by exact-factor size `j` and summed-factor size `k`.
    pub fn cell(&self, j: usize, k: usize) -> i128 {
        self.cells[j][k]
    }

    fn read_out(&self, weight: impl Fn(usize, usize) -> i128) -> TruncPoly {
        let mut acc = vec![BigInt::zero(); self.cap + 1];
        for (j, row) in self.cells.iter().enumerate() {
            for (k, &cell) in row.iter().enumerate() {
                if j + k <= self.cap && cell != 0 {
                    acc[j + k] += BigInt::from(cell) * BigInt::from(weight(j, k));
                }
            }
        }
        TruncPoly::from_coeffs(acc, self.cap)
    }

    /// The plain convolution, which should be the constant 1.
    pub fn convolution(&self) -> TruncPoly {
        self.read_out(|_, _| 1)
    }

    /// Derivation applied to the exact-subset factor.
    pub fn derivative_on_exact(&self) -> TruncPoly {
        self.read_out(|j, _| j as i128)
    }

    /// Derivation applied to the summed factor.
    pub fn derivative_on_summed(&self) -> TruncPoly {
        self.read_out(|_, k| k as i128)
    }

    /// `D Pi(z)` for this pairing: the derivation lands on the permanent factor.
    pub fn prime_derivative(&self) -> TruncPoly {
        match self.pairing {
            Pairing::DetWithPermSums => self.derivative_on_summed(),
            Pairing::PermWithDetSums => self.derivative_on_exact(),
        }
    }

    /// `D Pi(z)` again, with the derivation on the determinant factor and a sign flip.
    pub fn prime_derivative_variant(&self) -> TruncPoly {
        let raw = match self.pairing {
            Pairing::DetWithPermSums => self.derivative_on_exact(),
            Pairing::PermWithDetSums => self.derivative_on_summed(),
        };
        raw.neg()
    }
}

fn divide_by_length(n: usize, d_pi: &TruncPoly) -> Result<CycleCensus, CensusError> {
    let mut counts = vec![BigInt::zero(); d_pi.cap() + 1];
    for (length, value) in d_pi.coeffs().iter().enumerate().skip(1) {
        let (q, r) = value.div_rem(&BigInt::from(length));
        if !r.is_zero() {
            return Err(CensusError::Divisibility { length, value: value.clone() });
        }
        counts[length] = q;
    }
    if !d_pi.coeff(0).is_zero() {
        return Err(CensusError::Divisibility { length: 0, value: d_pi.coeff(0) });
    }
    Ok(CycleCensus::from_counts(n, counts))
}

/// Census from `D Pi = sum_S det(-z A_S) D perm(I + z A_{V\S})`, checked
/// against `D Pi = -sum_S perm(I + z A_S) D det(-z A_{V\S})`.
///
/// `max_length` truncates the polynomial cap; counts up to it stay exact.
pub fn cycle_census_conv(t: &MinorTables, max_length: Option<usize>) -> Result<CycleCensus, CensusError> {
    cycle_census_with(t, max_length, Pairing::DetWithPermSums)
}

/// [`cycle_census_conv`] with an explicit choice of pairing.
pub fn cycle_census_with(
    t: &MinorTables,
    max_length: Option<usize>,
    pairing: Pairing,
) -> Result<CycleCensus, CensusError> {
    let n = t.n();
    let cap = max_length.unwrap_or(n).min(n);
    let table = PairingTable::build(t, cap, pairing)?;
    let d_pi = table.prime_derivative();
    let variant = table.prime_derivative_variant();
    if let Some(length) = (0..=cap).find(|&l| d_pi.coeff(l) != variant.coeff(l)) {
        return Err(CensusError::VariantMismatch { length, left: d_pi.coeff(length), right: variant.coeff(length) });
    }
    divide_by_length(n, &d_pi)
}

/// Hamiltonian cycles `h_n` from `n h_n = sum_S (-1)^|S| det(A_S) (n - |S|) perm(A_{V\S})`.
/// The empty graph has none.
pub fn hamiltonian_count(t: &MinorTables) -> Result<BigInt, CensusError> {
    let n = t.n();
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let full = t.full();
    let sum = VertexSet::all_subsets(n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .try_fold(
            || 0i128,
            |acc, s| {
                let rest = n - s.len();
                let sd = t.signed_det(s);
                if sd == 0 || rest == 0 {
                    return Ok(acc);
                }
                let term = sd
                    .checked_mul(rest as i128)
                    .and_then(|v| v.checked_mul(t.perm(VertexSet(full.bits() & !s.bits()))))
                    .ok_or(CensusError::Overflow)?;
                acc.checked_add(term).ok_or(CensusError::Overflow)
            },
        )
        .try_reduce(|| 0, |a, b| a.checked_add(b).ok_or(CensusError::Overflow))?;
    let (q, r) = sum.div_rem(&(n as i128));
    if r != 0 {
        return Err(CensusError::HamiltonianDivisibility { n, value: BigInt::from(sum) });
    }
    Ok(BigInt::from(q))
}

/// `sum_S (-1)^|S| det(A_S) perm(A_{V\S})`: 1 on the empty graph, 0 otherwise.
pub fn det_perm_inverse_sum(t: &MinorTables) -> BigInt {
    let full = t.full();
    VertexSet::all_subsets(t.n())
        .map(|s| BigInt::from(t.signed_det(s)) * t.perm(VertexSet(full.bits() & !s.bits())))
        .sum()
}

/// The two inverse identities, both expected to equal the constant 1:
/// `sum_S perm(z A_S) det(I - z A_{V\S})` and `sum_S perm(I + z A_S) det(-z A_{V\S})`.
pub fn inverse_identities(t: &MinorTables) -> Result<(TruncPoly, TruncPoly), CensusError> {
    let n = t.n();
    let first = PairingTable::build(t, n, Pairing::PermWithDetSums)?.convolution();
    let second = PairingTable::build(t, n, Pairing::DetWithPermSums)?.convolution();
    Ok((first, second))
}

/// `det(I - zA)`: the signed count of self-avoiding hikes by length.
pub fn mobius_poly(t: &MinorTables) -> TruncPoly {
    det_i_minus_za(t, t.n())
}

/// `perm(I + zA)`: the count of self-avoiding hikes by length.
pub fn zeta_poly(t: &MinorTables) -> TruncPoly {
    perm_i_plus_za(t, t.n())
}

/// `Pi(z)` as a polynomial, for callers that want the generating function.
pub fn prime_polynomial(t: &MinorTables) -> Result<TruncPoly, CensusError> {
    Ok(cycle_census_conv(t, None)?.generating_function())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detperm::{build_minor_tables, DEFAULT_SIZE_CAP};
    use crate::digraph::{parse_edge_list, Digraph};
    use num_traits::ToPrimitive;

    fn tables(g: &Digraph) -> MinorTables {
        build_minor_tables(g, DEFAULT_SIZE_CAP).unwrap()
    }

    fn census_map(c: &CycleCensus) -> Vec<(usize, i64)> {
        c.nonzero().map(|(l, v)| (l, v.to_i64().unwrap())).collect()
    }

    #[test]
    fn delta_is_the_identity() {
        let d = subgraph_convolve(3, 3, |s| delta(s, 3), |s| delta(s, 3)).unwrap();
        assert!(d.is_zero());
        let d0 = subgraph_convolve(0, 3, |s| delta(s, 3), |s| delta(s, 3)).unwrap();
        assert_eq!(d0, TruncPoly::constant(1, 3));
        let g = Digraph::complete(3);
        let t = tables(&g);
        let sample = |s: VertexSet| TruncPoly::monomial(t.perm(s), s.len(), 3);
        let conv = subgraph_convolve(3, 3, |s| delta(s, 3), sample).unwrap();
        assert_eq!(conv, sample(g.vertices()));
    }

    #[test]
    fn det_perm_convolution_vanishes_on_triangle() {
        let t = tables(&Digraph::complete(3));
        let conv = subgraph_convolve(
            3,
            3,
            |s| TruncPoly::monomial(t.signed_det(s), s.len(), 3),
            |s| TruncPoly::monomial(t.perm(s), s.len(), 3),
        )
        .unwrap();
        assert!(conv.is_zero());
        assert_eq!(det_perm_inverse_sum(&t), BigInt::zero());
    }

    #[test]
    fn hamiltonian_examples() {
        assert_eq!(hamiltonian_count(&tables(&Digraph::complete(3))).unwrap(), BigInt::from(2));
        assert_eq!(hamiltonian_count(&tables(&parse_edge_list("0 0").unwrap())).unwrap(), BigInt::from(1));
        assert_eq!(hamiltonian_count(&tables(&Digraph::complete(4))).unwrap(), BigInt::from(6));
        assert_eq!(hamiltonian_count(&tables(&Digraph::empty(0))).unwrap(), BigInt::zero());
    }

    #[test]
    fn census_examples() {
        let tri = cycle_census_conv(&tables(&Digraph::complete(3)), None).unwrap();
        assert_eq!(census_map(&tri), vec![(2, 3), (3, 2)]);
        let k4 = cycle_census_conv(&tables(&Digraph::complete(4)), None).unwrap();
        assert_eq!(census_map(&k4), vec![(2, 6), (3, 8), (4, 6)]);
        assert_eq!(k4.hamiltonian(), Some(BigInt::from(6)));
        for g in [Digraph::empty(0), Digraph::empty(4)] {
            assert_eq!(cycle_census_conv(&tables(&g), None).unwrap().total(), BigInt::zero());
        }
    }

    #[test]
    fn truncated_census_keeps_low_counts() {
        let t = tables(&Digraph::complete(5));
        let full = cycle_census_conv(&t, None).unwrap();
        let short = cycle_census_conv(&t, Some(3)).unwrap();
        assert_eq!(short.max_length(), 3);
        assert_eq!(short.hamiltonian(), None);
        for l in 0..=3 {
            assert_eq!(short.count(l), full.count(l));
        }
    }

    #[test]
    fn both_pairings_agree() {
        let g = parse_edge_list("0 1\n1 2\n2 0\n2 3\n3 2\n3 3\n1 0").unwrap();
        let t = tables(&g);
        assert_eq!(
            cycle_census_with(&t, None, Pairing::DetWithPermSums).unwrap(),
            cycle_census_with(&t, None, Pairing::PermWithDetSums).unwrap()
        );
    }

    #[test]
    fn zeta_and_mobius_examples() {
        let t = tables(&Digraph::complete(3));
        assert_eq!(mobius_poly(&t), TruncPoly::from_coeffs([1, 0, -3, -2], 3));
        assert_eq!(zeta_poly(&t), TruncPoly::from_coeffs([1, 0, 3, 2], 3));
        let lp = tables(&parse_edge_list("0 0").unwrap());
        assert_eq!(mobius_poly(&lp), TruncPoly::from_coeffs([1, -1], 1));
        assert_eq!(zeta_poly(&lp), TruncPoly::from_coeffs([1, 1], 1));
        let two = tables(&parse_edge_list("0 0\n1 1").unwrap());
        assert_eq!(mobius_poly(&two), TruncPoly::from_coeffs([1, -2, 1], 2));
        assert_eq!(zeta_poly(&two), TruncPoly::from_coeffs([1, 2, 1], 2));
    }

    #[test]
    fn inverse_identities_hold() {
        let g = parse_edge_list("0 1\n1 2\n2 0\n0 0\n2 1").unwrap();
        let (a, b) = inverse_identities(&tables(&g)).unwrap();
        assert_eq!(a, TruncPoly::constant(1, 3));
        assert_eq!(b, TruncPoly::constant(1, 3));
    }

    #[test]
    fn ranked_zeta_matches_direct_sums() {
        let values: Vec<i128> = (0..32).map(|v| (v * 7 % 11) as i128 - 5).collect();
        for rank in 0..=5 {
            let fast = ranked_zeta(&values, 5, rank).unwrap();
            for t in 0..32u64 {
                let direct: i128 = (0..32u64)
                    .filter(|u| u & !t == 0 && u.count_ones() as usize == rank)
                    .map(|u| values[u as usize])
                    .sum();
                assert_eq!(fast[t as usize], direct);
            }
        }
    }
}
