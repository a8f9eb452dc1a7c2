//! Exact determinants and permanents, and the per-subset minor tables that
//! every counting formula in [`crate::census`] is built from.
//!
//! Both kernels are generic over [`ExactInt`]: they first run on `i128` with
//! checked arithmetic and fall back to `BigInt` if any intermediate overflows.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::digraph::{Digraph, IntMatrix, VertexSet};
use crate::polyring::TruncPoly;

/// Default largest graph order accepted by [`build_minor_tables`].
pub const DEFAULT_SIZE_CAP: usize = 20;

/// Hard upper bound on the size cap. Beyond it the `2^n` tables no longer fit
/// in memory, and below it every census accumulator provably fits in `i128`.
pub const MAX_SIZE_CAP: usize = 24;

/// Default largest dimension accepted by [`exact_perm`].
pub const DEFAULT_PERM_DIM_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetPermError {
    #[error("graph has {n} vertices, above the size cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("matrix dimension {dim} is above the permanent cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("minor of subset {subset:#x} does not fit in 128 bits")]
    Overflow { subset: u64 },
}

/// Integer arithmetic where every operation may refuse (overflow).
pub trait ExactInt: Clone + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    /// Division known to be exact, by a non-zero divisor.
    fn checked_div_exact(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self % other, 0);
        i128::checked_div(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % other)));
        Some(self / other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_det<T: ExactInt>(m: &IntMatrix) -> Option<T> {
    let n = m.dim();
    if n == 0 {
        return Some(T::from_i64(1));
    }
    let mut a: Vec<Vec<T>> = (0..n).map(|i| m.row(i).iter().map(|&x| T::from_i64(x)).collect()).collect();
    let mut negate = false;
    let mut prev = T::from_i64(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Some(T::from_i64(0)),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let lhs = row[j].checked_mul(&pivot_row[k])?;
                let rhs = row[k].checked_mul(&pivot_row[j])?;
                row[j] = lhs.checked_sub(&rhs)?.checked_div_exact(&prev)?;
            }
            row[k] = T::from_i64(0);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.checked_neg()
    } else {
        Some(det)
    }
}

/// Ryser's formula, visiting column subsets in Gray-code order so each step
/// adds or removes a single column from the running row sums.
pub fn ryser_perm<T: ExactInt>(m: &IntMatrix) -> Option<T> {
    let n = m.dim();
    if n == 0 {
        return Some(T::from_i64(1));
    }
    assert!(n < 63, "Ryser iteration over 2^{n} column subsets");
    let mut row_sums = vec![0i64; n];
    let mut total = T::from_i64(0);
    let mut gray: u64 = 0;
    for k in 1u64..1 << n {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            let entry = m.get(i, j);
            *sum = if adding { sum.checked_add(entry)? } else { sum.checked_sub(entry)? };
        }
        if row_sums.contains(&0) {
            continue;
        }
        let mut product = T::from_i64(row_sums[0]);
        for &s in &row_sums[1..] {
            product = product.checked_mul(&T::from_i64(s))?;
        }
        // sign (-1)^(n - |cols|)
        total = if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total.checked_add(&product)?
        } else {
            total.checked_sub(&product)?
        };
    }
    Some(total)
}

/// Exact determinant of a square integer matrix. The empty matrix has determinant 1.
pub fn exact_det(m: &IntMatrix) -> BigInt {
    bareiss_det::<i128>(m)
        .map(BigInt::from)
        .unwrap_or_else(|| bareiss_det::<BigInt>(m).expect("BigInt arithmetic cannot overflow"))
}

/// Exact permanent via Ryser's formula, refusing matrices larger than `dim_cap`.
pub fn exact_perm(m: &IntMatrix, dim_cap: usize) -> Result<BigInt, DetPermError> {
    if m.dim() > dim_cap {
        return Err(DetPermError::DimensionCap { dim: m.dim(), cap: dim_cap });
    }
    Ok(ryser_perm::<i128>(m)
        .map(BigInt::from)
        .unwrap_or_else(|| ryser_perm::<BigInt>(m).expect("BigInt arithmetic cannot overflow")))
}

fn minor_to_i128(
    value: Option<i128>,
    m: &IntMatrix,
    subset: VertexSet,
    big: fn(&IntMatrix) -> Option<BigInt>,
) -> Result<i128, DetPermError> {
    match value {
        Some(v) => Ok(v),
        None => big(m).and_then(|b| b.to_i128()).ok_or(DetPermError::Overflow { subset: subset.bits() }),
    }
}

/// `det(A_S)` and `perm(A_S)` for every vertex subset `S` of a graph.
///
/// Entries are indexed by the subset's bit mask; the empty subset maps to 1
/// in both tables. For a 0/1 matrix `|det| <= perm <= |S|!`, so entries fit
/// in `i128` for every order up to [`MAX_SIZE_CAP`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorTables {
    n: usize,
    det: Vec<i128>,
    perm: Vec<i128>,
}

impl MinorTables {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn det(&self, s: VertexSet) -> i128 {
        self.det[s.index()]
    }

    #[inline]
    pub fn perm(&self, s: VertexSet) -> i128 {
        self.perm[s.index()]
    }

    pub fn det_table(&self) -> &[i128] {
        &self.det
    }

    pub fn perm_table(&self) -> &[i128] {
        &self.perm
    }

    /// `(-1)^|S| det(A_S)`, the coefficient of the monomial `det(-z A_S)`.
    #[inline]
    pub fn signed_det(&self, s: VertexSet) -> i128 {
        if s.len().is_multiple_of(2) {
            self.det(s)
        } else {
            -self.det(s)
        }
    }

    pub fn full(&self) -> VertexSet {
        VertexSet::full(self.n)
    }
}

/// Fills both minor tables. Subsets with a vertex that has no out-arc or no
/// in-arc inside the subset have a zero row or column and are set to 0
/// without running either kernel.
pub fn build_minor_tables(g: &Digraph, size_cap: usize) -> Result<MinorTables, DetPermError> {
    let n = g.n();
    let cap = size_cap.min(MAX_SIZE_CAP);
    if n > cap {
        return Err(DetPermError::SizeCap { n, cap });
    }
    let entries: Vec<(i128, i128)> = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let s = VertexSet(bits);
            if s.is_empty() {
                return Ok((1, 1));
            }
            if g.has_dead_vertex(s) {
                return Ok((0, 0));
            }
            let m = g.induced_adjacency(s);
            let det = minor_to_i128(bareiss_det::<i128>(&m), &m, s, bareiss_det::<BigInt>)?;
            let perm = minor_to_i128(ryser_perm::<i128>(&m), &m, s, ryser_perm::<BigInt>)?;
            Ok((det, perm))
        })
        .collect::<Result<_, DetPermError>>()?;
    let (det, perm) = entries.into_iter().unzip();
    Ok(MinorTables { n, det, perm })
}

fn subset_polynomial(t: &MinorTables, cap: usize, coeff: impl Fn(VertexSet) -> i128) -> TruncPoly {
    let mut acc = vec![0i128; cap + 1];
    for s in VertexSet::all_subsets(t.n) {
        let k = s.len();
        if k <= cap {
            acc[k] += coeff(s);
        }
    }
    TruncPoly::from_coeffs(acc, cap)
}

/// `det(I - zA) = sum_S (-1)^|S| det(A_S) z^|S|`, truncated at `cap`.
pub fn det_i_minus_za(t: &MinorTables, cap: usize) -> TruncPoly {
    subset_polynomial(t, cap, |s| t.signed_det(s))
}

/// `perm(I + zA) = sum_S perm(A_S) z^|S|`, truncated at `cap`.
pub fn perm_i_plus_za(t: &MinorTables, cap: usize) -> TruncPoly {
    subset_polynomial(t, cap, |s| t.perm(s))
}

/// Reference value for tests: `det` of the polynomial matrix `I - zA` expanded
/// over all permutations. Exponential in `n`, independent of the tables.
pub fn det_i_minus_za_direct(g: &Digraph) -> TruncPoly {
    let n = g.n();
    let mut out = TruncPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |sigma| {
        // Each factor is 1 - z a_ii on the diagonal and -z a_ij elsewhere.
        let mut term = TruncPoly::constant(permutation_sign(sigma), n);
        for (i, &j) in sigma.iter().enumerate() {
            let a = g.has_edge(i, j) as i64;
            let factor = if i == j { TruncPoly::from_coeffs([1, -a], n) } else { TruncPoly::from_coeffs([0, -a], n) };
            term = term.try_mul(&factor).expect("equal caps");
            if term.is_zero() {
                return;
            }
        }
        out.add_assign(&term).expect("equal caps");
    });
    out
}

pub(crate) fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

pub(crate) fn permutation_sign(sigma: &[usize]) -> i64 {
    let mut seen = vec![false; sigma.len()];
    let mut sign = 1;
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = sigma[v];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Leibniz-formula determinant and permanent, for cross-checking small matrices.
pub fn naive_det_perm(m: &IntMatrix) -> (BigInt, BigInt) {
    let mut det = BigInt::zero();
    let mut perm = BigInt::zero();
    let mut sigma: Vec<usize> = (0..m.dim()).collect();
    permutations(&mut sigma, 0, &mut |sigma| {
        let mut prod = BigInt::one();
        for (i, &j) in sigma.iter().enumerate() {
            prod *= m.get(i, j);
        }
        perm += &prod;
        if permutation_sign(sigma) < 0 {
            det -= prod;
        } else {
            det += prod;
        }
    });
    (det, perm)
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let entry = m.get(0, j);
        if entry == 0 {
            continue;
        }
        let minor_rows: Vec<Vec<i64>> =
            (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c)).collect()).collect();
        let minor = cofactor_det(&IntMatrix::from_rows(&minor_rows));
        let term = minor * entry;
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
