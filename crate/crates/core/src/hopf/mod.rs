//! The Hopf algebra of self-avoiding hikes on a fixed graph.
//!
//! A self-avoiding hike is a set of vertex-disjoint simple cycles. Products
//! concatenate disjoint hikes and vanish otherwise; the coproduct splits a
//! hike into complementary subsets of its cycles. Everything here works on
//! explicit finite series and is meant for small graphs: the number of
//! self-avoiding hikes grows like a permanent. [`crate::census`] is the
//! scalable route to the same counts.
//!
//! ```
//! use cyclehopf::digraph::Digraph;
//! use cyclehopf::hopf::{HikeUniverse, DEFAULT_HIKE_BUDGET};
//!
//! let universe = HikeUniverse::from_graph(&Digraph::complete(3), DEFAULT_HIKE_BUDGET).unwrap();
//! let primes = universe.zeta().star_log().unwrap();
//! assert_eq!(primes, universe.prime_series());
//! ```

mod hike;
mod series;

use thiserror::Error;

pub use hike::{coproduct, counit, enumerate_sa_hikes, liouville_sa, von_mangoldt_sa, SelfAvoidingHike, SimpleCycle};
pub use series::HikeSeries;

use num_rational::BigRational;

use crate::digraph::Digraph;
use crate::oracle::{enumerate_simple_cycles, OracleError};

/// Default maximum number of self-avoiding hikes (and of cycles) enumerated.
pub const DEFAULT_HIKE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("more than {limit} self-avoiding hikes")]
    Budget { limit: usize },
    #[error("not a simple cycle of the graph: {0}")]
    InvalidCycle(String),
    #[error("hike components share a vertex")]
    OverlappingComponents,
    #[error("star exponential needs a zero coefficient on the empty hike")]
    ExpPrecondition,
    #[error("star logarithm needs coefficient 1 on the empty hike")]
    LogPrecondition,
    #[error("series has no star inverse: zero coefficient on the empty hike")]
    NotInvertible,
    #[error("expected an integral series, found {coeff} on {hike}")]
    NonIntegral { hike: String, coeff: String },
    #[error("result is not supported on simple cycles")]
    NotPrimitive,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// The simple cycles and self-avoiding hikes of one graph.
#[derive(Debug, Clone)]
pub struct HikeUniverse {
    n: usize,
    primes: Vec<SimpleCycle>,
    hikes: Vec<SelfAvoidingHike>,
}

impl HikeUniverse {
    /// Enumerates cycles with the oracle, then every disjoint combination.
    pub fn from_graph(g: &Digraph, budget: usize) -> Result<HikeUniverse, HopfError> {
        let primes = enumerate_simple_cycles(g, budget)?;
        let hikes = enumerate_sa_hikes(g, &primes, budget)?;
        Ok(HikeUniverse { n: g.n(), primes, hikes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn primes(&self) -> &[SimpleCycle] {
        &self.primes
    }

    pub fn hikes(&self) -> &[SelfAvoidingHike] {
        &self.hikes
    }

    /// `sum_h h`, the image of `perm(I + W)`.
    pub fn zeta(&self) -> HikeSeries {
        HikeSeries::from_fn(&self.hikes, |_| 1)
    }

    /// `sum_h (-1)^omega(h) h`, the image of `det(I - W)`.
    pub fn mobius(&self) -> HikeSeries {
        HikeSeries::from_fn(&self.hikes, liouville_sa)
    }

    /// `sum_h omega(h) h`, the grading applied to the zeta series.
    pub fn omega_series(&self) -> HikeSeries {
        HikeSeries::from_fn(&self.hikes, |h| h.omega() as i64)
    }

    /// `sum_h l(h) h`.
    pub fn length_series(&self) -> HikeSeries {
        HikeSeries::from_fn(&self.hikes, |h| h.length() as i64)
    }

    /// `sum_p p` over the simple cycles.
    pub fn prime_series(&self) -> HikeSeries {
        HikeSeries::from_fn(self.hikes.iter().filter(|h| h.is_prime()), |_| 1)
    }
}

fn primitive_integral(series: HikeSeries) -> Result<HikeSeries, HopfError> {
    series.ensure_integral()?;
    if !series.is_supported_on_primes() {
        return Err(HopfError::NotPrimitive);
    }
    Ok(series)
}

/// The Eulerian idempotent applied to the zeta series: `log(sum_h h)`.
pub fn eulerian_idempotent(g: &Digraph, budget: usize) -> Result<HikeSeries, HopfError> {
    eulerian_of(&HikeUniverse::from_graph(g, budget)?)
}

pub fn eulerian_of(universe: &HikeUniverse) -> Result<HikeSeries, HopfError> {
    primitive_integral(universe.zeta().star_log()?)
}

/// The Dynkin idempotent applied to the zeta series: antipode star grading,
/// i.e. `(sum_h (-1)^omega(h) h) * (sum_h omega(h) h)`.
pub fn dynkin_idempotent(g: &Digraph, budget: usize) -> Result<HikeSeries, HopfError> {
    dynkin_of(&HikeUniverse::from_graph(g, budget)?)
}

pub fn dynkin_of(universe: &HikeUniverse) -> Result<HikeSeries, HopfError> {
    primitive_integral(universe.zeta().antipode().star(&universe.omega_series()))
}

type Triple = (SelfAvoidingHike, SelfAvoidingHike, SelfAvoidingHike);

/// `(Delta x id) Delta h` and `(id x Delta) Delta h`, each as a sorted list of triples.
pub fn iterated_coproducts(h: &SelfAvoidingHike) -> (Vec<Triple>, Vec<Triple>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (d, r) in coproduct(h) {
        for (d1, d2) in coproduct(&d) {
            left.push((d1, d2, r.clone()));
        }
        for (r1, r2) in coproduct(&r) {
            right.push((d.clone(), r1, r2));
        }
    }
    left.sort();
    right.sort();
    (left, right)
}

pub fn is_coassociative(h: &SelfAvoidingHike) -> bool {
    let (left, right) = iterated_coproducts(h);
    left == right
}

/// `sum eps(d) h/d = h = sum d eps(h/d)`.
pub fn satisfies_counit(h: &SelfAvoidingHike) -> bool {
    let mut left = HikeSeries::zero();
    let mut right = HikeSeries::zero();
    for (d, r) in coproduct(h) {
        left.add_term(r.clone(), BigRational::from_integer(counit(&d).into()));
        right.add_term(d, BigRational::from_integer(counit(&r).into()));
    }
    let expected = HikeSeries::single(h.clone(), BigRational::from_integer(1.into()));
    left == expected && right == expected
}

pub fn is_cocommutative(h: &SelfAvoidingHike) -> bool {
    let mut splits = coproduct(h);
    let mut swapped: Vec<_> = splits.iter().map(|(d, r)| (r.clone(), d.clone())).collect();
    splits.sort();
    swapped.sort();
    splits == swapped
}

/// `sum_(d | h) Lambda(d)` over the coproduct divisors, which should be `l(h)`.
pub fn divisor_mangoldt_sum(h: &SelfAvoidingHike) -> i64 {
    coproduct(h).iter().map(|(d, _)| von_mangoldt_sa(d)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::parse_edge_list;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn universe(text: &str) -> HikeUniverse {
        HikeUniverse::from_graph(&parse_edge_list(text).unwrap(), DEFAULT_HIKE_BUDGET).unwrap()
    }

    /// loop `a` at 0, backtrack `b` between 0 and 1, loop `c` at 2
    const WORKED_EXAMPLE: &str = "0 0\n0 1\n1 0\n2 2";

    #[test]
    fn worked_example_log() {
        let u = universe(WORKED_EXAMPLE);
        assert_eq!(u.primes().len(), 3);
        let mu = u.mobius();
        let shown: Vec<(String, String)> = mu.iter().map(|(h, c)| (h.to_string(), c.to_string())).collect();
        assert_eq!(
            shown,
            vec![
                ("[]".into(), "1".into()),
                ("[0]".into(), "-1".into()),
                ("[0 | 2]".into(), "1".into()),
                ("[0 1]".into(), "-1".into()),
                ("[0 1 | 2]".into(), "1".into()),
                ("[2]".into(), "-1".into()),
            ]
        );
        let log = mu.star_log().unwrap().scale(&int(-1));
        assert_eq!(log, u.prime_series());
        assert_eq!(u.zeta().star_log().unwrap(), u.prime_series());
    }

    #[test]
    fn exp_of_primes_is_zeta() {
        let u = HikeUniverse::from_graph(&Digraph::complete(3), DEFAULT_HIKE_BUDGET).unwrap();
        assert_eq!(u.hikes().len(), 6);
        assert_eq!(u.prime_series().star_exp().unwrap(), u.zeta());
    }

    #[test]
    fn zeta_and_mobius_are_inverse() {
        let u = HikeUniverse::from_graph(&Digraph::complete(3), DEFAULT_HIKE_BUDGET).unwrap();
        assert_eq!(u.zeta().star(&u.mobius()), HikeSeries::delta());
        assert_eq!(u.zeta().antipode(), u.mobius());
    }

    #[test]
    fn powers_of_zeta() {
        let u = HikeUniverse::from_graph(&Digraph::complete(3), DEFAULT_HIKE_BUDGET).unwrap();
        assert_eq!(u.zeta().star_power(-1).unwrap(), u.mobius());
        assert_eq!(u.zeta().star_power(0).unwrap(), HikeSeries::delta());
        let sq = u.zeta().star_power(2).unwrap();
        for h in u.hikes() {
            assert_eq!(sq.coeff(h), int(if h.is_unit() { 1 } else { 2 }));
        }
    }

    #[test]
    fn idempotent_examples() {
        let tri = Digraph::complete(3);
        let e = eulerian_idempotent(&tri, DEFAULT_HIKE_BUDGET).unwrap();
        assert_eq!(e.len(), 5);
        assert!(e.iter().all(|(h, c)| h.is_prime() && *c == int(1)));
        assert_eq!(dynkin_idempotent(&tri, DEFAULT_HIKE_BUDGET).unwrap(), e);

        assert!(eulerian_idempotent(&Digraph::empty(4), DEFAULT_HIKE_BUDGET).unwrap().is_zero());
        assert!(dynkin_idempotent(&Digraph::empty(4), DEFAULT_HIKE_BUDGET).unwrap().is_zero());

        let loops = universe("0 0\n1 1");
        let d = dynkin_of(&loops).unwrap();
        assert_eq!(d, loops.prime_series());
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn laws_on_worked_example() {
        let u = universe(WORKED_EXAMPLE);
        for h in u.hikes() {
            assert!(is_coassociative(h));
            assert!(satisfies_counit(h));
            assert!(is_cocommutative(h));
            assert_eq!(divisor_mangoldt_sum(h), h.length() as i64);
        }
    }

    #[test]
    fn budget_propagates() {
        assert!(matches!(
            eulerian_idempotent(&Digraph::complete(4), 3),
            Err(HopfError::Oracle(OracleError::Budget { limit: 3 }))
        ));
    }
}
