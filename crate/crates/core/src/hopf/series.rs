use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hike::SelfAvoidingHike;
use super::HopfError;
use crate::digraph::VertexSet;
use crate::polyring::TruncPoly;

/// A finite linear combination of self-avoiding hikes with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HikeSeries {
    terms: BTreeMap<SelfAvoidingHike, BigRational>,
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl HikeSeries {
    pub fn zero() -> HikeSeries {
        HikeSeries::default()
    }

    /// The unit of the star product: coefficient 1 on the empty hike.
    pub fn delta() -> HikeSeries {
        HikeSeries::single(SelfAvoidingHike::unit(), BigRational::one())
    }

    pub fn single(h: SelfAvoidingHike, coeff: BigRational) -> HikeSeries {
        let mut s = HikeSeries::zero();
        s.add_term(h, coeff);
        s
    }

    /// `sum_h f(h) h` over the given hikes.
    pub fn from_fn<'a, I, F>(hikes: I, f: F) -> HikeSeries
    where
        I: IntoIterator<Item = &'a SelfAvoidingHike>,
        F: Fn(&SelfAvoidingHike) -> i64,
    {
        let mut s = HikeSeries::zero();
        for h in hikes {
            s.add_term(h.clone(), rational(f(h)));
        }
        s
    }

    pub fn add_term(&mut self, h: SelfAvoidingHike, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(h).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coeff(&self, h: &SelfAvoidingHike) -> BigRational {
        self.terms.get(h).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn unit_coeff(&self) -> BigRational {
        self.coeff(&SelfAvoidingHike::unit())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Non-zero terms in canonical hike order.
    pub fn iter(&self) -> impl Iterator<Item = (&SelfAvoidingHike, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, factor: &BigRational) -> HikeSeries {
        let mut out = HikeSeries::zero();
        for (h, c) in &self.terms {
            out.add_term(h.clone(), c * factor);
        }
        out
    }

    pub fn add(&self, other: &HikeSeries) -> HikeSeries {
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HikeSeries) -> HikeSeries {
        self.add(&other.scale(&rational(-1)))
    }

    /// `S(h) = (-1)^omega(h) h`, extended linearly.
    pub fn antipode(&self) -> HikeSeries {
        let mut out = HikeSeries::zero();
        for (h, c) in &self.terms {
            let c = if h.omega() % 2 == 0 { c.clone() } else { -c };
            out.add_term(h.clone(), c);
        }
        out
    }

    /// The star product: `h * h'` is the concatenation when the supports are
    /// disjoint and zero otherwise, extended bilinearly. Equivalently the
    /// coefficient of `h` sums `a(d) b(h/d)` over the coproduct splits of `h`.
    pub fn star(&self, other: &HikeSeries) -> HikeSeries {
        let mut by_support: BTreeMap<u64, Vec<(&SelfAvoidingHike, &BigRational)>> = BTreeMap::new();
        for (h, c) in &other.terms {
            by_support.entry(h.support().bits()).or_default().push((h, c));
        }
        let mut acc: BTreeMap<SelfAvoidingHike, BigRational> = BTreeMap::new();
        for (d, a) in &self.terms {
            let used = d.support().bits();
            for (_, group) in by_support.iter().filter(|(&mask, _)| mask & used == 0) {
                for &(e, b) in group {
                    let h = d.disjoint_product(e).expect("supports are disjoint");
                    *acc.entry(h).or_insert_with(BigRational::zero) += a * b;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        HikeSeries { terms: acc }
    }

    /// `exp(alpha) = sum_k alpha^k / k!`; requires a zero unit coefficient,
    /// which makes the sum finite.
    pub fn star_exp(&self) -> Result<HikeSeries, HopfError> {
        if !self.unit_coeff().is_zero() {
            return Err(HopfError::ExpPrecondition);
        }
        let mut result = HikeSeries::delta();
        let mut term = HikeSeries::delta();
        for k in 1i64.. {
            term = term.star(self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term);
        }
        Ok(result)
    }

    /// `log(alpha) = sum_k (-1)^(k+1) (alpha - delta)^k / k`; requires unit
    /// coefficient 1. `alpha - delta` has no unit term, so its powers vanish
    /// once they would need more disjoint cycles than the graph holds.
    pub fn star_log(&self) -> Result<HikeSeries, HopfError> {
        if !self.unit_coeff().is_one() {
            return Err(HopfError::LogPrecondition);
        }
        let excess = self.sub(&HikeSeries::delta());
        let mut result = HikeSeries::zero();
        let mut power = HikeSeries::delta();
        for k in 1i64.. {
            power = power.star(&excess);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&BigRational::new(BigInt::from(sign), BigInt::from(k))));
        }
        Ok(result)
    }

    /// Star inverse, defined whenever the unit coefficient is non-zero.
    pub fn star_inverse(&self) -> Result<HikeSeries, HopfError> {
        let c = self.unit_coeff();
        if c.is_zero() {
            return Err(HopfError::NotInvertible);
        }
        let inv_c = c.recip();
        // alpha / c = delta + excess, inverse = sum_j (-excess)^j
        let neg_excess = HikeSeries::delta().sub(&self.scale(&inv_c));
        let mut result = HikeSeries::delta();
        let mut power = HikeSeries::delta();
        loop {
            power = power.star(&neg_excess);
            if power.is_zero() {
                break;
            }
            result = result.add(&power);
        }
        Ok(result.scale(&inv_c))
    }

    /// `alpha^k` for any integer `k`; negative powers go through the inverse.
    pub fn star_power(&self, k: i64) -> Result<HikeSeries, HopfError> {
        let base = if k < 0 { self.star_inverse()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = HikeSeries::delta();
        let mut square = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.star(&square);
            }
            exp >>= 1;
            if exp > 0 {
                square = square.star(&square);
            }
        }
        Ok(result)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Errors on the first non-integral coefficient.
    pub fn ensure_integral(&self) -> Result<(), HopfError> {
        match self.terms.iter().find(|(_, c)| !c.is_integer()) {
            Some((h, c)) => Err(HopfError::NonIntegral { hike: h.to_string(), coeff: c.to_string() }),
            None => Ok(()),
        }
    }

    /// Image under `h -> z^l(h)`; every coefficient must be an integer.
    pub fn z_specialize(&self, cap: usize) -> Result<TruncPoly, HopfError> {
        self.z_specialize_where(cap, |_| true)
    }

    /// `z`-image of the terms whose support is exactly `s`.
    pub fn z_specialize_exact(&self, s: VertexSet, cap: usize) -> Result<TruncPoly, HopfError> {
        self.z_specialize_where(cap, |h| h.support() == s)
    }

    /// `z`-image of the terms whose support lies inside `s`.
    pub fn z_specialize_within(&self, s: VertexSet, cap: usize) -> Result<TruncPoly, HopfError> {
        self.z_specialize_where(cap, |h| h.support().is_subset_of(s))
    }

    fn z_specialize_where(&self, cap: usize, keep: impl Fn(&SelfAvoidingHike) -> bool) -> Result<TruncPoly, HopfError> {
        self.ensure_integral()?;
        let mut poly = TruncPoly::zero(cap);
        for (h, c) in self.terms.iter().filter(|(h, _)| keep(h)) {
            if h.length() <= cap {
                *poly.coeff_mut(h.length()) += c.to_integer();
            }
        }
        Ok(poly)
    }

    /// Whether every term is a single cycle.
    pub fn is_supported_on_primes(&self) -> bool {
        self.terms.keys().all(SelfAvoidingHike::is_prime)
    }

    pub fn terms(&self) -> &BTreeMap<SelfAvoidingHike, BigRational> {
        &self.terms
    }
}

/// One line per term: `coeff  [cycle | cycle | ...]`.
impl fmt::Display for HikeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (h, c) in &self.terms {
            writeln!(f, "{c}  {h}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HikeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(h, c)| (h, c.to_string()))).finish()
    }
}
