//! Truncated univariate polynomials in `z` with big-integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("degree cap mismatch: {left} vs {right}")]
pub struct CapMismatch {
    pub left: usize,
    pub right: usize,
}

/// `c_0 + c_1 z + ... + c_cap z^cap`, everything above `cap` discarded.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    coeffs: Vec<BigInt>,
}

impl TruncPoly {
    pub fn zero(cap: usize) -> TruncPoly {
        TruncPoly { coeffs: vec![BigInt::zero(); cap + 1] }
    }

    pub fn constant<T: Into<BigInt>>(value: T, cap: usize) -> TruncPoly {
        let mut p = TruncPoly::zero(cap);
        p.coeffs[0] = value.into();
        p
    }

    /// `coeff * z^degree`, or zero when `degree > cap`.
    pub fn monomial<T: Into<BigInt>>(coeff: T, degree: usize, cap: usize) -> TruncPoly {
        let mut p = TruncPoly::zero(cap);
        if degree <= cap {
            p.coeffs[degree] = coeff.into();
        }
        p
    }

    /// Coefficients beyond `cap` are dropped; missing ones are zero.
    pub fn from_coeffs<I, T>(coeffs: I, cap: usize) -> TruncPoly
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = TruncPoly::zero(cap);
        for (slot, c) in p.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        p
    }

    #[inline]
    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `z^degree`; zero beyond the cap.
    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn coeff_mut(&mut self, degree: usize) -> &mut BigInt {
        &mut self.coeffs[degree]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Highest degree with a non-zero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn check_cap(&self, other: &TruncPoly) -> Result<(), CapMismatch> {
        if self.cap() == other.cap() {
            Ok(())
        } else {
            Err(CapMismatch { left: self.cap(), right: other.cap() })
        }
    }

    pub fn try_add(&self, other: &TruncPoly) -> Result<TruncPoly, CapMismatch> {
        self.check_cap(other)?;
        Ok(TruncPoly { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &TruncPoly) -> Result<TruncPoly, CapMismatch> {
        self.check_cap(other)?;
        Ok(TruncPoly { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Cauchy product truncated at the common cap.
    pub fn try_mul(&self, other: &TruncPoly) -> Result<TruncPoly, CapMismatch> {
        self.check_cap(other)?;
        let cap = self.cap();
        let mut out = TruncPoly::zero(cap);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=cap - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &TruncPoly) -> Result<(), CapMismatch> {
        self.check_cap(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(())
    }

    pub fn scale(&self, factor: &BigInt) -> TruncPoly {
        TruncPoly { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn neg(&self) -> TruncPoly {
        TruncPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// The length-weighting derivation: `sum f_l z^l  ->  sum l f_l z^l`.
    pub fn weighted_derivative(&self) -> TruncPoly {
        TruncPoly { coeffs: self.coeffs.iter().enumerate().map(|(l, c)| c * BigInt::from(l)).collect() }
    }

    /// Formal `d/dz`. The top coefficient of the result is zero.
    pub fn derivative(&self) -> TruncPoly {
        let cap = self.cap();
        let mut out = TruncPoly::zero(cap);
        for l in 1..=cap {
            out.coeffs[l - 1] = &self.coeffs[l] * BigInt::from(l);
        }
        out
    }

    /// Multiplication by `z`, truncated.
    pub fn shift(&self) -> TruncPoly {
        let cap = self.cap();
        let mut out = TruncPoly::zero(cap);
        out.coeffs[1..].clone_from_slice(&self.coeffs[..cap]);
        out
    }

    /// Same polynomial with a different cap.
    pub fn recap(&self, cap: usize) -> TruncPoly {
        TruncPoly::from_coeffs(self.coeffs.iter().cloned(), cap)
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (cap {})", self.cap())
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (l, mag == BigInt::from(1)) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{l}")?,
                (_, false) => write!(f, "{mag}z^{l}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(coeffs: &[i64], cap: usize) -> TruncPoly {
        TruncPoly::from_coeffs(coeffs.iter().copied(), cap)
    }

    #[test]
    fn product_examples() {
        assert_eq!(p(&[1, 1], 2).try_mul(&p(&[1, -1], 2)).unwrap(), p(&[1, 0, -1], 2));
        assert_eq!(p(&[1, 1], 1).try_mul(&p(&[1, 1], 1)).unwrap(), p(&[1, 2], 1));
        assert!(p(&[3, 4, 5], 2).try_mul(&TruncPoly::zero(2)).unwrap().is_zero());
        assert_eq!(p(&[1], 1).try_add(&p(&[1], 2)), Err(CapMismatch { left: 1, right: 2 }));
        assert!(p(&[1], 1).try_mul(&p(&[1], 3)).is_err());
    }

    #[test]
    fn weighted_derivative_examples() {
        assert_eq!(p(&[1, 0, 3, 2], 3).weighted_derivative(), p(&[0, 0, 6, 6], 3));
        assert!(TruncPoly::constant(5, 3).weighted_derivative().is_zero());
        assert_eq!(p(&[0, 1], 3).weighted_derivative(), p(&[0, 1], 3));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -3, -2], 3).to_string(), "1 - 3z^2 - 2z^3");
        assert_eq!(p(&[0, -1, 1], 3).to_string(), "-z + z^2");
        assert_eq!(TruncPoly::zero(2).to_string(), "0");
    }

    fn small_poly(cap: usize) -> impl Strategy<Value = TruncPoly> {
        prop::collection::vec(-20i64..20, cap + 1).prop_map(move |c| p(&c, cap))
    }

    proptest! {
        #[test]
        fn weighted_derivative_is_a_derivation((a, b) in (0usize..8).prop_flat_map(|cap| (small_poly(cap), small_poly(cap)))) {
            let lhs = a.try_mul(&b).unwrap().weighted_derivative();
            let rhs = a.weighted_derivative().try_mul(&b).unwrap()
                .try_add(&a.try_mul(&b.weighted_derivative()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn weighted_derivative_is_z_times_derivative(a in (0usize..8).prop_flat_map(small_poly)) {
            prop_assert_eq!(a.weighted_derivative(), a.derivative().shift());
        }

        #[test]
        fn product_commutes(
            (a, b) in (0usize..8).prop_flat_map(|cap| (small_poly(cap), small_poly(cap)))
        ) {
            prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        }
    }
}
