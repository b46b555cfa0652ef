//! Exact polynomials and truncated power series with rational coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial, or a power series known modulo `t^(N+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    coeffs: Vec<BigRational>,
    /// `Some(N)` for a series whose coefficients are meaningful up to `t^N`.
    truncation: Option<usize>,
}

impl PolySeries {
    pub fn polynomial(coeffs: Vec<BigRational>) -> Self {
        let mut p = PolySeries { coeffs, truncation: None };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::polynomial(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// A series truncated at `t^n` (coefficients beyond are dropped).
    pub fn series(mut coeffs: Vec<BigRational>, n: usize) -> Self {
        coeffs.resize(n + 1, BigRational::zero());
        PolySeries { coeffs, truncation: Some(n) }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    fn trim(&mut self) {
        if self.truncation.is_none() {
            while self.coeffs.last().is_some_and(Zero::is_zero) {
                self.coeffs.pop();
            }
        }
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn is_series(&self) -> bool {
        self.truncation.is_some()
    }

    /// Coefficient of `t^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree of the highest nonzero stored coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Truncates to a series modulo `t^(n+1)`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = self.truncation.map_or(n, |m| m.min(n));
        let mut c = self.coeffs.clone();
        c.truncate(n + 1);
        Self::series(c, n)
    }

    fn combined_truncation(&self, other: &Self) -> Option<usize> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn finish(coeffs: Vec<BigRational>, truncation: Option<usize>) -> Self {
        match truncation {
            Some(n) => {
                let mut c = coeffs;
                c.truncate(n + 1);
                Self::series(c, n)
            }
            None => Self::polynomial(coeffs),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::finish(c, self.combined_truncation(other))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        Self::finish(self.coeffs.iter().map(|c| c * a).collect(), self.truncation)
    }

    /// Product; a series operand truncates the result to the smaller window.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.combined_truncation(other);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::finish(Vec::new(), trunc);
        }
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(n) = trunc {
            len = len.min(n + 1);
        }
        let mut c = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                c[i + j] += a * b;
            }
        }
        Self::finish(c, trunc)
    }

    /// Inverse modulo `t^(n+1)`; needs a nonzero constant term.
    pub fn inv(&self, n: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::Domain("series with zero constant term is not invertible".into()));
        }
        let n = self.truncation.map_or(n, |m| m.min(n));
        let inv0 = c0.recip();
        let mut u: Vec<BigRational> = vec![inv0.clone()];
        for k in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                let a = self.coeff(i);
                if !a.is_zero() {
                    s += a * &u[k - i];
                }
            }
            u.push(-s * &inv0);
        }
        Ok(Self::series(u, n))
    }

    /// Substitutes `-t` for `t`.
    pub fn negate_variable(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, x)| if k % 2 == 1 { -x } else { x.clone() })
            .collect();
        Self::finish(c, self.truncation)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Integer coefficients, if all coefficients are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// `(1 - t^k)^(-e)` modulo `t^(n+1)`.
    pub fn pbw_factor(k: usize, e: usize, n: usize) -> Self {
        let mut base = vec![BigRational::zero(); n + 1];
        base[0] = BigRational::one();
        if k <= n {
            base[k] = -BigRational::one();
        }
        let b = Self::series(base, n);
        let inv = b.inv(n).expect("unit constant term");
        let mut acc = Self::series(vec![BigRational::one()], n);
        for _ in 0..e {
            acc = acc.mul(&inv);
        }
        acc
    }

    /// The PBW product `prod_i (1 - t^i)^(-dims[i-1])` modulo `t^(n+1)`.
    pub fn pbw_product(dims: &[usize], n: usize) -> Self {
        let mut acc = Self::series(vec![BigRational::one()], n);
        for (i, &d) in dims.iter().enumerate() {
            if d > 0 && i + 1 <= n {
                acc = acc.mul(&Self::pbw_factor(i + 1, d, n));
            }
        }
        acc
    }
}

impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if let Some(n) = self.truncation {
            write!(f, " + O(t^{})", n + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &PolySeries) -> Vec<i64> {
        p.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn geometric_series() {
        let inv = PolySeries::from_ints(&[1, -1]).inv(3).unwrap();
        assert_eq!(ints(&inv), vec![1, 1, 1, 1]);
    }

    #[test]
    fn surface_series_recurrence() {
        // u_k = 4 u_{k-1} - u_{k-2}
        let inv = PolySeries::from_ints(&[1, -4, 1]).inv(3).unwrap();
        assert_eq!(ints(&inv), vec![1, 4, 15, 56]);
    }

    #[test]
    fn heisenberg_froberg_defect() {
        let a = PolySeries::from_ints(&[1, -4, 5]);
        let b = PolySeries::series(PolySeries::from_ints(&[1, 4, 11, 24, 46]).coeffs().to_vec(), 4);
        assert_eq!(ints(&a.mul(&b)), vec![1, 0, 0, 0, 5]);
    }

    #[test]
    fn zero_constant_term_is_a_domain_error() {
        assert!(PolySeries::from_ints(&[0, 1]).inv(3).is_err());
    }

    #[test]
    fn pbw_product_of_two_abelian_generators() {
        let h = PolySeries::pbw_product(&[2], 3);
        assert_eq!(ints(&h), vec![1, 2, 3, 4]);
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", PolySeries::from_ints(&[1, 4, 1])), "1 + 4t + t^2");
        assert_eq!(alloc::format!("{}", PolySeries::from_ints(&[1, -2]).truncate(2)), "1 - 2t + O(t^3)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]
            #[test]
            fn inverse_is_two_sided(c0 in prop_oneof![-5i64..=-1, 1i64..=5], rest in proptest::collection::vec(-6i64..=6, 0..7), n in 1usize..9) {
                let mut c = vec![c0];
                c.extend(rest);
                let a = PolySeries::from_ints(&c).truncate(n);
                let inv = a.inv(n).unwrap();
                let one = PolySeries::one().truncate(n);
                prop_assert_eq!(a.mul(&inv), one.clone());
                prop_assert_eq!(inv.mul(&a), one);
            }
        }
    }
}
