//! Integer polynomials in `t`, truncated at a caller-supplied degree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense coefficients `c_0 + c_1 t + ...`, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TPoly(Vec<i64>);

impl TPoly {
    pub fn zero() -> TPoly {
        TPoly(Vec::new())
    }

    pub fn one() -> TPoly {
        TPoly(vec![1])
    }

    pub fn constant(c: i64) -> TPoly {
        Self::from_coeffs(vec![c])
    }

    /// `c t^k`
    pub fn monomial(c: i64, k: usize) -> TPoly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<i64>) -> TPoly {
        while v.last() == Some(&0) {
            v.pop();
        }
        TPoly(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn truncated(mut self, tdeg: usize) -> TPoly {
        if self.0.len() > tdeg + 1 {
            self.0.truncate(tdeg + 1);
            return Self::from_coeffs(self.0);
        }
        self
    }

    pub fn add_assign(&mut self, other: &TPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        self.normalize();
    }

    pub fn sub_assign(&mut self, other: &TPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
        self.normalize();
    }

    /// Adds `c · other · t^shift`, keeping degrees up to `tdeg`.
    pub fn add_scaled_shifted(&mut self, other: &TPoly, c: i64, shift: usize, tdeg: usize) {
        if c == 0 || other.is_zero() || shift > tdeg {
            return;
        }
        let top = (other.0.len() + shift).min(tdeg + 1);
        if self.0.len() < top {
            self.0.resize(top, 0);
        }
        for (k, &b) in other.0.iter().enumerate() {
            if k + shift > tdeg {
                break;
            }
            self.0[k + shift] += c * b;
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn neg(&self) -> TPoly {
        TPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: i64) -> TPoly {
        if c == 0 {
            return TPoly::zero();
        }
        TPoly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul_trunc(&self, other: &TPoly, tdeg: usize) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let len = (self.0.len() + other.0.len() - 1).min(tdeg + 1);
        let mut v = vec![0i64; len];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }

    /// Adds `a · b` truncated at `tdeg` in place.
    pub fn add_product(&mut self, a: &TPoly, b: &TPoly, tdeg: usize) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let len = (a.0.len() + b.0.len() - 1).min(tdeg + 1);
        if self.0.len() < len {
            self.0.resize(len, 0);
        }
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 || i >= len {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                self.0[i + j] += x * y;
            }
        }
        self.normalize();
    }

    /// Inverse modulo `t^{tdeg+1}`; requires constant term `±1`.
    pub fn inverse(&self, tdeg: usize) -> Result<TPoly> {
        let c0 = self.coeff(0);
        if c0 != 1 && c0 != -1 {
            return Err(Error::NonUnitLeadingTerm);
        }
        let mut g = vec![0i64; tdeg + 1];
        g[0] = c0;
        for k in 1..=tdeg {
            let mut s = 0i64;
            for j in 1..=k.min(self.0.len().saturating_sub(1)) {
                s += self.0[j] * g[k - j];
            }
            g[k] = -c0 * s;
        }
        Ok(Self::from_coeffs(g))
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_inverse() {
        let p = TPoly::from_coeffs(vec![1, -1]);
        assert_eq!(p.inverse(4).unwrap(), TPoly::from_coeffs(vec![1, 1, 1, 1, 1]));
        assert_eq!(TPoly::constant(2).inverse(3), Err(Error::NonUnitLeadingTerm));
        assert_eq!(TPoly::constant(-1).inverse(3).unwrap(), TPoly::constant(-1));
    }

    #[test]
    fn display() {
        assert_eq!(TPoly::from_coeffs(vec![1, -1]).to_string(), "1 - t");
        assert_eq!(TPoly::from_coeffs(vec![0, -2, 0, 1]).to_string(), "-2t + t^3");
        assert_eq!(TPoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = TPoly> {
        prop::collection::vec(-5i64..=5, 0..6).prop_map(TPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn inverse_multiplies_to_one(mut p in small_poly(), s in prop::bool::ANY) {
            let c0 = if s { 1 } else { -1 };
            let mut v = p.coeffs().to_vec();
            if v.is_empty() { v.push(0); }
            v[0] = c0;
            p = TPoly::from_coeffs(v);
            let q = p.inverse(6).unwrap();
            prop_assert_eq!(p.mul_trunc(&q, 6), TPoly::one());
        }

        #[test]
        fn mul_commutes_and_evaluates(a in small_poly(), b in small_poly(), t in -3i64..=3) {
            let ab = a.mul_trunc(&b, 20);
            prop_assert_eq!(&ab, &b.mul_trunc(&a, 20));
            prop_assert_eq!(ab.eval(t), a.eval(t) * b.eval(t));
        }
    }
}
