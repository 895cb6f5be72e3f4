//! Dense univariate polynomials with real coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A dense polynomial `sum_k coeffs[k] * x^k`.
///
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(vec![value])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    /// `prod_k (x - r_k)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots
            .iter()
            .fold(Self::constant(1.0), |acc, &r| acc * Self::new(vec![-r, 1.0]))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }

    /// Evaluates the polynomial together with its first derivative.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut value = 0.0;
        let mut slope = 0.0;
        for &a in self.coeffs.iter().rev() {
            slope = slope * x + value;
            value = value * x + a;
        }
        (value, slope)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| k as f64 * a)
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * factor).collect())
    }

    /// Substitutes `x -> x^2`.
    pub fn compose_square(&self) -> Self {
        let mut coeffs = vec![0.0; 2 * self.coeffs.len()];
        for (k, &a) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = a;
        }
        Self::new(coeffs)
    }

    /// The polynomial `q` with `q(x^2)` equal to the even part of `self`.
    pub fn even_part_in_square(&self) -> Self {
        Self::new(self.coeffs.iter().step_by(2).copied().collect())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// Upper bound on the magnitude of every real root (Cauchy's bound).
    pub fn cauchy_bound(&self) -> f64 {
        let lead = self.leading_coeff();
        if self.coeffs.len() <= 1 || lead == 0.0 {
            return 0.0;
        }
        let n = self.coeffs.len() - 1;
        1.0 + self.coeffs[..n]
            .iter()
            .fold(0.0_f64, |m, a| m.max((a / lead).abs()))
    }

    /// Fujiwara's bound `2 max_k |a_{n-k} / a_n|^{1/k}` on root magnitudes,
    /// usually much tighter than [`cauchy_bound`](Self::cauchy_bound).
    pub fn fujiwara_bound(&self) -> f64 {
        let Some(n) = self.degree() else {
            return 0.0;
        };
        let lead = self.leading_coeff();
        (1..=n)
            .map(|k| {
                let r = (self.coeffs[n - k] / lead).abs();
                if k == n {
                    (0.5 * r).powf(1.0 / k as f64)
                } else {
                    r.powf(1.0 / k as f64)
                }
            })
            .fold(0.0_f64, f64::max)
            * 2.0
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    ///
    /// A remainder coefficient is zeroed when its magnitude is at most
    /// `rel_tol` times the magnitude of the terms that produced it, so that
    /// cancellation residue does not masquerade as a nonzero term. Pass
    /// `0.0` for plain floating-point division.
    pub fn div_rem(&self, divisor: &Self, rel_tol: f64) -> (Self, Self) {
        let Some(dd) = divisor.degree() else {
            panic!("division by the zero polynomial");
        };
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut mag: Vec<f64> = rem.iter().map(|a| a.abs()).collect();
        let mut quot = vec![0.0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
                mag[k + j] += (q * d).abs();
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        for (r, m) in rem.iter_mut().zip(&mag) {
            if r.abs() <= rel_tol * m {
                *r = 0.0;
            }
        }
        (Self::new(quot), Self::new(rem))
    }
}

impl From<Vec<f64>> for RealPolynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Self::new(coeffs)
    }
}

impl From<RealPolynomial> for Vec<f64> {
    fn from(p: RealPolynomial) -> Self {
        p.coeffs
    }
}

impl Add for &RealPolynomial {
    type Output = RealPolynomial;

    fn add(self, rhs: Self) -> RealPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for RealPolynomial {
    type Output = RealPolynomial;

    fn add(self, rhs: Self) -> RealPolynomial {
        &self + &rhs
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;

    fn sub(self, rhs: Self) -> RealPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Sub for RealPolynomial {
    type Output = RealPolynomial;

    fn sub(self, rhs: Self) -> RealPolynomial {
        &self - &rhs
    }
}

impl Mul for &RealPolynomial {
    type Output = RealPolynomial;

    fn mul(self, rhs: Self) -> RealPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RealPolynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }
}

impl Mul for RealPolynomial {
    type Output = RealPolynomial;

    fn mul(self, rhs: Self) -> RealPolynomial {
        &self * &rhs
    }
}

impl Neg for RealPolynomial {
    type Output = RealPolynomial;

    fn neg(self) -> RealPolynomial {
        self.scale(-1.0)
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &a) in self.coeffs.iter().enumerate().rev() {
            if a == 0.0 {
                continue;
            }
            let sign = if a < 0.0 { "-" } else { "+" };
            if first {
                if a < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let m = a.abs();
            match k {
                0 => write!(f, "{m}")?,
                1 if m == 1.0 => write!(f, "x")?,
                1 => write!(f, "{m}x")?,
                _ if m == 1.0 => write!(f, "x^{k}")?,
                _ => write!(f, "{m}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = RealPolynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(RealPolynomial::new(vec![0.0]).degree(), None);
    }

    #[test]
    fn horner_matches_direct_sum() {
        let p = RealPolynomial::new(vec![-2.0, 0.0, 1.0]);
        assert_eq!(p.eval(3.0), 7.0);
        let (v, d) = p.eval_with_derivative(3.0);
        assert_eq!((v, d), (7.0, 6.0));
    }

    #[test]
    fn from_roots_expands() {
        let p = RealPolynomial::from_roots(&[1.0, 4.0]);
        assert_eq!(p.coeffs(), &[4.0, -5.0, 1.0]);
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = RealPolynomial::new(vec![1.0, -3.0, 0.0, 2.0, 5.0]);
        let b = RealPolynomial::new(vec![2.0, 1.0, 1.0]);
        let (q, r) = a.div_rem(&b, 0.0);
        let back = &(&q * &b) + &r;
        for k in 0..5 {
            assert!((back.coeff(k) - a.coeff(k)).abs() < 1e-12);
        }
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn root_bounds_contain_roots() {
        let p = RealPolynomial::from_roots(&[-7.5, 0.2, 3.0, 1e-3]);
        for b in [p.cauchy_bound(), p.fujiwara_bound()] {
            assert!(b >= 7.5, "{b}");
        }
    }

    #[test]
    fn compose_square_doubles_degree() {
        let g = RealPolynomial::new(vec![4.0, -5.0, 1.0]);
        assert_eq!(g.compose_square().coeffs(), &[4.0, 0.0, -5.0, 0.0, 1.0]);
    }

    #[test]
    fn display() {
        let p = RealPolynomial::new(vec![-2.0, 0.0, 1.0]);
        assert_eq!(p.to_string(), "x^2 - 2");
    }
}
