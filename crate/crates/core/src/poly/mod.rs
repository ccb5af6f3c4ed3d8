//! Palindromic integer polynomials and the Salem test.
//!
//! A monic palindromic polynomial `f` of degree `2m` factors through its trace
//! polynomial `g` of degree `m`, `f(x) = x^m g(x + 1/x)`. Roots of `f` on the unit
//! circle correspond to roots of `g` in `(-2, 2)`, and a real root `lambda > 1` to a
//! root `lambda + 1/lambda` of `g` in `(2, inf)`, so the Salem pattern can be checked
//! with exact Sturm counts on `g` instead of locating complex roots.

mod classify;
mod cyclotomic;
mod intpoly;
mod mahler;
mod sturm;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use classify::{classify, lambda_at_most, Classifier, SalemClassification, DEFAULT_PRECISION};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicTable};
pub use intpoly::IntPoly;
pub use mahler::mahler_measure_jensen;
pub use sturm::{count_roots_in_interval, Bound, SturmSequence};

use crate::error::{Error, Result};

/// Monic palindromic integer polynomial of even degree `2m`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PalindromicPolynomial {
    coeffs: Vec<i64>,
}

impl PalindromicPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let n = coeffs.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidPolynomial(format!(
                "expected 2m+1 coefficients with m >= 1, got {n}"
            )));
        }
        if coeffs[0] != 1 || coeffs[n - 1] != 1 {
            return Err(Error::InvalidPolynomial(
                "constant and leading coefficients must be 1".into(),
            ));
        }
        if (0..n).any(|k| coeffs[k] != coeffs[n - 1 - k]) {
            return Err(Error::InvalidPolynomial(
                "coefficients are not palindromic".into(),
            ));
        }
        Ok(PalindromicPolynomial { coeffs })
    }

    /// Builds `1 + c_1 x + ... + c_m x^m + ... + c_1 x^(2m-1) + x^(2m)` from the free
    /// half `[c_1, ..., c_m]`.
    pub fn from_half(free: &[i64]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(2 * free.len() + 1);
        coeffs.push(1);
        coeffs.extend_from_slice(free);
        let m = free.len();
        for k in (0..m.saturating_sub(1)).rev() {
            coeffs.push(free[k]);
        }
        coeffs.push(1);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn half_degree(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_i64(&self.coeffs)
    }

    /// Exact value at a rational point (Horner).
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, &c| {
                acc * x + BigRational::from_integer(BigInt::from(c))
            })
    }

    pub fn value_at_one(&self) -> i128 {
        self.coeffs.iter().map(|&c| c as i128).sum()
    }

    pub fn value_at_minus_one(&self) -> i128 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i128 } else { -(c as i128) })
            .sum()
    }

    /// `(A, C)`: sums of the coefficients on even and on odd powers, so that
    /// `f(1) = A + C` and `f(-1) = A - C`.
    pub fn parity_sums(&self) -> (i64, i64) {
        let (mut a, mut c) = (0i64, 0i64);
        for (k, &x) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                a += x;
            } else {
                c += x;
            }
        }
        (a, c)
    }

    /// The degree-`m` monic `g` with `x^m g(x + 1/x) = f(x)`.
    ///
    /// Uses `P_0 = 2, P_1 = y, P_(j+1) = y P_j - P_(j-1)` where `P_j(x + 1/x) = x^j + x^-j`.
    pub fn trace_polynomial(&self) -> TracePolynomial {
        let m = self.half_degree();
        let mut prev = IntPoly::from_i64(&[2]);
        let mut cur = IntPoly::from_i64(&[0, 1]);
        let y = IntPoly::from_i64(&[0, 1]);
        let mut g = IntPoly::from_i64(&[self.coeffs[m]]);
        for j in 1..=m {
            if j > 1 {
                let next = &(&y * &cur) - &prev;
                prev = std::mem::replace(&mut cur, next);
            }
            let c = BigInt::from(self.coeffs[m - j]);
            g = &g + &cur.scale(&c);
        }
        TracePolynomial { poly: g }
    }
}

impl fmt::Display for PalindromicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for PalindromicPolynomial {
    type Err = Error;

    /// Parses `"1,1,0,-1,-1,-1,-1,-1,0,1,1"` (constant term first).
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl Serialize for PalindromicPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PalindromicPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Monic integer polynomial `g` of degree `m` attached to a palindromic `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePolynomial {
    poly: IntPoly,
}

impl TracePolynomial {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Expands `x^m g(x + 1/x) = sum_k g_k x^(m-k) (x^2 + 1)^k` back to coefficients.
    pub fn expand_palindromic(&self) -> IntPoly {
        let m = self.degree();
        let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
        let mut power = IntPoly::one();
        let mut acc = IntPoly::zero();
        for (k, c) in self.poly.coeffs().iter().enumerate() {
            let term = &(&power * &IntPoly::monomial(m - k)) * &IntPoly::new(vec![c.clone()]);
            acc = &acc + &term;
            power = &power * &x2p1;
        }
        acc
    }
}

/// Free-function form of [`PalindromicPolynomial::evaluate`].
pub fn evaluate(f: &PalindromicPolynomial, x: &BigRational) -> BigRational {
    f.evaluate(x)
}

pub fn parity_sums(f: &PalindromicPolynomial) -> (i64, i64) {
    f.parity_sums()
}

pub fn trace_polynomial(f: &PalindromicPolynomial) -> TracePolynomial {
    f.trace_polynomial()
}
