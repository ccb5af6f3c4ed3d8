use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::is_squarefree;
use crate::error::{Error, Result};
use crate::poly::{Classifier, PalindromicPolynomial, SalemClassification, DEFAULT_PRECISION};

/// Default cap on the size of the coefficient box.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Which set to enumerate: Salem polynomials of degree `2m` with `lambda <= Q`, optionally
/// restricted to those with `f(1) f(-1) = -D k^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusQuery {
    pub m: usize,
    pub d: Option<u64>,
    pub q: BigRational,
}

impl CensusQuery {
    pub fn new(m: usize, d: Option<u64>, q: BigRational) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "census needs m >= 2, got {m}"
            )));
        }
        if let Some(d) = d {
            if !is_squarefree(d) {
                return Err(Error::InvalidArgument(format!(
                    "D = {d} is not a positive squarefree integer"
                )));
            }
        }
        if !q.is_positive() {
            return Err(Error::InvalidArgument("Q must be positive".into()));
        }
        Ok(CensusQuery { m, d, q })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CensusOptions {
    pub budget: u128,
    pub precision: f64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            budget: DEFAULT_BUDGET,
            precision: DEFAULT_PRECISION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SalemEntry {
    pub polynomial: PalindromicPolynomial,
    pub classification: SalemClassification,
}

impl SalemEntry {
    pub fn lambda(&self) -> f64 {
        self.classification.lambda.unwrap_or(f64::NAN)
    }
}

/// `floor(binom(2m, k) Q)` for `k = 1..m`.
pub fn coefficient_bounds(m: usize, q: &BigRational) -> Vec<u64> {
    (1..=m)
        .map(|k| {
            let b = BigRational::from_integer(binomial(BigInt::from(2 * m), BigInt::from(k)));
            (b * q).floor().to_integer().to_u64().unwrap_or(u64::MAX)
        })
        .collect()
}

/// `|C| <= 2^(2m-1) Q`.
pub fn parity_sum_bound_c(m: usize, q: &BigRational) -> BigRational {
    BigRational::from_integer(BigInt::one() << (2 * m - 1)) * q
}

/// `|A| <= (2^(2m-1) - 2) Q + 2`.
pub fn parity_sum_bound_a(m: usize, q: &BigRational) -> BigRational {
    let two = BigInt::from(2);
    BigRational::from_integer((BigInt::one() << (2 * m - 1)) - &two) * q
        + BigRational::from_integer(two)
}

/// `prod (2 b_k + 1)`, saturating.
pub fn search_space_size(bounds: &[u64]) -> u128 {
    bounds
        .iter()
        .fold(1u128, |acc, &b| acc.saturating_mul(2 * b as u128 + 1))
}

/// Exact sign of `f(p/q)` for a polynomial given by all `2m + 1` coefficients, using `i128`
/// when the terms `c_k p^k q^(2m-k)` fit and big integers otherwise.
struct SignAtQ {
    num: BigInt,
    den: BigInt,
    weights: Option<Vec<i128>>,
}

impl SignAtQ {
    fn new(q: &BigRational, degree: usize) -> Self {
        let (p, d) = (q.numer().clone(), q.denom().clone());
        let weights = (0..=degree)
            .map(|k| {
                let w = num_traits::pow(p.clone(), k) * num_traits::pow(d.clone(), degree - k);
                w.to_i128()
            })
            .collect();
        SignAtQ {
            num: p,
            den: d,
            weights,
        }
    }

    fn sign(&self, coeffs: &[i64]) -> Ordering {
        if let Some(w) = &self.weights {
            let mut acc = 0i128;
            let fits = coeffs.iter().zip(w).all(|(&c, &w)| {
                match (c as i128).checked_mul(w).and_then(|t| acc.checked_add(t)) {
                    Some(v) => {
                        acc = v;
                        true
                    }
                    None => false,
                }
            });
            if fits {
                return acc.cmp(&0);
            }
        }
        let poly = crate::poly::IntPoly::from_i64(coeffs);
        poly.sign_at(&self.num, &self.den)
    }
}

struct Search<'a> {
    m: usize,
    bounds: &'a [u64],
    d: Option<u64>,
    sign_at_q: SignAtQ,
    classifier: &'a Classifier,
}

impl Search<'_> {
    /// Walks `c_2 .. c_(m-1)` for a fixed `c_1` and solves the two linear sign conditions
    /// `f(1) < 0`, `f(-1) > 0` for the range of `c_m`.
    fn shard(&self, c1: i64) -> Vec<SalemEntry> {
        let m = self.m;
        let mut out = Vec::new();
        let mut free = vec![0i64; m];
        free[0] = c1;
        if m == 1 {
            return out;
        }
        let inner: Vec<i64> = self.bounds[1..m - 1].iter().map(|&b| b as i64).collect();
        for (slot, &b) in free[1..m - 1].iter_mut().zip(&inner) {
            *slot = -b;
        }
        loop {
            self.last_coefficient(&mut free, &mut out);
            // odometer over c_2 .. c_(m-1)
            let mut i = m - 2;
            loop {
                if i == 0 {
                    return out;
                }
                if free[i] < inner[i - 1] {
                    free[i] += 1;
                    break;
                }
                free[i] = -inner[i - 1];
                i -= 1;
            }
        }
    }

    fn last_coefficient(&self, free: &mut [i64], out: &mut Vec<SalemEntry>) {
        let m = self.m;
        let (mut s_plus, mut s_minus) = (2i64, 2i64);
        for (k, &c) in free[..m - 1].iter().enumerate() {
            s_plus += 2 * c;
            s_minus += if (k + 1) % 2 == 0 { 2 * c } else { -2 * c };
        }
        let b = self.bounds[m - 1] as i64;
        // f(1) = s_plus + c_m < 0
        let mut hi = (-s_plus - 1).min(b);
        let mut lo = -b;
        // f(-1) = s_minus + (-1)^m c_m > 0
        if m.is_multiple_of(2) {
            lo = lo.max(1 - s_minus);
        } else {
            hi = hi.min(s_minus - 1);
        }
        let mut coeffs = vec![0i64; 2 * m + 1];
        for cm in lo..=hi {
            free[m - 1] = cm;
            coeffs[0] = 1;
            coeffs[2 * m] = 1;
            for (k, &c) in free.iter().enumerate() {
                coeffs[k + 1] = c;
                coeffs[2 * m - 1 - k] = c;
            }
            if self.sign_at_q.sign(&coeffs) == Ordering::Less {
                continue;
            }
            let f =
                PalindromicPolynomial::new(coeffs.clone()).expect("palindromic by construction");
            let c = self.classifier.classify(&f);
            if !c.is_salem {
                continue;
            }
            if let Some(d) = self.d {
                if c.square_decomposition.map(|(dd, _)| dd) != Some(d) {
                    continue;
                }
            }
            out.push(SalemEntry {
                polynomial: f,
                classification: c,
            });
        }
    }
}

/// Every Salem polynomial of degree `2m` with `lambda <= Q` (and matching `D` when given),
/// sorted by `lambda` and then by coefficients.
///
/// The coefficient box `|c_k| <= binom(2m, k) Q` is scanned in full; the necessary sign
/// conditions `f(1) < 0`, `f(-1) > 0` and `f(Q) >= 0` are applied before the full
/// classification. With the Salem root pattern, `f(Q) >= 0` is exactly `lambda <= Q`.
pub fn enumerate_salem(query: &CensusQuery, opts: &CensusOptions) -> Result<Vec<SalemEntry>> {
    let bounds = coefficient_bounds(query.m, &query.q);
    let size = search_space_size(&bounds);
    if size > opts.budget {
        return Err(Error::BudgetExceeded {
            size,
            budget: opts.budget,
        });
    }
    if query.q < BigRational::one() {
        return Ok(Vec::new());
    }
    let classifier = Classifier::new(query.m, opts.precision);
    let search = Search {
        m: query.m,
        bounds: &bounds,
        d: query.d,
        sign_at_q: SignAtQ::new(&query.q, 2 * query.m),
        classifier: &classifier,
    };
    let b1 = bounds[0] as i64;
    let mut out: Vec<SalemEntry> = (-b1..=b1)
        .into_par_iter()
        .flat_map_iter(|c1| search.shard(c1))
        .collect();
    sort_entries(&mut out);
    Ok(out)
}

pub fn sort_entries(entries: &mut [SalemEntry]) {
    entries.sort_by(|a, b| {
        a.lambda()
            .total_cmp(&b.lambda())
            .then_with(|| a.polynomial.coeffs().cmp(b.polynomial.coeffs()))
    });
}
