use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicTable;
use super::sturm::{bisect_root, cauchy_bound, Bound, SturmSequence};
use super::{PalindromicPolynomial, TracePolynomial};
use crate::arith::squarefree_part;

/// Default absolute precision for the Salem root `lambda`.
pub const DEFAULT_PRECISION: f64 = 1e-12;

/// Verdict for a palindromic polynomial. All failure modes are encoded in the flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SalemClassification {
    pub is_squarefree: bool,
    /// One simple real root above 1, the remaining `2m - 2` roots on the unit circle
    /// and non-real.
    pub root_pattern_ok: bool,
    /// Smallest `n` with `Phi_n | f`, over the indices that can occur in degree `2m`.
    pub cyclotomic_factor: Option<u64>,
    pub is_salem: bool,
    /// Degree-2 input (`m = 1`); the Salem verdict is reported but its taxonomy is
    /// left to the caller.
    pub degree_two: bool,
    pub lambda: Option<f64>,
    /// `(A, C)`, sums of the even- and odd-power coefficients.
    pub parity_sums: (i64, i64),
    /// `(D, k)` with `f(1) f(-1) = -D k^2`, present only when the product is negative.
    pub square_decomposition: Option<(u64, u64)>,
}

impl SalemClassification {
    /// `(A, B, C)` with `B = k`, solving `A^2 + D B^2 = C^2`.
    pub fn triple(&self) -> Option<(i64, i64, i64)> {
        let (a, c) = self.parity_sums;
        self.square_decomposition.map(|(_, k)| (a, k as i64, c))
    }

    pub fn discriminant_class(&self) -> Option<u64> {
        self.square_decomposition.map(|(d, _)| d)
    }
}

/// Reusable classifier for a fixed half-degree: holds the cyclotomic candidates.
#[derive(Clone, Debug)]
pub struct Classifier {
    m: usize,
    precision: f64,
    cyclotomics: CyclotomicTable,
}

impl Classifier {
    pub fn new(m: usize, precision: f64) -> Self {
        Classifier {
            m,
            precision,
            cyclotomics: CyclotomicTable::for_half_degree(m),
        }
    }

    pub fn half_degree(&self) -> usize {
        self.m
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    pub fn classify(&self, f: &PalindromicPolynomial) -> SalemClassification {
        assert_eq!(
            f.half_degree(),
            self.m,
            "classifier built for another degree"
        );
        let fp = f.to_int_poly();
        let is_squarefree = fp.gcd(&fp.derivative()).is_constant();

        let g = f.trace_polynomial();
        let root_pattern_ok = root_pattern(&g, f);
        let cyclotomic_factor = self.cyclotomics.smallest_divisor_index(&fp);
        let is_salem = is_squarefree && root_pattern_ok && cyclotomic_factor.is_none();

        let lambda = root_pattern_ok.then(|| self.salem_root(&g));

        let product = f.value_at_one() * f.value_at_minus_one();
        let square_decomposition = (product < 0).then(|| {
            let (s, k) = squarefree_part(product);
            ((-s) as u64, k as u64)
        });

        SalemClassification {
            is_squarefree,
            root_pattern_ok,
            cyclotomic_factor,
            is_salem,
            degree_two: self.m == 1,
            lambda,
            parity_sums: f.parity_sums(),
            square_decomposition,
        }
    }

    /// `lambda = (y0 + sqrt(y0^2 - 4)) / 2` for the root `y0 > 2` of `g`, bisected until
    /// the induced `lambda` bracket is narrower than the configured precision.
    fn salem_root(&self, g: &TracePolynomial) -> f64 {
        let p = g.poly();
        let two = BigRational::from_integer(BigInt::from(2));
        let hi = cauchy_bound(p).max(BigRational::from_integer(BigInt::from(3)));
        let precision = self.precision;
        let (lo, hi) = bisect_root(p, two, hi, |lo, hi| {
            lambda_of_trace(ratio_to_f64(hi)) - lambda_of_trace(ratio_to_f64(lo)) <= precision
        });
        let mid = (ratio_to_f64(&lo) + ratio_to_f64(&hi)) / 2.0;
        lambda_of_trace(mid)
    }
}

/// Classifies with the default precision.
pub fn classify(f: &PalindromicPolynomial) -> SalemClassification {
    Classifier::new(f.half_degree(), DEFAULT_PRECISION).classify(f)
}

/// `g(+-2) != 0`, `g` has exactly one root in `(2, inf)` and `m - 1` roots in `(-2, 2)`.
pub(crate) fn root_pattern(g: &TracePolynomial, f: &PalindromicPolynomial) -> bool {
    // g(2) = f(1) and g(-2) = (-1)^m f(-1).
    if f.value_at_one() == 0 || f.value_at_minus_one() == 0 {
        return false;
    }
    let m = g.degree();
    let seq = SturmSequence::new(g.poly());
    let above = seq.count_roots(&Bound::int(2), &Bound::PosInf);
    let inside = seq.count_roots(&Bound::int(-2), &Bound::int(2));
    above == Ok(1) && inside == Ok(m - 1)
}

/// Exact test of `lambda <= q` for a polynomial with the Salem root pattern:
/// `f(q) >= 0` iff `q` is not below the unique root exceeding 1.
pub fn lambda_at_most(f: &PalindromicPolynomial, q: &BigRational) -> bool {
    if q < &BigRational::one() {
        return false;
    }
    f.to_int_poly().sign_at_rational(q) != Ordering::Less
}

pub(crate) fn lambda_of_trace(y: f64) -> f64 {
    (y + (y * y - 4.0).max(0.0).sqrt()) / 2.0
}

pub(crate) fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> PalindromicPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn lehmer_is_salem() {
        let c = classify(&poly("1,1,0,-1,-1,-1,-1,-1,0,1,1"));
        assert!(c.is_salem);
        assert!(c.is_squarefree && c.root_pattern_ok);
        assert_eq!(c.cyclotomic_factor, None);
        assert!((c.lambda.unwrap() - 1.176280818).abs() < 1e-9);
        assert_eq!(c.square_decomposition, Some((1, 1)));
        assert!(!c.degree_two);
    }

    #[test]
    fn quartic_with_d3() {
        let c = classify(&poly("1,-1,-1,-1,1"));
        assert!(c.is_salem);
        // lambda + 1/lambda = (1 + sqrt 13) / 2
        let y0 = (1.0 + 13f64.sqrt()) / 2.0;
        let expected = (y0 + (y0 * y0 - 4.0).sqrt()) / 2.0;
        assert!((c.lambda.unwrap() - expected).abs() < 1e-12);
        assert!((c.lambda.unwrap() - 1.7220838).abs() < 1e-7);
        assert_eq!(c.square_decomposition, Some((3, 1)));
        assert_eq!(c.triple(), Some((1, 1, -2)));
    }

    #[test]
    fn cyclotomic_factor_detected() {
        let c = classify(&poly("1,-2,-1,-2,1"));
        assert!(c.root_pattern_ok);
        assert!(c.is_squarefree);
        assert_eq!(c.cyclotomic_factor, Some(3));
        assert!(!c.is_salem);
    }

    #[test]
    fn non_squarefree_and_bad_pattern() {
        // (x^2 - 3x + 1)^2
        let c = classify(&poly("1,-6,11,-6,1"));
        assert!(!c.is_squarefree);
        assert!(!c.root_pattern_ok);
        assert!(!c.is_salem);
        assert_eq!(c.lambda, None);
        // (x+1)^2: g = y + 2 vanishes at -2
        let c = classify(&poly("1,2,1"));
        assert!(!c.root_pattern_ok);
        assert_eq!(c.cyclotomic_factor, Some(2));
        // x^4 + 1 = Phi_8: all roots on the circle
        let c = classify(&poly("1,0,0,0,1"));
        assert!(!c.root_pattern_ok);
        assert_eq!(c.square_decomposition, None);
    }

    #[test]
    fn degree_two_flagged() {
        let c = classify(&poly("1,-3,1"));
        assert!(c.degree_two);
        assert!(c.is_salem);
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((c.lambda.unwrap() - golden_sq).abs() < 1e-12);
        // f(1) f(-1) = -1 * 5
        assert_eq!(c.square_decomposition, Some((5, 1)));
    }

    #[test]
    fn precision_is_honored() {
        let f = poly("1,1,0,-1,-1,-1,-1,-1,0,1,1");
        let coarse = Classifier::new(5, 1e-6).classify(&f).lambda.unwrap();
        assert!((coarse - 1.1762808182599175).abs() < 1e-6);
    }

    #[test]
    fn lambda_bound_is_exact() {
        let f = poly("1,-3,1");
        assert!(lambda_at_most(
            &f,
            &BigRational::new(BigInt::from(27), BigInt::from(10))
        ));
        assert!(!lambda_at_most(
            &f,
            &BigRational::new(BigInt::from(26), BigInt::from(10))
        ));
        assert!(!lambda_at_most(
            &f,
            &BigRational::new(BigInt::from(1), BigInt::from(2))
        ));
    }
}
