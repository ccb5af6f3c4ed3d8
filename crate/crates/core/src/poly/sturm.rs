//! Exact real-root counting with Sturm sequences.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// Interval endpoint on the extended rational line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(n: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::Finite(x) => write!(f, "{x}"),
            Bound::PosInf => write!(f, "+inf"),
        }
    }
}

/// Signed pseudo-remainder chain `p, p', -rem(p, p'), ...`, each term made primitive.
///
/// Positive rescaling of a term never changes its sign pattern, so the integer chain
/// has the same sign variations as the rational one.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmSequence { chain };
        }
        chain.push(p.clone());
        let d = p.derivative();
        if d.is_zero() {
            return SturmSequence { chain };
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^(delta+1) * rem; flip to recover the sign of -rem.
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let lc_neg_power = b.leading().unwrap().is_negative() && (delta + 1) % 2 == 1;
            let c = r.content();
            let mut next = IntPoly::new(r.coeffs().iter().map(|x| x / &c).collect());
            if !lc_neg_power {
                next = -&next;
            }
            chain.push(next);
        }
        SturmSequence { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn sign_at(p: &IntPoly, at: &Bound) -> Ordering {
        match at {
            Bound::Finite(x) => p.sign_at_rational(x),
            Bound::PosInf => p.leading().map_or(Ordering::Equal, |c| c.sign_cmp()),
            Bound::NegInf => {
                let s = p.leading().map_or(Ordering::Equal, |c| c.sign_cmp());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
        }
    }

    /// Number of sign changes along the chain at `at`, zeros skipped.
    pub fn variations(&self, at: &Bound) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.chain {
            let s = Self::sign_at(p, at);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in the open interval `(lo, hi)`.
    pub fn count_roots(&self, lo: &Bound, hi: &Bound) -> Result<usize> {
        let Some(p) = self.chain.first() else {
            return Err(Error::InvalidPolynomial("zero polynomial".into()));
        };
        for end in [lo, hi] {
            if let Bound::Finite(x) = end {
                if p.sign_at_rational(x) == Ordering::Equal {
                    return Err(Error::EndpointIsRoot(x.to_string()));
                }
            }
        }
        if !bound_lt(lo, hi) {
            return Err(Error::InvalidArgument(format!(
                "empty interval ({lo}, {hi})"
            )));
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn bound_lt(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::Finite(x), Bound::Finite(y)) => x < y,
    }
}

/// Counts distinct real roots of `g` in `(lo, hi)`.
///
/// Fails with [`Error::EndpointIsRoot`] when `g` vanishes at a finite endpoint.
pub fn count_roots_in_interval(g: &IntPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    SturmSequence::new(g).count_roots(lo, hi)
}

/// Isolating interval `[lo, hi]` of the largest real root, refined by bisection until
/// `accept(lo, hi)` holds. Requires exactly one root of `p` in `(lo, hi)` on entry and
/// `p(lo)`, `p(hi)` of opposite signs.
pub(crate) fn bisect_root(
    p: &IntPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    mut accept: impl FnMut(&BigRational, &BigRational) -> bool,
) -> (BigRational, BigRational) {
    let s_lo = p.sign_at_rational(&lo);
    debug_assert_ne!(s_lo, Ordering::Equal);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut guard = 0;
    while !accept(&lo, &hi) && guard < 400 {
        let mid = (&lo + &hi) / &two;
        match p.sign_at_rational(&mid) {
            Ordering::Equal => return (mid.clone(), mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
        guard += 1;
    }
    (lo, hi)
}

/// Cauchy bound: every real root lies in `(-B, B)` with `B = 1 + max |c_k / c_d|`.
pub(crate) fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.leading().expect("nonzero").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| BigRational::new(c.abs(), lc.clone()))
        .max()
        .unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
    max + BigRational::one()
}
