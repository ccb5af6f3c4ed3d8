//! Salem numbers as exponentiated geodesic lengths, `lambda = e^length`, and the length
//! and multiplicity bounds derived from the census constants.

use std::f64::consts::PI;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{is_squarefree, round_sig};
use crate::census::{enumerate_salem, kappa, sort_entries, CensusOptions, CensusQuery, SalemEntry};
use crate::error::{Error, Result};
use crate::poly::PalindromicPolynomial;
use crate::quadform::QuadraticForm;
use crate::report::SIGNIFICANT_DIGITS;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthEntry {
    pub lambda: f64,
    /// `ln lambda`.
    pub length: f64,
    pub coefficients: PalindromicPolynomial,
}

impl LengthEntry {
    fn from_entry(e: &SalemEntry) -> Self {
        let lambda = e.lambda();
        LengthEntry {
            lambda: round_sig(lambda, SIGNIFICANT_DIGITS),
            length: round_sig(lambda.ln(), SIGNIFICANT_DIGITS),
            coefficients: e.polynomial.clone(),
        }
    }
}

/// `e^L` as an exact rational (the binary value of the `f64`), or `None` when it is not
/// finite.
pub fn length_bound_as_q(l: f64) -> Option<BigRational> {
    BigRational::from_float(l.exp())
}

/// Candidate lengths up to `L`: Salem numbers of degree `2i` for `2 <= i <= m - 1`, plus
/// those of degree `2m` in the class `D`, all with `lambda <= e^L`.
pub fn realized_length_census(
    m: usize,
    d: u64,
    l: f64,
    opts: &CensusOptions,
) -> Result<Vec<LengthEntry>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "m must be at least 2, got {m}"
        )));
    }
    if !is_squarefree(d) {
        return Err(Error::InvalidArgument(format!(
            "D = {d} is not a positive squarefree integer"
        )));
    }
    if !l.is_finite() {
        return Err(Error::InvalidArgument(format!("L must be finite, got {l}")));
    }
    if l <= 0.0 {
        return Ok(Vec::new());
    }
    let q = length_bound_as_q(l)
        .ok_or_else(|| Error::InvalidArgument(format!("e^L overflows for L = {l}")))?;
    let mut entries: Vec<SalemEntry> = Vec::new();
    for i in 2..m {
        entries.extend(enumerate_salem(
            &CensusQuery::new(i, None, q.clone())?,
            opts,
        )?);
    }
    entries.extend(enumerate_salem(&CensusQuery::new(m, Some(d), q)?, opts)?);
    sort_entries(&mut entries);
    entries.dedup_by(|a, b| a.polynomial == b.polynomial);
    Ok(entries.iter().map(LengthEntry::from_entry).collect())
}

/// `kappa(m, D) / (pi sqrt D) e^((m-1)L) L`, or for non-classical lattices
/// `4 kappa(m, D) / (pi sqrt D) e^(2(m-1)L) L`.
pub fn predicted_length_bound(m: usize, d: u64, l: f64, classical: bool) -> Result<f64> {
    let k = num_traits::ToPrimitive::to_f64(&kappa(m, d)?).unwrap_or(f64::NAN);
    if l <= 0.0 {
        return Ok(0.0);
    }
    let base = k / (PI * (d as f64).sqrt());
    let e = (m - 1) as f64 * l;
    Ok(if classical {
        base * e.exp() * l
    } else {
        4.0 * base * (2.0 * e).exp() * l
    })
}

/// `e^((n-1) ell) / ((n-1) ell)`.
pub fn gangolli_warner_main(n: usize, ell: f64) -> Result<f64> {
    if n < 2 || !(ell > 0.0) {
        return Err(Error::DomainError(format!(
            "need n >= 2 and ell > 0, got n = {n}, ell = {ell}"
        )));
    }
    let a = (n - 1) as f64 * ell;
    Ok(a.exp() / a)
}

/// `e^((n-1) ell / 2) / (2 r (n-1) ell^2)` for odd `n > 4`.
pub fn mean_multiplicity_lower(n: usize, r: f64, ell: f64) -> Result<f64> {
    if n.is_multiple_of(2) || n <= 4 {
        return Err(Error::DomainError(format!(
            "n must be odd and greater than 4, got {n}"
        )));
    }
    if !(r > 0.0) || !(ell > 0.0) {
        return Err(Error::DomainError(format!(
            "need r > 0 and ell > 0, got r = {r}, ell = {ell}"
        )));
    }
    let n1 = (n - 1) as f64;
    Ok((n1 * ell / 2.0).exp() / (2.0 * r * n1 * ell * ell))
}

/// Parameters for the bounds attached to a form of signature `(n, 1)` with odd `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBounds {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "D")]
    pub d: u64,
    /// Commensurability constant; never defaulted.
    pub r: Option<f64>,
}

impl SpectrumBounds {
    pub fn new(n: usize, d: u64, r: Option<f64>) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::DomainError(format!(
                "n must be odd and at least 3, got {n}"
            )));
        }
        if !is_squarefree(d) {
            return Err(Error::InvalidArgument(format!(
                "D = {d} is not a positive squarefree integer"
            )));
        }
        if let Some(r) = r {
            if !(r > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "r must be positive, got {r}"
                )));
            }
        }
        Ok(SpectrumBounds {
            n,
            m: n.div_ceil(2),
            d,
            r,
        })
    }

    /// Reads `D` off a form whose reduced determinant is `-D`; forms with a nonnegative
    /// reduced determinant are rejected.
    pub fn from_form(form: &QuadraticForm, r: Option<f64>) -> Result<Self> {
        let n = form.rank() - 1;
        let det_r = form.reduced_determinant()?;
        if det_r >= 0 {
            return Err(Error::DomainError(format!(
                "reduced determinant {det_r} is not negative"
            )));
        }
        Self::new(n, (-det_r) as u64, r)
    }

    /// All three bounds at one length: `L` for the length count, `ell = L` for the
    /// multiplicity bounds.
    pub fn report(&self, l: f64, classical: bool) -> Result<BoundsReport> {
        let mean = match self.r {
            Some(r) if self.n > 4 => Some(round_sig(
                mean_multiplicity_lower(self.n, r, l)?,
                SIGNIFICANT_DIGITS,
            )),
            _ => None,
        };
        Ok(BoundsReport {
            n: self.n,
            m: self.m,
            d: self.d,
            l,
            r: self.r,
            classical,
            corollary_c: round_sig(
                predicted_length_bound(self.m, self.d, l, classical)?,
                SIGNIFICANT_DIGITS,
            ),
            gangolli_warner: round_sig(gangolli_warner_main(self.n, l)?, SIGNIFICANT_DIGITS),
            mean_multiplicity_lower: mean,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "L")]
    pub l: f64,
    pub r: Option<f64>,
    pub classical: bool,
    #[serde(rename = "corollary_C")]
    pub corollary_c: f64,
    pub gangolli_warner: f64,
    /// Absent when `r` is not supplied or `n <= 4`.
    pub mean_multiplicity_lower: Option<f64>,
}
