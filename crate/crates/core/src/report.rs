//! Report rows shared by the count and census subcommands.
//!
//! Reals are rounded to 15 significant digits when a row is built, so a row survives a
//! CSV or JSON round trip unchanged. Rationals travel as `p/q` strings.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::arith::round_sig;
use crate::diophantine::{lattice_main_term, ConvexRegion, LatticeVariant};
use crate::error::{Error, Result};
use crate::poly::{PalindromicPolynomial, SalemClassification};

pub const SIGNIFICANT_DIGITS: usize = 15;

/// Ordered rows of one report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountReport<R> {
    pub rows: Vec<R>,
}

impl<R> CountReport<R> {
    pub fn new(rows: Vec<R>) -> Self {
        CountReport { rows }
    }
}

impl<R: Serialize> CountReport<R> {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<R: DeserializeOwned> CountReport<R> {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(s.as_bytes());
        let rows = r
            .deserialize()
            .collect::<std::result::Result<Vec<R>, _>>()
            .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(CountReport { rows })
    }
}

fn error_and_ratio(count: f64, main: f64) -> (f64, Option<f64>) {
    let abs_error = round_sig((count - main).abs(), SIGNIFICANT_DIGITS);
    let ratio = (main > 0.0).then(|| round_sig(count / main, SIGNIFICANT_DIGITS));
    (abs_error, ratio)
}

/// One `(D, X)` point of a triple count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleCountRow {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "X")]
    pub x: u64,
    pub count: u64,
    pub main_term: f64,
    pub abs_error: f64,
    pub ratio: Option<f64>,
}

impl TripleCountRow {
    pub fn new(d: u64, x: u64, count: u64, main_term: f64) -> Self {
        let main_term = round_sig(main_term, SIGNIFICANT_DIGITS);
        let (abs_error, ratio) = error_and_ratio(count as f64, main_term);
        TripleCountRow {
            d,
            x,
            count,
            main_term,
            abs_error,
            ratio,
        }
    }
}

/// One `(m, D, Q)` point of a census.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub m: usize,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    /// Exact bound as `p/q` (or an integer).
    #[serde(rename = "Q")]
    pub q: String,
    pub count: u64,
    pub paper_term: f64,
    pub abs_error: f64,
    pub ratio: Option<f64>,
}

impl CensusRow {
    pub fn new(m: usize, d: Option<u64>, q: String, count: u64, paper_term: f64) -> Self {
        let paper_term = round_sig(paper_term, SIGNIFICANT_DIGITS);
        let (abs_error, ratio) = error_and_ratio(count as f64, paper_term);
        CensusRow {
            m,
            d,
            q,
            count,
            paper_term,
            abs_error,
            ratio,
        }
    }
}

/// Flat view of a classification, one row per polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub polynomial: PalindromicPolynomial,
    pub is_salem: bool,
    pub lambda: Option<f64>,
    pub is_squarefree: bool,
    pub root_pattern_ok: bool,
    pub cyclotomic_factor: Option<u64>,
    pub degree_two: bool,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    pub k: Option<u64>,
}

impl ClassificationRecord {
    pub fn new(polynomial: &PalindromicPolynomial, c: &SalemClassification) -> Self {
        ClassificationRecord {
            polynomial: polynomial.clone(),
            is_salem: c.is_salem,
            lambda: c.lambda.map(|l| round_sig(l, SIGNIFICANT_DIGITS)),
            is_squarefree: c.is_squarefree,
            root_pattern_ok: c.root_pattern_ok,
            cyclotomic_factor: c.cyclotomic_factor,
            degree_two: c.degree_two,
            a: c.parity_sums.0,
            c: c.parity_sums.1,
            d: c.square_decomposition.map(|(d, _)| d),
            k: c.square_decomposition.map(|(_, k)| k),
        }
    }
}

/// One lattice count against its main term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeRow {
    pub region: String,
    pub alpha: f64,
    pub variant: LatticeVariant,
    pub count: u64,
    pub main_term: f64,
    pub abs_error: f64,
    pub ratio: Option<f64>,
}

impl LatticeRow {
    pub fn new(region: &ConvexRegion, alpha: f64, variant: LatticeVariant, count: u64) -> Self {
        let main_term = round_sig(
            lattice_main_term(region, alpha, variant),
            SIGNIFICANT_DIGITS,
        );
        let (abs_error, ratio) = error_and_ratio(count as f64, main_term);
        LatticeRow {
            region: region.to_string(),
            alpha,
            variant,
            count,
            main_term,
            abs_error,
            ratio,
        }
    }
}

/// Square-class comparison of a form and a polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityRecord {
    pub form: String,
    pub polynomial: PalindromicPolynomial,
    pub n_pos: usize,
    pub n_neg: usize,
    pub reduced_determinant: i128,
    /// Signed squarefree part of `f(1) f(-1)`, absent when the product is zero.
    pub polynomial_class: Option<i128>,
    pub compatible: bool,
}

/// Result of integralizing a rational isometry, matrices as row-major `r;...` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralizationRecord {
    pub form: String,
    pub isometry: String,
    pub basis: String,
    /// Characteristic polynomial, constant term first.
    pub char_poly: String,
}

/// Serde adapter writing a `BigRational` as `"p/q"`.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::arith::{format_rational, parse_rational};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_csv_header_and_round_trip() {
        let report = CountReport::new(vec![
            TripleCountRow::new(5, 10, 28, 22.7762888),
            TripleCountRow::new(1, 0, 0, 0.0),
        ]);
        let csv = report.to_csv().unwrap();
        assert!(csv.starts_with("D,X,count,main_term,abs_error,ratio\n"));
        assert!(csv.lines().nth(2).unwrap().ends_with(",0.0,0.0,"));
        assert_eq!(
            CountReport::<TripleCountRow>::from_csv(&csv).unwrap(),
            report
        );
        let json = report.to_json().unwrap();
        assert_eq!(
            CountReport::<TripleCountRow>::from_json(&json).unwrap(),
            report
        );
        assert!(json.contains("\"D\": 5"));
    }

    #[test]
    fn census_header() {
        let report = CountReport::new(vec![CensusRow::new(2, Some(5), "10".into(), 3, 1.5)]);
        let csv = report.to_csv().unwrap();
        assert!(csv.starts_with("m,D,Q,count,paper_term,abs_error,ratio\n"));
        assert_eq!(report.rows[0].ratio, Some(2.0));
        let json = report.to_json().unwrap();
        assert_eq!(CountReport::<CensusRow>::from_json(&json).unwrap(), report);
    }
}
