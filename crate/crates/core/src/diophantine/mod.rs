//! Primitive solutions of `A^2 + D B^2 = C^2`, plane lattice counts and linear partition
//! counts.
//!
//! A solution is primitive when `gcd(|A|, |C|) = 1`. The counts include the degenerate
//! triples with `B = 0` or `A = 0` that meet this rule.

mod lattice;
mod partition;
mod triples;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use lattice::{
    lattice_count, lattice_main_term, ConvexRegion, LatticeVariant, RegionKind, MAX_SCALED_RADIUS,
};
pub use partition::{count_linear_nonneg, partition_main_term, partition_ratio, MAX_TARGET};
pub use triples::{
    asymptotic_main_term, brute_force_primitive_count, brute_force_primitive_solutions,
    generate_primitive_solutions, param_primitive_count, primitive_params, DiophantineTriple,
    PrimitiveParams, MAX_BOUND,
};

use crate::error::{Error, Result};
use crate::report::{CountReport, TripleCountRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Brute,
    Param,
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(CountMethod::Brute),
            "param" => Ok(CountMethod::Param),
            _ => Err(Error::Parse(format!(
                "unknown method {s:?}; expected brute or param"
            ))),
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::Brute => "brute",
            CountMethod::Param => "param",
        })
    }
}

pub fn primitive_count(d: u64, x: u64, method: CountMethod) -> Result<u64> {
    match method {
        CountMethod::Brute => brute_force_primitive_count(d, x),
        CountMethod::Param => param_primitive_count(d, x),
    }
}

/// One row per `(D, X)` in the order given.
pub fn count_report(
    ds: &[u64],
    xs: &[u64],
    method: CountMethod,
) -> Result<CountReport<TripleCountRow>> {
    let mut rows = Vec::with_capacity(ds.len() * xs.len());
    for &d in ds {
        for &x in xs {
            let count = primitive_count(d, x, method)?;
            rows.push(TripleCountRow::new(
                d,
                x,
                count,
                asymptotic_main_term(d, x as f64),
            ));
        }
    }
    Ok(CountReport::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_rows() {
        let r = count_report(&[1, 5], &[5, 10], CountMethod::Param).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!((r.rows[0].d, r.rows[0].x, r.rows[0].count), (1, 5, 24));
        assert_eq!((r.rows[3].d, r.rows[3].x, r.rows[3].count), (5, 10, 28));
        assert!(count_report(&[9], &[5], CountMethod::Brute).is_err());
    }

    #[test]
    fn methods_agree() {
        for d in [1, 2, 3, 5, 6, 7, 10, 11, 13, 15, 30, 105] {
            for x in [1, 2, 3, 10, 57, 300] {
                assert_eq!(
                    primitive_count(d, x, CountMethod::Brute).unwrap(),
                    primitive_count(d, x, CountMethod::Param).unwrap(),
                    "D = {d}, X = {x}"
                );
            }
        }
    }
}
