//! Exhaustive census of Salem polynomials of degree `2m` with Salem number at most `Q`,
//! and the counting constants it is compared against.

mod constants;
mod enumerate;

use num_rational::BigRational;

pub use constants::{kappa, kappa0, omega, t_of, theorem_a_bound, ConstantsBundle};
pub use enumerate::{
    coefficient_bounds, enumerate_salem, parity_sum_bound_a, parity_sum_bound_c, search_space_size,
    sort_entries, CensusOptions, CensusQuery, SalemEntry, DEFAULT_BUDGET,
};

use crate::arith::format_rational;
use crate::error::{Error, Result};
use crate::poly::lambda_at_most;
use crate::report::{CensusRow, CountReport};

/// Main term for the census at `Q`: `omega_m Q^m` without `D`, [`theorem_a_bound`] with it.
pub fn paper_term(m: usize, d: Option<u64>, q: &BigRational) -> Result<f64> {
    let qf = constants::rational_to_f64(q);
    match d {
        None => Ok(constants::rational_to_f64(&omega(m)?) * qf.powi(m as i32)),
        Some(d) => theorem_a_bound(m, d, qf),
    }
}

/// One row per grid point. The census runs once at the largest `Q` and is filtered down
/// with the exact test `lambda <= Q`.
pub fn census_report(
    m: usize,
    d: Option<u64>,
    grid: &[BigRational],
    opts: &CensusOptions,
) -> Result<CountReport<CensusRow>> {
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("Q grid must be ascending".into()));
    }
    let Some(q_max) = grid.last() else {
        return Ok(CountReport::new(Vec::new()));
    };
    let entries = enumerate_salem(&CensusQuery::new(m, d, q_max.clone())?, opts)?;
    let mut rows = Vec::with_capacity(grid.len());
    for q in grid {
        CensusQuery::new(m, d, q.clone())?;
        let count = entries
            .iter()
            .filter(|e| lambda_at_most(&e.polynomial, q))
            .count() as u64;
        rows.push(CensusRow::new(
            m,
            d,
            format_rational(q),
            count,
            paper_term(m, d, q)?,
        ));
    }
    Ok(CountReport::new(rows))
}
