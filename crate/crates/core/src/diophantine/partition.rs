use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `N` for the dynamic program (one big integer per residue up to `N`).
pub const MAX_TARGET: u64 = 10_000_000;

/// Number of nonnegative integer solutions of `a_1 x_1 + ... + a_n x_n = N`.
pub fn count_linear_nonneg(coeffs: &[u64], n: u64) -> Result<BigUint> {
    if coeffs.is_empty() || coeffs.contains(&0) {
        return Err(Error::InvalidArgument(
            "coefficients must be a nonempty list of positive integers".into(),
        ));
    }
    if n > MAX_TARGET {
        return Err(Error::InvalidArgument(format!(
            "N = {n} exceeds {MAX_TARGET}"
        )));
    }
    let n = n as usize;
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::from(1u8);
    for &a in coeffs {
        let a = a as usize;
        for s in a..=n {
            let (lo, hi) = ways.split_at_mut(s);
            hi[0] += &lo[s - a];
        }
    }
    Ok(ways.swap_remove(n))
}

/// `N^(n-1) / ((a_1 ... a_n) (n-1)!)`.
pub fn partition_main_term(coeffs: &[u64], n: u64) -> f64 {
    let k = coeffs.len();
    if k == 0 {
        return 0.0;
    }
    let product: f64 = coeffs.iter().map(|&a| a as f64).product();
    let factorial: f64 = (1..k).map(|j| j as f64).product();
    (n as f64).powi(k as i32 - 1) / (product * factorial)
}

/// Ratio of the exact count to [`partition_main_term`].
pub fn partition_ratio(coeffs: &[u64], n: u64) -> Result<f64> {
    let exact = count_linear_nonneg(coeffs, n)?;
    Ok(exact.to_f64().unwrap_or(f64::INFINITY) / partition_main_term(coeffs, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(count_linear_nonneg(&[1, 2], 4).unwrap(), BigUint::from(3u8));
        assert_eq!(count_linear_nonneg(&[1], 17).unwrap(), BigUint::from(1u8));
        assert_eq!(count_linear_nonneg(&[2, 3], 1).unwrap(), BigUint::zero());
        assert_eq!(
            count_linear_nonneg(&[1, 1, 1], 6).unwrap(),
            BigUint::from(28u8)
        );
        assert!(count_linear_nonneg(&[], 3).is_err());
        assert!(count_linear_nonneg(&[1, 0], 3).is_err());
    }

    #[test]
    fn main_terms() {
        assert_eq!(partition_main_term(&[1, 2], 4), 2.0);
        assert_eq!(partition_main_term(&[1, 1, 1], 6), 18.0);
        assert_eq!(partition_main_term(&[1], 7), 1.0);
    }

    #[test]
    fn ratio_near_one() {
        for coeffs in [&[1, 1][..], &[2, 1], &[2, 2, 1], &[1, 1, 1]] {
            let r = partition_ratio(coeffs, 1000).unwrap();
            assert!((r - 1.0).abs() < 0.25, "{coeffs:?}: {r}");
        }
    }

    proptest::proptest! {
        #[test]
        fn matches_brute_force(a in 1u64..6, b in 1u64..6, c in 1u64..6, n in 0u64..60) {
            let mut brute = 0u64;
            for x in 0..=n / a {
                for y in 0..=(n - a * x) / b {
                    if (n - a * x - b * y) % c == 0 {
                        brute += 1;
                    }
                }
            }
            proptest::prop_assert_eq!(count_linear_nonneg(&[a, b, c], n).unwrap(), BigUint::from(brute));
        }
    }
}
