use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{is_squarefree, prime_factors};
use crate::error::{Error, Result};
use crate::report::rational_string;

fn int(n: u64) -> BigInt {
    BigInt::from(n)
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e as usize
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(int).product()
}

fn check_d(d: u64) -> Result<()> {
    if is_squarefree(d) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "D = {d} is not a positive squarefree integer"
        )))
    }
}

/// Number of distinct prime factors of `D`.
pub fn t_of(d: u64) -> u32 {
    prime_factors(d).len() as u32
}

/// `omega_m = 2^(m(m-1)) / m * prod_(k=0)^(m-2) k!^2 / (2k+1)!`.
pub fn omega(m: usize) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::InvalidArgument("omega needs m >= 1".into()));
    }
    let m = m as u64;
    let mut acc = BigRational::new(pow2(m * (m - 1)), int(m));
    for k in 0..m.saturating_sub(1) {
        let f = factorial(k);
        acc *= BigRational::new(&f * &f, factorial(2 * k + 1));
    }
    Ok(acc)
}

/// Leading constant of the count of admissible `(A, C)` pairs.
///
/// Even `m`: `2^((m-1)(m-2)) (2^(2m) - 4)^(m/2 - 1) / ((m/2 - 1)!)^2`.
/// Odd `m`: `2^((2m-1)(m-1)/2) (2^(2m-1) - 2)^((m-3)/2) / (((m-1)/2)!)^2`.
pub fn kappa0(m: usize) -> Result<BigRational> {
    if m < 2 {
        return Err(Error::InvalidArgument("kappa0 needs m >= 2".into()));
    }
    let m = m as u64;
    let (num, fact) = if m.is_multiple_of(2) {
        let h = m / 2 - 1;
        let base = pow2(2 * m) - 4;
        (
            pow2((m - 1) * (m - 2)) * num_traits::pow(base, h as usize),
            factorial(h),
        )
    } else {
        let base = pow2(2 * m - 1) - 2;
        let e = (m - 3) / 2;
        (
            pow2((2 * m - 1) * (m - 1) / 2) * num_traits::pow(base, e as usize),
            factorial((m - 1) / 2),
        )
    };
    Ok(BigRational::new(num, &fact * &fact))
}

/// `2^(t+2m) kappa0(m)` for odd `D`, `3 * 2^(t+2m-2) kappa0(m)` for even `D`.
pub fn kappa(m: usize, d: u64) -> Result<BigRational> {
    check_d(d)?;
    let k0 = kappa0(m)?;
    let e = t_of(d) as u64 + 2 * m as u64;
    let factor = if d % 2 == 1 { pow2(e) } else { pow2(e - 2) * 3 };
    Ok(k0 * BigRational::from_integer(factor))
}

/// `kappa(m, D) / (pi sqrt D) * Q^(m-1) * ln Q`, and 0 for `Q <= 1`.
pub fn theorem_a_bound(m: usize, d: u64, q: f64) -> Result<f64> {
    let k = rational_to_f64(&kappa(m, d)?);
    if q <= 1.0 {
        return Ok(0.0);
    }
    Ok(k / (PI * (d as f64).sqrt()) * q.powi(m as i32 - 1) * q.ln())
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The constants attached to `(m, D)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsBundle {
    pub m: usize,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "omega", with = "rational_string")]
    pub omega_m: BigRational,
    #[serde(rename = "kappa0", with = "rational_string")]
    pub kappa0_m: BigRational,
    #[serde(rename = "kappa", with = "rational_string")]
    pub kappa_m_d: BigRational,
    pub t: u32,
}

impl ConstantsBundle {
    pub fn new(m: usize, d: u64) -> Result<Self> {
        Ok(ConstantsBundle {
            m,
            d,
            omega_m: omega(m)?,
            kappa0_m: kappa0(m)?,
            kappa_m_d: kappa(m, d)?,
            t: t_of(d),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega(1).unwrap(), r(1, 1));
        assert_eq!(omega(2).unwrap(), r(2, 1));
        assert_eq!(omega(3).unwrap(), r(32, 9));
        assert!(omega(0).is_err());
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa0(2).unwrap(), r(1, 1));
        assert_eq!(kappa0(3).unwrap(), r(32, 1));
        assert_eq!(kappa0(4).unwrap(), r(16128, 1));
        // 2^18 * 510 / 2!^2
        assert_eq!(kappa0(5).unwrap(), r(33423360, 1));
        assert_eq!(kappa(2, 1).unwrap(), r(16, 1));
        assert_eq!(kappa(2, 2).unwrap(), r(24, 1));
        assert_eq!(kappa(2, 3).unwrap(), r(32, 1));
        assert_eq!(kappa(3, 1).unwrap(), r(2048, 1));
        assert!(kappa(2, 12).is_err());
        assert!(kappa0(1).is_err());
    }

    #[test]
    fn bound_values() {
        let e = std::f64::consts::E;
        assert!((theorem_a_bound(2, 1, e).unwrap() - 16.0 * e / PI).abs() < 1e-12);
        assert!((theorem_a_bound(2, 3, 10.0).unwrap() - 135.4).abs() < 0.1);
        assert_eq!(theorem_a_bound(2, 1, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn bundle_json() {
        let b = ConstantsBundle::new(3, 6).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        assert!(json.contains("\"omega\":\"32/9\""));
        assert_eq!(serde_json::from_str::<ConstantsBundle>(&json).unwrap(), b);
        assert_eq!(b.t, 2);
    }
}
