use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, exact_sqrt, is_squarefree, prime_factors};
use crate::error::{Error, Result};

/// Largest `X` accepted by the counters; keeps every `C^2` and `D B^2` inside `u64`.
pub const MAX_BOUND: u64 = 1 << 31;

/// Integer point on `A^2 + D B^2 = C^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiophantineTriple {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "D")]
    pub d: u64,
}

impl DiophantineTriple {
    pub fn new(a: i64, b: i64, c: i64, d: u64) -> Result<Self> {
        let t = DiophantineTriple { a, b, c, d };
        if !t.is_solution() {
            return Err(Error::InvalidArgument(format!(
                "({a}, {b}, {c}) does not solve A^2 + {d} B^2 = C^2"
            )));
        }
        Ok(t)
    }

    pub fn is_solution(&self) -> bool {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        a * a + self.d as i128 * b * b == c * c
    }

    /// `gcd(|A|, |C|) = 1`.
    pub fn is_primitive(&self) -> bool {
        self.a.unsigned_abs().gcd(&self.c.unsigned_abs()) == 1
    }

    /// Number of distinct triples reachable by flipping signs.
    pub fn orbit_size(&self) -> u64 {
        [self.a, self.b, self.c]
            .iter()
            .map(|&v| if v == 0 { 1 } else { 2 })
            .product()
    }

    pub fn sign_orbit(&self) -> impl Iterator<Item = DiophantineTriple> + '_ {
        (0..8u8).map(move |s| DiophantineTriple {
            a: if s & 1 == 0 { self.a } else { -self.a },
            b: if s & 2 == 0 { self.b } else { -self.b },
            c: if s & 4 == 0 { self.c } else { -self.c },
            d: self.d,
        })
    }
}

/// Normal form `(A, B, C) = (D2 v^2 - D1 u^2, 2uv, D1 u^2 + D2 v^2) / tau` of a positive
/// primitive solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimitiveParams {
    pub d1: u64,
    pub d2: u64,
    pub u: u64,
    pub v: u64,
    pub tau: u8,
}

impl PrimitiveParams {
    pub fn triple(&self) -> DiophantineTriple {
        let (p, q) = (self.d1 * self.u * self.u, self.d2 * self.v * self.v);
        let tau = self.tau as i64;
        DiophantineTriple {
            a: (q as i64 - p as i64) / tau,
            b: (2 * self.u * self.v) as i64 / tau,
            c: (p + q) as i64 / tau,
            d: self.d1 * self.d2,
        }
    }
}

fn check_inputs(d: u64, x: u64) -> Result<()> {
    if !is_squarefree(d) {
        return Err(Error::InvalidArgument(format!(
            "D = {d} is not a positive squarefree integer"
        )));
    }
    if x > MAX_BOUND {
        return Err(Error::InvalidArgument(format!(
            "X = {x} exceeds {MAX_BOUND}"
        )));
    }
    Ok(())
}

/// Positive representatives `(A >= 0, B >= 0, C > 0)` found by scanning `B` then `C`.
fn brute_force_positive(d: u64, x: u64) -> Vec<DiophantineTriple> {
    let x_sq = x * x;
    let b_max = crate::arith::isqrt(x_sq / d);
    (0..=b_max)
        .into_par_iter()
        .flat_map_iter(|b| {
            let db2 = d * b * b;
            let r = crate::arith::isqrt(db2);
            let c_min = if r * r == db2 { r } else { r + 1 }.max(1);
            (c_min..=x).filter_map(move |c| {
                let a = exact_sqrt(c * c - db2)?;
                (a.gcd(&c) == 1).then_some(DiophantineTriple {
                    a: a as i64,
                    b: b as i64,
                    c: c as i64,
                    d,
                })
            })
        })
        .collect()
}

/// Exact count of `(A, B, C)` with `A^2 + D B^2 = C^2`, `|C| <= X` and `gcd(|A|, |C|) = 1`.
pub fn brute_force_primitive_count(d: u64, x: u64) -> Result<u64> {
    check_inputs(d, x)?;
    Ok(brute_force_positive(d, x)
        .iter()
        .map(DiophantineTriple::orbit_size)
        .sum())
}

/// The full set counted by [`brute_force_primitive_count`].
pub fn brute_force_primitive_solutions(d: u64, x: u64) -> Result<BTreeSet<DiophantineTriple>> {
    check_inputs(d, x)?;
    Ok(brute_force_positive(d, x)
        .iter()
        .flat_map(|t| t.sign_orbit().collect::<Vec<_>>())
        .collect())
}

/// Parameters of every positive primitive solution with `C <= X`, one per solution,
/// sorted.
///
/// For each factorization `D = D1 D2` this walks coprime `(u, v)` with `D1 u^2 <= D2 v^2`:
/// `tau = 1` with `D1 u^2 + D2 v^2 <= X`, skipping `u, v` both odd when `D` is odd (those
/// halve to the `tau = 2` family), and, for odd `D`, `tau = 2` over odd `u, v` with
/// `D1 u^2 + D2 v^2 <= 2X`. Outputs sharing a prime with `D` (a prime of `D1` dividing `v`
/// or of `D2` dividing `u`) are not primitive and are dropped.
pub fn primitive_params(d: u64, x: u64) -> Result<Vec<PrimitiveParams>> {
    check_inputs(d, x)?;
    let mut shards = Vec::new();
    for d1 in divisors(d) {
        shards.push((d1, 1u8));
        if d % 2 == 1 {
            shards.push((d1, 2u8));
        }
    }
    let mut out: Vec<PrimitiveParams> = shards
        .into_par_iter()
        .flat_map_iter(|(d1, tau)| params_for_shard(d, d1, tau, x))
        .collect();
    out.sort_by_key(|p| {
        let t = p.triple();
        (t.c, t.a, t.b)
    });
    out.dedup_by_key(|p| p.triple());
    Ok(out)
}

fn params_for_shard(d: u64, d1: u64, tau: u8, x: u64) -> Vec<PrimitiveParams> {
    let d2 = d / d1;
    let lim = x * tau as u64;
    let mut out = Vec::new();
    let mut v = 0u64;
    while d2 * v * v <= lim {
        let q = d2 * v * v;
        let mut u = 0u64;
        loop {
            let p = d1 * u * u;
            if p > q || p + q > lim {
                break;
            }
            let both_odd = u % 2 == 1 && v % 2 == 1;
            let keep = u.gcd(&v) == 1
                && match tau {
                    1 => !(both_odd && d % 2 == 1),
                    _ => both_odd,
                };
            if keep {
                let params = PrimitiveParams { d1, d2, u, v, tau };
                let t = params.triple();
                if t.c as u64 <= x && t.is_primitive() {
                    out.push(params);
                }
            }
            u += 1;
        }
        v += 1;
    }
    out
}

/// All primitive solutions with `|C| <= X`, from the parametrization closed under the
/// eight sign flips. Equal as a set to [`brute_force_primitive_solutions`].
pub fn generate_primitive_solutions(d: u64, x: u64) -> Result<BTreeSet<DiophantineTriple>> {
    Ok(primitive_params(d, x)?
        .iter()
        .flat_map(|p| p.triple().sign_orbit().collect::<Vec<_>>())
        .collect())
}

/// Cardinality of [`generate_primitive_solutions`] without materializing the signed set.
pub fn param_primitive_count(d: u64, x: u64) -> Result<u64> {
    Ok(primitive_params(d, x)?
        .iter()
        .map(|p| p.triple().orbit_size())
        .sum())
}

/// `2^t 8X / (pi sqrt D)` for odd `D`, `2^t 6X / (pi sqrt D)` for even `D`, with `t` the
/// number of distinct primes of `D`.
pub fn asymptotic_main_term(d: u64, x: f64) -> f64 {
    let t = prime_factors(d).len() as i32;
    let k = if d % 2 == 1 { 8.0 } else { 6.0 };
    2f64.powi(t) * k * x / (PI * (d as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_primitive_count(1, 5), Ok(24));
        assert_eq!(brute_force_primitive_count(5, 10), Ok(28));
        assert_eq!(brute_force_primitive_count(1, 0), Ok(0));
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(brute_force_primitive_count(4, 10).is_err());
        assert!(generate_primitive_solutions(0, 10).is_err());
    }

    #[test]
    fn listing_for_d1() {
        let s = brute_force_primitive_solutions(1, 5).unwrap();
        let mut expected = BTreeSet::new();
        for base in [(1, 0, 1), (0, 1, 1), (3, 4, 5), (4, 3, 5)] {
            let t = DiophantineTriple::new(base.0, base.1, base.2, 1).unwrap();
            expected.extend(t.sign_orbit());
        }
        assert_eq!(s, expected);
    }

    #[test]
    fn parameter_examples() {
        let p = PrimitiveParams {
            d1: 1,
            d2: 5,
            u: 1,
            v: 1,
            tau: 2,
        };
        assert_eq!(p.triple(), DiophantineTriple::new(2, 1, 3, 5).unwrap());
        let p = PrimitiveParams {
            d1: 1,
            d2: 5,
            u: 2,
            v: 1,
            tau: 1,
        };
        assert_eq!(p.triple(), DiophantineTriple::new(1, 4, 9, 5).unwrap());
        let set = generate_primitive_solutions(5, 10).unwrap();
        assert!(set.contains(&DiophantineTriple::new(2, 1, 3, 5).unwrap()));
        assert!(set.contains(&DiophantineTriple::new(1, 4, 9, 5).unwrap()));
        assert_eq!(set.len(), 28);
        assert_eq!(generate_primitive_solutions(1, 5).unwrap().len(), 24);
    }

    #[test]
    fn non_primitive_params_dropped() {
        // D1 = 3 and 3 | v gives gcd(A, C) = 6
        let p = PrimitiveParams {
            d1: 3,
            d2: 1,
            u: 1,
            v: 3,
            tau: 1,
        };
        assert!(!p.triple().is_primitive());
        assert!(primitive_params(3, 20).unwrap().iter().all(|q| *q != p));
    }

    #[test]
    fn main_term_examples() {
        assert!((asymptotic_main_term(1, 1e4) - 25464.79).abs() < 0.01);
        assert!((asymptotic_main_term(2, 1e4) - 27009.0).abs() < 1.0);
        assert_eq!(asymptotic_main_term(1, 0.0), 0.0);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(DiophantineTriple::new(1, 0, 1, 7).unwrap().orbit_size(), 4);
        assert_eq!(DiophantineTriple::new(3, 4, 5, 1).unwrap().orbit_size(), 8);
    }
}
