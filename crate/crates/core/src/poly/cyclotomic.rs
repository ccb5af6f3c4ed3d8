use super::intpoly::IntPoly;
use crate::arith::{divisors, totient};

/// `Phi_n` by exact division of `x^n - 1` by the `Phi_d` for proper divisors `d`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut num = IntPoly::monomial(n as usize);
    num = &num - &IntPoly::one();
    for d in divisors(n) {
        if d < n {
            num = num
                .div_exact(&cyclotomic_polynomial(d))
                .expect("cyclotomic divisor");
        }
    }
    num
}

/// Every `Phi_n` that can divide a degree-`2m` palindromic polynomial with the Salem root
/// pattern: `n` with `phi(n) <= 2m - 2`, plus `n = 1, 2`. Sorted by `n`.
#[derive(Clone, Debug)]
pub struct CyclotomicTable {
    entries: Vec<(u64, IntPoly)>,
}

impl CyclotomicTable {
    pub fn for_half_degree(m: usize) -> Self {
        let max_phi = (2 * m).saturating_sub(2) as u64;
        // phi(n) >= sqrt(n / 2), so n <= 2 phi^2 bounds the search.
        let n_max = (2 * max_phi * max_phi).max(2);
        let entries = (1..=n_max)
            .filter(|&n| n <= 2 || totient(n) <= max_phi)
            .map(|n| (n, cyclotomic_polynomial(n)))
            .collect();
        CyclotomicTable { entries }
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|(n, _)| *n)
    }

    /// Smallest `n` in the table with `Phi_n | f`.
    pub fn smallest_divisor_index(&self, f: &IntPoly) -> Option<u64> {
        self.entries
            .iter()
            .find(|(_, phi)| f.div_exact(phi).is_some())
            .map(|(n, _)| *n)
    }
}
