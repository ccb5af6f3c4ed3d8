use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::RatMatrix;
use crate::arith::{parse_rational, squarefree_part};
use crate::error::{Error, Result};
use crate::poly::PalindromicPolynomial;

/// Nondegenerate rational quadratic form `q(x) = x^t S x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    s: RatMatrix,
}

/// `P^t S P = diag(d)` with `P` invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization {
    pub basis: RatMatrix,
    pub diagonal: Vec<BigRational>,
}

impl QuadraticForm {
    pub fn new(s: RatMatrix) -> Result<Self> {
        if !s.is_symmetric() || s.rows() == 0 {
            return Err(Error::InvalidArgument(
                "Gram matrix must be square and symmetric".into(),
            ));
        }
        if s.det().is_zero() {
            return Err(Error::Degenerate("determinant is zero".into()));
        }
        Ok(QuadraticForm { s })
    }

    pub fn diagonal(entries: &[BigRational]) -> Result<Self> {
        Self::new(RatMatrix::diagonal(entries))
    }

    pub fn diagonal_i64(entries: &[i64]) -> Result<Self> {
        let e: Vec<BigRational> = entries.iter().map(|&x| super::matrix::rat(x)).collect();
        Self::diagonal(&e)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.s
    }

    pub fn rank(&self) -> usize {
        self.s.rows()
    }

    pub fn det(&self) -> BigRational {
        self.s.det()
    }

    pub fn value(&self, v: &[BigRational]) -> BigRational {
        let r = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..r {
            for j in 0..r {
                acc += &v[i] * &self.s[(i, j)] * &v[j];
            }
        }
        acc
    }

    /// The form with Gram matrix `M^t S M`.
    pub fn congruent(&self, m: &RatMatrix) -> Result<Self> {
        Self::new(&(&m.transpose() * &self.s) * m)
    }

    /// Symmetric elimination by simultaneous row and column operations. A zero pivot with
    /// a nonzero off-diagonal entry `S_ij` is repaired by adding column `j` to column `i`,
    /// which puts `2 S_ij` on the diagonal.
    pub fn diagonalize(&self) -> Result<Diagonalization> {
        let r = self.rank();
        let mut a = self.s.clone();
        let mut p = RatMatrix::identity(r);
        for k in 0..r {
            if a[(k, k)].is_zero() {
                if let Some(i) = (k + 1..r).find(|&i| !a[(i, i)].is_zero()) {
                    a.swap_rows(i, k);
                    a.swap_cols(i, k);
                    p.swap_cols(i, k);
                } else if let Some((i, j)) = (k..r)
                    .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_zero())
                {
                    let one = BigRational::one();
                    a.add_col(i, j, &one);
                    a.add_row(i, j, &one);
                    p.add_col(i, j, &one);
                    a.swap_rows(i, k);
                    a.swap_cols(i, k);
                    p.swap_cols(i, k);
                } else {
                    return Err(Error::Degenerate(format!("zero block of size {}", r - k)));
                }
            }
            let pivot = a[(k, k)].clone();
            for j in k + 1..r {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let f = -(&a[(k, j)] / &pivot);
                a.add_col(j, k, &f);
                a.add_row(j, k, &f);
                p.add_col(j, k, &f);
            }
        }
        let diagonal = (0..r).map(|i| a[(i, i)].clone()).collect();
        Ok(Diagonalization { basis: p, diagonal })
    }

    /// `(n_p, n_n)`: positive and negative entries of a congruent diagonal form.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let d = self.diagonalize()?;
        let pos = d.diagonal.iter().filter(|x| x.is_positive()).count();
        let neg = d.diagonal.iter().filter(|x| x.is_negative()).count();
        Ok((pos, neg))
    }

    /// Determinant after scaling `S` by the least common multiple of its denominators.
    pub fn integer_scaled_det(&self) -> BigInt {
        let l = BigRational::from_integer(self.s.denominator_lcm());
        self.s.scale(&l).det().to_integer()
    }

    /// Signed squarefree representative of the determinant's square class.
    ///
    /// The integer-scaled determinant is `l^r p / q` with `p / q = det S` in lowest terms, so
    /// its class is assembled from the classes of `p`, `q` and (for odd rank) `l` without
    /// forming the product.
    pub fn reduced_determinant(&self) -> Result<i128> {
        let det = self.det();
        let class = |n: &BigInt| -> Result<i128> {
            let n = n
                .to_i128()
                .ok_or(Error::Overflow("determinant exceeds i128"))?;
            Ok(squarefree_part(n).0)
        };
        let mut acc = squarefree_product(class(det.numer())?, class(det.denom())?);
        if self.rank() % 2 == 1 {
            acc = squarefree_product(acc, class(&self.s.denominator_lcm())?);
        }
        Ok(acc)
    }

    /// Signature `(n, 1)` with rank `n + 1`.
    pub fn is_admissible_over_q(&self, n: usize) -> Result<bool> {
        if self.rank() != n + 1 {
            return Err(Error::InvalidArgument(format!(
                "rank {} does not match n + 1 = {}",
                self.rank(),
                n + 1
            )));
        }
        Ok(self.signature()? == (n, 1))
    }

    /// Necessary condition for an isometry with characteristic polynomial `f`: the square
    /// classes of `det q` and `f(1) f(-1)` agree.
    pub fn compatible_with_polynomial(&self, f: &PalindromicPolynomial) -> Result<bool> {
        let product = f.value_at_one() * f.value_at_minus_one();
        if product == 0 {
            return Ok(false);
        }
        Ok(self.reduced_determinant()? == squarefree_part(product).0)
    }
}

/// Squarefree class of `a b` for squarefree `a`, `b`.
fn squarefree_product(a: i128, b: i128) -> i128 {
    let g = a.unsigned_abs().gcd(&b.unsigned_abs()) as i128;
    (a / g) * (b / g)
}

impl fmt::Display for QuadraticForm {
    /// `r;e11,e12,...` row-major.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.rank(), self.s)
    }
}

impl FromStr for QuadraticForm {
    type Err = Error;

    /// Accepts `r;e11,e12,...` (row-major, `p/q` tokens) or `diag:d1,d2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens =
            |t: &str| -> Result<Vec<BigRational>> { t.split(',').map(parse_rational).collect() };
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("diag:") {
            return Self::diagonal(&tokens(rest)?);
        }
        let (r, rest) = s.split_once(';').ok_or_else(|| {
            Error::Parse(format!("expected `rank;entries` or `diag:...`, got {s:?}"))
        })?;
        let r: usize = r
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank {r:?}")))?;
        let e = tokens(rest)?;
        if e.len() != r * r {
            return Err(Error::Parse(format!(
                "rank {r} needs {} entries, got {}",
                r * r,
                e.len()
            )));
        }
        let rows = e.chunks(r).map(<[BigRational]>::to_vec).collect();
        Self::new(RatMatrix::from_rows(rows)?)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    rank: usize,
    entries: Vec<String>,
}

impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            rank: self.rank(),
            entries: self
                .s
                .entries()
                .iter()
                .map(crate::arith::format_rational)
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        format!("{};{}", repr.rank, repr.entries.join(","))
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> QuadraticForm {
        s.parse().unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(form("diag:1,1,1,-1").signature().unwrap(), (3, 1));
        assert_eq!(form("diag:1,4,-9").signature().unwrap(), (2, 1));
        assert_eq!(form("2;0,1,1,0").signature().unwrap(), (1, 1));
        assert_eq!(form("3;0,1,0,1,0,0,0,0,-2").signature().unwrap(), (1, 2));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(
            "2;1,1,1,1".parse::<QuadraticForm>(),
            Err(Error::Degenerate(_))
        ));
        assert!("2;1,2,3,1".parse::<QuadraticForm>().is_err());
        assert!("3;1,0,0,1".parse::<QuadraticForm>().is_err());
    }

    #[test]
    fn reduced_determinants() {
        assert_eq!(form("diag:1,1,1,-1").reduced_determinant().unwrap(), -1);
        assert_eq!(form("diag:1,4,-1").reduced_determinant().unwrap(), -1);
        assert_eq!(form("diag:1,1,1,1,-3").reduced_determinant().unwrap(), -3);
        // scaled by 2: det(diag(1, 2, -2)) = -4
        assert_eq!(form("diag:1/2,1,-1").reduced_determinant().unwrap(), -1);
    }

    #[test]
    fn admissibility() {
        assert!(form("diag:1,1,1,-1").is_admissible_over_q(3).unwrap());
        assert!(!form("diag:1,1,1,1").is_admissible_over_q(3).unwrap());
        assert!(form("diag:1,1,-2").is_admissible_over_q(2).unwrap());
        assert!(form("diag:1,1,-2").is_admissible_over_q(3).is_err());
    }

    #[test]
    fn compatibility() {
        let quartic: PalindromicPolynomial = "1,-1,-1,-1,1".parse().unwrap();
        let lehmer: PalindromicPolynomial = "1,1,0,-1,-1,-1,-1,-1,0,1,1".parse().unwrap();
        assert!(form("diag:1,1,1,-3")
            .compatible_with_polynomial(&quartic)
            .unwrap());
        assert!(!form("diag:1,1,1,-1")
            .compatible_with_polynomial(&quartic)
            .unwrap());
        assert!(form("diag:1,1,1,-1")
            .compatible_with_polynomial(&lehmer)
            .unwrap());
        let cyclo: PalindromicPolynomial = "1,2,1".parse().unwrap();
        assert!(!form("diag:1,-1")
            .compatible_with_polynomial(&cyclo)
            .unwrap());
    }

    #[test]
    fn string_and_json_forms() {
        let q = form("3;1,1/2,0,1/2,1,0,0,0,-3");
        assert_eq!(q.to_string(), "3;1,1/2,0,1/2,1,0,0,0,-3");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(serde_json::from_str::<QuadraticForm>(&json).unwrap(), q);
        assert_eq!(form("diag:2,-1").to_string(), "2;2,0,0,-1");
    }

    #[test]
    fn diagonalization_basis() {
        let q = form("3;0,1,2,1,0,3,2,3,0");
        let d = q.diagonalize().unwrap();
        let pt_s_p = &(&d.basis.transpose() * q.matrix()) * &d.basis;
        assert!(pt_s_p.is_diagonal());
        assert_eq!(RatMatrix::diagonal(&d.diagonal), pt_s_p);
        assert!(!d.basis.det().is_zero());
    }
}
