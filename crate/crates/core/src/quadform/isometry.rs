use num_bigint::BigInt;
use num_rational::BigRational;

use super::form::QuadraticForm;
use super::matrix::{hermite_normal_form, RatMatrix};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Rational `T` with `T^t S T = S` for the attached form.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalIsometry {
    form: QuadraticForm,
    t: RatMatrix,
}

impl RationalIsometry {
    pub fn new(form: QuadraticForm, t: RatMatrix) -> Result<Self> {
        if t.rows() != form.rank() || t.cols() != form.rank() {
            return Err(Error::InvalidArgument(format!(
                "isometry must be {0}x{0}, got {1}x{2}",
                form.rank(),
                t.rows(),
                t.cols()
            )));
        }
        if &(&t.transpose() * form.matrix()) * &t != *form.matrix() {
            return Err(Error::NotAnIsometry);
        }
        Ok(RationalIsometry { form, t })
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.t
    }

    /// `det(x I - T)` when it has integer coefficients.
    pub fn integer_char_poly(&self) -> Result<IntPoly> {
        integer_char_poly(&self.t)
    }
}

fn integer_char_poly(t: &RatMatrix) -> Result<IntPoly> {
    let cp = t.char_poly();
    if !cp.iter().all(BigRational::is_integer) {
        let shown: Vec<String> = cp.iter().map(crate::arith::format_rational).collect();
        return Err(Error::NonIntegerCharPoly(shown.join(",")));
    }
    Ok(IntPoly::new(
        cp.iter().map(BigRational::to_integer).collect(),
    ))
}

/// Integral model of a rational isometry.
#[derive(Clone, Debug, PartialEq)]
pub struct Integralization {
    /// Gram matrix `g^t S g` in the new basis.
    pub form: QuadraticForm,
    /// `g^-1 T g`, integral.
    pub isometry: Vec<Vec<BigInt>>,
    /// Columns are a basis of the `T`-stable lattice `sum_k T^k Z^r`.
    pub basis: RatMatrix,
}

impl Integralization {
    pub fn isometry_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.isometry
                .iter()
                .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
                .collect(),
        )
        .expect("square")
    }
}

/// Conjugates `T` into an integral matrix preserving a rational form.
///
/// The lattice `sum_(k < r) T^k Z^r` is `T`-stable because the characteristic polynomial
/// is monic integral; its basis comes from the Hermite normal form of the stacked columns
/// of `T^k`, scaled by the common denominator.
pub fn integralize(iso: &RationalIsometry) -> Result<Integralization> {
    let t = iso.matrix();
    let r = t.rows();
    let cp = integer_char_poly(t)?;

    let mut generators = Vec::with_capacity(r * r);
    let mut power = RatMatrix::identity(r);
    for _ in 0..r {
        let cols = power.transpose();
        generators.extend((0..r).map(|i| cols.row(i).to_vec()));
        power = &power * t;
    }
    let stacked = RatMatrix::from_rows(generators)?;
    let l = BigRational::from_integer(stacked.denominator_lcm());
    let scaled = stacked
        .scale(&l)
        .to_integer_rows()
        .expect("denominators cleared");
    let hnf = hermite_normal_form(&scaled);
    if hnf.len() != r {
        return Err(Error::Degenerate(
            "generator stack does not have full rank".into(),
        ));
    }
    let basis_rows: Vec<Vec<BigRational>> = hnf
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| BigRational::from_integer(x) / &l)
                .collect()
        })
        .collect();
    let g = RatMatrix::from_rows(basis_rows)?.transpose();

    let t_new = &(&g.inverse()? * t) * &g;
    let isometry = t_new
        .to_integer_rows()
        .ok_or_else(|| Error::Degenerate("conjugated isometry is not integral".into()))?;
    let form = iso.form().congruent(&g)?;
    if &(&t_new.transpose() * form.matrix()) * &t_new != *form.matrix() {
        return Err(Error::NotAnIsometry);
    }
    if integer_char_poly(&t_new)? != cp {
        return Err(Error::Degenerate(
            "characteristic polynomial changed".into(),
        ));
    }
    Ok(Integralization {
        form,
        isometry,
        basis: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> QuadraticForm {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let q = form("diag:1,1,-1");
        let iso = RationalIsometry::new(q.clone(), RatMatrix::identity(3)).unwrap();
        let out = integralize(&iso).unwrap();
        assert_eq!(out.form, q);
        assert_eq!(out.basis, RatMatrix::identity(3));
        assert_eq!(out.isometry_matrix(), RatMatrix::identity(3));
    }

    #[test]
    fn integral_isometry_unchanged() {
        // hyperbolic rotation preserving x^2 + y^2 - z^2
        let t = mat(&[&[3, 0, 2], &[0, 1, 0], &[4, 0, 3]]);
        let q = form("diag:2,1,-1");
        let iso = RationalIsometry::new(q.clone(), t.clone()).unwrap();
        let out = integralize(&iso).unwrap();
        assert_eq!(out.basis, RatMatrix::identity(3));
        assert_eq!(out.isometry_matrix(), t);
        assert_eq!(out.form, q);
    }

    #[test]
    fn rejects_non_isometry_and_bad_char_poly() {
        let q = form("diag:1,1,-1");
        assert!(matches!(
            RationalIsometry::new(q.clone(), mat(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            Err(Error::NotAnIsometry)
        ));
        // rotation by the angle with cos = 3/5: trace 6/5 + 1 is not an integer
        let half = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        let zero = half(0, 1);
        let one = half(1, 1);
        let t = RatMatrix::from_rows(vec![
            vec![half(3, 5), half(-4, 5), zero.clone()],
            vec![half(4, 5), half(3, 5), zero.clone()],
            vec![zero.clone(), zero, one],
        ])
        .unwrap();
        let iso = RationalIsometry::new(q, t).unwrap();
        assert!(matches!(
            integralize(&iso),
            Err(Error::NonIntegerCharPoly(_))
        ));
    }
}
