#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use salem_core::quadform::{QuadraticForm, RatMatrix, RationalIsometry};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn symmetric(r: usize, vals: &[i64]) -> RatMatrix {
    let mut rows = vec![vec![BigRational::zero(); r]; r];
    let mut it = vals.iter().cycle();
    for i in 0..r {
        for j in i..r {
            let v = rat(*it.next().unwrap());
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
    }
    RatMatrix::from_rows(rows).unwrap()
}

pub fn unimodular(rng: &mut ChaCha8Rng, r: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(r);
    for _ in 0..3 * r {
        let i = rng.gen_range(0..r);
        let j = rng.gen_range(0..r);
        if i == j {
            continue;
        }
        let mut e = RatMatrix::identity(r);
        e[(i, j)] = rat(rng.gen_range(-2..=2));
        m = &m * &e;
    }
    m
}

/// Random invertible rational matrix with small entries.
pub fn rational_change(rng: &mut ChaCha8Rng, r: usize) -> RatMatrix {
    loop {
        let rows = (0..r)
            .map(|_| {
                (0..r)
                    .map(|_| frac(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(rows).unwrap();
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// `x -> x - 2 B(x, v) / q(v) v`.
pub fn reflection(s: &RatMatrix, v: &[BigRational]) -> RatMatrix {
    let r = v.len();
    let sv: Vec<BigRational> = (0..r)
        .map(|i| (0..r).map(|j| &s[(i, j)] * &v[j]).sum())
        .collect();
    let qv: BigRational = (0..r).map(|i| &v[i] * &sv[i]).sum();
    let mut t = RatMatrix::identity(r);
    for i in 0..r {
        for j in 0..r {
            t[(i, j)] -= rat(2) * &v[i] * &sv[j] / &qv;
        }
    }
    t
}

pub fn random_root(rng: &mut ChaCha8Rng, form: &QuadraticForm) -> Vec<BigRational> {
    loop {
        let v: Vec<BigRational> = (0..form.rank())
            .map(|_| rat(rng.gen_range(-2..=2)))
            .collect();
        let q = form.value(&v);
        if [-2, -1, 1, 2].iter().any(|&k| q == rat(k)) {
            return v;
        }
    }
}

/// Product of an even number of reflections in vectors of norm `+-1`, `+-2` for a diagonal
/// form of signature `(r - 1, 1)`, conjugated into a random rational basis.
pub fn random_isometry(seed: u64, r: usize, reflections: usize) -> RationalIsometry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diag = vec![1i64; r];
    diag[r - 1] = -1;
    if r > 2 {
        diag[0] = 2;
    }
    let base = QuadraticForm::diagonal_i64(&diag).unwrap();
    let mut t = RatMatrix::identity(r);
    for _ in 0..2 * reflections {
        let v = random_root(&mut rng, &base);
        t = &t * &reflection(base.matrix(), &v);
    }
    let h = rational_change(&mut rng, r);
    let form = base.congruent(&h).unwrap();
    let t_rat = &(&h.inverse().unwrap() * &t) * &h;
    RationalIsometry::new(form, t_rat).unwrap()
}
