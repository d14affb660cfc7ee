//! Exact characteristic determinants.
//!
//! [`det_one_minus_u_m`] scales the matrix to integers and runs the
//! Faddeev–LeVerrier trace recursion with a sparse left factor.
//! [`det_one_minus_u_m_bareiss`] is an independent route by fraction-free
//! elimination over the polynomial ring, and [`poly_matrix_det`] handles
//! arbitrary polynomial matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Polynomial;
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

/// `det(I - u M)` as an exact polynomial in `u`.
pub fn det_one_minus_u_m(m: &RationalMatrix) -> Polynomial {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Polynomial::one();
    }
    let (l, ints) = m.integer_scaled();
    let a = charpoly_integer(&ints);
    // det(I - x A) = sum_j a_{N-j} x^j with x = u / L
    let lr = Rational::from_integer(l);
    let mut scale = Rational::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        coeffs.push(Rational::from_integer(a[n - j].clone()) / &scale);
        scale *= &lr;
    }
    Polynomial::new(coeffs)
}

/// Characteristic polynomial `det(xI - A)` of an integer matrix, ascending
/// coefficients, via Faddeev–LeVerrier (all divisions are exact).
pub fn charpoly_integer(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let sparse: Vec<Vec<(usize, BigInt)>> = a
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect()
        })
        .collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // M_1 = I
    let mut mk: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect();
    for k in 1..=n {
        let am = sparse_mul(&sparse, &mk);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let ck = -trace / BigInt::from(k);
        if k < n {
            mk = am;
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += &ck;
            }
        }
        c[n - k] = ck;
    }
    c
}

fn sparse_mul(a: &[Vec<(usize, BigInt)>], m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); n];
            for (k, v) in row {
                for (o, x) in out.iter_mut().zip(&m[*k]) {
                    if !x.is_zero() {
                        *o += v * x;
                    }
                }
            }
            out
        })
        .collect()
}

/// `det(I - u M)` by fraction-free elimination on `L I - u (L M)`.
pub fn det_one_minus_u_m_bareiss(m: &RationalMatrix) -> Polynomial {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let (l, ints) = m.integer_scaled();
    let lr = Rational::from_integer(l);
    let entries: Vec<Vec<Polynomial>> = ints
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let c0 = if i == j { lr.clone() } else { Rational::zero() };
                    Polynomial::new(vec![c0, -Rational::from_integer(x.clone())])
                })
                .collect()
        })
        .collect();
    let d = poly_matrix_det(entries);
    // det(L I - u L M) = L^N det(I - u M)
    let ln = num_traits::pow(lr, n);
    d.scale(&ln.recip())
}

/// Determinant of a square polynomial matrix by Bareiss elimination with
/// row pivoting.
pub fn poly_matrix_det(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Polynomial::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let num = &(&row[j] * &prow[k]) - &(&row[k] * &prow[j]);
                row[j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            row[k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}
