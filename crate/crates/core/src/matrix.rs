//! Dense exact matrices and the walk matrices of a graph.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{ArcTable, Graph};
use crate::rational::{self, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Exact determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            let pivot_inv = pivot.recip();
            let (top, bottom) = a.split_at_mut(k + 1);
            let prow = &top[k];
            for row in bottom.iter_mut() {
                if row[k].is_zero() {
                    continue;
                }
                let f = &row[k] * &pivot_inv;
                for j in k..n {
                    if !prow[j].is_zero() {
                        row[j] -= &f * &prow[j];
                    }
                }
            }
        }
        det
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `(L, L * self)` with `L` the denominator lcm, the scaled matrix as integers.
    pub fn integer_scaled(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let l = self.denominator_lcm();
        let lr = Rational::from_integer(l.clone());
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| (x * &lr).to_integer()).collect())
            .collect();
        (l, rows)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::to_f64).collect())
            .collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, String> {
        let rows = json
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| rational::parse(s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = Self::from_rows(rows);
        if m.rows != json.rows || m.cols != json.cols {
            return Err("declared shape does not match entries".into());
        }
        Ok(m)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// JSON form of a matrix with `"p/q"` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

/// Matrix with entries in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BinaryMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut bits = vec![false; self.bits.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                bits[j * self.rows + i] = self.get(i, j);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            bits,
        }
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for (k, &b) in self.bits.iter().enumerate() {
            if b {
                m.entries[k] = Rational::one();
            }
        }
        m
    }
}

/// Entrywise indicator of strictly positive entries.
pub fn positive_support(m: &RationalMatrix) -> BinaryMatrix {
    BinaryMatrix {
        rows: m.rows,
        cols: m.cols,
        bits: m.entries.iter().map(Signed::is_positive).collect(),
    }
}

/// The Grover matrix: `U[e][f] = 2/d(t(f)) - [f = e^-1]` when `t(f) = o(e)`.
pub fn grover_matrix(g: &Graph, arcs: &ArcTable) -> RationalMatrix {
    let n = arcs.len();
    let mut u = RationalMatrix::zeros(n, n);
    for e in 0..n {
        let o = arcs.origin(e);
        for f in 0..n {
            if arcs.terminus(f) != o {
                continue;
            }
            let mut v = rational::rat(2, g.degree(o) as i64);
            if f == arcs.inverse(e) {
                v -= Rational::one();
            }
            u.set(e, f, v);
        }
    }
    u
}

/// Random-walk transition matrix `P[u][v] = 1/deg(u)` on arcs.
pub fn transition_matrix(g: &Graph) -> RationalMatrix {
    let n = g.vertex_count();
    let mut p = RationalMatrix::zeros(n, n);
    for &(a, b) in g.edges() {
        p.set(a - 1, b - 1, rational::rat(1, g.degree(a) as i64));
        p.set(b - 1, a - 1, rational::rat(1, g.degree(b) as i64));
    }
    p
}

/// Adjacency matrix and diagonal degree matrix.
pub fn adjacency_and_degree(g: &Graph) -> (RationalMatrix, RationalMatrix) {
    let n = g.vertex_count();
    let mut a = RationalMatrix::zeros(n, n);
    let mut d = RationalMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a.set(u - 1, v - 1, Rational::one());
        a.set(v - 1, u - 1, Rational::one());
    }
    for v in 0..n {
        d.set(v, v, rational::int(g.degree(v + 1) as i64));
    }
    (a, d)
}
