//! Square matrices over the rationals and small linear algebra helpers.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{OrderError, Result};
use crate::quadratic::{format_rational, int, parse_rational, QuadRat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(OrderError::Parse("matrix must be square and nonempty".into()));
        }
        Ok(RationalMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i128]]) -> Self {
        RationalMatrix::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("square integer matrix")
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c } else { Rational::zero() }).collect())
            .collect();
        RationalMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn neg(&self) -> Self {
        RationalMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        RationalMatrix { rows }
    }

    pub fn determinant(&self) -> Rational {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col];
            det *= pivot;
            for r in col + 1..n {
                let f = m[r][col] / pivot;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim();
        let mut m: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(OrderError::SingularMatrix)?;
            m.swap(p, col);
            let pivot = m[col][col];
            for c in 0..2 * n {
                m[col][c] /= pivot;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col];
                for c in 0..2 * n {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
            }
        }
        Ok(RationalMatrix {
            rows: m.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }

    /// `M^k` for any integer `k` (negative powers need an invertible matrix).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RationalMatrix::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Row-vector action `v ↦ vM`.
    pub fn apply_row(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        (0..n).map(|j| (0..n).map(|i| v[i] * self.rows[i][j]).sum()).collect()
    }

    /// Column action `u ↦ Mu` on a vector over a quadratic field.
    pub fn apply_column(&self, u: &[QuadRat]) -> Vec<QuadRat> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .fold(QuadRat::from_int(0), |acc, (m, x)| acc + x.scale(m))
            })
            .collect()
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        let c = self.rows[0][0];
        (*self == RationalMatrix::scalar(self.dim(), c)).then_some(c)
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_integer())
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim()).map(|i| self.rows[i][i]).sum()
    }

    /// Parses the row-major form `[[1,2],[1,1]]`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || OrderError::Parse(format!("invalid matrix {:?}", s));
        let inner = t
            .strip_prefix("[[")
            .and_then(|x| x.strip_suffix("]]"))
            .ok_or_else(bad)?;
        let rows = inner
            .split("],[")
            .map(|r| r.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::new(rows)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let xs: Vec<String> = r.iter().map(format_rational).collect();
                format!("[{}]", xs.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Basis of the rational solutions `t` of `Σ_j rows[i][j] t_j = 0`, in
/// reduced column-echelon order.
pub fn rational_nullspace(rows: &[Vec<Rational>], k: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let pivot = m[r][col];
        for c in 0..k {
            m[r][c] /= pivot;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col];
                for c in 0..k {
                    let v = m[r][c];
                    m[i][c] -= f * v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut t = vec![Rational::zero(); k];
            t[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                t[pc] = -m[row][fc];
            }
            t
        })
        .collect()
}
