//! Divisibility matrices and their Mertens-weighted variants.
//!
//! Indices are 1-based throughout, matching the usual `(i, j)` notation.
//!
//! - Redheffer: `(i, j) = 1` iff `i | j` or `j = 1`; its determinant is `M(n)`.
//! - `R′`: `(i, j) = 1` iff `j | i`.
//! - `T`: `R′` with row `i` scaled by `M(⌊x/i⌋)`. Each column sums to 1.
//! - `U`: `T` with column `j` scaled by `φ(j)`. Entries total `Φ(x)`.
//!
//! `T` is sometimes described as scaling the *columns* of `R′` by
//! `M(⌊x/j⌋)`; that version does not have unit column sums, so the row-scaled
//! form is the one built here.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mertens::MertensTable;
use crate::sieves::SieveTables;

/// Largest dimension accepted by the dense builders.
pub const MAX_DENSE_DIM: u64 = 2000;

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_fn(dim: usize, f: impl Fn(u64, u64) -> i64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 1..=dim as u64 {
            for j in 1..=dim as u64 {
                data.push(f(i, j));
            }
        }
        IntMatrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("matrix rows must form a square"));
        }
        Ok(IntMatrix {
            dim,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[(i - 1) * self.dim + (j - 1)]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.data.chunks(self.dim).map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for row in self.data.chunks(self.dim) {
            for (o, v) in out.iter_mut().zip(row) {
                *o += v;
            }
        }
        out
    }

    pub fn total(&self) -> i64 {
        self.data.iter().sum()
    }
}

impl fmt::Display for IntMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.dim) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn check_dim(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("matrix dimension must be positive"));
    }
    if n > MAX_DENSE_DIM {
        return Err(Error::invalid(format!(
            "dense matrices are capped at {MAX_DENSE_DIM}, got {n}"
        )));
    }
    Ok(())
}

pub fn build_rprime(n: u64) -> Result<IntMatrix> {
    check_dim(n)?;
    Ok(IntMatrix::from_fn(n as usize, |i, j| (i % j == 0) as i64))
}

pub fn build_redheffer(n: u64) -> Result<IntMatrix> {
    check_dim(n)?;
    Ok(IntMatrix::from_fn(n as usize, |i, j| {
        (j == 1 || j % i == 0) as i64
    }))
}

pub fn build_t(x: u64, mt: &MertensTable) -> Result<IntMatrix> {
    check_dim(x)?;
    mt.check("x", x)?;
    Ok(IntMatrix::from_fn(x as usize, |i, j| {
        if i % j == 0 {
            mt.get(x / i)
        } else {
            0
        }
    }))
}

pub fn build_u(x: u64, mt: &MertensTable, tables: &SieveTables) -> Result<IntMatrix> {
    tables.check("x", x)?;
    let t = build_t(x, mt)?;
    Ok(IntMatrix::from_fn(x as usize, |i, j| {
        t.get(i as usize, j as usize) * tables.totient(j) as i64
    }))
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Every intermediate is itself a minor of the input, so each division is exact.
pub fn det_exact(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .data
        .chunks(n)
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // smallest nonzero pivot below keeps intermediates short
            let swap = (k + 1..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by(|&r, &s| a[r][k].abs().cmp(&a[s][k].abs()));
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row, column and grand totals of `T` (and `U`), computed without storing the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSums {
    pub x: u64,
    /// column `j` of `T`, index `j - 1`
    pub columns: Vec<i64>,
    /// row `i` of `T`, index `i - 1`
    pub rows: Vec<i64>,
    pub total: i64,
    /// column `j` of `U`
    pub u_columns: Vec<i64>,
    /// row `i` of `U`
    pub u_rows: Vec<i64>,
    pub u_total: i64,
}

impl TSums {
    /// Columns of `T` sum to 1, rows to `M(⌊x/i⌋)σ₀(i)`, total `x`;
    /// `U` rows are `M(⌊x/i⌋)·i` and `U` totals `Φ(x)`.
    pub fn first_violation(&self, mt: &MertensTable, tables: &SieveTables) -> Option<String> {
        let x = self.x;
        if let Some(j) = self.columns.iter().position(|&c| c != 1) {
            return Some(format!(
                "x={x}: T column {} sums to {}",
                j + 1,
                self.columns[j]
            ));
        }
        for (idx, &r) in self.rows.iter().enumerate() {
            let i = idx as u64 + 1;
            let want = mt.get(x / i) * tables.sigma0(i).unwrap_or(0) as i64;
            if r != want {
                return Some(format!("x={x}: T row {i} sums to {r}, expected {want}"));
            }
            let want_u = mt.get(x / i) * i as i64;
            if self.u_rows[idx] != want_u {
                return Some(format!(
                    "x={x}: U row {i} sums to {}, expected {want_u}",
                    self.u_rows[idx]
                ));
            }
        }
        if self.total != x as i64 {
            return Some(format!("x={x}: T total {} ≠ x", self.total));
        }
        let phi: u64 = (1..=x).map(|i| tables.totient(i)).sum();
        if self.u_total != phi as i64 {
            return Some(format!("x={x}: U total {} ≠ Φ(x) = {phi}", self.u_total));
        }
        None
    }
}

/// Walks the nonzero entries of `T` (every `(i, j)` with `j | i`) once.
pub fn check_t_sums(x: u64, mt: &MertensTable, tables: &SieveTables) -> Result<TSums> {
    if x == 0 {
        return Err(Error::invalid("x must be positive"));
    }
    mt.check("x", x)?;
    tables.check("x", x)?;
    let n = x as usize;
    let mut columns = vec![0i64; n];
    let mut rows = vec![0i64; n];
    let mut u_columns = vec![0i64; n];
    let mut u_rows = vec![0i64; n];
    for j in 1..=x {
        let phi = tables.totient(j) as i64;
        let mut i = j;
        while i <= x {
            let v = mt.get(x / i);
            columns[j as usize - 1] += v;
            rows[i as usize - 1] += v;
            u_columns[j as usize - 1] += v * phi;
            u_rows[i as usize - 1] += v * phi;
            i += j;
        }
    }
    Ok(TSums {
        x,
        total: columns.iter().sum(),
        u_total: u_columns.iter().sum(),
        columns,
        rows,
        u_columns,
        u_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mertens::mertens_table;
    use crate::sieves::build_sieves;

    #[test]
    fn small_builds() {
        assert_eq!(build_rprime(1).unwrap().to_string(), "1\n");
        assert_eq!(
            build_rprime(3).unwrap().to_string(),
            "1 0 0\n1 1 0\n1 0 1\n"
        );
        assert_eq!(build_redheffer(1).unwrap().to_string(), "1\n");
        assert_eq!(build_redheffer(2).unwrap().to_string(), "1 1\n1 1\n");
        assert!(build_rprime(0).is_err());
        assert!(build_redheffer(MAX_DENSE_DIM + 1).is_err());
    }

    #[test]
    fn determinants() {
        let t = build_sieves(60).unwrap();
        let mt = mertens_table(&t);
        assert_eq!(det_exact(&build_redheffer(1).unwrap()), BigInt::from(1));
        assert_eq!(det_exact(&build_redheffer(2).unwrap()), BigInt::from(0));
        assert_eq!(det_exact(&build_redheffer(12).unwrap()), BigInt::from(-2));
        for n in 1..=60 {
            assert_eq!(
                det_exact(&build_redheffer(n).unwrap()),
                BigInt::from(mt.get(n))
            );
        }
        // R′ is unit lower triangular
        assert_eq!(det_exact(&build_rprime(30).unwrap()), BigInt::from(1));
    }

    #[test]
    fn bareiss_against_cofactor_expansion() {
        fn cofactor(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            (0..n)
                .map(|c| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(k, _)| k != c)
                                .map(|(_, &v)| v)
                                .collect()
                        })
                        .collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * m[0][c] * cofactor(&minor)
                })
                .sum()
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for n in 1..=6 {
            for _ in 0..30 {
                let rows: Vec<Vec<i64>> =
                    (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let m = IntMatrix::from_rows(&rows).unwrap();
                assert_eq!(det_exact(&m), BigInt::from(cofactor(&rows)));
            }
        }
    }

    #[test]
    fn t_matrix_x12_golden() {
        let golden: [[i64; 12]; 12] = [
            [-2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [-1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [-1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [-1, -1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
            [1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0],
            [1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
            [1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
            [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
            [1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 0, 1],
        ];
        let t = build_sieves(12).unwrap();
        let mt = mertens_table(&t);
        let tm = build_t(12, &mt).unwrap();
        for i in 1..=12 {
            for j in 1..=12 {
                assert_eq!(tm.get(i, j), golden[i - 1][j - 1], "({i},{j})");
            }
        }
        // support of T sits inside the support of R′
        let rp = build_rprime(12).unwrap();
        for i in 1..=12 {
            for j in 1..=12 {
                if tm.get(i, j) != 0 {
                    assert_eq!(rp.get(i, j), 1);
                }
            }
        }
        assert_eq!(tm.column_sums(), vec![1; 12]);
        assert_eq!(tm.total(), 12);
    }

    #[test]
    fn u_matrix() {
        let t = build_sieves(200).unwrap();
        let mt = mertens_table(&t);
        assert_eq!(build_u(1, &mt, &t).unwrap().to_string(), "1\n");
        let u = build_u(12, &mt, &t).unwrap();
        assert_eq!(u.total(), 46);
        for (idx, r) in u.row_sums().into_iter().enumerate() {
            let i = idx as u64 + 1;
            assert_eq!(r, mt.get(12 / i) * i as i64);
        }
    }

    #[test]
    fn sums_match_dense_matrices() {
        let t = build_sieves(500).unwrap();
        let mt = mertens_table(&t);
        for x in 1..=60 {
            let s = check_t_sums(x, &mt, &t).unwrap();
            let tm = build_t(x, &mt).unwrap();
            let um = build_u(x, &mt, &t).unwrap();
            assert_eq!(s.columns, tm.column_sums());
            assert_eq!(s.rows, tm.row_sums());
            assert_eq!(s.u_columns, um.column_sums());
            assert_eq!(s.u_rows, um.row_sums());
            assert_eq!(s.first_violation(&mt, &t), None);
        }
        let s = check_t_sums(500, &mt, &t).unwrap();
        assert_eq!(s.total, 500);
        assert_eq!(check_t_sums(1, &mt, &t).unwrap().columns, vec![1]);
    }
}
