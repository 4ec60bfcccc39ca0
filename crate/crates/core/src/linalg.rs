//! Exact linear algebra over the rationals.
//!
//! Everything in this crate that needs a rank, a kernel dimension, a linear
//! solve or a matrix inverse goes through this module, so that no floating
//! point ever enters a certificate.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Dense matrix of rationals in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// In-place Gauss reduction to row echelon form.
    /// Returns the pivot columms in order.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Pick the first nonzero pivot for determinism.
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for k in c..self.cols {
                let v = &self[(r, k)] * &inv;
                self[(r, k)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for k in c..self.cols {
                        let v = &self[(i, k)] - &f * &self[(r, k)];
                        self[(i, k)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m[(c, c)].clone();
            let inv = m[(c, c)].recip();
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] * &inv;
                    for k in c..n {
                        let v = &m[(i, k)] - &f * &m[(c, k)];
                        m[(i, k)] = v;
                    }
                }
            }
        }
        det
    }

    /// Some solution `x` of `self * x = b`, or `None` when inconsistent.
    /// Free variables are set to zero, which makes the answer deterministic.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.echelonize();
        if pivots.contains(&self.cols) {
            return None; // a pivot in the augmented column means no solution
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let pivots = aug.echelonize();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let mut inv = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += &self[(i, j)] * &v[j];
                }
                acc
            })
            .collect()
    }

    /// Whether `v` lies in the row span of `self`.
    pub fn row_span_contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let base = self.rank();
        let mut ext = self.clone();
        ext.rows += 1;
        ext.data.extend_from_slice(v);
        ext.rank() == base
    }

    /// Leading principal minors, used for positive-definiteness tests.
    pub fn leading_principal_minors(&self) -> Vec<Rat> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                let mut sub = QMatrix::zero(k, k);
                for i in 0..k {
                    for j in 0..k {
                        sub[(i, j)] = self[(i, j)].clone();
                    }
                }
                sub.det()
            })
            .collect()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.leading_principal_minors()
            .iter()
            .all(|m| m.is_positive())
    }
}

/// Prime modulus used for large rank certificates. The rank of a reduction
/// modulo a prime never exceeds the rational rank, so matching a known upper
/// bound certifies the exact rank.
pub const RANK_PRIME: u64 = (1 << 61) - 1;

/// Rank of an integer matrix modulo a prime, by Gaussian elimination with
/// `u128` products.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let mulmod = |a: u64, b: u64| -> u64 { ((a as u128 * b as u128) % p as u128) as u64 };
    let powmod = |mut base: u64, mut exp: u64| -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = powmod(rows[rank][col] % p, p - 2);
        for r in rank + 1..rows.len() {
            let factor = mulmod(rows[r][col] % p, inv);
            if factor == 0 {
                continue;
            }
            for c in col..ncols {
                let sub = mulmod(factor, rows[rank][c] % p);
                rows[r][c] = (rows[r][c] % p + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let m = QMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        let m = QMatrix::from_int_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(QMatrix::zero(3, 2).rank(), 0);
    }

    #[test]
    fn modular_rank_agrees_with_rational_rank() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]],
            vec![vec![5, 7], vec![2, 3]],
            vec![vec![0, 0], vec![0, 0]],
        ];
        for rows in cases {
            let exact = QMatrix::from_int_rows(&rows).rank();
            let reduced: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| x.rem_euclid(RANK_PRIME as i64) as u64)
                        .collect()
                })
                .collect();
            assert_eq!(rank_mod_p(reduced, RANK_PRIME), exact);
        }
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = QMatrix::from_int_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(m.det(), rat_int(-3));
        let singular = QMatrix::from_int_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(singular.det(), rat_int(0));
    }

    #[test]
    fn solve_and_inverse_round_trip() {
        let m = QMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        let b = vec![rat_int(3), rat_int(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let inv = m.inverse().unwrap();
        let mut prod = QMatrix::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Rat::zero();
                for k in 0..2 {
                    acc += &m[(i, k)] * &inv[(k, j)];
                }
                prod[(i, j)] = acc;
            }
        }
        assert_eq!(prod, QMatrix::identity(2));
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let m = QMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&[rat_int(1), rat_int(2)]).is_none());
    }

    #[test]
    fn row_span_membership() {
        let m = QMatrix::from_int_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(m.row_span_contains(&[rat_int(1), rat_int(1), rat_int(2)]));
        assert!(!m.row_span_contains(&[rat_int(0), rat_int(0), rat_int(1)]));
    }

    #[test]
    fn positive_definiteness() {
        let pd = QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]]);
        assert!(pd.is_positive_definite());
        let not_pd = QMatrix::from_int_rows(&[vec![2, -2], vec![-2, 2]]);
        assert!(!not_pd.is_positive_definite());
    }
}
