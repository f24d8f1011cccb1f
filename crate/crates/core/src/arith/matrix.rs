use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::{ArithError, Cyclotomic};

/// Dense row-major matrix over cyclotomic numbers.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Cyclotomic>) -> Result<Self, ArithError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(ArithError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CycMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CycMatrix { rows, cols, data }
    }

    pub fn from_ints(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        CycMatrix::from_fn(rows, cols, |r, c| Cyclotomic::from_int(vals[r * cols + c]))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix::from_fn(rows, cols, |_, _| Cyclotomic::zero())
    }

    pub fn identity(n: usize) -> Self {
        CycMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        })
    }

    pub fn scalar(n: usize, s: &Cyclotomic) -> Self {
        CycMatrix::from_fn(n, n, |r, c| if r == c { s.clone() } else { Cyclotomic::zero() })
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

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        CycMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        self.map(|x| x * s)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.data.iter().enumerate().all(|(i, x)| {
                if i / self.cols == i % self.cols {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
    }

    pub fn trace(&self) -> Cyclotomic {
        assert!(self.is_square());
        (0..self.rows).fold(Cyclotomic::zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn try_mul(&self, other: &CycMatrix) -> Result<CycMatrix, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CycMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &CycMatrix) -> CycMatrix {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        CycMatrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                Cyclotomic::zero()
            }
        })
    }

    /// `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &CycMatrix, b: &CycMatrix, c: &CycMatrix, d: &CycMatrix) -> CycMatrix {
        let n = a.rows;
        CycMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let blk = match (i < n, j < n) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            blk[(i % n, j % n)].clone()
        })
    }

    /// Kronecker product.
    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        CycMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    /// Reduced row-echelon form with first-nonzero pivoting; returns the pivot columns.
    pub fn rref(&self) -> (CycMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                if !m[(row, c)].is_zero() {
                    m[(row, c)] = &m[(row, c)] * &inv;
                }
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let t = &factor * &m[(row, c)];
                    m[(r, c)] = &m[(r, c)] - &t;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<CycMatrix, ArithError> {
        if !self.is_square() {
            return Err(ArithError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = CycMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ArithError::Singular);
        }
        Ok(CycMatrix::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    pub fn det(&self) -> Cyclotomic {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Cyclotomic::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Cyclotomic::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().unwrap();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] * &inv;
                for c in col..n {
                    let t = &f * &m[(col, c)];
                    m[(r, c)] = &m[(r, c)] - &t;
                }
            }
        }
        det
    }

    /// Column vector of the entries, row-major.
    pub fn vectorize(&self) -> CycMatrix {
        CycMatrix {
            rows: self.rows * self.cols,
            cols: 1,
            data: self.data.clone(),
        }
    }

    /// Inverse of [`CycMatrix::vectorize`].
    pub fn unvectorize(v: &CycMatrix, rows: usize, cols: usize) -> CycMatrix {
        assert_eq!(v.rows * v.cols, rows * cols);
        CycMatrix {
            rows,
            cols,
            data: v.data.clone(),
        }
    }

    /// Rows rendered as cyclotomic literals, used in report certificates.
    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(Cyclotomic::to_literal).collect())
            .collect()
    }

    pub fn from_literal_rows(rows: &[Vec<String>]) -> Result<CycMatrix, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ArithError::Dimension("ragged literal rows".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|s| s.parse())
            .collect::<Result<Vec<Cyclotomic>, _>>()?;
        CycMatrix::new(r, c, data)
    }
}

/// Exact basis of the null space of `m`, each basis vector a column matrix.
///
/// Uses the reduced row-echelon form with first-nonzero pivoting, so the basis
/// is deterministic: one vector per free column, with a 1 in that column.
pub fn solve_linear_space(m: &CycMatrix) -> Vec<CycMatrix> {
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = CycMatrix::zeros(m.cols, 1);
            v[(f, 0)] = Cyclotomic::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[(pc, 0)] = -&red[(i, f)];
            }
            v
        })
        .collect()
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = Cyclotomic;
    fn index(&self, (r, c): (usize, usize)) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cyclotomic {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CycMatrix {
    type Output = CycMatrix;
    fn mul(self, other: &CycMatrix) -> CycMatrix {
        self.try_mul(other).expect("matrix dimension mismatch")
    }
}

impl Add for &CycMatrix {
    type Output = CycMatrix;
    fn add(self, other: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycMatrix {
    type Output = CycMatrix;
    fn sub(self, other: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycMatrix {
    type Output = CycMatrix;
    fn neg(self) -> CycMatrix {
        self.map(|x| -x)
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(solve_linear_space(&CycMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        assert_eq!(solve_linear_space(&CycMatrix::zeros(2, 2)).len(), 2);
        assert_eq!(solve_linear_space(&CycMatrix::zeros(4, 4)).len(), 4);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let i = Cyclotomic::zeta(4);
        let m = CycMatrix::new(
            2,
            3,
            vec![
                Cyclotomic::one(),
                i.clone(),
                Cyclotomic::from_int(2),
                i.clone(),
                Cyclotomic::from_int(-1),
                &i * &Cyclotomic::from_int(2),
            ],
        )
        .unwrap();
        let ker = solve_linear_space(&m);
        assert_eq!(ker.len(), 3 - m.rank());
        for v in ker {
            assert!((&m * &v).is_zero());
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = CycMatrix::from_ints(2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(m.det(), Cyclotomic::one());
        assert!(CycMatrix::from_ints(2, 2, &[1, 2, 2, 4]).inverse().is_err());
    }
}
