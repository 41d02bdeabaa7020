use std::fmt;

use super::scalar::{Field, Scalar};
use super::sparse::{normalize_row, Echelon, SparseRow};

/// Dense row-major matrix over a session field.
///
/// A matrix acting on a coordinate space sends basis vector `e_j` to its
/// column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds from rows; every row must have the same length.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Option<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Matrix {
            field,
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("ragged rows")
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .cloned()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length does not match matrix");
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector length does not match matrix");
        let mut out = vec![self.field.zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, a * rhs.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let augmented: Vec<SparseRow> = (0..n)
            .map(|r| {
                let mut row: Vec<(usize, Scalar)> = self
                    .row(r)
                    .iter()
                    .cloned()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                row.push((n + r, self.field.one()));
                normalize_row(row)
            })
            .collect();
        let e = Echelon::from_rows(self.field, augmented);
        if e.rank() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for (r, row) in e.rows.iter().enumerate() {
            for (c, v) in row {
                if *c >= n {
                    inv.set(r, c - n, v.clone());
                }
            }
        }
        Some(inv)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Option<Matrix> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with zero rows dropped, and the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let e = Echelon::from_rows(m.field(), m.sparse_rows());
    (echelon_to_dense(&e, m.cols()), e.pivots)
}

pub(crate) fn echelon_to_dense(e: &Echelon, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(e.field, e.rank(), cols);
    for (r, row) in e.rows.iter().enumerate() {
        for (c, v) in row {
            out.set(r, *c, v.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let q = Field::Rational;
        let (z, p) = rref(&Matrix::from_i64(q, &[&[0, 0], &[0, 0]]));
        assert_eq!(z.rows(), 0);
        assert!(p.is_empty());

        let (i, p) = rref(&Matrix::identity(q, 2));
        assert!(i.is_identity());
        assert_eq!(p, vec![0, 1]);

        let (r, p) = rref(&Matrix::from_i64(q, &[&[1, 2], &[2, 4]]));
        assert_eq!(r, Matrix::from_i64(q, &[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn inverse_of_unipotent() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            m.inverse().unwrap(),
            Matrix::from_i64(q, &[&[1, -1], &[0, 1]])
        );
        assert!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_of_diagonals() {
        let q = Field::Rational;
        let a = Matrix::diagonal(q, &[q.from_i64(1), q.from_i64(3)]);
        let third = q.from_i64(3).inv().unwrap();
        let b = Matrix::diagonal(q, &[q.from_i64(1), third.clone()]);
        let expect = Matrix::diagonal(q, &[q.from_i64(1), third, q.from_i64(3), q.from_i64(1)]);
        assert_eq!(a.kron(&b), expect);
    }
}
