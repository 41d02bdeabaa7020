use crate::error::{Error, Result};

use super::matrix::{echelon_to_dense, Matrix};
use super::scalar::{Field, Scalar};
use super::sparse::{Echelon, SparseRow};

/// A subspace of `field^ambient`, stored as a canonical RREF basis.
///
/// Derived equality is subspace equality: two subspaces with the same
/// ambient dimension are equal exactly when their RREF bases coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::span(
            field,
            ambient,
            Matrix::identity(field, ambient).row_vectors(),
        )
    }

    /// Span of the given vectors.
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        let rows = vectors.into_iter().map(|v| {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
            v.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect::<SparseRow>()
        });
        Subspace::from_echelon(Echelon::from_rows(field, rows), ambient)
    }

    pub fn from_sparse(
        field: Field,
        ambient: usize,
        rows: impl IntoIterator<Item = SparseRow>,
    ) -> Subspace {
        Subspace::from_echelon(Echelon::from_rows(field, rows), ambient)
    }

    pub(crate) fn from_echelon(e: Echelon, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: echelon_to_dense(&e, ambient),
            pivots: e.pivots,
        }
    }

    pub fn row_space(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.cols(), m.row_vectors())
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let rows = self
            .basis
            .sparse_rows()
            .into_iter()
            .chain(other.basis.sparse_rows());
        Ok(Subspace::from_sparse(self.field(), self.ambient, rows))
    }

    /// Intersection as the kernel of the stacked annihilator constraints.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let rows = a
            .basis
            .row_vectors()
            .into_iter()
            .chain(b.basis.row_vectors())
            .collect::<Vec<_>>();
        let constraints = if rows.is_empty() {
            Matrix::zeros(self.field(), 0, self.ambient)
        } else {
            Matrix::from_rows(self.field(), rows).expect("uniform rows")
        };
        Ok(kernel(&constraints))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let row: SparseRow = v
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Ok(self.reduce(&row).is_empty())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(other
            .basis
            .sparse_rows()
            .iter()
            .all(|r| self.reduce(r).is_empty()))
    }

    /// Residue of a sparse vector after eliminating the pivot columns.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseRow {
        let mut r: SparseRow = row.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if let Ok(pos) = r.binary_search_by_key(&p, |(c, _)| *c) {
                let coef = r[pos].1.clone();
                let pivot_row: SparseRow = self
                    .basis
                    .row(k)
                    .iter()
                    .cloned()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                r = super::sparse::sub_scaled(&r, &coef, &pivot_row);
            }
        }
        r
    }

    /// `{f : <f, s> = 0 for all s}` under the coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Image under a linear map given as a square matrix acting on columns.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let rows = self
            .basis
            .row_vectors()
            .into_iter()
            .map(|v| m.apply(&v))
            .collect();
        Subspace::span(self.field(), m.rows(), rows)
    }
}

/// Solution space of `M x = 0`.
pub fn kernel(m: &Matrix) -> Subspace {
    let field = m.field();
    let n = m.cols();
    let e = Echelon::from_rows(field, m.sparse_rows());
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut vectors: Vec<SparseRow> = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v: SparseRow = vec![(free, field.one())];
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if let Ok(pos) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v.push((p, -&row[pos].1));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        vectors.push(v);
    }
    Subspace::from_sparse(field, n, vectors)
}
