//! Sparse rows and an incremental reduced-row-echelon builder.
//!
//! The builder keeps its rows fully reduced at all times: every pivot column
//! is zero in every row but its own. Inserting a row therefore only has to
//! subtract the pivot rows whose pivot columns it touches.

use std::collections::HashMap;

use super::scalar::{Field, Scalar};

/// `(column, value)` pairs sorted by column, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Returns `a - coef * b`.
pub fn sub_scaled(a: &[(usize, Scalar)], coef: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(coef * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(coef * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_row(row: &mut SparseRow, c: &Scalar) {
    for (_, v) in row.iter_mut() {
        *v = &*v * c;
    }
}

/// Sorts, merges duplicate columns and drops zeros.
pub fn normalize_row(mut row: Vec<(usize, Scalar)>) -> SparseRow {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = &*lv + &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn lookup(row: &[(usize, Scalar)], col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

/// Reduced row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: Field,
    rows: Vec<SparseRow>,
    pivot_row: HashMap<usize, usize>,
}

impl EchelonBuilder {
    pub fn new(field: Field) -> Self {
        EchelonBuilder {
            field,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots without inserting it.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseRow {
        // Subtracting a pivot row cannot create entries in other pivot columns,
        // so the hits can be read off the input once.
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter(|(c, _)| self.pivot_row.contains_key(c))
            .cloned()
            .collect();
        let mut r: SparseRow = row.to_vec();
        for (c, coef) in hits {
            r = sub_scaled(&r, &coef, &self.rows[self.pivot_row[&c]]);
        }
        r
    }

    /// Inserts a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut r = self.reduce(&row);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].0;
        let inv = r[0].1.inv().expect("nonzero leading entry");
        scale_row(&mut r, &inv);
        for existing in self.rows.iter_mut() {
            if let Some(coef) = lookup(existing, lead).cloned() {
                *existing = sub_scaled(existing, &coef, &r);
            }
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Rows sorted by pivot column, with their pivots.
    pub fn finish(self) -> Echelon {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots = rows.iter().map(|r| r[0].0).collect();
        Echelon {
            field: self.field,
            rows,
            pivots,
        }
    }
}

/// A finished sparse RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub field: Field,
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn from_rows(field: Field, rows: impl IntoIterator<Item = SparseRow>) -> Echelon {
        let mut b = EchelonBuilder::new(field);
        for r in rows {
            b.insert(r);
        }
        b.finish()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(f: Field, v: &[(usize, i64)]) -> SparseRow {
        normalize_row(v.iter().map(|(c, x)| (*c, f.from_i64(*x))).collect())
    }

    #[test]
    fn dependent_rows_collapse() {
        let f = Field::Rational;
        let e = Echelon::from_rows(
            f,
            vec![row(f, &[(0, 1), (1, 2)]), row(f, &[(0, 2), (1, 4)])],
        );
        assert_eq!(e.rank(), 1);
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn later_pivot_clears_earlier_rows() {
        let f = Field::Rational;
        let e = Echelon::from_rows(f, vec![row(f, &[(0, 1), (1, 1)]), row(f, &[(1, 1)])]);
        assert_eq!(e.rows[0], row(f, &[(0, 1)]));
        assert_eq!(e.rows[1], row(f, &[(1, 1)]));
    }
}
