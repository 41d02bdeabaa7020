//! m-homogeneous presentations and their graded components.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exactlin::sparse::{normalize_row, Echelon, EchelonBuilder, SparseRow};
use crate::exactlin::{Field, Scalar, Subspace};
use crate::freetensor::{index_word, word_count, GeneratorSet, Tensor, Word};

/// `k⟨V⟩/(R)` with `R ⊆ V^{⊗m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: GeneratorSet,
    m: usize,
    relations: Subspace,
}

impl Presentation {
    pub fn new(gens: GeneratorSet, m: usize, relations: Subspace) -> Result<Presentation> {
        if m < 2 {
            return Err(Error::Precondition(format!(
                "homogeneity degree must be at least 2, got {m}"
            )));
        }
        let expect = word_count(gens.len(), m);
        if relations.ambient_dim() != expect {
            return Err(Error::DimensionMismatch {
                expected: expect,
                found: relations.ambient_dim(),
            });
        }
        Ok(Presentation { gens, m, relations })
    }

    pub fn from_tensors(
        gens: GeneratorSet,
        m: usize,
        field: Field,
        rels: &[Tensor],
    ) -> Result<Presentation> {
        let g = gens.len();
        let mut rows = Vec::with_capacity(rels.len());
        for r in rels {
            if r.degree() != m {
                return Err(Error::DegreeMismatch(m, r.degree()));
            }
            if r.field() != field {
                return Err(Error::FieldMismatch);
            }
            rows.push(r.to_sparse(g));
        }
        let ambient = word_count(g, m);
        Presentation::new(gens, m, Subspace::from_sparse(field, ambient, rows))
    }

    pub fn free(gens: GeneratorSet, m: usize, field: Field) -> Result<Presentation> {
        let ambient = word_count(gens.len(), m);
        Presentation::new(gens, m, Subspace::zero(field, ambient))
    }

    pub fn field(&self) -> Field {
        self.relations.field()
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// The RREF basis of `R` as tensors.
    pub fn relation_tensors(&self) -> Vec<Tensor> {
        let g = self.gens.len();
        self.relations
            .basis_vectors()
            .iter()
            .map(|v| Tensor::from_dense(self.field(), self.m, g, v))
            .collect()
    }
}

/// One graded component `A_n = V^{⊗n} / J_n`.
#[derive(Debug)]
pub struct Component {
    degree: usize,
    ideal: Echelon,
    pivot_row: Vec<Option<usize>>,
    std_words: Vec<usize>,
    std_pos: Vec<Option<usize>>,
}

impl Component {
    fn new(degree: usize, raw_dim: usize, ideal: Echelon) -> Component {
        let mut pivot_row = vec![None; raw_dim];
        for (r, &p) in ideal.pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let mut std_pos = vec![None; raw_dim];
        let mut std_words = Vec::with_capacity(raw_dim - ideal.rank());
        for (idx, pr) in pivot_row.iter().enumerate() {
            if pr.is_none() {
                std_pos[idx] = Some(std_words.len());
                std_words.push(idx);
            }
        }
        Component {
            degree,
            ideal,
            pivot_row,
            std_words,
            std_pos,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.std_words.len()
    }

    pub fn raw_dim(&self) -> usize {
        self.pivot_row.len()
    }

    /// Raw indices of the standard words, ascending.
    pub fn std_words(&self) -> &[usize] {
        &self.std_words
    }

    pub fn std_position(&self, raw: usize) -> Option<usize> {
        self.std_pos[raw]
    }

    /// Sparse RREF rows spanning `J_n`.
    pub fn ideal_rows(&self) -> &[SparseRow] {
        &self.ideal.rows
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }

    /// Normal form of a raw word, over standard positions.
    pub fn reduce_raw(&self, raw: usize) -> SparseRow {
        match self.pivot_row[raw] {
            None => vec![(
                self.std_pos[raw].expect("non-pivot word is standard"),
                self.ideal.field.one(),
            )],
            Some(r) => self.ideal.rows[r]
                .iter()
                .filter(|(c, _)| *c != raw)
                .map(|(c, v)| {
                    (
                        self.std_pos[*c].expect("RREF row leaves pivot columns clear"),
                        -v,
                    )
                })
                .collect(),
        }
    }

    /// Normal form of a raw-indexed sparse vector, over standard positions.
    pub fn reduce_sparse(&self, row: &[(usize, Scalar)]) -> SparseRow {
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (raw, c) in row {
            for (p, v) in self.reduce_raw(*raw) {
                acc.push((p, c * &v));
            }
        }
        normalize_row(acc)
    }
}

/// A presentation with memoized graded components up to a degree cap.
#[derive(Debug)]
pub struct Algebra {
    pres: Presentation,
    cap: usize,
    cache: RwLock<BTreeMap<usize, Arc<Component>>>,
}

/// A homogeneous element, in coordinates over the standard words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn from_sparse(
        field: Field,
        degree: usize,
        dim: usize,
        row: &[(usize, Scalar)],
    ) -> AlgebraElement {
        let mut coords = vec![field.zero(); dim];
        for (p, v) in row {
            coords[*p] = &coords[*p] + v;
        }
        AlgebraElement { degree, coords }
    }

    pub fn to_sparse(&self) -> SparseRow {
        self.coords
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement {
            degree: self.degree,
            coords: self.coords.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(
            self.degree, other.degree,
            "adding elements of different degrees"
        );
        AlgebraElement {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Algebra {
    pub fn new(pres: Presentation, cap: usize) -> Algebra {
        Algebra {
            pres,
            cap,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn field(&self) -> Field {
        self.pres.field()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn gens_len(&self) -> usize {
        self.pres.gens.len()
    }

    /// `A_n`, computed on first use.
    pub fn component(&self, n: usize) -> Result<Arc<Component>> {
        if n > self.cap {
            return Err(Error::DegreeCap {
                requested: n,
                cap: self.cap,
            });
        }
        if let Some(c) = self.cache.read().expect("cache lock").get(&n) {
            return Ok(c.clone());
        }
        let prev = if n > self.pres.m {
            Some(self.component(n - 1)?)
        } else {
            None
        };
        let built = Arc::new(self.build_component(n, prev.as_deref()));
        // Concurrent builders compute identical components; keep the first.
        let mut w = self.cache.write().expect("cache lock");
        Ok(w.entry(n).or_insert(built).clone())
    }

    fn build_component(&self, n: usize, prev: Option<&Component>) -> Component {
        let field = self.field();
        let g = self.gens_len();
        let m = self.pres.m;
        let raw_dim = word_count(g, n);
        let mut b = EchelonBuilder::new(field);
        if n >= m {
            if let Some(prev) = prev {
                for row in prev.ideal_rows() {
                    for v in 0..g {
                        b.insert(row.iter().map(|(c, x)| (c * g + v, x.clone())).collect());
                    }
                }
            }
            let rel_rows = self.pres.relations.basis().sparse_rows();
            let block = word_count(g, m);
            for prefix in 0..word_count(g, n - m) {
                for row in &rel_rows {
                    b.insert(
                        row.iter()
                            .map(|(c, x)| (prefix * block + c, x.clone()))
                            .collect(),
                    );
                }
            }
        }
        Component::new(n, raw_dim, b.finish())
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.component(n)?.dim())
    }

    pub fn hilbert_dims(&self, d: usize) -> Result<Vec<usize>> {
        (0..=d).map(|n| self.dim(n)).collect()
    }

    /// `J_n` as a canonical subspace of `V^{⊗n}`.
    pub fn ideal_component(&self, n: usize) -> Result<Subspace> {
        let c = self.component(n)?;
        Ok(Subspace::from_sparse(
            self.field(),
            c.raw_dim(),
            c.ideal_rows().iter().cloned(),
        ))
    }

    pub fn std_word(&self, n: usize, pos: usize) -> Result<Word> {
        let c = self.component(n)?;
        Ok(index_word(c.std_words()[pos], n, self.gens_len()))
    }

    pub fn basis_element(&self, n: usize, pos: usize) -> Result<AlgebraElement> {
        let dim = self.dim(n)?;
        let mut coords = vec![self.field().zero(); dim];
        coords[pos] = self.field().one();
        Ok(AlgebraElement { degree: n, coords })
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement {
            degree: 0,
            coords: vec![self.field().one()],
        }
    }

    pub fn zero(&self, n: usize) -> Result<AlgebraElement> {
        Ok(AlgebraElement {
            degree: n,
            coords: vec![self.field().zero(); self.dim(n)?],
        })
    }

    pub fn normal_form(&self, t: &Tensor) -> Result<AlgebraElement> {
        let c = self.component(t.degree())?;
        let row = c.reduce_sparse(&t.to_sparse(self.gens_len()));
        Ok(AlgebraElement::from_sparse(
            self.field(),
            t.degree(),
            c.dim(),
            &row,
        ))
    }

    /// Representative tensor over the standard words.
    pub fn to_tensor(&self, a: &AlgebraElement) -> Result<Tensor> {
        let c = self.component(a.degree)?;
        let row: SparseRow = a
            .to_sparse()
            .into_iter()
            .map(|(p, v)| (c.std_words()[p], v))
            .collect();
        Ok(Tensor::from_sparse(
            self.field(),
            a.degree,
            self.gens_len(),
            &row,
        ))
    }

    /// Product of standard basis words `s ∈ A_p`, `t ∈ A_q`.
    pub fn mul_basis(&self, p: usize, s: usize, q: usize, t: usize) -> Result<SparseRow> {
        let cp = self.component(p)?;
        let cq = self.component(q)?;
        let cpq = self.component(p + q)?;
        let raw = cp.std_words()[s] * word_count(self.gens_len(), q) + cq.std_words()[t];
        Ok(cpq.reduce_raw(raw))
    }

    /// Product of sparse elements of degrees `p` and `q`.
    pub fn mul_sparse(
        &self,
        p: usize,
        a: &[(usize, Scalar)],
        q: usize,
        b: &[(usize, Scalar)],
    ) -> Result<SparseRow> {
        let mut acc = Vec::new();
        for (s, x) in a {
            for (t, y) in b {
                let xy = x * y;
                for (r, v) in self.mul_basis(p, *s, q, *t)? {
                    acc.push((r, &xy * &v));
                }
            }
        }
        Ok(normalize_row(acc))
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let n = a.degree + b.degree;
        let row = self.mul_sparse(a.degree, &a.to_sparse(), b.degree, &b.to_sparse())?;
        Ok(AlgebraElement::from_sparse(
            self.field(),
            n,
            self.dim(n)?,
            &row,
        ))
    }

    pub fn render(&self, a: &AlgebraElement) -> Result<String> {
        Ok(self.to_tensor(a)?.render(self.pres.gens()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quantum_plane(q: i64) -> Algebra {
        let f = Field::Rational;
        let gens = GeneratorSet::new(["x", "y"]).unwrap();
        let r = Tensor::from_terms(f, 2, [(vec![0, 1], f.one()), (vec![1, 0], f.from_i64(-q))])
            .unwrap();
        Algebra::new(Presentation::from_tensors(gens, 2, f, &[r]).unwrap(), 6)
    }

    #[test]
    fn quantum_plane_dims() {
        let a = quantum_plane(2);
        assert_eq!(a.hilbert_dims(4).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(a.ideal_component(3).unwrap().dim(), 4);
        assert_eq!(a.ideal_component(1).unwrap().dim(), 0);
        assert!(a.component(7).is_err());
    }

    #[test]
    fn xy_reduces_onto_yx() {
        let a = quantum_plane(2);
        let f = a.field();
        let nf = a.normal_form(&Tensor::word(f, vec![0, 1])).unwrap();
        let yx = a.normal_form(&Tensor::word(f, vec![1, 0])).unwrap();
        assert_eq!(nf, yx.scale(&f.from_i64(2)));
        assert_eq!(a.render(&nf).unwrap(), "2*y*x");
    }

    #[test]
    fn cubic_and_free_dims() {
        let f = Field::Rational;
        let gens = GeneratorSet::new(["x"]).unwrap();
        let cubic =
            Presentation::from_tensors(gens, 3, f, &[Tensor::word(f, vec![0, 0, 0])]).unwrap();
        assert_eq!(
            Algebra::new(cubic, 4).hilbert_dims(4).unwrap(),
            vec![1, 1, 1, 0, 0]
        );
        let free = Presentation::free(GeneratorSet::new(["x", "y"]).unwrap(), 2, f).unwrap();
        assert_eq!(
            Algebra::new(free, 3).hilbert_dims(3).unwrap(),
            vec![1, 2, 4, 8]
        );
    }
}
