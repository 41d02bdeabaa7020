//! Words and tensors over a generator set.
//!
//! Coordinates on `V^{⊗n}` are indexed by words in degree-lexicographic
//! order: a word `w_0 … w_{n-1}` has raw index `Σ w_t g^{n-1-t}` where `g`
//! is the number of generators, so the first letter is most significant.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactlin::sparse::SparseRow;
use crate::exactlin::{Field, Matrix, Scalar};

/// Ordered, duplicate-free generator names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<GeneratorSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::BadGenerator(String::new()));
        }
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() || names[..k].contains(n) {
                return Err(Error::BadGenerator(n.clone()));
            }
        }
        Ok(GeneratorSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The pair alphabet `V × W`, row-major with `V` outer.
    pub fn pair(&self, other: &GeneratorSet) -> GeneratorSet {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for v in &self.names {
            for w in &other.names {
                names.push(format!("({v},{w})"));
            }
        }
        GeneratorSet { names }
    }

    /// Dual generators, named by appending `^`.
    pub fn dual(&self) -> GeneratorSet {
        GeneratorSet {
            names: self.names.iter().map(|n| format!("{n}^")).collect(),
        }
    }

    /// `x*y*x`; the empty word renders as `1`.
    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

pub type Word = Vec<usize>;

pub fn word_count(g: usize, n: usize) -> usize {
    g.pow(n as u32)
}

pub fn word_index(w: &[usize], g: usize) -> usize {
    w.iter().fold(0, |acc, &c| acc * g + c)
}

pub fn index_word(mut idx: usize, n: usize, g: usize) -> Word {
    let mut w = vec![0; n];
    for t in (0..n).rev() {
        w[t] = idx % g;
        idx /= g;
    }
    w
}

/// A homogeneous element of `V^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    field: Field,
    degree: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl Tensor {
    pub fn zero(field: Field, degree: usize) -> Tensor {
        Tensor {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(field: Field, w: Word) -> Tensor {
        let mut t = Tensor::zero(field, w.len());
        t.terms.insert(w, field.one());
        t
    }

    pub fn from_terms(
        field: Field,
        degree: usize,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Tensor> {
        let mut t = Tensor::zero(field, degree);
        for (w, c) in terms {
            if w.len() != degree {
                return Err(Error::DegreeMismatch(degree, w.len()));
            }
            t.add_term(w, c);
        }
        Ok(t)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        debug_assert_eq!(w.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[usize]) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect()
        };
        Tensor {
            field: self.field,
            degree: self.degree,
            terms,
        }
    }

    pub fn to_dense(&self, g: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); word_count(g, self.degree)];
        for (w, c) in &self.terms {
            v[word_index(w, g)] = c.clone();
        }
        v
    }

    pub fn to_sparse(&self, g: usize) -> SparseRow {
        // BTreeMap order on equal-length words is the raw index order.
        self.terms
            .iter()
            .map(|(w, c)| (word_index(w, g), c.clone()))
            .collect()
    }

    pub fn from_sparse(field: Field, degree: usize, g: usize, row: &[(usize, Scalar)]) -> Tensor {
        let terms = row
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (index_word(*i, degree, g), c.clone()))
            .collect();
        Tensor {
            field,
            degree,
            terms,
        }
    }

    pub fn from_dense(field: Field, degree: usize, g: usize, v: &[Scalar]) -> Tensor {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (index_word(i, degree, g), c.clone()))
            .collect();
        Tensor {
            field,
            degree,
            terms,
        }
    }

    /// `x*y - 2*y*x`, or `0`.
    pub fn render(&self, gens: &GeneratorSet) -> String {
        render_terms(
            self.terms
                .iter()
                .map(|(w, c)| (gens.render_word(w), c.clone())),
        )
    }
}

/// Renders `(monomial, coefficient)` pairs as a signed sum.
pub fn render_terms(terms: impl IntoIterator<Item = (String, Scalar)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { -&c } else { c };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono == "1" {
            let _ = write!(out, "{mag}");
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            let _ = write!(out, "{mag}*{mono}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Interleaves `v_1…v_m ⊗ w_1…w_m` into `(v_1,w_1)…(v_m,w_m)`.
pub fn shuffle(a: &Tensor, b: &Tensor, w_dim: usize) -> Result<Tensor> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree, b.degree));
    }
    let mut out = Tensor::zero(a.field, a.degree);
    for (va, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let w = va.iter().zip(wb).map(|(&v, &w)| v * w_dim + w).collect();
            out.add_term(w, ca * cb);
        }
    }
    Ok(out)
}

/// Applies `f_0 ⊗ … ⊗ f_{n-1}` to a degree-`n` tensor.
pub fn apply_tensor_of_maps(maps: &[Matrix], t: &Tensor) -> Result<Tensor> {
    if maps.len() != t.degree {
        return Err(Error::ArityMismatch {
            maps: maps.len(),
            degree: t.degree,
        });
    }
    let g = maps.first().map_or(1, Matrix::rows);
    let kron = KronMap::new(t.field, g, maps.to_vec())?;
    Ok(kron.apply_tensor(t))
}

/// Full contraction `⟨f_1⊗…⊗f_n, a_1⊗…⊗a_n⟩ = Π f_t(a_t)` in the word basis.
pub fn pairing(f: &Tensor, a: &Tensor) -> Result<Scalar> {
    if f.degree != a.degree {
        return Err(Error::DegreeMismatch(f.degree, a.degree));
    }
    let mut acc = f.field.zero();
    for (w, c) in &f.terms {
        if let Some(d) = a.terms.get(w) {
            acc = &acc + &(c * d);
        }
    }
    Ok(acc)
}

/// A map on `V^{⊗n}` of the form `f_0 ⊗ … ⊗ f_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KronMap {
    field: Field,
    g: usize,
    slots: Vec<Matrix>,
}

impl KronMap {
    pub fn new(field: Field, g: usize, slots: Vec<Matrix>) -> Result<KronMap> {
        if let Some(bad) = slots.iter().find(|m| m.rows() != g || m.cols() != g) {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: bad.cols(),
            });
        }
        if slots.iter().any(|m| m.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(KronMap { field, g, slots })
    }

    pub fn identity(field: Field, g: usize, n: usize) -> KronMap {
        KronMap {
            field,
            g,
            slots: vec![Matrix::identity(field, g); n],
        }
    }

    pub fn degree(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Matrix] {
        &self.slots
    }

    /// Prepends a slot.
    pub fn cons(head: Matrix, tail: &KronMap) -> KronMap {
        let mut slots = Vec::with_capacity(tail.slots.len() + 1);
        slots.push(head);
        slots.extend(tail.slots.iter().cloned());
        KronMap {
            field: tail.field,
            g: tail.g,
            slots,
        }
    }

    /// `self ∘ other`, computed slot by slot.
    pub fn compose(&self, other: &KronMap) -> KronMap {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing maps of different degrees"
        );
        KronMap {
            field: self.field,
            g: self.g,
            slots: self
                .slots
                .iter()
                .zip(&other.slots)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// Image of a basis word, as raw-indexed coordinates sorted by index.
    pub fn apply_word(&self, w: &[usize]) -> SparseRow {
        assert_eq!(w.len(), self.degree());
        let g = self.g;
        let mut acc: Vec<(usize, Scalar)> = vec![(0, self.field.one())];
        for (slot, &c) in self.slots.iter().zip(w) {
            let col: Vec<(usize, Scalar)> = (0..g)
                .filter_map(|r| Some((r, slot.get(r, c).clone())).filter(|(_, v)| !v.is_zero()))
                .collect();
            let mut next = Vec::with_capacity(acc.len() * col.len());
            for (idx, v) in &acc {
                for (r, x) in &col {
                    next.push((idx * g + r, v * x));
                }
            }
            acc = next;
        }
        acc.sort_by_key(|(i, _)| *i);
        acc
    }

    /// Matrix entry at (row word, column word).
    pub fn entry(&self, row: &[usize], col: &[usize]) -> Scalar {
        let mut acc = self.field.one();
        for ((slot, &r), &c) in self.slots.iter().zip(row).zip(col) {
            acc = &acc * slot.get(r, c);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn apply_tensor(&self, t: &Tensor) -> Tensor {
        let g = self.g;
        let mut out = Tensor::zero(t.field, t.degree);
        for (w, c) in &t.terms {
            for (idx, v) in self.apply_word(w) {
                out.add_term(index_word(idx, t.degree, g), c * &v);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix {
        let mut acc = Matrix::identity(self.field, 1);
        for s in &self.slots {
            acc = acc.kron(s);
        }
        acc
    }
}
