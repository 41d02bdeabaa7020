//! Text presentation of the Hopf envelope `H(end^r(A))` truncated at a level.
//!
//! Level `k` holds the copies `S^k(z)` of the generators. Each level carries
//! `S^k(R)` and the two antipode families on its generators; the antipode
//! relations of level `k` mention `S^{k+1}` letters, which belong to level
//! `k + 1` even when that level is past the cap.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use crate::exactlin::{Field, Scalar};
use crate::freetensor::render_terms;
use crate::manin::UniversalBialgebra;
use crate::report::Report;

/// `S^level(gen)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub level: usize,
    pub gen: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    /// `S^k(R)`
    Relation,
    /// `M∘(id⊗S)∘Δ − u∘ε` on `V^(k)`
    AntipodeRight,
    /// `M∘(S⊗id)∘Δ − u∘ε` on `V^(k)`
    AntipodeLeft,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Relation => "relation",
            Family::AntipodeRight => "antipode-right",
            Family::AntipodeLeft => "antipode-left",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeRelation {
    pub family: Family,
    pub level: usize,
    pub terms: BTreeMap<Vec<Letter>, Scalar>,
    pub constant: Scalar,
}

#[derive(Clone, Debug)]
pub struct EnvelopePresentation {
    pub field: Field,
    pub names: Vec<String>,
    pub levels: usize,
    pub relations: Vec<EnvelopeRelation>,
    eps: Vec<Scalar>,
}

fn add(terms: &mut BTreeMap<Vec<Letter>, Scalar>, w: Vec<Letter>, c: Scalar) {
    let next = match terms.remove(&w) {
        Some(old) => &old + &c,
        None => c,
    };
    if !next.is_zero() {
        terms.insert(w, next);
    }
}

/// Emits levels `0..=k_max` of the envelope presentation of `e`.
pub fn emit_envelope(e: &UniversalBialgebra, k_max: usize) -> EnvelopePresentation {
    let field = e.field();
    let pres = e.algebra().presentation();
    let g = pres.gens().len();
    let rels = pres.relation_tensors();
    let mut out = Vec::new();
    for level in 0..=k_max {
        let odd = level % 2 == 1;
        for r in &rels {
            let mut terms = BTreeMap::new();
            for (w, c) in r.terms() {
                let mut letters: Vec<Letter> = w.iter().map(|&gen| Letter { level, gen }).collect();
                if odd {
                    letters.reverse();
                }
                add(&mut terms, letters, c.clone());
            }
            out.push(EnvelopeRelation {
                family: Family::Relation,
                level,
                terms,
                constant: field.zero(),
            });
        }
        for (family, s_left) in [(Family::AntipodeRight, false), (Family::AntipodeLeft, true)] {
            for p in 0..g {
                // Δ∘S^k = (S^k⊗S^k)∘flip^k∘Δ
                let mut terms = BTreeMap::new();
                for (a, b) in e.delta1(p) {
                    let (a, b) = if odd { (b, a) } else { (a, b) };
                    let (la, lb) = if s_left {
                        (level + 1, level)
                    } else {
                        (level, level + 1)
                    };
                    add(
                        &mut terms,
                        vec![Letter { level: la, gen: a }, Letter { level: lb, gen: b }],
                        field.one(),
                    );
                }
                out.push(EnvelopeRelation {
                    family,
                    level,
                    terms,
                    constant: -&e.eps1(p),
                });
            }
        }
    }
    EnvelopePresentation {
        field,
        names: pres.gens().names().to_vec(),
        levels: k_max,
        relations: out,
        eps: (0..g).map(|p| e.eps1(p)).collect(),
    }
}

impl EnvelopePresentation {
    /// `(K+1)·n²`.
    pub fn generator_count(&self) -> usize {
        (self.levels + 1) * self.names.len()
    }

    pub fn render_letter(&self, l: Letter) -> String {
        let name = &self.names[l.gen];
        match l.level {
            0 => name.clone(),
            1 => format!("S({name})"),
            k => format!("S^{k}({name})"),
        }
    }

    pub fn render_relation(&self, r: &EnvelopeRelation) -> String {
        let mut terms: Vec<(String, Scalar)> = r
            .terms
            .iter()
            .map(|(w, c)| {
                (
                    w.iter()
                        .map(|&l| self.render_letter(l))
                        .collect::<Vec<_>>()
                        .join("*"),
                    c.clone(),
                )
            })
            .collect();
        terms.push(("1".into(), r.constant.clone()));
        render_terms(terms)
    }

    /// Relation counts per level, keyed by family.
    pub fn counts(&self) -> BTreeMap<usize, BTreeMap<Family, usize>> {
        let mut out: BTreeMap<usize, BTreeMap<Family, usize>> = BTreeMap::new();
        for r in &self.relations {
            *out.entry(r.level).or_default().entry(r.family).or_default() += 1;
        }
        out
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "levels {}", self.levels);
        let _ = writeln!(out, "generators {}", self.generator_count());
        for level in 0..=self.levels {
            let names: Vec<String> = (0..self.names.len())
                .map(|gen| self.render_letter(Letter { level, gen }))
                .collect();
            let _ = writeln!(out, "gens {level} {}", names.join(" "));
        }
        for r in &self.relations {
            let _ = writeln!(
                out,
                "rel {} {} {}",
                r.level,
                r.family.label(),
                self.render_relation(r)
            );
        }
        for (level, fams) in self.counts() {
            let parts: Vec<String> = fams
                .iter()
                .map(|(f, c)| format!("{}={c}", f.label()))
                .collect();
            let _ = writeln!(out, "count {level} {}", parts.join(" "));
        }
        out
    }

    /// `ε∘S = ε`, so every emitted relation must vanish under `ε`.
    pub fn verify_counit(&self) -> Report {
        let t = Instant::now();
        let mut witness = None;
        for (k, r) in self.relations.iter().enumerate() {
            let mut acc = r.constant.clone();
            for (w, c) in &r.terms {
                acc = &acc + &w.iter().fold(c.clone(), |v, l| &v * &self.eps[l.gen]);
            }
            if !acc.is_zero() {
                witness = Some(format!("rel[{k}]={}", self.render_relation(r)));
                break;
            }
        }
        let mut rep = Report::new();
        rep.record("envelope-counit", witness, t);
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freetensor::{GeneratorSet, Tensor};
    use crate::homog::Presentation;
    use crate::manin::endr;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn group_like_generator() {
        let pres = Presentation::free(GeneratorSet::new(["x"]).unwrap(), 2, q()).unwrap();
        let env = emit_envelope(&endr(&pres, 2).unwrap(), 0);
        let lines: Vec<String> = env
            .relations
            .iter()
            .map(|r| env.render_relation(r))
            .collect();
        assert_eq!(lines, ["z_1^1*S(z_1^1) - 1", "S(z_1^1)*z_1^1 - 1"]);
    }

    #[test]
    fn quantum_plane_levels() {
        let gens = GeneratorSet::new(["x", "y"]).unwrap();
        let r = Tensor::from_terms(
            q(),
            2,
            [(vec![0, 1], q().one()), (vec![1, 0], q().from_i64(-2))],
        )
        .unwrap();
        let pres = Presentation::from_tensors(gens, 2, q(), &[r]).unwrap();
        let env = emit_envelope(&endr(&pres, 2).unwrap(), 1);
        assert_eq!(env.generator_count(), 8);
        for fams in env.counts().values() {
            assert_eq!(fams.values().copied().collect::<Vec<_>>(), [3, 4, 4]);
        }
        let first = env
            .relations
            .iter()
            .find(|r| r.family == Family::AntipodeRight && r.level == 0)
            .unwrap();
        assert_eq!(
            env.render_relation(first),
            "z_1^1*S(z_1^1) + z_2^1*S(z_1^2) - 1"
        );
        assert!(env.verify_counit().all_passed());
        assert_eq!(
            env.dump(),
            emit_envelope(&endr(&pres, 2).unwrap(), 1).dump()
        );
    }
}
