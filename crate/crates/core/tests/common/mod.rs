#![allow(dead_code)]

use std::sync::Arc;

use zhangtwist::exactlin::{Field, Matrix};
use zhangtwist::freetensor::{GeneratorSet, Tensor};
use zhangtwist::homog::Presentation;
use zhangtwist::twist::{TwistingSystem, Window};

pub fn q() -> Field {
    Field::Rational
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// `xy - c·yx`
pub fn plane_over(f: Field, c: i64) -> Presentation {
    let gens = GeneratorSet::new(["x", "y"]).unwrap();
    let r =
        Tensor::from_terms(f, 2, [(vec![0, 1], f.one()), (vec![1, 0], f.from_i64(-c))]).unwrap();
    Presentation::from_tensors(gens, 2, f, &[r]).unwrap()
}

pub fn plane() -> Presentation {
    plane_over(q(), 2)
}

pub fn cubic() -> Presentation {
    let gens = GeneratorSet::new(["x"]).unwrap();
    let r = Tensor::from_terms(q(), 3, [(vec![0, 0, 0], q().one())]).unwrap();
    Presentation::from_tensors(gens, 3, q(), &[r]).unwrap()
}

pub fn skew3(f: Field) -> Presentation {
    let gens = GeneratorSet::new(["x", "y", "z"]).unwrap();
    let rel = |a: usize, b: usize, c: i64| {
        Tensor::from_terms(f, 2, [(vec![a, b], f.one()), (vec![b, a], f.from_i64(-c))]).unwrap()
    };
    Presentation::from_tensors(gens, 2, f, &[rel(0, 1, 2), rel(1, 2, 3), rel(2, 0, 5)]).unwrap()
}

pub fn diag_power(f: Field, entries: &[i64], window: Window) -> Arc<TwistingSystem> {
    let d: Vec<_> = entries.iter().map(|&v| f.from_i64(v)).collect();
    Arc::new(TwistingSystem::one_parameter(&Matrix::diagonal(f, &d), window).unwrap())
}
