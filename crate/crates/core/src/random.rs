//! Seeded random diagonal twisting systems for property runs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactlin::{Field, Matrix, Scalar};
use crate::homog::Presentation;
use crate::twist::{preserves_r, TwistingSystem, Window};

fn nonzero(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
        Field::Rational => {
            let v = rng.gen_range(1..=9i64);
            field.from_i64(if rng.gen_bool(0.5) { v } else { -v })
        }
    }
}

/// `τ_i = c_i·φ^i` with `φ` a random invertible diagonal matrix, `c_0 = 1`
/// and the other `c_i` random nonzero scalars.
pub fn random_diagonal_system(
    field: Field,
    g: usize,
    window: Window,
    rng: &mut ChaCha8Rng,
) -> Result<TwistingSystem> {
    let phi: Vec<Scalar> = (0..g).map(|_| nonzero(field, rng)).collect();
    let mut maps = BTreeMap::new();
    for i in window.indices() {
        let c = if i == 0 {
            field.one()
        } else {
            nonzero(field, rng)
        };
        let diag: Vec<Scalar> = phi
            .iter()
            .map(|d| &c * &d.pow(i).expect("nonzero entries are invertible"))
            .collect();
        maps.insert(i, Matrix::diagonal(field, &diag));
    }
    TwistingSystem::explicit(field, g, window, maps)
}

/// Up to `count` random diagonal systems that preserve the relations of
/// `pres`, drawing at most `attempts` candidates from `seed`.
pub fn random_preserving_systems(
    pres: &Presentation,
    window: Window,
    count: usize,
    attempts: usize,
    seed: u64,
) -> Result<Vec<TwistingSystem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let sys = random_diagonal_system(pres.field(), pres.gens().len(), window, &mut rng)?;
        if preserves_r(&sys, pres) {
            out.push(sys);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freetensor::{GeneratorSet, Tensor};

    #[test]
    fn seeded_and_preserving() {
        let f = Field::prime(7).unwrap();
        let gens = GeneratorSet::new(["x", "y"]).unwrap();
        let r = Tensor::from_terms(f, 2, [(vec![0, 1], f.one()), (vec![1, 0], f.from_i64(-2))])
            .unwrap();
        let pres = Presentation::from_tensors(gens, 2, f, &[r]).unwrap();
        let a = random_preserving_systems(&pres, Window::new(0, 5), 5, 50, 9).unwrap();
        let b = random_preserving_systems(&pres, Window::new(0, 5), 5, 50, 9).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a == b);
    }
}
