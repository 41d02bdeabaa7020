//! Koszul duals and dual twisting systems.

use std::sync::Arc;
use std::time::Instant;

use crate::error::Result;
use crate::freetensor::{index_word, word_count};
use crate::homog::{Algebra, Presentation};
use crate::report::Report;
use crate::twist::{check_preserves_r, zhang_twist, TwistingSystem};

/// `A^! = k⟨V^*⟩/(R^⊥)` on the decorated generators.
pub fn koszul_dual(pres: &Presentation) -> Presentation {
    Presentation::new(pres.gens().dual(), pres.m(), pres.relations().annihilator())
        .expect("annihilator lives in the same tensor power")
}

/// `τ_i^! = (τ_i^{-1})^*` and `(τ_i^!)^{-1} = τ_i^*` in degree one.
pub fn dual_twisting_system(sys: &TwistingSystem) -> TwistingSystem {
    sys.map_deg1(sys.dim(), |m, inv| (inv.transpose(), m.transpose()))
}

/// `⟨τ_i^!(f), a⟩ = ⟨f, τ_i^{-1}(a)⟩` and `⟨(τ_i^!)^{-1}(f), a⟩ = ⟨f, τ_i(a)⟩`
/// on all word pairs of degree at most `d`.
pub fn verify_dual_pairing(sys: &TwistingSystem, d: usize) -> Report {
    let dual = dual_twisting_system(sys);
    let g = sys.dim();
    let mut rep = Report::new();
    let mut skipped = Vec::new();
    for (name, fwd_dual) in [("dual-pairing", true), ("dual-pairing-inverse", false)] {
        let t = Instant::now();
        let mut witness = None;
        'outer: for i in sys.window().indices() {
            for n in 0..=d {
                let pair = if fwd_dual {
                    dual.extend_kron(i, n)
                        .and_then(|a| Ok((a, sys.extend_inverse_kron(i, n)?)))
                } else {
                    dual.extend_inverse_kron(i, n)
                        .and_then(|a| Ok((a, sys.extend_kron(i, n)?)))
                };
                let Ok((lhs, rhs)) = pair else {
                    if fwd_dual {
                        skipped.push((i, n));
                    }
                    continue;
                };
                // ⟨L f, a⟩ = L[a][f] and ⟨f, M a⟩ = M[f][a].
                for f in 0..word_count(g, n) {
                    let fw = index_word(f, n, g);
                    for a in 0..word_count(g, n) {
                        let aw = index_word(a, n, g);
                        if lhs.entry(&aw, &fw) != rhs.entry(&fw, &aw) {
                            witness = Some(format!("i={i},deg={n},f={f},a={a}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let note = (!skipped.is_empty())
            .then(|| format!("{} (index,degree) pairs outside the window", skipped.len()));
        rep.record_with_note(name, witness, note, t);
    }
    rep
}

/// `(R^⊥)^{τ^!} = (R^τ)^⊥`, then Hilbert dims of both sides to degree `d`.
pub fn verify_dual_twist_compat(
    pres: &Presentation,
    sys: &Arc<TwistingSystem>,
    d: usize,
) -> Result<Report> {
    let mut rep = check_preserves_r(sys, pres);
    if !rep.all_passed() {
        rep.skip("dual-twist-subspace", "twisting system does not preserve R");
        rep.skip("dual-twist-hilbert", "twisting system does not preserve R");
        return Ok(rep);
    }
    let t = Instant::now();
    let dual = koszul_dual(pres);
    let dual_sys = Arc::new(dual_twisting_system(sys));
    let lhs = zhang_twist(&dual, dual_sys)?.presentation;
    let rhs = koszul_dual(&zhang_twist(pres, sys.clone())?.presentation);
    let same = lhs.relations() == rhs.relations();
    rep.record(
        "dual-twist-subspace",
        (!same).then(|| "(R^perp)^tau!!=(R^tau)^perp".to_string()),
        t,
    );

    let t = Instant::now();
    let a = Algebra::new(lhs, d).hilbert_dims(d)?;
    let b = Algebra::new(rhs, d).hilbert_dims(d)?;
    let witness = a
        .iter()
        .zip(&b)
        .position(|(x, y)| x != y)
        .map(|n| format!("deg={n},{}!={}", a[n], b[n]));
    rep.record("dual-twist-hilbert", witness, t);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Field, Matrix};
    use crate::freetensor::{GeneratorSet, Tensor};
    use crate::twist::Window;

    fn q() -> Field {
        Field::Rational
    }

    fn plane(c: i64) -> Presentation {
        let gens = GeneratorSet::new(["x", "y"]).unwrap();
        let r = Tensor::from_terms(
            q(),
            2,
            [(vec![0, 1], q().one()), (vec![1, 0], q().from_i64(-c))],
        )
        .unwrap();
        Presentation::from_tensors(gens, 2, q(), &[r]).unwrap()
    }

    #[test]
    fn dual_of_quantum_plane() {
        let d = koszul_dual(&plane(2));
        assert_eq!(d.gens().names(), ["x^", "y^"]);
        assert_eq!(d.relations().dim(), 3);
        assert_eq!(
            Algebra::new(d, 3).hilbert_dims(3).unwrap(),
            vec![1, 2, 1, 0]
        );
    }

    #[test]
    fn dual_degree_one_data() {
        let u = Matrix::from_i64(q(), &[&[1, 1], &[0, 1]]);
        let sys = TwistingSystem::one_parameter(&u, Window::new(0, 3)).unwrap();
        let dual = dual_twisting_system(&sys);
        assert_eq!(
            dual.deg1(1).unwrap(),
            &Matrix::from_i64(q(), &[&[1, 0], &[-1, 1]])
        );
        let diag = Matrix::from_i64(q(), &[&[1, 0], &[0, 3]]);
        let sys = TwistingSystem::one_parameter(&diag, Window::new(0, 3)).unwrap();
        let third = q().from_i64(3).inv().unwrap();
        assert_eq!(
            dual_twisting_system(&sys).deg1(1).unwrap(),
            &Matrix::diagonal(q(), &[q().one(), third])
        );
    }

    #[test]
    fn pairing_and_compat() {
        let diag = Matrix::from_i64(q(), &[&[1, 0], &[0, 3]]);
        let sys = Arc::new(TwistingSystem::one_parameter(&diag, Window::new(0, 6)).unwrap());
        assert!(verify_dual_pairing(&sys, 4).all_passed());
        let rep = verify_dual_twist_compat(&plane(2), &sys, 4).unwrap();
        assert!(rep.all_passed(), "{}", rep.summary());
    }
}
