use std::sync::Arc;

use zhangtwist::exactlin::{Matrix, Subspace};
use zhangtwist::freetensor::{GeneratorSet, Tensor};
use zhangtwist::homog::{Algebra, Presentation};
use zhangtwist::koszul::{koszul_dual, verify_dual_pairing, verify_dual_twist_compat};
use zhangtwist::report::Status;
use zhangtwist::twist::{
    check_preserves_r, twisted_product, verify_axioms, zhang_twist, InducedMaps, ScaledMaps,
    TwistingSystem, Window,
};

mod common;
use common::{cubic, diag_power, plane, q};

fn word(alg: &Algebra, w: Vec<usize>) -> zhangtwist::homog::AlgebraElement {
    alg.normal_form(&Tensor::word(q(), w)).unwrap()
}

#[test]
fn ideal_components() {
    let a = Algebra::new(plane(), 4);
    assert_eq!(a.component(1).unwrap().ideal_dim(), 0);
    assert_eq!(a.component(2).unwrap().ideal_dim(), 1);
    assert_eq!(a.component(3).unwrap().ideal_dim(), 4);
    assert_eq!(a.dim(3).unwrap(), 4);
    assert_eq!(a.hilbert_dims(4).unwrap(), [1, 2, 3, 4, 5]);
    assert_eq!(
        Algebra::new(cubic(), 4).hilbert_dims(4).unwrap(),
        [1, 1, 1, 0, 0]
    );
}

#[test]
fn products_in_the_quantum_plane() {
    let a = Algebra::new(plane(), 4);
    let (x, y) = (word(&a, vec![0]), word(&a, vec![1]));
    let xy = a.multiply(&x, &y).unwrap();
    let yx = a.multiply(&y, &x).unwrap();
    assert_eq!(xy, yx.scale(&q().from_i64(2)));
    assert_eq!(a.multiply(&a.one(), &x).unwrap(), x);
    let left = a.multiply(&x, &yx).unwrap();
    let right = a.multiply(&xy, &x).unwrap();
    assert_eq!(left, right);
    assert_eq!(a.render(&xy).unwrap(), "2*y*x");
}

#[test]
fn zhang_twist_regressions() {
    let w = Window::new(0, 6);
    let sys = diag_power(q(), &[1, 3], w);
    let poly = {
        let r = Tensor::from_terms(q(), 2, [(vec![0, 1], q().one()), (vec![1, 0], -&q().one())])
            .unwrap();
        Presentation::from_tensors(GeneratorSet::new(["x", "y"]).unwrap(), 2, q(), &[r]).unwrap()
    };
    let expect = |c: i64| {
        Subspace::span(
            q(),
            4,
            vec![vec![q().zero(), q().one(), q().from_i64(-c), q().zero()]],
        )
    };
    assert_eq!(
        zhang_twist(&poly, sys.clone())
            .unwrap()
            .presentation
            .relations(),
        &expect(3)
    );
    assert_eq!(
        zhang_twist(&plane(), sys.clone())
            .unwrap()
            .presentation
            .relations(),
        &expect(6)
    );
    let id = Arc::new(TwistingSystem::identity(q(), 2, w));
    assert_eq!(zhang_twist(&plane(), id).unwrap().presentation, plane());
}

#[test]
fn twisted_product_witnesses_the_twisted_relation() {
    let a = Arc::new(Algebra::new(plane(), 4));
    let maps = InducedMaps::new(a.clone(), diag_power(q(), &[1, 3], Window::new(0, 6)));
    let (x, y) = (word(&a, vec![0]), word(&a, vec![1]));
    let xy = twisted_product(&a, &maps, &x, &y).unwrap();
    let yx = twisted_product(&a, &maps, &y, &x).unwrap();
    assert!(xy.add(&yx.scale(&q().from_i64(-6))).is_zero());
    assert_eq!(twisted_product(&a, &maps, &a.one(), &y).unwrap(), y);
}

#[test]
fn identity_and_low_degree_extensions() {
    let sys = diag_power(q(), &[1, 3], Window::new(0, 6));
    for n in 0..4 {
        assert!(sys.extend(0, n).unwrap().is_identity());
    }
    assert_eq!(&sys.extend(1, 1).unwrap(), sys.deg1(1).unwrap());
    let id = TwistingSystem::identity(q(), 2, Window::new(0, 4));
    assert!(check_preserves_r(&id, &plane()).all_passed());
}

#[test]
fn corrupted_second_map_breaks_the_first_axiom() {
    let a = Arc::new(Algebra::new(plane(), 4));
    let good = InducedMaps::new(a.clone(), diag_power(q(), &[1, 3], Window::new(0, 6)));
    assert!(verify_axioms(&good, &a, 4).unwrap().all_passed());
    let bad = ScaledMaps {
        inner: good,
        index: 2,
        factor: q().from_i64(2),
    };
    let rep = verify_axioms(&bad, &a, 4).unwrap();
    assert_eq!(
        rep.status("axiom-1"),
        Some(Status::Fail),
        "{}",
        rep.summary()
    );
    assert!(rep.get("axiom-1").unwrap().witness.is_some());
}

#[test]
fn duals_of_free_and_cubic_algebras() {
    let free = Presentation::free(GeneratorSet::new(["a", "b"]).unwrap(), 2, q()).unwrap();
    let d = koszul_dual(&free);
    assert_eq!(d.relations().dim(), 4);
    assert_eq!(Algebra::new(d, 3).hilbert_dims(3).unwrap(), [1, 2, 0, 0]);
    let dc = koszul_dual(&cubic());
    assert_eq!(dc.relations().dim(), 0);
    assert_eq!(
        Algebra::new(dc, 4).hilbert_dims(4).unwrap(),
        [1, 1, 1, 1, 1]
    );
}

#[test]
fn dual_compatibility_of_the_examples() {
    let sys = diag_power(q(), &[1, 3], Window::new(0, 7));
    assert!(verify_dual_pairing(&sys, 4).all_passed());
    let rep = verify_dual_twist_compat(&plane(), &sys, 5).unwrap();
    assert!(rep.all_passed(), "{}", rep.summary());
    let twisted = zhang_twist(&plane(), sys.clone()).unwrap().presentation;
    let expected = twisted.relations().annihilator();
    let dual_twisted = zhang_twist(
        &koszul_dual(&plane()),
        Arc::new(zhangtwist::koszul::dual_twisting_system(&sys)),
    )
    .unwrap()
    .presentation;
    assert_eq!(dual_twisted.relations(), &expected);
    let c = Arc::new(
        TwistingSystem::one_parameter(&Matrix::from_i64(q(), &[&[2]]), Window::new(0, 8)).unwrap(),
    );
    let rep = verify_dual_twist_compat(&cubic(), &c, 5).unwrap();
    assert!(rep.all_passed(), "{}", rep.summary());
}
