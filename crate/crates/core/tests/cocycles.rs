use std::sync::Arc;

use zhangtwist::cocycle::{
    bialgebra_cocycle_product, convolve, extend_functionals, functionals_from_twist,
    twist_from_cocycle, verify_functional, verify_main_theorem, winding, Cocycle, Functional, Side,
    TwistingPair,
};
use zhangtwist::exactlin::{Matrix, Scalar};
use zhangtwist::freetensor::{GeneratorSet, Tensor};
use zhangtwist::homog::{Algebra, Presentation};
use zhangtwist::manin::{endr, map_pairs, matrix_column, UniversalBialgebra};
use zhangtwist::random::random_preserving_systems;
use zhangtwist::twist::{verify_axioms, GradedMaps, InducedMaps, TwistingSystem, Window};

mod common;
use common::{cubic, diag_power, fp, plane, plane_over, q, skew3};

fn plane_setup() -> (Arc<UniversalBialgebra>, Arc<TwistingSystem>) {
    (
        Arc::new(endr(&plane(), 4).unwrap()),
        diag_power(q(), &[1, 3], Window::new(0, 6)),
    )
}

fn gen(e: &UniversalBialgebra, name: &str) -> usize {
    e.algebra().presentation().gens().index_of(name).unwrap()
}

fn unit(p: usize) -> Vec<(usize, Scalar)> {
    vec![(p, q().one())]
}

/// `end^r(k⟨x⟩)`: one group-like generator.
fn group_like() -> Arc<UniversalBialgebra> {
    let free = Presentation::free(GeneratorSet::new(["x"]).unwrap(), 2, q()).unwrap();
    Arc::new(endr(&free, 3).unwrap())
}

#[test]
fn convolution_on_group_like_elements() {
    let e = group_like();
    let f = vec![q().from_i64(5)];
    let g = vec![q().from_i64(7)];
    assert_eq!(convolve(&e, 1, &f, &g).unwrap(), vec![q().from_i64(35)]);
    let eps = e.counit(1).unwrap();
    assert_eq!(convolve(&e, 1, &eps, &f).unwrap(), f);
    let w = winding(&e, Side::Right, 1, &f).unwrap();
    assert_eq!(w, Matrix::from_i64(q(), &[&[5]]));
}

#[test]
fn counit_winds_to_the_identity() {
    let (e, _) = plane_setup();
    for n in 0..=3 {
        let eps = e.counit(n).unwrap();
        assert!(winding(&e, Side::Right, n, &eps).unwrap().is_identity());
        assert!(winding(&e, Side::Left, n, &eps).unwrap().is_identity());
    }
}

#[test]
fn identity_system_gives_the_counit_family() {
    let (e, _) = plane_setup();
    let w = Window::new(0, 6);
    let id = InducedMaps::new(
        e.algebra().clone(),
        Arc::new(TwistingSystem::identity(q(), 4, w)),
    );
    let (alpha, rep) = functionals_from_twist(&e, &id, 3).unwrap();
    assert!(rep.all_passed(), "{}", rep.summary());
    let eps = Functional::counit(&e, w, 3).unwrap();
    for (i, n) in alpha.keys() {
        assert_eq!(alpha.get(i, n), eps.get(i, n));
    }
    let (ext, rep) = extend_functionals(&e, &TwistingSystem::identity(q(), 2, w), 3).unwrap();
    assert!(rep.all_passed());
    for (i, n) in ext.keys() {
        assert_eq!(ext.get(i, n), eps.get(i, n));
    }
    let (back, rep) = twist_from_cocycle(&e, &eps, 3).unwrap();
    assert!(rep.all_passed(), "{}", rep.summary());
    for i in back.indices() {
        assert!(back.deg1(i).unwrap().is_identity());
    }
}

#[test]
fn identity_pair_gives_the_trivial_cocycle() {
    let (e, _) = plane_setup();
    let id = Arc::new(TwistingSystem::identity(q(), 2, Window::new(0, 6)));
    let pair = TwistingPair::new(e.clone(), id).unwrap();
    for n in 0..=3 {
        assert!(pair.tau.forward(1, n).unwrap().is_identity());
        assert!(pair.mu.forward(1, n).unwrap().is_identity());
    }
    let c = Cocycle::from_pair(&pair, 2).unwrap();
    for p in 0..=2 {
        let ep = e.counit(p).unwrap();
        for q_deg in 0..=2 {
            let eq = e.counit(q_deg).unwrap();
            for (x, ex) in ep.iter().enumerate() {
                for (y, ey) in eq.iter().enumerate() {
                    assert_eq!(c.sigma(p, &unit(x), q_deg, &unit(y)).unwrap(), ex * ey);
                }
            }
        }
    }
}

#[test]
fn convolution_inverse_and_winding_inverse_to_degree_two() {
    let (e, sys) = plane_setup();
    let pair = TwistingPair::new(e.clone(), sys).unwrap();
    let alpha = pair.alpha(2).unwrap();
    for (i, n) in alpha.keys() {
        let (f, g) = (alpha.get(i, n).unwrap(), alpha.get_inverse(i, n).unwrap());
        assert_eq!(convolve(&e, n, f, g).unwrap(), e.counit(n).unwrap());
        let a = winding(&e, Side::Right, n, f).unwrap();
        let b = winding(&e, Side::Right, n, g).unwrap();
        assert!(a.mul(&b).is_identity());
    }
}

#[test]
fn counit_compatibility_instance() {
    let (e, sys) = plane_setup();
    let pair = TwistingPair::new(e.clone(), sys).unwrap();
    let z22 = gen(&e, "z_2^2");
    let delta = e.delta_table(1).unwrap();
    let (t1, m1) = (
        pair.tau.forward(1, 1).unwrap(),
        pair.mu.forward(1, 1).unwrap(),
    );
    assert_eq!(
        map_pairs(q(), &delta[z22], Some(&t1), Some(&m1)),
        delta[z22]
    );
}

#[test]
fn deformed_product_of_two_generators() {
    let (e, sys) = plane_setup();
    let pair = TwistingPair::new(e.clone(), sys).unwrap();
    let c = Cocycle::from_pair(&pair, 2).unwrap();
    let nu = pair.composed().forward(1, 1).unwrap();
    let z11 = gen(&e, "z_1^1");
    // ν_1 scales z_j^k by λ_j/λ_k: trivial on z_2^2, a factor 3 on z_2^1.
    for (name, factor) in [("z_2^2", 1), ("z_2^1", 3)] {
        let y = gen(&e, name);
        let got = bialgebra_cocycle_product(&c, 1, z11, 1, y).unwrap();
        let plain = e.algebra().mul_basis(1, z11, 1, y).unwrap();
        let scaled: Vec<_> = plain
            .iter()
            .map(|(p, v)| (*p, v * &q().from_i64(factor)))
            .collect();
        assert_eq!(got, scaled, "{name}");
        assert_eq!(
            got,
            e.algebra()
                .mul_sparse(1, &unit(z11), 1, &matrix_column(&nu, y))
                .unwrap()
        );
    }
}

#[test]
fn group_like_product_collapses() {
    let e = group_like();
    let sys = Arc::new(
        TwistingSystem::one_parameter(&Matrix::from_i64(q(), &[&[2]]), Window::new(0, 5)).unwrap(),
    );
    let pair = TwistingPair::new(e.clone(), sys).unwrap();
    let c = Cocycle::from_pair(&pair, 2).unwrap();
    assert_eq!(c.sigma(1, &unit(0), 1, &unit(0)).unwrap(), q().from_i64(2));
    assert_eq!(
        c.sigma_inv(1, &unit(0), 1, &unit(0)).unwrap(),
        q().from_i64(2).inv().unwrap()
    );
    assert_eq!(
        bialgebra_cocycle_product(&c, 1, 0, 1, 0).unwrap(),
        e.algebra().mul_basis(1, 0, 1, 0).unwrap()
    );
}

#[test]
fn random_functionals_over_f7_give_twisting_systems() {
    let f = fp(7);
    let pres = plane_over(f, 2);
    let e = Arc::new(endr(&pres, 4).unwrap());
    let w = Window::new(0, 6);
    let a = Arc::new(Algebra::new(pres.clone(), 4));
    for seed_sys in random_preserving_systems(&pres, w, 5, 100, 21).unwrap() {
        let (alpha, rep) = extend_functionals(&e, &seed_sys, 3).unwrap();
        assert!(rep.all_passed(), "{}", rep.summary());
        assert!(verify_functional(&e, &alpha, 3).unwrap().all_passed());
        let (tau, rep) = twist_from_cocycle(&e, &alpha, 3).unwrap();
        assert!(rep.all_passed(), "{}", rep.summary());
        let maps = InducedMaps::new(a.clone(), Arc::new(tau));
        let rep = verify_axioms(&maps, &a, 4).unwrap();
        assert!(rep.all_passed(), "{}", rep.summary());
    }
}

#[test]
fn functional_failing_on_relations_is_reported() {
    let (e, _) = plane_setup();
    // A unipotent seed does not annihilate the bullet relations of the plane.
    let u = Matrix::from_i64(q(), &[&[1, 1], &[0, 1]]);
    let seed = TwistingSystem::one_parameter(&u, Window::new(0, 6)).unwrap();
    let (_, rep) = extend_functionals(&e, &seed, 2).unwrap();
    assert!(!rep.all_passed());
    assert!(rep
        .get("functional-annihilates-R")
        .unwrap()
        .witness
        .is_some());
}

#[test]
fn tensor_helper_is_consistent_with_words() {
    let (e, _) = plane_setup();
    let z = gen(&e, "z_1^2");
    let t = Tensor::word(q(), vec![z]);
    assert_eq!(e.algebra().normal_form(&t).unwrap().to_sparse(), unit(z));
}

#[test]
fn pair_components_on_an_off_diagonal_generator() {
    let (e, sys) = plane_setup();
    let pair = TwistingPair::new(e.clone(), sys).unwrap();
    let z21 = gen(&e, "z_2^1");
    let tau = pair.tau.forward(1, 1).unwrap();
    let mu = pair.mu.forward(1, 1).unwrap();
    assert_eq!(matrix_column(&tau, z21), vec![(z21, q().from_i64(3))]);
    assert_eq!(matrix_column(&mu, z21), unit(z21));
}

#[test]
fn main_theorem_on_cubic_and_skew_examples() {
    let w = Window::new(0, 6);
    let rep = verify_main_theorem(&cubic(), &diag_power(q(), &[2], w), 3).unwrap();
    assert!(rep.all_passed(), "{}", rep.summary());
    let f = fp(11);
    let rep = verify_main_theorem(&skew3(f), &diag_power(f, &[1, 2, 4], w), 2).unwrap();
    assert!(rep.all_passed(), "{}", rep.summary());
}
