use zhangtwist::exactlin::{kernel, rref, Field, Matrix, Subspace};
use zhangtwist::freetensor::{pairing, shuffle, GeneratorSet, Tensor};

mod common;
use common::q;

#[test]
fn rref_trivial_cases() {
    let (z, p) = rref(&Matrix::zeros(q(), 2, 2));
    assert!(z.is_zero() || z.rows() == 0);
    assert!(p.is_empty());
    let (i, p) = rref(&Matrix::identity(q(), 2));
    assert!(i.is_identity());
    assert_eq!(p, [0, 1]);
}

#[test]
fn kernel_trivial_cases() {
    assert_eq!(kernel(&Matrix::identity(q(), 3)).dim(), 0);
    assert_eq!(kernel(&Matrix::zeros(q(), 1, 3)).dim(), 3);
}

#[test]
fn subspace_identities() {
    let s = Subspace::span(q(), 3, vec![vec![q().one(), q().from_i64(2), q().zero()]]);
    assert_eq!(s.sum(&Subspace::zero(q(), 3)).unwrap(), s);
    assert_eq!(s.intersection(&s).unwrap(), s);
    assert_eq!(Subspace::full(q(), 4).annihilator(), Subspace::zero(q(), 4));
    assert_eq!(Subspace::zero(q(), 4).annihilator(), Subspace::full(q(), 4));
}

#[test]
fn modular_annihilator_matches_rational_shape() {
    let f = Field::prime(7).unwrap();
    let r = Subspace::span(
        f,
        4,
        vec![[0, 1, -2, 0].iter().map(|&v| f.from_i64(v)).collect()],
    );
    let ann = r.annihilator();
    assert_eq!(ann.dim(), 3);
    for v in ann.basis_vectors() {
        let dot = v
            .iter()
            .zip([0, 1, -2, 0])
            .fold(f.zero(), |acc, (a, b)| &acc + &(a * &f.from_i64(b)));
        assert!(dot.is_zero());
    }
}

#[test]
fn shuffle_of_degree_one_and_bilinearity() {
    let t = |w: Vec<usize>| Tensor::word(q(), w);
    assert_eq!(shuffle(&t(vec![1]), &t(vec![0]), 2).unwrap(), t(vec![2]));
    // (x⊗y − 2y⊗x) ⊗ (u⊗v) with pair index (a,b) ↦ 2a+b
    let r = Tensor::from_terms(
        q(),
        2,
        [(vec![0, 1], q().one()), (vec![1, 0], q().from_i64(-2))],
    )
    .unwrap();
    let got = shuffle(&r, &t(vec![0, 1]), 2).unwrap();
    let expect = Tensor::from_terms(
        q(),
        2,
        [(vec![0, 3], q().one()), (vec![2, 1], q().from_i64(-2))],
    )
    .unwrap();
    assert_eq!(got, expect);
}

#[test]
fn pairing_of_dual_relation() {
    let gens = GeneratorSet::new(["x", "y"]).unwrap();
    let f = Tensor::from_terms(
        q(),
        2,
        [(vec![0, 1], q().from_i64(2)), (vec![1, 0], q().one())],
    )
    .unwrap();
    let a = Tensor::from_terms(
        q(),
        2,
        [(vec![0, 1], q().one()), (vec![1, 0], q().from_i64(-2))],
    )
    .unwrap();
    assert!(pairing(&f, &a).unwrap().is_zero());
    assert_eq!(f.render(&gens.dual()), "2*x^*y^ + y^*x^");
}
