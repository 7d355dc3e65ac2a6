use hechain::scalar::{Scalar, Var};
use hechain::{HeckeAlgebra, HeckeElement, Normalization, Sign};

fn q() -> Scalar {
    Scalar::q()
}

fn x() -> Scalar {
    Scalar::var(Var::X)
}

fn y() -> Scalar {
    Scalar::var(Var::Y)
}

#[test]
fn quadratic_and_braid_relations() {
    let h = HeckeAlgebra::generic(4);
    let s1 = h.sigma(1);
    let sq = h.mul(&s1, &s1);
    assert_eq!(sq, &h.one() + &s1.scale(h.lambda()));
    assert_eq!(h.word(&[1, 2, 1]), h.word(&[2, 1, 2]));
    assert_eq!(h.word(&[1, 3]), h.word(&[3, 1]));
    assert_eq!(h.word(&[1, -1]), h.one());
}

#[test]
fn baxterized_product_rule() {
    let h = HeckeAlgebra::generic(3);
    let lhs = h.mul(&h.sigma_x(1, &x()), &h.sigma_x(1, &y()));
    let rhs = &h.sigma_x(1, &(x() * y())).scale(h.lambda()) + &h.scalar((Scalar::one() - x()) * (Scalar::one() - y()));
    assert_eq!(lhs, rhs);
    let unit = h.mul(&h.e_plus(1, &x()), &h.e_plus(1, &x().inv().unwrap()));
    assert_eq!(unit, h.one());
    let q2 = q().pow(2).unwrap();
    let qm2 = q().pow(-2).unwrap();
    assert!(h.mul(&h.sigma_x(1, &q2), &h.sigma_x(1, &qm2)).is_zero());
}

#[test]
fn yang_baxter() {
    let h = HeckeAlgebra::generic(3);
    let xy = x() * y();
    let lhs = h.product([&h.sigma_x(2, &x()), &h.sigma_x(1, &xy), &h.sigma_x(2, &y())]);
    let rhs = h.product([&h.sigma_x(1, &y()), &h.sigma_x(2, &xy), &h.sigma_x(1, &x())]);
    assert_eq!(lhs, rhs);
}

#[test]
fn two_strand_symmetrizer() {
    let h = HeckeAlgebra::generic(3);
    let a = h.symmetrizer(Sign::Plus, 2).unwrap();
    let qi = q().inv().unwrap();
    let expected = (&h.sigma(1) + &h.scalar(qi.clone())).scale(&(q() + qi).inv().unwrap());
    assert_eq!(a, expected);
    let a3 = h.symmetrizer(Sign::Plus, 3).unwrap();
    assert_eq!(h.mul(&h.sigma(1), &a3), a3.scale(&q()));
    let am = h.symmetrizer(Sign::Minus, 2).unwrap();
    assert!(h.mul(&a, &am).is_zero());
}

#[test]
fn finite_trace_axioms() {
    let h = HeckeAlgebra::generic(3);
    let d0 = h.d0().clone();
    assert_eq!(h.markov_trace(1, &h.one()).unwrap(), h.scalar(d0));
    assert_eq!(h.markov_trace(1, &h.sigma(1)).unwrap(), h.one());
    let z = Scalar::var(Var::Z);
    let xx = &h.sigma(1) + &h.scalar(Scalar::from_int(3));
    let lhs = h.markov_trace(2, &h.product([&h.sigma_x(2, &x()), &xx, &h.sigma_x(2, &z)])).unwrap();
    let b = h.b().unwrap();
    let coef = h.lambda() * &(Scalar::one() - &(&(x() * z.clone()) * &b.inv().unwrap()));
    let rhs = &h.markov_trace(1, &xx).unwrap().scale(&((Scalar::one() - x()) * (Scalar::one() - z))) + &xx.scale(&coef);
    assert_eq!(lhs, rhs);
}

#[test]
fn free_transfer_matches_closed_form() {
    for n in 1..=3 {
        let h = HeckeAlgebra::generic(n + 1);
        assert_eq!(h.free_transfer(n, &x()).unwrap(), h.free_transfer_closed(n, &x()).unwrap(), "n = {n}");
    }
}

fn word_sum(h: &HeckeAlgebra, words: &[&[i32]]) -> HeckeElement {
    words.iter().fold(h.zero(), |acc, w| &acc + &h.word(w))
}

#[test]
fn three_site_charges() {
    let h = HeckeAlgebra::generic(3);
    let j = h.charges(3).unwrap();
    assert_eq!(j.len(), 3);
    assert_eq!(j[0], word_sum(&h, &[&[1], &[2]]));
    assert_eq!(j[1], word_sum(&h, &[&[1, 2], &[2, 1]]));
    assert_eq!(j[2], word_sum(&h, &[&[2, 1, 2], &[1], &[2]]));
}

#[test]
fn four_site_charges() {
    let h = HeckeAlgebra::generic(4);
    let j = h.charges(4).unwrap();
    let lam = h.lambda().clone();
    assert_eq!(j[0], word_sum(&h, &[&[1], &[2], &[3]]));
    let j2 = word_sum(&h, &[&[1, 2], &[2, 1], &[2, 3], &[3, 2], &[3, 1], &[3, 1]]);
    assert_eq!(j[1], j2);
    let j3 = &word_sum(
        &h,
        &[&[1, 3, 2], &[2, 1, 3], &[1, 2, 1], &[1, 2, 3], &[3, 2, 1], &[3, 2, 3], &[1], &[1], &[2], &[2], &[3], &[3]],
    ) + &h.word(&[3, 1]).scale(&lam);
    assert_eq!(j[2], j3);
    let j4 = word_sum(
        &h,
        &[&[2, 3, 2, 1], &[1, 2, 3, 2], &[2, 1, 2, 3], &[3, 2, 1, 2], &[2, 3], &[3, 2], &[2, 1], &[1, 2]],
    );
    assert_eq!(j[3], j4);
    let j5 = word_sum(&h, &[&[1, 2, 3, 2, 1], &[2, 3, 2], &[1, 2, 1], &[1], &[2], &[3]]);
    assert_eq!(j[4], j5);
    let longest = h.longest_element();
    let rebuilt = &h.mul(&(&j[4] - &j[0]), &(&j[0] - &h.scalar(lam.clone()))) - &j[3];
    assert_eq!(&rebuilt - &longest, (&j[4] - &j[0]).scale(&lam));
    let two_lam = &lam + &lam;
    assert_eq!(longest, &h.mul(&(&j[4] - &j[0]), &(&j[0] - &h.scalar(two_lam))) - &j[3]);
}

#[test]
fn baxterized_normalizations() {
    let h = HeckeAlgebra::generic(2);
    let raw = h.baxterized(1, &x(), Normalization::Raw).unwrap();
    let minus = h.baxterized(1, &x(), Normalization::Minus).unwrap();
    let qi = q().inv().unwrap();
    assert_eq!(minus.scale(&(q() * x() - qi)), raw);
}
