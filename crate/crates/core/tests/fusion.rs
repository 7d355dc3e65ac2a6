use hechain::fusion::*;
use hechain::scalar::{Scalar, Var};
use hechain::{AffineAlgebra, AffineChain, BoundaryMode, Chain, ChainAlgebra, HeckeAlgebra};

fn x() -> Scalar {
    Scalar::var(Var::X)
}

fn z() -> Scalar {
    Scalar::var(Var::Z)
}

fn blob(rank: usize) -> AffineChain {
    AffineChain::new(AffineAlgebra::quadratic(rank), BoundaryMode::QuadraticBlob { xi: Scalar::var(Var::XI) })
}

#[test]
fn ladder_shapes() {
    let a = blob(3);
    let q = a.q();
    let y2 = y_ladder(&a, 2, &x()).unwrap();
    let x2q2 = &(x() * x()) * &q.pow(2).unwrap();
    let direct = a
        .product(&[a.boundary(&x()).unwrap(), a.e_plus(1, &x2q2).unwrap(), a.boundary(&(x() * q.pow(2).unwrap())).unwrap()])
        .unwrap();
    assert_eq!(y2, direct);
    assert_eq!(fused_boundary(&a, 1, &x()).unwrap(), a.boundary(&x()).unwrap());
    let h = HeckeAlgebra::generic(2);
    let free = fused_boundary(&h, 2, &x()).unwrap();
    let qm2 = h.q().pow(-2).unwrap();
    assert_eq!(free, h.mul(&h.e_plus(1, &qm2), &h.e_plus(1, &x2q2)));
}

#[test]
fn double_construction() {
    for k in 1..=3 {
        let a = blob(k);
        assert_eq!(fused_boundary(&a, k, &x()).unwrap(), fused_boundary_mirror(&a, k, &x()).unwrap(), "k = {k}");
    }
}

#[test]
fn fused_baxter_orderings() {
    let h = HeckeAlgebra::generic(4);
    assert_eq!(fused_baxter(&h, 1, &x()).unwrap(), h.e_plus(1, &x()));
    assert_eq!(fused_baxter(&h, 2, &x()).unwrap(), fused_baxter_alt(&h, 2, &x()).unwrap());
}

#[test]
fn fused_reflection_equation() {
    for k in 1..=2 {
        let a = blob(2 * k);
        let (l, r) = fused_reflection(&a, k, &x(), &z()).unwrap();
        assert_eq!(l, r, "k = {k}");
    }
}

#[test]
fn fused_reflection_needs_the_shifted_middle_crossing() {
    let q = Scalar::from_int(3);
    let h = HeckeAlgebra::new(4, q).unwrap().with_d0(Scalar::ratio(5, 7)).unwrap();
    let alg = AffineAlgebra::with_quadratic(h, Scalar::from_int(2), Scalar::from_int(5)).unwrap();
    let a = AffineChain::new(alg, BoundaryMode::QuadraticBlob { xi: Scalar::from_int(7) });
    let (l, r) = fused_reflection_shifted(&a, 2, &x(), &z(), 0).unwrap();
    assert_ne!(l, r);
    let (l, r) = fused_reflection_shifted(&a, 2, &x(), &z(), 1).unwrap();
    assert_eq!(l, r);
}

#[test]
fn lemma1() {
    for k in 1..=3 {
        let h = HeckeAlgebra::generic(k + 1);
        assert!(lemma1_check(&h, k, &x()).unwrap(), "k = {k}");
    }
}

#[test]
fn auxiliary_identities() {
    for k in 1..=3 {
        let h = HeckeAlgebra::generic(k + 2);
        let (l, r) = sss_sides(&h, k, &x()).unwrap();
        assert_eq!(l, r, "sss k = {k}");
        assert_eq!(identity_resolution(&h, k).unwrap(), h.one());
        let h = HeckeAlgebra::generic(k + 1);
        let (l, r) = iden3_sides(&h, k, &x()).unwrap();
        assert_eq!(l, r, "iden3 k = {k}");
        let (l, r) = ident2_sides(&h, k, &x()).unwrap();
        assert_eq!(l, r, "ident2 k = {k}");
    }
}

#[test]
fn proposition1_free() {
    for k in 1..=2 {
        let h = HeckeAlgebra::generic(k + 1);
        let r = prop1_check(&h, k, &x()).unwrap();
        assert!(r.pass, "k = {k}: {:?}", r.difference);
    }
}

#[test]
fn proposition1_blob() {
    let a = blob(2);
    let r = prop1_check(&a, 1, &x()).unwrap();
    assert!(r.pass, "{:?}", r.difference);
}

#[test]
fn fused_transfers_commute_on_a_chain() {
    let h = HeckeAlgebra::generic(4);
    let c = Chain::new(&h, 2).unwrap();
    let t1 = fused_transfer(&c, 1, &x()).unwrap();
    let t2 = fused_transfer(&c, 2, &z()).unwrap();
    assert!(c.commutator(&t1, &t2).unwrap().is_zero());
    assert_eq!(t1, h.free_transfer(2, &x()).unwrap());
}
