use hechain::chain::ChainAlgebra;
use hechain::fusion::{ident2_sides, iden3_sides};
use hechain::scalar::{Scalar, Var};
use hechain::tlblob::{
    delta0, delta0_from_algebra, delta0_sides, forced_constants, phi_prime_tl, phi_triple_prime, prop2_check,
    q_operator, tq_residual, tq_residual_free,
};
use hechain::{
    AffineAlgebra, AffineElement, BlobAlgebra, BlobDiagram, BlobElement, BoundaryMode, Chain,
    HeckeAlgebra, HeckeElement, Perm, Sign, TraceConstants,
};
use proptest::prelude::*;

fn q() -> Scalar {
    Scalar::q()
}

fn x() -> Scalar {
    Scalar::var(Var::X)
}

fn z() -> Scalar {
    Scalar::var(Var::Z)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn qp(e: i32) -> Scalar {
    q().pow(e).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn diagram_counts() {
    for n in 1..=6u64 {
        let catalan = binomial(2 * n, n) / (n + 1);
        assert_eq!(BlobDiagram::enumerate(n as usize, false).len() as u64, catalan);
        assert_eq!(BlobDiagram::enumerate(n as usize, true).len() as u64, binomial(2 * n, n));
    }
    let d = BlobDiagram::from_arcs(2, &[(0, 3), (1, 2)], &[0]).unwrap();
    assert_eq!(d.blobbed_arcs(), vec![0]);
    assert!(BlobDiagram::from_arcs(2, &[(0, 3), (1, 2)], &[1]).is_none());
    assert!(BlobDiagram::from_arcs(2, &[(0, 2), (1, 3)], &[]).is_none());
}

#[test]
fn temperley_lieb_and_blob_relations() {
    let a = BlobAlgebra::generic(4);
    let delta = a.loop_weight().clone();
    let e: Vec<BlobElement> = (1..4).map(|i| a.e(i).unwrap()).collect();
    for i in 0..3 {
        assert_eq!(a.mul(&e[i], &e[i]), e[i].scale(&delta));
        for j in 0..3 {
            let (l, r) = (a.mul(&e[i], &e[j]), a.mul(&e[j], &e[i]));
            if i.abs_diff(j) == 1 {
                assert_eq!(a.product([&e[i], &e[j], &e[i]]), e[i]);
            } else {
                assert_eq!(l, r);
            }
        }
    }
    let b = a.blob();
    assert_eq!(a.mul(&b, &b), b);
    assert_eq!(a.product([&e[0], &b, &e[0]]), e[0].scale(a.gamma()));
    for ei in &e[1..] {
        assert_eq!(a.mul(&b, ei), a.mul(ei, &b));
    }
}

#[test]
fn images_of_generators() {
    let a = BlobAlgebra::generic(3);
    let q2 = qp(2);
    assert_eq!(a.sigma_x(1, &q2).unwrap(), a.e(1).unwrap().scale(&(&q2 - &int(1))));
    let h = HeckeAlgebra::generic(3);
    let anti = h.symmetrizer(Sign::Minus, 3).unwrap();
    assert!(a.project_hecke(&h, &anti).unwrap().is_zero());
    let sym = h.symmetrizer(Sign::Plus, 3).unwrap();
    assert!(!a.project_hecke(&h, &sym).unwrap().is_zero());
    let y = a.y1();
    let e1 = a.e(1).unwrap();
    assert_eq!(a.product([&e1, &y, &e1]), e1.scale(&(&q2 * &a.d1())));
    let (p, r) = a.quadratic_coefficients();
    assert_eq!(a.mul(&y, &y), &y.scale(&p) + &a.scalar(r));
    let s1 = a.sigma(1).unwrap();
    assert_eq!(a.product([&y, &s1, &y, &s1]), a.product([&s1, &y, &s1, &y]));
    let sq = a.sigma_x(1, &q2).unwrap();
    assert_eq!(a.product([&y, &s1, &y, &sq]), sq.scale(&a.delta()));
    assert_eq!(a.product([&sq, &y, &s1, &y]), sq.scale(&a.delta()));
    let x = BlobAlgebra::new(2, q(), int(2), int(2)).unwrap_err();
    assert!(matches!(x, hechain::AlgebraError::DegenerateBoundary(_)));
}

#[test]
fn reduced_words_build_the_basis() {
    let h = HeckeAlgebra::generic(4);
    for w in Perm::all(4) {
        let word: Vec<i32> = w.reduced_word().iter().map(|&i| i as i32).collect();
        assert_eq!(h.word(&word), h.basis(w));
    }
}

#[test]
fn forced_constants_are_rederived() {
    let f = forced_constants().unwrap();
    assert_eq!(f.b, qp(4));
    let lambda = &q() - &qp(-1);
    assert_eq!(f.d0, (int(1) - qp(-4)).checked_div(&lambda).unwrap());
    let d0 = Scalar::var(Var::trace_constant(0).unwrap());
    let b = (int(1) - &(&lambda * &d0)).inv().unwrap();
    assert_eq!(f.trace_factor, int(1) - &(&qp(4) * &b.inv().unwrap()));
    let a = BlobAlgebra::generic(3);
    assert_eq!(a.d0(), &f.d0);
    assert_eq!(a.b().unwrap(), f.b);
}

#[test]
fn trace_examples() {
    let a = BlobAlgebra::generic(3);
    assert_eq!(a.blob_trace(0, &a.one()).unwrap(), a.scalar(a.d0().clone()));
    assert_eq!(a.blob_trace(1, &a.sigma(1).unwrap()).unwrap(), a.one());
    assert_eq!(a.blob_trace(2, &a.sigma(2).unwrap()).unwrap(), a.one());
    assert_eq!(a.blob_trace(2, &a.e(2).unwrap()).unwrap(), a.scalar(qp(-2)));
    assert_eq!(a.blob_trace(0, &a.y1()).unwrap(), a.scalar(a.d1()));
    let (p, r) = a.quadratic_coefficients();
    let consts = TraceConstants::recursive(a.d0(), &a.d1(), &p, &r, 4).unwrap();
    let mut y = a.one();
    for k in 0..=4 {
        assert_eq!(a.blob_trace(0, &y).unwrap(), a.scalar(consts.get(k).unwrap().clone()));
        y = a.mul(&y, &a.y1());
    }
    let y2 = a.product([&a.sigma(1).unwrap(), &a.y1(), &a.sigma(1).unwrap()]);
    assert_eq!(a.blob_trace(1, &y2).unwrap(), &a.scalar(a.d1()) + &a.y1().scale(a.lambda()));
    assert!(a.blob_trace(0, &a.e(1).unwrap()).is_err());
}

#[test]
fn trace_constants_match_the_determinant() {
    let a = BlobAlgebra::generic(1);
    let (p, r) = a.quadratic_coefficients();
    let consts = TraceConstants::recursive(a.d0(), &a.d1(), &p, &r, 2).unwrap();
    let d2 = consts.get(2).unwrap();
    let lambda = a.lambda();
    let pre = (lambda * &q()).checked_div(&(int(1) - qp(-4))).unwrap();
    let delta = pre * (d2 - &(&q() * &(&a.d1() * &a.d1())));
    assert_eq!(delta, a.delta());
}

fn affine_for(rank: usize) -> AffineAlgebra {
    AffineAlgebra::quadratic(rank)
}

#[test]
fn affine_trace_agrees_with_diagram_closure() {
    let a = BlobAlgebra::generic(3);
    let aff = affine_for(3);
    let words: Vec<AffineElement> = vec![
        aff.y(3),
        aff.mul(&aff.y(2), &aff.y(3)),
        aff.product([&aff.y(1), &aff.sigma(2), &aff.y(3)]),
        aff.product([&aff.sigma(1), &aff.y(2), &aff.sigma(2), &aff.y(1)]),
        aff.mul(&aff.y_pow(3, -1).unwrap(), &aff.sigma(1)),
    ];
    for w in &words {
        for n in (0..3).rev() {
            if !AffineAlgebra::in_level(w, n + 1) {
                continue;
            }
            let direct = aff.markov_trace(n, w).unwrap();
            let lhs = a.project_affine(&aff, &direct).unwrap();
            let rhs = a.blob_trace(n, &a.project_affine(&aff, w).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "trace at level {n} of {w:?}");
        }
    }
}

#[test]
fn temperley_lieb_identities() {
    let a = BlobAlgebra::generic(3);
    let q2 = qp(2);
    let lambda = a.lambda().clone();
    let xi = |u: &Scalar| {
        (int(1) - &(u * &q2)).checked_div(&(&(&q2 * &lambda) * &(int(1) - u))).unwrap()
    };
    let x = x();
    for (i, j) in [(1, 2), (2, 1)] {
        let si = a.sigma_x(i, &q2).unwrap();
        let lhs = ChainAlgebra::product(&a, &[si.clone(), a.sigma_x(j, &x).unwrap(), si.clone()]).unwrap();
        let c = &(&lambda * &qp(3)) * &(int(1) - &(&qp(-4) * &x));
        assert_eq!(lhs, si.scale(&c));
        let factors = [a.e_plus(i, &x).unwrap(), a.e_plus(j, &(&x * &q2)).unwrap(), si.clone()];
        let lhs = ChainAlgebra::product(&a, &factors).unwrap();
        let rhs = a.mul(&a.sigma_x(j, &q2).unwrap(), &si).scale(&-xi(&x));
        assert_eq!(lhs, rhs);
    }
    for k in 1..=2 {
        let (l, r) = ident2_sides(&a, k, &x).unwrap();
        assert_eq!(l, r, "ident2 k={k}");
        let (l, r) = iden3_sides(&a, k, &x).unwrap();
        assert_eq!(l, r, "iden3 k={k}");
    }
}

#[test]
fn determinant_with_free_boundary() {
    let a = BlobAlgebra::generic(2);
    let d = delta0_from_algebra(&a, &z()).unwrap();
    assert_eq!(d, delta0(&q(), &z(), 0, None).unwrap());
    let z2 = &z() * &z();
    let closed = -(&qp(-2) * &(int(1) - &z2)).checked_div(&(int(1) - &(&z2 * &qp(-4)))).unwrap();
    assert_eq!(d, closed);
    let ratio = (int(1) - z()).checked_div(&(&q() - &(&z() * &qp(-1)))).unwrap();
    assert_eq!(delta0(&q(), &z(), 1, None).unwrap(), &closed * &ratio.pow(2).unwrap());
}

#[test]
fn determinant_on_chains() {
    let qn = Scalar::ratio(3, 2);
    for (mode, label) in [
        (BoundaryMode::Free, "free"),
        (BoundaryMode::QuadraticBlob { xi: Scalar::var(Var::XI) }, "blob"),
    ] {
        let base = BlobAlgebra::new(2, qn.clone(), int(2), int(-3)).unwrap().with_mode(mode.clone());
        let d0 = delta0_from_algebra(&base, &z()).unwrap();
        for n in 1..=2 {
            let alg = BlobAlgebra::new(n + 2, qn.clone(), int(2), int(-3)).unwrap().with_mode(mode.clone());
            let chain = Chain::normalized(alg, n).unwrap();
            let d = delta0_from_algebra(&chain, &z()).unwrap();
            assert_eq!(d, delta0(&qn, &z(), n, Some(&d0)).unwrap(), "{label} N={n}");
        }
    }
}

#[test]
fn determinant_element_is_central() {
    for rank in 2..=3 {
        let a = BlobAlgebra::generic(rank).with_mode(BoundaryMode::QuadraticBlob { xi: Scalar::var(Var::XI) });
        let (left, right, s) = delta0_sides(&a, &z()).unwrap();
        assert_eq!(left, right);
        let c = left.ratio_to(&s).unwrap();
        let central = a.scalar(c);
        for i in 1..rank {
            assert!(a.commutator(&central, &a.sigma(i).unwrap()).is_zero());
        }
        assert!(a.commutator(&central, &a.y1()).is_zero());
    }
}

#[test]
fn proposition2_coefficients() {
    let x2 = &x() * &x();
    let f = |e: i32| int(1) - &(&x2 * &qp(e));
    let expected = (f(0) * f(0)).checked_div(&(f(-2) * f(2))).unwrap();
    assert_eq!(phi_prime_tl(&q(), 1, &x()).unwrap(), expected);
    let expected = (-&qp(-2) * f(-4) * f(0)).checked_div(&(f(-2) * f(2))).unwrap();
    assert_eq!(phi_triple_prime(&q(), 1, &x()).unwrap(), expected);
}

#[test]
fn proposition2_blob() {
    let xi = Scalar::var(Var::XI);
    for k in 1..=2 {
        let a = BlobAlgebra::generic(k + 1).with_mode(BoundaryMode::QuadraticBlob { xi: xi.clone() });
        let report = prop2_check(&a, k, &x()).unwrap();
        assert!(report.pass, "k={k}: {:?}", report.difference);
    }
}

#[test]
fn proposition2_free() {
    for k in 1..=2 {
        let a = BlobAlgebra::generic(k + 1);
        assert!(prop2_check(&a, k, &x()).unwrap().pass, "k={k}");
    }
}

#[test]
fn q_operators() {
    let a = BlobAlgebra::generic(2);
    assert_eq!(q_operator(&a, 0, &z()).unwrap(), a.scalar(int(1) - &(&(&z() * &z()) * &qp(-4))));
}

#[test]
fn tq_system_free_boundary() {
    let qn = Scalar::ratio(5, 3);
    for n in 1..=3 {
        for k in 1..=2 {
            let tl = BlobAlgebra::temperley_lieb(n + k + 1, qn.clone()).unwrap();
            let chain = Chain::normalized(tl, n).unwrap();
            let r = tq_residual_free(&chain, k, &z()).unwrap();
            assert!(r.is_zero(), "N={n} k={k}");
            if n + k <= 3 {
                assert!(tq_residual(&chain, k, &z()).unwrap().is_zero(), "N={n} k={k} algebraic");
            }
        }
    }
}

#[test]
fn tq_system_symbolic_q() {
    let tl = BlobAlgebra::temperley_lieb(3, q()).unwrap();
    let chain = Chain::normalized(tl, 1).unwrap();
    assert!(tq_residual_free(&chain, 1, &z()).unwrap().is_zero());
}

fn hecke_word(h: &HeckeAlgebra, letters: &[i32]) -> HeckeElement {
    h.word(letters)
}

fn letters(rank: usize) -> impl Strategy<Value = Vec<i32>> {
    let r = rank as i32;
    prop::collection::vec((1..r, any::<bool>()).prop_map(|(i, inv)| if inv { -i } else { i }), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compose_is_associative(i in 0usize..42, j in 0usize..42, k in 0usize..42) {
        let ds = BlobDiagram::enumerate(4, false);
        let (a, b, c) = (ds[i % ds.len()], ds[j % ds.len()], ds[k % ds.len()]);
        let (ab, l1, g1) = a.compose(&b);
        let (abc, l2, g2) = ab.compose(&c);
        let (bc, l3, g3) = b.compose(&c);
        let (abc2, l4, g4) = a.compose(&bc);
        prop_assert_eq!(abc, abc2);
        prop_assert_eq!((l1 + l2, g1 + g2), (l3 + l4, g3 + g4));
    }

    #[test]
    fn blob_compose_is_associative(i in 0usize..70, j in 0usize..70, k in 0usize..70) {
        let a = BlobAlgebra::generic(4);
        let ds = BlobDiagram::enumerate(4, true);
        let e = |n: usize| a.diagram(ds[n % ds.len()]).unwrap();
        let (x, y, w) = (e(i), e(j), e(k));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &w), a.mul(&x, &a.mul(&y, &w)));
    }

    #[test]
    fn project_hecke_is_multiplicative(u in letters(4), v in letters(4)) {
        let h = HeckeAlgebra::new(4, Scalar::ratio(7, 3)).unwrap();
        let a = BlobAlgebra::temperley_lieb(4, Scalar::ratio(7, 3)).unwrap();
        let (p, r) = (hecke_word(&h, &u), hecke_word(&h, &v));
        let lhs = a.project_hecke(&h, &h.mul(&p, &r)).unwrap();
        let rhs = a.mul(&a.project_hecke(&h, &p).unwrap(), &a.project_hecke(&h, &r).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn project_affine_is_multiplicative(u in letters(3), v in letters(3), ya in 0i32..2, yb in 0i32..2) {
        let a = BlobAlgebra::generic(3);
        let aff = affine_for(3);
        let hk = aff.hecke().clone();
        let y = |k: usize, e: i32| aff.y_pow(k, e).unwrap();
        let p = aff.mul(&y(1, ya), &aff.from_hecke(&hecke_word(&hk, &u)));
        let r = aff.mul(&aff.from_hecke(&hecke_word(&hk, &v)), &y(3, -yb));
        let lhs = a.project_affine(&aff, &aff.mul(&p, &r)).unwrap();
        let rhs = a.mul(&a.project_affine(&aff, &p).unwrap(), &a.project_affine(&aff, &r).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn results_are_symmetric_in_the_roots(mp in 2i64..6, mm in -6i64..-1, xi in 2i64..9) {
        let a = BlobAlgebra::new(2, Scalar::ratio(3, 2), int(mp), int(mm))
            .unwrap()
            .with_mode(BoundaryMode::QuadraticBlob { xi: int(xi) });
        let b = a.swapped();
        let t = |alg: &BlobAlgebra| alg.blob_trace(0, &alg.boundary_solution(&x()).unwrap()).unwrap();
        prop_assert_eq!(t(&a), t(&b));
        let tau2 = |alg: &BlobAlgebra| {
            hechain::fusion::fused_transfer(alg, 2, &x()).unwrap()
        };
        prop_assert_eq!(tau2(&a), tau2(&b));
        prop_assert_eq!(delta0_from_algebra(&a, &z()).unwrap(), delta0_from_algebra(&b, &z()).unwrap());
    }

    #[test]
    fn trace_axioms(u in letters(3), v in letters(3)) {
        let h = HeckeAlgebra::new(3, Scalar::ratio(5, 2)).unwrap();
        let a = BlobAlgebra::temperley_lieb(3, Scalar::ratio(5, 2)).unwrap();
        let lo = |w: &[i32]| {
            let w: Vec<i32> = w.iter().copied().filter(|l| l.abs() < 2).collect();
            a.project_hecke(&h, &h.word(&w)).unwrap()
        };
        let (p, r) = (lo(&u), lo(&v));
        let s2 = a.sigma(2).unwrap();
        prop_assert_eq!(a.blob_trace(2, &a.product([&p, &s2, &r])).unwrap(), a.mul(&p, &r));
        let s2i = &s2 - &a.scalar(a.lambda().clone());
        let binv = a.b().unwrap().inv().unwrap();
        prop_assert_eq!(a.blob_trace(2, &a.product([&p, &s2i, &r])).unwrap(), a.mul(&p, &r).scale(&binv));
        let ph = a.project_hecke(&h, &h.word(&u)).unwrap();
        let traced = a.blob_trace(2, &ph).unwrap();
        let direct = a.project_hecke(&h, &h.clone().with_d0(a.d0().clone()).unwrap().markov_trace(2, &h.word(&u)).unwrap()).unwrap();
        prop_assert_eq!(traced, direct);
    }
}
