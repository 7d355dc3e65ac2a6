use hechain::scalar::{Scalar, Var};
use hechain::{AffineAlgebra, AffineElement, AffineKey, BoundaryMode, Generator, HeckeAlgebra, Perm};
use proptest::prelude::*;

use Generator::{Sigma, SigmaInv, Y, YInv};

fn x() -> Scalar {
    Scalar::var(Var::X)
}

fn z() -> Scalar {
    Scalar::var(Var::Z)
}

fn xi() -> Scalar {
    Scalar::var(Var::XI)
}

fn numeric(rank: usize) -> AffineAlgebra {
    AffineAlgebra::new(HeckeAlgebra::new(rank, Scalar::from_int(3)).unwrap(), 4).unwrap()
}

fn d(k: i32) -> Scalar {
    Scalar::var(Var::trace_constant(k).unwrap())
}

fn no(a: &AffineAlgebra, w: &[Generator]) -> AffineElement {
    a.normal_order(w).unwrap()
}

#[test]
fn exchange_rules() {
    let a = AffineAlgebra::generic(3);
    let lam = a.lambda().clone();
    assert_eq!(no(&a, &[Sigma(1), Y(1), Sigma(1)]), a.y(2));
    assert_eq!(a.y(2).len(), 1);
    let y2 = a.y(2);
    let key = *y2.terms().next().unwrap().0;
    assert_eq!(key.ypow(3), vec![0, 1, 0]);
    assert_eq!(no(&a, &[Y(1), Y(2)]), no(&a, &[Y(2), Y(1)]));
    assert_eq!(no(&a, &[Sigma(1), Y(1)]), &no(&a, &[Y(2), Sigma(1)]) - &a.y(2).scale(&lam));
    assert_eq!(no(&a, &[Sigma(2), Y(3)]), &no(&a, &[Y(2), Sigma(2)]) + &a.y(3).scale(&lam));
    assert_eq!(no(&a, &[Sigma(1), YInv(1)]), &no(&a, &[YInv(2), Sigma(1)]) + &no(&a, &[YInv(1)]).scale(&lam));
    assert_eq!(no(&a, &[Sigma(1), YInv(2)]), &no(&a, &[YInv(1), Sigma(1)]) - &no(&a, &[YInv(1)]).scale(&lam));
    assert_eq!(no(&a, &[Y(2), YInv(2), Sigma(2), SigmaInv(2)]), a.one());
    assert!(a.normal_order(&[Sigma(3)]).is_err());
}

#[test]
fn trace_examples() {
    let a = AffineAlgebra::generic(2);
    let lam = a.lambda().clone();
    assert_eq!(a.markov_trace(0, &a.y_pow(1, 2).unwrap()).unwrap(), a.scalar(d(2)));
    assert_eq!(a.markov_trace(0, &a.y_pow(1, -3).unwrap()).unwrap(), a.scalar(d(-3)));
    assert_eq!(a.markov_trace(1, &a.y(2)).unwrap(), &a.scalar(d(1)) + &a.y(1).scale(&lam));
    assert_eq!(a.markov_trace(1, &no(&a, &[Sigma(1), Y(1)])).unwrap(), a.y(1));
    let err = a.markov_trace(0, &a.y_pow(1, 5).unwrap()).unwrap_err();
    assert_eq!(err, hechain::AlgebraError::TraceDegree(5));
    assert!(a.markov_trace(0, &a.y(2)).is_err());
}

#[test]
fn quotient_normal_form() {
    let a = AffineAlgebra::quadratic(3);
    let (p, r) = a.quadratic_coefficients().map(|(p, r)| (p.clone(), r.clone())).unwrap();
    let y1 = a.y(1);
    assert_eq!(a.mul(&y1, &y1), &y1.scale(&p) + &a.scalar(r.clone()));
    assert_eq!(a.mul(&y1, &a.y_pow(1, -1).unwrap()), a.one());
    let y3 = a.y(3);
    assert_eq!(a.mul(&y3, &a.y_pow(3, -1).unwrap()), a.one());
    assert_eq!(a.mul(&a.y(2), &y3), a.mul(&y3, &a.y(2)));
    for k in [2, 3] {
        let yk = a.y(k);
        let sq = a.mul(&yk, &yk);
        assert!(sq.terms().all(|(key, _)| key.ypow(3).iter().all(|&e| e == 0 || e == 1)));
    }
    let d1 = d(1);
    let d2 = &(&p * &d1) + &(&r * a.d0());
    assert_eq!(a.markov_trace(0, &a.mul(&y1, &y1)).unwrap(), a.scalar(d2));
    let t = a.markov_trace(2, &a.mul(&y3, &y3)).unwrap();
    let direct = a.markov_trace(2, &no(&a, &[Sigma(2), Sigma(1), Y(1), Sigma(1), Sigma(2), Sigma(2), Sigma(1), Y(1), Sigma(1), Sigma(2)])).unwrap();
    assert_eq!(t, direct);
}

#[test]
fn boundary_solutions() {
    let a = AffineAlgebra::quadratic(2);
    let mode = BoundaryMode::QuadraticBlob { xi: xi() };
    assert_eq!(a.boundary_solution(&mode, &Scalar::one()).unwrap(), a.one());
    let yx = a.boundary_solution(&mode, &x()).unwrap();
    let yinv = a.boundary_solution(&mode, &x().inv().unwrap()).unwrap();
    assert_eq!(a.mul(&yx, &yinv), a.one());
    let c = &xi() * &x().inv().unwrap();
    let shifted = &a.y(1) - &a.scalar(c);
    let lhs = a.mul(&yx, &shifted);
    assert_eq!(lhs, &a.y(1) - &a.scalar(&xi() * &x()));
    assert_eq!(a.boundary_solution(&BoundaryMode::Free, &x()).unwrap(), a.one());
    let poly = BoundaryMode::Polynomial(vec![x(), Scalar::one() - x()]);
    assert_eq!(a.boundary_solution(&poly, &Scalar::one()).unwrap(), a.one());
    let g = AffineAlgebra::generic(2);
    assert!(g.boundary_solution(&mode, &x()).is_err());
    let at_xi = a.boundary_solution(&mode, &Scalar::one());
    assert!(at_xi.is_ok());
}

fn reflection_holds(a: &AffineAlgebra, n: usize, mode: &BoundaryMode, xis: &[Scalar]) {
    let yx = a.monodromy(n, &x(), xis, mode).unwrap();
    let yz = a.monodromy(n, &z(), xis, mode).unwrap();
    let xz = &x() * &z();
    let xoz = &x() * &z().inv().unwrap();
    let lhs = a.product([&a.sigma_x(n, &xoz), &yx, &a.sigma_x(n, &xz), &yz]);
    let rhs = a.product([&yz, &a.sigma_x(n, &xz), &yx, &a.sigma_x(n, &xoz)]);
    assert_eq!(lhs, rhs, "n = {n}");
}

#[test]
fn reflection_equation() {
    let a = AffineAlgebra::quadratic(4);
    let mode = BoundaryMode::QuadraticBlob { xi: xi() };
    for n in 1..=3 {
        reflection_holds(&a, n, &mode, &[]);
    }
    let g = AffineAlgebra::generic(4);
    let xis = [Scalar::var(Var::inhomogeneity(1).unwrap()), Scalar::var(Var::inhomogeneity(2).unwrap())];
    let free = BoundaryMode::Free;
    for n in 1..=3 {
        reflection_holds(&g, n, &free, &xis);
    }
    assert_eq!(g.monodromy(2, &x(), &[], &free).unwrap(), g.mul(&g.sigma_x(1, &x()), &g.sigma_x(1, &x())));
}

#[test]
fn transfer_agrees_with_recursion() {
    let g = AffineAlgebra::generic(4);
    let free = BoundaryMode::Free;
    let t1 = g.transfer(1, &x(), &free).unwrap();
    let b = g.b().unwrap();
    let closed = g.scalar(
        &(g.lambda() * &(Scalar::one() - &(&(x() * x()) * &b.inv().unwrap())))
            + &(&(Scalar::one() - x()).pow(2).unwrap() * g.d0()),
    );
    assert_eq!(t1, closed);
    for n in 1..=3 {
        assert_eq!(g.transfer(n, &x(), &free).unwrap(), g.transfer_via_recursion(n, &x(), &free).unwrap(), "free n = {n}");
    }
    let a = AffineAlgebra::quadratic(4);
    let mode = BoundaryMode::QuadraticBlob { xi: xi() };
    for n in 1..=3 {
        assert_eq!(a.transfer(n, &x(), &mode).unwrap(), a.transfer_via_recursion(n, &x(), &mode).unwrap(), "blob n = {n}");
    }
}

#[test]
fn transfer_commutes() {
    let a = AffineAlgebra::quadratic(4);
    let mode = BoundaryMode::QuadraticBlob { xi: xi() };
    for n in 1..=3 {
        let tx = a.transfer(n, &x(), &mode).unwrap();
        let tz = a.transfer(n, &z(), &mode).unwrap();
        assert!(a.commutator(&tx, &tz).is_zero(), "n = {n}");
    }
    let g = AffineAlgebra::generic(4);
    for n in 1..=3 {
        let tx = g.transfer(n, &x(), &BoundaryMode::Free).unwrap();
        let tz = g.transfer(n, &z(), &BoundaryMode::Free).unwrap();
        assert!(g.commutator(&tx, &tz).is_zero(), "free n = {n}");
    }
}

#[test]
fn transfer_monodromy_exchange() {
    let a = AffineAlgebra::quadratic(2);
    let mode = BoundaryMode::QuadraticBlob { xi: xi() };
    let n = 2;
    let tau = a.transfer(n - 1, &x(), &mode).unwrap();
    let yx = a.monodromy(n, &x(), &[], &mode).unwrap();
    let yz = a.monodromy(n, &z(), &[], &mode).unwrap();
    let b = a.b().unwrap();
    let xinv = x().inv().unwrap();
    let num = a.lambda() * &(&(x() * b.inv().unwrap()) - &xinv);
    let den = (x() + xinv) - (z() + z().inv().unwrap());
    let rhs = a.commutator(&yx, &yz).scale(&(num * den.inv().unwrap()));
    assert_eq!(a.commutator(&tau, &yz), rhs);
}

#[test]
fn hamiltonians() {
    let g = AffineAlgebra::generic(3);
    let h = g.hamiltonian(3, &BoundaryMode::Free).unwrap();
    assert_eq!(h, &g.sigma(1) + &g.sigma(2));
    let a = AffineAlgebra::quadratic(3);
    let mode = BoundaryMode::QuadraticBlob { xi: xi() };
    let ham = a.hamiltonian(3, &mode).unwrap();
    let boundary = &ham - &(&a.sigma(1) + &a.sigma(2));
    let shifted = &a.y(1) - &a.scalar(xi());
    assert_eq!(a.mul(&boundary, &shifted), a.scalar(a.lambda() * &xi()));
    let n = 2;
    let tau = a.transfer(n, &x(), &mode).unwrap();
    let dtau = tau.differentiate(Var::X).substitute(Var::X, &Scalar::one()).unwrap();
    let hn = a.hamiltonian(n, &mode).unwrap();
    let s1 = hn.coeff(&AffineKey::new(&[], Perm::simple(1)).unwrap());
    let alpha = dtau.coeff(&AffineKey::new(&[], Perm::simple(1)).unwrap()) * s1.inv().unwrap();
    let rest = &dtau - &hn.scale(&alpha);
    assert!(rest.terms().all(|(k, _)| *k == AffineKey::unit()), "τ'(1) is not α ℋ + β");
    assert!(!alpha.is_zero());
}

fn letter(level: usize) -> BoxedStrategy<Generator> {
    let ys = prop_oneof![(1..=level).prop_map(Y), (1..=level).prop_map(YInv)];
    if level < 2 {
        return ys.boxed();
    }
    prop_oneof![(1..level).prop_map(Sigma), (1..level).prop_map(SigmaInv), ys].boxed()
}

fn word(level: usize, len: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(letter(level), 0..=len)
}

fn y_degree(w: &[Generator]) -> usize {
    w.iter().filter(|g| matches!(g, Y(_) | YInv(_))).count()
}

fn random_element(level: usize) -> impl Strategy<Value = Vec<(Vec<Generator>, i64)>> {
    prop::collection::vec((word(level, 4).prop_filter("y-degree", |w| y_degree(w) <= 2), -3i64..=3), 1..=2)
}

fn build(a: &AffineAlgebra, parts: &[(Vec<Generator>, i64)]) -> AffineElement {
    parts.iter().fold(a.zero(), |acc, (w, c)| &acc + &no(a, w).scale(&Scalar::from_int(*c)))
}

fn relation(rank: usize) -> impl Strategy<Value = (Vec<Generator>, Vec<Generator>, Option<usize>)> {
    let i = 1..rank;
    prop_oneof![
        i.clone().prop_map(|i| (vec![Sigma(i), Y(i), Sigma(i)], vec![Y(i + 1)], None)),
        i.clone().prop_map(|i| (vec![Sigma(i), SigmaInv(i)], vec![], None)),
        i.clone().prop_map(|i| (vec![Sigma(i), Sigma(i)], vec![], Some(i))),
        (1..=rank, 1..=rank).prop_map(|(j, k)| (vec![Y(j), Y(k)], vec![Y(k), Y(j)], None)),
        (1..=rank).prop_map(|k| (vec![Y(k), YInv(k)], vec![], None)),
        (i.clone(), 1..=rank)
            .prop_filter("y away from σ", |(i, k)| *k != *i && *k != *i + 1)
            .prop_map(|(i, k)| (vec![Sigma(i), Y(k)], vec![Y(k), Sigma(i)], None)),
        (1..rank, 1..rank).prop_filter("distinct", |(i, j)| i != j).prop_map(|(i, j)| {
            if i.abs_diff(j) == 1 {
                (vec![Sigma(i), Sigma(j), Sigma(i)], vec![Sigma(j), Sigma(i), Sigma(j)], None)
            } else {
                (vec![Sigma(i), Sigma(j)], vec![Sigma(j), Sigma(i)], None)
            }
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn defining_relations(
        (rank, u, v, rel) in (3usize..=4).prop_flat_map(|r| (Just(r), word(r, 3), word(r, 3), relation(r)))
    ) {
        let a = AffineAlgebra::generic(rank);
        let (lhs, rhs, quadratic) = rel;
        let mut left = u.clone();
        left.extend(&lhs);
        left.extend(&v);
        let mut right = u.clone();
        right.extend(&rhs);
        right.extend(&v);
        let mut expect = no(&a, &right);
        if let Some(i) = quadratic {
            let mut extra = u.clone();
            extra.push(Sigma(i));
            extra.extend(&v);
            expect = &expect + &no(&a, &extra).scale(a.lambda());
        }
        prop_assert_eq!(no(&a, &left), expect);
    }

    #[test]
    fn normal_order_is_multiplicative(
        (rank, u, v) in (2usize..=4).prop_flat_map(|r| (Just(r), word(r, 5), word(r, 5)))
    ) {
        let a = AffineAlgebra::generic(rank);
        let mut uv = u.clone();
        uv.extend(&v);
        prop_assert_eq!(a.mul(&no(&a, &u), &no(&a, &v)), no(&a, &uv));
    }

    #[test]
    fn trace_axioms(
        (n, xs, ys, xps) in (1usize..=2).prop_flat_map(|n| (Just(n), random_element(n), random_element(n + 1), random_element(n)))
    ) {
        let a = numeric(n + 1);
        let x = build(&a, &xs);
        let y = build(&a, &ys);
        let xp = build(&a, &xps);
        let tr = |e: &AffineElement| a.markov_trace(n, e).unwrap();
        prop_assert_eq!(tr(&x), x.scale(a.d0()));
        prop_assert_eq!(tr(&a.product([&x, &y, &xp])), a.product([&x, &tr(&y), &xp]));
        prop_assert_eq!(tr(&a.product([&x, &a.sigma(n), &xp])), a.mul(&x, &xp));
        let inner = a.markov_trace(n - 1, &x).unwrap();
        prop_assert_eq!(tr(&a.product([&a.sigma(n), &x, &a.sigma_inv(n)])), inner.clone());
        prop_assert_eq!(tr(&a.product([&a.sigma_inv(n), &x, &a.sigma(n)])), inner);
        let both = |e: &AffineElement| a.markov_trace(n - 1, &tr(e)).unwrap();
        prop_assert_eq!(both(&a.mul(&a.sigma(n), &y)), both(&a.mul(&y, &a.sigma(n))));
    }

    #[test]
    fn trace_of_baxterized_sandwich(
        (n, xs) in (1usize..=2).prop_flat_map(|n| (Just(n), random_element(n)))
    ) {
        let a = numeric(n + 1);
        let e = build(&a, &xs);
        let lhs = a.markov_trace(n, &a.product([&a.sigma_x(n, &x()), &e, &a.sigma_x(n, &z())])).unwrap();
        let b = a.b().unwrap();
        let coef = a.lambda() * &(Scalar::one() - &(&(x() * z()) * &b.inv().unwrap()));
        let one_minus = (Scalar::one() - x()) * (Scalar::one() - z());
        let rhs = &a.markov_trace(n - 1, &e).unwrap().scale(&one_minus) + &e.scale(&coef);
        prop_assert_eq!(lhs, rhs);
    }
}
