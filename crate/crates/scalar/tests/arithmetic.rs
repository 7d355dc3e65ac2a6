use hechain_scalar::{gcd, prs_gcd, Bindings, IBig, Monomial, Poly, Rational, Scalar, ScalarError, Var};
use proptest::prelude::*;

const VARS: [Var; 4] = [Var::Q, Var::X, Var::Z, Var::XI];

fn poly_strategy(max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..=6, 0u16..3, 0u16..3, 0u16..2, 0u16..2), 1..max_terms).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|(c, a, b, d, e)| {
            (Monomial::from_exponents(&[(VARS[0], a), (VARS[1], b), (VARS[2], d), (VARS[3], e)]), IBig::from(c))
        }))
    })
}

fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_strategy(4), nonzero_poly(3)).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn point() -> Bindings {
    let mut b = Bindings::new();
    b.insert(Var::Q, Scalar::ratio(7, 3));
    b.insert(Var::X, Scalar::ratio(-5, 11));
    b.insert(Var::Z, Scalar::ratio(13, 2));
    b.insert(Var::XI, Scalar::ratio(3, 17));
    b
}

/// Exact evaluation of a polynomial at the fixed point, term by term.
fn eval_poly_oracle(p: &Poly) -> Option<Rational> {
    let b = point();
    let mut total = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_ibig(c.clone());
        for (v, e) in m.iter() {
            for _ in 0..e {
                t = &t * &b[&v];
            }
        }
        total = &total + &t;
    }
    total.to_rational()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn canonical_form(a in scalar_strategy()) {
        let g = gcd(a.numerator(), a.denominator());
        prop_assert!(g.is_one() || a.is_zero());
        prop_assert!(a.denominator().lead_coeff() > IBig::ZERO);
    }

    #[test]
    fn gcd_matches_prs(a in nonzero_poly(4), b in nonzero_poly(4), h in nonzero_poly(3)) {
        let ah = a.mul(&h);
        let bh = b.mul(&h);
        let g = gcd(&ah, &bh);
        prop_assert!(ah.div_exact(&g).is_some());
        prop_assert!(bh.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&h).is_some());
        let pa = ah.div_monomial(&ah.monomial_content());
        let pb = bh.div_monomial(&bh.monomial_content());
        let pa = pa.div_coeff_exact(&pa.content());
        let pb = pb.div_coeff_exact(&pb.content());
        if !pa.is_constant() && !pb.is_constant() && pa.var_mask() == pb.var_mask() {
            let hg = gcd(&pa, &pb);
            prop_assert_eq!(prs_gcd(&pa, &pb), hg);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(5), b in poly_strategy(5)) {
        let s = Scalar::from_poly(a.clone());
        let t = Scalar::from_poly(b.clone());
        let pt = point();
        let lhs = (&s * &t).evaluate(&pt).unwrap().to_rational().unwrap();
        let ea = Scalar::from_rational(&eval_poly_oracle(&a).unwrap());
        let eb = Scalar::from_rational(&eval_poly_oracle(&b).unwrap());
        prop_assert_eq!(Scalar::from_rational(&lhs), &ea * &eb);
    }

    #[test]
    fn product_rule(a in scalar_strategy(), b in scalar_strategy()) {
        let d = |s: &Scalar| s.differentiate(Var::X);
        prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
    }

    #[test]
    fn json_roundtrip(a in scalar_strategy()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Scalar = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn lambda_squared() {
    let l = hechain_scalar::lambda();
    let q = Scalar::q();
    let expected = &(&q * &q) + &(&q.pow(-2).unwrap() - &Scalar::from_int(2));
    assert_eq!(&l * &l, expected);
    assert_eq!(l.to_string(), "(q^2 - 1)/q");
}

#[test]
fn pole_names_variable() {
    let x = Scalar::var(Var::X);
    let s = Scalar::one().checked_div(&(&x - &Scalar::one())).unwrap();
    let mut b = Bindings::new();
    b.insert(Var::X, Scalar::one());
    assert_eq!(s.evaluate(&b), Err(ScalarError::Pole(Var::X)));
}

#[test]
fn substitution_of_expression() {
    let x = Scalar::var(Var::X);
    let z = Scalar::var(Var::Z);
    let q = Scalar::q();
    let s = (&x * &x - Scalar::one()).checked_div(&(&x + &q)).unwrap();
    let value = &z * &q.pow(-2).unwrap();
    let direct = (&value * &value - Scalar::one()).checked_div(&(&value + &q)).unwrap();
    assert_eq!(s.substitute(Var::X, &value).unwrap(), direct);
}

#[test]
fn monic_denominator_in_json() {
    let two_q = Scalar::from_poly(Poly::var(Var::Q).scale(&IBig::from(2)));
    let s = Scalar::one().checked_div(&two_q).unwrap();
    let v: serde_json::Value = serde_json::to_value(&s).unwrap();
    assert_eq!(v["den"][0]["coeff"], "1");
    assert_eq!(v["num"][0]["coeff"], "1/2");
}
