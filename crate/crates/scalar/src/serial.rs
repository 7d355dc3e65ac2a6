use std::collections::BTreeMap;

use dashu_base::Gcd;
use dashu_int::IBig;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::var::Var;

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: BTreeMap<String, u16>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    num: Vec<TermRepr>,
    den: Vec<TermRepr>,
}

fn terms_repr(p: &Poly, scale: &IBig) -> Vec<TermRepr> {
    p.terms()
        .iter()
        .map(|(m, c)| TermRepr {
            exponents: m.iter().map(|(v, e)| (v.name().to_string(), e)).collect(),
            coeff: Rational::new(c.clone(), scale.clone()).expect("nonzero").to_string(),
        })
        .collect()
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let lc = self.denominator().lead_coeff();
        ScalarRepr { num: terms_repr(self.numerator(), &lc), den: terms_repr(self.denominator(), &lc) }
            .serialize(serializer)
    }
}

fn parse_terms(terms: &[TermRepr]) -> Result<Vec<(Monomial, Rational)>, String> {
    terms
        .iter()
        .map(|t| {
            let mut pairs = Vec::new();
            for (name, e) in &t.exponents {
                let v = Var::declare(name).map_err(|e| e.to_string())?;
                pairs.push((v, *e));
            }
            let c: Rational = t.coeff.parse().map_err(|e: crate::ScalarError| e.to_string())?;
            Ok((Monomial::from_exponents(&pairs), c))
        })
        .collect()
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let num = parse_terms(&repr.num).map_err(D::Error::custom)?;
        let den = parse_terms(&repr.den).map_err(D::Error::custom)?;
        let mut l = IBig::ONE;
        for (_, c) in num.iter().chain(den.iter()) {
            let g = IBig::from((&l).gcd(c.denom()));
            l = &l / &g * c.denom();
        }
        let to_poly = |ts: &[(Monomial, Rational)]| {
            Poly::from_terms(ts.iter().map(|(m, c)| (*m, c.numer() * (&l / c.denom()))))
        };
        Scalar::new(to_poly(&num), to_poly(&den)).map_err(D::Error::custom)
    }
}
