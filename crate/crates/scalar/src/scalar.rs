use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_int::IBig;

use crate::gcd::{gcd, gcd_cofactors};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::var::Var;
use crate::ScalarError;

/// Values substituted for variables.
pub type Bindings = BTreeMap<Var, Scalar>;

/// An element of Q(vars) in lowest terms: `num/den`, `gcd(num, den) = 1`, `lc(den) > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar { num: Poly::constant(n), den: Poly::one() }
    }

    pub fn from_ibig(n: IBig) -> Scalar {
        Scalar { num: Poly::constant(n), den: Poly::one() }
    }

    /// `p/r`; panics if `r == 0`.
    pub fn ratio(p: i64, r: i64) -> Scalar {
        Scalar::from_rational(&Rational::ratio(p, r).expect("nonzero denominator"))
    }

    pub fn from_rational(r: &Rational) -> Scalar {
        Scalar { num: Poly::constant(r.numer().clone()), den: Poly::constant(r.denom().clone()) }
    }

    pub fn var(v: Var) -> Scalar {
        Scalar { num: Poly::var(v), den: Poly::one() }
    }

    pub fn q() -> Scalar {
        Scalar::var(Var::Q)
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar { num: p, den: Poly::one() }
    }

    /// `v^k` for any integer `k`.
    pub fn var_pow(v: Var, k: i32) -> Scalar {
        let m = Poly::term(Monomial::var(v, k.unsigned_abs() as u16), IBig::ONE);
        if k >= 0 {
            Scalar { num: m, den: Poly::one() }
        } else {
            Scalar { num: Poly::one(), den: m }
        }
    }

    /// Builds `num/den` in lowest terms.
    pub fn new(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let (_, n, d) = gcd_cofactors(&num, &den);
        Scalar::with_sign(n, d)
    }

    fn with_sign(num: Poly, den: Poly) -> Scalar {
        if den.sign_of_lead() < 0 {
            Scalar { num: num.neg(), den: den.neg() }
        } else {
            Scalar { num, den }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Rational::new(n, d).ok()
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.to_rational().map(|r| r.to_f64())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mask = self.num.var_mask() | self.den.var_mask();
        (0..64).filter(|i| mask & (1 << i) != 0).map(Var::from_index).collect()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        (self.num.var_mask() | self.den.var_mask()) & (1 << v.index()) != 0
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::with_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (_, a, c) = gcd_cofactors(&self.num, &other.num);
        let (_, d, b) = gcd_cofactors(&other.den, &self.den);
        Ok(Scalar::with_sign(a.mul(&d), b.mul(&c)))
    }

    pub fn pow(&self, k: i32) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(Scalar { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Partial derivative in `v`.
    pub fn differentiate(&self, v: Var) -> Scalar {
        let dn = self.num.derivative(v);
        if self.den.is_constant() {
            return Scalar::reduce(dn, self.den.clone());
        }
        let dd = self.den.derivative(v);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Scalar::reduce(num, self.den.mul(&self.den))
    }

    /// Substitutes `value` for `v`; fails with a pole error if the denominator vanishes.
    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<Scalar, ScalarError> {
        if !self.depends_on(v) {
            return Ok(self.clone());
        }
        if let Some(r) = value.to_rational() {
            let (n, dn) = self.num.eval_ratio(v, r.numer(), r.denom());
            let (d, dd) = self.den.eval_ratio(v, r.numer(), r.denom());
            if d.is_zero() {
                return Err(ScalarError::Pole(v));
            }
            let rp = |e: u16| Poly::constant(r.denom().pow(e as usize));
            let (n, d) = match dn.cmp(&dd) {
                Ordering::Less => (n.mul(&rp(dd - dn)), d),
                Ordering::Greater => (n, d.mul(&rp(dn - dd))),
                Ordering::Equal => (n, d),
            };
            return Ok(Scalar::reduce(n, d));
        }
        let n = horner(&self.num, v, value);
        let d = horner(&self.den, v, value);
        if d.is_zero() {
            return Err(ScalarError::Pole(v));
        }
        n.checked_div(&d)
    }

    /// Substitutes all bound variables, in variable order.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<Scalar, ScalarError> {
        let mut out = self.clone();
        for (v, value) in bindings {
            out = out.substitute(*v, value)?;
        }
        Ok(out)
    }

    /// Coefficients in `v` when the denominator is free of `v`, lowest degree first.
    pub fn coefficients_in(&self, v: Var) -> Option<Vec<Scalar>> {
        if self.den.degree_in(v) > 0 {
            return None;
        }
        let dense = self.num.to_dense_in(v);
        Some(dense.into_iter().map(|c| Scalar::reduce(c, self.den.clone())).collect())
    }

    /// Splits the denominator as `c * m * core` with `c > 0` an integer, `m` a monomial.
    pub fn split_denominator(&self) -> (IBig, Monomial, Poly) {
        split_den(&self.den)
    }
}

pub(crate) fn split_den(den: &Poly) -> (IBig, Monomial, Poly) {
    let c = den.content();
    let m = den.monomial_content();
    let core = den.div_monomial(&m).div_coeff_exact(&c);
    (c, m, core)
}

fn horner(p: &Poly, v: Var, value: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.to_dense_in(v).into_iter().rev() {
        acc = &(&acc * value) + &Scalar::from_poly(c);
    }
    acc
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Self {
        Scalar::var(v)
    }
}

impl From<&Rational> for Scalar {
    fn from(r: &Rational) -> Self {
        Scalar::from_rational(r)
    }
}

fn add_impl(a: &Scalar, b: &Scalar, negate: bool) -> Scalar {
    let bn = if negate { b.num.neg() } else { b.num.clone() };
    if a.is_zero() {
        return Scalar { num: bn, den: b.den.clone() };
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den.is_one() && b.den.is_one() {
        return Scalar { num: a.num.add(&bn), den: Poly::one() };
    }
    if b.den.is_one() {
        return Scalar { num: a.num.add(&bn.mul(&a.den)), den: a.den.clone() };
    }
    if a.den.is_one() {
        return Scalar { num: a.num.mul(&b.den).add(&bn), den: b.den.clone() };
    }
    if a.den == b.den {
        return Scalar::reduce(a.num.add(&bn), a.den.clone());
    }
    let (g, ad, bd) = gcd_cofactors(&a.den, &b.den);
    let num = a.num.mul(&bd).add(&bn.mul(&ad));
    if num.is_zero() {
        return Scalar::zero();
    }
    if g.is_one() {
        return Scalar { num, den: ad.mul(&b.den) };
    }
    let (_, n, gg) = gcd_cofactors(&num, &g);
    Scalar::with_sign(n, ad.mul(&bd).mul(&gg))
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return Scalar { num: a.num.mul(&b.num), den: Poly::one() };
    }
    let (_, an, bd) = gcd_cofactors(&a.num, &b.den);
    let (_, bn, ad) = gcd_cofactors(&b.num, &a.den);
    Scalar::with_sign(an.mul(&bn), ad.mul(&bd))
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        add_impl(self, rhs, false)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        add_impl(self, rhs, true)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        mul_impl(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| p.len() > 1;
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if wrap(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let plain = self.den.is_constant() || self.den.lead().is_some_and(|t| t.1.is_one());
        if wrap(&self.den) || !plain {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Least common multiple of the non-monomial parts of the denominators.
pub fn common_core<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Poly {
    let mut core = Poly::one();
    let mut last = Poly::one();
    for s in values {
        if s.den.is_term() {
            continue;
        }
        let (_, _, c) = split_den(&s.den);
        if c == last || c == core {
            continue;
        }
        let g = gcd(&core, &c);
        core = core.mul(&c.div_exact(&g).unwrap());
        last = c;
    }
    if core.sign_of_lead() < 0 {
        core = core.neg();
    }
    core
}
