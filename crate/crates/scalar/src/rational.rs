use std::fmt;
use std::str::FromStr;

use dashu_base::{BitTest, Gcd, Signed, UnsignedAbs};
use dashu_int::IBig;

use crate::ScalarError;

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational {
    num: IBig,
    den: IBig,
}

impl Rational {
    pub fn new(num: IBig, den: IBig) -> Result<Rational, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let g = IBig::from((&num).gcd(&den));
        let (mut num, mut den) = if g.is_one() || g.is_zero() { (num, den) } else { (num / &g, den / &g) };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            den = IBig::ONE;
        }
        Ok(Rational { num, den })
    }

    pub fn integer(n: impl Into<IBig>) -> Rational {
        Rational { num: n.into(), den: IBig::ONE }
    }

    pub fn ratio(p: i64, q: i64) -> Result<Rational, ScalarError> {
        Rational::new(IBig::from(p), IBig::from(q))
    }

    pub fn numer(&self) -> &IBig {
        &self.num
    }

    pub fn denom(&self) -> &IBig {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.num.to_f64().value();
        let d = self.den.to_f64().value();
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
        let shift = self.num.bits().max(self.den.bits()) - 900;
        let n = (&self.num >> shift).to_f64().value();
        let d = (&self.den >> shift).to_f64().value();
        n / d
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: IBig = p.trim().parse().map_err(|_| bad())?;
                let q: IBig = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::integer(s.parse::<IBig>().map_err(|_| bad())?)),
        }
    }
}

pub(crate) trait IBigExt {
    fn abs_val(&self) -> IBig;
    fn bits(&self) -> usize;
}

impl IBigExt for IBig {
    fn abs_val(&self) -> IBig {
        IBig::from(self.unsigned_abs())
    }

    fn bits(&self) -> usize {
        self.unsigned_abs().bit_len()
    }
}
