use dashu_base::Gcd;
use dashu_int::IBig;

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{split_den, Scalar};

/// `num / (c * m)` with `c` a positive integer and `m` a monomial.
///
/// Sums and products never compute polynomial gcds, so this is the working
/// coefficient type for algebra kernels. Convert back with [`Laurent::to_scalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    num: Poly,
    den_c: IBig,
    den_m: Monomial,
}

impl Default for Laurent {
    fn default() -> Self {
        Laurent::zero()
    }
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { num: Poly::zero(), den_c: IBig::ONE, den_m: Monomial::one() }
    }

    pub fn one() -> Laurent {
        Laurent::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Laurent {
        Laurent::from_poly(Poly::constant(n))
    }

    pub fn from_poly(p: Poly) -> Laurent {
        Laurent { num: p, den_c: IBig::ONE, den_m: Monomial::one() }
    }

    pub fn new(num: Poly, den_c: IBig, den_m: Monomial) -> Laurent {
        assert!(den_c > IBig::ZERO);
        Laurent { num, den_c, den_m }
    }

    /// Converts `s`, whose denominator must divide `core` times a term, to `(s * core)`.
    pub fn from_scalar(s: &Scalar, core: &Poly) -> Laurent {
        let (c, m, sc) = split_den(s.denominator());
        let num = if sc.is_one() {
            s.numerator().mul(core)
        } else {
            s.numerator().mul(&core.div_exact(&sc).expect("core is a common multiple"))
        };
        Laurent { num, den_c: c, den_m: m }
    }

    /// Converts `s` when its denominator is a single term.
    pub fn try_from_scalar(s: &Scalar) -> Option<Laurent> {
        if !s.denominator().is_term() {
            return None;
        }
        Some(Laurent::from_scalar(s, &Poly::one()))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `self / core` as a reduced scalar.
    pub fn to_scalar(&self, core: &Poly) -> Scalar {
        let den = core.mul_term(&self.den_m, &self.den_c);
        Scalar::new(self.num.clone(), den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Laurent {
        Laurent { num: self.num.neg(), den_c: self.den_c.clone(), den_m: self.den_m }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut out = Laurent {
            num: self.num.mul(&other.num),
            den_c: &self.den_c * &other.den_c,
            den_m: self.den_m.mul(&other.den_m),
        };
        out.tidy();
        out
    }

    pub fn scale(&self, c: i64) -> Laurent {
        Laurent { num: self.num.scale(&IBig::from(c)), den_c: self.den_c.clone(), den_m: self.den_m }
    }

    /// Cancels common integer and monomial factors.
    pub fn tidy(&mut self) {
        if self.num.is_zero() {
            self.den_c = IBig::ONE;
            self.den_m = Monomial::one();
            return;
        }
        if !self.den_m.is_one() {
            let g = self.num.monomial_content().gcd(&self.den_m);
            if !g.is_one() {
                self.num = self.num.div_monomial(&g);
                self.den_m = self.den_m.checked_div(&g).unwrap();
            }
        }
        if !self.den_c.is_one() {
            let g = IBig::from(self.num.content().gcd(&self.den_c));
            if !g.is_one() {
                self.num = self.num.div_coeff_exact(&g);
                self.den_c = &self.den_c / &g;
            }
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Laurent) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        if self.den_c == other.den_c && self.den_m == other.den_m {
            self.num = self.num.add(&other.num);
            if self.num.is_zero() {
                self.tidy();
            }
            return;
        }
        let g = IBig::from((&self.den_c).gcd(&other.den_c));
        let lc = &self.den_c / &g * &other.den_c;
        let lm = self.den_m.lcm(&other.den_m);
        let fa = (&lc / &self.den_c, lm.checked_div(&self.den_m).unwrap());
        let fb = (&lc / &other.den_c, lm.checked_div(&other.den_m).unwrap());
        self.num = self.num.mul_term(&fa.1, &fa.0).add(&other.num.mul_term(&fb.1, &fb.0));
        self.den_c = lc;
        self.den_m = lm;
        if self.num.is_zero() {
            self.tidy();
        }
    }
}
