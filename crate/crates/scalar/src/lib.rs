//! Exact arithmetic in the field Q(q, x, z, ...) of multivariate rational functions.
//!
//! [`Scalar`] is the canonical reduced fraction used everywhere as a coefficient.
//! [`Laurent`] is a gcd-free working form for inner loops whose denominators are
//! single terms, such as `q - 1/q`.

mod error;
mod gcd;
mod laurent;
mod monomial;
mod poly;
mod rational;
mod scalar;
mod serial;
mod var;

pub use error::ScalarError;
pub use gcd::{gcd, gcd_cofactors, prs_gcd};
pub use laurent::Laurent;
pub use monomial::Monomial;
pub use poly::Poly;
pub use rational::Rational;
pub use scalar::{common_core, Bindings, Scalar};
pub use var::{Var, MAX_VARS};

pub use dashu_int::IBig;

/// `q - 1/q`.
pub fn lambda() -> Scalar {
    lambda_at(&Scalar::q())
}

/// `q - 1/q` for a given value of `q`.
pub fn lambda_at(q: &Scalar) -> Scalar {
    q - &q.inv().expect("q is nonzero")
}
