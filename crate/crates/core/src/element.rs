use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use hechain_scalar::{Bindings, Scalar, ScalarError, Var};

use crate::AlgebraError;

/// A finite linear combination of basis keys `K` with [`Scalar`] coefficients.
///
/// Zero coefficients are never stored, so equality of elements is equality of
/// canonical forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<K: Ord> {
    pub(crate) rank: usize,
    pub(crate) terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Copy> Element<K> {
    pub fn zero(rank: usize) -> Self {
        Element { rank, terms: BTreeMap::new() }
    }

    pub fn monomial(rank: usize, key: K, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Element { rank, terms }
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut e = Element::zero(rank);
        for (k, c) in terms {
            e.add_term(k, &c);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(key, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Element::zero(self.rank);
        }
        Element { rank: self.rank, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn try_map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, ScalarError>) -> Result<Self, AlgebraError> {
        let mut out = Element::zero(self.rank);
        for (k, v) in &self.terms {
            out.add_term(*k, &f(v)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<Self, AlgebraError> {
        self.try_map_coeffs(|c| c.substitute(v, value))
    }

    pub fn evaluate(&self, bindings: &Bindings) -> Result<Self, AlgebraError> {
        self.try_map_coeffs(|c| c.evaluate(bindings))
    }

    pub fn differentiate(&self, v: Var) -> Self {
        self.try_map_coeffs(|c| Ok(c.differentiate(v))).expect("differentiation cannot fail")
    }

    /// The coefficient of the basis key if this is a multiple of it, for identity-only elements.
    pub fn as_multiple_of(&self, key: &K) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(key).cloned(),
            _ => None,
        }
    }

    /// `c` with `self = c · other`, if such a scalar exists and `other` is nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        let (key, base) = other.terms.iter().next()?;
        let c = self.coeff(key).checked_div(base).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    pub(crate) fn check_rank(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }
}

impl<K: Ord + Copy> Add for &Element<K> {
    type Output = Element<K>;
    fn add(self, rhs: &Element<K>) -> Element<K> {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl<K: Ord + Copy> Sub for &Element<K> {
    type Output = Element<K>;
    fn sub(self, rhs: &Element<K>) -> Element<K> {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl<K: Ord + Copy> Neg for &Element<K> {
    type Output = Element<K>;
    fn neg(self) -> Element<K> {
        Element { rank: self.rank, terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl<K: Ord + Copy> Mul<&Scalar> for &Element<K> {
    type Output = Element<K>;
    fn mul(self, rhs: &Scalar) -> Element<K> {
        self.scale(rhs)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<K: Ord + Copy> $tr for Element<K> {
            type Output = Element<K>;
            fn $m(self, rhs: Element<K>) -> Element<K> {
                (&self).$m(&rhs)
            }
        }
        impl<K: Ord + Copy> $tr<&Element<K>> for Element<K> {
            type Output = Element<K>;
            fn $m(self, rhs: &Element<K>) -> Element<K> {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub);

impl<K: Ord + Copy> Neg for Element<K> {
    type Output = Element<K>;
    fn neg(self) -> Element<K> {
        -&self
    }
}

impl<K: Ord + Copy + fmt::Debug> fmt::Debug for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})*{k:?}")?;
        }
        Ok(())
    }
}
