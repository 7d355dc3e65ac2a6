use std::cmp::Ordering;
use std::fmt;

use crate::var::{Var, MAX_VARS};

/// A power product of variables, ordered by total degree then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub const fn one() -> Monomial {
        Monomial { deg: 0, exps: [0; MAX_VARS] }
    }

    pub fn var(v: Var, e: u16) -> Monomial {
        let mut m = Monomial::one();
        m.exps[v.index()] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exponents(pairs: &[(Var, u16)]) -> Monomial {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m.exps[v.index()] += e;
            m.deg += e as u32;
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[v.index()] as u32 + e as u32;
        m.exps[v.index()] = e;
        m
    }

    /// Variables with nonzero exponent, with their exponents.
    pub fn iter(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| (Var::from_index(i), *e))
    }

    pub fn var_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, e) in self.exps.iter().enumerate() {
            if *e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        m.deg -= other.deg;
        Some(m)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut m = *self;
        for e in m.exps.iter_mut() {
            *e = (*e as u32 * k).try_into().expect("exponent overflow");
        }
        m.deg *= k;
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
