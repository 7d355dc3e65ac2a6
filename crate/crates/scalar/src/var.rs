use std::fmt;
use std::sync::{LazyLock, RwLock};

use crate::ScalarError;

/// Upper bound on the number of distinct variables.
pub const MAX_VARS: usize = 40;

const BUILTIN: [&str; 34] = [
    "q", "x", "z", "y", "w", "s", "xi", "xi1", "xi2", "xi3", "xi4", "delta", "mup", "mum", "t",
    "u", "v", "d0", "d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "dm1", "dm2", "dm3", "dm4",
    "dm5", "dm6", "dm7", "dm8",
];

static REGISTRY: LazyLock<RwLock<Vec<&'static str>>> =
    LazyLock::new(|| RwLock::new(BUILTIN.to_vec()));

/// A variable of the rational function field. Index order is the monomial order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u8);

impl Var {
    pub const Q: Var = Var(0);
    pub const X: Var = Var(1);
    pub const Z: Var = Var(2);
    pub const Y: Var = Var(3);
    pub const W: Var = Var(4);
    pub const S: Var = Var(5);
    pub const XI: Var = Var(6);
    pub const DELTA: Var = Var(11);
    pub const MU_PLUS: Var = Var(12);
    pub const MU_MINUS: Var = Var(13);
    pub const T: Var = Var(14);
    pub const U: Var = Var(15);
    pub const V: Var = Var(16);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Var {
        Var(i as u8)
    }

    pub fn name(self) -> &'static str {
        REGISTRY.read().unwrap()[self.index()]
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let reg = REGISTRY.read().unwrap();
        reg.iter().position(|n| *n == name).map(|i| Var(i as u8))
    }

    /// Returns the variable with this name, registering it if new.
    pub fn declare(name: &str) -> Result<Var, ScalarError> {
        if let Some(v) = Var::lookup(name) {
            return Ok(v);
        }
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(ScalarError::UnknownVariable(name.to_string()));
        }
        let mut reg = REGISTRY.write().unwrap();
        if let Some(i) = reg.iter().position(|n| *n == name) {
            return Ok(Var(i as u8));
        }
        if reg.len() >= MAX_VARS {
            return Err(ScalarError::TooManyVariables);
        }
        reg.push(Box::leak(name.to_string().into_boxed_str()));
        Ok(Var((reg.len() - 1) as u8))
    }

    /// The symbol D(k) for the trace constant of `y1^k`, `|k| <= 8`.
    pub fn trace_constant(k: i32) -> Option<Var> {
        match k {
            0..=8 => Some(Var(17 + k as u8)),
            -8..=-1 => Some(Var(25 + (-k) as u8)),
            _ => None,
        }
    }

    /// The inhomogeneity `xi_i`, `1 <= i <= 4`.
    pub fn inhomogeneity(i: usize) -> Option<Var> {
        (1..=4).contains(&i).then(|| Var(6 + i as u8))
    }

    pub fn count() -> usize {
        REGISTRY.read().unwrap().len()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
