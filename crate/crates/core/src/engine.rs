//! Shared kernel: coefficient maps kept as `Laurent / core` during products.

use std::collections::BTreeMap;
use std::hash::Hash;
use std::sync::{Arc, LazyLock, RwLock};

use hechain_scalar::{common_core, lambda_at, Laurent, Poly, Scalar};
use rustc_hash::FxHashMap;

use crate::perm::Perm;
use crate::AlgebraError;

pub(crate) type Map<K> = FxHashMap<K, Laurent>;

/// Coefficients `terms[k] / core`.
#[derive(Clone, Debug)]
pub(crate) struct Work<K> {
    pub core: Poly,
    pub terms: Map<K>,
}

impl<K: Copy + Hash + Eq + Ord> Work<K> {
    pub fn from_terms(terms: &BTreeMap<K, Scalar>) -> Work<K> {
        let core = common_core(terms.values());
        let terms = terms.iter().map(|(k, c)| (*k, Laurent::from_scalar(c, &core))).collect();
        Work { core, terms }
    }

    pub fn into_terms(self) -> BTreeMap<K, Scalar> {
        let core = self.core;
        self.terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.to_scalar(&core)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

pub(crate) fn add_into<K: Hash + Eq>(map: &mut Map<K>, key: K, c: Laurent) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => v.add_assign(&c),
        None => {
            map.insert(key, c);
        }
    }
}

pub(crate) fn add_into_ref<K: Hash + Eq>(map: &mut Map<K>, key: K, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => v.add_assign(c),
        None => {
            map.insert(key, c.clone());
        }
    }
}

/// The coefficient ring data shared by all algebras: `q` and powers of `λ`.
#[derive(Debug)]
pub(crate) struct Ring {
    pub q: Scalar,
    pub lambda: Scalar,
    lambda_l: Laurent,
    powers: RwLock<Vec<Laurent>>,
}

impl Clone for Ring {
    fn clone(&self) -> Self {
        Ring::new(self.q.clone()).expect("already validated")
    }
}

impl Ring {
    pub fn new(q: Scalar) -> Result<Ring, AlgebraError> {
        if q.is_zero() {
            return Err(AlgebraError::InvalidParameter("q must be nonzero".into()));
        }
        let lambda = lambda_at(&q);
        let lambda_l = Laurent::try_from_scalar(&lambda)
            .ok_or_else(|| AlgebraError::InvalidParameter("q must be a monomial or a rational".into()))?;
        Ok(Ring { q, lambda, powers: RwLock::new(vec![Laurent::one(), lambda_l.clone()]), lambda_l })
    }

    pub fn lambda_l(&self) -> &Laurent {
        &self.lambda_l
    }

    pub fn lambda_pow(&self, k: usize) -> Laurent {
        {
            let p = self.powers.read().unwrap();
            if k < p.len() {
                return p[k].clone();
            }
        }
        let mut p = self.powers.write().unwrap();
        while p.len() <= k {
            let next = p.last().unwrap().mul(&self.lambda_l);
            p.push(next);
        }
        p[k].clone()
    }

    /// Evaluates an integer polynomial in `λ`.
    pub fn lambda_poly(&self, coeffs: &[i64]) -> Laurent {
        let mut acc = Laurent::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc.add_assign(&self.lambda_pow(k).scale(c));
            }
        }
        acc
    }

    /// `Laurent` form of a scalar whose denominator is a single term.
    pub fn laurent(&self, s: &Scalar) -> Result<Laurent, AlgebraError> {
        Laurent::try_from_scalar(s).ok_or_else(|| {
            AlgebraError::InvalidParameter(format!("parameter {s} must have a monomial denominator"))
        })
    }
}

type ProductTable = FxHashMap<(Perm, Perm), Arc<Vec<(Perm, Vec<i64>)>>>;

static PRODUCTS: LazyLock<RwLock<ProductTable>> = LazyLock::new(|| RwLock::new(FxHashMap::default()));

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

/// `T_u T_v = Σ_w P_w(λ) T_w` with integer polynomials `P_w`, cached globally.
pub(crate) fn basis_product(u: &Perm, v: &Perm) -> Arc<Vec<(Perm, Vec<i64>)>> {
    if let Some(r) = PRODUCTS.read().unwrap().get(&(*u, *v)) {
        return r.clone();
    }
    let mut cur: FxHashMap<Perm, Vec<i64>> = FxHashMap::default();
    cur.insert(*v, vec![1]);
    for &i in u.reduced_word().iter().rev() {
        let mut next: FxHashMap<Perm, Vec<i64>> = FxHashMap::default();
        for (w, p) in cur {
            let sw = w.left_simple(i);
            poly_add(next.entry(sw).or_default(), &p, 0);
            if !w.left_ascent(i) {
                poly_add(next.entry(w).or_default(), &p, 1);
            }
        }
        cur = next;
    }
    let mut out: Vec<(Perm, Vec<i64>)> = cur.into_iter().filter(|(_, p)| p.iter().any(|c| *c != 0)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    let out = Arc::new(out);
    PRODUCTS.write().unwrap().insert((*u, *v), out.clone());
    out
}
