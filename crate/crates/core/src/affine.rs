//! The affine Hecke algebra `Ĥ_N` in the basis `y^a T_w`, optionally modulo
//! `y_1² = P y_1 + R`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use hechain_scalar::{Laurent, Scalar, Var};
use rustc_hash::FxHashMap;

use crate::element::Element;
use crate::engine::{add_into, add_into_ref, basis_product, Map, Work};
use crate::hecke::{coset_split, HeckeAlgebra, HeckeElement};
use crate::perm::{Perm, MAX_STRANDS};
use crate::AlgebraError;

pub type YPow = [i8; MAX_STRANDS];

/// Basis monomial `y_1^{a_1} ⋯ y_N^{a_N} T_w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineKey {
    ypow: YPow,
    perm: Perm,
}

impl AffineKey {
    pub fn new(ypow: &[i32], perm: Perm) -> Option<AffineKey> {
        if ypow.len() > MAX_STRANDS {
            return None;
        }
        let mut a = [0i8; MAX_STRANDS];
        for (slot, &e) in a.iter_mut().zip(ypow) {
            *slot = i8::try_from(e).ok()?;
        }
        Some(AffineKey { ypow: a, perm })
    }

    pub fn unit() -> AffineKey {
        AffineKey { ypow: [0; MAX_STRANDS], perm: Perm::identity() }
    }

    pub fn perm(&self) -> Perm {
        self.perm
    }

    /// Exponent of `y_k` (1-based).
    pub fn exponent(&self, k: usize) -> i32 {
        self.ypow[k - 1] as i32
    }

    pub fn ypow(&self, n: usize) -> Vec<i32> {
        self.ypow[..n].iter().map(|&e| e as i32).collect()
    }

    fn support(&self) -> usize {
        let ys = (0..MAX_STRANDS).rev().find(|&i| self.ypow[i] != 0).map(|i| i + 1).unwrap_or(0);
        ys.max(self.perm.support())
    }
}

impl fmt::Debug for AffineKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support().max(1);
        write!(f, "y{:?}T{:?}", &self.ypow[..n], self.perm)
    }
}

pub type AffineElement = Element<AffineKey>;

fn add_pow(a: &YPow, b: &YPow) -> YPow {
    let mut out = *a;
    for (o, e) in out.iter_mut().zip(b) {
        *o = o.checked_add(*e).expect("y exponent overflow");
    }
    out
}

fn unit_pow(k: usize, e: i32) -> YPow {
    let mut a = [0i8; MAX_STRANDS];
    a[k - 1] = e as i8;
    a
}

/// Boundary solution `y_1(x)` of the reflection equation.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryMode {
    /// `y_1(x) = 1`.
    Free,
    /// `(y_1 - ξ x)(y_1 - ξ/x)^{-1}` reduced by the quadratic relation.
    QuadraticBlob { xi: Scalar },
    /// `Σ_k c_k(x) y_1^k` with coefficients given as functions of the variable `x`.
    Polynomial(Vec<Scalar>),
}

#[derive(Clone, Debug)]
struct Quadratic {
    p: Scalar,
    r: Scalar,
    d1: Scalar,
    delta: Scalar,
    p_l: Laurent,
    r_l: Laurent,
    r_inv_l: Option<Laurent>,
}

#[derive(Default)]
struct Caches {
    ynf: FxHashMap<YPow, Arc<Map<AffineKey>>>,
    square: Vec<Arc<Map<AffineKey>>>,
    inverse: Vec<Arc<Map<AffineKey>>>,
    t: FxHashMap<(usize, i32), Arc<Map<AffineKey>>>,
    w: FxHashMap<(usize, i32), Arc<Map<AffineKey>>>,
    ty: FxHashMap<(usize, i32), Arc<Map<AffineKey>>>,
    wy: FxHashMap<(usize, i32), Arc<Map<AffineKey>>>,
    wc: FxHashMap<(usize, i32, Perm), Arc<Map<AffineKey>>>,
}

/// Trace constants `D⁽ᵏ⁾ = Tr_{D(1)}(y_1^k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceConstants {
    values: BTreeMap<i32, Scalar>,
    window: i32,
}

impl TraceConstants {
    /// Independent symbols `d_k` for `|k| ≤ window`.
    pub fn symbolic(window: i32) -> TraceConstants {
        let window = window.clamp(0, 8);
        let values = (-window..=window).map(|k| (k, Scalar::var(Var::trace_constant(k).unwrap()))).collect();
        TraceConstants { values, window }
    }

    /// Constants obeying `D⁽ᵏ⁺²⁾ = P D⁽ᵏ⁺¹⁾ + R D⁽ᵏ⁾` from `D⁽⁰⁾`, `D⁽¹⁾`.
    pub fn recursive(d0: &Scalar, d1: &Scalar, p: &Scalar, r: &Scalar, window: i32) -> Result<TraceConstants, AlgebraError> {
        let mut values = BTreeMap::new();
        values.insert(0, d0.clone());
        values.insert(1, d1.clone());
        for k in 2..=window {
            let v = p * &values[&(k - 1)] + r * &values[&(k - 2)];
            values.insert(k, v);
        }
        if r.is_zero() {
            return Ok(TraceConstants { values, window });
        }
        let r_inv = r.inv()?;
        for k in (-window..0).rev() {
            let v = (&values[&(k + 2)] - &(p * &values[&(k + 1)])) * r_inv.clone();
            values.insert(k, v);
        }
        Ok(TraceConstants { values, window })
    }

    pub fn get(&self, k: i32) -> Option<&Scalar> {
        self.values.get(&k)
    }

    pub fn window(&self) -> i32 {
        self.window
    }
}

/// `Ĥ_N(q)` with trace maps `Tr_{D(n+1)}` and, optionally, the quadratic
/// relation `y_1² = q D⁽¹⁾ y_1 + q⁻¹ Δ`.
pub struct AffineAlgebra {
    hecke: HeckeAlgebra,
    quad: Option<Quadratic>,
    constants: TraceConstants,
    consts_l: BTreeMap<i32, Laurent>,
    cache: RwLock<Caches>,
}

impl Clone for AffineAlgebra {
    fn clone(&self) -> Self {
        AffineAlgebra {
            hecke: self.hecke.clone(),
            quad: self.quad.clone(),
            constants: self.constants.clone(),
            consts_l: self.consts_l.clone(),
            cache: RwLock::new(Caches::default()),
        }
    }
}

impl fmt::Debug for AffineAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineAlgebra")
            .field("rank", &self.hecke.rank())
            .field("q", self.hecke.q())
            .field("quadratic", &self.quad.is_some())
            .finish()
    }
}

pub const DEFAULT_WINDOW: i32 = 4;

impl AffineAlgebra {
    /// Symbolic `q` and independent symbolic `D⁽ᵏ⁾`.
    pub fn generic(rank: usize) -> AffineAlgebra {
        AffineAlgebra::new(HeckeAlgebra::generic(rank), DEFAULT_WINDOW).expect("symbolic parameters are valid")
    }

    pub fn new(hecke: HeckeAlgebra, window: i32) -> Result<AffineAlgebra, AlgebraError> {
        let mut constants = TraceConstants::symbolic(window);
        constants.values.insert(0, hecke.d0().clone());
        AffineAlgebra::build(hecke, None, constants)
    }

    /// Quotient by `y_1² = q D⁽¹⁾ y_1 + q⁻¹ Δ` with symbolic `D⁽¹⁾` and `Δ`.
    pub fn quadratic(rank: usize) -> AffineAlgebra {
        let h = HeckeAlgebra::generic(rank);
        AffineAlgebra::with_quadratic(h, Scalar::var(Var::trace_constant(1).unwrap()), Scalar::var(Var::DELTA))
            .expect("symbolic parameters are valid")
    }

    pub fn with_quadratic(hecke: HeckeAlgebra, d1: Scalar, delta: Scalar) -> Result<AffineAlgebra, AlgebraError> {
        let q = hecke.q().clone();
        let p = &q * &d1;
        let r = &q.inv()? * &delta;
        let ring = hecke.ring();
        let r_inv_l = if r.is_zero() {
            None
        } else {
            Some(ring.laurent(&r.inv()?).map_err(|_| {
                AlgebraError::InvalidParameter("q⁻¹Δ must be a single term to invert y_1".into())
            })?)
        };
        let quad = Quadratic {
            p_l: ring.laurent(&p)?,
            r_l: ring.laurent(&r)?,
            r_inv_l,
            p: p.clone(),
            r: r.clone(),
            d1: d1.clone(),
            delta,
        };
        let constants = TraceConstants::recursive(hecke.d0(), &d1, &p, &r, DEFAULT_WINDOW)?;
        AffineAlgebra::build(hecke, Some(quad), constants)
    }

    fn build(hecke: HeckeAlgebra, quad: Option<Quadratic>, constants: TraceConstants) -> Result<AffineAlgebra, AlgebraError> {
        let ring = hecke.ring();
        let consts_l = constants
            .values
            .iter()
            .map(|(k, v)| Ok((*k, ring.laurent(v)?)))
            .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
        Ok(AffineAlgebra { hecke, quad, constants, consts_l, cache: RwLock::new(Caches::default()) })
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn rank(&self) -> usize {
        self.hecke.rank()
    }

    pub fn q(&self) -> &Scalar {
        self.hecke.q()
    }

    pub fn lambda(&self) -> &Scalar {
        self.hecke.lambda()
    }

    pub fn d0(&self) -> &Scalar {
        self.hecke.d0()
    }

    pub fn b(&self) -> Result<Scalar, AlgebraError> {
        self.hecke.b()
    }

    pub fn constants(&self) -> &TraceConstants {
        &self.constants
    }

    pub fn is_quadratic(&self) -> bool {
        self.quad.is_some()
    }

    /// `(P, R)` of the quadratic relation `y_1² = P y_1 + R`.
    pub fn quadratic_coefficients(&self) -> Option<(&Scalar, &Scalar)> {
        self.quad.as_ref().map(|q| (&q.p, &q.r))
    }

    /// `(D⁽¹⁾, Δ)` in quotient mode.
    pub fn blob_parameters(&self) -> Option<(&Scalar, &Scalar)> {
        self.quad.as_ref().map(|q| (&q.d1, &q.delta))
    }

    pub fn zero(&self) -> AffineElement {
        Element::zero(self.rank())
    }

    pub fn one(&self) -> AffineElement {
        self.scalar(Scalar::one())
    }

    pub fn scalar(&self, c: Scalar) -> AffineElement {
        Element::monomial(self.rank(), AffineKey::unit(), c)
    }

    pub fn sigma(&self, i: usize) -> AffineElement {
        self.from_hecke(&self.hecke.sigma(i))
    }

    pub fn sigma_inv(&self, i: usize) -> AffineElement {
        self.from_hecke(&self.hecke.sigma_inv(i))
    }

    pub fn sigma_x(&self, i: usize, x: &Scalar) -> AffineElement {
        self.from_hecke(&self.hecke.sigma_x(i, x))
    }

    pub fn e_plus(&self, i: usize, x: &Scalar) -> AffineElement {
        self.from_hecke(&self.hecke.e_plus(i, x))
    }

    /// `y_k^e`, reduced in quotient mode.
    pub fn y_pow(&self, k: usize, e: i32) -> Result<AffineElement, AlgebraError> {
        if k == 0 || k > self.rank() {
            return Err(AlgebraError::OutOfRange { index: k, rank: self.rank() });
        }
        if e < 0 && self.quad.as_ref().is_some_and(|quad| quad.r_inv_l.is_none()) {
            return Err(AlgebraError::DegenerateBoundary("y_1 is not invertible when Δ = 0".into()));
        }
        let mut m = Map::default();
        m.insert(AffineKey::unit(), Laurent::one());
        let m = self.y_left(&unit_pow(k, e), &m);
        Ok(self.from_map(Work { core: hechain_scalar::Poly::one(), terms: m }))
    }

    pub fn y(&self, k: usize) -> AffineElement {
        self.y_pow(k, 1).expect("y index")
    }

    pub fn from_hecke(&self, e: &HeckeElement) -> AffineElement {
        Element::from_terms(
            self.rank(),
            e.terms().map(|(w, c)| (AffineKey { ypow: [0; MAX_STRANDS], perm: *w }, c.clone())),
        )
    }

    /// The Hecke part of an element without `y` factors.
    pub fn to_hecke(&self, e: &AffineElement) -> Option<HeckeElement> {
        let mut out = self.hecke.zero();
        for (k, c) in e.terms() {
            if k.ypow.iter().any(|&a| a != 0) {
                return None;
            }
            out.add_term(k.perm, c);
        }
        Some(out)
    }

    /// Builds an element from explicit keys, reducing `y` powers in quotient mode.
    pub fn element(&self, terms: impl IntoIterator<Item = (AffineKey, Scalar)>) -> AffineElement {
        let mut out = self.zero();
        for (k, c) in terms {
            let mono = self.y_left_element(&k.ypow, &self.from_hecke(&self.hecke.basis(k.perm)));
            out = &out + &mono.scale(&c);
        }
        out
    }

    fn to_work(&self, e: &AffineElement) -> Work<AffineKey> {
        Work::from_terms(&e.terms)
    }

    fn from_map(&self, w: Work<AffineKey>) -> AffineElement {
        Element { rank: self.rank(), terms: w.into_terms() }
    }

    fn y_left_element(&self, a: &YPow, e: &AffineElement) -> AffineElement {
        let w = self.to_work(e);
        let terms = self.y_left(a, &w.terms);
        self.from_map(Work { core: w.core, terms })
    }

    pub fn try_mul(&self, a: &AffineElement, b: &AffineElement) -> Result<AffineElement, AlgebraError> {
        a.check_rank(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero());
        }
        if let Some(c) = a.as_multiple_of(&AffineKey::unit()) {
            return Ok(b.scale(&c));
        }
        if let Some(c) = b.as_multiple_of(&AffineKey::unit()) {
            return Ok(a.scale(&c));
        }
        let wa = self.to_work(a);
        let wb = self.to_work(b);
        let terms = self.mul_maps(&wa.terms, &wb.terms);
        Ok(self.from_map(Work { core: wa.core.mul(&wb.core), terms }))
    }

    pub fn mul(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        self.try_mul(a, b).expect("rank mismatch")
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a AffineElement>) -> AffineElement {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn commutator(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        &self.mul(a, b) - &self.mul(b, a)
    }

    /// Normal form of a word in `σ_i^{±1}` and `y_k^{±1}`.
    pub fn normal_order(&self, word: &[Generator]) -> Result<AffineElement, AlgebraError> {
        let mut out = self.one();
        for g in word {
            let f = match *g {
                Generator::Sigma(i) => {
                    self.check_sigma(i)?;
                    self.sigma(i)
                }
                Generator::SigmaInv(i) => {
                    self.check_sigma(i)?;
                    self.sigma_inv(i)
                }
                Generator::Y(k) => self.y_pow(k, 1)?,
                Generator::YInv(k) => self.y_pow(k, -1)?,
            };
            out = self.mul(&out, &f);
        }
        Ok(out)
    }

    fn check_sigma(&self, i: usize) -> Result<(), AlgebraError> {
        if i == 0 || i >= self.rank() {
            return Err(AlgebraError::OutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    fn lam(&self) -> &Laurent {
        self.hecke.ring().lambda_l()
    }

    /// Left action of `σ_i` on `y^a T_w`, pushing `σ_i` through the `y` factors.
    fn sigma_left(&self, i: usize, m: &Map<AffineKey>) -> Map<AffineKey> {
        let lam = self.lam();
        let mut out = Map::default();
        for (key, c) in m {
            let (ai, aj) = (key.ypow[i - 1], key.ypow[i]);
            let mut swapped = key.ypow;
            swapped[i - 1] = aj;
            swapped[i] = ai;
            let w = key.perm;
            add_into_ref(&mut out, AffineKey { ypow: swapped, perm: w.left_simple(i) }, c);
            if !w.left_ascent(i) {
                add_into(&mut out, AffineKey { ypow: swapped, perm: w }, c.mul(lam));
            }
            if ai == aj {
                continue;
            }
            let s = ai.min(aj);
            let d = (ai - aj).abs();
            let lc = c.mul(lam);
            let nlc = lc.neg();
            for j in 0..d {
                let mut a = key.ypow;
                if ai > aj {
                    a[i - 1] = s + d - 1 - j;
                    a[i] = s + 1 + j;
                    add_into_ref(&mut out, AffineKey { ypow: a, perm: w }, &nlc);
                } else {
                    a[i - 1] = s + j;
                    a[i] = s + d - j;
                    add_into_ref(&mut out, AffineKey { ypow: a, perm: w }, &lc);
                }
            }
        }
        out
    }

    fn sigma_inv_left(&self, i: usize, m: &Map<AffineKey>) -> Map<AffineKey> {
        let mut out = self.sigma_left(i, m);
        let nl = self.lam().neg();
        for (k, c) in m {
            add_into(&mut out, *k, c.mul(&nl));
        }
        out
    }

    /// `m · T_v`.
    fn right_basis(&self, m: &Map<AffineKey>, v: &Perm) -> Map<AffineKey> {
        if *v == Perm::identity() {
            return m.clone();
        }
        let ring = self.hecke.ring();
        let mut out = Map::default();
        for (key, c) in m {
            for (u, p) in basis_product(&key.perm, v).iter() {
                add_into(&mut out, AffineKey { ypow: key.ypow, perm: *u }, c.mul(&ring.lambda_poly(p)));
            }
        }
        out
    }

    /// `y^a · m`.
    fn y_left(&self, a: &YPow, m: &Map<AffineKey>) -> Map<AffineKey> {
        let mut out = Map::default();
        if self.quad.is_none() {
            for (key, c) in m {
                add_into_ref(&mut out, AffineKey { ypow: add_pow(a, &key.ypow), perm: key.perm }, c);
            }
            return out;
        }
        let ring = self.hecke.ring();
        for (key, c) in m {
            let g = add_pow(a, &key.ypow);
            if g.iter().all(|&e| e == 0 || e == 1) {
                add_into_ref(&mut out, AffineKey { ypow: g, perm: key.perm }, c);
                continue;
            }
            let nf = self.ynf(&g);
            for (h, ch) in nf.iter() {
                let cc = c.mul(ch);
                if key.perm == Perm::identity() {
                    add_into_ref(&mut out, *h, &cc);
                    continue;
                }
                for (u, p) in basis_product(&h.perm, &key.perm).iter() {
                    add_into(&mut out, AffineKey { ypow: h.ypow, perm: *u }, cc.mul(&ring.lambda_poly(p)));
                }
            }
        }
        out
    }

    fn mul_maps(&self, a: &Map<AffineKey>, b: &Map<AffineKey>) -> Map<AffineKey> {
        let mut by_perm: BTreeMap<Perm, Vec<(&YPow, &Laurent)>> = BTreeMap::new();
        for (k, c) in a {
            by_perm.entry(k.perm).or_default().push((&k.ypow, c));
        }
        let mut memo: FxHashMap<Perm, Map<AffineKey>> = FxHashMap::default();
        memo.insert(Perm::identity(), b.clone());
        let mut out = Map::default();
        for (u, ys) in by_perm {
            let tb = self.left_basis(&u, &mut memo).clone();
            for (a, c) in ys {
                let part = if a.iter().all(|&e| e == 0) { tb.clone() } else { self.y_left(a, &tb) };
                for (k, v) in part {
                    add_into(&mut out, k, v.mul(c));
                }
            }
        }
        out
    }

    fn left_basis<'m>(&self, u: &Perm, memo: &'m mut FxHashMap<Perm, Map<AffineKey>>) -> &'m Map<AffineKey> {
        if !memo.contains_key(u) {
            let i = u.reduced_word()[0];
            let rest = u.left_simple(i);
            self.left_basis(&rest, memo);
            let next = self.sigma_left(i, &memo[&rest]);
            memo.insert(*u, next);
        }
        &memo[u]
    }

    /// Normal form of `y^e` in quotient mode: every exponent reduced to `{0, 1}`.
    fn ynf(&self, e: &YPow) -> Arc<Map<AffineKey>> {
        if let Some(r) = self.cache.read().unwrap().ynf.get(e) {
            return r.clone();
        }
        let bad = (0..MAX_STRANDS).rev().find(|&i| e[i] != 0 && e[i] != 1);
        let result = match bad {
            None => {
                let mut m = Map::default();
                m.insert(AffineKey { ypow: *e, perm: Perm::identity() }, Laurent::one());
                m
            }
            Some(i) => {
                let k = i + 1;
                let (base, shift) = if e[i] >= 2 {
                    (self.square_rule(k), add_pow(e, &unit_pow(k, -2)))
                } else {
                    (self.inverse_rule(k), add_pow(e, &unit_pow(k, 1)))
                };
                let ring = self.hecke.ring();
                let mut out = Map::default();
                for (f, c) in base.iter() {
                    let sub = self.ynf(&add_pow(&shift, &f.ypow));
                    for (h, ch) in sub.iter() {
                        let cc = c.mul(ch);
                        for (u, p) in basis_product(&h.perm, &f.perm).iter() {
                            add_into(&mut out, AffineKey { ypow: h.ypow, perm: *u }, cc.mul(&ring.lambda_poly(p)));
                        }
                    }
                }
                out
            }
        };
        let result = Arc::new(result);
        self.cache.write().unwrap().ynf.insert(*e, result.clone());
        result
    }

    /// `y_k²` in normal form.
    fn square_rule(&self, k: usize) -> Arc<Map<AffineKey>> {
        if let Some(r) = self.cache.read().unwrap().square.get(k - 1) {
            return r.clone();
        }
        let quad = self.quad.as_ref().expect("quotient mode");
        let result = if k == 1 {
            let mut m = Map::default();
            add_into_ref(&mut m, AffineKey { ypow: unit_pow(1, 1), perm: Perm::identity() }, &quad.p_l);
            add_into_ref(&mut m, AffineKey::unit(), &quad.r_l);
            m
        } else {
            let prev = self.square_rule(k - 1);
            let s = Perm::simple(k - 1);
            let mut m = self.right_basis(&self.sigma_left(k - 1, &prev), &s);
            let mut yy = unit_pow(k - 1, 1);
            yy[k - 1] = 1;
            add_into_ref(&mut m, AffineKey { ypow: yy, perm: s }, self.lam());
            m
        };
        let result = Arc::new(result);
        let mut cache = self.cache.write().unwrap();
        if cache.square.len() == k - 1 {
            cache.square.push(result.clone());
        }
        result
    }

    /// `y_k^{-1}` in normal form.
    fn inverse_rule(&self, k: usize) -> Arc<Map<AffineKey>> {
        if let Some(r) = self.cache.read().unwrap().inverse.get(k - 1) {
            return r.clone();
        }
        let quad = self.quad.as_ref().expect("quotient mode");
        let result = if k == 1 {
            let mut m = Map::default();
            let r_inv = quad.r_inv_l.as_ref().expect("y_1 is invertible");
            add_into_ref(&mut m, AffineKey { ypow: unit_pow(1, 1), perm: Perm::identity() }, r_inv);
            add_into(&mut m, AffineKey::unit(), quad.p_l.mul(r_inv).neg());
            m
        } else {
            let prev = self.inverse_rule(k - 1);
            let left = self.sigma_inv_left(k - 1, &prev);
            let s = Perm::simple(k - 1);
            let mut m = self.right_basis(&left, &s);
            let nl = self.lam().neg();
            for (key, c) in &left {
                add_into(&mut m, *key, c.mul(&nl));
            }
            m
        };
        let result = Arc::new(result);
        let mut cache = self.cache.write().unwrap();
        if cache.inverse.len() == k - 1 {
            cache.inverse.push(result.clone());
        }
        result
    }

    fn d_const(&self, p: i32) -> Result<Laurent, AlgebraError> {
        self.consts_l.get(&p).cloned().ok_or(AlgebraError::TraceDegree(p))
    }

    fn single(&self, key: AffineKey, c: Laurent) -> Map<AffineKey> {
        let mut m = Map::default();
        add_into(&mut m, key, c);
        m
    }

    fn y_map(&self, k: usize, e: i32) -> Map<AffineKey> {
        self.y_left(&unit_pow(k, e), &self.single(AffineKey::unit(), Laurent::one()))
    }

    fn accumulate(out: &mut Map<AffineKey>, m: &Map<AffineKey>, c: &Laurent) {
        for (k, v) in m {
            add_into(out, *k, v.mul(c));
        }
    }

    fn cached(&self, which: fn(&Caches) -> &FxHashMap<(usize, i32), Arc<Map<AffineKey>>>, key: (usize, i32)) -> Option<Arc<Map<AffineKey>>> {
        which(&self.cache.read().unwrap()).get(&key).cloned()
    }

    /// `Tr_{D(m)}(y_m^p)` as an element of `Ĥ_{m-1}`.
    fn t_fun(&self, m: usize, p: i32) -> Result<Arc<Map<AffineKey>>, AlgebraError> {
        if p.abs() > self.constants.window {
            return Err(AlgebraError::TraceDegree(p));
        }
        if let Some(r) = self.cached(|c| &c.t, (m, p)) {
            return Ok(r);
        }
        let lam = self.lam().clone();
        let result = if m == 1 {
            self.single(AffineKey::unit(), self.d_const(p)?)
        } else if p == 0 {
            self.single(AffineKey::unit(), self.d_const(0)?)
        } else if p > 0 {
            let n = m - 1;
            let mut out = (*self.t_fun(n, p)?).clone();
            Self::accumulate(&mut out, &self.y_map(n, p), &lam);
            for i in 1..p {
                let wi = self.w_fun(m, i)?;
                Self::accumulate(&mut out, &self.y_left(&unit_pow(n, p - i), &wi), &lam);
            }
            out
        } else {
            (*self.ty_fun(m, -p)?).clone()
        };
        let result = Arc::new(result);
        self.cache.write().unwrap().t.insert((m, p), result.clone());
        Ok(result)
    }

    /// `Tr_{D(m)}(y_m^p σ_{m-1})`.
    fn w_fun(&self, m: usize, p: i32) -> Result<Arc<Map<AffineKey>>, AlgebraError> {
        if p.abs() > self.constants.window {
            return Err(AlgebraError::TraceDegree(p));
        }
        if let Some(r) = self.cached(|c| &c.w, (m, p)) {
            return Ok(r);
        }
        let lam = self.lam().clone();
        let n = m - 1;
        let result = if p == 0 {
            self.single(AffineKey::unit(), Laurent::one())
        } else if p > 0 {
            let prev = self.w_fun(m, p - 1)?;
            let mut out = self.mul_maps(&prev, &self.y_map(n, 1));
            Self::accumulate(&mut out, &*self.t_fun(m, p)?, &lam);
            out
        } else {
            let mut out = (*self.wy_fun(m, -p)?).clone();
            Self::accumulate(&mut out, &*self.ty_fun(m, -p)?, &lam);
            out
        };
        let result = Arc::new(result);
        self.cache.write().unwrap().w.insert((m, p), result.clone());
        Ok(result)
    }

    fn c_g(&self) -> Result<Laurent, AlgebraError> {
        Ok(Laurent::one().sub(&self.lam().mul(&self.d_const(0)?)))
    }

    /// `Tr_{D(m)}(y_m^{-P})`, through `y_m^{-1} = σ^{-1} y_{m-1}^{-1} σ^{-1}`.
    fn ty_fun(&self, m: usize, big_p: i32) -> Result<Arc<Map<AffineKey>>, AlgebraError> {
        if let Some(r) = self.cached(|c| &c.ty, (m, big_p)) {
            return Ok(r);
        }
        let mu = self.lam().neg();
        let n = m - 1;
        let result = if big_p == 0 {
            self.single(AffineKey::unit(), self.d_const(0)?)
        } else {
            let mut out = (*self.t_fun(n, -big_p)?).clone();
            Self::accumulate(&mut out, &self.y_map(n, -big_p), &mu.mul(&self.c_g()?));
            for i in 1..big_p {
                let wi = self.wy_fun(m, i)?;
                Self::accumulate(&mut out, &self.y_left(&unit_pow(n, -(big_p - i)), &wi), &mu);
            }
            out
        };
        let result = Arc::new(result);
        self.cache.write().unwrap().ty.insert((m, big_p), result.clone());
        Ok(result)
    }

    /// `Tr_{D(m)}(y_m^{-P} σ_{m-1}^{-1})`.
    fn wy_fun(&self, m: usize, big_p: i32) -> Result<Arc<Map<AffineKey>>, AlgebraError> {
        if let Some(r) = self.cached(|c| &c.wy, (m, big_p)) {
            return Ok(r);
        }
        let mu = self.lam().neg();
        let n = m - 1;
        let result = if big_p == 0 {
            self.single(AffineKey::unit(), self.c_g()?)
        } else {
            let prev = self.wy_fun(m, big_p - 1)?;
            let mut out = self.mul_maps(&prev, &self.y_map(n, -1));
            Self::accumulate(&mut out, &*self.ty_fun(m, big_p)?, &mu);
            out
        };
        let result = Arc::new(result);
        self.cache.write().unwrap().wy.insert((m, big_p), result.clone());
        Ok(result)
    }

    /// `w_p · T_{c'}` memoized per level.
    fn w_times(&self, m: usize, p: i32, cp: &Perm) -> Result<Arc<Map<AffineKey>>, AlgebraError> {
        if let Some(r) = self.cache.read().unwrap().wc.get(&(m, p, *cp)) {
            return Ok(r.clone());
        }
        let result = Arc::new(self.right_basis(&*self.w_fun(m, p)?, cp));
        self.cache.write().unwrap().wc.insert((m, p, *cp), result.clone());
        Ok(result)
    }

    /// Whether every term lies in `Ĥ_level`.
    pub fn in_level(e: &AffineElement, level: usize) -> bool {
        e.terms.keys().all(|k| k.support() <= level)
    }

    /// `Tr_{D(n+1)} : Ĥ_{n+1} → Ĥ_n`.
    pub fn markov_trace(&self, n: usize, e: &AffineElement) -> Result<AffineElement, AlgebraError> {
        let m = n + 1;
        if m > self.rank() {
            return Err(AlgebraError::OutOfRange { index: m, rank: self.rank() });
        }
        if !Self::in_level(e, m) {
            return Err(AlgebraError::NotInSubalgebra(m));
        }
        let w = self.to_work(e);
        let terms = self.trace_map(m, &w.terms)?;
        Ok(self.from_map(Work { core: w.core, terms }))
    }

    fn trace_map(&self, m: usize, terms: &Map<AffineKey>) -> Result<Map<AffineKey>, AlgebraError> {
        let mut groups: BTreeMap<(i32, Perm, Perm), Vec<(YPow, &Laurent)>> = BTreeMap::new();
        for (key, c) in terms {
            let p = key.ypow[m - 1] as i32;
            let mut a = key.ypow;
            a[m - 1] = 0;
            let w = key.perm;
            let (u, cp) = if w.apply(m) == m { (w, None) } else { let (u, cp) = coset_split(&w, m); (u, Some(cp)) };
            let marker = cp.unwrap_or(Perm::identity());
            let tag = if cp.is_some() { 1 } else { 0 };
            groups.entry((p * 2 + tag, u, marker)).or_default().push((a, c));
        }
        let mut out = Map::default();
        for ((ptag, u, cp), ys) in groups {
            let tag = ptag.rem_euclid(2);
            let p = (ptag - tag) / 2;
            let z = if tag == 0 {
                self.right_basis(&*self.t_fun(m, p)?, &u)
            } else {
                let x = self.w_times(m, p, &cp)?;
                let mut memo: FxHashMap<Perm, Map<AffineKey>> = FxHashMap::default();
                memo.insert(Perm::identity(), (*x).clone());
                self.left_basis(&u, &mut memo).clone()
            };
            for (a, c) in ys {
                let part = if a.iter().all(|&e| e == 0) { z.clone() } else { self.y_left(&a, &z) };
                Self::accumulate(&mut out, &part, c);
            }
        }
        Ok(out)
    }

    /// Iterated trace `Tr_{D(1)} ∘ ⋯ ∘ Tr_{D(k)}`, highest strand first.
    pub fn iterated_trace(&self, k: usize, e: &AffineElement) -> Result<AffineElement, AlgebraError> {
        let mut cur = e.clone();
        for n in (0..k).rev() {
            cur = self.markov_trace(n, &cur)?;
        }
        Ok(cur)
    }

    /// Boundary solution `y_1(x)`.
    pub fn boundary_solution(&self, mode: &BoundaryMode, x: &Scalar) -> Result<AffineElement, AlgebraError> {
        match mode {
            BoundaryMode::Free => Ok(self.one()),
            BoundaryMode::QuadraticBlob { xi } => {
                let (alpha, beta) = self.blob_coefficients(xi, x)?;
                Ok(&self.scalar(alpha) + &self.y(1).scale(&beta))
            }
            BoundaryMode::Polynomial(coeffs) => {
                let mut out = self.zero();
                for (k, c) in coeffs.iter().enumerate() {
                    let ck = c.substitute(Var::X, x)?;
                    out = &out + &self.y_pow(1, k as i32)?.scale(&ck);
                }
                Ok(out)
            }
        }
    }

    /// `(α, β)` with `(y_1 - ξx)(y_1 - ξ/x)^{-1} = α + β y_1` under the quadratic relation.
    pub fn blob_coefficients(&self, xi: &Scalar, x: &Scalar) -> Result<(Scalar, Scalar), AlgebraError> {
        let quad = self.quad.as_ref().ok_or_else(|| {
            AlgebraError::InvalidParameter("the quadratic boundary needs the quotient by the quadratic relation".into())
        })?;
        let xinv = x.inv()?;
        let c = xi * &xinv;
        let den = &quad.r + &(&c * &quad.p) - &c * &c;
        if den.is_zero() {
            return Err(AlgebraError::DegenerateBoundary("y_1 - ξ/x is not invertible".into()));
        }
        let den_inv = den.inv()?;
        let alpha = (&quad.r + &(&(xi * x) * &quad.p) - xi * xi) * den_inv.clone();
        let beta = (&c - &(xi * x)) * den_inv;
        Ok((alpha, beta))
    }

    /// `y_n(x) = σ_{n-1}(x/ξ_{n-1}) ⋯ σ_1(x/ξ_1) y_1(x) σ_1(x ξ_1) ⋯ σ_{n-1}(x ξ_{n-1})`.
    pub fn monodromy(&self, n: usize, x: &Scalar, xis: &[Scalar], mode: &BoundaryMode) -> Result<AffineElement, AlgebraError> {
        if n == 0 || n > self.rank() {
            return Err(AlgebraError::OutOfRange { index: n, rank: self.rank() });
        }
        let mut y = self.boundary_solution(mode, x)?;
        for i in 1..n {
            let xi = xis.get(i - 1).cloned().unwrap_or_else(Scalar::one);
            let left = self.sigma_x(i, &(x * &xi.inv()?));
            let right = self.sigma_x(i, &(x * &xi));
            y = self.mul(&self.mul(&left, &y), &right);
        }
        Ok(y)
    }

    /// `τ_n(x) = Tr_{D(n+1)}(y_{n+1}(x))`.
    pub fn transfer(&self, n: usize, x: &Scalar, mode: &BoundaryMode) -> Result<AffineElement, AlgebraError> {
        let y = self.monodromy(n + 1, x, &[], mode)?;
        self.markov_trace(n, &y)
    }

    /// `λ(1 - x²/b) Σ_{k<n} (1-x)^{2k} y_{n-k}(x) + (1-x)^{2n} Tr_{D(1)}(y_1(x))`.
    pub fn transfer_via_recursion(&self, n: usize, x: &Scalar, mode: &BoundaryMode) -> Result<AffineElement, AlgebraError> {
        let omx = Scalar::one() - x;
        let pre = self.lambda() * &(Scalar::one() - &(&(x * x) * &self.b()?.inv()?));
        let mut out = self.zero();
        for k in 0..n {
            let y = self.monodromy(n - k, x, &[], mode)?;
            out = &out + &y.scale(&(&pre * &omx.pow(2 * k as i32)?));
        }
        let base = self.markov_trace(0, &self.boundary_solution(mode, x)?)?;
        Ok(&out + &base.scale(&omx.pow(2 * n as i32)?))
    }

    /// `y_1'(1)`.
    pub fn boundary_derivative(&self, mode: &BoundaryMode) -> Result<AffineElement, AlgebraError> {
        let x = Scalar::var(Var::X);
        let y = self.boundary_solution(mode, &x)?;
        y.differentiate(Var::X).substitute(Var::X, &Scalar::one())
    }

    /// `ℋ_n = Σ_{m<n} σ_m - (λ/2) y_1'(1)`.
    pub fn hamiltonian(&self, n: usize, mode: &BoundaryMode) -> Result<AffineElement, AlgebraError> {
        if n > self.rank() {
            return Err(AlgebraError::OutOfRange { index: n, rank: self.rank() });
        }
        let mut out = self.zero();
        for m in 1..n {
            out = &out + &self.sigma(m);
        }
        let half = self.lambda() * &Scalar::ratio(1, 2);
        Ok(&out - &self.boundary_derivative(mode)?.scale(&half))
    }
}

/// Letters for [`AffineAlgebra::normal_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Sigma(usize),
    SigmaInv(usize),
    Y(usize),
    YInv(usize),
}
