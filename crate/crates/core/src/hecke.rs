//! The finite Hecke algebra `H_N(q)` in the permutation basis `T_w`.

use std::collections::BTreeMap;

use hechain_scalar::{Laurent, Scalar, Var};
use rustc_hash::FxHashMap;

use crate::element::Element;
use crate::engine::{add_into, add_into_ref, basis_product, Map, Ring, Work};
use crate::perm::{Perm, MAX_STRANDS};
use crate::AlgebraError;

pub type HeckeElement = Element<Perm>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `σ_i - x σ_i^{-1}`.
    Raw,
    /// Divided by `q - x/q`.
    Plus,
    /// Divided by `q x - 1/q`.
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    ring: Ring,
    rank: usize,
    d0: Scalar,
    d0_l: Laurent,
}

impl HeckeAlgebra {
    /// Symbolic `q` and trace constant `D⁽⁰⁾`.
    pub fn generic(rank: usize) -> HeckeAlgebra {
        HeckeAlgebra::new(rank, Scalar::q()).expect("symbolic q is valid")
    }

    pub fn new(rank: usize, q: Scalar) -> Result<HeckeAlgebra, AlgebraError> {
        if rank == 0 || rank > MAX_STRANDS {
            return Err(AlgebraError::OutOfRange { index: rank, rank: MAX_STRANDS });
        }
        let ring = Ring::new(q)?;
        let d0 = Scalar::var(Var::trace_constant(0).unwrap());
        let d0_l = ring.laurent(&d0)?;
        Ok(HeckeAlgebra { ring, rank, d0, d0_l })
    }

    pub fn with_d0(mut self, d0: Scalar) -> Result<HeckeAlgebra, AlgebraError> {
        self.d0_l = self.ring.laurent(&d0)?;
        self.d0 = d0;
        Ok(self)
    }

    pub fn with_rank(&self, rank: usize) -> HeckeAlgebra {
        let mut a = self.clone();
        a.rank = rank;
        a
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q(&self) -> &Scalar {
        &self.ring.q
    }

    pub fn lambda(&self) -> &Scalar {
        &self.ring.lambda
    }

    pub fn d0(&self) -> &Scalar {
        &self.d0
    }

    /// `b = 1 / (1 - λ D⁽⁰⁾)`.
    pub fn b(&self) -> Result<Scalar, AlgebraError> {
        Ok((Scalar::one() - self.lambda() * &self.d0).inv()?)
    }

    pub(crate) fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn zero(&self) -> HeckeElement {
        Element::zero(self.rank)
    }

    pub fn one(&self) -> HeckeElement {
        self.scalar(Scalar::one())
    }

    pub fn scalar(&self, c: Scalar) -> HeckeElement {
        Element::monomial(self.rank, Perm::identity(), c)
    }

    pub fn basis(&self, w: Perm) -> HeckeElement {
        Element::monomial(self.rank, w, Scalar::one())
    }

    fn check_index(&self, i: usize) -> Result<(), AlgebraError> {
        if i == 0 || i >= self.rank {
            return Err(AlgebraError::OutOfRange { index: i, rank: self.rank });
        }
        Ok(())
    }

    /// The generator `σ_i`.
    pub fn sigma(&self, i: usize) -> HeckeElement {
        self.check_index(i).expect("generator index");
        self.basis(Perm::simple(i))
    }

    /// `σ_i^{-1} = σ_i - λ`.
    pub fn sigma_inv(&self, i: usize) -> HeckeElement {
        &self.sigma(i) - &self.scalar(self.lambda().clone())
    }

    /// Product of generators; negative entries denote inverses.
    pub fn word(&self, letters: &[i32]) -> HeckeElement {
        let mut out = self.one();
        for &l in letters {
            let g = if l > 0 { self.sigma(l as usize) } else { self.sigma_inv((-l) as usize) };
            out = self.mul(&out, &g);
        }
        out
    }

    pub fn try_mul(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement, AlgebraError> {
        a.check_rank(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(Element::zero(a.rank));
        }
        if let Some(c) = a.as_multiple_of(&Perm::identity()) {
            return Ok(b.scale(&c));
        }
        if let Some(c) = b.as_multiple_of(&Perm::identity()) {
            return Ok(a.scale(&c));
        }
        let wa = Work::from_terms(&a.terms);
        let wb = Work::from_terms(&b.terms);
        let terms = self.mul_maps(&wa.terms, &wb.terms);
        let core = wa.core.mul(&wb.core);
        Ok(Element { rank: a.rank, terms: Work { core, terms }.into_terms() })
    }

    /// Panics on rank mismatch; see [`HeckeAlgebra::try_mul`].
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        self.try_mul(a, b).expect("rank mismatch")
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a HeckeElement>) -> HeckeElement {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn commutator(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        &self.mul(a, b) - &self.mul(b, a)
    }

    pub fn power(&self, a: &HeckeElement, k: u32) -> HeckeElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Left action of `σ_i` on a working map.
    pub(crate) fn sigma_left(&self, i: usize, m: &Map<Perm>) -> Map<Perm> {
        let lam = self.ring.lambda_l();
        let mut out = Map::default();
        for (w, c) in m {
            add_into_ref(&mut out, w.left_simple(i), c);
            if !w.left_ascent(i) {
                add_into(&mut out, *w, c.mul(lam));
            }
        }
        out
    }

    pub(crate) fn mul_maps(&self, a: &Map<Perm>, b: &Map<Perm>) -> Map<Perm> {
        if a.len() * b.len() <= 64 {
            let mut out = Map::default();
            for (u, cu) in a {
                for (v, cv) in b {
                    let c = cu.mul(cv);
                    for (w, p) in basis_product(u, v).iter() {
                        add_into(&mut out, *w, c.mul(&self.ring.lambda_poly(p)));
                    }
                }
            }
            return out;
        }
        let mut memo: FxHashMap<Perm, Map<Perm>> = FxHashMap::default();
        memo.insert(Perm::identity(), b.clone());
        let mut keys: Vec<&Perm> = a.keys().collect();
        keys.sort_by_key(|p| p.length());
        let mut out = Map::default();
        for u in keys {
            let tb = self.left_basis(u, &mut memo);
            let cu = &a[u];
            for (w, c) in tb.iter() {
                add_into(&mut out, *w, cu.mul(c));
            }
        }
        out
    }

    fn left_basis<'m>(&self, u: &Perm, memo: &'m mut FxHashMap<Perm, Map<Perm>>) -> &'m Map<Perm> {
        if !memo.contains_key(u) {
            let i = u.reduced_word()[0];
            let rest = u.left_simple(i);
            self.left_basis(&rest, memo);
            let next = self.sigma_left(i, &memo[&rest]);
            memo.insert(*u, next);
        }
        &memo[u]
    }

    /// Baxterized generator `σ_i(x) = (1 - x) σ_i + λ x`, optionally normalized.
    pub fn baxterized(&self, i: usize, x: &Scalar, norm: Normalization) -> Result<HeckeElement, AlgebraError> {
        self.check_index(i)?;
        let raw = &self.sigma(i).scale(&(Scalar::one() - x)) + &self.scalar(self.lambda() * x);
        let q = self.q();
        let qi = q.inv()?;
        Ok(match norm {
            Normalization::Raw => raw,
            Normalization::Plus => raw.scale(&(q - &(&qi * x)).inv()?),
            Normalization::Minus => raw.scale(&(&(q * x) - &qi).inv()?),
        })
    }

    /// `e^+_i(x)`.
    pub fn e_plus(&self, i: usize, x: &Scalar) -> HeckeElement {
        self.baxterized(i, x, Normalization::Plus).expect("e_plus")
    }

    pub fn sigma_x(&self, i: usize, x: &Scalar) -> HeckeElement {
        self.baxterized(i, x, Normalization::Raw).expect("baxterized")
    }

    /// `A^±_{1→k}`.
    pub fn symmetrizer(&self, sign: Sign, k: usize) -> Result<HeckeElement, AlgebraError> {
        self.shifted_symmetrizer(sign, 1, k)
    }

    /// `A^±_{m→k}`, built on the generators `σ_m, .., σ_{k-1}`.
    pub fn shifted_symmetrizer(&self, sign: Sign, m: usize, k: usize) -> Result<HeckeElement, AlgebraError> {
        if m == 0 || k < m || k > self.rank {
            return Err(AlgebraError::OutOfRange { index: k, rank: self.rank });
        }
        let mut a = self.one();
        let q = self.q();
        for n in 1..=(k - m) {
            let e = match sign {
                Sign::Plus => self.baxterized(m - 1 + n, &q.pow(-2 * n as i32)?, Normalization::Plus)?,
                Sign::Minus => self.baxterized(m - 1 + n, &q.pow(2 * n as i32)?, Normalization::Minus)?,
            };
            a = self.mul(&self.mul(&a, &e), &a);
        }
        Ok(a)
    }

    /// Whether every term lies in `H_level`.
    pub fn in_level(e: &HeckeElement, level: usize) -> bool {
        e.terms.keys().all(|w| w.support() <= level)
    }

    /// `Tr_{D(n+1)} : H_{n+1} → H_n`.
    pub fn markov_trace(&self, n: usize, e: &HeckeElement) -> Result<HeckeElement, AlgebraError> {
        let m = n + 1;
        if m > self.rank {
            return Err(AlgebraError::OutOfRange { index: m, rank: self.rank });
        }
        if !Self::in_level(e, m) {
            return Err(AlgebraError::NotInSubalgebra(m));
        }
        let w = Work::from_terms(&e.terms);
        let terms = self.trace_map(m, &w.terms);
        Ok(Element { rank: e.rank, terms: Work { core: w.core, terms }.into_terms() })
    }

    pub(crate) fn trace_map(&self, m: usize, terms: &Map<Perm>) -> Map<Perm> {
        let mut out = Map::default();
        for (w, c) in terms {
            let j = w.inverse().apply(m);
            if j == m {
                add_into(&mut out, *w, c.mul(&self.d0_l));
                continue;
            }
            let (u, cp) = coset_split(w, m);
            for (v, p) in basis_product(&u, &cp).iter() {
                add_into(&mut out, *v, c.mul(&self.ring.lambda_poly(p)));
            }
        }
        out
    }

    /// `T^{(1)}_n(x)` computed as the trace of `σ_n(x) ⋯ σ_1(x)^2 ⋯ σ_n(x)`.
    pub fn free_transfer(&self, n: usize, x: &Scalar) -> Result<HeckeElement, AlgebraError> {
        if n + 1 > self.rank {
            return Err(AlgebraError::OutOfRange { index: n + 1, rank: self.rank });
        }
        let mut y = self.one();
        for i in 1..=n {
            let s = self.sigma_x(i, x);
            y = self.mul(&self.mul(&s, &y), &s);
        }
        self.markov_trace(n, &y)
    }

    /// Closed form `λ (1 - x²/b) J_n(x) + (1-x)^{2n} D⁽⁰⁾`.
    pub fn free_transfer_closed(&self, n: usize, x: &Scalar) -> Result<HeckeElement, AlgebraError> {
        let j = self.j_polynomial(n, x)?;
        let b = self.b()?;
        let pre = self.lambda() * &(Scalar::one() - &(&(x * x) * &b.inv()?));
        let tail = (Scalar::one() - x).pow(2 * n as i32)? * self.d0.clone();
        Ok(&j.scale(&pre) + &self.scalar(tail))
    }

    /// `J_n(x) = Σ_{k=0}^{n-2} (1-x)^{2k} σ_{n-k-1}(x) ⋯ σ_1(x)^2 ⋯ σ_{n-k-1}(x) + (1-x)^{2(n-1)}`.
    pub fn j_polynomial(&self, n: usize, x: &Scalar) -> Result<HeckeElement, AlgebraError> {
        if n == 0 || n > self.rank {
            return Err(AlgebraError::OutOfRange { index: n, rank: self.rank });
        }
        let mut ladders = vec![self.one()];
        for i in 1..n {
            let s = self.sigma_x(i, x);
            let prev = ladders.last().unwrap();
            ladders.push(self.mul(&self.mul(&s, prev), &s));
        }
        let omx = Scalar::one() - x;
        let mut out = self.scalar(omx.pow(2 * (n as i32 - 1))?);
        for k in 0..n.saturating_sub(1) {
            out = &out + &ladders[n - k - 1].scale(&omx.pow(2 * k as i32)?);
        }
        Ok(out)
    }

    /// `f_n(x) = Σ_{k=0}^{n-2} (1-x)^{2k} ((1-x)² + λ²x²)^{n-k-1} + (1-x)^{2(n-1)}`.
    pub fn f_polynomial(&self, n: usize, x: &Scalar) -> Scalar {
        let omx = Scalar::one() - x;
        let lam = self.lambda();
        let inner = &omx * &omx + &(&(lam * lam) * &(x * x));
        let mut out = omx.pow(2 * (n as i32 - 1)).unwrap();
        for k in 0..n.saturating_sub(1) {
            out += &(omx.pow(2 * k as i32).unwrap() * inner.pow((n - k - 1) as i32).unwrap());
        }
        out
    }

    /// The commuting charges `j_1, .., j_{2n-3}` read off from `J_n(x) - f_n(x)`.
    pub fn charges(&self, n: usize) -> Result<Vec<HeckeElement>, AlgebraError> {
        if n < 2 || n > self.rank {
            return Err(AlgebraError::OutOfRange { index: n, rank: self.rank });
        }
        let s = Scalar::var(Var::S);
        let x = (Scalar::one() + s.clone()).inv()?;
        let top = 2 * n - 3;
        let j = self.j_polynomial(n, &x)?;
        let rest = &j - &self.scalar(self.f_polynomial(n, &x));
        // (1+s)^{2n-2} rest(1/(1+s)) = λ s^a λ^{2n-3-a} j_a summed; (1+x) contributes (2+s)/(1+s).
        let lift = (Scalar::one() + s.clone()).pow(top as i32 + 1)?;
        let two_s = (Scalar::from_int(2) + s.clone()).inv()?;
        let scaled = rest.scale(&(lift * two_s));
        let mut per_power: Vec<BTreeMap<Perm, Scalar>> = vec![BTreeMap::new(); top + 1];
        for (w, c) in scaled.terms() {
            let coeffs = c
                .coefficients_in(Var::S)
                .ok_or_else(|| AlgebraError::Internal("charge coefficients are not polynomial".into()))?;
            if coeffs.len() > top + 1 {
                return Err(AlgebraError::Internal("charge expansion exceeds expected degree".into()));
            }
            for (a, ca) in coeffs.into_iter().enumerate() {
                if !ca.is_zero() {
                    per_power[a].insert(*w, ca);
                }
            }
        }
        if !per_power[0].is_empty() {
            return Err(AlgebraError::Internal("charge expansion has a constant term".into()));
        }
        let lam = self.lambda();
        let mut out = Vec::with_capacity(top);
        for (a, terms) in per_power.into_iter().enumerate().skip(1) {
            let norm = lam.pow(top as i32 - a as i32 + 1)?.inv()?;
            let e = Element { rank: self.rank, terms }.scale(&norm);
            out.push(e);
        }
        Ok(out)
    }

    /// `(σ_1 ⋯ σ_M)(σ_1 ⋯ σ_{M-1}) ⋯ σ_1` with `M = rank - 1`.
    pub fn longest_element(&self) -> HeckeElement {
        let mut letters = Vec::new();
        for top in (1..self.rank).rev() {
            letters.extend((1..=top).map(|i| i as i32));
        }
        self.word(&letters)
    }

    /// Checks `σ_i j = j σ_{M+1-i}` for all generators.
    pub fn mirror_check(&self) -> bool {
        let j = self.longest_element();
        (1..self.rank).all(|i| self.mul(&self.sigma(i), &j) == self.mul(&j, &self.sigma(self.rank - i)))
    }

    /// Applies the automorphism `σ_k ↦ σ_{N-k}` with `N` the given rank.
    pub fn mirror(&self, e: &HeckeElement, rank: usize) -> HeckeElement {
        let mut out = self.zero();
        for (w, c) in e.terms() {
            let word: Vec<i32> = w.reduced_word().iter().map(|&i| (rank - i) as i32).collect();
            let mut t = Perm::identity();
            for &i in &word {
                t = t.compose(&Perm::simple(i as usize));
            }
            out.add_term(t, c);
        }
        out
    }
}

/// Splits `w` with `w⁻¹(m) = j < m` as `T_w = T_u σ_{m-1} ⋯ σ_j`; returns `(u, s_{m-2} ⋯ s_j)`.
pub(crate) fn coset_split(w: &Perm, m: usize) -> (Perm, Perm) {
    let j = w.inverse().apply(m);
    let mut c = Perm::identity();
    for i in (j..m).rev() {
        c = c.compose(&Perm::simple(i));
    }
    let u = w.compose(&c.inverse());
    let mut cp = Perm::identity();
    for i in (j..m - 1).rev() {
        cp = cp.compose(&Perm::simple(i));
    }
    (u, cp)
}
