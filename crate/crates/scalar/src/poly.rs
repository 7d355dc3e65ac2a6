use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use dashu_base::{Gcd, Signed};
use dashu_int::IBig;
use rustc_hash::FxHashMap;

use crate::monomial::Monomial;
use crate::rational::IBigExt;
use crate::var::Var;

/// A polynomial with integer coefficients, terms kept in decreasing monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, IBig)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(IBig::ONE)
    }

    pub fn constant(c: impl Into<IBig>) -> Poly {
        Poly::term(Monomial::one(), c.into())
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Monomial::var(v, 1), IBig::ONE)
    }

    pub fn term(m: Monomial, c: IBig) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, IBig)>) -> Poly {
        let mut acc: FxHashMap<Monomial, IBig> = FxHashMap::default();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Monomial, IBig>) -> Poly {
        let mut terms: Vec<(Monomial, IBig)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, IBig)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, IBig)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if this polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<IBig> {
        match self.terms.as_slice() {
            [] => Some(IBig::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead(&self) -> Option<&(Monomial, IBig)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> IBig {
        self.terms.first().map(|t| t.1.clone()).unwrap_or(IBig::ZERO)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn var_mask(&self) -> u64 {
        self.terms.iter().fold(0, |m, t| m | t.0.var_mask())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mask = self.var_mask();
        (0..64).filter(|i| mask & (1 << i) != 0).map(Var::from_index).collect()
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> IBig {
        let mut g = IBig::ZERO;
        for (_, c) in &self.terms {
            g = IBig::from((&g).gcd(c));
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else { return Monomial::one() };
        let mut m = first.0;
        for (t, _) in it {
            if m.is_one() {
                break;
            }
            m = m.gcd(t);
        }
        m
    }

    pub fn max_norm(&self) -> IBig {
        self.terms.iter().map(|t| t.1.abs_val()).max().unwrap_or(IBig::ZERO)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, if negate { -&b[j].1 } else { b[j].1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((t.0, if negate { -&t.1 } else { t.1.clone() }));
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &IBig) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &IBig) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc: FxHashMap<Monomial, IBig> = FxHashMap::default();
        acc.reserve(large.terms.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(c) => *c += ca * cb,
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_coeff_exact(&self, c: &IBig) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a / c)).collect() }
    }

    /// Divides every monomial by `m`, which must divide them all.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(t, a)| (t.checked_div(m).expect("monomial divides"), a.clone())).collect() }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in Z[vars].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (t, a) in &self.terms {
                let t = t.checked_div(m)?;
                let (qq, r) = (a / c, a % c);
                if !r.is_zero() {
                    return None;
                }
                out.push((t, qq));
            }
            return Some(Poly { terms: out });
        }
        let (lm, lc) = &d.terms[0];
        let (tm, tc) = d.terms.last().unwrap();
        let (sm, sc) = self.terms.last().unwrap();
        if !tm.divides(sm) || !(sc % tc).is_zero() || !lm.divides(&self.terms[0].0) {
            return None;
        }
        if self.total_degree() < d.total_degree() || self.terms.len() == 1 {
            return None;
        }
        let mut rem: BTreeMap<Monomial, IBig> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lm)?;
            if !(&c % lc).is_zero() {
                return None;
            }
            let qc = &c / lc;
            for (dm, dc) in &d.terms[1..] {
                let key = dm.mul(&qm);
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Groups terms by the exponent of `v`, in increasing exponent order.
    pub fn coefficients_in(&self, v: Var) -> Vec<(u16, Poly)> {
        let mut groups: BTreeMap<u16, Vec<(Monomial, IBig)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.exp(v)).or_default().push((m.with_exp(v, 0), c.clone()));
        }
        groups.into_iter().map(|(e, t)| (e, Poly { terms: t })).collect()
    }

    /// Dense coefficient list in `v` (index = exponent).
    pub fn to_dense_in(&self, v: Var) -> Vec<Poly> {
        let groups = self.coefficients_in(v);
        let deg = groups.last().map(|g| g.0 as usize).unwrap_or(0);
        let mut out = vec![Poly::zero(); deg + 1];
        for (e, p) in groups {
            out[e as usize] = p;
        }
        out
    }

    pub fn from_dense_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            let ve = Monomial::var(v, e as u16);
            for (m, c) in &p.terms {
                terms.push((m.mul(&ve), c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes the integer `a` for `v`.
    pub fn eval_int(&self, v: Var, a: &IBig) -> Poly {
        let deg = self.degree_in(v) as usize;
        let mut powers = Vec::with_capacity(deg + 1);
        powers.push(IBig::ONE);
        for i in 0..deg {
            powers.push(&powers[i] * a);
        }
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.with_exp(v, 0), c * &powers[m.exp(v) as usize])))
    }

    /// Substitutes `p/r` for `v` and multiplies by `r^deg_v`, returning that polynomial and `deg_v`.
    pub fn eval_ratio(&self, v: Var, p: &IBig, r: &IBig) -> (Poly, u16) {
        let deg = self.degree_in(v);
        let d = deg as usize;
        let mut pp = Vec::with_capacity(d + 1);
        let mut rp = Vec::with_capacity(d + 1);
        pp.push(IBig::ONE);
        rp.push(IBig::ONE);
        for i in 0..d {
            pp.push(&pp[i] * p);
            rp.push(&rp[i] * r);
        }
        let poly = Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(v) as usize;
            (m.with_exp(v, 0), c * &pp[e] * &rp[d - e])
        }));
        (poly, deg)
    }

    /// Substitutes the polynomial `value` for `v`.
    pub fn compose(&self, v: Var, value: &Poly) -> Poly {
        let dense = self.to_dense_in(v);
        let mut acc = Poly::zero();
        for c in dense.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.exp(v) > 0).map(|(m, c)| {
            let e = m.exp(v);
            (m.with_exp(v, e - 1), c * IBig::from(e))
        }))
    }

    pub fn sign_of_lead(&self) -> i8 {
        match self.terms.first() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs_val();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
