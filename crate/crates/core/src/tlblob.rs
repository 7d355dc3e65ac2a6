//! The Temperley-Lieb quotient of the Hecke algebra and the blob quotient of
//! the affine Hecke algebra, realized on blob diagrams.
//!
//! A diagram on `n` strands is a non-crossing perfect matching of `2n` points.
//! Points are numbered along the boundary starting from the top left corner:
//! top points `0..n` left to right, then bottom points from right to left, so
//! bottom point `i` has position `2n - 1 - i`. The left edge of the rectangle
//! sits between position `2n - 1` and position `0`, and an arc is exposed to it
//! when no other arc encloses it. Only exposed arcs may carry the blob.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use hechain_scalar::{Scalar, Var};
use rustc_hash::FxHashMap;

use crate::affine::{AffineAlgebra, AffineElement, BoundaryMode};
use crate::chain::ChainAlgebra;
use crate::element::Element;
use crate::fusion::{fused_transfer, phi_double_prime, phi_prime, IdentityReport};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::perm::{Perm, MAX_STRANDS};
use crate::AlgebraError;

const MAX_POINTS: usize = 2 * MAX_STRANDS;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlobDiagram {
    n: u8,
    partner: [u8; MAX_POINTS],
    blobs: u16,
}

impl BlobDiagram {
    fn empty(n: usize) -> BlobDiagram {
        assert!(n <= MAX_STRANDS, "at most {MAX_STRANDS} strands");
        BlobDiagram { n: n as u8, partner: [0; MAX_POINTS], blobs: 0 }
    }

    fn join(&mut self, a: usize, b: usize) {
        self.partner[a] = b as u8;
        self.partner[b] = a as u8;
    }

    fn bottom(&self, i: usize) -> usize {
        2 * self.n as usize - 1 - i
    }

    pub fn identity(n: usize) -> BlobDiagram {
        let mut d = BlobDiagram::empty(n);
        for i in 0..n {
            d.join(i, 2 * n - 1 - i);
        }
        d
    }

    /// `E_i` for `1 ≤ i < n`.
    pub fn cup(n: usize, i: usize) -> Option<BlobDiagram> {
        if i == 0 || i >= n {
            return None;
        }
        let mut d = BlobDiagram::identity(n);
        d.join(i - 1, i);
        let (a, b) = (d.bottom(i - 1), d.bottom(i));
        d.join(a, b);
        Some(d)
    }

    /// The blob on the first strand.
    pub fn blob(n: usize) -> BlobDiagram {
        let mut d = BlobDiagram::identity(n);
        if n > 0 {
            d.blobs = 1;
        }
        d
    }

    /// Builds a diagram from arcs in boundary positions and the indices of the blobbed arcs.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)], blobbed: &[usize]) -> Option<BlobDiagram> {
        if n > MAX_STRANDS || arcs.len() != n {
            return None;
        }
        let mut d = BlobDiagram::empty(n);
        let mut used = [false; MAX_POINTS];
        for &(a, b) in arcs {
            if a >= 2 * n || b >= 2 * n || a == b || used[a] || used[b] {
                return None;
            }
            used[a] = true;
            used[b] = true;
            d.join(a, b);
        }
        for &k in blobbed {
            let &(a, b) = arcs.get(k)?;
            d.blobs |= 1 << a.min(b);
        }
        d.is_valid().then_some(d)
    }

    pub fn strands(&self) -> usize {
        self.n as usize
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn is_blobbed(&self, p: usize) -> bool {
        let lo = p.min(self.partner(p));
        self.blobs >> lo & 1 == 1
    }

    /// Arcs `(a, b)` with `a < b`, sorted by `a`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.strands()).filter(|&p| p < self.partner(p)).map(|p| (p, self.partner(p))).collect()
    }

    /// Indices into [`BlobDiagram::arcs`] of the blobbed arcs.
    pub fn blobbed_arcs(&self) -> Vec<usize> {
        self.arcs().iter().enumerate().filter(|(_, &(a, _))| self.blobs >> a & 1 == 1).map(|(i, _)| i).collect()
    }

    pub fn blob_count(&self) -> usize {
        self.blobs.count_ones() as usize
    }

    pub fn through_lines(&self) -> usize {
        let n = self.strands();
        (0..n).filter(|&p| self.partner(p) >= n).count()
    }

    pub fn is_exposed(&self, p: usize) -> bool {
        let (a, b) = (p.min(self.partner(p)), p.max(self.partner(p)));
        !(0..a).any(|c| self.partner(c) > b)
    }

    fn is_valid(&self) -> bool {
        let arcs = self.arcs();
        let crossing = arcs.iter().any(|&(a, b)| arcs.iter().any(|&(c, d)| a < c && c < b && b < d));
        let blobs_ok = (0..2 * self.strands()).all(|p| {
            let lo = p.min(self.partner(p));
            self.blobs >> p & 1 == 0 || (p == lo && self.is_exposed(p))
        });
        !crossing && blobs_ok && self.blobs >> (2 * self.strands()) == 0
    }

    /// Largest strand that is not a plain vertical line, so the diagram lies in the level-`n` subalgebra.
    pub fn level(&self) -> usize {
        let n = self.strands();
        (1..=n).rev().find(|&j| self.partner(j - 1) != self.bottom(j - 1) || self.is_blobbed(j - 1)).unwrap_or(0)
    }

    /// All diagrams on `n` strands, with or without blobs.
    pub fn enumerate(n: usize, with_blobs: bool) -> Vec<BlobDiagram> {
        let points: Vec<usize> = (0..2 * n).collect();
        let mut out = Vec::new();
        for arcs in matchings(&points) {
            let mut base = BlobDiagram::empty(n);
            for &(a, b) in &arcs {
                base.join(a, b);
            }
            let exposed: Vec<usize> = arcs.iter().filter(|&&(a, _)| base.is_exposed(a)).map(|&(a, _)| a).collect();
            let choices = if with_blobs { 1usize << exposed.len() } else { 1 };
            for mask in 0..choices {
                let mut d = base;
                for (bit, &a) in exposed.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        d.blobs |= 1 << a;
                    }
                }
                out.push(d);
            }
        }
        out.sort();
        out
    }

    /// Stacks `self` on top of `other`; returns the diagram with the number of
    /// plain and blobbed closed loops.
    pub fn compose(&self, other: &BlobDiagram) -> (BlobDiagram, u8, u8) {
        assert_eq!(self.n, other.n, "strand mismatch");
        let n = self.strands();
        let m = 2 * n;
        let mut out = BlobDiagram::empty(n);
        let mut done = [false; MAX_POINTS];
        let mut seen = [false; MAX_STRANDS];
        for start in 0..m {
            if done[start] {
                continue;
            }
            let mut upper = start < n;
            let mut pos = start;
            let mut blob = false;
            let end = loop {
                let d = if upper { self } else { other };
                let p = d.partner(pos);
                blob |= d.is_blobbed(pos);
                if upper {
                    if p < n {
                        break p;
                    }
                    let i = m - 1 - p;
                    seen[i] = true;
                    upper = false;
                    pos = i;
                } else {
                    if p >= n {
                        break p;
                    }
                    seen[p] = true;
                    upper = true;
                    pos = m - 1 - p;
                }
            };
            done[start] = true;
            done[end] = true;
            out.join(start, end);
            if blob {
                out.blobs |= 1 << start.min(end);
            }
        }
        let (mut loops, mut blob_loops) = (0u8, 0u8);
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut blob = false;
            let mut cur = i;
            loop {
                seen[cur] = true;
                let pa = self.partner(m - 1 - cur);
                blob |= self.is_blobbed(m - 1 - cur);
                let j = m - 1 - pa;
                seen[j] = true;
                blob |= other.is_blobbed(j);
                cur = other.partner(j);
                if cur == i {
                    break;
                }
            }
            if blob {
                blob_loops += 1;
            } else {
                loops += 1;
            }
        }
        (out, loops, blob_loops)
    }

    /// Joins the ends of strand `j` (1-based) and leaves a vertical line in its place.
    /// Returns `Some(blobbed)` when a closed loop is produced.
    pub fn close(&self, j: usize) -> (BlobDiagram, Option<bool>) {
        let t = j - 1;
        let b = self.bottom(t);
        let mut d = *self;
        if self.partner(t) == b {
            let blob = self.is_blobbed(t);
            d.blobs &= !(1 << t);
            return (d, Some(blob));
        }
        let (pt, pb) = (self.partner(t), self.partner(b));
        let blob = self.is_blobbed(t) || self.is_blobbed(b);
        d.blobs &= !(1 << t.min(pt));
        d.blobs &= !(1 << b.min(pb));
        d.join(pt, pb);
        d.join(t, b);
        if blob {
            d.blobs |= 1 << pt.min(pb);
        }
        (d, None)
    }

    /// Reflection in the horizontal axis.
    pub fn flip(&self) -> BlobDiagram {
        let m = 2 * self.strands();
        let mut d = BlobDiagram::empty(self.strands());
        let mirror = |p: usize| m - 1 - p;
        for p in 0..m {
            d.partner[mirror(p)] = mirror(self.partner(p)) as u8;
        }
        for p in 0..m {
            if self.blobs >> p & 1 == 1 {
                let (a, b) = (mirror(p), mirror(self.partner(p)));
                d.blobs |= 1 << a.min(b);
            }
        }
        d
    }
}

fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in (1..points.len()).step_by(2) {
        let inner = matchings(&points[1..j]);
        let outer = matchings(&points[j + 1..]);
        for a in &inner {
            for b in &outer {
                let mut arcs = Vec::with_capacity(points.len() / 2);
                arcs.push((points[0], points[j]));
                arcs.extend_from_slice(a);
                arcs.extend_from_slice(b);
                out.push(arcs);
            }
        }
    }
    out
}

impl fmt::Debug for BlobDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.arcs().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let mark = if self.blobs >> a & 1 == 1 { "*" } else { "" };
            write!(f, "{a}-{b}{mark}")?;
        }
        write!(f, "]")
    }
}

pub type BlobElement = Element<BlobDiagram>;

type ProductTable = FxHashMap<(BlobDiagram, BlobDiagram), (BlobDiagram, u8, u8)>;

/// The blob algebra on `rank` strands with loop weight `q + q⁻¹`.
///
/// `y_1` acts as `μ₊ B + μ₋ (1 - B)`, so `y_1² = P y_1 + R` with `P = μ₊ + μ₋ = q D⁽¹⁾`
/// and `R = -μ₊μ₋ = q⁻¹Δ`.
#[derive(Clone)]
pub struct BlobAlgebra {
    rank: usize,
    q: Scalar,
    lambda: Scalar,
    mu_plus: Scalar,
    mu_minus: Scalar,
    loop_weight: Scalar,
    gamma: Scalar,
    d0: Scalar,
    mode: BoundaryMode,
    table: Arc<RwLock<ProductTable>>,
}

impl fmt::Debug for BlobAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlobAlgebra")
            .field("rank", &self.rank)
            .field("q", &self.q)
            .field("mu_plus", &self.mu_plus)
            .field("mu_minus", &self.mu_minus)
            .field("mode", &self.mode)
            .finish()
    }
}

impl BlobAlgebra {
    /// Symbolic `q`, `μ₊`, `μ₋` and free boundary.
    pub fn generic(rank: usize) -> BlobAlgebra {
        BlobAlgebra::new(rank, Scalar::q(), Scalar::var(Var::MU_PLUS), Scalar::var(Var::MU_MINUS))
            .expect("symbolic parameters are valid")
    }

    /// The Temperley-Lieb algebra with the free boundary `y_1 = 1`.
    pub fn temperley_lieb(rank: usize, q: Scalar) -> Result<BlobAlgebra, AlgebraError> {
        BlobAlgebra::new(rank, q, Scalar::var(Var::MU_PLUS), Scalar::var(Var::MU_MINUS))
    }

    pub fn new(rank: usize, q: Scalar, mu_plus: Scalar, mu_minus: Scalar) -> Result<BlobAlgebra, AlgebraError> {
        if rank == 0 || rank > MAX_STRANDS {
            return Err(AlgebraError::OutOfRange { index: rank, rank: MAX_STRANDS });
        }
        let qinv = q.inv().map_err(|_| AlgebraError::InvalidParameter("q must be nonzero".into()))?;
        let lambda = &q - &qinv;
        if lambda.is_zero() {
            return Err(AlgebraError::InvalidParameter("q² = 1 is not supported".into()));
        }
        let split = &mu_plus - &mu_minus;
        if split.is_zero() {
            return Err(AlgebraError::DegenerateBoundary("μ₊ = μ₋: the quadratic relation has a double root".into()));
        }
        let loop_weight = &q + &qinv;
        if loop_weight.is_zero() {
            return Err(AlgebraError::InvalidParameter("q² = -1 is not supported".into()));
        }
        let gamma = (&(&q * &mu_plus) - &(&qinv * &mu_minus)).checked_div(&split)?;
        let d0 = &loop_weight * &qinv.pow(2)?;
        Ok(BlobAlgebra {
            rank,
            q,
            lambda,
            mu_plus,
            mu_minus,
            loop_weight,
            gamma,
            d0,
            mode: BoundaryMode::Free,
            table: Arc::default(),
        })
    }

    pub fn with_mode(mut self, mode: BoundaryMode) -> BlobAlgebra {
        self.mode = mode;
        self
    }

    pub fn with_rank(&self, rank: usize) -> Result<BlobAlgebra, AlgebraError> {
        Ok(BlobAlgebra::new(rank, self.q.clone(), self.mu_plus.clone(), self.mu_minus.clone())?.with_mode(self.mode.clone()))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn mode(&self) -> &BoundaryMode {
        &self.mode
    }

    pub fn roots(&self) -> (&Scalar, &Scalar) {
        (&self.mu_plus, &self.mu_minus)
    }

    /// Weight of a closed loop without blob.
    pub fn loop_weight(&self) -> &Scalar {
        &self.loop_weight
    }

    /// Weight of a closed loop carrying the blob, `(qμ₊ - q⁻¹μ₋)/(μ₊ - μ₋)`.
    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    /// `D⁽⁰⁾ = (1 - q⁻⁴)/λ`.
    pub fn d0(&self) -> &Scalar {
        &self.d0
    }

    /// `D⁽¹⁾ = (μ₊ + μ₋)/q`.
    pub fn d1(&self) -> Scalar {
        (&self.mu_plus + &self.mu_minus) * self.q.inv().expect("q is nonzero")
    }

    /// `Δ = -q μ₊ μ₋`.
    pub fn delta(&self) -> Scalar {
        -(&(&self.q * &self.mu_plus) * &self.mu_minus)
    }

    /// `(P, R)` of the relation `y_1² = P y_1 + R`.
    pub fn quadratic_coefficients(&self) -> (Scalar, Scalar) {
        (&self.mu_plus + &self.mu_minus, -(&self.mu_plus * &self.mu_minus))
    }

    /// The same algebra with `μ₊` and `μ₋` exchanged.
    pub fn swapped(&self) -> BlobAlgebra {
        BlobAlgebra::new(self.rank, self.q.clone(), self.mu_minus.clone(), self.mu_plus.clone())
            .expect("parameters were valid")
            .with_mode(self.mode.clone())
    }

    pub fn zero(&self) -> BlobElement {
        Element::zero(self.rank)
    }

    pub fn scalar(&self, c: Scalar) -> BlobElement {
        Element::monomial(self.rank, BlobDiagram::identity(self.rank), c)
    }

    pub fn one(&self) -> BlobElement {
        self.scalar(Scalar::one())
    }

    pub fn diagram(&self, d: BlobDiagram) -> Result<BlobElement, AlgebraError> {
        if d.strands() != self.rank {
            return Err(AlgebraError::RankMismatch(d.strands(), self.rank));
        }
        Ok(Element::monomial(self.rank, d, Scalar::one()))
    }

    /// `E_i`.
    pub fn e(&self, i: usize) -> Result<BlobElement, AlgebraError> {
        let d = BlobDiagram::cup(self.rank, i).ok_or(AlgebraError::OutOfRange { index: i, rank: self.rank })?;
        self.diagram(d)
    }

    /// The blob idempotent `B`.
    pub fn blob(&self) -> BlobElement {
        Element::monomial(self.rank, BlobDiagram::blob(self.rank), Scalar::one())
    }

    /// `σ_i = q - E_i`.
    pub fn sigma(&self, i: usize) -> Result<BlobElement, AlgebraError> {
        Ok(&self.scalar(self.q.clone()) - &self.e(i)?)
    }

    /// `y_1 = μ₋ + (μ₊ - μ₋) B`.
    pub fn y1(&self) -> BlobElement {
        &self.scalar(self.mu_minus.clone()) + &self.blob().scale(&(&self.mu_plus - &self.mu_minus))
    }

    /// `y_1^{-1} = (y_1 - P)/R`.
    pub fn y1_inv(&self) -> Result<BlobElement, AlgebraError> {
        let (p, r) = self.quadratic_coefficients();
        let rinv = r.inv().map_err(|_| AlgebraError::DegenerateBoundary("y_1 is not invertible".into()))?;
        Ok((&self.y1() - &self.scalar(p)).scale(&rinv))
    }

    fn compose(&self, a: &BlobDiagram, b: &BlobDiagram) -> (BlobDiagram, u8, u8) {
        if let Some(r) = self.table.read().expect("product table lock").get(&(*a, *b)) {
            return *r;
        }
        let r = a.compose(b);
        self.table.write().expect("product table lock").insert((*a, *b), r);
        r
    }

    fn weight(&self, loops: u8, blob_loops: u8) -> Scalar {
        let mut w = Scalar::one();
        for _ in 0..loops {
            w *= &self.loop_weight;
        }
        for _ in 0..blob_loops {
            w *= &self.gamma;
        }
        w
    }

    pub fn try_mul(&self, a: &BlobElement, b: &BlobElement) -> Result<BlobElement, AlgebraError> {
        a.check_rank(b)?;
        let mut acc: BTreeMap<BlobDiagram, Vec<Scalar>> = BTreeMap::new();
        for (da, ca) in a.terms() {
            for (db, cb) in b.terms() {
                let (d, l, g) = self.compose(da, db);
                let mut c = ca * cb;
                if l > 0 || g > 0 {
                    c *= &self.weight(l, g);
                }
                acc.entry(d).or_default().push(c);
            }
        }
        Ok(Element::from_terms(self.rank, acc.into_iter().map(|(d, cs)| (d, cs.into_iter().sum()))))
    }

    pub fn mul(&self, a: &BlobElement, b: &BlobElement) -> BlobElement {
        self.try_mul(a, b).expect("rank mismatch")
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a BlobElement>) -> BlobElement {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn commutator(&self, a: &BlobElement, b: &BlobElement) -> BlobElement {
        &self.mul(a, b) - &self.mul(b, a)
    }

    pub fn in_level(e: &BlobElement, level: usize) -> bool {
        e.terms().all(|(d, _)| d.level() <= level)
    }

    /// `Tr_{D(n+1)}`: closes strand `n + 1` with normalization `q⁻²`.
    pub fn blob_trace(&self, n: usize, e: &BlobElement) -> Result<BlobElement, AlgebraError> {
        if n >= self.rank {
            return Err(AlgebraError::OutOfRange { index: n + 1, rank: self.rank });
        }
        if !BlobAlgebra::in_level(e, n + 1) {
            return Err(AlgebraError::NotInSubalgebra(n + 1));
        }
        let norm = self.q.pow(-2)?;
        let mut acc: BTreeMap<BlobDiagram, Vec<Scalar>> = BTreeMap::new();
        for (d, c) in e.terms() {
            let (closed, lp) = d.close(n + 1);
            let w = match lp {
                None => norm.clone(),
                Some(false) => &norm * &self.loop_weight,
                Some(true) => &norm * &self.gamma,
            };
            acc.entry(closed).or_default().push(c * &w);
        }
        Ok(Element::from_terms(self.rank, acc.into_iter().map(|(d, cs)| (d, cs.into_iter().sum()))))
    }

    /// `y_1(x)` for the configured boundary mode.
    pub fn boundary_solution(&self, x: &Scalar) -> Result<BlobElement, AlgebraError> {
        match &self.mode {
            BoundaryMode::Free => Ok(self.one()),
            BoundaryMode::QuadraticBlob { xi } => {
                let (p, r) = self.quadratic_coefficients();
                let c = xi * &x.inv()?;
                let den = &r + &(&c * &p) - &c * &c;
                if den.is_zero() {
                    return Err(AlgebraError::DegenerateBoundary("y_1 - ξ/x is not invertible".into()));
                }
                let den_inv = den.inv()?;
                let alpha = (&r + &(&(xi * x) * &p) - xi * xi) * den_inv.clone();
                let beta = (&c - &(xi * x)) * den_inv;
                Ok(&self.scalar(alpha) + &self.y1().scale(&beta))
            }
            BoundaryMode::Polynomial(coeffs) => {
                let y = self.y1();
                let mut power = self.one();
                let mut out = self.zero();
                for c in coeffs {
                    out = &out + &power.scale(&c.substitute(Var::X, x)?);
                    power = self.mul(&power, &y);
                }
                Ok(out)
            }
        }
    }

    fn substitutions(&self) -> Vec<(Var, Scalar)> {
        let mut subs = vec![(Var::trace_constant(0).expect("d0 variable"), self.d0.clone())];
        subs.push((Var::trace_constant(1).expect("d1 variable"), self.d1()));
        subs.push((Var::DELTA, self.delta()));
        subs
    }

    fn specialize(&self, c: &Scalar) -> Result<Scalar, AlgebraError> {
        let mut out = c.clone();
        for (v, value) in self.substitutions() {
            if out.depends_on(v) {
                out = out.substitute(v, &value)?;
            }
        }
        Ok(out)
    }

    fn check_q(&self, q: &Scalar) -> Result<(), AlgebraError> {
        if q != &self.q {
            return Err(AlgebraError::InvalidParameter(format!("q = {q} does not match the quotient's q = {}", self.q)));
        }
        Ok(())
    }

    fn perm_image(&self, w: &Perm, cache: &mut FxHashMap<Perm, BlobElement>) -> Result<BlobElement, AlgebraError> {
        if let Some(e) = cache.get(w) {
            return Ok(e.clone());
        }
        let mut out = self.one();
        for i in w.reduced_word() {
            out = self.try_mul(&out, &self.sigma(i)?)?;
        }
        cache.insert(*w, out.clone());
        Ok(out)
    }

    /// Image of a Hecke element under `σ_i ↦ q - E_i`.
    pub fn project_hecke(&self, hecke: &HeckeAlgebra, e: &HeckeElement) -> Result<BlobElement, AlgebraError> {
        self.check_q(hecke.q())?;
        if e.rank() > self.rank {
            return Err(AlgebraError::RankMismatch(e.rank(), self.rank));
        }
        let mut cache = FxHashMap::default();
        let mut out = self.zero();
        for (w, c) in e.terms() {
            let img = self.perm_image(w, &mut cache)?;
            out = &out + &img.scale(&self.specialize(c)?);
        }
        Ok(out)
    }

    /// `y_k` for `k ≥ 1`, with `y_{k+1} = σ_k y_k σ_k` and negative powers from `y_1^{-1}`.
    fn y_image(&self, k: usize, e: i32) -> Result<BlobElement, AlgebraError> {
        let base = if e >= 0 { self.y1() } else { self.y1_inv()? };
        let mut y = self.one();
        for _ in 0..e.unsigned_abs() {
            y = self.mul(&y, &base);
        }
        for i in 1..k {
            let (l, r) = if e >= 0 {
                (self.sigma(i)?, self.sigma(i)?)
            } else {
                let s = &self.sigma(i)? - &self.scalar(self.lambda.clone());
                (s.clone(), s)
            };
            y = self.product([&l, &y, &r]);
        }
        Ok(y)
    }

    /// Image of an element of the quadratic quotient of the affine Hecke algebra.
    ///
    /// The affine algebra's `D⁽⁰⁾`, `D⁽¹⁾` and `Δ` must either be the symbolic
    /// trace constants, which are specialized, or agree with this quotient.
    pub fn project_affine(&self, affine: &AffineAlgebra, e: &AffineElement) -> Result<BlobElement, AlgebraError> {
        self.check_q(affine.q())?;
        let (d1, delta) = affine.blob_parameters().ok_or_else(|| {
            AlgebraError::InvalidParameter("projection needs the quadratic quotient of the affine algebra".into())
        })?;
        if self.specialize(d1)? != self.d1() || self.specialize(delta)? != self.delta() {
            return Err(AlgebraError::InvalidParameter("the quadratic relations do not match".into()));
        }
        if e.rank() > self.rank {
            return Err(AlgebraError::RankMismatch(e.rank(), self.rank));
        }
        let mut perms = FxHashMap::default();
        let mut ys: FxHashMap<(usize, i32), BlobElement> = FxHashMap::default();
        let mut out = self.zero();
        for (key, c) in e.terms() {
            let mut img = self.one();
            for k in 1..=e.rank() {
                let a = key.exponent(k);
                if a != 0 {
                    if !ys.contains_key(&(k, a)) {
                        ys.insert((k, a), self.y_image(k, a)?);
                    }
                    img = self.mul(&img, &ys[&(k, a)]);
                }
            }
            img = self.mul(&img, &self.perm_image(&key.perm(), &mut perms)?);
            out = &out + &img.scale(&self.specialize(c)?);
        }
        Ok(out)
    }
}

impl ChainAlgebra for BlobAlgebra {
    type Elem = BlobElement;

    fn strands(&self) -> usize {
        self.rank
    }
    fn q(&self) -> Scalar {
        self.q.clone()
    }
    fn d0(&self) -> Scalar {
        self.d0.clone()
    }
    fn scalar(&self, c: Scalar) -> BlobElement {
        BlobAlgebra::scalar(self, c)
    }
    fn sigma(&self, i: usize) -> Result<BlobElement, AlgebraError> {
        BlobAlgebra::sigma(self, i)
    }
    fn add(&self, a: &BlobElement, b: &BlobElement) -> BlobElement {
        a + b
    }
    fn scale(&self, a: &BlobElement, c: &Scalar) -> BlobElement {
        a.scale(c)
    }
    fn mul(&self, a: &BlobElement, b: &BlobElement) -> Result<BlobElement, AlgebraError> {
        self.try_mul(a, b)
    }
    fn trace(&self, n: usize, e: &BlobElement) -> Result<BlobElement, AlgebraError> {
        self.blob_trace(n, e)
    }
    fn boundary(&self, x: &Scalar) -> Result<BlobElement, AlgebraError> {
        self.boundary_solution(x)
    }
    fn is_zero(&self, e: &BlobElement) -> bool {
        e.is_zero()
    }
    fn ratio(&self, a: &BlobElement, b: &BlobElement) -> Option<Scalar> {
        a.ratio_to(b)
    }
}

/// `b` and `D⁽⁰⁾` forced by the Temperley-Lieb relation, with the trace factor they annihilate.
#[derive(Clone, Debug, PartialEq)]
pub struct ForcedConstants {
    pub b: Scalar,
    pub d0: Scalar,
    /// `c` in `Tr_{D(3)}(σ_1(q²) σ_2(q⁴) σ_1(q²)) = c σ_1(q²)²` for symbolic `D⁽⁰⁾`.
    pub trace_factor: Scalar,
}

/// Solves `Tr_{D(3)}(σ_1(q²) σ_2(q⁴) σ_1(q²)) = 0` for `D⁽⁰⁾` in the generic Hecke algebra.
pub fn forced_constants() -> Result<ForcedConstants, AlgebraError> {
    let h = HeckeAlgebra::generic(3);
    let q = h.q().clone();
    let s1 = h.sigma_x(1, &q.pow(2)?);
    let s2 = h.sigma_x(2, &q.pow(4)?);
    let traced = h.markov_trace(2, &h.product([&s1, &s2, &s1]))?;
    let square = h.mul(&s1, &s1);
    let trace_factor = traced
        .ratio_to(&square)
        .ok_or_else(|| AlgebraError::Internal("trace is not a multiple of σ_1(q²)²".into()))?;
    let d0_var = Var::trace_constant(0).expect("d0 variable");
    let coeffs = trace_factor
        .coefficients_in(d0_var)
        .filter(|c| c.len() == 2)
        .ok_or_else(|| AlgebraError::Internal("trace factor is not linear in D⁽⁰⁾".into()))?;
    let d0 = (-&coeffs[0]).checked_div(&coeffs[1])?;
    let b = (Scalar::one() - &(h.lambda() * &d0)).inv()?;
    Ok(ForcedConstants { b, d0, trace_factor })
}

/// `Δ⁽⁰⁾_N(z) = Δ⁽⁰⁾_0(z) ((1-z)/(q-zq⁻¹))^{2N}`; `base` defaults to the free boundary value
/// `Δ⁽⁰⁾_0(z) = -q⁻²(1-z²)/(1-z²q⁻⁴)`.
pub fn delta0(q: &Scalar, z: &Scalar, sites: usize, base: Option<&Scalar>) -> Result<Scalar, AlgebraError> {
    let z2 = z * z;
    let free = || -> Result<Scalar, AlgebraError> {
        let num = -q.pow(-2)? * (Scalar::one() - &z2);
        Ok(num.checked_div(&(Scalar::one() - &(&z2 * &q.pow(-4)?)))?)
    };
    let d = match base {
        Some(b) => b.clone(),
        None => free()?,
    };
    let ratio = (Scalar::one() - z).checked_div(&(q - &(z * &q.inv()?)))?;
    Ok(d * ratio.pow(2 * sites as i32)?)
}

/// Both sides of `y_1^{zq⁻²} e⁺_1(z²q⁻²) y_1^z σ_1(q²)` and its mirror `σ_1(q²) y_1^z e⁺_1(z²q⁻²) y_1^{zq⁻²}`.
pub fn delta0_sides<A: ChainAlgebra>(alg: &A, z: &Scalar) -> Result<(A::Elem, A::Elem, A::Elem), AlgebraError> {
    let q = alg.q();
    let q2 = q.pow(2)?;
    let zq = z * &q.pow(-2)?;
    let e = alg.e_plus(1, &(&(z * z) * &q.pow(-2)?))?;
    let s = alg.sigma_x(1, &q2)?;
    let (ya, yb) = (alg.boundary(&zq)?, alg.boundary(z)?);
    let left = alg.product(&[ya.clone(), e.clone(), yb.clone(), s.clone()])?;
    let right = alg.product(&[s.clone(), yb, e, ya])?;
    Ok((left, right, s))
}

/// `Δ⁽⁰⁾(z)` read off from the algebra; fails if either side is not a multiple of `σ_1(q²)`.
pub fn delta0_from_algebra<A: ChainAlgebra>(alg: &A, z: &Scalar) -> Result<Scalar, AlgebraError> {
    let (left, right, s) = delta0_sides(alg, z)?;
    let c = alg
        .ratio(&left, &s)
        .ok_or_else(|| AlgebraError::Internal("y e y σ(q²) is not a multiple of σ(q²)".into()))?;
    if alg.ratio(&right, &s).as_ref() != Some(&c) {
        return Err(AlgebraError::Internal("the two orderings give different determinants".into()));
    }
    Ok(c)
}

/// `τ⁽ᵏ⁾(x) τ⁽¹⁾(xq^{2k}) = φ'_k(x) τ⁽ᵏ⁺¹⁾(x) + φ'''_k(x) Δ⁽⁰⁾(xq^{2k}) τ⁽ᵏ⁻¹⁾(x)` with `b = q⁴`.
pub fn prop2_check<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<IdentityReport<A::Elem>, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::InvalidParameter("k must be at least 1".into()));
    }
    let q = alg.q();
    let b = q.pow(4)?;
    let shifted = x * &q.pow(2 * k as i32)?;
    let lhs = alg.mul(&fused_transfer(alg, k, x)?, &fused_transfer(alg, 1, &shifted)?)?;
    let d = delta0_from_algebra(alg, &shifted)?;
    let rhs = alg.add(
        &alg.scale(&fused_transfer(alg, k + 1, x)?, &phi_prime(&q, &b, k, x)?),
        &alg.scale(&fused_transfer(alg, k - 1, x)?, &(phi_triple_prime(&q, k, x)? * d)),
    );
    Ok(IdentityReport::new(alg, "prop2", k, lhs, rhs))
}

/// `φ'''_k(x) = -q⁻² (1-x²q^{2k-6})(1-x²q^{4k-4}) / ((1-x²q^{2k-4})(1-x²q^{4k-2}))`.
pub fn phi_triple_prime(q: &Scalar, k: usize, x: &Scalar) -> Result<Scalar, AlgebraError> {
    let k = k as i32;
    let x2 = x * x;
    let f = |e: i32| -> Result<Scalar, AlgebraError> { Ok(Scalar::one() - &(&x2 * &q.pow(e)?)) };
    let num = -q.pow(-2)? * f(2 * k - 6)? * f(4 * k - 4)?;
    Ok(num.checked_div(&(f(2 * k - 4)? * f(4 * k - 2)?))?)
}

/// `φ'_k` specialized to `b = q⁴`.
pub fn phi_prime_tl(q: &Scalar, k: usize, x: &Scalar) -> Result<Scalar, AlgebraError> {
    phi_prime(q, &q.pow(4)?, k, x)
}

/// `φ''_k` specialized to `b = q⁴`.
pub fn phi_double_prime_tl(q: &Scalar, k: usize, x: &Scalar) -> Result<Scalar, AlgebraError> {
    phi_double_prime(q, &q.pow(4)?, k, x)
}

/// `Q⁽ᵏ⁾(z) = (1 - z²q^{-2(k+2)}) τ⁽ᵏ⁾(zq^{-2k})`.
pub fn q_operator<A: ChainAlgebra>(alg: &A, k: usize, z: &Scalar) -> Result<A::Elem, AlgebraError> {
    let q = alg.q();
    let ki = k as i32;
    let pre = Scalar::one() - &(&(z * z) * &q.pow(-2 * (ki + 2))?);
    Ok(alg.scale(&fused_transfer(alg, k, &(z * &q.pow(-2 * ki)?))?, &pre))
}

fn tq_combination<A: ChainAlgebra>(
    alg: &A,
    k: usize,
    z: &Scalar,
    tau1: &A::Elem,
    delta: &Scalar,
) -> Result<A::Elem, AlgebraError> {
    let q = alg.q();
    let z2 = z * z;
    let pre = (Scalar::one() - &(&z2 * &q.pow(-2)?)).checked_div(&(Scalar::one() - &(&z2 * &q.pow(-4)?)))?;
    let first = alg.scale(&alg.mul(&q_operator(alg, k, z)?, tau1)?, &pre);
    let next = q_operator(alg, k + 1, &(z * &q.pow(2)?))?;
    let prev = q_operator(alg, k - 1, &(z * &q.pow(-2)?))?;
    let tail = alg.scale(&prev, &(delta * &q.pow(-2)?));
    Ok(alg.add(&alg.sub(&first, &next), &tail))
}

/// `(1-z²q⁻²)(1-z²q⁻⁴)⁻¹ Q⁽ᵏ⁾(z) τ⁽¹⁾(z) - Q⁽ᵏ⁺¹⁾(zq²) + Δ⁽⁰⁾(z) q⁻² Q⁽ᵏ⁻¹⁾(zq⁻²)` with
/// `τ⁽¹⁾` and `Δ⁽⁰⁾` computed in the algebra.
pub fn tq_residual<A: ChainAlgebra>(alg: &A, k: usize, z: &Scalar) -> Result<A::Elem, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::InvalidParameter("k must be at least 1".into()));
    }
    let tau1 = fused_transfer(alg, 1, z)?;
    let d = delta0_from_algebra(alg, z)?;
    tq_combination(alg, k, z, &tau1, &d)
}

/// The free-boundary residual on a chain of `sites` sites: `τ⁽¹⁾` is replaced by
/// `T⁽¹⁾_N(z)/(q - zq⁻¹)^{2N}` and `Δ⁽⁰⁾` by its closed form.
pub fn tq_residual_free(chain: &crate::chain::Chain<BlobAlgebra>, k: usize, z: &Scalar) -> Result<BlobElement, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::InvalidParameter("k must be at least 1".into()));
    }
    let tl = chain.inner();
    let n = chain.sites();
    let q = tl.q().clone();
    let hecke = HeckeAlgebra::new(tl.rank(), q.clone())?;
    let t1 = tl.project_hecke(&hecke, &hecke.free_transfer(n, z)?)?;
    let norm = (&q - &(z * &q.inv()?)).pow(-2 * n as i32)?;
    let d = delta0(&q, z, n, None)?;
    tq_combination(chain, k, z, &t1.scale(&norm), &d)
}
