//! Matrix images of Hecke and affine Hecke elements through the fundamental
//! `U_q(gl(n|m))` R-matrix, quantum supertraces, Sklyanin transfer matrices and
//! spectra.
//!
//! Chain operators act on `V^{⊗sites}` with `dim V = n + m`. Basis vectors of the
//! tensor product are ordered with the first factor most significant.

use std::fmt;

use hechain_scalar::{Bindings, IBig, Rational, Scalar, Var};
use nalgebra::{DMatrix, Schur};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::affine::{AffineAlgebra, AffineElement, BoundaryMode};
use crate::chain::{AffineChain, ChainAlgebra};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::perm::Perm;
use crate::AlgebraError;

/// The graded space `V_{n+m}`: the first `n` basis vectors are even, the rest odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuperSpace {
    n: usize,
    m: usize,
}

impl SuperSpace {
    pub fn new(n: usize, m: usize) -> Result<SuperSpace, AlgebraError> {
        if n + m < 2 || n + m > 4 {
            return Err(AlgebraError::InvalidParameter(format!("gl({n}|{m}) needs 2 ≤ n+m ≤ 4")));
        }
        Ok(SuperSpace { n, m })
    }

    pub fn gl(n: usize) -> Result<SuperSpace, AlgebraError> {
        SuperSpace::new(n, 0)
    }

    pub fn even(&self) -> usize {
        self.n
    }

    pub fn odd(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    /// `[i]` for `1 ≤ i ≤ n + m`.
    pub fn parity(&self, i: usize) -> usize {
        usize::from(i > self.n)
    }

    pub fn label(&self) -> String {
        if self.m == 0 {
            format!("gl({})", self.n)
        } else {
            format!("gl({}|{})", self.n, self.m)
        }
    }
}

impl fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `gl2`, `gl(2)`, `gl(2|1)`, `gl2|1` and the digit-pair shorthand `gl21`.
impl std::str::FromStr for SuperSpace {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<SuperSpace, AlgebraError> {
        let bad = || AlgebraError::InvalidParameter(format!("unknown model {s:?}"));
        let body = s.trim().strip_prefix("gl").ok_or_else(bad)?;
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let (n, m) = match body.split_once('|') {
            Some((n, m)) => (n.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?),
            None if body.len() == 2 && body.bytes().all(|b| b.is_ascii_digit()) => {
                let d = body.as_bytes();
                (usize::from(d[0] - b'0'), usize::from(d[1] - b'0'))
            }
            None => (body.parse().map_err(|_| bad())?, 0),
        };
        SuperSpace::new(n, m)
    }
}

/// A dense square matrix of [`Scalar`] entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Scalar>>", into = "Vec<Vec<Scalar>>")]
pub struct RepMatrix {
    dim: usize,
    entries: Vec<Scalar>,
}

impl RepMatrix {
    pub fn zeros(dim: usize) -> RepMatrix {
        RepMatrix { dim, entries: vec![Scalar::zero(); dim * dim] }
    }

    pub fn scalar(dim: usize, c: &Scalar) -> RepMatrix {
        let mut out = RepMatrix::zeros(dim);
        for i in 0..dim {
            out.entries[i * dim + i] = c.clone();
        }
        out
    }

    pub fn identity(dim: usize) -> RepMatrix {
        RepMatrix::scalar(dim, &Scalar::one())
    }

    pub fn diagonal(values: &[Scalar]) -> RepMatrix {
        let mut out = RepMatrix::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            out.entries[i * values.len() + i] = v.clone();
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<RepMatrix, AlgebraError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::InvalidParameter("matrix must be square".into()));
        }
        Ok(RepMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check(&self, other: &RepMatrix) -> Result<(), AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::RankMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RepMatrix) -> Result<RepMatrix, AlgebraError> {
        self.check(other)?;
        Ok(RepMatrix { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &RepMatrix) -> Result<RepMatrix, AlgebraError> {
        self.try_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> RepMatrix {
        RepMatrix { dim: self.dim, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn try_mul(&self, other: &RepMatrix) -> Result<RepMatrix, AlgebraError> {
        self.check(other)?;
        let n = self.dim;
        let mut acc: Vec<Vec<Scalar>> = vec![Vec::new(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        acc[i * n + j].push(a * b);
                    }
                }
            }
        }
        Ok(RepMatrix { dim: n, entries: acc.into_iter().map(|v| v.into_iter().sum()).collect() })
    }

    pub fn mul(&self, other: &RepMatrix) -> RepMatrix {
        self.try_mul(other).expect("dimension mismatch")
    }

    pub fn kron(&self, other: &RepMatrix) -> RepMatrix {
        let (a, b) = (self.dim, other.dim);
        let mut out = RepMatrix::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        let y = other.get(k, l);
                        if !y.is_zero() {
                            out.set(i * b + k, j * b + l, x * y);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn transpose(&self) -> RepMatrix {
        let mut out = RepMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Gauss-Jordan inverse over the coefficient field.
    pub fn inverse(&self) -> Result<RepMatrix, AlgebraError> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = RepMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| AlgebraError::DegenerateBoundary("matrix is singular".into()))?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inv()?;
            for j in 0..n {
                a.entries[col * n + j] = &a.entries[col * n + j] * &p;
                inv.entries[col * n + j] = &inv.entries[col * n + j] * &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let da = &f * a.get(col, j);
                    let di = &f * inv.get(col, j);
                    a.entries[r * n + j] -= &da;
                    inv.entries[r * n + j] -= &di;
                }
            }
        }
        Ok(inv)
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        if let Some(rows) = self.integer_rows() {
            return integer_rank(rows);
        }
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else { continue };
            for j in 0..n {
                a.swap(pivot * n + j, rank * n + j);
            }
            let p = a[rank * n + col].inv().expect("nonzero pivot");
            for r in rank + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] * &p;
                for j in col..n {
                    let d = &f * &a[rank * n + j];
                    a[r * n + j] -= &d;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rows scaled to integers, when every entry is a rational constant.
    fn integer_rows(&self) -> Option<Vec<Vec<IBig>>> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let row: Vec<Rational> = (0..n).map(|j| self.entries[i * n + j].to_rational()).collect::<Option<_>>()?;
            let mut l = IBig::ONE;
            for r in &row {
                let g = gcd_ibig(l.clone(), r.denom().clone());
                l = &l * r.denom() / g;
            }
            rows.push(row.iter().map(|r| r.numer() * &(&l / r.denom())).collect());
        }
        Some(rows)
    }

    pub fn map(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, AlgebraError>) -> Result<RepMatrix, AlgebraError> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        Ok(RepMatrix { dim: self.dim, entries })
    }

    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<RepMatrix, AlgebraError> {
        self.map(|c| Ok(c.substitute(v, value)?))
    }

    pub fn evaluate(&self, bindings: &Bindings) -> Result<RepMatrix, AlgebraError> {
        self.map(|c| Ok(c.evaluate(bindings)?))
    }

    /// `c` with `self = c · other`.
    pub fn ratio_to(&self, other: &RepMatrix) -> Option<Scalar> {
        if self.dim != other.dim {
            return None;
        }
        let k = other.entries.iter().position(|e| !e.is_zero())?;
        let c = self.entries[k].checked_div(&other.entries[k]).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Entries as floating point numbers; fails on unbound variables.
    pub fn to_f64(&self) -> Result<DMatrix<f64>, AlgebraError> {
        let vals = self
            .entries
            .iter()
            .map(|e| e.to_f64().ok_or_else(|| AlgebraError::InvalidParameter(format!("unbound variable in entry {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DMatrix::from_row_slice(self.dim, self.dim, &vals))
    }

    /// Largest absolute entry, for numeric matrices.
    pub fn max_abs(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.to_f64().map(f64::abs)).try_fold(0.0f64, |m, v| Some(m.max(v?)))
    }
}

impl TryFrom<Vec<Vec<Scalar>>> for RepMatrix {
    type Error = AlgebraError;

    fn try_from(rows: Vec<Vec<Scalar>>) -> Result<RepMatrix, AlgebraError> {
        RepMatrix::from_rows(rows)
    }
}

impl From<RepMatrix> for Vec<Vec<Scalar>> {
    fn from(m: RepMatrix) -> Vec<Vec<Scalar>> {
        m.rows()
    }
}

impl fmt::Debug for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RepMatrix({})", self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn sign(p: usize) -> Scalar {
    if p % 2 == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// The braid-form R-matrix on `V ⊗ V`.
pub fn build_rhat(space: &SuperSpace, q: &Scalar) -> Result<RepMatrix, AlgebraError> {
    let d = space.dim();
    let lambda = q - &q.inv()?;
    let mut r = RepMatrix::zeros(d * d);
    for i in 1..=d {
        let pi = space.parity(i);
        for j in 1..=d {
            let pj = space.parity(j);
            let (a, b) = (i - 1, j - 1);
            if i == j {
                r.set(a * d + a, a * d + a, sign(pi) * q.pow(1 - 2 * pi as i32)?);
            } else {
                r.set(a * d + b, b * d + a, sign(pi * pj));
                if j > i {
                    r.set(a * d + b, a * d + b, lambda.clone());
                }
            }
        }
    }
    Ok(r)
}

/// The superpermutation `(-1)^{[1][2]} P` on `V ⊗ V`.
pub fn superpermutation(space: &SuperSpace) -> RepMatrix {
    let d = space.dim();
    let mut p = RepMatrix::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            p.set(i * d + j, j * d + i, sign(space.parity(i + 1) * space.parity(j + 1)));
        }
    }
    p
}

/// `R̂(x) = R̂ - x R̂⁻¹`.
pub fn rhat_x(space: &SuperSpace, q: &Scalar, x: &Scalar) -> Result<RepMatrix, AlgebraError> {
    let r = build_rhat(space, q)?;
    let lambda = q - &q.inv()?;
    let rinv = r.try_sub(&RepMatrix::scalar(r.dim(), &lambda))?;
    r.try_sub(&rinv.scale(x))
}

/// Places an operator on `len` consecutive factors starting at `first` (0-based)
/// inside `V^{⊗sites}`.
pub fn embed(op: &RepMatrix, d: usize, sites: usize, first: usize) -> Result<RepMatrix, AlgebraError> {
    let mut len = 0;
    let mut size = 1;
    while size < op.dim() {
        size *= d;
        len += 1;
    }
    if size != op.dim() || first + len > sites {
        return Err(AlgebraError::InvalidParameter("operator does not fit the chain".into()));
    }
    let left = RepMatrix::identity(d.pow(first as u32));
    let right = RepMatrix::identity(d.pow((sites - first - len) as u32));
    Ok(left.kron(op).kron(&right))
}

/// `Σ_b w_b X^{..b..}_{..b..}` over factor `factor`, returned tensored with the identity on that factor.
pub fn weighted_partial_trace(
    x: &RepMatrix,
    d: usize,
    sites: usize,
    factor: usize,
    weights: &[Scalar],
) -> Result<RepMatrix, AlgebraError> {
    if x.dim() != d.pow(sites as u32) || factor >= sites || weights.len() != d {
        return Err(AlgebraError::InvalidParameter("partial trace does not fit the chain".into()));
    }
    let stride = d.pow((sites - factor - 1) as u32);
    let digit = |idx: usize| (idx / stride) % d;
    let with = |idx: usize, v: usize| idx - digit(idx) * stride + v * stride;
    let n = x.dim();
    let mut out = RepMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if digit(i) != digit(j) {
                continue;
            }
            let mut s = Vec::new();
            for (b, w) in weights.iter().enumerate() {
                let e = x.get(with(i, b), with(j, b));
                if !e.is_zero() && !w.is_zero() {
                    s.push(e * w);
                }
            }
            out.set(i, j, s.into_iter().sum());
        }
    }
    Ok(out)
}

/// The quantum supertrace matrix `D` and the normalization `c` with `c Tr_2(D_2 R̂_{12}) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupertraceData {
    pub d: Vec<Scalar>,
    pub normalization: Scalar,
}

impl SupertraceData {
    /// Effective weights `c D`.
    pub fn weights(&self) -> Vec<Scalar> {
        self.d.iter().map(|v| v * &self.normalization).collect()
    }

    /// `c str D`.
    pub fn d0(&self) -> Scalar {
        self.weights().into_iter().sum()
    }
}

pub fn supertrace_data(space: &SuperSpace, q: &Scalar) -> Result<SupertraceData, AlgebraError> {
    let n = space.even() as i32;
    let mut d = Vec::with_capacity(space.dim());
    for i in 1..=space.dim() {
        let p = space.parity(i);
        let e = 2 * n + if p == 0 { 1 } else { -1 } * (2 * i as i32 - 2 * n - 1);
        d.push(sign(p) * q.pow(e)?);
    }
    let r = build_rhat(space, q)?;
    let t = weighted_partial_trace(&r, space.dim(), 2, 1, &d)?;
    let top = t.get(0, 0).clone();
    if top.is_zero() || t != RepMatrix::scalar(t.dim(), &top) {
        return Err(AlgebraError::Internal("partial trace of R̂ is not a multiple of the identity".into()));
    }
    Ok(SupertraceData { d, normalization: top.inv()? })
}

/// A constant solution `Y` of `R̂ Y_1 R̂ Y_1 = Y_1 R̂ Y_1 R̂` with the parameter `ξ` of
/// `K(x) = (Y - ξx)(Y - ξ/x)⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMatrix {
    y: RepMatrix,
    xi: Scalar,
}

impl BoundaryMatrix {
    pub fn new(space: &SuperSpace, q: &Scalar, y: RepMatrix, xi: Scalar) -> Result<BoundaryMatrix, AlgebraError> {
        let d = space.dim();
        if y.dim() != d {
            return Err(AlgebraError::RankMismatch(y.dim(), d));
        }
        let r = build_rhat(space, q)?;
        let y1 = y.kron(&RepMatrix::identity(d));
        let lhs = r.mul(&y1).mul(&r).mul(&y1);
        let rhs = y1.mul(&r).mul(&y1).mul(&r);
        if lhs != rhs {
            return Err(AlgebraError::InvalidParameter("Y does not solve the constant reflection equation".into()));
        }
        Ok(BoundaryMatrix { y, xi })
    }

    /// `diag(a, b)` on gl(2).
    pub fn diagonal(q: &Scalar, a: Scalar, b: Scalar, xi: Scalar) -> Result<BoundaryMatrix, AlgebraError> {
        BoundaryMatrix::new(&SuperSpace::gl(2)?, q, RepMatrix::diagonal(&[a, b]), xi)
    }

    /// `[[a, c], [0, b]]` on gl(2).
    pub fn upper(q: &Scalar, a: Scalar, b: Scalar, c: Scalar, xi: Scalar) -> Result<BoundaryMatrix, AlgebraError> {
        let y = RepMatrix::from_rows(vec![vec![a, c], vec![Scalar::zero(), b]])?;
        BoundaryMatrix::new(&SuperSpace::gl(2)?, q, y, xi)
    }

    pub fn y(&self) -> &RepMatrix {
        &self.y
    }

    pub fn xi(&self) -> &Scalar {
        &self.xi
    }

    /// `K(x) = (Y - ξx)(Y - ξ/x)⁻¹`.
    pub fn k(&self, x: &Scalar) -> Result<RepMatrix, AlgebraError> {
        let d = self.y.dim();
        let a = self.y.try_sub(&RepMatrix::scalar(d, &(&self.xi * x)))?;
        let b = self.y.try_sub(&RepMatrix::scalar(d, &(&self.xi * &x.inv()?)))?;
        a.try_mul(&b.inverse()?)
    }
}

/// The representation `ρ_R` on a chain of `sites` factors, realizing the Markov
/// traces by weighted partial supertraces.
#[derive(Clone, Debug)]
pub struct MatrixChain {
    space: SuperSpace,
    q: Scalar,
    sites: usize,
    rhat: RepMatrix,
    data: SupertraceData,
    boundary: Option<BoundaryMatrix>,
}

impl MatrixChain {
    pub fn new(space: SuperSpace, q: Scalar, sites: usize, boundary: Option<BoundaryMatrix>) -> Result<MatrixChain, AlgebraError> {
        if sites == 0 || sites > 7 || space.dim().pow(sites as u32) > 256 {
            return Err(AlgebraError::InvalidParameter(format!("{sites} sites of {space} exceed the size cap")));
        }
        if let Some(b) = &boundary {
            if b.y.dim() != space.dim() {
                return Err(AlgebraError::RankMismatch(b.y.dim(), space.dim()));
            }
        }
        let rhat = build_rhat(&space, &q)?;
        let data = supertrace_data(&space, &q)?;
        Ok(MatrixChain { space, q, sites, rhat, data, boundary })
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn supertrace(&self) -> &SupertraceData {
        &self.data
    }

    pub fn boundary_matrix(&self) -> Option<&BoundaryMatrix> {
        self.boundary.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.space.dim().pow(self.sites as u32)
    }

    pub fn rhat(&self) -> &RepMatrix {
        &self.rhat
    }

    pub fn local(&self, op: &RepMatrix, first: usize) -> Result<RepMatrix, AlgebraError> {
        embed(op, self.space.dim(), self.sites, first)
    }

    /// `ρ(y_1^e)`.
    fn y1_power(&self, e: i32) -> Result<RepMatrix, AlgebraError> {
        let b = self
            .boundary
            .as_ref()
            .ok_or_else(|| AlgebraError::InvalidParameter("affine elements need a boundary matrix".into()))?;
        let base = if e >= 0 { b.y.clone() } else { b.y.inverse()? };
        let mut out = RepMatrix::identity(base.dim());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        self.local(&out, 0)
    }

    /// `D⁽ᵏ⁾ = c str(D Y^k)`.
    pub fn trace_constant(&self, k: i32) -> Result<Scalar, AlgebraError> {
        if self.boundary.is_none() {
            return Ok(self.data.d0());
        }
        let b = self.boundary.as_ref().expect("checked");
        let base = if k >= 0 { b.y.clone() } else { b.y.inverse()? };
        let mut p = RepMatrix::identity(base.dim());
        for _ in 0..k.unsigned_abs() {
            p = p.mul(&base);
        }
        Ok(self.data.weights().iter().enumerate().map(|(i, w)| w * p.get(i, i)).sum())
    }

    fn specialize(&self, c: &Scalar, window: i32) -> Result<Scalar, AlgebraError> {
        let mut out = c.clone();
        for k in -window..=window {
            if let Some(v) = Var::trace_constant(k) {
                if out.depends_on(v) {
                    out = out.substitute(v, &self.trace_constant(k)?)?;
                }
            }
        }
        Ok(out)
    }

    fn perm_image(&self, w: &Perm, cache: &mut FxHashMap<Perm, RepMatrix>) -> Result<RepMatrix, AlgebraError> {
        if let Some(m) = cache.get(w) {
            return Ok(m.clone());
        }
        let mut out = RepMatrix::identity(self.dim());
        for i in w.reduced_word() {
            out = out.mul(&ChainAlgebra::sigma(self, i)?);
        }
        cache.insert(*w, out.clone());
        Ok(out)
    }

    fn check_q(&self, q: &Scalar) -> Result<(), AlgebraError> {
        if q != &self.q {
            return Err(AlgebraError::InvalidParameter(format!("q = {q} does not match the representation's q = {}", self.q)));
        }
        Ok(())
    }

    /// `ρ` on the finite Hecke algebra; symbolic `D⁽⁰⁾` in coefficients is specialized.
    pub fn rho_hecke(&self, hecke: &HeckeAlgebra, e: &HeckeElement) -> Result<RepMatrix, AlgebraError> {
        self.check_q(hecke.q())?;
        if e.rank() > self.sites {
            return Err(AlgebraError::RankMismatch(e.rank(), self.sites));
        }
        let mut cache = FxHashMap::default();
        let mut out = RepMatrix::zeros(self.dim());
        for (w, c) in e.terms() {
            out = out.try_add(&self.perm_image(w, &mut cache)?.scale(&self.specialize(c, 0)?))?;
        }
        Ok(out)
    }

    /// `ρ` on the affine Hecke algebra with `y_1 ↦ Y`; symbolic trace constants are specialized
    /// to `c str(D Y^k)`.
    pub fn rho_affine(&self, affine: &AffineAlgebra, e: &AffineElement) -> Result<RepMatrix, AlgebraError> {
        self.check_q(affine.q())?;
        if e.rank() > self.sites {
            return Err(AlgebraError::RankMismatch(e.rank(), self.sites));
        }
        let window = affine.constants().window();
        let mut perms = FxHashMap::default();
        let mut ys: FxHashMap<(usize, i32), RepMatrix> = FxHashMap::default();
        let mut out = RepMatrix::zeros(self.dim());
        for (key, c) in e.terms() {
            let mut img = RepMatrix::identity(self.dim());
            for k in 1..=e.rank() {
                let a = key.exponent(k);
                if a == 0 {
                    continue;
                }
                if !ys.contains_key(&(k, a)) {
                    let unit = if a > 0 { 1 } else { -1 };
                    let mut y = self.y1_power(unit)?;
                    for i in 1..k {
                        let s = if a > 0 { ChainAlgebra::sigma(self, i)? } else { self.sigma_inverse(i)? };
                        y = s.mul(&y).mul(&s);
                    }
                    let mut p = RepMatrix::identity(self.dim());
                    for _ in 0..a.unsigned_abs() {
                        p = p.mul(&y);
                    }
                    ys.insert((k, a), p);
                }
                img = img.mul(&ys[&(k, a)]);
            }
            img = img.mul(&self.perm_image(&key.perm(), &mut perms)?);
            out = out.try_add(&img.scale(&self.specialize(c, window)?))?;
        }
        Ok(out)
    }

    fn sigma_inverse(&self, i: usize) -> Result<RepMatrix, AlgebraError> {
        let lambda = &self.q - &self.q.inv()?;
        ChainAlgebra::sigma(self, i)?.try_sub(&RepMatrix::scalar(self.dim(), &lambda))
    }

    /// `str_a(D_a 𝒦_a(x))` with `a` the last factor and
    /// `𝒦_a(x) = R̂⁻¹_{Na}(ξ_N/x) ⋯ R̂⁻¹_{12}(ξ_1/x) K_1(x) R̂_{12}(ξ_1 x) ⋯ R̂_{Na}(ξ_N x)`.
    pub fn sklyanin_transfer(&self, x: &Scalar, inhomogeneities: &[Scalar]) -> Result<RepMatrix, AlgebraError> {
        let n = self.sites - 1;
        let d = self.space.dim();
        let mut k = match &self.boundary {
            Some(b) => self.local(&b.k(x)?, 0)?,
            None => RepMatrix::identity(self.dim()),
        };
        let xinv = x.inv()?;
        for i in 1..=n {
            let xi = inhomogeneities.get(i - 1).cloned().unwrap_or_else(Scalar::one);
            let right = rhat_x(&self.space, &self.q, &(&xi * x))?;
            let left = rhat_x(&self.space, &self.q, &(&xi * &xinv))?.inverse()?;
            k = self.local(&left, i - 1)?.mul(&k).mul(&self.local(&right, i - 1)?);
        }
        weighted_partial_trace(&k, d, self.sites, self.sites - 1, &self.data.d)
    }

    /// `(P, R)` with `Y² = PY + R` for the boundary matrix.
    pub fn quadratic_relation(&self) -> Option<(Scalar, Scalar)> {
        let y = &self.boundary.as_ref()?.y;
        let d = y.dim();
        let sq = y.mul(y);
        let off = (0..d * d).map(|k| (k / d, k % d)).find(|&(i, j)| i != j && !y.get(i, j).is_zero());
        let p = match off {
            Some((i, j)) => sq.get(i, j).checked_div(y.get(i, j)).ok()?,
            None => {
                let a = y.get(0, 0);
                let b = (1..d).map(|i| y.get(i, i)).find(|v| *v != a).unwrap_or(a);
                a + b
            }
        };
        let rest = sq.try_sub(&y.scale(&p)).ok()?;
        let r = rest.get(0, 0).clone();
        (rest == RepMatrix::scalar(d, &r)).then_some((p, r))
    }

    /// The quotient `Ĥ_rank` whose quadratic relation and trace constants are those of the
    /// boundary matrix.
    pub fn affine_quotient(&self, rank: usize) -> Result<AffineAlgebra, AlgebraError> {
        let (_, r) = self
            .quadratic_relation()
            .ok_or_else(|| AlgebraError::InvalidParameter("boundary matrix has no quadratic relation".into()))?;
        let hecke = HeckeAlgebra::new(rank, self.q.clone())?.with_d0(self.data.d0())?;
        AffineAlgebra::with_quadratic(hecke, self.trace_constant(1)?, &self.q * &r)
    }

    /// `ρ(τ_N(x))` for the algebraic transfer element `Tr_{D(N+1)}(e⁺_N(x)⋯y_1(x)⋯e⁺_N(x))`, computed
    /// in the quotient affine algebra and then represented.
    pub fn algebraic_transfer(&self, x: &Scalar) -> Result<RepMatrix, AlgebraError> {
        let b = self
            .boundary
            .as_ref()
            .ok_or_else(|| AlgebraError::InvalidParameter("the algebraic transfer needs a boundary matrix".into()))?;
        let n = self.sites - 1;
        let aff = self.affine_quotient(self.sites)?;
        let chain = AffineChain::new(aff.clone(), BoundaryMode::QuadraticBlob { xi: b.xi.clone() });
        let tau = ChainAlgebra::trace(&chain, n, &chain.normalized_monodromy(self.sites, x)?)?;
        self.rho_affine(&aff, &tau)
    }

    /// `c·str_a(D_a 𝒦_a(x))` divided by `f(x)^N`, which should equal [`MatrixChain::algebraic_transfer`].
    pub fn normalized_sklyanin_transfer(&self, x: &Scalar, inhomogeneities: &[Scalar]) -> Result<RepMatrix, AlgebraError> {
        let f = sklyanin_site_factor(&self.q, x)?.pow(self.sites as i32 - 1)?;
        Ok(self.sklyanin_transfer(x, inhomogeneities)?.scale(&(&self.data.normalization * &f.inv()?)))
    }

    /// `ρ(ℋ_n^{free}) = Σ_{m<n} R̂_{m,m+1}` on all sites.
    pub fn free_hamiltonian(&self) -> Result<RepMatrix, AlgebraError> {
        let mut h = RepMatrix::zeros(self.dim());
        for m in 1..self.sites {
            h = h.try_add(&ChainAlgebra::sigma(self, m)?)?;
        }
        Ok(h)
    }
}

impl ChainAlgebra for MatrixChain {
    type Elem = RepMatrix;

    fn strands(&self) -> usize {
        self.sites
    }
    fn q(&self) -> Scalar {
        self.q.clone()
    }
    fn d0(&self) -> Scalar {
        self.data.d0()
    }
    fn scalar(&self, c: Scalar) -> RepMatrix {
        RepMatrix::scalar(self.dim(), &c)
    }
    fn sigma(&self, i: usize) -> Result<RepMatrix, AlgebraError> {
        if i == 0 || i >= self.sites {
            return Err(AlgebraError::OutOfRange { index: i, rank: self.sites });
        }
        self.local(&self.rhat, i - 1)
    }
    fn add(&self, a: &RepMatrix, b: &RepMatrix) -> RepMatrix {
        a.try_add(b).expect("dimension mismatch")
    }
    fn scale(&self, a: &RepMatrix, c: &Scalar) -> RepMatrix {
        a.scale(c)
    }
    fn mul(&self, a: &RepMatrix, b: &RepMatrix) -> Result<RepMatrix, AlgebraError> {
        a.try_mul(b)
    }
    fn trace(&self, n: usize, e: &RepMatrix) -> Result<RepMatrix, AlgebraError> {
        weighted_partial_trace(e, self.space.dim(), self.sites, n, &self.data.weights())
    }
    fn boundary(&self, x: &Scalar) -> Result<RepMatrix, AlgebraError> {
        match &self.boundary {
            Some(b) => self.local(&b.k(x)?, 0),
            None => Ok(RepMatrix::identity(self.dim())),
        }
    }
    fn is_zero(&self, e: &RepMatrix) -> bool {
        e.is_zero()
    }
    fn ratio(&self, a: &RepMatrix, b: &RepMatrix) -> Option<Scalar> {
        a.ratio_to(b)
    }
}

/// `f(x) = x(q - x/q)/(qx - q⁻¹)`, the per-site ratio of `R̂⁻¹(1/x)R̂(x)` to `e⁺(x)²`.
pub fn sklyanin_site_factor(q: &Scalar, x: &Scalar) -> Result<Scalar, AlgebraError> {
    let qi = q.inv()?;
    Ok((x * &(q - &(x * &qi))).checked_div(&(&(q * x) - &qi))?)
}

/// An eigenvalue `a + b√r`, exact when it was certified against the characteristic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
    pub exact: Option<QuadraticSurd>,
}

/// `a + b√r` with rational `a`, `b`, `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticSurd {
    pub a: Scalar,
    pub b: Scalar,
    pub r: Scalar,
}

impl QuadraticSurd {
    pub fn rational(a: Scalar) -> QuadraticSurd {
        QuadraticSurd { a, b: Scalar::zero(), r: Scalar::zero() }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |s: &Scalar| s.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * f(&self.r).sqrt()
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.r);
        let head = if self.a.is_zero() { String::new() } else { format!("{} ", self.a) };
        if self.b.is_one() {
            write!(f, "{head}+ {root}")
        } else if (-&self.b).is_one() {
            write!(f, "{head}- {root}")
        } else {
            write!(f, "{head}+ ({})*{root}", self.b)
        }
    }
}

/// Characteristic polynomial `det(t - A)` by the Faddeev-LeVerrier recursion; coefficients
/// in increasing degree.
pub fn characteristic_polynomial(a: &RepMatrix) -> Result<Vec<Scalar>, AlgebraError> {
    let n = a.dim();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = RepMatrix::zeros(n);
    for k in 1..=n {
        m = a.mul(&m).try_add(&RepMatrix::scalar(n, &coeffs[n + 1 - k]))?;
        let t = a.mul(&m).trace();
        coeffs[n - k] = -(t * Scalar::ratio(1, k as i64));
    }
    Ok(coeffs)
}


/// Divides by the monic `t² + s1 t + s0` (or `t + s0` when `s1` is `None`) if the remainder vanishes.
fn poly_div(p: &[Scalar], s1: Option<&Scalar>, s0: &Scalar) -> Option<Vec<Scalar>> {
    let deg = if s1.is_some() { 2 } else { 1 };
    if p.len() <= deg {
        return None;
    }
    let mut rem = p.to_vec();
    let mut quot = vec![Scalar::zero(); p.len() - deg];
    for i in (0..quot.len()).rev() {
        let c = rem[i + deg].clone();
        quot[i] = c.clone();
        rem[i + deg] = Scalar::zero();
        if let Some(s1) = s1 {
            rem[i + 1] -= &(&c * s1);
        }
        rem[i] -= &(&c * s0);
    }
    rem.iter().all(Scalar::is_zero).then_some(quot)
}

/// Continued-fraction approximation within `tol`, denominators capped at `10⁶`.
/// Continued-fraction convergents of `v` within `tol`, closest first.
fn convergents(v: f64, tol: f64) -> Vec<Scalar> {
    let mut out: Vec<(f64, Scalar)> = Vec::new();
    if !v.is_finite() {
        return Vec::new();
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut x = v;
    for _ in 0..40 {
        let a = x.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let next = a.checked_mul(h1).and_then(|h| h.checked_add(h0)).zip(a.checked_mul(k1).and_then(|k| k.checked_add(k0)));
        let Some((h2, k2)) = next.filter(|&(_, k)| k <= 1_000_000) else { break };
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let err = (h1 as f64 / k1 as f64 - v).abs();
        if err <= tol {
            out.push((err, Scalar::ratio(h1, k1)));
        }
        let frac = x - a as f64;
        if frac == 0.0 {
            break;
        }
        x = 1.0 / frac;
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.into_iter().map(|(_, r)| r).collect()
}

const RESIDUAL_GATE: f64 = 1e-9;
const CLUSTER: f64 = 1e-5;

fn tolerance(v: f64) -> f64 {
    CLUSTER * v.abs().max(1.0)
}

fn gcd_ibig(mut a: IBig, mut b: IBig) -> IBig {
    while b != IBig::ZERO {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Fraction-free elimination; every division is exact.
fn integer_rank(mut a: Vec<Vec<IBig>>) -> usize {
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = IBig::ONE;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..n).find(|&r| a[r][col] != IBig::ZERO) else { continue };
        a.swap(pivot, rank);
        let (top, rest) = a.split_at_mut(rank + 1);
        let head = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                row[j] = (&row[j] * &head[col] - &lead * &head[j]) / &prev;
            }
            row[col] = IBig::ZERO;
        }
        prev = head[col].clone();
        rank += 1;
    }
    rank
}

/// Exact multiplicity checks: division of the characteristic polynomial for small
/// matrices, nullities of `A - r` and `A² - sA + p` above [`CHARPOLY_LIMIT`].
enum Certifier<'a> {
    Charpoly(Vec<Scalar>),
    Nullity(&'a RepMatrix, Option<RepMatrix>),
}

const SCHUR_ITERATIONS: usize = 10_000;

/// Largest dimension for which the characteristic polynomial is expanded.
pub const CHARPOLY_LIMIT: usize = 16;

impl Certifier<'_> {
    fn linear(&mut self, r: &Scalar) -> usize {
        match self {
            Certifier::Charpoly(p) => {
                let mut k = 0;
                while let Some(quot) = poly_div(p, None, &-r) {
                    *p = quot;
                    k += 1;
                }
                k
            }
            Certifier::Nullity(a, _) => {
                let shifted = a.try_sub(&RepMatrix::scalar(a.dim(), r)).expect("same dimension");
                a.dim() - shifted.rank()
            }
        }
    }

    /// Multiplicity of each root of `t² - st + p`.
    fn quadratic(&mut self, s: &Scalar, p: &Scalar) -> usize {
        match self {
            Certifier::Charpoly(poly) => {
                let mut k = 0;
                while let Some(quot) = poly_div(poly, Some(&-s), p) {
                    *poly = quot;
                    k += 1;
                }
                k
            }
            Certifier::Nullity(a, square) => {
                let n = a.dim();
                let m = square.get_or_insert_with(|| a.mul(a)).try_sub(&a.scale(s)).and_then(|m| m.try_add(&RepMatrix::scalar(n, p))).expect("same dimension");
                (n - m.rank()) / 2
            }
        }
    }
}

/// Eigenvalues with multiplicities for a numeric matrix. Roots that are rational or
/// real quadratic surds are certified exactly; the rest come from the floating
/// eigensolver and must pass a residual gate.
///
/// The matrix is first split into the diagonal blocks given by the connected
/// components of its sparsity pattern.
pub fn spectrum(mat: &RepMatrix) -> Result<Vec<Eigenvalue>, AlgebraError> {
    let blocks = sparsity_blocks(mat);
    if blocks.len() == 1 {
        return block_spectrum(mat);
    }
    let mut out: Vec<Eigenvalue> = Vec::new();
    for idx in blocks {
        let sub = RepMatrix {
            dim: idx.len(),
            entries: idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).map(|(i, j)| mat.get(i, j).clone()).collect(),
        };
        for e in block_spectrum(&sub)? {
            let same = |o: &&mut Eigenvalue| match (&o.exact, &e.exact) {
                (Some(a), Some(b)) => a == b,
                (None, None) => (o.value - e.value).abs() <= tolerance(e.value),
                _ => false,
            };
            match out.iter_mut().find(same) {
                Some(o) => o.multiplicity += e.multiplicity,
                None => out.push(e),
            }
        }
    }
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(out)
}

/// Index sets of the connected components of `i ~ j` when `a_ij ≠ 0` or `a_ji ≠ 0`.
fn sparsity_blocks(mat: &RepMatrix) -> Vec<Vec<usize>> {
    let n = mat.dim();
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if label[start].is_some() {
            continue;
        }
        let id = blocks.len();
        let mut members = vec![start];
        label[start] = Some(id);
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if label[j].is_none() && (!mat.get(i, j).is_zero() || !mat.get(j, i).is_zero()) {
                    label[j] = Some(id);
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        blocks.push(members);
    }
    blocks
}

fn block_spectrum(mat: &RepMatrix) -> Result<Vec<Eigenvalue>, AlgebraError> {
    let numeric = mat.to_f64()?;
    let mut cert = if mat.dim() <= CHARPOLY_LIMIT {
        Certifier::Charpoly(characteristic_polynomial(mat)?)
    } else {
        Certifier::Nullity(mat, None)
    };
    let mut roots: Vec<f64> = Vec::with_capacity(mat.dim());
    let symmetric = numeric == numeric.transpose();
    let snap = |v: f64| if symmetric { RESIDUAL_GATE * v.abs().max(1.0) } else { tolerance(v) };
    if symmetric {
        roots.extend(numeric.clone().symmetric_eigenvalues().iter());
    } else {
        let schur = Schur::try_new(numeric.clone(), f64::EPSILON, SCHUR_ITERATIONS)
            .ok_or_else(|| AlgebraError::Internal("Schur decomposition did not converge".into()))?;
        for ev in schur.complex_eigenvalues().iter() {
            if ev.im.abs() > tolerance(ev.re) {
                return Err(AlgebraError::Internal(format!("complex eigenvalue {ev}")));
            }
            roots.push(ev.re);
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<Eigenvalue> = Vec::new();
    let covered = |out: &[Eigenvalue], v: f64| out.iter().any(|e| (e.value - v).abs() <= tolerance(v));

    let mut leftovers = Vec::new();
    for &v in &roots {
        if covered(&out, v) {
            continue;
        }
        let found = convergents(v, snap(v)).into_iter().find_map(|r| {
            let k = cert.linear(&r);
            (k > 0).then_some((r, k))
        });
        match found {
            Some((r, k)) => {
                out.push(Eigenvalue { value: r.to_f64().unwrap_or(v), multiplicity: k, exact: Some(QuadraticSurd::rational(r)) })
            }
            None => leftovers.push(v),
        }
    }

    for i in 0..leftovers.len() {
        for j in i + 1..leftovers.len() {
            let (u, v) = (leftovers[i], leftovers[j]);
            if covered(&out, u) || covered(&out, v) || (u - v).abs() <= tolerance(u) {
                continue;
            }
            let sums = convergents(u + v, snap(u + v));
            let products = convergents(u * v, snap(u * v));
            let found = sums.iter().flat_map(|s| products.iter().map(move |p| (s, p))).find_map(|(s, p)| {
                let k = cert.quadratic(s, p);
                (k > 0).then(|| (s.clone(), p.clone(), k))
            });
            let Some((s, p, multiplicity)) = found else { continue };
            let a = &s * &Scalar::ratio(1, 2);
            let disc = &(&s * &s) * &Scalar::ratio(1, 4) - &p;
            for b in [Scalar::from_int(-1), Scalar::one()] {
                let surd = QuadraticSurd { a: a.clone(), b, r: disc.clone() };
                out.push(Eigenvalue { value: surd.to_f64(), multiplicity, exact: Some(surd) });
            }
        }
    }

    let scale = numeric.abs().max().max(1.0);
    let n = mat.dim();
    let mut floats: Vec<Eigenvalue> = Vec::new();
    for &v in &leftovers {
        if covered(&out, v) {
            continue;
        }
        if let Some(e) = floats.iter_mut().find(|e| (e.value - v).abs() <= tolerance(v)) {
            e.multiplicity += 1;
            continue;
        }
        let shifted = &numeric - DMatrix::<f64>::identity(n, n) * v;
        let smallest = shifted.singular_values().min();
        if smallest > RESIDUAL_GATE * scale * n as f64 {
            return Err(AlgebraError::Internal(format!("eigenvalue {v} failed the residual gate ({smallest:e})")));
        }
        floats.push(Eigenvalue { value: v, multiplicity: 1, exact: None });
    }
    out.extend(floats);
    let total: usize = out.iter().map(|e| e.multiplicity).sum();
    if total != n {
        return Err(AlgebraError::Internal(format!("recovered {total} of {n} eigenvalues")));
    }
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(out)
}
