//! A common interface over the algebras that carry Markov traces and boundary
//! solutions, so fused operators can be assembled once for all of them.

use std::fmt;

use hechain_scalar::Scalar;

use crate::affine::{AffineAlgebra, AffineElement, BoundaryMode};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::AlgebraError;

pub trait ChainAlgebra {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// Number of strands available for generators.
    fn strands(&self) -> usize;
    fn q(&self) -> Scalar;
    /// `D⁽⁰⁾ = Tr(1)`.
    fn d0(&self) -> Scalar;
    fn scalar(&self, c: Scalar) -> Self::Elem;
    fn sigma(&self, i: usize) -> Result<Self::Elem, AlgebraError>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError>;
    /// `Tr_{D(n+1)}`.
    fn trace(&self, n: usize, e: &Self::Elem) -> Result<Self::Elem, AlgebraError>;
    /// The boundary solution `y_1(x)`.
    fn boundary(&self, x: &Scalar) -> Result<Self::Elem, AlgebraError>;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    /// `c` with `a = c b`, if it exists.
    fn ratio(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Scalar>;

    fn lambda(&self) -> Scalar {
        let q = self.q();
        &q - &q.inv().expect("q is nonzero")
    }

    fn b(&self) -> Result<Scalar, AlgebraError> {
        Ok((Scalar::one() - &(self.lambda() * self.d0())).inv()?)
    }

    fn one(&self) -> Self::Elem {
        self.scalar(Scalar::one())
    }

    fn zero(&self) -> Self::Elem {
        self.scalar(Scalar::zero())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &Scalar::from_int(-1)))
    }

    fn product(&self, factors: &[Self::Elem]) -> Result<Self::Elem, AlgebraError> {
        let mut it = factors.iter();
        let Some(first) = it.next() else { return Ok(self.one()) };
        it.try_fold(first.clone(), |acc, f| self.mul(&acc, f))
    }

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        Ok(self.sub(&self.mul(a, b)?, &self.mul(b, a)?))
    }

    /// `σ_i(x) = σ_i - x σ_i^{-1}`.
    fn sigma_x(&self, i: usize, x: &Scalar) -> Result<Self::Elem, AlgebraError> {
        let s = self.sigma(i)?;
        Ok(self.add(&self.scale(&s, &(Scalar::one() - x)), &self.scalar(&self.lambda() * x)))
    }

    /// `e⁺_i(x) = σ_i(x) / (q - q⁻¹x)`.
    fn e_plus(&self, i: usize, x: &Scalar) -> Result<Self::Elem, AlgebraError> {
        let q = self.q();
        let den = &q - &(&q.inv()? * x);
        Ok(self.scale(&self.sigma_x(i, x)?, &den.inv()?))
    }

    /// `A⁺_{m→m+k-1}` built by `A_{j+1} = A_j e⁺_{m+j-1}(q^{-2j}) A_j`.
    fn symmetrizer(&self, m: usize, k: usize) -> Result<Self::Elem, AlgebraError> {
        let q = self.q();
        let mut a = self.one();
        for j in 1..k {
            let e = self.e_plus(m + j - 1, &q.pow(-2 * j as i32)?)?;
            a = self.product(&[a.clone(), e, a])?;
        }
        Ok(a)
    }

    /// `y_n(x) = σ_{n-1}(x) ⋯ σ_1(x) y_1(x) σ_1(x) ⋯ σ_{n-1}(x)`.
    fn monodromy(&self, n: usize, x: &Scalar) -> Result<Self::Elem, AlgebraError> {
        let mut y = self.boundary(x)?;
        for i in 1..n {
            let s = self.sigma_x(i, x)?;
            y = self.product(&[s.clone(), y, s])?;
        }
        Ok(y)
    }

    /// `e⁺_{n-1}(x) ⋯ e⁺_1(x) y_1(x) e⁺_1(x) ⋯ e⁺_{n-1}(x)`.
    fn normalized_monodromy(&self, n: usize, x: &Scalar) -> Result<Self::Elem, AlgebraError> {
        let mut y = self.boundary(x)?;
        for i in 1..n {
            let e = self.e_plus(i, x)?;
            y = self.product(&[e.clone(), y, e])?;
        }
        Ok(y)
    }

    /// `Tr_{D(1)} ∘ ⋯ ∘ Tr_{D(k)}`, tracing the highest strand first.
    fn iterated_trace(&self, k: usize, e: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        let mut cur = e.clone();
        for n in (0..k).rev() {
            cur = self.trace(n, &cur)?;
        }
        Ok(cur)
    }
}

impl<A: ChainAlgebra + ?Sized> ChainAlgebra for &A {
    type Elem = A::Elem;

    fn strands(&self) -> usize {
        (**self).strands()
    }
    fn q(&self) -> Scalar {
        (**self).q()
    }
    fn d0(&self) -> Scalar {
        (**self).d0()
    }
    fn scalar(&self, c: Scalar) -> Self::Elem {
        (**self).scalar(c)
    }
    fn sigma(&self, i: usize) -> Result<Self::Elem, AlgebraError> {
        (**self).sigma(i)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).add(a, b)
    }
    fn scale(&self, a: &Self::Elem, c: &Scalar) -> Self::Elem {
        (**self).scale(a, c)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        (**self).mul(a, b)
    }
    fn trace(&self, n: usize, e: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        (**self).trace(n, e)
    }
    fn boundary(&self, x: &Scalar) -> Result<Self::Elem, AlgebraError> {
        (**self).boundary(x)
    }
    fn is_zero(&self, e: &Self::Elem) -> bool {
        (**self).is_zero(e)
    }
    fn ratio(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Scalar> {
        (**self).ratio(a, b)
    }
}

/// The auxiliary strands of an open chain with `sites` quantum sites: strand `i`
/// of the view is strand `sites + i` of the underlying algebra, and the boundary
/// of the view is the monodromy `y_{sites+1}(x)`, built from `σ_i(x)` or, for a
/// normalized chain, from `e⁺_i(x)`.
#[derive(Clone, Debug)]
pub struct Chain<A> {
    inner: A,
    sites: usize,
    normalized: bool,
}

impl<A: ChainAlgebra> Chain<A> {
    pub fn new(inner: A, sites: usize) -> Result<Chain<A>, AlgebraError> {
        if sites >= inner.strands() {
            return Err(AlgebraError::OutOfRange { index: sites + 1, rank: inner.strands() });
        }
        Ok(Chain { inner, sites, normalized: false })
    }

    pub fn normalized(inner: A, sites: usize) -> Result<Chain<A>, AlgebraError> {
        Ok(Chain { normalized: true, ..Chain::new(inner, sites)? })
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }

    pub fn sites(&self) -> usize {
        self.sites
    }
}

impl<A: ChainAlgebra> ChainAlgebra for Chain<A> {
    type Elem = A::Elem;

    fn strands(&self) -> usize {
        self.inner.strands() - self.sites
    }
    fn q(&self) -> Scalar {
        self.inner.q()
    }
    fn d0(&self) -> Scalar {
        self.inner.d0()
    }
    fn scalar(&self, c: Scalar) -> Self::Elem {
        self.inner.scalar(c)
    }
    fn sigma(&self, i: usize) -> Result<Self::Elem, AlgebraError> {
        self.inner.sigma(self.sites + i)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.add(a, b)
    }
    fn scale(&self, a: &Self::Elem, c: &Scalar) -> Self::Elem {
        self.inner.scale(a, c)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        self.inner.mul(a, b)
    }
    fn trace(&self, n: usize, e: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        self.inner.trace(self.sites + n, e)
    }
    fn boundary(&self, x: &Scalar) -> Result<Self::Elem, AlgebraError> {
        if self.normalized {
            self.inner.normalized_monodromy(self.sites + 1, x)
        } else {
            self.inner.monodromy(self.sites + 1, x)
        }
    }
    fn is_zero(&self, e: &Self::Elem) -> bool {
        self.inner.is_zero(e)
    }
    fn ratio(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Scalar> {
        self.inner.ratio(a, b)
    }
}

fn check_sigma(i: usize, rank: usize) -> Result<(), AlgebraError> {
    if i == 0 || i >= rank {
        return Err(AlgebraError::OutOfRange { index: i, rank });
    }
    Ok(())
}

/// The finite Hecke algebra with the free boundary `y_1(x) = 1`.
impl ChainAlgebra for HeckeAlgebra {
    type Elem = HeckeElement;

    fn strands(&self) -> usize {
        self.rank()
    }
    fn q(&self) -> Scalar {
        HeckeAlgebra::q(self).clone()
    }
    fn d0(&self) -> Scalar {
        HeckeAlgebra::d0(self).clone()
    }
    fn scalar(&self, c: Scalar) -> HeckeElement {
        HeckeAlgebra::scalar(self, c)
    }
    fn sigma(&self, i: usize) -> Result<HeckeElement, AlgebraError> {
        check_sigma(i, self.rank())?;
        Ok(HeckeAlgebra::sigma(self, i))
    }
    fn add(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        a + b
    }
    fn scale(&self, a: &HeckeElement, c: &Scalar) -> HeckeElement {
        a.scale(c)
    }
    fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement, AlgebraError> {
        self.try_mul(a, b)
    }
    fn trace(&self, n: usize, e: &HeckeElement) -> Result<HeckeElement, AlgebraError> {
        self.markov_trace(n, e)
    }
    fn boundary(&self, _x: &Scalar) -> Result<HeckeElement, AlgebraError> {
        Ok(HeckeAlgebra::one(self))
    }
    fn is_zero(&self, e: &HeckeElement) -> bool {
        e.is_zero()
    }
    fn ratio(&self, a: &HeckeElement, b: &HeckeElement) -> Option<Scalar> {
        a.ratio_to(b)
    }
}

/// An affine Hecke algebra together with a choice of boundary solution.
#[derive(Clone, Debug)]
pub struct AffineChain {
    pub algebra: AffineAlgebra,
    pub mode: BoundaryMode,
}

impl AffineChain {
    pub fn new(algebra: AffineAlgebra, mode: BoundaryMode) -> AffineChain {
        AffineChain { algebra, mode }
    }
}

impl ChainAlgebra for AffineChain {
    type Elem = AffineElement;

    fn strands(&self) -> usize {
        self.algebra.rank()
    }
    fn q(&self) -> Scalar {
        self.algebra.q().clone()
    }
    fn d0(&self) -> Scalar {
        self.algebra.d0().clone()
    }
    fn scalar(&self, c: Scalar) -> AffineElement {
        self.algebra.scalar(c)
    }
    fn sigma(&self, i: usize) -> Result<AffineElement, AlgebraError> {
        check_sigma(i, self.algebra.rank())?;
        Ok(self.algebra.sigma(i))
    }
    fn add(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        a + b
    }
    fn scale(&self, a: &AffineElement, c: &Scalar) -> AffineElement {
        a.scale(c)
    }
    fn mul(&self, a: &AffineElement, b: &AffineElement) -> Result<AffineElement, AlgebraError> {
        self.algebra.try_mul(a, b)
    }
    fn trace(&self, n: usize, e: &AffineElement) -> Result<AffineElement, AlgebraError> {
        self.algebra.markov_trace(n, e)
    }
    fn boundary(&self, x: &Scalar) -> Result<AffineElement, AlgebraError> {
        self.algebra.boundary_solution(&self.mode, x)
    }
    fn is_zero(&self, e: &AffineElement) -> bool {
        e.is_zero()
    }
    fn ratio(&self, a: &AffineElement, b: &AffineElement) -> Option<Scalar> {
        a.ratio_to(b)
    }
}
