//! Fusion of boundary solutions and baxterized elements, and the higher
//! transfer-matrix elements `τ⁽ᵏ⁾(x)`.

use hechain_scalar::Scalar;

use crate::chain::ChainAlgebra;
use crate::AlgebraError;

fn q_pow<A: ChainAlgebra>(alg: &A, e: i32) -> Result<Scalar, AlgebraError> {
    Ok(alg.q().pow(e)?)
}

fn x_sq_q<A: ChainAlgebra>(alg: &A, x: &Scalar, e: i32) -> Result<Scalar, AlgebraError> {
    Ok(&(x * x) * &q_pow(alg, e)?)
}

/// Factors of `y_{1→k}(x)` from left to right.
pub fn ladder_factors<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<Vec<A::Elem>, AlgebraError> {
    let mut out = vec![alg.boundary(x)?];
    for j in 1..k {
        for i in (1..=j).rev() {
            out.push(alg.e_plus(i, &x_sq_q(alg, x, 2 * (2 * j - i) as i32)?)?);
        }
        out.push(alg.boundary(&(x * &q_pow(alg, 2 * j as i32)?))?);
    }
    Ok(out)
}

/// `y_{1→k}(x) = y_1^x [e_1^{x²q²} y_1^{xq²}] [e_2^{x²q⁴} e_1^{x²q⁶} y_1^{xq⁴}] ⋯`.
pub fn y_ladder<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    alg.product(&ladder_factors(alg, k, x)?)
}

/// `ȳ_{1→k}(x)`: the factors of `y_{1→k}(x)` in reverse order.
pub fn y_ladder_mirror<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    let mut f = ladder_factors(alg, k, x)?;
    f.reverse();
    alg.product(&f)
}

/// `Y_{1→k}(x) = A⁺_{1→k} y_{1→k}(x)`.
pub fn fused_boundary<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    alg.mul(&alg.symmetrizer(1, k)?, &y_ladder(alg, k, x)?)
}

/// `ȳ_{1→k}(x) A⁺_{1→k}`.
pub fn fused_boundary_mirror<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    alg.mul(&y_ladder_mirror(alg, k, x)?, &alg.symmetrizer(1, k)?)
}

fn two_blocks<A: ChainAlgebra>(alg: &A, k: usize) -> Result<A::Elem, AlgebraError> {
    alg.mul(&alg.symmetrizer(1, k)?, &alg.symmetrizer(k + 1, k)?)
}

/// `A⁺_{1→k} A⁺_{k+1→2k} σ_{k+1←1}^x σ_{k+2←2}^{xq²} ⋯ σ_{2k←k}^{xq^{2(k-1)}}`.
pub fn fused_baxter<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    let mut f = vec![two_blocks(alg, k)?];
    for j in 1..=k {
        let u = x * &q_pow(alg, 2 * (j as i32 - 1))?;
        for t in (0..k).rev() {
            f.push(alg.e_plus(j + t, &(&u * &q_pow(alg, -2 * t as i32)?))?);
        }
    }
    alg.product(&f)
}

/// The second ordering `A⁺ A⁺ σ_{k→2k}^{xq^{-2(k-1)}} ⋯ σ_{2→k+2}^{xq^{-2}} σ_{1→k+1}^x`.
pub fn fused_baxter_alt<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    let mut f = vec![two_blocks(alg, k)?];
    for j in (1..=k).rev() {
        let u = x * &q_pow(alg, -2 * (j as i32 - 1))?;
        for t in 0..k {
            f.push(alg.e_plus(j + t, &(&u * &q_pow(alg, 2 * t as i32)?))?);
        }
    }
    alg.product(&f)
}

/// Both sides of the fused reflection equation
/// `σ(x/z) Y(x) σ(xz q^{2(k-1)}) Y(z) = Y(z) σ(xz q^{2(k-1)}) Y(x) σ(x/z)`
/// for the fused crossing `σ = σ_{1→k,k+1→2k}`.
pub fn fused_reflection<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar, z: &Scalar) -> Result<(A::Elem, A::Elem), AlgebraError> {
    fused_reflection_shifted(alg, k, x, z, k as i32 - 1)
}

/// The fused reflection equation with the middle crossing at `xz q^{2 shift}`.
pub fn fused_reflection_shifted<A: ChainAlgebra>(
    alg: &A,
    k: usize,
    x: &Scalar,
    z: &Scalar,
    shift: i32,
) -> Result<(A::Elem, A::Elem), AlgebraError> {
    let xz = &(x * z) * &q_pow(alg, 2 * shift)?;
    let xoz = x * &z.inv()?;
    let s_xz = fused_baxter(alg, k, &xz)?;
    let s_xoz = fused_baxter(alg, k, &xoz)?;
    let yx = fused_boundary(alg, k, x)?;
    let yz = fused_boundary(alg, k, z)?;
    let lhs = alg.product(&[s_xoz.clone(), yx.clone(), s_xz.clone(), yz.clone()])?;
    let rhs = alg.product(&[yz, s_xz, yx, s_xoz])?;
    Ok((lhs, rhs))
}

/// `τ⁽ᵏ⁾(x) = Tr_{D(1→k)}(A⁺_{1→k} y_{1→k}(x))`, with `τ⁽⁰⁾ = 1`.
pub fn fused_transfer<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    if k == 0 {
        return Ok(alg.one());
    }
    alg.iterated_trace(k, &fused_boundary(alg, k, x)?)
}

/// `τ^{(k,1)}(x) = Tr_{D(1→k+1)}([σ_1^{q²} ⋯ σ_k^{q²} A⁺_{1→k}] y_{1→k+1}(x))`.
pub fn mixed_transfer<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<A::Elem, AlgebraError> {
    let q2 = q_pow(alg, 2)?;
    let mut f = Vec::with_capacity(k + 2);
    for i in 1..=k {
        f.push(alg.sigma_x(i, &q2)?);
    }
    f.push(alg.symmetrizer(1, k)?);
    f.push(y_ladder(alg, k + 1, x)?);
    alg.iterated_trace(k + 1, &alg.product(&f)?)
}

/// Both sides of `A⁺_{1→k}[σ_k^x ⋯ σ_1^{xq^{2(k-1)}}] = [σ_k^{xq^{2(k-1)}} ⋯ σ_1^x] A⁺_{2→k+1}`.
pub fn lemma1_sides<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<(A::Elem, A::Elem), AlgebraError> {
    let mut left = vec![alg.symmetrizer(1, k)?];
    let mut right = Vec::with_capacity(k + 1);
    for i in (1..=k).rev() {
        left.push(alg.sigma_x(i, &(x * &q_pow(alg, 2 * (k - i) as i32)?))?);
        right.push(alg.sigma_x(i, &(x * &q_pow(alg, 2 * (i as i32 - 1))?))?);
    }
    right.push(alg.symmetrizer(2, k)?);
    Ok((alg.product(&left)?, alg.product(&right)?))
}

pub fn lemma1_check<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<bool, AlgebraError> {
    let (l, r) = lemma1_sides(alg, k, x)?;
    Ok(l == r)
}

fn one_minus(s: Scalar) -> Scalar {
    Scalar::one() - s
}

/// `φ'_k(x)`.
pub fn phi_prime(q: &Scalar, b: &Scalar, k: usize, x: &Scalar) -> Result<Scalar, AlgebraError> {
    let k = k as i32;
    let x2 = x * x;
    let binv = b.inv()?;
    let num = one_minus(&(&x2 * &q.pow(4 * k)?) * &binv) * one_minus(&x2 * &q.pow(2 * (k - 1))?);
    let den = one_minus(&(&x2 * &q.pow(2 * k)?) * &binv) * one_minus(&x2 * &q.pow(4 * k - 2)?);
    Ok(num.checked_div(&den)?)
}

/// `φ''_k(x)`.
pub fn phi_double_prime(q: &Scalar, b: &Scalar, k: usize, x: &Scalar) -> Result<Scalar, AlgebraError> {
    let k = k as i32;
    let x2 = x * x;
    let binv = b.inv()?;
    let pre_num = q.pow(k)? * one_minus(q.pow(-2 * k)?);
    let pre_den = one_minus(q.pow(-2 * (k + 1))?) * one_minus(q.pow(2)?).pow(k)?;
    let num = one_minus(&(&x2 * &q.pow(2 * (k - 1))?) * &binv) * one_minus(&x2 * &q.pow(2 * (k - 1))?);
    let den = one_minus(&(&x2 * &q.pow(2 * k)?) * &binv) * one_minus(&x2 * &q.pow(4 * k - 2)?);
    Ok((pre_num * num).checked_div(&(pre_den * den))?)
}

/// Outcome of an identity check: both sides and their difference.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<E> {
    pub identity: String,
    pub k: usize,
    pub lhs: E,
    pub rhs: E,
    pub difference: E,
    pub pass: bool,
}

impl<E> IdentityReport<E> {
    pub fn new<A: ChainAlgebra<Elem = E>>(alg: &A, identity: &str, k: usize, lhs: E, rhs: E) -> IdentityReport<E> {
        let difference = alg.sub(&lhs, &rhs);
        let pass = alg.is_zero(&difference);
        IdentityReport { identity: identity.to_string(), k, lhs, rhs, difference, pass }
    }
}

/// `τ⁽ᵏ⁾(x) τ⁽¹⁾(xq^{2k}) = φ'_k(x) τ⁽ᵏ⁺¹⁾(x) + φ''_k(x) τ^{(k,1)}(x)`.
pub fn prop1_check<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<IdentityReport<A::Elem>, AlgebraError> {
    let q = alg.q();
    let b = alg.b()?;
    let shifted = x * &q.pow(2 * k as i32)?;
    let lhs = alg.mul(&fused_transfer(alg, k, x)?, &fused_transfer(alg, 1, &shifted)?)?;
    let rhs = alg.add(
        &alg.scale(&fused_transfer(alg, k + 1, x)?, &phi_prime(&q, &b, k, x)?),
        &alg.scale(&mixed_transfer(alg, k, x)?, &phi_double_prime(&q, &b, k, x)?),
    );
    Ok(IdentityReport::new(alg, "prop1", k, lhs, rhs))
}

/// `1 = e_k(q^{-2k}) + (1-q^{-2k})((q²-q^{-2k})λ)^{-1} σ_k(q²)`, returned as the right side.
pub fn identity_resolution<A: ChainAlgebra>(alg: &A, k: usize) -> Result<A::Elem, AlgebraError> {
    let q = alg.q();
    let qk = q.pow(-2 * k as i32)?;
    let coef = one_minus(qk.clone()).checked_div(&(&(q.pow(2)? - qk.clone()) * &alg.lambda()))?;
    Ok(alg.add(&alg.e_plus(k, &qk)?, &alg.scale(&alg.sigma_x(k, &q.pow(2)?)?, &coef)))
}

/// Both sides of `σ_{k+1}(q⁻²) e_k(x) σ_{k+1}(q²) = (1-x)((1-q²)(q-q⁻¹x))⁻¹ σ_{k+1}(q⁻²) σ_k(q²) σ_{k+1}(q²)`.
pub fn sss_sides<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<(A::Elem, A::Elem), AlgebraError> {
    let q = alg.q();
    let q2 = q.pow(2)?;
    let qm2 = q.pow(-2)?;
    let lo = alg.sigma_x(k + 1, &qm2)?;
    let hi = alg.sigma_x(k + 1, &q2)?;
    let lhs = alg.product(&[lo.clone(), alg.e_plus(k, x)?, hi.clone()])?;
    let coef = one_minus(x.clone()).checked_div(&(one_minus(q2.clone()) * (&q - &(&q.inv()? * x))))?;
    let rhs = alg.scale(&alg.product(&[lo, alg.sigma_x(k, &q2)?, hi])?, &coef);
    Ok((lhs, rhs))
}

fn b_params<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar, b: &Scalar) -> Result<Vec<Scalar>, AlgebraError> {
    (1..=k).map(|i| Ok(b.checked_div(&x_sq_q(alg, x, 2 * (2 * k - i) as i32)?)?)).collect()
}

/// Both sides of `A⁺_{2→k+1}[e_1^{b/(x²q^{4k-2})} ⋯ e_k^{b/(x²q^{2k})} σ_k^{q²}] = c · A⁺_{2→k+1}[σ_1^{q²} ⋯ σ_k^{q²}]`.
pub fn ident2_sides<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<(A::Elem, A::Elem), AlgebraError> {
    let q = alg.q();
    let b = alg.b()?;
    let q2 = q.pow(2)?;
    let sym = alg.symmetrizer(2, k)?;
    let mut left = vec![sym.clone()];
    for (i, p) in b_params(alg, k, x, &b)?.iter().enumerate() {
        left.push(alg.e_plus(i + 1, p)?);
    }
    left.push(alg.sigma_x(k, &q2)?);
    let mut right = vec![sym];
    for i in 1..=k {
        right.push(alg.sigma_x(i, &q2)?);
    }
    let ki = k as i32;
    let x2 = x * x;
    let num = -q.pow(-ki - 1)? * one_minus(b.checked_div(&(&x2 * &q.pow(2 * (ki - 1))?))?);
    let den = one_minus(q2).pow(ki - 1)? * one_minus(b.checked_div(&(&x2 * &q.pow(4 * ki)?))?);
    Ok((alg.product(&left)?, alg.scale(&alg.product(&right)?, &num.checked_div(&den)?)))
}

/// Both sides of `A⁺_{1→k+1}[e_1^{b/(x²q^{4k-2})} ⋯ e_k^{b/(x²q^{2k})}] = A⁺_{1→k+1}`.
pub fn iden3_sides<A: ChainAlgebra>(alg: &A, k: usize, x: &Scalar) -> Result<(A::Elem, A::Elem), AlgebraError> {
    let b = alg.b()?;
    let sym = alg.symmetrizer(1, k + 1)?;
    let mut left = vec![sym.clone()];
    for (i, p) in b_params(alg, k, x, &b)?.iter().enumerate() {
        left.push(alg.e_plus(i + 1, p)?);
    }
    Ok((alg.product(&left)?, sym))
}
