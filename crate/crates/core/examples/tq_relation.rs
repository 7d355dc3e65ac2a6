use hechain::scalar::{Scalar, Var};
use hechain::tlblob::{delta0, delta0_from_algebra, forced_constants, q_operator, tq_residual_free};
use hechain::{AlgebraError, BlobAlgebra, Chain};

fn main() -> Result<(), AlgebraError> {
    let forced = forced_constants()?;
    println!("b = {}", forced.b);
    println!("D0 = {}", forced.d0);

    let q = Scalar::ratio(5, 3);
    let z = Scalar::var(Var::Z);
    for k in 1..=2 {
        let chain = Chain::normalized(BlobAlgebra::temperley_lieb(2 + k + 1, q.clone())?, 2)?;
        let qop = q_operator(&chain, k, &z)?;
        let residual = tq_residual_free(&chain, k, &z)?;
        println!("N=2 k={k}: Q has {} terms, T-Q residual zero {}", qop.len(), residual.is_zero());
    }

    let base = BlobAlgebra::temperley_lieb(2, q.clone())?;
    let algebraic = delta0_from_algebra(&base, &z)?;
    let closed = delta0(&q, &z, 0, None)?;
    println!("quantum determinant at N=0: {algebraic}, closed form agrees {}", algebraic == closed);
    Ok(())
}
