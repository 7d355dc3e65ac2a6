use hechain::fusion::{fused_boundary, fused_boundary_mirror, lemma1_sides, prop1_check};
use hechain::scalar::{Scalar, Var};
use hechain::{AffineAlgebra, AffineChain, AlgebraError, BoundaryMode, HeckeAlgebra};

fn main() -> Result<(), AlgebraError> {
    let x = Scalar::var(Var::X);

    for k in 1..=2 {
        let h = HeckeAlgebra::generic(k + 1);
        let (lhs, rhs) = lemma1_sides(&h, k, &x)?;
        println!("lemma k={k}: {}", lhs == rhs);
        let report = prop1_check(&h, k, &x)?;
        println!("fused transfer relation, free, k={k}: {}", report.pass);
    }

    let chain = AffineChain::new(AffineAlgebra::quadratic(2), BoundaryMode::QuadraticBlob { xi: Scalar::var(Var::XI) });
    let y = fused_boundary(&chain, 2, &x)?;
    let mirrored = fused_boundary_mirror(&chain, 2, &x)?;
    println!("fused blob boundary, k=2: {} terms, mirror form agrees {}", y.len(), y == mirrored);
    Ok(())
}
