use hechain::rmatrep::{build_rhat, spectrum, MatrixChain, RepMatrix, SuperSpace};
use hechain::scalar::Scalar;
use hechain::{AlgebraError, HeckeAlgebra, Sign};

fn main() -> Result<(), AlgebraError> {
    let q = Scalar::from_int(2);
    for space in [SuperSpace::gl(2)?, SuperSpace::new(2, 1)?] {
        let r = build_rhat(&space, &q)?;
        let lam = &q - &q.inv()?;
        let d2 = space.dim() * space.dim();
        let hecke = r.mul(&r) == r.scale(&lam).try_add(&RepMatrix::identity(d2))?;
        println!("{space}: R^2 = lambda R + 1 {hecke}");

        let chain = MatrixChain::new(space, q.clone(), 3, None)?;
        let h = HeckeAlgebra::new(3, q.clone())?;
        let anti = chain.rho_hecke(&h, &h.symmetrizer(Sign::Minus, 3)?)?;
        println!("  rho(A-_3) vanishes: {}", anti.is_zero());

        for e in spectrum(&chain.free_hamiltonian()?)? {
            let value = e.exact.as_ref().map_or_else(|| format!("{:.12}", e.value), ToString::to_string);
            println!("  {value} (x{})", e.multiplicity);
        }
    }
    Ok(())
}
