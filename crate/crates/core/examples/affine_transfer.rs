use hechain::scalar::{Scalar, Var};
use hechain::{AffineAlgebra, AlgebraError, BoundaryMode, Generator};

fn main() -> Result<(), AlgebraError> {
    let a = AffineAlgebra::quadratic(3);
    let x = Scalar::var(Var::X);
    let z = Scalar::var(Var::Z);

    let word = [Generator::Y(2), Generator::Sigma(1), Generator::Y(1)];
    let ordered = a.normal_order(&word)?;
    println!("y2 s1 y1 in normal order: {} terms", ordered.len());

    let y2 = a.y(2);
    let tr = a.markov_trace(2, &y2)?;
    println!("Tr_2(y2) has {} terms", tr.len());

    for (label, mode) in [("free", BoundaryMode::Free), ("blob", BoundaryMode::QuadraticBlob { xi: Scalar::var(Var::XI) })] {
        let t = a.transfer(2, &x, &mode)?;
        let r = a.transfer_via_recursion(2, &x, &mode)?;
        let tz = a.transfer(2, &z, &mode)?;
        println!(
            "{label}: recursion agrees {}, [tau(x), tau(z)] = 0 {}",
            t == r,
            a.commutator(&t, &tz).is_zero()
        );
    }

    let h = a.hamiltonian(2, &BoundaryMode::QuadraticBlob { xi: Scalar::var(Var::XI) })?;
    println!("two-site blob Hamiltonian: {} terms", h.len());
    Ok(())
}
