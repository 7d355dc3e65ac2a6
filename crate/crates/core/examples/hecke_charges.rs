use hechain::scalar::{Scalar, Var};
use hechain::{AlgebraError, HeckeAlgebra, Perm, Sign};

fn main() -> Result<(), AlgebraError> {
    let h = HeckeAlgebra::generic(4);
    let lhs = h.word(&[1, 2, 1]);
    let rhs = h.word(&[2, 1, 2]);
    println!("braid relation: {}", lhs == rhs);

    let s = h.sigma(1);
    let quad = &h.mul(&s, &s) - &(&s.scale(h.lambda()) + &h.one());
    println!("sigma^2 - lambda sigma - 1 = 0: {}", quad.is_zero());

    let charges = h.charges(4)?;
    println!("{} local charges on 4 sites", charges.len());
    for (a, j) in charges.iter().enumerate() {
        println!("  j{} has {} terms", a + 1, j.len());
    }
    let commuting = charges.iter().all(|a| charges.iter().all(|b| h.commutator(a, b).is_zero()));
    println!("pairwise commuting: {commuting}");
    println!("mirror relation: {}", h.mirror_check());

    let t = h.markov_trace(3, &h.sigma(3))?;
    println!("Tr_4(sigma_3) = {}", t.coeff(&Perm::default()));

    let a = h.symmetrizer(Sign::Minus, 3)?;
    let x = Scalar::var(Var::X);
    println!("A-_3 sigma_1(x) = sigma_1(x) A-_3: {}", h.commutator(&a, &h.sigma_x(1, &x)).is_zero());
    Ok(())
}
