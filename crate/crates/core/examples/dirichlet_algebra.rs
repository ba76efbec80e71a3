//! Dirichlet convolution, pointwise products and inverses of arithmetic
//! functions.

use zetanet::arith::{
    dirichlet_convolve, dirichlet_inverse_cm, pointwise_product, verify_multiplicative,
    ArithmeticFunction, Multiplicativity,
};

fn show(f: &ArithmeticFunction) {
    println!("{:>14}: {:?}", f.name(), &f.values()[..f.len().min(16)]);
}

fn main() -> zetanet::Result<()> {
    let n = 16;
    let (one, lambda, mu) = (
        ArithmeticFunction::unit(n),
        ArithmeticFunction::liouville(n),
        ArithmeticFunction::mobius(n),
    );
    show(&dirichlet_convolve(&one, &one, n)?.with_name("1 * 1 = d"));
    show(&dirichlet_convolve(&mu, &one, n)?.with_name("mu * 1 = e"));
    show(&dirichlet_convolve(&lambda, &one, n)?.with_name("lambda * 1"));
    show(&dirichlet_inverse_cm(&lambda)?.with_name("lambda^-1"));
    let mixed = pointwise_product(&lambda, &ArithmeticFunction::identity(n))?;
    show(&mixed);
    let check = verify_multiplicative(&mixed, n, Multiplicativity::CompletelyMultiplicative);
    println!("lambda . id completely multiplicative: {}", check.holds);
    let check = verify_multiplicative(&mu, n, Multiplicativity::CompletelyMultiplicative);
    println!(
        "mu completely multiplicative: {} (witness {:?})",
        check.holds, check.witness
    );
    Ok(())
}
