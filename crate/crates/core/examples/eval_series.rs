//! Evaluate the built-in L-series and their Dirichlet partial sums.

use zetanet::LSeries;

fn main() -> zetanet::Result<()> {
    let series = [
        LSeries::zeta(),
        LSeries::liouville(),
        LSeries::mobius(),
        LSeries::hurwitz(0.5)?,
    ];
    for l in &series {
        for s in [2.0, 3.0, 4.5] {
            let full = l.eval(s)?;
            let part = l.partial_sum(s, 1000)?;
            println!(
                "{:>9}({s}) = {:.15}  (+/- {:.1e}); 1000 terms {:.15} (tail <= {:.1e})",
                l.name(),
                full.value,
                full.tail_bound,
                part.value,
                part.tail_bound
            );
        }
    }
    // no analytic continuation: left of sigma_a is an error
    match LSeries::zeta().eval(0.5) {
        Err(e) => println!("zeta(0.5): {e}"),
        Ok(v) => println!("unexpected value {}", v.value),
    }
    Ok(())
}
