//! Giant-component thresholds for unipartite, bipartite and directed
//! L-graphs, plus the Liouville closed forms.

use zetanet::thresholds::{
    clustering_formula, directed_separated_margin, find_critical_exponent, liouville,
    psi_bipartite, unipartite_margin,
};
use zetanet::LSeries;

fn main() -> zetanet::Result<()> {
    let z = LSeries::zeta();
    let root = find_critical_exponent(|a| Ok(unipartite_margin(&z, a)?.margin), 3.1, 4.0, 1e-12)?;
    println!("unipartite zeta critical exponent: {root:.9}");
    for (a, b) in [(3.1, 3.1), (3.2, 4.0), (3.9, 3.9)] {
        let r = psi_bipartite(&z, a, &z, b)?;
        println!(
            "Psi_zeta({a}, {b}) = {:+.6} +/- {:.1e} -> {}",
            r.margin,
            r.error_bound,
            r.phase().label()
        );
    }
    let l = LSeries::liouville();
    println!(
        "directed zeta (2.5, 3.0): {:+.4}; directed liouville (2.5, 3.0): {:+.4}",
        directed_separated_margin(&z, 2.5, &z, 3.0)?.margin,
        directed_separated_margin(&l, 2.5, &l, 3.0)?.margin
    );
    println!(
        "closed forms at (4, 4): bipthr {:+.5}, dirthr {:+.5}, mixthr {:+.5}",
        liouville::bipthr(4.0, 4.0)?,
        liouville::dirthr(4.0, 4.0)?,
        liouville::mixthr(4.0, 4.0)?
    );
    let c = clustering_formula(&z, 4.5, &z, 5.0)?;
    println!(
        "clustering formula (4.5, 5.0): {:.5} (F(beta) = {:.4}, out of range {})",
        c.value, c.f_beta, c.out_of_range
    );
    Ok(())
}
