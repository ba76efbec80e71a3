//! SIR bond percolation sweep on a sampled bipartite graph, next to the
//! analytic threshold.

use zetanet::degdist::DegreeDistribution;
use zetanet::epidemics::{critical_transmissibility, Transmissibility};
use zetanet::sampler::{sample_bipartite, sir_percolation};
use zetanet::LSeries;

fn main() -> zetanet::Result<()> {
    let z = LSeries::zeta();
    let n = 50_000;
    let d = DegreeDistribution::lgraph(&z, 3.3, n)?;
    let g = sample_bipartite(&d, &d, n, n, 5)?;
    println!(
        "analytic T_c = {:.4}",
        critical_transmissibility(&z, 3.3, &z, 3.3)?
    );
    for i in 1..=10 {
        let t = 0.1 * i as f64;
        let s = sir_percolation(&g, Transmissibility::symmetric(t)?, 200, 6)?;
        println!(
            "T = {t:.1}: mean size {:8.1}, giant outbreaks {:.3}, largest {}",
            s.mean_size, s.giant_fraction, s.largest
        );
    }
    Ok(())
}
