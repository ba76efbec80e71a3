//! Sample bipartite and directed configuration-model graphs and measure the
//! largest component on both sides of the threshold.

use zetanet::degdist::{kmax_rule, make_directed_barnes, DegreeDistribution};
use zetanet::sampler::{
    build_directed, giant_component_fraction, measured_clustering, one_mode_projection,
    sample_bipartite, Side,
};
use zetanet::thresholds::psi_bipartite;
use zetanet::LSeries;

fn main() -> zetanet::Result<()> {
    let z = LSeries::zeta();
    let n = 50_000;
    for alpha in [3.1, 3.9] {
        let d = DegreeDistribution::lgraph(&z, alpha, kmax_rule(n, alpha)?)?;
        let g = sample_bipartite(&d, &d, n, n, 1)?;
        println!(
            "alpha = {alpha}: Psi {:+.3}, giant {:.4}, redraws {}",
            psi_bipartite(&z, alpha, &z, alpha)?.margin,
            giant_component_fraction(&g),
            g.redraws
        );
    }
    let d = DegreeDistribution::lgraph(&z, 3.5, 200)?;
    let g = sample_bipartite(&d, &d, 5000, 5000, 2)?;
    let proj = one_mode_projection(&g, Side::A);
    println!(
        "A-side projection clustering: {:.4}",
        measured_clustering(&proj)
    );
    let g = build_directed(&make_directed_barnes(3.5, 1.0, 1.0, 200)?, n, 3)?;
    println!(
        "Barnes directed graph: {} edges, giant {:.4}",
        g.edges.len(),
        giant_component_fraction(&g)
    );
    Ok(())
}
