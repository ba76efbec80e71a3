//! Critical transmissibility and mean outbreak size for SIR on bipartite
//! L-graphs.

use zetanet::degdist::make_bipartite_lgraph;
use zetanet::epidemics::{
    critical_transmissibility, epidemic_threshold_product, mean_outbreak_size, tc_curve,
    Transmissibility,
};
use zetanet::phasescan::Window;
use zetanet::LSeries;

fn main() -> zetanet::Result<()> {
    let z = LSeries::zeta();
    let tc = critical_transmissibility(&z, 3.3, &z, 3.3)?;
    println!("alpha = beta = 3.3: T_c = {tc:.4}");
    let (p, q) = make_bipartite_lgraph(&z, 3.3, &z, 3.3, 10_000)?;
    for t in [0.2, 0.4, 0.55, 0.6] {
        let s = mean_outbreak_size(&p, &q, Transmissibility::symmetric(t)?)?;
        println!("T = {t}: <s> = {:.4}, F1'(1) = {:.4}", s.mean, s.f1_slope);
    }
    let l = LSeries::liouville();
    println!(
        "liouville critical product at (3.5, 4.0): {:.4}",
        epidemic_threshold_product(&l, 3.5, &l, 4.0)?
    );
    let w = Window::new((3.05, 5.0), (3.05, 5.0))?;
    let curve = tc_curve(&z, &z, 0.5, w, 40, 1e-10)?;
    println!(
        "zeta T_mf T_fm = 0.5 curve: {} points, first {:?}",
        curve.len(),
        curve.first()
    );
    Ok(())
}
