//! Degree distributions built from L-series, their moments and generating
//! functions.

use zetanet::degdist::{gf_g0, gf_g1, kmax_rule, make_directed_barnes, DegreeDistribution};
use zetanet::LSeries;

fn main() -> zetanet::Result<()> {
    let alpha = 3.3;
    let k_max = kmax_rule(100_000, alpha)?;
    println!("k_max for N = 1e5 at alpha = {alpha}: {k_max}");
    for l in [LSeries::zeta(), LSeries::liouville(), LSeries::mobius()] {
        let d = DegreeDistribution::lgraph(&l, alpha, k_max)?;
        println!(
            "{:>9}: p(1..5) = {:?}, signed {}, tail mass {:.2e}",
            d.label(),
            (1..=5)
                .map(|k| format!("{:.4}", d.weight(k)))
                .collect::<Vec<_>>(),
            d.is_signed(),
            d.tail_mass()
        );
        if !d.is_signed() {
            println!(
                "           mean {:.4}, second moment {:.4}, G0(0.5) = {:.4}, G1(0.5) = {:.4}",
                d.moment(1)?,
                d.moment(2)?,
                gf_g0(&d, 0.5)?.value,
                gf_g1(&d, 0.5)?.value
            );
        }
    }
    let pi = make_directed_barnes(3.5, 1.0, 1.0, 200)?;
    let (m_in, m_out) = pi.means();
    println!(
        "Barnes joint law: mean in {m_in:.4}, mean out {m_out:.4}, balance {:.1e}",
        pi.balance()
    );
    Ok(())
}
