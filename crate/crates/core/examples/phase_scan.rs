//! Scan a threshold expression over the (alpha, beta) plane and export the
//! grid and zero curve.

use zetanet::phasescan::{export, scan, ExportFormat, ScanFormula};
use zetanet::thresholds::Phase;
use zetanet::Family;

fn main() -> zetanet::Result<()> {
    let f = ScanFormula::from_tag("psi", Family::Zeta, Family::Zeta, None)?;
    let r = scan(&f, None, 60, 1e-9)?;
    println!(
        "{}: SUPER {}, SUB {}, OUTSIDE {}, zero-curve points {}",
        f.tag(),
        r.count(Phase::Super),
        r.count(Phase::Sub),
        r.count(Phase::Outside),
        r.zero_curve.len()
    );
    let dir = std::env::temp_dir().join("zetanet-phase-scan");
    for p in export(&r, &dir.join("psi_60.csv"), ExportFormat::Csv)? {
        println!("wrote {}", p.display());
    }
    let f = ScanFormula::from_tag("bipthr", Family::Liouville, Family::Liouville, None)?;
    let r = scan(&f, None, 60, 1e-9)?;
    let max = r
        .margin
        .iter()
        .flatten()
        .flatten()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    println!(
        "bipthr: largest margin {max:.4}, zero-curve points {}",
        r.zero_curve.len()
    );
    Ok(())
}
