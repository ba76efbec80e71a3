//! SIR epidemics on bipartite L-graphs as bond percolation.
//!
//! Group A ("m") has degree law `p`, group B ("f") has `q`. Transmission
//! A -> B happens along an edge with probability `t_mf`, B -> A with `t_fm`.
//! A generating function `g` is dressed for transmissibility `T` as
//! `g(1 + (x - 1) T)`.

use serde::{Deserialize, Serialize};

use crate::degdist::{gf_g0, gf_g1, DegreeDistribution};
use crate::error::{Error, Result};
use crate::lseries::LSeries;
use crate::phasescan::{self, Window};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transmissibility {
    pub t_mf: f64,
    pub t_fm: f64,
}

impl Transmissibility {
    pub fn new(t_mf: f64, t_fm: f64) -> Result<Self> {
        for (name, t) in [("t_mf", t_mf), ("t_fm", t_fm)] {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {t} is not in [0, 1]"
                )));
            }
        }
        Ok(Transmissibility { t_mf, t_fm })
    }

    pub fn symmetric(t: f64) -> Result<Self> {
        Self::new(t, t)
    }

    pub fn product(&self) -> f64 {
        self.t_mf * self.t_fm
    }
}

fn check_dressing(d: &DegreeDistribution, x: f64, t: f64) -> Result<f64> {
    d.require_unsigned()?;
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "dressed generating functions need x, T in [0, 1], got x = {x}, T = {t}"
        )));
    }
    Ok(1.0 + (x - 1.0) * t)
}

/// Vertex generating function dressed by transmissibility `t`.
pub fn dressed_gf(d: &DegreeDistribution, x: f64, t: f64) -> Result<f64> {
    let y = check_dressing(d, x, t)?;
    Ok(gf_g0(d, y)?.value)
}

/// Excess-degree generating function dressed by transmissibility `t`.
pub fn dressed_gf1(d: &DegreeDistribution, x: f64, t: f64) -> Result<f64> {
    let y = check_dressing(d, x, t)?;
    Ok(gf_g1(d, y)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutbreakSize {
    /// Mean number of group-A individuals reached from an A seed; infinite at
    /// or above threshold.
    pub mean: f64,
    /// `F0'(1)`.
    pub f0_slope: f64,
    /// `F1'(1)`; the outbreak is subcritical when this is below one.
    pub f1_slope: f64,
    pub subcritical: bool,
}

/// `<s> = 1 + F0'(1) / (1 - F1'(1))` with
/// `F0(x) = f0(g1(x; t_fm); t_mf)` and `F1(x) = f1(g1(x; t_fm); t_mf)`.
pub fn mean_outbreak_size(
    p: &DegreeDistribution,
    q: &DegreeDistribution,
    t: Transmissibility,
) -> Result<OutbreakSize> {
    p.require_unsigned()?;
    q.require_unsigned()?;
    // chain rule at x = 1, where every inner function equals 1
    let f0 = p.moment(1)?;
    let f1 = p.excess_slope()?;
    let g1 = q.excess_slope()?;
    let f0_slope = f0 * t.t_mf * g1 * t.t_fm;
    let f1_slope = f1 * t.t_mf * g1 * t.t_fm;
    let subcritical = f1_slope < 1.0;
    let mean = if subcritical {
        1.0 + f0_slope / (1.0 - f1_slope)
    } else {
        f64::INFINITY
    };
    Ok(OutbreakSize {
        mean,
        f0_slope,
        f1_slope,
        subcritical,
    })
}

/// Critical product `T_mf T_fm = 1 / (f1'(1) g1'(1))` for distributions.
pub fn critical_product(p: &DegreeDistribution, q: &DegreeDistribution) -> Result<f64> {
    let den = p.excess_slope()? * q.excess_slope()?;
    if den <= 0.0 {
        return Err(Error::DegenerateDenominator(
            "critical transmissibility product (no excess degree)".into(),
        ));
    }
    Ok(1.0 / den)
}

/// `L1(a-1) L2(b-1) / ([L1(a-2) - L1(a-1)] [L2(b-2) - L2(b-1)])`.
pub fn epidemic_threshold_product(
    l1: &LSeries,
    alpha: f64,
    l2: &LSeries,
    beta: f64,
) -> Result<f64> {
    let a1 = l1.eval(alpha - 1.0)?.value;
    let a2 = l1.eval(alpha - 2.0)?.value;
    let b1 = l2.eval(beta - 1.0)?.value;
    let b2 = l2.eval(beta - 2.0)?.value;
    let den = (a2 - a1) * (b2 - b1);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::DegenerateDenominator(format!(
            "epidemic threshold at alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(a1 * b1 / den)
}

/// Symmetric critical transmissibility `T_c`, the square root of the
/// critical product.
pub fn critical_transmissibility(l1: &LSeries, alpha: f64, l2: &LSeries, beta: f64) -> Result<f64> {
    let prod = epidemic_threshold_product(l1, alpha, l2, beta)?;
    if prod < 0.0 {
        return Err(Error::DegenerateDenominator(format!(
            "negative critical product {prod}"
        )));
    }
    Ok(prod.sqrt())
}

/// Points of `window` where the critical product equals `target`, found by
/// bisection along every grid row and column.
pub fn tc_curve(
    l1: &LSeries,
    l2: &LSeries,
    target: f64,
    window: Window,
    resolution: usize,
    tol: f64,
) -> Result<Vec<(f64, f64)>> {
    let f = |a: f64, b: f64| Ok(target - epidemic_threshold_product(l1, a, l2, b)?);
    let floor = (l1.sigma_a() + 2.0, l2.sigma_a() + 2.0);
    let res = phasescan::scan_fn(&f, floor, window, resolution, tol)?;
    Ok(res.zero_curve)
}
