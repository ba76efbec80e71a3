//! Closed-form phase-transition conditions for L-graphs.
//!
//! Sign convention throughout: a positive margin means a giant cluster
//! (supercritical), a negative one means none, zero is critical.

use serde::{Deserialize, Serialize};

use crate::degdist::{DegreeDistribution, JointDegreeDistribution};
use crate::error::Result;
use crate::lseries::{riemann_zeta, EvalResult, LSeries};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// Bipartite giant-cluster condition Psi(alpha, beta).
    Bipartite,
    /// `L(alpha - 2) - 2 L(alpha - 1)`.
    Unipartite,
    /// Directed separated model.
    DirectedSeparated,
    /// Epidemic critical product of transmissibilities.
    EpidemicProduct,
    /// One-mode clustering coefficient.
    Clustering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Phase {
    Super,
    Sub,
    Outside,
}

impl Phase {
    /// Exact zero counts as subcritical.
    pub fn of(margin: f64) -> Phase {
        if margin > 0.0 {
            Phase::Super
        } else {
            Phase::Sub
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Phase::Super => "SUPER",
            Phase::Sub => "SUB",
            Phase::Outside => "OUTSIDE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdInputs {
    pub alpha: f64,
    pub beta: Option<f64>,
    pub families: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub margin: f64,
    /// First-order bound on the margin error from the series evaluations.
    pub error_bound: f64,
    pub formula: Formula,
    pub inputs: ThresholdInputs,
    pub convergent: bool,
}

impl ThresholdResult {
    pub fn phase(&self) -> Phase {
        Phase::of(self.margin)
    }
}

// value with an absolute error bound
#[derive(Debug, Clone, Copy)]
struct Approx(f64, f64);

impl From<EvalResult> for Approx {
    fn from(e: EvalResult) -> Self {
        Approx(e.value, e.tail_bound)
    }
}

impl Approx {
    fn mul(self, o: Approx) -> Approx {
        Approx(
            self.0 * o.0,
            self.0.abs() * o.1 + o.0.abs() * self.1 + self.1 * o.1,
        )
    }
    fn sub(self, o: Approx) -> Approx {
        Approx(self.0 - o.0, self.1 + o.1)
    }
    fn scale(self, c: f64) -> Approx {
        Approx(c * self.0, c.abs() * self.1)
    }
}

fn at(l: &LSeries, s: f64) -> Result<Approx> {
    Ok(l.eval(s)?.into())
}

fn result(
    margin: Approx,
    formula: Formula,
    alpha: f64,
    beta: Option<f64>,
    families: Vec<String>,
) -> ThresholdResult {
    ThresholdResult {
        margin: margin.0,
        error_bound: margin.1,
        formula,
        inputs: ThresholdInputs {
            alpha,
            beta,
            families,
        },
        convergent: margin.0.is_finite(),
    }
}

/// `Psi = L1(a-2) L2(b-2) - L1(a-2) L2(b-1) - L1(a-1) L2(b-2)`.
pub fn psi_bipartite(l1: &LSeries, alpha: f64, l2: &LSeries, beta: f64) -> Result<ThresholdResult> {
    let a2 = at(l1, alpha - 2.0)?;
    let a1 = at(l1, alpha - 1.0)?;
    let b2 = at(l2, beta - 2.0)?;
    let b1 = at(l2, beta - 1.0)?;
    let psi = a2.mul(b2).sub(a2.mul(b1)).sub(a1.mul(b2));
    Ok(result(
        psi,
        Formula::Bipartite,
        alpha,
        Some(beta),
        vec![l1.name().into(), l2.name().into()],
    ))
}

/// Truncated `sum_{m,n} mn(mn - m - n) p_m q_n`, factorized into moments.
pub fn psi_oracle(p: &DegreeDistribution, q: &DegreeDistribution) -> f64 {
    let (p1, p2) = (p.truncated_moment(1), p.truncated_moment(2));
    let (q1, q2) = (q.truncated_moment(1), q.truncated_moment(2));
    p2 * q2 - p2 * q1 - p1 * q2
}

/// Bound on `|psi_oracle(p, q) L1(alpha) L2(beta) - Psi|` when `p`, `q` are
/// L-graph laws truncated at `k_max`: truncation tails of the four moment
/// series plus the evaluation errors of `Psi` and the normalizers.
pub fn psi_tail_bound(
    l1: &LSeries,
    alpha: f64,
    l2: &LSeries,
    beta: f64,
    k_max: usize,
) -> Result<f64> {
    let part = |l: &LSeries, s: f64| -> Result<Approx> {
        let full = l.eval(s)?;
        let t = l.tail_after(s, k_max);
        // the partial sum differs from the full value by at most t
        Ok(Approx(full.value, full.tail_bound + t))
    };
    let a2 = part(l1, alpha - 2.0)?;
    let a1 = part(l1, alpha - 1.0)?;
    let b2 = part(l2, beta - 2.0)?;
    let b1 = part(l2, beta - 1.0)?;
    let psi = a2.mul(b2).sub(a2.mul(b1)).sub(a1.mul(b2));
    // normalizers enter the oracle through p and q; their errors rescale it
    let n1 = at(l1, alpha)?;
    let n2 = at(l2, beta)?;
    let rel = n1.1 / n1.0.abs() + n2.1 / n2.0.abs();
    Ok(psi.1 + 2.0 * rel * psi.0.abs() + 1e-12 * (1.0 + psi.0.abs()))
}

/// `L(alpha - 2) - 2 L(alpha - 1)`.
pub fn unipartite_margin(l: &LSeries, alpha: f64) -> Result<ThresholdResult> {
    let m = at(l, alpha - 2.0)?.sub(at(l, alpha - 1.0)?.scale(2.0));
    Ok(result(
        m,
        Formula::Unipartite,
        alpha,
        None,
        vec![l.name().into()],
    ))
}

/// `2 L1(a-1) L2(b-1) - L1(a-1) L2(b) - L1(a) L2(b-1)`.
pub fn directed_separated_margin(
    l1: &LSeries,
    alpha: f64,
    l2: &LSeries,
    beta: f64,
) -> Result<ThresholdResult> {
    let a1 = at(l1, alpha - 1.0)?;
    let a0 = at(l1, alpha)?;
    let b1 = at(l2, beta - 1.0)?;
    let b0 = at(l2, beta)?;
    let m = a1.mul(b1).scale(2.0).sub(a1.mul(b0)).sub(a0.mul(b1));
    Ok(result(
        m,
        Formula::DirectedSeparated,
        alpha,
        Some(beta),
        vec![l1.name().into(), l2.name().into()],
    ))
}

/// Truncated `sum_{n,m} (2nm - n - m) pi_{nm}`.
pub fn directed_joint_margin(pi: &JointDegreeDistribution) -> f64 {
    match pi {
        JointDegreeDistribution::Separated {
            in_degree,
            out_degree,
        } => {
            let (p0, p1) = (in_degree.total_mass(), in_degree.truncated_moment(1));
            let (q0, q1) = (out_degree.total_mass(), out_degree.truncated_moment(1));
            2.0 * p1 * q1 - p1 * q0 - p0 * q1
        }
        JointDegreeDistribution::Barnes(_) => {
            let mut total = 0.0;
            pi.for_each_cell(|n, m, w| {
                let (n, m) = (n as f64, m as f64);
                total += (2.0 * n * m - n - m) * w;
            });
            total
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    pub value: f64,
    /// `F(beta) = 2 L2(b-1) - 3 L2(b-2) + L2(b-3)`.
    pub f_beta: f64,
    /// Set when the value leaves [0, 1], where a clustering coefficient lives.
    pub out_of_range: bool,
}

/// `C = L1(a-1) L2(b-1) F(b) / ([L1(a-2) - L1(a-1)] [L2(b-2) - L2(b-1)]^2 + 1)`,
/// evaluated exactly as written.
pub fn clustering_formula(
    l1: &LSeries,
    alpha: f64,
    l2: &LSeries,
    beta: f64,
) -> Result<ClusteringResult> {
    let a1 = l1.eval(alpha - 1.0)?.value;
    let a2 = l1.eval(alpha - 2.0)?.value;
    let b1 = l2.eval(beta - 1.0)?.value;
    let b2 = l2.eval(beta - 2.0)?.value;
    let b3 = l2.eval(beta - 3.0)?.value;
    let f_beta = 2.0 * b1 - 3.0 * b2 + b3;
    let value = a1 * b1 * f_beta / ((a2 - a1) * (b2 - b1).powi(2) + 1.0);
    Ok(ClusteringResult {
        value,
        f_beta,
        out_of_range: !(0.0..=1.0).contains(&value),
    })
}

/// Bisection root of a margin on `[lo, hi]` to bracket width `tol`.
pub fn find_critical_exponent<F>(margin_fn: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    bisect(margin_fn, lo, hi, tol, None)
}

/// The Liouville and Liouville-Moebius specializations written directly in
/// Riemann zeta values, as printed for the section 7 figures.
pub mod liouville {
    use super::*;

    fn z(s: f64) -> Result<f64> {
        Ok(riemann_zeta(s)?.value)
    }

    // zeta(2s) / zeta(s)
    fn lam(s: f64) -> Result<f64> {
        Ok(z(2.0 * s)? / z(s)?)
    }

    /// Bipartite Liouville giant-cluster condition.
    pub fn bipthr(alpha: f64, beta: f64) -> Result<f64> {
        let a4 = z(2.0 * alpha - 4.0)? / z(alpha - 2.0)?;
        let b4 = z(2.0 * beta - 4.0)? / z(beta - 2.0)?;
        let a2 = z(2.0 * alpha - 2.0)? / z(alpha - 1.0)?;
        let b2 = z(2.0 * beta - 2.0)? / z(beta - 1.0)?;
        Ok(a4 * b4 - a4 * b2 - a2 * b4)
    }

    /// Directed separated Liouville condition.
    pub fn dirthr(alpha: f64, beta: f64) -> Result<f64> {
        let a1 = lam(alpha - 1.0)?;
        let b1 = lam(beta - 1.0)?;
        let a0 = lam(alpha)?;
        let b0 = lam(beta)?;
        Ok(2.0 * a1 * b1 - a1 * b0 - a0 * b1)
    }

    /// Critical product of transmissibilities for the bipartite Liouville graph.
    pub fn epid_liouville(alpha: f64, beta: f64) -> Result<f64> {
        let side = |s: f64| -> Result<(f64, f64)> {
            let num = z(2.0 * s - 2.0)? * z(s - 2.0)?;
            let den = z(2.0 * s - 4.0)? * z(s - 1.0)? - z(2.0 * s - 2.0)? * z(s - 2.0)?;
            Ok((num, den))
        };
        let (na, da) = side(alpha)?;
        let (nb, db) = side(beta)?;
        Ok(na * nb / (da * db))
    }

    /// Mixed Liouville (first side) / Moebius (second side) condition.
    pub fn mixthr(alpha: f64, beta: f64) -> Result<f64> {
        let a4 = z(2.0 * alpha - 4.0)? / z(alpha - 2.0)?;
        let a2 = z(2.0 * alpha - 2.0)? / z(alpha - 1.0)?;
        let b2 = 1.0 / z(beta - 2.0)?;
        let b1 = 1.0 / z(beta - 1.0)?;
        Ok(a4 * b2 - a4 * b1 - a2 * b2)
    }
}
