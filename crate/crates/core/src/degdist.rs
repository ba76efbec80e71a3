//! Degree distributions of L-graphs and their generating functions.
//!
//! A bipartite L-graph draws type-A degrees from `p_m = a_m m^{-alpha} / L1(alpha)`
//! and type-B degrees from `q_n = b_n n^{-beta} / L2(beta)`, with no mass at
//! degree zero. Distributions are stored truncated at `k_max` and keep their
//! source series so that moments can be taken from the series values rather
//! than from the truncated table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lseries::{barnes_zeta, Family, LSeries};

#[derive(Debug, Clone)]
pub struct DegreeDistribution {
    label: String,
    // weights[k] = P(degree = k), k = 0..=k_max
    weights: Vec<f64>,
    normalizer: f64,
    alpha: f64,
    signed: bool,
    tail_mass: f64,
    source: Option<LSeries>,
}

/// Reproducibility record for a distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionManifest {
    pub label: String,
    pub family: Option<Family>,
    pub alpha: Option<f64>,
    pub k_max: usize,
    pub normalizer: f64,
    pub tail_mass: f64,
    pub signed: bool,
}

/// A generating-function value; `formal` marks values computed from a
/// signed (non-probabilistic) weight table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GfValue {
    pub value: f64,
    pub formal: bool,
}

impl DegreeDistribution {
    /// `w_k = term_k(alpha) / L(alpha)` for `1 <= k <= k_max`, `w_0 = 0`.
    pub fn lgraph(l: &LSeries, alpha: f64, k_max: usize) -> Result<Self> {
        let floor = l.sigma_a().max(1.0);
        if !(alpha > floor) || !alpha.is_finite() {
            return Err(Error::domain(
                format!("degree law from '{}'", l.name()),
                alpha,
                floor,
            ));
        }
        if k_max < 1 {
            return Err(Error::InvalidParameter("k_max must be at least 1".into()));
        }
        let norm = l.eval(alpha)?;
        if norm.value == 0.0 || norm.value.abs() <= norm.tail_bound {
            return Err(Error::ZeroNormalizer {
                name: l.name().to_string(),
                s: alpha,
            });
        }
        let mut weights = Vec::with_capacity(k_max + 1);
        weights.push(0.0);
        weights.extend(l.terms(alpha, k_max).into_iter().map(|t| t / norm.value));
        let signed = weights.iter().any(|&w| w < 0.0);
        let tail_mass =
            (l.tail_after(alpha, k_max) + norm.tail_bound) / (norm.value.abs() - norm.tail_bound);
        Ok(DegreeDistribution {
            label: format!("{}(alpha={alpha})", l.name()),
            weights,
            normalizer: norm.value,
            alpha,
            signed,
            tail_mass,
            source: Some(l.clone()),
        })
    }

    /// An explicit finite law; weights must sum to one.
    pub fn from_weights(label: impl Into<String>, weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.is_empty() || weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidParameter(
                "weights must be finite and nonempty".into(),
            ));
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let signed = weights.iter().any(|&w| w < 0.0);
        Ok(DegreeDistribution {
            label: label.into(),
            weights,
            normalizer: 1.0,
            alpha: f64::NAN,
            signed,
            tail_mass: 0.0,
            source: None,
        })
    }

    /// All mass on a single degree.
    pub fn point_mass(k: usize) -> Self {
        let mut weights = vec![0.0; k + 1];
        weights[k] = 1.0;
        DegreeDistribution {
            label: format!("delta({k})"),
            weights,
            normalizer: 1.0,
            alpha: f64::NAN,
            signed: false,
            tail_mass: 0.0,
            source: None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn k_max(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights.get(k).copied().unwrap_or(0.0)
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// The exponent; NaN for explicit weight tables.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    /// Bound on `|1 - sum_k w_k|` due to truncation and normalizer error.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn source(&self) -> Option<&LSeries> {
        self.source.as_ref()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().rev().sum()
    }

    /// `sum_{k <= k_max} k^j w_k`.
    pub fn truncated_moment(&self, j: u32) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .rev()
            .map(|(k, w)| (k as f64).powi(j as i32) * w)
            .sum()
    }

    /// `E[k^j]` of the untruncated law: from the source series when there is
    /// one, otherwise from the table.
    pub fn moment(&self, j: u32) -> Result<f64> {
        match &self.source {
            Some(l) => {
                let m = l.power_moment(self.alpha, j)?;
                Ok(m.value / self.normalizer)
            }
            None => Ok(self.truncated_moment(j)),
        }
    }

    /// Derivative at 1 of the excess-degree generating function,
    /// `E[k(k-1)] / E[k]`.
    pub fn excess_slope(&self) -> Result<f64> {
        let m1 = self.moment(1)?;
        let m2 = self.moment(2)?;
        if m1 == 0.0 {
            return Err(Error::DegenerateDenominator(format!(
                "excess slope of {} (zero mean)",
                self.label
            )));
        }
        Ok((m2 - m1) / m1)
    }

    pub(crate) fn require_unsigned(&self) -> Result<()> {
        if self.signed {
            Err(Error::SignedDistribution(self.label.clone()))
        } else {
            Ok(())
        }
    }

    pub fn manifest(&self) -> DistributionManifest {
        DistributionManifest {
            label: self.label.clone(),
            family: self.source.as_ref().map(LSeries::family),
            alpha: self.alpha.is_finite().then_some(self.alpha),
            k_max: self.k_max(),
            normalizer: self.normalizer,
            tail_mass: self.tail_mass,
            signed: self.signed,
        }
    }
}

/// The two degree laws of a bipartite L-graph.
pub fn make_bipartite_lgraph(
    l1: &LSeries,
    alpha: f64,
    l2: &LSeries,
    beta: f64,
    k_max: usize,
) -> Result<(DegreeDistribution, DegreeDistribution)> {
    Ok((
        DegreeDistribution::lgraph(l1, alpha, k_max)?,
        DegreeDistribution::lgraph(l2, beta, k_max)?,
    ))
}

/// Mean degree `L(alpha - 1) / L(alpha)`.
pub fn mean_degree(d: &DegreeDistribution) -> Result<f64> {
    d.moment(1)
}

fn check_unit_interval(x: f64) -> Result<()> {
    if x.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "generating functions are evaluated on |x| <= 1, got {x}"
        )))
    }
}

/// Vertex generating function `g0(x) = sum_k w_k x^k`.
pub fn gf_g0(d: &DegreeDistribution, x: f64) -> Result<GfValue> {
    check_unit_interval(x)?;
    let value = d.weights.iter().rev().fold(0.0, |acc, w| acc * x + w);
    Ok(GfValue {
        value,
        formal: d.signed,
    })
}

/// Excess-degree generating function `g1(x) = g0'(x) / g0'(1)`, normalized on
/// the truncated table so that `g1(1) = 1`.
pub fn gf_g1(d: &DegreeDistribution, x: f64) -> Result<GfValue> {
    check_unit_interval(x)?;
    let mean = d.truncated_moment(1);
    if mean == 0.0 {
        return Err(Error::DegenerateDenominator(format!(
            "g1 of {} (zero mean)",
            d.label
        )));
    }
    let derivative = d
        .weights
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, w)| acc * x + k as f64 * w);
    Ok(GfValue {
        value: derivative / mean,
        formal: d.signed,
    })
}

/// Maximum-degree scaling `ceil(N^{1/(alpha-1)})`, capped at `10^9`.
pub fn kmax_rule(n: usize, alpha: f64) -> Result<usize> {
    if n < 1 || !(alpha > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "kmax_rule needs N >= 1 and alpha > 1, got N = {n}, alpha = {alpha}"
        )));
    }
    const CAP: f64 = 1e9;
    let raw = (n as f64).powf(1.0 / (alpha - 1.0));
    if !raw.is_finite() || raw >= CAP {
        return Ok(CAP as usize);
    }
    let nearest = raw.round();
    let k = if (raw - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        raw.ceil()
    };
    Ok((k as usize).max(1))
}

/// Joint in/out-degree law `pi_{nm}` (n = in-degree, m = out-degree).
#[derive(Debug, Clone)]
pub enum JointDegreeDistribution {
    /// `pi_{nm} = p_n q_m`.
    Separated {
        in_degree: DegreeDistribution,
        out_degree: DegreeDistribution,
    },
    Barnes(BarnesJoint),
}

/// `pi_{nm} = (w + (n + m) a)^{-alpha} / Z` on `n, m >= 1`, where
/// `Z = zeta_B(alpha, w + 2a | a)` sums exactly that support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarnesJoint {
    pub alpha: f64,
    pub w: f64,
    pub a: f64,
    pub k_max: usize,
    pub normalizer: f64,
}

impl BarnesJoint {
    pub fn weight(&self, n: usize, m: usize) -> f64 {
        if n == 0 || m == 0 || n > self.k_max || m > self.k_max {
            return 0.0;
        }
        (self.w + (n + m) as f64 * self.a).powf(-self.alpha) / self.normalizer
    }
}

pub fn make_directed_separated(
    p: DegreeDistribution,
    q: DegreeDistribution,
) -> JointDegreeDistribution {
    JointDegreeDistribution::Separated {
        in_degree: p,
        out_degree: q,
    }
}

pub fn make_directed_barnes(
    alpha: f64,
    w: f64,
    a: f64,
    k_max: usize,
) -> Result<JointDegreeDistribution> {
    if k_max < 1 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    let z = barnes_zeta(alpha, w + 2.0 * a, a)?;
    Ok(JointDegreeDistribution::Barnes(BarnesJoint {
        alpha,
        w,
        a,
        k_max,
        normalizer: z.value,
    }))
}

impl JointDegreeDistribution {
    pub fn k_max(&self) -> usize {
        match self {
            JointDegreeDistribution::Separated {
                in_degree,
                out_degree,
            } => in_degree.k_max().max(out_degree.k_max()),
            JointDegreeDistribution::Barnes(b) => b.k_max,
        }
    }

    pub fn weight(&self, n: usize, m: usize) -> f64 {
        match self {
            JointDegreeDistribution::Separated {
                in_degree,
                out_degree,
            } => in_degree.weight(n) * out_degree.weight(m),
            JointDegreeDistribution::Barnes(b) => b.weight(n, m),
        }
    }

    pub fn is_signed(&self) -> bool {
        match self {
            JointDegreeDistribution::Separated {
                in_degree,
                out_degree,
            } => in_degree.is_signed() || out_degree.is_signed(),
            JointDegreeDistribution::Barnes(_) => false,
        }
    }

    /// Truncated `(sum n pi, sum m pi)`.
    pub fn means(&self) -> (f64, f64) {
        match self {
            JointDegreeDistribution::Separated {
                in_degree,
                out_degree,
            } => (
                in_degree.truncated_moment(1) * out_degree.total_mass(),
                out_degree.truncated_moment(1) * in_degree.total_mass(),
            ),
            JointDegreeDistribution::Barnes(_) => {
                let (mut zin, mut zout) = (0.0, 0.0);
                self.for_each_cell(|n, m, w| {
                    zin += n as f64 * w;
                    zout += m as f64 * w;
                });
                (zin, zout)
            }
        }
    }

    /// `sum (n - m) pi_{nm}` on the truncated support; zero when in and out
    /// laws have equal means.
    pub fn balance(&self) -> f64 {
        let (zin, zout) = self.means();
        zin - zout
    }

    /// Visits every cell `(n, m)` with `1 <= n, m <= k_max`.
    pub fn for_each_cell(&self, mut f: impl FnMut(usize, usize, f64)) {
        let k = self.k_max();
        for n in 0..=k {
            for m in 0..=k {
                let w = self.weight(n, m);
                if w != 0.0 {
                    f(n, m, w);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::riemann_zeta;

    fn z(s: f64) -> f64 {
        riemann_zeta(s).unwrap().value
    }

    #[test]
    fn zeta_lgraph_weights() {
        let (p, q) =
            make_bipartite_lgraph(&LSeries::zeta(), 3.0, &LSeries::zeta(), 3.0, 1000).unwrap();
        for k in [1usize, 2, 7, 1000] {
            assert!((p.weight(k) - (k as f64).powi(-3) / z(3.0)).abs() < 1e-15);
        }
        assert_eq!(p.weight(0), 0.0);
        assert!(!p.is_signed() && !q.is_signed());
        assert!((1.0 - p.total_mass()).abs() <= p.tail_mass());
    }

    #[test]
    fn mobius_lgraph_is_signed() {
        let d = DegreeDistribution::lgraph(&LSeries::mobius(), 3.0, 100).unwrap();
        assert!(d.is_signed());
        assert!(d.weight(2) < 0.0);
        assert!((1.0 - d.total_mass()).abs() <= d.tail_mass());
    }

    #[test]
    fn hurwitz_zero_shift_is_zeta() {
        let h = DegreeDistribution::lgraph(&LSeries::hurwitz(0.0).unwrap(), 3.0, 500).unwrap();
        let zd = DegreeDistribution::lgraph(&LSeries::zeta(), 3.0, 500).unwrap();
        assert_eq!(h.weights(), zd.weights());
        assert_eq!(mean_degree(&h).unwrap(), mean_degree(&zd).unwrap());
    }

    #[test]
    fn lgraph_domain() {
        assert!(matches!(
            DegreeDistribution::lgraph(&LSeries::zeta(), 1.0, 10),
            Err(Error::Domain { .. })
        ));
        assert!(DegreeDistribution::lgraph(&LSeries::zeta(), 2.0, 0).is_err());
    }

    #[test]
    fn mean_degree_values() {
        let d = DegreeDistribution::lgraph(&LSeries::zeta(), 3.0, 10).unwrap();
        let m = mean_degree(&d).unwrap();
        assert!((m - z(2.0) / z(3.0)).abs() < 1e-14);
        assert!((m - 1.36843).abs() < 1e-5);
        let steep = DegreeDistribution::lgraph(&LSeries::zeta(), 60.0, 10).unwrap();
        assert!((mean_degree(&steep).unwrap() - 1.0).abs() < 1e-15);
        let shallow = DegreeDistribution::lgraph(&LSeries::zeta(), 1.8, 10).unwrap();
        assert!(matches!(mean_degree(&shallow), Err(Error::Domain { .. })));
    }

    #[test]
    fn moments_match_truncated_sums() {
        for l in [LSeries::zeta(), LSeries::liouville(), LSeries::mobius()] {
            let alpha = 5.5;
            let k = 20_000;
            let d = DegreeDistribution::lgraph(&l, alpha, k).unwrap();
            for j in [1u32, 2] {
                let tail = l.tail_after(alpha - j as f64, k) / d.normalizer().abs();
                let exact = d.moment(j).unwrap();
                assert!((exact - d.truncated_moment(j)).abs() <= tail + 1e-12);
            }
        }
    }

    #[test]
    fn generating_functions() {
        let d = DegreeDistribution::lgraph(&LSeries::zeta(), 3.0, 5000).unwrap();
        let g0 = gf_g0(&d, 1.0).unwrap();
        assert!((g0.value - 1.0).abs() <= d.tail_mass());
        assert!(!g0.formal);
        assert_eq!(gf_g0(&d, 0.0).unwrap().value, 0.0);
        assert!((gf_g1(&d, 1.0).unwrap().value - 1.0).abs() < 1e-14);
        assert!(gf_g0(&d, 1.5).is_err());

        let mu = DegreeDistribution::lgraph(&LSeries::mobius(), 3.0, 50).unwrap();
        assert!(gf_g0(&mu, 0.5).unwrap().formal);
    }

    #[test]
    fn g1_is_normalized_derivative() {
        let d = DegreeDistribution::from_weights("mix", vec![0.0, 0.5, 0.25, 0.25]).unwrap();
        let x: f64 = 0.3;
        let expected = (0.5 + 2.0 * 0.25 * x + 3.0 * 0.25 * x * x) / 1.75;
        assert!((gf_g1(&d, x).unwrap().value - expected).abs() < 1e-15);
    }

    #[test]
    fn kmax_examples() {
        assert_eq!(kmax_rule(1_000_000, 3.0).unwrap(), 1000);
        assert_eq!(kmax_rule(1_000_000, 2.0).unwrap(), 1_000_000);
        assert_eq!(kmax_rule(256, 5.0).unwrap(), 4);
        assert_eq!(kmax_rule(200_000, 3.1).unwrap(), 335);
        assert!(kmax_rule(10, 1.0).is_err());
    }

    #[test]
    fn separated_moments() {
        let p = DegreeDistribution::lgraph(&LSeries::zeta(), 3.0, 200_000).unwrap();
        let q = DegreeDistribution::lgraph(&LSeries::zeta(), 4.0, 200_000).unwrap();
        let pi = make_directed_separated(p.clone(), q.clone());
        let (zin, zout) = pi.means();
        let tin = LSeries::zeta().tail_after(2.0, 200_000) / z(3.0);
        assert!((zin - z(2.0) / z(3.0)).abs() <= tin + 1e-9);
        assert!((zout - z(3.0) / z(4.0)).abs() <= 1e-9);
        // unequal exponents leave the in/out means unequal
        assert!(pi.balance() > 0.2);
    }

    #[test]
    fn separated_symmetric_is_balanced() {
        let p = DegreeDistribution::lgraph(&LSeries::zeta(), 3.5, 1000).unwrap();
        let pi = make_directed_separated(p.clone(), p);
        assert!(pi.balance().abs() <= 1e-12);
        let (a, b) = pi.means();
        assert_eq!(a, b);
    }

    #[test]
    fn hurwitz_separated_cells() {
        let k0 = 1.0;
        let h = LSeries::hurwitz(k0).unwrap();
        let p = DegreeDistribution::lgraph(&h, 2.5, 100).unwrap();
        let q = DegreeDistribution::lgraph(&h, 3.0, 100).unwrap();
        let zh = |s: f64| crate::lseries::hurwitz_zeta(s, k0).unwrap().value;
        let pi = make_directed_separated(p, q);
        let (n, m) = (3usize, 5usize);
        let expected =
            (n as f64 + k0).powf(-2.5) * (m as f64 + k0).powf(-3.0) / (zh(2.5) * zh(3.0));
        assert!((pi.weight(n, m) - expected).abs() < 1e-16);
    }

    #[test]
    fn barnes_joint_is_normalized_and_balanced() {
        let pi = make_directed_barnes(5.0, 1.0, 1.0, 1000).unwrap();
        let mut total = 0.0;
        pi.for_each_cell(|_, _, w| total += w);
        assert!((total - 1.0).abs() < 1e-5);
        assert!(pi.balance().abs() < 1e-12);
        assert_eq!(pi.weight(0, 3), 0.0);
        assert!(make_directed_barnes(2.0, 1.0, 1.0, 10).is_err());
    }

    #[test]
    fn manifest_serializes() {
        let d = DegreeDistribution::lgraph(&LSeries::liouville(), 3.5, 64).unwrap();
        let json = serde_json::to_string(&d.manifest()).unwrap();
        let back: DistributionManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d.manifest());
        assert!(json.contains("\"family\":\"liouville\""));
    }

    #[test]
    fn from_weights_validation() {
        assert!(DegreeDistribution::from_weights("bad", vec![0.5, 0.6]).is_err());
        let d = DegreeDistribution::from_weights("ok", vec![0.5, 0.5]).unwrap();
        assert_eq!(d.k_max(), 1);
        assert_eq!(DegreeDistribution::point_mass(3).truncated_moment(2), 9.0);
    }
}
