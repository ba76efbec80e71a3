//! Real-argument evaluation of Dirichlet series with explicit truncation
//! bounds.
//!
//! Zeta-type series are summed directly up to a cutoff and the remainder is
//! handled by Euler–Maclaurin. For `f(x) = (x + k0)^{-s}` every derivative is
//! of constant sign, so the Euler–Maclaurin expansion envelops the remainder
//! and the first omitted correction is a rigorous bound. Series without a
//! closed form are summed term by term and bounded by `C N^{1+theta-s} / (s-1-theta)`
//! for coefficients `|a_n| <= C n^theta`.
//!
//! Reported bounds cover truncation only, not floating-point rounding.

use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{ArithmeticFunction, Coefficient, Sieve};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Target truncation error.
    pub tolerance: f64,
    /// Number of directly summed terms before the Euler–Maclaurin tail.
    pub em_cutoff: usize,
    /// Maximum Euler–Maclaurin correction order.
    pub em_order: usize,
    /// Hard cap for plain partial sums.
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tolerance: DEFAULT_TOLERANCE,
            em_cutoff: 10,
            em_order: 14,
            max_terms: 10_000_000,
        }
    }
}

// B_{2j} / (2j)! for j = 1..=15
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

fn bernoulli_over_factorial(j: usize) -> f64 {
    let (num, den) = BERNOULLI[j - 1];
    let fact: f64 = (1..=2 * j).map(|k| k as f64).product();
    num / den / fact
}

/// `sum_{k >= 1} (k + k0)^{-s}` for `s > 1`, `k0 > -1`.
fn shifted_power_sum(s: f64, k0: f64, opts: &EvalOptions) -> EvalResult {
    let order = opts.em_order.clamp(1, BERNOULLI.len() - 1);
    let mut cutoff = opts.em_cutoff.max(2);
    loop {
        let direct: f64 = (1..cutoff).map(|k| (k as f64 + k0).powf(-s)).sum();
        let a = cutoff as f64 + k0;
        let mut tail = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
        // rising factorial (s)_{2j-1} and a^{-s-2j+1}
        let mut rising = s;
        let mut power = a.powf(-s - 1.0);
        let mut bound = f64::INFINITY;
        let mut used = 0;
        let mut previous = f64::INFINITY;
        // correction terms are cheap: run them well past the tolerance
        let fine = opts.tolerance * 1e-4;
        for j in 1..=order + 1 {
            let term = bernoulli_over_factorial(j) * rising * power;
            if term.abs() <= fine || j == order + 1 || term.abs() > previous {
                bound = term.abs();
                break;
            }
            tail += term;
            used = j;
            previous = term.abs();
            rising *= (s + 2.0 * j as f64 - 1.0) * (s + 2.0 * j as f64);
            power /= a * a;
        }
        if bound <= opts.tolerance || cutoff >= 1 << 20 {
            return EvalResult {
                value: direct + tail,
                tail_bound: bound,
                terms_used: cutoff - 1 + used,
            };
        }
        cutoff *= 2;
    }
}

pub fn riemann_zeta(s: f64) -> Result<EvalResult> {
    riemann_zeta_with(s, &EvalOptions::default())
}

/// Riemann zeta for real `s > 1`.
pub fn riemann_zeta_with(s: f64, opts: &EvalOptions) -> Result<EvalResult> {
    if !(s > 1.0) {
        return Err(Error::domain("riemann_zeta", s, 1.0));
    }
    Ok(shifted_power_sum(s, 0.0, opts))
}

pub fn hurwitz_zeta(s: f64, k0: f64) -> Result<EvalResult> {
    hurwitz_zeta_with(s, k0, &EvalOptions::default())
}

/// `zeta_H(s, k0) = sum_{k >= 1} (k + k0)^{-s}`; note the sum starts at
/// `k = 1`, so `zeta_H(s, 0) = zeta(s)`.
pub fn hurwitz_zeta_with(s: f64, k0: f64, opts: &EvalOptions) -> Result<EvalResult> {
    if !(s > 1.0) {
        return Err(Error::domain("hurwitz_zeta", s, 1.0));
    }
    if !(k0 > -1.0) || !k0.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "hurwitz_zeta requires k0 > -1, got {k0}"
        )));
    }
    Ok(shifted_power_sum(s, k0, opts))
}

/// Equal-parameter Barnes zeta `sum_{m,n >= 0} (w + m a + n a)^{-s}`.
///
/// Collapsing the anti-diagonals gives `sum_t (t + 1) (w + t a)^{-s}`, and
/// writing `t + 1 = ((w + t a) + (a - w)) / a` splits that into two shifted
/// power sums with `q = w / a`.
pub fn barnes_zeta(s: f64, w: f64, a: f64) -> Result<EvalResult> {
    if !(s > 2.0) {
        return Err(Error::domain("barnes_zeta", s, 2.0));
    }
    if !(w > 0.0) || !(a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "barnes_zeta requires w > 0 and a > 0, got w = {w}, a = {a}"
        )));
    }
    let opts = EvalOptions::default();
    let q = w / a;
    // sum_{t >= 0} (t + q)^{-s} = q^{-s} + zeta_H(s, q)
    let full = |s: f64| {
        let h = shifted_power_sum(s, q, &opts);
        EvalResult {
            value: q.powf(-s) + h.value,
            ..h
        }
    };
    let first = full(s - 1.0);
    let second = full(s);
    let c1 = a.powf(-s);
    let c2 = (a - w) * a.powf(-s - 1.0);
    Ok(EvalResult {
        value: c1 * first.value + c2 * second.value,
        tail_bound: c1 * first.tail_bound + c2.abs() * second.tail_bound,
        terms_used: first.terms_used + second.terms_used,
    })
}

/// Coefficient growth bound `|a_n| <= constant * n^growth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientBound {
    pub constant: f64,
    pub growth: f64,
}

impl CoefficientBound {
    pub const UNIT: CoefficientBound = CoefficientBound {
        constant: 1.0,
        growth: 0.0,
    };

    /// Bound on `sum_{n > terms} |a_n| n^{-s}`.
    pub fn tail(&self, s: f64, terms: usize) -> f64 {
        let e = s - 1.0 - self.growth;
        if e <= 0.0 {
            return f64::INFINITY;
        }
        self.constant * (terms.max(1) as f64).powf(-e) / e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "closed_form")]
pub enum ClosedForm {
    RiemannZeta,
    /// `1 / zeta(s)`, the Möbius series.
    InverseZeta,
    /// `zeta(2s) / zeta(s)`, the Liouville series.
    Zeta2sOverZetas,
    Hurwitz {
        k0: f64,
    },
    None,
}

/// Serializable identity of a series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    Zeta,
    Mobius,
    Liouville,
    Hurwitz { k0: f64 },
    Custom { name: String },
}

impl Family {
    /// Parses a family tag; `k0` is only consulted for `hurwitz`.
    pub fn parse(tag: &str, k0: Option<f64>) -> Result<Family> {
        match tag.to_ascii_lowercase().as_str() {
            "zeta" | "riemann" => Ok(Family::Zeta),
            "mobius" | "moebius" | "mu" => Ok(Family::Mobius),
            "liouville" | "lambda" => Ok(Family::Liouville),
            "hurwitz" => Ok(Family::Hurwitz {
                k0: k0.unwrap_or(0.0),
            }),
            other => Err(Error::Parse(format!(
                "unknown family '{other}' (expected zeta, mobius, liouville or hurwitz)"
            ))),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Family::Zeta => "zeta".into(),
            Family::Mobius => "mobius".into(),
            Family::Liouville => "liouville".into(),
            Family::Hurwitz { k0 } => format!("hurwitz(k0={k0})"),
            Family::Custom { name } => name.clone(),
        }
    }

    pub fn series(&self) -> Result<LSeries> {
        match self {
            Family::Zeta => Ok(LSeries::zeta()),
            Family::Mobius => Ok(LSeries::mobius()),
            Family::Liouville => Ok(LSeries::liouville()),
            Family::Hurwitz { k0 } => LSeries::hurwitz(*k0),
            Family::Custom { name } => Err(Error::Parse(format!(
                "custom series '{name}' needs an explicit coefficient table"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Zeta,
    Mobius,
    Liouville,
    Hurwitz(f64),
    Table(Arc<Vec<f64>>),
}

/// A Dirichlet series `L(s) = sum a_n n^{-s}` (or the shifted Hurwitz sum)
/// restricted to real `s` above its abscissa of absolute convergence.
#[derive(Debug, Clone)]
pub struct LSeries {
    name: String,
    kind: Kind,
    sigma_a: f64,
    bound: Option<CoefficientBound>,
    options: EvalOptions,
}

impl LSeries {
    pub fn zeta() -> Self {
        Self::builtin("zeta", Kind::Zeta)
    }

    pub fn mobius() -> Self {
        Self::builtin("mobius", Kind::Mobius)
    }

    pub fn liouville() -> Self {
        Self::builtin("liouville", Kind::Liouville)
    }

    pub fn hurwitz(k0: f64) -> Result<Self> {
        if !(k0 > -1.0) || !k0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "hurwitz series requires k0 > -1, got {k0}"
            )));
        }
        Ok(Self::builtin("hurwitz", Kind::Hurwitz(k0)))
    }

    fn builtin(name: &str, kind: Kind) -> Self {
        LSeries {
            name: name.to_string(),
            kind,
            sigma_a: 1.0,
            bound: Some(CoefficientBound::UNIT),
            options: EvalOptions::default(),
        }
    }

    /// Series with tabulated coefficients and no closed form. Evaluation
    /// needs `bound`; terms beyond the table are covered by it.
    pub fn from_coefficients<T: Coefficient + ToPrimitive>(
        f: &ArithmeticFunction<T>,
        sigma_a: f64,
        bound: Option<CoefficientBound>,
    ) -> Self {
        let table: Vec<f64> = f
            .values()
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect();
        LSeries {
            name: f.name().to_string(),
            kind: Kind::Table(Arc::new(table)),
            sigma_a,
            bound,
            options: EvalOptions::default(),
        }
    }

    pub fn with_options(mut self, options: EvalOptions) -> Self {
        self.options = options;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sigma_a(&self) -> f64 {
        self.sigma_a
    }

    pub fn coefficient_bound(&self) -> Option<CoefficientBound> {
        self.bound
    }

    pub fn options(&self) -> &EvalOptions {
        &self.options
    }

    pub fn family(&self) -> Family {
        match &self.kind {
            Kind::Zeta => Family::Zeta,
            Kind::Mobius => Family::Mobius,
            Kind::Liouville => Family::Liouville,
            Kind::Hurwitz(k0) => Family::Hurwitz { k0: *k0 },
            Kind::Table(_) => Family::Custom {
                name: self.name.clone(),
            },
        }
    }

    pub fn closed_form(&self) -> ClosedForm {
        match &self.kind {
            Kind::Zeta => ClosedForm::RiemannZeta,
            Kind::Mobius => ClosedForm::InverseZeta,
            Kind::Liouville => ClosedForm::Zeta2sOverZetas,
            Kind::Hurwitz(k0) => ClosedForm::Hurwitz { k0: *k0 },
            Kind::Table(_) => ClosedForm::None,
        }
    }

    /// True when some coefficient is negative (the series then only defines a
    /// formal, signed degree law).
    pub fn is_signed(&self) -> bool {
        match &self.kind {
            Kind::Zeta | Kind::Hurwitz(_) => false,
            Kind::Mobius | Kind::Liouville => true,
            Kind::Table(t) => t.iter().any(|&v| v < 0.0),
        }
    }

    /// True when the terms are of Dirichlet form `a_n n^{-s}`.
    pub fn is_dirichlet(&self) -> bool {
        !matches!(self.kind, Kind::Hurwitz(_))
    }

    pub(crate) fn check_domain(&self, s: f64) -> Result<()> {
        if s > self.sigma_a && s.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(
                format!("L-series '{}'", self.name),
                s,
                self.sigma_a,
            ))
        }
    }

    /// `L(s)`; uses the closed form when one is known.
    pub fn eval(&self, s: f64) -> Result<EvalResult> {
        self.check_domain(s)?;
        let opts = &self.options;
        match &self.kind {
            Kind::Zeta => riemann_zeta_with(s, opts),
            Kind::Hurwitz(k0) => hurwitz_zeta_with(s, *k0, opts),
            Kind::Mobius => {
                let z = riemann_zeta_with(s, opts)?;
                let (value, tail_bound) = quotient(1.0, 0.0, z.value, z.tail_bound);
                Ok(EvalResult {
                    value,
                    tail_bound,
                    terms_used: z.terms_used,
                })
            }
            Kind::Liouville => {
                let num = riemann_zeta_with(2.0 * s, opts)?;
                let den = riemann_zeta_with(s, opts)?;
                let (value, tail_bound) =
                    quotient(num.value, num.tail_bound, den.value, den.tail_bound);
                Ok(EvalResult {
                    value,
                    tail_bound,
                    terms_used: num.terms_used + den.terms_used,
                })
            }
            Kind::Table(table) => {
                let bound = self
                    .bound
                    .ok_or_else(|| Error::UnboundedCoefficients(self.name.clone()))?;
                let needed = terms_for_tolerance(&bound, s, opts.tolerance, opts.max_terms);
                let n = needed.min(table.len());
                self.partial_sum(s, n)
            }
        }
    }

    /// Plain partial sum `sum_{n <= terms}` with the coefficient tail bound;
    /// the independent route to [`LSeries::eval`] for closed-form series.
    pub fn partial_sum(&self, s: f64, terms: usize) -> Result<EvalResult> {
        self.check_domain(s)?;
        let bound = self
            .bound
            .ok_or_else(|| Error::UnboundedCoefficients(self.name.clone()))?;
        if let Kind::Table(t) = &self.kind {
            if terms > t.len() {
                return Err(Error::Range {
                    requested: terms,
                    available: t.len(),
                });
            }
        }
        let value: f64 = self.terms(s, terms).iter().rev().sum();
        let tail_bound = match &self.kind {
            Kind::Hurwitz(_) => self.tail_after(s, terms),
            _ => bound.tail(s, terms),
        };
        Ok(EvalResult {
            value,
            tail_bound,
            terms_used: terms,
        })
    }

    /// Bound on `sum_{n > terms} |term_n(s)|`; infinite when no coefficient
    /// bound is known or the sum diverges.
    pub fn tail_after(&self, s: f64, terms: usize) -> f64 {
        match (&self.kind, self.bound) {
            (Kind::Hurwitz(k0), _) => {
                if s <= 1.0 {
                    f64::INFINITY
                } else {
                    (terms as f64 + k0).powf(1.0 - s) / (s - 1.0)
                }
            }
            (_, Some(b)) => b.tail(s, terms),
            (_, None) => f64::INFINITY,
        }
    }

    /// The summands `a_n n^{-s}` (Hurwitz: `(n + k0)^{-s}`) for `n = 1..=count`.
    /// Table series are padded with zeros past their range.
    pub fn terms(&self, s: f64, count: usize) -> Vec<f64> {
        let pow = |n: usize| (n as f64).powf(-s);
        match &self.kind {
            Kind::Zeta => (1..=count).map(pow).collect(),
            Kind::Hurwitz(k0) => (1..=count).map(|n| (n as f64 + k0).powf(-s)).collect(),
            Kind::Mobius => {
                let sieve = Sieve::new(count);
                (1..=count)
                    .map(|n| f64::from(sieve.mobius(n)) * pow(n))
                    .collect()
            }
            Kind::Liouville => {
                let sieve = Sieve::new(count);
                (1..=count)
                    .map(|n| f64::from(sieve.liouville(n)) * pow(n))
                    .collect()
            }
            Kind::Table(t) => (1..=count)
                .map(|n| t.get(n - 1).map_or(0.0, |a| a * pow(n)))
                .collect(),
        }
    }

    /// `sum_n n^j term_n(s)`, the j-th power moment of the unnormalized
    /// degree weights. For Dirichlet series this is `L(s - j)`; for the
    /// Hurwitz family it expands `n = (n + k0) - k0` binomially.
    pub fn power_moment(&self, s: f64, j: u32) -> Result<EvalResult> {
        match &self.kind {
            Kind::Hurwitz(k0) => {
                let mut value = 0.0;
                let mut tail_bound = 0.0;
                let mut terms_used = 0;
                for i in 0..=j {
                    let c = binomial(j, i) * (-k0).powi((j - i) as i32);
                    let arg = s - f64::from(i);
                    self.check_domain(arg)?;
                    let z = hurwitz_zeta_with(arg, *k0, &self.options)?;
                    value += c * z.value;
                    tail_bound += c.abs() * z.tail_bound;
                    terms_used += z.terms_used;
                }
                Ok(EvalResult {
                    value,
                    tail_bound,
                    terms_used,
                })
            }
            _ => self.eval(s - f64::from(j)),
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `a / b` and a bound on its error given errors on `a` and `b`.
pub(crate) fn quotient(a: f64, ea: f64, b: f64, eb: f64) -> (f64, f64) {
    let value = a / b;
    let margin = b.abs() - eb;
    let err = if margin > 0.0 {
        (a.abs() * eb + b.abs() * ea) / (b.abs() * margin)
    } else {
        f64::INFINITY
    };
    (value, err)
}

fn terms_for_tolerance(bound: &CoefficientBound, s: f64, tol: f64, cap: usize) -> usize {
    let e = s - 1.0 - bound.growth;
    if e <= 0.0 {
        return cap;
    }
    let n = (bound.constant / (tol * e)).powf(1.0 / e);
    if n.is_finite() && n < cap as f64 {
        (n.ceil() as usize).max(1)
    } else {
        cap
    }
}

/// `L(s)` for a series; the free-function form of [`LSeries::eval`].
pub fn lseries_eval(l: &LSeries, s: f64) -> Result<EvalResult> {
    l.eval(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Independent oracle: direct summation of `count` terms plus the
    /// integral bracket `[int_{N+1}^inf, int_N^inf]` for the tail.
    fn direct_zeta(s: f64, k0: f64, count: usize) -> (f64, f64) {
        let head: f64 = (1..=count).rev().map(|k| (k as f64 + k0).powf(-s)).sum();
        let lo = (count as f64 + 1.0 + k0).powf(1.0 - s) / (s - 1.0);
        let hi = (count as f64 + k0).powf(1.0 - s) / (s - 1.0);
        (head + 0.5 * (lo + hi), 0.5 * (hi - lo))
    }

    #[test]
    fn zeta_even_closed_forms() {
        let z2 = riemann_zeta(2.0).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() < 1e-14);
        assert!(z2.tail_bound <= 1e-12);
        let z4 = riemann_zeta(4.0).unwrap();
        assert!((z4.value - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn zeta_three_against_direct_summation() {
        let (oracle, half_width) = direct_zeta(3.0, 0.0, 2_000_000);
        let z3 = riemann_zeta(3.0).unwrap();
        assert!((z3.value - oracle).abs() <= half_width + 1e-13);
        assert!((z3.value - 1.202_056_903_159_594).abs() < 1e-14);
    }

    #[test]
    fn zeta_rejects_abscissa() {
        assert!(matches!(riemann_zeta(1.0), Err(Error::Domain { .. })));
        assert!(riemann_zeta(0.5).is_err());
        assert!(riemann_zeta(f64::NAN).is_err());
    }

    #[test]
    fn zeta_near_pole_is_bounded() {
        let z = riemann_zeta(1.001).unwrap();
        // zeta(s) = 1/(s-1) + gamma + O(s-1)
        assert!((z.value - (1000.0 + 0.577_215_664_901_532_9)).abs() < 1e-2);
        assert!(z.tail_bound <= 1e-12);
    }

    #[test]
    fn hurwitz_reductions() {
        for s in [1.5, 2.0, 3.3, 7.0] {
            let h = hurwitz_zeta(s, 0.0).unwrap();
            assert_eq!(h.value, riemann_zeta(s).unwrap().value);
        }
        let h = hurwitz_zeta(2.0, 1.0).unwrap();
        assert!((h.value - (PI * PI / 6.0 - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn hurwitz_against_direct_summation() {
        let (oracle, half_width) = direct_zeta(2.5, 0.5, 2_000_000);
        let h = hurwitz_zeta(2.5, 0.5).unwrap();
        assert!((h.value - oracle).abs() <= half_width + 1e-13);
    }

    #[test]
    fn hurwitz_domain() {
        assert!(hurwitz_zeta(1.0, 0.0).is_err());
        assert!(hurwitz_zeta(2.0, -1.0).is_err());
        assert!(hurwitz_zeta(2.0, -0.5).is_ok());
    }

    #[test]
    fn barnes_diagonal_identities() {
        // sum_{m,n} (1 + m + n)^{-3} = zeta(2), (.)^{-4} = zeta(3)
        let b3 = barnes_zeta(3.0, 1.0, 1.0).unwrap();
        assert!((b3.value - riemann_zeta(2.0).unwrap().value).abs() < 1e-12);
        let b4 = barnes_zeta(4.0, 1.0, 1.0).unwrap();
        assert!((b4.value - riemann_zeta(3.0).unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn barnes_against_brute_double_sum() {
        let (s, w, a) = (4.5, 0.7, 1.3);
        let n = 3000;
        let mut brute = 0.0;
        for m in (0..n).rev() {
            for k in (0..n).rev() {
                brute += (w + (m + k) as f64 * a).powf(-s);
            }
        }
        let b = barnes_zeta(s, w, a).unwrap();
        // the neglected region is bounded by 2 * int_{n a}^inf (t / a) t^{-s} dt / a
        let neglected = 2.0 * (n as f64 * a).powf(2.0 - s) / (a * a * (s - 2.0));
        assert!(
            b.value >= brute && b.value - brute <= neglected,
            "{} vs {}",
            b.value,
            brute
        );
    }

    #[test]
    fn barnes_large_spacing_limit() {
        let b = barnes_zeta(3.0, 2.0, 1e6).unwrap();
        assert!((b.value - 2f64.powf(-3.0)).abs() < 1e-6);
        assert!(barnes_zeta(2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn closed_forms_of_signed_series() {
        let mu = LSeries::mobius().eval(2.0).unwrap();
        assert!((mu.value - 6.0 / (PI * PI)).abs() < 1e-13);
        assert!((mu.value - 0.607_927).abs() < 1e-6);
        let lam = LSeries::liouville().eval(3.0).unwrap();
        let expected = riemann_zeta(6.0).unwrap().value / riemann_zeta(3.0).unwrap().value;
        assert!((lam.value - expected).abs() < 1e-14);
    }

    #[test]
    fn unit_table_matches_zeta() {
        let u = ArithmeticFunction::unit(1000);
        let l = LSeries::from_coefficients(&u, 1.0, Some(CoefficientBound::UNIT));
        let r = l.eval(2.0).unwrap();
        assert!((r.value - PI * PI / 6.0).abs() <= r.tail_bound + 1e-12);
        assert_eq!(r.terms_used, 1000);
        let unbounded = LSeries::from_coefficients(&u, 1.0, None);
        assert!(matches!(
            unbounded.eval(2.0),
            Err(Error::UnboundedCoefficients(_))
        ));
        assert!(matches!(l.eval(1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn partial_sums_within_tail_bounds() {
        for l in [LSeries::mobius(), LSeries::liouville(), LSeries::zeta()] {
            for s in [2.0, 3.0, 4.0] {
                let closed = l.eval(s).unwrap();
                let partial = l.partial_sum(s, 20_000).unwrap();
                assert!(
                    (closed.value - partial.value).abs()
                        <= partial.tail_bound + closed.tail_bound + 1e-13,
                    "{} at {s}",
                    l.name()
                );
            }
        }
    }

    #[test]
    fn hurwitz_power_moments() {
        let l = LSeries::hurwitz(0.5).unwrap();
        let s = 5.0;
        let terms = l.terms(s, 200_000);
        let m1: f64 = terms
            .iter()
            .enumerate()
            .rev()
            .map(|(i, t)| (i + 1) as f64 * t)
            .sum();
        let m2: f64 = terms
            .iter()
            .enumerate()
            .rev()
            .map(|(i, t)| ((i + 1) as f64).powi(2) * t)
            .sum();
        assert!((l.power_moment(s, 1).unwrap().value - m1).abs() < 1e-9);
        assert!((l.power_moment(s, 2).unwrap().value - m2).abs() < 1e-6);
    }

    #[test]
    fn zeta_is_decreasing() {
        let mut last = f64::INFINITY;
        for i in 1..200 {
            let s = 1.0 + i as f64 * 0.05;
            let v = riemann_zeta(s).unwrap().value;
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn family_round_trip() {
        for tag in ["zeta", "mobius", "liouville"] {
            let f = Family::parse(tag, None).unwrap();
            assert_eq!(f.tag(), tag);
            assert_eq!(f.series().unwrap().family(), f);
        }
        assert!(Family::parse("chi", None).is_err());
    }
}
