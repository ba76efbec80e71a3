//! Arithmetic functions and the Dirichlet ring.
//!
//! An [`ArithmeticFunction`] is a finite table `f(1), ..., f(N)` together with
//! a multiplicativity tag. Coefficients are generic so that the ring laws can
//! be checked in exact integer or rational arithmetic; floating point only
//! enters when a table is handed to an L-series.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default table length for arithmetic tables built by the library.
pub const DEFAULT_N_MAX: usize = 100_000;

/// Coefficient ring for arithmetic functions.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
{
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicativity {
    General,
    Multiplicative,
    CompletelyMultiplicative,
}

impl Multiplicativity {
    pub fn is_multiplicative(self) -> bool {
        !matches!(self, Multiplicativity::General)
    }
}

/// A coefficient table `f(1..=N)` with multiplicativity metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticFunction<T = i64> {
    name: String,
    kind: Multiplicativity,
    // values[n - 1] = f(n)
    values: Vec<T>,
}

/// Outcome of an exhaustive multiplicativity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicativityCheck {
    pub holds: bool,
    /// First pair `(m, n)` with `f(mn) != f(m) f(n)`.
    pub witness: Option<(usize, usize)>,
}

impl<T: Coefficient> ArithmeticFunction<T> {
    /// Builds a table and checks the invariants implied by `kind` over the
    /// whole range.
    pub fn new(name: impl Into<String>, kind: Multiplicativity, values: Vec<T>) -> Result<Self> {
        let f = Self::new_unchecked(name, kind, values);
        if kind != Multiplicativity::General {
            let check = verify_multiplicative(&f, f.len(), kind);
            if let Some((m, n)) = check.witness {
                return Err(Error::InvalidParameter(format!(
                    "{} tagged {:?} but f({}) != f({}) f({})",
                    f.name,
                    kind,
                    m * n,
                    m,
                    n
                )));
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        name: impl Into<String>,
        kind: Multiplicativity,
        values: Vec<T>,
    ) -> Self {
        ArithmeticFunction {
            name: name.into(),
            kind,
            values,
        }
    }

    pub fn from_fn(
        name: impl Into<String>,
        kind: Multiplicativity,
        n_max: usize,
        f: impl Fn(usize) -> T,
    ) -> Result<Self> {
        Self::new(name, kind, (1..=n_max).map(f).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Multiplicativity {
        self.kind
    }

    /// Largest `n` for which the table is defined.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&T> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// `f(n)`; panics outside `1..=len()`.
    pub fn at(&self, n: usize) -> &T {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn truncate(&self, n_max: usize) -> Result<Self> {
        if n_max > self.len() {
            return Err(Error::Range {
                requested: n_max,
                available: self.len(),
            });
        }
        Ok(Self::new_unchecked(
            self.name.clone(),
            self.kind,
            self.values[..n_max].to_vec(),
        ))
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> ArithmeticFunction<U> {
        ArithmeticFunction::new_unchecked(
            self.name.clone(),
            self.kind,
            self.values.iter().map(f).collect(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl<T: Coefficient + ToPrimitive> ArithmeticFunction<T> {
    pub fn to_f64(&self) -> ArithmeticFunction<f64> {
        self.map(|v| v.to_f64().unwrap_or(f64::NAN))
    }
}

impl ArithmeticFunction<i64> {
    /// `u(n) = 1`.
    pub fn unit(n_max: usize) -> Self {
        Self::new_unchecked(
            "unit",
            Multiplicativity::CompletelyMultiplicative,
            vec![1; n_max],
        )
    }

    /// Dirichlet identity: `e(1) = 1`, `e(n) = 0` otherwise.
    pub fn epsilon(n_max: usize) -> Self {
        let mut values = vec![0; n_max];
        if n_max > 0 {
            values[0] = 1;
        }
        Self::new_unchecked(
            "epsilon",
            Multiplicativity::CompletelyMultiplicative,
            values,
        )
    }

    /// `id(n) = n`.
    pub fn identity(n_max: usize) -> Self {
        Self::new_unchecked(
            "id",
            Multiplicativity::CompletelyMultiplicative,
            (1..=n_max as i64).collect(),
        )
    }

    pub fn mobius(n_max: usize) -> Self {
        let sieve = Sieve::new(n_max);
        Self::new_unchecked(
            "mobius",
            Multiplicativity::Multiplicative,
            (1..=n_max).map(|n| i64::from(sieve.mobius(n))).collect(),
        )
    }

    pub fn liouville(n_max: usize) -> Self {
        let sieve = Sieve::new(n_max);
        Self::new_unchecked(
            "liouville",
            Multiplicativity::CompletelyMultiplicative,
            (1..=n_max).map(|n| i64::from(sieve.liouville(n))).collect(),
        )
    }

    pub fn euler_phi(n_max: usize) -> Self {
        let sieve = Sieve::new(n_max);
        Self::new_unchecked(
            "phi",
            Multiplicativity::Multiplicative,
            (1..=n_max).map(|n| sieve.euler_phi(n) as i64).collect(),
        )
    }

    pub fn divisor_count(n_max: usize) -> Self {
        let mut values = vec![0i64; n_max];
        for d in 1..=n_max {
            for m in (d..=n_max).step_by(d) {
                values[m - 1] += 1;
            }
        }
        Self::new_unchecked("tau", Multiplicativity::Multiplicative, values)
    }
}

/// Smallest-prime-factor sieve; factorizes any `n <= n_max` in `O(log n)`.
#[derive(Debug, Clone)]
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(n_max: usize) -> Self {
        let mut spf = vec![0u32; n_max + 1];
        let mut primes: Vec<usize> = Vec::new();
        for i in 2..=n_max {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i);
            }
            for &p in &primes {
                if p > spf[i] as usize || i * p > n_max {
                    break;
                }
                spf[i * p] = p as u32;
            }
        }
        Sieve { spf }
    }

    pub fn n_max(&self) -> usize {
        self.spf.len() - 1
    }

    /// Prime factorization as `(p, exponent)` pairs in increasing `p`.
    pub fn factorize(&self, mut n: usize) -> Vec<(usize, u32)> {
        assert!(n >= 1 && n <= self.n_max(), "n = {n} outside sieve range");
        let mut out: Vec<(usize, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    pub fn mobius(&self, n: usize) -> i8 {
        mobius_from_factors(&self.factorize(n))
    }

    pub fn liouville(&self, n: usize) -> i8 {
        liouville_from_factors(&self.factorize(n))
    }

    pub fn euler_phi(&self, n: usize) -> u64 {
        phi_from_factors(n as u64, &self.factorize(n))
    }
}

fn trial_factorize(mut n: u64) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p as usize, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as usize, 1));
    }
    out
}

fn mobius_from_factors(factors: &[(usize, u32)]) -> i8 {
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn liouville_from_factors(factors: &[(usize, u32)]) -> i8 {
    let omega: u32 = factors.iter().map(|&(_, e)| e).sum();
    if omega.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn phi_from_factors(n: u64, factors: &[(usize, u32)]) -> u64 {
    factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p as u64 * (p as u64 - 1))
}

/// Möbius function: `(-1)^k` on products of `k` distinct primes, 0 when a
/// square divides `n`.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(mobius_from_factors(&trial_factorize(n)))
}

/// Liouville function `(-1)^Omega(n)`.
pub fn liouville(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(liouville_from_factors(&trial_factorize(n)))
}

/// Euler totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(phi_from_factors(n, &trial_factorize(n)))
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Dirichlet convolution `(f * g)(n) = sum_{d | n} f(d) g(n / d)` for
/// `n <= n_max`, by a divisor sieve in `O(N log N)`.
pub fn dirichlet_convolve<T: Coefficient>(
    f: &ArithmeticFunction<T>,
    g: &ArithmeticFunction<T>,
    n_max: usize,
) -> Result<ArithmeticFunction<T>> {
    let available = f.len().min(g.len());
    if n_max > available {
        return Err(Error::Range {
            requested: n_max,
            available,
        });
    }
    let mut h = vec![T::zero(); n_max];
    for d in 1..=n_max {
        let fd = f.at(d);
        if fd.is_zero() {
            continue;
        }
        for k in 1..=n_max / d {
            let slot = &mut h[d * k - 1];
            *slot = slot.clone() + fd.clone() * g.at(k).clone();
        }
    }
    let kind = if f.kind().is_multiplicative() && g.kind().is_multiplicative() {
        Multiplicativity::Multiplicative
    } else {
        Multiplicativity::General
    };
    Ok(ArithmeticFunction::new_unchecked(
        format!("({} * {})", f.name(), g.name()),
        kind,
        h,
    ))
}

/// Pointwise product `h(n) = f(n) g(n)`.
pub fn pointwise_product<T: Coefficient>(
    f: &ArithmeticFunction<T>,
    g: &ArithmeticFunction<T>,
) -> Result<ArithmeticFunction<T>> {
    if f.len() != g.len() {
        return Err(Error::Range {
            requested: f.len().max(g.len()),
            available: f.len().min(g.len()),
        });
    }
    use Multiplicativity::*;
    let kind = match (f.kind(), g.kind()) {
        (CompletelyMultiplicative, CompletelyMultiplicative) => CompletelyMultiplicative,
        (a, b) if a.is_multiplicative() && b.is_multiplicative() => Multiplicative,
        _ => General,
    };
    let values = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a.clone() * b.clone())
        .collect();
    Ok(ArithmeticFunction::new_unchecked(
        format!("({} . {})", f.name(), g.name()),
        kind,
        values,
    ))
}

/// Dirichlet inverse of a completely multiplicative function,
/// `f^{-1}(n) = mu(n) f(n)`.
pub fn dirichlet_inverse_cm<T: Coefficient>(
    f: &ArithmeticFunction<T>,
) -> Result<ArithmeticFunction<T>> {
    if f.kind() != Multiplicativity::CompletelyMultiplicative {
        return Err(Error::NotCompletelyMultiplicative(f.name().to_string()));
    }
    let sieve = Sieve::new(f.len());
    let values = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| match sieve.mobius(i + 1) {
            1 => v.clone(),
            -1 => -v.clone(),
            _ => T::zero(),
        })
        .collect();
    Ok(ArithmeticFunction::new_unchecked(
        format!("{}^-1", f.name()),
        Multiplicativity::Multiplicative,
        values,
    ))
}

/// Exhaustive check of `f(mn) = f(m) f(n)` for `mn <= n_max`, over coprime
/// pairs (`Multiplicative`) or all pairs (`CompletelyMultiplicative`).
/// Pairs are visited with `m <= n` in increasing `m`, then `n`.
pub fn verify_multiplicative<T: Coefficient>(
    f: &ArithmeticFunction<T>,
    n_max: usize,
    strength: Multiplicativity,
) -> MultiplicativityCheck {
    let n_max = n_max.min(f.len());
    let pass = MultiplicativityCheck {
        holds: true,
        witness: None,
    };
    if strength == Multiplicativity::General || n_max == 0 {
        return pass;
    }
    if !f.at(1).is_one() {
        return MultiplicativityCheck {
            holds: false,
            witness: Some((1, 1)),
        };
    }
    let complete = strength == Multiplicativity::CompletelyMultiplicative;
    let mut m = 2;
    while m * m <= n_max {
        for n in m..=n_max / m {
            if !complete && gcd(m, n) != 1 {
                continue;
            }
            if *f.at(m * n) != f.at(m).clone() * f.at(n).clone() {
                return MultiplicativityCheck {
                    holds: false,
                    witness: Some((m, n)),
                };
            }
        }
        m += 1;
    }
    pass
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_coprime_count(n: u64) -> u64 {
        (1..=n)
            .filter(|&k| gcd(k as usize, n as usize) == 1)
            .count() as u64
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(matches!(mobius(0), Err(Error::ZeroArgument)));
    }

    #[test]
    fn liouville_values() {
        assert_eq!(liouville(1).unwrap(), 1);
        assert_eq!(liouville(2).unwrap(), -1);
        assert_eq!(liouville(12).unwrap(), -1);
        assert!(liouville(0).is_err());
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(euler_phi(10).unwrap(), 4);
        assert!(euler_phi(0).is_err());
        for n in 1..300 {
            assert_eq!(euler_phi(n).unwrap(), brute_coprime_count(n), "n = {n}");
        }
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let sieve = Sieve::new(5000);
        for n in 1..=5000u64 {
            let i = n as usize;
            assert_eq!(sieve.mobius(i), mobius(n).unwrap());
            assert_eq!(sieve.liouville(i), liouville(n).unwrap());
            assert_eq!(sieve.euler_phi(i), euler_phi(n).unwrap());
        }
    }

    #[test]
    fn phi_is_mobius_times_id() {
        let n = 10_000;
        let mu = ArithmeticFunction::mobius(n);
        let id = ArithmeticFunction::identity(n);
        let phi = dirichlet_convolve(&mu, &id, n).unwrap();
        assert_eq!(phi.values(), ArithmeticFunction::euler_phi(n).values());
    }

    #[test]
    fn unit_times_mobius_is_epsilon() {
        let n = 10_000;
        let h = dirichlet_convolve(
            &ArithmeticFunction::unit(n),
            &ArithmeticFunction::mobius(n),
            n,
        )
        .unwrap();
        assert_eq!(h.values(), ArithmeticFunction::epsilon(n).values());
    }

    #[test]
    fn divisor_count_at_six() {
        let u = ArithmeticFunction::unit(12);
        let tau = dirichlet_convolve(&u, &u, 12).unwrap();
        assert_eq!(*tau.at(6), 4);
        assert_eq!(tau.kind(), Multiplicativity::Multiplicative);
        assert_eq!(tau.values(), ArithmeticFunction::divisor_count(12).values());
    }

    #[test]
    fn convolve_rejects_out_of_range() {
        let u = ArithmeticFunction::unit(10);
        let mu = ArithmeticFunction::mobius(20);
        assert!(matches!(
            dirichlet_convolve(&u, &mu, 15),
            Err(Error::Range {
                requested: 15,
                available: 10
            })
        ));
    }

    #[test]
    fn liouville_divisor_sum_detects_squares() {
        let n = 10_000;
        let lam = ArithmeticFunction::liouville(n);
        let s = dirichlet_convolve(&lam, &ArithmeticFunction::unit(n), n).unwrap();
        for k in 1..=n {
            let r = (k as f64).sqrt().round() as usize;
            let expected = i64::from(r * r == k);
            assert_eq!(*s.at(k), expected, "k = {k}");
        }
    }

    #[test]
    fn pointwise_examples() {
        let n = 100;
        let lam = ArithmeticFunction::liouville(n);
        let sq = pointwise_product(&lam, &lam).unwrap();
        assert_eq!(sq.values(), ArithmeticFunction::unit(n).values());
        assert_eq!(sq.kind(), Multiplicativity::CompletelyMultiplicative);

        let mu = ArithmeticFunction::mobius(n);
        let same = pointwise_product(&mu, &ArithmeticFunction::unit(n)).unwrap();
        assert_eq!(same.values(), mu.values());

        let ml = pointwise_product(&mu, &lam).unwrap();
        assert_eq!(
            *ml.at(6),
            i64::from(mobius(6).unwrap() * liouville(6).unwrap())
        );
        assert_eq!(*ml.at(6), 1);

        assert!(pointwise_product(&mu, &ArithmeticFunction::unit(50)).is_err());
    }

    #[test]
    fn inverse_of_completely_multiplicative() {
        let n = 5000;
        let inv = dirichlet_inverse_cm(&ArithmeticFunction::unit(n)).unwrap();
        assert_eq!(inv.values(), ArithmeticFunction::mobius(n).values());

        let lam = ArithmeticFunction::liouville(n);
        let lam_inv = dirichlet_inverse_cm(&lam).unwrap();
        let e = dirichlet_convolve(&lam, &lam_inv, n).unwrap();
        assert_eq!(e.values(), ArithmeticFunction::epsilon(n).values());

        // completely multiplicative with f(p) = p + 1
        let sieve = Sieve::new(64);
        let f: ArithmeticFunction = ArithmeticFunction::from_fn(
            "prime-shift",
            Multiplicativity::CompletelyMultiplicative,
            64,
            |k| {
                sieve
                    .factorize(k)
                    .iter()
                    .map(|&(p, e)| (p as i64 + 1).pow(e))
                    .product::<i64>()
            },
        )
        .unwrap();
        assert_eq!(*f.at(2), 3);
        assert_eq!(*dirichlet_inverse_cm(&f).unwrap().at(2), -3);

        let mu = ArithmeticFunction::mobius(10);
        assert!(matches!(
            dirichlet_inverse_cm(&mu),
            Err(Error::NotCompletelyMultiplicative(_))
        ));
    }

    #[test]
    fn verify_known_functions() {
        let mu = ArithmeticFunction::mobius(1000);
        assert!(verify_multiplicative(&mu, 1000, Multiplicativity::Multiplicative).holds);
        assert!(
            !verify_multiplicative(&mu, 1000, Multiplicativity::CompletelyMultiplicative).holds
        );
        let lam = ArithmeticFunction::liouville(1000);
        let check = verify_multiplicative(&lam, 1000, Multiplicativity::CompletelyMultiplicative);
        assert!(check.holds);
        assert_eq!(check.witness, None);
    }

    #[test]
    fn planted_defect_is_found() {
        let mut values = ArithmeticFunction::mobius(100).values().to_vec();
        values[5] = 7; // f(6)
        let bad =
            ArithmeticFunction::new_unchecked("bad", Multiplicativity::General, values.clone());
        let check = verify_multiplicative(&bad, 100, Multiplicativity::Multiplicative);
        assert!(!check.holds);
        assert_eq!(check.witness, Some((2, 3)));
        assert!(ArithmeticFunction::new("bad", Multiplicativity::Multiplicative, values).is_err());
    }

    #[test]
    fn multiplicative_requires_unit_at_one() {
        let r = ArithmeticFunction::new("two", Multiplicativity::Multiplicative, vec![2i64, 4, 6]);
        assert!(r.is_err());
        let g = ArithmeticFunction::new("two", Multiplicativity::General, vec![2i64, 4, 6]);
        assert!(g.is_ok());
    }

    #[test]
    fn convolution_preserves_multiplicativity() {
        let n = 3000;
        let h = dirichlet_convolve(
            &ArithmeticFunction::euler_phi(n),
            &ArithmeticFunction::liouville(n),
            n,
        )
        .unwrap();
        assert_eq!(h.kind(), Multiplicativity::Multiplicative);
        assert!(verify_multiplicative(&h, n, Multiplicativity::Multiplicative).holds);
    }
}
