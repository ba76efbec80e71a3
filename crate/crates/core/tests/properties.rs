use proptest::prelude::*;

use zetanet::arith::{
    dirichlet_convolve, dirichlet_inverse_cm, pointwise_product, verify_multiplicative,
    ArithmeticFunction, Multiplicativity,
};
use zetanet::config::parse_config;
use zetanet::degdist::{gf_g0, kmax_rule, DegreeDistribution};
use zetanet::thresholds::{psi_bipartite, psi_oracle, psi_tail_bound};
use zetanet::LSeries;

fn table(values: Vec<i64>) -> ArithmeticFunction {
    ArithmeticFunction::new("t", Multiplicativity::General, values).unwrap()
}

/// Completely multiplicative function fixed by its values at 2, 3, 5, 7.
fn cm_from_primes(v: [i64; 4], n: usize) -> ArithmeticFunction {
    let primes = [2usize, 3, 5, 7];
    ArithmeticFunction::from_fn(
        "cm",
        Multiplicativity::CompletelyMultiplicative,
        n,
        |mut k| {
            let mut out = 1i64;
            for (p, &fp) in primes.iter().zip(&v) {
                while k % p == 0 {
                    k /= p;
                    out *= fp;
                }
            }
            // primes above 7 map to 1
            out
        },
    )
    .unwrap()
}

proptest! {
    #[test]
    fn convolution_is_commutative_and_associative(
        f in prop::collection::vec(-5i64..=5, 60),
        g in prop::collection::vec(-5i64..=5, 60),
        h in prop::collection::vec(-5i64..=5, 60),
    ) {
        let (f, g, h) = (table(f), table(g), table(h));
        let c = |a: &ArithmeticFunction, b: &ArithmeticFunction| dirichlet_convolve(a, b, 60).unwrap();
        prop_assert_eq!(c(&f, &g).values().to_vec(), c(&g, &f).values().to_vec());
        prop_assert_eq!(c(&c(&f, &g), &h).values().to_vec(), c(&f, &c(&g, &h)).values().to_vec());
    }

    #[test]
    fn cm_inverse_and_products(a in prop::array::uniform4(-2i64..=2), b in prop::array::uniform4(-2i64..=2)) {
        let (f, g) = (cm_from_primes(a, 200), cm_from_primes(b, 200));
        let inv = dirichlet_inverse_cm(&f).unwrap();
        let e = dirichlet_convolve(&f, &inv, 200).unwrap();
        prop_assert_eq!(e.values(), ArithmeticFunction::epsilon(200).values().to_vec());
        let fg = pointwise_product(&f, &g).unwrap();
        prop_assert!(verify_multiplicative(&fg, 200, Multiplicativity::CompletelyMultiplicative).holds);
    }

    #[test]
    fn psi_swap_symmetry(a in 3.05f64..6.0, b in 3.05f64..6.0) {
        let (z, l) = (LSeries::zeta(), LSeries::liouville());
        let x = psi_bipartite(&z, a, &l, b).unwrap().margin;
        let y = psi_bipartite(&l, b, &z, a).unwrap().margin;
        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn oracle_within_tail_bound(a in 3.2f64..5.0, b in 3.2f64..5.0) {
        let z = LSeries::zeta();
        let psi = psi_bipartite(&z, a, &z, b).unwrap().margin;
        let p = DegreeDistribution::lgraph(&z, a, 20_000).unwrap();
        let q = DegreeDistribution::lgraph(&z, b, 20_000).unwrap();
        let o = psi_oracle(&p, &q) * p.normalizer() * q.normalizer();
        let bound = psi_tail_bound(&z, a, &z, b, 20_000).unwrap();
        prop_assert!((o - psi).abs() <= bound);
        if psi.abs() > bound {
            prop_assert_eq!(o > 0.0, psi > 0.0);
        }
    }

    #[test]
    fn pmf_generating_function_bounds(alpha in 2.05f64..6.0, x in 0.0f64..=1.0) {
        let d = DegreeDistribution::lgraph(&LSeries::zeta(), alpha, 2000).unwrap();
        // weights carry the full-series normalizer, so the cut tail is missing
        let missing = 1.0 - d.total_mass();
        prop_assert!(missing >= -1e-12 && missing <= d.tail_mass() + 1e-12, "{} {}", missing, d.tail_mass());
        let g = gf_g0(&d, x).unwrap().value;
        prop_assert!((0.0..=1.0 + 1e-12).contains(&g));
    }

    #[test]
    fn kmax_rule_is_monotone(n in 10usize..1_000_000, alpha in 2.05f64..6.0) {
        prop_assert!(kmax_rule(n, alpha).unwrap() <= kmax_rule(n * 2, alpha).unwrap());
    }

    #[test]
    fn config_keeps_last_value(k in "[a-z]{1,8}", v1 in "[a-z0-9.]{1,8}", v2 in "[a-z0-9.]{1,8}") {
        prop_assume!(k != "config");
        let c = parse_config(&format!("{k} = {v1}\n# note\n{k}={v2}\n")).unwrap();
        prop_assert_eq!(c.get(&k), Some(v2.as_str()));
        prop_assert_eq!(c.entries.len(), 1);
    }
}
