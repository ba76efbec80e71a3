use zetanet::degdist::{make_directed_barnes, make_directed_separated, DegreeDistribution};
use zetanet::epidemics::{mean_outbreak_size, Transmissibility};
use zetanet::sampler::{
    build_directed, giant_component_fraction, sample_bipartite, sample_degree_sequence,
    sir_percolation,
};
use zetanet::LSeries;

// chi-square upper 0.1% points
const CHI2_999: [(usize, f64); 3] = [(5, 20.52), (7, 24.32), (9, 27.88)];

fn chi2_crit(df: usize) -> f64 {
    CHI2_999.iter().find(|(d, _)| *d == df).unwrap().1
}

/// Pearson statistic over bins 1..=last with everything above pooled.
fn chi2(seq: &[u32], d: &DegreeDistribution, last: usize) -> (f64, usize) {
    let n = seq.len() as f64;
    let mut obs = vec![0.0; last + 1];
    for &k in seq {
        obs[(k as usize).min(last)] += 1.0;
    }
    let mut stat = 0.0;
    let mut bins = 0;
    for k in 0..=last {
        let p = if k < last {
            d.weight(k)
        } else {
            d.weights()[last..].iter().sum()
        };
        if p == 0.0 {
            assert_eq!(obs[k], 0.0, "degree {k} has zero probability");
            continue;
        }
        stat += (obs[k] - n * p).powi(2) / (n * p);
        bins += 1;
    }
    (stat, bins - 1)
}

#[test]
fn degree_histograms_fit_the_pmf() {
    for (l, alpha) in [
        (LSeries::zeta(), 2.5),
        (LSeries::zeta(), 3.5),
        (LSeries::hurwitz(1.5).unwrap(), 3.0),
    ] {
        let d = DegreeDistribution::lgraph(&l, alpha, 500).unwrap();
        let seq = sample_degree_sequence(&d, 100_000, 11).unwrap();
        let (stat, df) = chi2(&seq, &d, 10);
        assert!(
            stat < chi2_crit(df),
            "{} alpha {alpha}: chi2 {stat} on {df}",
            l.name()
        );
    }
}

#[test]
fn directed_hurwitz_marginals() {
    let l = LSeries::hurwitz(0.5).unwrap();
    let d = DegreeDistribution::lgraph(&l, 3.2, 300).unwrap();
    let pi = make_directed_separated(d.clone(), d.clone());
    let g = build_directed(&pi, 80_000, 4).unwrap();
    assert!(g.is_balanced());
    // repair only touches the lighter side; the other stays an iid draw
    let (sa, sb): (u64, u64) = (
        g.degrees_a.iter().map(|&k| k as u64).sum(),
        g.degrees_b.iter().map(|&k| k as u64).sum(),
    );
    assert_eq!(sa, sb);
    let fits: Vec<bool> = [&g.degrees_a, &g.degrees_b]
        .iter()
        .map(|seq| {
            let (stat, df) = chi2(seq, &d, 8);
            stat < chi2_crit(df)
        })
        .collect();
    assert!(fits.iter().any(|&f| f), "neither marginal fits");
    // each redraw moves one vertex between two bins
    let n = g.degrees_a.len() as f64;
    for seq in [&g.degrees_a, &g.degrees_b] {
        let mut obs = vec![0.0; d.k_max() + 1];
        for &k in seq.iter() {
            obs[k as usize] += 1.0;
        }
        let (mut l1, mut noise) = (0.0, 0.0);
        for (k, &o) in obs.iter().enumerate() {
            let p = d.weight(k);
            l1 += (o - n * p).abs();
            noise += (n * p * (1.0 - p)).sqrt();
        }
        assert!(
            l1 <= 2.0 * g.redraws as f64 + 3.0 * noise,
            "{l1} {}",
            g.redraws
        );
    }
}

#[test]
fn barnes_graph_is_balanced() {
    let pi = make_directed_barnes(3.5, 1.0, 1.0, 200).unwrap();
    let g = build_directed(&pi, 20_000, 8).unwrap();
    assert!(g.is_balanced());
    let (mi, mo) = pi.means();
    let n = g.degrees_a.len() as f64;
    let out = g.degrees_a.iter().map(|&k| k as f64).sum::<f64>() / n;
    assert!((mi - mo).abs() < 1e-12);
    assert!((out - mo).abs() < 0.1, "{out} vs {mo}");
}

#[test]
fn two_regular_outbreak_matches_analytic_mean() {
    let d = DegreeDistribution::point_mass(2);
    let g = sample_bipartite(&d, &d, 20_000, 20_000, 1).unwrap();
    for t in [0.3, 0.6] {
        let tr = Transmissibility::symmetric(t).unwrap();
        let theory = mean_outbreak_size(&d, &d, tr).unwrap();
        let mc = sir_percolation(&g, tr, 20_000, 2).unwrap();
        assert!(
            (mc.mean_size_a - theory.mean).abs() < 0.03 * theory.mean,
            "T {t}: {} vs {}",
            mc.mean_size_a,
            theory.mean
        );
    }
}

#[test]
fn same_seed_same_graph() {
    let d = DegreeDistribution::lgraph(&LSeries::zeta(), 3.0, 100).unwrap();
    let a = sample_bipartite(&d, &d, 5000, 4000, 42).unwrap();
    let b = sample_bipartite(&d, &d, 5000, 4000, 42).unwrap();
    let c = sample_bipartite(&d, &d, 5000, 4000, 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.edges, c.edges);
    assert_eq!(giant_component_fraction(&a), giant_component_fraction(&b));
}
