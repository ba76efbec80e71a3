use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{replicate_seed, rng_for, GraphSample, Mode};
use crate::epidemics::Transmissibility;
use crate::error::{Error, Result};

/// Default giant-outbreak cutoff as a fraction of all vertices.
pub const DEFAULT_GIANT_OUTBREAK: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutbreakStats {
    pub trials: usize,
    /// Mean count of infected side-A vertices, seed included.
    pub mean_size_a: f64,
    /// Mean count of all infected vertices.
    pub mean_size: f64,
    /// Fraction of trials whose outbreak reached the giant cutoff.
    pub giant_fraction: f64,
    /// Cutoff used, in vertices.
    pub giant_cutoff: usize,
    pub largest: usize,
}

/// Bond-percolation SIR with the default giant cutoff.
pub fn sir_percolation(
    g: &GraphSample,
    t: Transmissibility,
    trials: usize,
    seed: u64,
) -> Result<OutbreakStats> {
    sir_percolation_with(g, t, trials, seed, DEFAULT_GIANT_OUTBREAK)
}

/// Each trial seeds a uniform A-vertex and spreads along edges, crossing
/// A -> B with probability `t_mf` and B -> A with `t_fm`, each directed use
/// of each edge decided independently. Trial `i` uses seed `seed ^ i`.
pub fn sir_percolation_with(
    g: &GraphSample,
    t: Transmissibility,
    trials: usize,
    seed: u64,
    giant_fraction: f64,
) -> Result<OutbreakStats> {
    let Mode::Bipartite { n_a, n_b } = g.mode else {
        return Err(Error::InvalidParameter(
            "SIR percolation needs a bipartite sample".into(),
        ));
    };
    if trials == 0 || n_a == 0 {
        return Err(Error::InvalidParameter(
            "need at least one trial and one A-vertex".into(),
        ));
    }
    let n = n_a + n_b;
    // CSR adjacency over global ids
    let mut start = vec![0usize; n + 1];
    for (u, v) in g.global_edges() {
        start[u + 1] += 1;
        start[v + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut nbr = vec![0u32; start[n]];
    for (u, v) in g.global_edges() {
        nbr[fill[u]] = v as u32;
        fill[u] += 1;
        nbr[fill[v]] = u as u32;
        fill[v] += 1;
    }
    let cutoff = ((giant_fraction * n as f64).ceil() as usize).max(1);

    let sizes: Vec<(usize, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(replicate_seed(seed, i));
            let src = rng.gen_range(0..n_a);
            let mut seen = vec![false; n];
            let mut stack = vec![src];
            seen[src] = true;
            let (mut total, mut in_a) = (1usize, 1usize);
            while let Some(u) = stack.pop() {
                let p = if u < n_a { t.t_mf } else { t.t_fm };
                for &v in &nbr[start[u]..start[u + 1]] {
                    let v = v as usize;
                    // every directed edge use is tried once, from its infected tail
                    let pass = p >= 1.0 || (p > 0.0 && rng.gen::<f64>() < p);
                    if pass && !seen[v] {
                        seen[v] = true;
                        total += 1;
                        if v < n_a {
                            in_a += 1;
                        }
                        stack.push(v);
                    }
                }
            }
            (total, in_a)
        })
        .collect();

    let k = trials as f64;
    Ok(OutbreakStats {
        trials,
        mean_size_a: sizes.iter().map(|s| s.1 as f64).sum::<f64>() / k,
        mean_size: sizes.iter().map(|s| s.0 as f64).sum::<f64>() / k,
        giant_fraction: sizes.iter().filter(|s| s.0 >= cutoff).count() as f64 / k,
        giant_cutoff: cutoff,
        largest: sizes.iter().map(|s| s.0).max().unwrap_or(0),
    })
}
