//! Configuration-model sampling of bipartite and directed L-graphs.
//!
//! Degrees are drawn by inverse CDF from the truncated pmf. When stub totals
//! disagree, degrees on the lighter side are redrawn one vertex at a time
//! (accepted only if the imbalance shrinks) before a uniform stub matching.
//! Multi-edges and self-loops are kept. All randomness comes from a ChaCha8
//! stream seeded with a 64-bit seed; replicate `i` uses `seed ^ i`.

mod export;
mod measure;
mod sir;

pub use export::{edge_list_text, write_edge_list, write_manifest, SampleManifest};
pub use measure::{giant_component_fraction, measured_clustering, one_mode_projection, Side};
pub use sir::{sir_percolation, sir_percolation_with, OutbreakStats, DEFAULT_GIANT_OUTBREAK};

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::degdist::{DegreeDistribution, JointDegreeDistribution};
use crate::error::{Error, Result};

/// Redraw attempts allowed per unit of initial imbalance.
pub const BALANCE_ATTEMPTS_PER_STUB: usize = 1000;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of replicate `index` derived from `base`.
pub fn replicate_seed(base: u64, index: u64) -> u64 {
    base ^ index
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    /// Vertices `0..n_a` are side A, `n_a..n_a + n_b` side B.
    Bipartite {
        n_a: usize,
        n_b: usize,
    },
    Directed {
        n: usize,
    },
    /// Simple undirected graph, e.g. a one-mode projection.
    Unipartite {
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    pub mode: Mode,
    /// Bipartite: `(a, b)` with `b` indexed within side B. Directed:
    /// `(from, to)`. Unipartite: `(u, v)` with `u < v`.
    pub edges: Vec<(u32, u32)>,
    /// Side-A degrees (bipartite) or out-degrees (directed).
    pub degrees_a: Vec<u32>,
    /// Side-B degrees (bipartite) or in-degrees (directed).
    pub degrees_b: Vec<u32>,
    pub seed: u64,
    pub k_max: usize,
    /// Accepted balance redraws.
    pub redraws: usize,
}

impl GraphSample {
    pub fn vertex_count(&self) -> usize {
        match self.mode {
            Mode::Bipartite { n_a, n_b } => n_a + n_b,
            Mode::Directed { n } | Mode::Unipartite { n } => n,
        }
    }

    /// Edges as pairs of global vertex ids (B offset by `n_a`).
    pub fn global_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let off = match self.mode {
            Mode::Bipartite { n_a, .. } => n_a,
            _ => 0,
        };
        self.edges
            .iter()
            .map(move |&(u, v)| (u as usize, v as usize + off))
    }

    /// Checks the stub-conservation invariant of the sample's mode.
    pub fn is_balanced(&self) -> bool {
        let e = self.edges.len() as u64;
        let sa: u64 = self.degrees_a.iter().map(|&d| d as u64).sum();
        let sb: u64 = self.degrees_b.iter().map(|&d| d as u64).sum();
        match self.mode {
            Mode::Unipartite { .. } => true,
            _ => sa == e && sb == e,
        }
    }
}

fn sampler_for(d: &DegreeDistribution) -> Result<WeightedIndex<f64>> {
    d.require_unsigned()?;
    WeightedIndex::new(d.weights().iter().copied())
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", d.label())))
}

fn draw_sequence(w: &WeightedIndex<f64>, n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..n).map(|_| w.sample(rng) as u32).collect()
}

/// `n` independent degrees from the truncated pmf of `d`.
pub fn sample_degree_sequence(d: &DegreeDistribution, n: usize, seed: u64) -> Result<Vec<u32>> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let w = sampler_for(d)?;
    Ok(draw_sequence(&w, n, &mut rng_for(seed)))
}

fn total(seq: &[u32]) -> i64 {
    seq.iter().map(|&d| d as i64).sum()
}

/// Redraws entries of the lighter sequence until totals agree. `redraw`
/// produces a replacement degree for the vertex at the given side.
fn balance(
    a: &mut [u32],
    b: &mut [u32],
    rng: &mut ChaCha8Rng,
    mut redraw: impl FnMut(bool, &mut ChaCha8Rng) -> u32,
) -> Result<usize> {
    let mut imbalance = total(a) - total(b);
    let cap = BALANCE_ATTEMPTS_PER_STUB * imbalance.unsigned_abs() as usize;
    let mut accepted = 0;
    let mut attempts = 0;
    while imbalance != 0 {
        if attempts == cap {
            return Err(Error::Balance {
                attempts,
                imbalance,
            });
        }
        attempts += 1;
        // the lighter side grows
        let side_a = imbalance < 0;
        let seq: &mut [u32] = if side_a { &mut *a } else { &mut *b };
        let v = rng.gen_range(0..seq.len());
        let new = redraw(side_a, rng);
        let delta = new as i64 - seq[v] as i64;
        let next = if side_a {
            imbalance + delta
        } else {
            imbalance - delta
        };
        if next.abs() < imbalance.abs() {
            seq[v] = new;
            imbalance = next;
            accepted += 1;
        }
    }
    Ok(accepted)
}

fn stubs(seq: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(total(seq) as usize);
    for (v, &d) in seq.iter().enumerate() {
        out.extend(std::iter::repeat_n(v as u32, d as usize));
    }
    out
}

fn match_stubs(a: &[u32], b: &[u32], rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let sa = stubs(a);
    let mut sb = stubs(b);
    sb.shuffle(rng);
    sa.into_iter().zip(sb).collect()
}

fn check_nonempty(a: &[u32], b: &[u32]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter(
            "degree sequences must be nonempty".into(),
        ));
    }
    Ok(())
}

/// Bipartite configuration model from given sequences. Balance redraws take
/// the degree of a uniformly chosen vertex of the same side (the empirical
/// law of that side).
pub fn build_bipartite(seq_a: &[u32], seq_b: &[u32], seed: u64) -> Result<GraphSample> {
    check_nonempty(seq_a, seq_b)?;
    let mut rng = rng_for(seed);
    let (mut a, mut b) = (seq_a.to_vec(), seq_b.to_vec());
    let (ea, eb) = (seq_a.to_vec(), seq_b.to_vec());
    let redraws = balance(&mut a, &mut b, &mut rng, |side_a, rng| {
        let src = if side_a { &ea } else { &eb };
        src[rng.gen_range(0..src.len())]
    })?;
    let k_max = a.iter().chain(&b).copied().max().unwrap_or(0) as usize;
    let edges = match_stubs(&a, &b, &mut rng);
    Ok(GraphSample {
        mode: Mode::Bipartite {
            n_a: a.len(),
            n_b: b.len(),
        },
        edges,
        degrees_a: a,
        degrees_b: b,
        seed,
        k_max,
        redraws,
    })
}

/// Bipartite L-graph sample: draws both sequences from `p` and `q`, redraws
/// from the same laws to balance, then matches stubs.
pub fn sample_bipartite(
    p: &DegreeDistribution,
    q: &DegreeDistribution,
    n_a: usize,
    n_b: usize,
    seed: u64,
) -> Result<GraphSample> {
    if n_a == 0 || n_b == 0 {
        return Err(Error::InvalidParameter(
            "N must be at least 1 on both sides".into(),
        ));
    }
    let (wp, wq) = (sampler_for(p)?, sampler_for(q)?);
    let mut rng = rng_for(seed);
    let mut a = draw_sequence(&wp, n_a, &mut rng);
    let mut b = draw_sequence(&wq, n_b, &mut rng);
    let redraws = balance(&mut a, &mut b, &mut rng, |side_a, rng| {
        if side_a {
            wp.sample(rng) as u32
        } else {
            wq.sample(rng) as u32
        }
    })?;
    let edges = match_stubs(&a, &b, &mut rng);
    Ok(GraphSample {
        mode: Mode::Bipartite { n_a, n_b },
        edges,
        degrees_a: a,
        degrees_b: b,
        seed,
        k_max: p.k_max().max(q.k_max()),
        redraws,
    })
}

/// Directed configuration model: per vertex an (in, out) pair from `pi`,
/// balanced by redraw, out-stubs matched uniformly to in-stubs.
pub fn build_directed(pi: &JointDegreeDistribution, n: usize, seed: u64) -> Result<GraphSample> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let mut rng = rng_for(seed);
    let (ins, outs, redraws) = match pi {
        JointDegreeDistribution::Separated {
            in_degree,
            out_degree,
        } => {
            let (wi, wo) = (sampler_for(in_degree)?, sampler_for(out_degree)?);
            let mut ins = Vec::with_capacity(n);
            let mut outs = Vec::with_capacity(n);
            for _ in 0..n {
                ins.push(wi.sample(&mut rng) as u32);
                outs.push(wo.sample(&mut rng) as u32);
            }
            // side "a" is out, side "b" is in
            let r = balance(&mut outs, &mut ins, &mut rng, |side_out, rng| {
                if side_out {
                    wo.sample(rng) as u32
                } else {
                    wi.sample(rng) as u32
                }
            })?;
            (ins, outs, r)
        }
        JointDegreeDistribution::Barnes(_) => {
            let mut cells = Vec::new();
            let mut weights = Vec::new();
            pi.for_each_cell(|i, o, w| {
                cells.push((i as u32, o as u32));
                weights.push(w);
            });
            let wj = WeightedIndex::new(&weights)
                .map_err(|e| Error::InvalidParameter(format!("joint law: {e}")))?;
            let mut ins = Vec::with_capacity(n);
            let mut outs = Vec::with_capacity(n);
            for _ in 0..n {
                let (i, o) = cells[wj.sample(&mut rng)];
                ins.push(i);
                outs.push(o);
            }
            let r = balance_joint(&mut ins, &mut outs, &mut rng, |rng| cells[wj.sample(rng)])?;
            (ins, outs, r)
        }
    };
    let edges = match_stubs(&outs, &ins, &mut rng);
    Ok(GraphSample {
        mode: Mode::Directed { n },
        edges,
        degrees_a: outs,
        degrees_b: ins,
        seed,
        k_max: pi.k_max(),
        redraws,
    })
}

/// Joint laws cannot redraw one coordinate alone: a uniformly chosen vertex
/// gets a fresh (in, out) pair, kept if `|sum out - sum in|` shrinks.
fn balance_joint(
    ins: &mut [u32],
    outs: &mut [u32],
    rng: &mut ChaCha8Rng,
    mut redraw: impl FnMut(&mut ChaCha8Rng) -> (u32, u32),
) -> Result<usize> {
    let mut imbalance = total(outs) - total(ins);
    let cap = BALANCE_ATTEMPTS_PER_STUB * imbalance.unsigned_abs() as usize;
    let (mut accepted, mut attempts) = (0, 0);
    while imbalance != 0 {
        if attempts == cap {
            return Err(Error::Balance {
                attempts,
                imbalance,
            });
        }
        attempts += 1;
        let v = rng.gen_range(0..ins.len());
        let (i, o) = redraw(rng);
        let next = imbalance + (o as i64 - outs[v] as i64) - (i as i64 - ins[v] as i64);
        if next.abs() < imbalance.abs() {
            ins[v] = i;
            outs[v] = o;
            imbalance = next;
            accepted += 1;
        }
    }
    Ok(accepted)
}
