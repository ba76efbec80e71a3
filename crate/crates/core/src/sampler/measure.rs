use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::{GraphSample, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Largest connected component over vertex count. Directed samples are
/// measured on their undirected skeleton.
pub fn giant_component_fraction(g: &GraphSample) -> f64 {
    let n = g.vertex_count();
    if n == 0 {
        return 0.0;
    }
    let mut uf = UnionFind::<usize>::new(n);
    for (u, v) in g.global_edges() {
        uf.union(u, v);
    }
    let mut sizes = vec![0usize; n];
    for v in 0..n {
        sizes[uf.find_mut(v)] += 1;
    }
    *sizes.iter().max().unwrap() as f64 / n as f64
}

/// Simple graph on one side of a bipartite sample; two vertices are joined
/// when they share at least one neighbour. Non-bipartite input yields an
/// empty graph.
pub fn one_mode_projection(g: &GraphSample, side: Side) -> GraphSample {
    let Mode::Bipartite { n_a, n_b } = g.mode else {
        return GraphSample {
            mode: Mode::Unipartite { n: 0 },
            edges: Vec::new(),
            degrees_a: Vec::new(),
            degrees_b: Vec::new(),
            seed: g.seed,
            k_max: 0,
            redraws: 0,
        };
    };
    let (n_keep, n_via) = match side {
        Side::A => (n_a, n_b),
        Side::B => (n_b, n_a),
    };
    let mut groups: Vec<Vec<u32>> = vec![Vec::new(); n_via];
    for &(a, b) in &g.edges {
        let (keep, via) = match side {
            Side::A => (a, b),
            Side::B => (b, a),
        };
        groups[via as usize].push(keep);
    }
    let mut edges = Vec::new();
    for nbrs in &mut groups {
        nbrs.sort_unstable();
        nbrs.dedup();
        for (i, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut deg = vec![0u32; n_keep];
    for &(u, v) in &edges {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    GraphSample {
        mode: Mode::Unipartite { n: n_keep },
        k_max: deg.iter().copied().max().unwrap_or(0) as usize,
        degrees_a: deg,
        degrees_b: Vec::new(),
        edges,
        seed: g.seed,
        redraws: 0,
    }
}

/// `3 * triangles / connected triples` of a simple graph; 0 without triples.
/// Self-loops and repeated edges are ignored.
pub fn measured_clustering(g: &GraphSample) -> f64 {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in g.global_edges() {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let triples: f64 = adj
        .iter()
        .map(|a| {
            let d = a.len() as f64;
            d * (d - 1.0) / 2.0
        })
        .sum();
    if triples == 0.0 {
        return 0.0;
    }
    // each triangle is seen once from each of its three edges
    let mut closed = 0u64;
    for u in 0..n {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            closed += sorted_intersection(&adj[u], &adj[v]);
        }
    }
    closed as f64 / triples
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}
