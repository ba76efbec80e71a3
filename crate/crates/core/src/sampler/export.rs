use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GraphSample, Mode};
use crate::error::Result;

/// Reproducibility record written next to an edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleManifest {
    pub mode: Mode,
    pub seed: u64,
    pub k_max: usize,
    pub edges: usize,
    pub redraws: usize,
    /// Free-form generation parameters (families, exponents, ...).
    pub parameters: serde_json::Value,
}

impl SampleManifest {
    pub fn new(g: &GraphSample, parameters: serde_json::Value) -> Self {
        SampleManifest {
            mode: g.mode,
            seed: g.seed,
            k_max: g.k_max,
            edges: g.edges.len(),
            redraws: g.redraws,
            parameters,
        }
    }
}

/// One edge per line: `u v` for bipartite (each side numbered from 0) and
/// unipartite samples, `u -> v` for directed ones.
pub fn edge_list_text(g: &GraphSample) -> String {
    let mut out = String::with_capacity(g.edges.len() * 12);
    match g.mode {
        Mode::Bipartite { n_a, n_b } => {
            let _ = writeln!(out, "# bipartite n_a={n_a} n_b={n_b} seed={}", g.seed);
        }
        Mode::Directed { n } => {
            let _ = writeln!(out, "# directed n={n} seed={}", g.seed);
        }
        Mode::Unipartite { n } => {
            let _ = writeln!(out, "# unipartite n={n} seed={}", g.seed);
        }
    }
    let arrow = matches!(g.mode, Mode::Directed { .. });
    for &(u, v) in &g.edges {
        if arrow {
            let _ = writeln!(out, "{u} -> {v}");
        } else {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    out
}

pub fn write_edge_list(g: &GraphSample, path: &Path) -> Result<()> {
    fs::write(path, edge_list_text(g))?;
    Ok(())
}

pub fn write_manifest(manifest: &SampleManifest, path: &Path) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(manifest)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degdist::{make_directed_separated, DegreeDistribution};
    use crate::sampler::{build_bipartite, build_directed};

    #[test]
    fn bipartite_text() {
        let g = build_bipartite(&[1], &[1], 0).unwrap();
        assert_eq!(edge_list_text(&g), "# bipartite n_a=1 n_b=1 seed=0\n0 0\n");
    }

    #[test]
    fn directed_text_uses_arrows() {
        let d = DegreeDistribution::point_mass(1);
        let g = build_directed(&make_directed_separated(d.clone(), d), 3, 0).unwrap();
        let text = edge_list_text(&g);
        assert_eq!(text.lines().filter(|l| l.contains(" -> ")).count(), 3);
    }

    #[test]
    fn manifest_round_trip() {
        let g = build_bipartite(&[2, 1], &[3], 5).unwrap();
        let m = SampleManifest::new(&g, serde_json::json!({"family": "zeta"}));
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.json");
        write_manifest(&m, &p).unwrap();
        let back: SampleManifest =
            serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
