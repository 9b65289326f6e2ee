//! Cayley graphs, double covers, dense spectral reports, and the expander
//! mixing check.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GeneratorSet, Side};
use nalgebra::DMatrix;
use rand::Rng;

/// Absolute tolerance of the dense symmetric eigensolver; reported lambdas
/// carry this as a certified one-sided slack.
pub const EIG_TOL: f64 = 1e-6;

/// Undirected multigraph as an edge list.
#[derive(Clone)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Self {
        Self { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    fn adjacency(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m[(u as usize, v as usize)] += 1.0;
            m[(v as usize, u as usize)] += 1.0;
        }
        m
    }

    /// Number of connected components (multi-edges collapse).
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        (0..self.n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// Cayley graph Cay(G, S): one undirected edge per vertex and inverse pair
/// of generators; an involution contributes a single edge slot.
#[derive(Clone)]
pub struct CayleyGraph {
    pub graph: MultiGraph,
    pub delta: usize,
}

impl CayleyGraph {
    pub fn new(group: &FiniteGroup, gens: &GeneratorSet) -> Self {
        let n = group.order();
        let mut edges = Vec::with_capacity(n * gens.delta() / 2 + n);
        let elems = gens.elements();
        let mut emitted = vec![false; elems.len()];
        for (i, &s) in elems.iter().enumerate() {
            if emitted[i] {
                continue;
            }
            let si = group.inv_idx(s);
            if si == s {
                emitted[i] = true;
                for g in 0..n {
                    let h = apply(group, gens.side(), s, g);
                    if g <= h {
                        edges.push((g as u32, h as u32));
                    }
                }
            } else {
                // Pair this slot with an unemitted slot holding the inverse.
                let j = elems
                    .iter()
                    .enumerate()
                    .position(|(j, &t)| !emitted[j] && j != i && t == si)
                    .expect("generator set closed under inverse");
                emitted[i] = true;
                emitted[j] = true;
                for g in 0..n {
                    let h = apply(group, gens.side(), s, g);
                    edges.push((g as u32, h as u32));
                }
            }
        }
        Self {
            graph: MultiGraph::new(n, edges),
            delta: gens.delta(),
        }
    }
}

fn apply(group: &FiniteGroup, side: Side, s: usize, g: usize) -> usize {
    match side {
        Side::Left => group.mul_idx(s, g),
        Side::Right => group.mul_idx(g, s),
    }
}

/// Bipartite double cover: vertices G x {0,1}, one edge ((g,0),(sg,1)) per
/// (g, s) over the full generator multiset. |edges| = |G| * Delta.
pub fn double_cover(group: &FiniteGroup, gens: &GeneratorSet) -> MultiGraph {
    let n = group.order();
    let mut edges = Vec::with_capacity(n * gens.delta());
    for &s in gens.elements() {
        for g in 0..n {
            let h = apply(group, gens.side(), s, g);
            edges.push((g as u32, (n + h) as u32));
        }
    }
    MultiGraph::new(2 * n, edges)
}

/// Eigenvalue summary of a regular graph.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub delta: usize,
    /// max(|lambda_2|, |lambda_n|) as computed by the eigensolver.
    pub lambda: f64,
    /// Certified upper bound lambda + EIG_TOL, for one-sided comparisons.
    pub lambda_upper: f64,
    /// All adjacency eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
}

/// Dense symmetric eigensolve of the adjacency matrix. Errors on non-regular
/// graphs.
pub fn spectral_report(g: &MultiGraph) -> Result<SpectralReport> {
    let degs = g.degrees();
    let delta = degs.first().copied().unwrap_or(0);
    if let Some(v) = degs.iter().position(|&d| d != delta) {
        return Err(Error::NonRegular {
            vertex: v,
            degree: degs[v],
            expected: delta,
        });
    }
    let eig = g.adjacency().symmetric_eigenvalues();
    let mut eigenvalues: Vec<f64> = eig.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let lambda = if eigenvalues.len() >= 2 {
        let second = eigenvalues[1].abs();
        let last = eigenvalues.last().unwrap().abs();
        second.max(last)
    } else {
        0.0
    };
    Ok(SpectralReport {
        delta,
        lambda,
        lambda_upper: lambda + EIG_TOL,
        eigenvalues,
    })
}

/// Outcome of randomized expander-mixing checks.
#[derive(Clone, Debug)]
pub struct MixingReport {
    pub trials: usize,
    pub violations: usize,
    /// Smallest rhs - lhs over all trials.
    pub min_slack: f64,
}

/// Checks 1_S^T M 1_T <= Delta |S||T| / |V| + lambda sqrt(|S||T|) on random
/// vertex subsets, using the certified lambda upper bound.
pub fn mixing_check(
    g: &MultiGraph,
    report: &SpectralReport,
    trials: usize,
    rng: &mut impl Rng,
) -> MixingReport {
    let n = g.vertex_count();
    let mut violations = 0;
    let mut min_slack = f64::INFINITY;
    for _ in 0..trials {
        let s: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let t: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let s_size = s.iter().filter(|&&b| b).count();
        let t_size = t.iter().filter(|&&b| b).count();
        // Quadratic form against the adjacency: each undirected edge
        // contributes in both orientations.
        let mut crossing = 0u64;
        for &(u, v) in g.edges() {
            let (u, v) = (u as usize, v as usize);
            if s[u] && t[v] {
                crossing += 1;
            }
            if s[v] && t[u] {
                crossing += 1;
            }
        }
        let bound = report.delta as f64 * s_size as f64 * t_size as f64 / n as f64
            + report.lambda_upper * ((s_size * t_size) as f64).sqrt();
        let slack = bound - crossing as f64;
        if slack < -1e-9 {
            violations += 1;
        }
        min_slack = min_slack.min(slack);
    }
    MixingReport {
        trials,
        violations,
        min_slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_psl2, lps_generators};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cycle_spectra() {
        // 5-cycle: 2-regular, lambda = |2 cos(4 pi / 5)| = 2 cos(pi / 5).
        let (g, gens) = build_cyclic(5, &[1, -1], Side::Left).unwrap();
        let cay = CayleyGraph::new(&g, &gens);
        assert_eq!(cay.graph.edge_count(), 5);
        let rep = spectral_report(&cay.graph).unwrap();
        assert!((rep.eigenvalues[0] - 2.0).abs() < 1e-9);
        assert!((rep.lambda - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-6);

        // 6-cycle is bipartite: lambda = |lambda_n| = 2.
        let (g, gens) = build_cyclic(6, &[1, -1], Side::Left).unwrap();
        let rep = spectral_report(&CayleyGraph::new(&g, &gens).graph).unwrap();
        assert!((rep.lambda - 2.0).abs() < 1e-6);
    }

    #[test]
    fn complete_graph_from_cyclic() {
        // Z_5 with {1,2,3,4} is K_5: spectrum {4, -1^4}, lambda = 1.
        let (g, gens) = build_cyclic(5, &[1, 2, -2, -1], Side::Left).unwrap();
        let rep = spectral_report(&CayleyGraph::new(&g, &gens).graph).unwrap();
        assert!((rep.eigenvalues[0] - 4.0).abs() < 1e-9);
        assert!((rep.lambda - 1.0).abs() < 1e-6);
    }

    #[test]
    fn double_cover_shapes() {
        // Double cover of an odd cycle is a single 2n-cycle.
        let (g, gens) = build_cyclic(5, &[1, -1], Side::Left).unwrap();
        let dc = double_cover(&g, &gens);
        assert_eq!(dc.vertex_count(), 10);
        assert_eq!(dc.edge_count(), 10);
        assert_eq!(dc.component_count(), 1);

        // Double cover of a bipartite cycle splits into two copies.
        let (g, gens) = build_cyclic(6, &[1, -1], Side::Left).unwrap();
        let dc = double_cover(&g, &gens);
        assert_eq!(dc.edge_count(), 12);
        assert_eq!(dc.component_count(), 2);
    }

    #[test]
    fn eigenvalues_sum_to_trace() {
        let (g, gens) = build_cyclic(12, &[1, -1, 6], Side::Left).unwrap();
        let rep = spectral_report(&CayleyGraph::new(&g, &gens).graph).unwrap();
        let sum: f64 = rep.eigenvalues.iter().sum();
        assert!(sum.abs() < 1e-6 * 12.0);
        assert!((rep.eigenvalues[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn mixing_never_fails_with_own_lambda() {
        let (g, gens) = build_cyclic(5, &[1, 2, -2, -1], Side::Left).unwrap();
        let cay = CayleyGraph::new(&g, &gens);
        let rep = spectral_report(&cay.graph).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mix = mixing_check(&cay.graph, &rep, 200, &mut rng);
        assert_eq!(mix.violations, 0);
    }

    #[test]
    fn non_regular_graph_rejected() {
        let g = MultiGraph::new(3, vec![(0, 1)]);
        assert!(spectral_report(&g).is_err());
    }

    #[test]
    fn lps_17_13_is_ramanujan_within_tolerance() {
        let g = build_psl2(13).unwrap();
        let gens = lps_generators(17, 13, &g, Side::Left).unwrap();
        let cay = CayleyGraph::new(&g, &gens);
        let rep = spectral_report(&cay.graph).unwrap();
        assert_eq!(rep.delta, 18);
        let degs = cay.graph.degrees();
        assert!(degs.iter().all(|&d| d == 18));
        assert!(rep.lambda_upper <= 2.0 * (17.0f64).sqrt() + 1e-6);
    }
}
