//! The chain complex X(G_2, C_A, C_B) built from four Tanner maps over the
//! left-right Cayley complex, the associated CSS code, exact quantum
//! distances at desk scale, and the co-expansion probe.
//!
//! Grade-1 bit layout: horizontal edges first (classes H0 then H1, m_a bits
//! per edge), then vertical edges (Vt0 then Vt1, m_b bits per edge). Grade-0
//! blocks are m_a x m_b, row-major. Grade-2 is one bit per face.

use crate::codes::{Distance, LinearCode};
use crate::complex::{LeftRightComplex, SubgraphKind, TannerGraph};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, SpanTester};
use num_rational::Ratio;
use rand::Rng;
use std::sync::Arc;

/// A chain or cochain supported on one grade of X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVec {
    pub grade: u8,
    pub bits: BitVec,
}

impl ChainVec {
    pub fn new(grade: u8, bits: BitVec) -> Self {
        Self { grade, bits }
    }

    pub fn hamming(&self) -> usize {
        self.bits.weight()
    }
}

/// The plain Tanner map of a bipartite graph with slot identification and a
/// local parity check H with Delta columns: input bits on graph edges,
/// output m-bit blocks on graph vertices. The (v, e) submatrix is the column
/// H(slot) when (v, slot) is an endpoint of e, else zero.
pub fn tanner_map(graph: &TannerGraph, h: &BitMatrix) -> Result<BitMatrix> {
    if h.cols() != graph.delta {
        return Err(Error::ShapeMismatch(format!(
            "local code has {} columns, graph is {}-regular",
            h.cols(),
            graph.delta
        )));
    }
    let m = h.rows();
    let mut out = BitMatrix::zeros(graph.vertex_count() * m, graph.edge_count());
    for (e, ends) in graph.edge_endpoints.iter().enumerate() {
        for &(v, slot) in ends {
            for i in 0..m {
                if h.get(i, slot as usize) {
                    out.flip(v as usize * m + i, e);
                }
            }
        }
    }
    Ok(out)
}

/// X(G_2, C_A, C_B). Boundary matrices are dense bit-packed; the chain
/// condition is verified at build time.
#[derive(Clone)]
pub struct ChainComplexX {
    complex: Arc<LeftRightComplex>,
    ca: LinearCode,
    cb: LinearCode,
    boundary2: BitMatrix,
    boundary1: BitMatrix,
}

impl ChainComplexX {
    /// Assemble the boundary maps from the four Tanner codes and verify
    /// boundary_1 boundary_2 = 0.
    pub fn build(
        complex: Arc<LeftRightComplex>,
        ca: LinearCode,
        cb: LinearCode,
    ) -> Result<Self> {
        let delta = complex.delta();
        if ca.len() != delta || cb.len() != delta {
            return Err(Error::ShapeMismatch(format!(
                "local codes have lengths {} and {}, complex degree is {delta}",
                ca.len(),
                cb.len()
            )));
        }
        // boundary_2: faces -> horizontal m_a blocks stacked over vertical
        // m_b blocks, realized as two Tanner maps.
        let horiz = tanner_map(
            &complex.subgraph(SubgraphKind::EdgeFaceHorizontal),
            ca.parity_check(),
        )?;
        let vert = tanner_map(
            &complex.subgraph(SubgraphKind::EdgeFaceVertical),
            cb.parity_check(),
        )?;
        let boundary2 = horiz.vstack(&vert);

        // boundary_1: edge blocks -> vertex m_a x m_b blocks. A horizontal
        // edge with value x contributes x (x) H_B(slot) to both endpoints;
        // a vertical edge with value y contributes H_A(slot) (x) y.
        let (ma, mb) = (ca.check_count(), cb.check_count());
        let x1 = boundary2.rows();
        let x0 = complex.vertex_count() * ma * mb;
        let mut boundary1 = BitMatrix::zeros(x0, x1);
        let per = complex.edges_per_class();
        let hb = cb.parity_check();
        let ha = ca.parity_check();
        for e in 0..complex.edge_count() {
            let (_, _, slot) = complex.edge_of(e);
            let endpoints = complex.edge_endpoints(e);
            if e < 2 * per {
                // horizontal: bits e*ma .. e*ma+ma
                for &v in &endpoints {
                    for i in 0..ma {
                        for j in 0..mb {
                            if hb.get(j, slot) {
                                boundary1.flip(v * ma * mb + i * mb + j, e * ma + i);
                            }
                        }
                    }
                }
            } else {
                let local = e - 2 * per;
                let base = 2 * per * ma + local * mb;
                for &v in &endpoints {
                    for i in 0..ma {
                        for j in 0..mb {
                            if ha.get(i, slot) {
                                boundary1.flip(v * ma * mb + i * mb + j, base + j);
                            }
                        }
                    }
                }
            }
        }

        let x = Self {
            complex,
            ca,
            cb,
            boundary2,
            boundary1,
        };
        x.verify_chain_condition()?;
        Ok(x)
    }

    fn verify_chain_condition(&self) -> Result<()> {
        let product = self.boundary1.mul(&self.boundary2);
        if product.is_zero() {
            return Ok(());
        }
        let (ma, mb) = (self.ca.check_count(), self.cb.check_count());
        for f in 0..product.cols() {
            for row in 0..product.rows() {
                if product.get(row, f) {
                    return Err(Error::ChainCondition {
                        face: f,
                        vertex: row / (ma * mb),
                    });
                }
            }
        }
        unreachable!()
    }

    pub fn complex(&self) -> &LeftRightComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<LeftRightComplex> {
        Arc::clone(&self.complex)
    }

    pub fn code_a(&self) -> &LinearCode {
        &self.ca
    }

    pub fn code_b(&self) -> &LinearCode {
        &self.cb
    }

    pub fn boundary2(&self) -> &BitMatrix {
        &self.boundary2
    }

    pub fn boundary1(&self) -> &BitMatrix {
        &self.boundary1
    }

    pub fn block_a(&self) -> usize {
        self.ca.check_count()
    }

    pub fn block_b(&self) -> usize {
        self.cb.check_count()
    }

    pub fn x2_len(&self) -> usize {
        self.complex.face_count()
    }

    pub fn x1_len(&self) -> usize {
        self.boundary2.rows()
    }

    pub fn x0_len(&self) -> usize {
        self.boundary1.rows()
    }

    /// First bit of the block carried by edge `e`, plus the block width.
    pub fn edge_bits(&self, e: usize) -> (usize, usize) {
        let per = self.complex.edges_per_class();
        let (ma, mb) = (self.block_a(), self.block_b());
        if e < 2 * per {
            (e * ma, ma)
        } else {
            (2 * per * ma + (e - 2 * per) * mb, mb)
        }
    }

    /// First bit of the m_a x m_b block at vertex `v`; bit (i, j) sits at
    /// base + i * m_b + j.
    pub fn vertex_bits(&self, v: usize) -> (usize, usize) {
        let w = self.block_a() * self.block_b();
        (v * w, w)
    }

    /// Number of nonzero cells of a grade-g vector (faces / edges /
    /// vertices).
    pub fn cell_norm(&self, grade: u8, bits: &BitVec) -> usize {
        match grade {
            2 => bits.weight(),
            1 => (0..self.complex.edge_count())
                .filter(|&e| {
                    let (base, len) = self.edge_bits(e);
                    (base..base + len).any(|b| bits.get(b))
                })
                .count(),
            0 => (0..self.complex.vertex_count())
                .filter(|&v| {
                    let (base, len) = self.vertex_bits(v);
                    (base..base + len).any(|b| bits.get(b))
                })
                .count(),
            _ => panic!("grade out of range"),
        }
    }

    /// The block of a grade-1 vector on edge `e`, packed little-endian.
    pub fn edge_block(&self, bits: &BitVec, e: usize) -> u64 {
        let (base, len) = self.edge_bits(e);
        (0..len).fold(0u64, |acc, i| acc | (u64::from(bits.get(base + i)) << i))
    }

    /// k = |X(1)| - rank boundary_1 - rank boundary_2.
    pub fn dimension(&self) -> usize {
        self.x1_len() - self.boundary1.rank() - self.boundary2.rank()
    }

    /// (k, k/|X1|, rate lower bound) with the bound computed from the block
    /// counts: -(2 rho_a - 1)(2 rho_b - 1) / (2 (2 - rho_a - rho_b)) at
    /// rho = 1 - m/Delta, which equals (|X1| - |X2| - |X0|) / |X1|.
    pub fn dimension_and_rate(&self) -> (usize, Ratio<i64>, Ratio<i64>) {
        let k = self.dimension();
        let x1 = self.x1_len() as i64;
        let rate = Ratio::new(k as i64, x1);
        let bound = Ratio::new(
            x1 - self.x2_len() as i64 - self.x0_len() as i64,
            x1,
        );
        (k, rate, bound)
    }

    /// Max row/column weights of both boundary maps plus the four per-bit
    /// incidence bounds from the low-density argument.
    pub fn ldpc_profile(&self) -> LdpcProfile {
        LdpcProfile {
            boundary2_max_row: self.boundary2.max_row_weight(),
            boundary2_max_col: self.boundary2.max_col_weight(),
            boundary1_max_row: self.boundary1.max_row_weight(),
            boundary1_max_col: self.boundary1.max_col_weight(),
        }
    }

    /// The CSS code with X-checks at vertices (Hx = boundary_1) and Z-checks
    /// at faces (Hz = boundary_2 transposed); qubits on edge bits.
    pub fn css_code(&self) -> CssCode {
        CssCode {
            hx: self.boundary1.clone(),
            hz: self.boundary2.transpose(),
        }
    }

    /// Same complex with the dual local codes.
    pub fn dual_complex(&self) -> Result<ChainComplexX> {
        ChainComplexX::build(Arc::clone(&self.complex), self.ca.dual(), self.cb.dual())
    }

    /// Exact quantum distances over the nontrivial homology and cohomology
    /// classes, in both Hamming and cell-count norms.
    pub fn quantum_distance_exact(&self, cap: u128) -> Result<QuantumDistances> {
        // Z-distance: kernel of boundary_1 modulo image of boundary_2.
        let b1_cols: Vec<BitVec> = (0..self.boundary2.cols())
            .map(|j| self.boundary2.column(j))
            .collect();
        let dz = self.min_over_quotient(&self.boundary1, &b1_cols, cap)?;
        // X-distance: kernel of the transposed boundary_2 modulo rows of
        // boundary_1.
        let delta1 = self.boundary2.transpose();
        let b_cols: Vec<BitVec> = (0..self.boundary1.rows())
            .map(|i| self.boundary1.row(i))
            .collect();
        let dx = self.min_over_quotient(&delta1, &b_cols, cap)?;
        Ok(QuantumDistances { dx, dz })
    }

    /// Minimum Hamming and cell-norm weight over ker(kernel_of) minus the
    /// span of `image`, by homology-representative + coset enumeration.
    fn min_over_quotient(
        &self,
        kernel_of: &BitMatrix,
        image: &[BitVec],
        cap: u128,
    ) -> Result<DistanceWitness> {
        let n = kernel_of.cols();
        let image_basis = crate::gf2::row_space_basis(image, n);
        let b_dim = image_basis.len();
        let mut tester = SpanTester::new(&image_basis, n);
        let mut reps = Vec::new();
        for v in kernel_of.kernel_basis() {
            if tester.insert(&v) {
                reps.push(v);
            }
        }
        let k = reps.len();
        if k == 0 {
            return Ok(DistanceWitness {
                hamming: Distance::Infinite,
                cell: Distance::Infinite,
                witness: None,
            });
        }
        let total_bits = k + b_dim;
        if total_bits >= 127 || (1u128 << total_bits) > cap {
            return Err(Error::CapExceeded {
                needed: 1u128.checked_shl(total_bits as u32).unwrap_or(u128::MAX),
                cap,
            });
        }
        let mut best_h = usize::MAX;
        let mut best_c = usize::MAX;
        let mut witness: Option<BitVec> = None;
        let mut rep_word = BitVec::zeros(n);
        for hmask in 1u128..(1u128 << k) {
            rep_word.xor_assign(&reps[hmask.trailing_zeros() as usize]);
            let mut cur = rep_word.clone();
            let mut scan = |cur: &BitVec, best_h: &mut usize, best_c: &mut usize,
                            witness: &mut Option<BitVec>| {
                let h = cur.weight();
                let c = self.cell_norm(1, cur);
                if h < *best_h {
                    *best_h = h;
                    *witness = Some(cur.clone());
                }
                *best_c = (*best_c).min(c);
            };
            scan(&cur, &mut best_h, &mut best_c, &mut witness);
            for bmask in 1u128..(1u128 << b_dim) {
                cur.xor_assign(&image_basis[bmask.trailing_zeros() as usize]);
                scan(&cur, &mut best_h, &mut best_c, &mut witness);
            }
        }
        Ok(DistanceWitness {
            hamming: Distance::Finite(best_h),
            cell: Distance::Finite(best_c),
            witness,
        })
    }

    /// Co-local reduction: repeatedly subtract coboundaries of single-vertex
    /// blocks while that strictly decreases the grade-1 cell norm. The fixed
    /// point is co-locally minimal.
    pub fn co_local_reduce(&self, c1: &BitVec) -> (BitVec, usize) {
        let (ma, mb) = (self.block_a(), self.block_b());
        let block = ma * mb;
        let mut cur = c1.clone();
        let mut steps = 0usize;
        loop {
            let mut improved = false;
            for v in 0..self.complex.vertex_count() {
                let (base, _) = self.vertex_bits(v);
                // All nonzero block values at v.
                'outer: for beta in 1u64..(1u64 << block) {
                    let mut cand = cur.clone();
                    for t in 0..block {
                        if beta >> t & 1 == 1 {
                            // Column (base + t) of delta^0 = row of boundary_1.
                            cand.xor_assign(&self.boundary1.row(base + t));
                        }
                    }
                    if self.cell_norm(1, &cand) < self.cell_norm(1, &cur) {
                        cur = cand;
                        steps += 1;
                        improved = true;
                        break 'outer;
                    }
                }
            }
            if !improved {
                return (cur, steps);
            }
        }
    }

    /// The co-expansion probe: the constant eta for the given parameters and
    /// per-sample checks of the co-locally-minimal expansion inequality on
    /// reduced random cochains.
    pub fn expansion_probe(
        &self,
        lambda: Ratio<i64>,
        d1: usize,
        d2: Ratio<i64>,
        samples: usize,
        density: f64,
        rng: &mut impl Rng,
    ) -> ExpansionProbe {
        let delta = Ratio::from_integer(self.complex.delta() as i64);
        let d1 = Ratio::from_integer(d1 as i64);
        let g = Ratio::from_integer(self.complex.group_order() as i64);
        let numer = d1 * d2 - lambda * d2 - Ratio::from_integer(8) * lambda * delta;
        let eta = numer / (delta * d2 / Ratio::from_integer(2) + Ratio::from_integer(2) * delta);
        // Slope A and curvature B of the expansion inequality.
        let denom = Ratio::from_integer(4) * d2 + Ratio::from_integer(8) * delta;
        let slope = numer / denom;
        let curve = (delta * d2 / Ratio::from_integer(2) + Ratio::from_integer(2) * delta) / denom;

        let mut checks = Vec::with_capacity(samples);
        for _ in 0..samples {
            let raw = BitVec::from_bools(
                &(0..self.x1_len())
                    .map(|_| rng.random_bool(density))
                    .collect::<Vec<_>>(),
            );
            let (reduced, _) = self.co_local_reduce(&raw);
            let edge_norm = self.cell_norm(1, &reduced) as i64;
            let face_norm = self
                .boundary2
                .transpose()
                .mul_vec(&reduced)
                .weight() as i64;
            let rhs = slope * Ratio::from_integer(edge_norm)
                - curve * Ratio::from_integer(edge_norm * edge_norm) / g;
            checks.push(ExpansionSample {
                edge_norm: edge_norm as usize,
                face_norm: face_norm as usize,
                rhs,
                holds: Ratio::from_integer(face_norm) >= rhs,
            });
        }
        ExpansionProbe {
            eta,
            applicable: eta > Ratio::from_integer(0),
            samples: checks,
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct LdpcProfile {
    pub boundary2_max_row: usize,
    pub boundary2_max_col: usize,
    pub boundary1_max_row: usize,
    pub boundary1_max_col: usize,
}

impl LdpcProfile {
    pub fn max_weight(&self) -> usize {
        self.boundary2_max_row
            .max(self.boundary2_max_col)
            .max(self.boundary1_max_row)
            .max(self.boundary1_max_col)
    }
}

/// A CSS code with Hx Hz^T = 0.
#[derive(Clone)]
pub struct CssCode {
    pub hx: BitMatrix,
    pub hz: BitMatrix,
}

impl CssCode {
    pub fn qubits(&self) -> usize {
        self.hx.cols()
    }

    pub fn dimension(&self) -> usize {
        self.qubits() - self.hx.rank() - self.hz.rank()
    }

    pub fn commutes(&self) -> bool {
        self.hx.mul(&self.hz.transpose()).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct DistanceWitness {
    pub hamming: Distance,
    pub cell: Distance,
    pub witness: Option<BitVec>,
}

#[derive(Clone, Debug)]
pub struct QuantumDistances {
    pub dx: DistanceWitness,
    pub dz: DistanceWitness,
}

#[derive(Clone, Debug)]
pub struct ExpansionSample {
    pub edge_norm: usize,
    pub face_norm: usize,
    pub rhs: Ratio<i64>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ExpansionProbe {
    pub eta: Ratio<i64>,
    pub applicable: bool,
    pub samples: Vec<ExpansionSample>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::repetition;
    use crate::group::{build_cyclic, Side};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn small_instance(n: usize) -> ChainComplexX {
        let (g, a) = build_cyclic(n, &[1, -1], Side::Left).unwrap();
        let (_, b) = build_cyclic(n, &[1, -1], Side::Right).unwrap();
        let complex = LeftRightComplex::new(g, a, b).unwrap();
        ChainComplexX::build(Arc::new(complex), repetition(2), repetition(2)).unwrap()
    }

    #[test]
    fn tanner_map_identity_is_copy() {
        let x = small_instance(5);
        let g = x.complex().subgraph(SubgraphKind::EdgeFaceVertical);
        let t = tanner_map(&g, &BitMatrix::identity(2)).unwrap();
        // Copy map: one bit per (vertex, slot), exactly 2 ones per column
        // (each face copies to its two vertical edges).
        for e in 0..t.cols() {
            assert_eq!(t.col_weight(e), 2);
        }
        for v in 0..g.vertex_count() {
            for (slot, &edge) in g.vertex_slots[v].iter().enumerate() {
                assert!(t.get(v * 2 + slot, edge as usize));
            }
        }
    }

    #[test]
    fn tanner_map_zero_checks() {
        let x = small_instance(5);
        let g = x.complex().subgraph(SubgraphKind::EdgeFaceVertical);
        let t = tanner_map(&g, &BitMatrix::zeros(0, 2)).unwrap();
        assert_eq!(t.rows(), 0);
    }

    #[test]
    fn sizes_match_formulas() {
        let x = small_instance(5);
        assert_eq!(x.x2_len(), 20);
        assert_eq!(x.x1_len(), 40); // 2 * 2 * (1 + 1) * 5
        assert_eq!(x.x0_len(), 20); // 4 * 5 * 1 * 1
    }

    #[test]
    fn chain_condition_enforced() {
        // Build is only constructible when boundary_1 boundary_2 = 0, so
        // exercise several group orders.
        for n in [3usize, 4, 5, 6, 8] {
            let x = small_instance(n);
            assert!(x.boundary1().mul(x.boundary2()).is_zero());
        }
    }

    #[test]
    fn ldpc_profile_bounds() {
        let x = small_instance(5);
        let p = x.ldpc_profile();
        let delta = x.complex().delta();
        assert!(p.max_weight() <= 4 * delta);
        assert!(p.boundary2_max_col <= 4 * x.block_a().max(x.block_b()));
        assert!(p.boundary2_max_row <= delta);
        assert!(p.boundary1_max_col <= 2 * x.block_a().max(x.block_b()));
        assert!(p.boundary1_max_row <= 2 * delta);
    }

    #[test]
    fn dimension_and_rate_bounds() {
        let x = small_instance(5);
        let (k, rate, bound) = x.dimension_and_rate();
        assert_eq!(
            k,
            x.x1_len() - x.boundary1().rank() - x.boundary2().rank()
        );
        assert!(rate >= bound);
        // rho_a = rho_b = 1/2 makes the closed-form lower bound zero.
        assert_eq!(bound, Ratio::new(0, 1));
    }

    #[test]
    fn css_code_is_css() {
        let x = small_instance(5);
        let css = x.css_code();
        assert!(css.commutes());
        assert_eq!(css.qubits(), x.x1_len());
        assert_eq!(css.dimension(), x.dimension());
    }

    #[test]
    fn dual_complex_swaps_roles() {
        let x = small_instance(5);
        let dual = x.dual_complex().unwrap();
        // repetition-2 is self-dual, so sizes match here.
        assert_eq!(dual.x1_len(), x.x1_len());
        assert!(dual.boundary1().mul(dual.boundary2()).is_zero());
        let dual2 = dual.dual_complex().unwrap();
        assert_eq!(dual2.x1_len(), x.x1_len());
        assert_eq!(dual2.dimension(), x.dimension());
    }

    #[test]
    fn norm_sandwich() {
        let x = small_instance(5);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let v = BitVec::from_bools(
                &(0..x.x1_len()).map(|_| rng.random()).collect::<Vec<_>>(),
            );
            let cell = x.cell_norm(1, &v);
            let ham = v.weight();
            assert!(cell <= ham);
            assert!(ham <= cell * x.block_a().max(x.block_b()));
        }
    }

    #[test]
    fn coboundary_is_transpose() {
        let x = small_instance(4);
        // delta^0 = boundary_1 transposed, delta^1 = boundary_2 transposed:
        // check via the defining adjoint identity <d c, v> = <c, d^T v>.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let c = BitVec::from_bools(
                &(0..x.x1_len()).map(|_| rng.random()).collect::<Vec<_>>(),
            );
            let v = BitVec::from_bools(
                &(0..x.x0_len()).map(|_| rng.random()).collect::<Vec<_>>(),
            );
            let lhs = x.boundary1().mul_vec(&c).dot(&v);
            let rhs = c.dot(&x.boundary1().transpose().mul_vec(&v));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn distances_on_tiny_instance() {
        let x = small_instance(3);
        let d = x.quantum_distance_exact(1 << 24).unwrap();
        let k = x.dimension();
        if k == 0 {
            assert_eq!(d.dz.hamming, Distance::Infinite);
        } else {
            let dz = d.dz.hamming.finite().unwrap();
            let w = d.dz.witness.unwrap();
            // The witness is a cycle outside the boundary space.
            assert!(x.boundary1().mul_vec(&w).is_zero());
            assert_eq!(w.weight(), dz);
        }
    }

    #[test]
    fn distance_matches_full_kernel_scan() {
        // Independent oracle: enumerate the whole kernel of boundary_1 and
        // test membership in the boundary image span.
        let x = small_instance(3);
        let kernel = x.boundary1().kernel_basis();
        let image: Vec<BitVec> = (0..x.boundary2().cols())
            .map(|j| x.boundary2().column(j))
            .collect();
        let span = SpanTester::new(&image, x.x1_len());
        let mut best = usize::MAX;
        let dim = kernel.len();
        assert!(dim <= 24);
        let mut cur = BitVec::zeros(x.x1_len());
        for i in 1u64..(1 << dim) {
            cur.xor_assign(&kernel[i.trailing_zeros() as usize]);
            if !span.contains(&cur) {
                best = best.min(cur.weight());
            }
        }
        let d = x.quantum_distance_exact(1 << 26).unwrap();
        match d.dz.hamming {
            Distance::Finite(v) => assert_eq!(v, best),
            Distance::Infinite => assert_eq!(best, usize::MAX),
        }
    }

    #[test]
    fn expansion_probe_reports_sign() {
        let x = small_instance(5);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        // Forced-positive parameters: eta = 2.5 at lambda=1, d1=d2=20,
        // Delta=10 is checked in the decoder radii; here probe the real
        // instance inequality with its own (tiny) parameters.
        let probe = x.expansion_probe(
            Ratio::from_integer(2),
            2,
            Ratio::from_integer(1),
            5,
            0.1,
            &mut rng,
        );
        // d1 d2 - lambda d2 - 8 lambda Delta = 2 - 2 - 32 < 0: inapplicable.
        assert!(!probe.applicable);
        assert_eq!(probe.samples.len(), 5);
    }
}
