//! Classical linear codes specified by parity-check matrices: duals, exact
//! distance by enumeration, puncturing, and uniform sampling.

use crate::error::{Error, Result};
use crate::gf2::{min_weight_nonzero, row_space_basis, BitMatrix, BitVec};
use rand::Rng;

/// Minimum distance; the zero code gets a distinguished infinite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// A linear code C = ker H with cached dimension.
#[derive(Clone)]
pub struct LinearCode {
    h: BitMatrix,
    k: usize,
    generators: Vec<BitVec>,
}

impl LinearCode {
    pub fn from_parity_check(h: BitMatrix) -> Self {
        let generators = h.kernel_basis();
        let k = generators.len();
        Self { h, k, generators }
    }

    /// Code from a spanning set of codewords; the parity check is derived
    /// from a basis of the span.
    pub fn from_span(words: &[BitVec], n: usize) -> Self {
        let basis = row_space_basis(words, n);
        let mut gen_mat = BitMatrix::zeros(basis.len(), n);
        for (i, v) in basis.iter().enumerate() {
            gen_mat.set_row(i, v);
        }
        // Parity rows span the dual: kernel of x -> G x.
        let h_rows = gen_mat.kernel_basis();
        let mut h = BitMatrix::zeros(h_rows.len(), n);
        for (i, v) in h_rows.iter().enumerate() {
            h.set_row(i, v);
        }
        Self {
            h,
            k: basis.len(),
            generators: basis,
        }
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.h.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of parity rows as given (not necessarily the rank).
    pub fn check_count(&self) -> usize {
        self.h.rows()
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// A basis of the code.
    pub fn generators(&self) -> &[BitVec] {
        &self.generators
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.h.mul_vec(v).is_zero()
    }

    /// The dual code: parity check rows form a basis of C, so its kernel is
    /// exactly the words orthogonal to C.
    pub fn dual(&self) -> LinearCode {
        let n = self.len();
        let mut h = BitMatrix::zeros(self.k, n);
        for (i, g) in self.generators.iter().enumerate() {
            h.set_row(i, g);
        }
        LinearCode::from_parity_check(h)
    }

    /// Exact minimum distance by enumerating all 2^k - 1 nonzero codewords.
    pub fn distance_exact(&self, cap: u128) -> Result<Distance> {
        if self.k == 0 {
            return Ok(Distance::Infinite);
        }
        match min_weight_nonzero(&self.generators, cap)? {
            Some((w, _)) => Ok(Distance::Finite(w)),
            None => Ok(Distance::Infinite),
        }
    }

    /// Restriction of every codeword to the coordinates outside `punctured`.
    pub fn puncture(&self, punctured: &[usize]) -> Result<LinearCode> {
        let n = self.len();
        if punctured.iter().any(|&i| i >= n) {
            return Err(Error::InvalidParameter(
                "puncture index out of range".into(),
            ));
        }
        let mut drop = vec![false; n];
        for &i in punctured {
            drop[i] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !drop[i]).collect();
        let restricted: Vec<BitVec> = self
            .generators
            .iter()
            .map(|g| BitVec::from_bools(&keep.iter().map(|&i| g.get(i)).collect::<Vec<_>>()))
            .collect();
        Ok(LinearCode::from_span(&restricted, keep.len()))
    }
}

/// Uniformly random k-dimensional code of length n, by rejection sampling of
/// full-rank k x n generator matrices.
pub fn sample_uniform(n: usize, k: usize, rng: &mut impl Rng) -> LinearCode {
    assert!(k <= n, "dimension {k} exceeds length {n}");
    if k == 0 {
        return LinearCode::from_parity_check(BitMatrix::identity(n));
    }
    loop {
        let g = BitMatrix::from_fn(k, n, |_, _| rng.random());
        if g.rank() == k {
            let rows: Vec<BitVec> = (0..k).map(|i| g.row(i)).collect();
            return LinearCode::from_span(&rows, n);
        }
    }
}

/// The [n, 1] repetition code.
pub fn repetition(n: usize) -> LinearCode {
    let h = BitMatrix::from_fn(n.saturating_sub(1), n, |i, j| j == i || j == i + 1);
    LinearCode::from_parity_check(h)
}

/// The [n, n-1] single-parity-check code.
pub fn parity(n: usize) -> LinearCode {
    LinearCode::from_parity_check(BitMatrix::from_fn(1, n, |_, _| true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn from_parity_check_examples() {
        let empty = LinearCode::from_parity_check(BitMatrix::zeros(0, 4));
        assert_eq!(empty.dim(), 4);

        let zero = LinearCode::from_parity_check(BitMatrix::identity(3));
        assert_eq!(zero.dim(), 0);

        let rep3 = repetition(3);
        assert_eq!(rep3.dim(), 1);
        assert_eq!(rep3.distance_exact(1 << 20).unwrap(), Distance::Finite(3));
    }

    #[test]
    fn dual_examples() {
        let rep3 = repetition(3);
        let dual = rep3.dual();
        assert_eq!(dual.dim(), 2);
        assert_eq!(dual.distance_exact(1 << 20).unwrap(), Distance::Finite(2));
        // Biduality: same subspace back.
        let bidual = dual.dual();
        assert_eq!(bidual.dim(), rep3.dim());
        for g in rep3.generators() {
            assert!(bidual.contains(g));
        }
        // Orthogonality of every generator pair.
        for u in rep3.generators() {
            for w in dual.generators() {
                assert!(!u.dot(w));
            }
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(repetition(5).distance_exact(1 << 20).unwrap(), Distance::Finite(5));
        let full = LinearCode::from_parity_check(BitMatrix::zeros(0, 4));
        assert_eq!(full.distance_exact(1 << 20).unwrap(), Distance::Finite(1));
        let zero = LinearCode::from_parity_check(BitMatrix::identity(3));
        assert_eq!(zero.distance_exact(1 << 20).unwrap(), Distance::Infinite);
    }

    #[test]
    fn distance_matches_direct_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let code = sample_uniform(6, 3, &mut rng);
            let d = code.distance_exact(1 << 20).unwrap().finite().unwrap();
            // Enumerate all 8 codewords directly.
            let mut best = usize::MAX;
            for mask in 1u32..8 {
                let mut w = BitVec::zeros(6);
                for (i, g) in code.generators().iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        w.xor_assign(g);
                    }
                }
                if !w.is_zero() {
                    best = best.min(w.weight());
                }
            }
            assert_eq!(d, best);
        }
    }

    #[test]
    fn puncture_examples() {
        let rep3 = repetition(3);
        let same = rep3.puncture(&[]).unwrap();
        assert_eq!(same.dim(), 1);
        assert_eq!(same.len(), 3);

        let rep2 = rep3.puncture(&[1]).unwrap();
        assert_eq!(rep2.len(), 2);
        assert_eq!(rep2.dim(), 1);
        assert_eq!(rep2.distance_exact(1 << 20).unwrap(), Distance::Finite(2));
    }

    #[test]
    fn puncture_dimension_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let code = sample_uniform(6, 3, &mut rng);
            let p = code.puncture(&[0, 4]).unwrap();
            assert!(p.dim() <= 3);
            assert!(p.dim() >= 1); // k - |I|
        }
    }

    #[test]
    fn puncture_commutes_with_restriction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let code = sample_uniform(7, 3, &mut rng);
        let drop = [2usize, 5];
        let p = code.puncture(&drop).unwrap();
        let keep: Vec<usize> = (0..7).filter(|i| !drop.contains(i)).collect();
        for g in code.generators() {
            let restricted =
                BitVec::from_bools(&keep.iter().map(|&i| g.get(i)).collect::<Vec<_>>());
            assert!(p.contains(&restricted));
        }
    }

    #[test]
    fn sample_uniform_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let zero = sample_uniform(4, 0, &mut rng);
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.parity_check().rank(), 4);
        let full = sample_uniform(4, 4, &mut rng);
        assert_eq!(full.dim(), 4);
        for _ in 0..20 {
            let c = sample_uniform(5, 2, &mut rng);
            assert_eq!(c.dim(), 5 - c.parity_check().rank());
        }
    }

    #[test]
    fn sample_uniform_hits_subspaces_uniformly() {
        // All (4,2)_2 = 35 subspaces of F_2^4 of dimension 2, each with
        // frequency 1/35 within 3 sigma over 2000 draws.
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let trials = 2000usize;
        let mut counts: HashMap<Vec<u8>, usize> = HashMap::new();
        for _ in 0..trials {
            let code = sample_uniform(4, 2, &mut rng);
            // Canonical key: sorted list of all codewords as bytes.
            let mut words: Vec<u8> = (0..4u32)
                .map(|mask| {
                    let mut w = BitVec::zeros(4);
                    for (i, g) in code.generators().iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            w.xor_assign(g);
                        }
                    }
                    (0..4).fold(0u8, |acc, i| acc | (u8::from(w.get(i)) << i))
                })
                .collect();
            words.sort_unstable();
            *counts.entry(words).or_default() += 1;
        }
        assert_eq!(counts.len(), 35);
        let p = 1.0 / 35.0;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        for (_, &c) in &counts {
            assert!((c as f64 - trials as f64 * p).abs() <= 3.0 * sigma + 1.0);
        }
    }
}
