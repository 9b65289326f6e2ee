//! Dense bit-packed linear algebra over GF(2).
//!
//! Every map in the crate (boundary operators, parity checks, Kronecker
//! products) is a [`BitMatrix`]; every chain, codeword, or syndrome is a
//! [`BitVec`]. Words are 64-bit and rows are packed row-major. Bits past
//! `len` (or past `cols` in the last word of a row) are kept at zero.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    let r = bits % WORD_BITS;
    if r == 0 {
        u64::MAX
    } else {
        (1u64 << r) - 1
    }
}

/// Packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Standard basis vector e_i.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / WORD_BITS];
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xored(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Indices of set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// True if the set bits of `self` are a subset of the set bits of `mask`.
    pub fn supported_on(&self, mask: &BitVec) -> bool {
        debug_assert_eq!(self.len, mask.len);
        self.words
            .iter()
            .zip(&mask.words)
            .all(|(a, m)| a & !m == 0)
    }

    /// Strict lexicographic order on the bit string b_0 b_1 ... b_{len-1}
    /// (a 0 at the first differing position sorts first).
    pub fn lex_less(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = a ^ b;
                let first = diff.trailing_zeros();
                return (a >> first) & 1 == 0;
            }
        }
        false
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Packed row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        Self {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Build from 0/1 entries, one slice per row.
    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| rows[i][j] != 0)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.wpr + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.wpr + j / WORD_BITS];
        let bit = 1u64 << (j % WORD_BITS);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.wpr + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.wpr..(i + 1) * self.wpr]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn set_row(&mut self, i: usize, v: &BitVec) {
        debug_assert_eq!(v.len, self.cols);
        self.data[i * self.wpr..(i + 1) * self.wpr].copy_from_slice(&v.words);
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn max_row_weight(&self) -> usize {
        (0..self.rows).map(|i| self.row_weight(i)).max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        let mut counts = vec![0usize; self.cols];
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                counts[j] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * self.wpr);
            (&lo[src * self.wpr..(src + 1) * self.wpr], &mut hi[..self.wpr])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * self.wpr);
            let dst_slice = &mut lo[dst * self.wpr..(dst + 1) * self.wpr];
            return {
                for (d, s) in dst_slice.iter_mut().zip(&hi[..self.wpr]) {
                    *d ^= s;
                }
            };
        };
        for (d, s) in b.iter_mut().zip(a) {
            *d ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.wpr {
            self.data.swap(a * self.wpr + k, b * self.wpr + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, other.rows,
            "mul: {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; out.wpr];
            for j in self.row(i).iter_ones() {
                for (a, b) in acc.iter_mut().zip(other.row_words(j)) {
                    *a ^= b;
                }
            }
            out.data[i * out.wpr..(i + 1) * out.wpr].copy_from_slice(&acc);
        }
        out
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len, "mul_vec: {} cols vs {} len", self.cols, v.len);
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(&v.words)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn xor_assign(&mut self, other: &BitMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    /// Kronecker product with row-major index convention:
    /// entry ((i_a * rows_b + i_b), (j_a * cols_b + j_b)) = A[i_a,j_a] * B[i_b,j_b].
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for ia in 0..self.rows {
            for ja in self.row(ia).iter_ones() {
                for ib in 0..other.rows {
                    for jb in other.row(ib).iter_ones() {
                        out.set(ia * other.rows + ib, ja * other.cols + jb, true);
                    }
                }
            }
        }
        out
    }

    /// Rank over GF(2); the matrix is not mutated.
    pub fn rank(&self) -> usize {
        self.clone().echelonize().rank
    }

    /// Basis of the kernel {v : Mv = 0}; `cols - rank` vectors.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let ech = self.clone().echelonize();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - ech.rank);
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in ech.pivots.iter().enumerate() {
                if ech.mat.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve Mx = b. Returns a particular solution plus a kernel basis, or
    /// None when the system is inconsistent.
    pub fn solve_affine(&self, b: &BitVec) -> Result<Option<(BitVec, Vec<BitVec>)>> {
        if b.len != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve_affine: rhs length {} vs {} rows",
                b.len, self.rows
            )));
        }
        // Eliminate on [M | b].
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            let w = &mut aug.data[i * aug.wpr..i * aug.wpr + self.wpr];
            w.copy_from_slice(self.row_words(i));
            // Clear any tail bits that now alias column `cols`.
            if self.cols % WORD_BITS != 0 {
                let last = self.wpr - 1;
                aug.data[i * aug.wpr + last] &= tail_mask(self.cols);
            }
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let ech = aug.echelonize();
        let mut pivots = Vec::new();
        for &p in &ech.pivots {
            if p == self.cols {
                return Ok(None); // pivot in the augmented column
            }
            pivots.push(p);
        }
        let mut particular = BitVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if ech.mat.get(r, self.cols) {
                particular.set(p, true);
            }
        }
        Ok(Some((particular, self.kernel_basis())))
    }

    /// Left inverse J with J * M = I for injective M (pivots chosen greedily
    /// left to right).
    pub fn left_inverse(&self) -> Result<BitMatrix> {
        // Reduce [M | I] and read the transform rows that correspond to pivots.
        let mut aug = BitMatrix::zeros(self.rows, self.cols + self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                aug.set(i, j, true);
            }
            aug.set(i, self.cols + i, true);
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| aug.get(i, col)) else {
                continue;
            };
            aug.swap_rows(r, pr);
            for i in 0..self.rows {
                if i != r && aug.get(i, col) {
                    aug.xor_row_into(r, i);
                }
            }
            pivots.push(col);
            r += 1;
        }
        if pivots.len() < self.cols {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                cols: self.cols,
            });
        }
        // Row r of the reduced system has pivot in column r (pivots are
        // exactly 0..cols in order), so rows 0..cols of the transform give J.
        let mut j = BitMatrix::zeros(self.cols, self.rows);
        for pr in 0..self.cols {
            for k in 0..self.rows {
                if aug.get(pr, self.cols + k) {
                    j.set(pr, k, true);
                }
            }
        }
        Ok(j)
    }

    fn echelonize(mut self) -> Echelon {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, col)) else {
                continue;
            };
            self.swap_rows(r, pr);
            for i in 0..self.rows {
                if i != r && self.get(i, col) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(col);
            r += 1;
        }
        Echelon {
            rank: pivots.len(),
            pivots,
            mat: self,
        }
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

struct Echelon {
    mat: BitMatrix,
    pivots: Vec<usize>,
    rank: usize,
}

/// Reduced row echelon form of the span of `vecs`, as independent rows.
pub fn row_space_basis(vecs: &[BitVec], len: usize) -> Vec<BitVec> {
    let mut m = BitMatrix::zeros(vecs.len(), len);
    for (i, v) in vecs.iter().enumerate() {
        m.set_row(i, v);
    }
    let ech = m.echelonize();
    (0..ech.rank).map(|i| ech.mat.row(i)).collect()
}

/// Membership tester for the span of a set of vectors.
pub struct SpanTester {
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl SpanTester {
    pub fn new(vecs: &[BitVec], len: usize) -> Self {
        let basis = row_space_basis(vecs, len);
        let pivots = basis
            .iter()
            .map(|v| v.iter_ones().next().expect("nonzero basis row"))
            .collect();
        Self { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        !self.reduce(v).is_some()
    }

    /// Reduce `v` against the basis; Some(remainder) when v is outside the
    /// span, None when it reduces to zero. Basis rows are kept sorted by
    /// pivot so a single forward pass is a full reduction.
    fn reduce(&self, v: &BitVec) -> Option<BitVec> {
        let mut v = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        (!v.is_zero()).then_some(v)
    }

    /// Grow the span by `v`; returns true when the dimension increased.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        match self.reduce(v) {
            None => false,
            Some(rem) => {
                let pivot = rem.iter_ones().next().expect("nonzero remainder");
                let pos = self.pivots.partition_point(|&p| p < pivot);
                self.pivots.insert(pos, pivot);
                self.basis.insert(pos, rem);
                true
            }
        }
    }
}

/// Minimum Hamming weight over all nonzero combinations of a basis, with a
/// witness. Enumerates 2^dim - 1 combinations by Gray code; refuses beyond
/// `cap`.
pub fn min_weight_nonzero(space: &[BitVec], cap: u128) -> Result<Option<(usize, BitVec)>> {
    let dim = space.len();
    if dim == 0 {
        return Ok(None);
    }
    let needed = 1u128
        .checked_shl(dim as u32)
        .ok_or(Error::CapExceeded { needed: u128::MAX, cap })?;
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let len = space[0].len();
    let mut current = BitVec::zeros(len);
    let mut best: Option<(usize, BitVec)> = None;
    for i in 1u128..(1u128 << dim) {
        let flip = i.trailing_zeros() as usize;
        current.xor_assign(&space[flip]);
        let w = current.weight();
        if w > 0 && best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, current.clone()));
        }
    }
    Ok(best)
}
