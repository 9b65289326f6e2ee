//! Robustness of tensor code pairs, exactly: Sigma membership, minimal
//! decompositions, the robustness constant d2 as an exact rational with two
//! independent brute-force oracles, agreement testability, structured
//! decompositions through left-inverse recovery, punctured-code heavy-row
//! checks, Gaussian binomials, counting bounds, and the exact local complex
//! Y(H_A, H_B).

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{row_space_basis, BitMatrix, BitVec};
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use std::collections::HashMap;

/// A word of the tensor space F_2^{n_a x n_b} with its three weight variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWord {
    pub mat: BitMatrix,
}

impl TensorWord {
    pub fn new(mat: BitMatrix) -> Self {
        Self { mat }
    }

    /// Entrywise Hamming weight.
    pub fn weight(&self) -> usize {
        (0..self.mat.rows()).map(|i| self.mat.row_weight(i)).sum()
    }

    /// Number of nonzero columns.
    pub fn col_norm(&self) -> usize {
        (0..self.mat.cols())
            .filter(|&j| (0..self.mat.rows()).any(|i| self.mat.get(i, j)))
            .count()
    }

    /// Number of nonzero rows.
    pub fn row_norm(&self) -> usize {
        (0..self.mat.rows())
            .filter(|&i| self.mat.row_weight(i) > 0)
            .count()
    }
}

/// Flatten row-major: entry (i, j) -> bit i * cols + j.
pub fn mat_to_vec(m: &BitMatrix) -> BitVec {
    let mut v = BitVec::zeros(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in m.row(i).iter_ones() {
            v.set(i * m.cols() + j, true);
        }
    }
    v
}

pub fn vec_to_mat(v: &BitVec, rows: usize, cols: usize) -> BitMatrix {
    debug_assert_eq!(v.len(), rows * cols);
    BitMatrix::from_fn(rows, cols, |i, j| v.get(i * cols + j))
}

/// c in Sigma(C_A, C_B) iff H_A c H_B^T = 0.
pub fn sigma_member(c: &BitMatrix, ca: &LinearCode, cb: &LinearCode) -> Result<bool> {
    if c.rows() != ca.len() || c.cols() != cb.len() {
        return Err(Error::ShapeMismatch(format!(
            "word is {}x{}, codes have lengths {} and {}",
            c.rows(),
            c.cols(),
            ca.len(),
            cb.len()
        )));
    }
    Ok(ca
        .parity_check()
        .mul(c)
        .mul(&cb.parity_check().transpose())
        .is_zero())
}

/// A decomposition c = c_a + c_b with every column of c_a in C_A and every
/// row of c_b in C_B; cost = nonzero columns of c_a + nonzero rows of c_b.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub c_a: BitMatrix,
    pub c_b: BitMatrix,
    pub cost: usize,
}

impl Decomposition {
    fn from_parts(c_a: BitMatrix, c_b: BitMatrix) -> Self {
        let cost = TensorWord::new(c_a.clone()).col_norm() + TensorWord::new(c_b.clone()).row_norm();
        Self { c_a, c_b, cost }
    }

    pub fn verify(&self, c: &BitMatrix, ca: &LinearCode, cb: &LinearCode) -> bool {
        let mut sum = self.c_a.clone();
        sum.xor_assign(&self.c_b);
        if &sum != c {
            return false;
        }
        (0..self.c_a.cols()).all(|j| ca.contains(&self.c_a.column(j)))
            && (0..self.c_b.rows()).all(|i| cb.contains(&self.c_b.row(i)))
    }
}

/// Basis of Sigma(C_A, C_B) = C_A (x) F^{n_b} + F^{n_a} (x) C_B as flattened
/// vectors.
pub fn sigma_basis(ca: &LinearCode, cb: &LinearCode) -> Vec<BitVec> {
    let (na, nb) = (ca.len(), cb.len());
    let mut gens = Vec::new();
    for g in ca.generators() {
        for j in 0..nb {
            let m = BitMatrix::from_fn(na, nb, |i, jj| jj == j && g.get(i));
            gens.push(mat_to_vec(&m));
        }
    }
    for g in cb.generators() {
        for i in 0..na {
            let m = BitMatrix::from_fn(na, nb, |ii, j| ii == i && g.get(j));
            gens.push(mat_to_vec(&m));
        }
    }
    row_space_basis(&gens, na * nb)
}

/// Globally minimal-cost decomposition of c in Sigma, found by enumerating
/// the affine family of valid c_b (rows in C_B with all columns of c + c_b
/// in C_A). Errors when c is not in Sigma or the coset exceeds `cap`.
pub fn min_decomposition(
    c: &BitMatrix,
    ca: &LinearCode,
    cb: &LinearCode,
    cap: u128,
) -> Result<Decomposition> {
    if c.rows() != ca.len() || c.cols() != cb.len() {
        return Err(Error::ShapeMismatch("min_decomposition shapes".into()));
    }
    let (na, _nb) = (ca.len(), cb.len());
    let kb = cb.dim();
    // c_b = R G_B row-wise; constraint H_A (c + R G_B) = 0, i.e.
    // (H_A kron G_B^T) vec(R) = vec(H_A c).
    let mut gb = BitMatrix::zeros(kb, cb.len());
    for (i, g) in cb.generators().iter().enumerate() {
        gb.set_row(i, g);
    }
    let system = ca.parity_check().kron(&gb.transpose());
    let rhs = mat_to_vec(&ca.parity_check().mul(c));
    let Some((particular, kernel)) = system.solve_affine(&rhs)? else {
        return Err(Error::NotInSigma);
    };
    let dim = kernel.len();
    if dim >= 127 || (1u128 << dim) > cap {
        return Err(Error::CapExceeded {
            needed: 1u128.checked_shl(dim as u32).unwrap_or(u128::MAX),
            cap,
        });
    }
    let eval = |r_vec: &BitVec| -> Decomposition {
        let r = vec_to_mat(r_vec, na, kb);
        let c_b = r.mul(&gb);
        let mut c_a = c.clone();
        c_a.xor_assign(&c_b);
        Decomposition::from_parts(c_a, c_b)
    };
    let mut current = particular.clone();
    let mut best = eval(&current);
    for i in 1u128..(1u128 << dim) {
        current.xor_assign(&kernel[i.trailing_zeros() as usize]);
        let cand = eval(&current);
        if cand.cost < best.cost
            || (cand.cost == best.cost
                && mat_to_vec(&cand.c_b).lex_less(&mat_to_vec(&best.c_b)))
        {
            best = cand;
        }
    }
    Ok(best)
}

/// Exact robustness of a pair, or the vacuous flag when Sigma = {0}.
#[derive(Clone, Debug)]
pub struct RobustnessReport {
    /// min over nonzero c in Sigma of |c| / min-decomposition-cost.
    pub d2: Option<Ratio<u64>>,
    pub witness: Option<(BitMatrix, Decomposition)>,
    pub sigma_dim: usize,
}

impl RobustnessReport {
    pub fn is_vacuous(&self) -> bool {
        self.d2.is_none()
    }
}

/// Primary oracle: enumerate Sigma, take the minimal |c| / cost ratio with
/// the minimal decomposition from [`min_decomposition`].
pub fn robustness_exact(ca: &LinearCode, cb: &LinearCode, cap: u128) -> Result<RobustnessReport> {
    let basis = sigma_basis(ca, cb);
    let dim = basis.len();
    if dim == 0 {
        return Ok(RobustnessReport {
            d2: None,
            witness: None,
            sigma_dim: 0,
        });
    }
    if dim >= 127 || (1u128 << dim) > cap {
        return Err(Error::CapExceeded {
            needed: 1u128.checked_shl(dim as u32).unwrap_or(u128::MAX),
            cap,
        });
    }
    let (na, nb) = (ca.len(), cb.len());
    let mut current = BitVec::zeros(na * nb);
    let mut best: Option<(Ratio<u64>, BitMatrix, Decomposition)> = None;
    for i in 1u128..(1u128 << dim) {
        current.xor_assign(&basis[i.trailing_zeros() as usize]);
        let m = vec_to_mat(&current, na, nb);
        let dec = min_decomposition(&m, ca, cb, cap)?;
        debug_assert!(dec.cost > 0);
        let ratio = Ratio::new(current.weight() as u64, dec.cost as u64);
        if best.as_ref().is_none_or(|(b, _, _)| ratio < *b) {
            best = Some((ratio, m, dec));
        }
    }
    let (d2, w, dec) = best.expect("dim > 0 means a nonzero word exists");
    Ok(RobustnessReport {
        d2: Some(d2),
        witness: Some((w, dec)),
        sigma_dim: dim,
    })
}

/// Second, independently structured oracle: enumerate all (c_a, c_b) pairs
/// directly and fold min-cost per word into a table, then take the worst
/// ratio. No affine solving involved.
pub fn robustness_exact_oracle2(
    ca: &LinearCode,
    cb: &LinearCode,
    cap: u128,
) -> Result<Option<Ratio<u64>>> {
    let (na, nb) = (ca.len(), cb.len());
    let ka_gens: Vec<BitVec> = {
        let mut v = Vec::new();
        for g in ca.generators() {
            for j in 0..nb {
                v.push(mat_to_vec(&BitMatrix::from_fn(na, nb, |i, jj| {
                    jj == j && g.get(i)
                })));
            }
        }
        v
    };
    let kb_gens: Vec<BitVec> = {
        let mut v = Vec::new();
        for g in cb.generators() {
            for i in 0..na {
                v.push(mat_to_vec(&BitMatrix::from_fn(na, nb, |ii, j| {
                    ii == i && g.get(j)
                })));
            }
        }
        v
    };
    let da = ka_gens.len();
    let db = kb_gens.len();
    if da + db >= 127 || (1u128 << (da + db)) > cap {
        return Err(Error::CapExceeded {
            needed: 1u128.checked_shl((da + db) as u32).unwrap_or(u128::MAX),
            cap,
        });
    }
    // Pre-walk c_a values with their column norms, same for c_b.
    let mut a_items = Vec::with_capacity(1 << da);
    let mut cur = BitVec::zeros(na * nb);
    a_items.push((cur.clone(), 0usize));
    for i in 1u64..(1u64 << da) {
        cur.xor_assign(&ka_gens[i.trailing_zeros() as usize]);
        let norm = TensorWord::new(vec_to_mat(&cur, na, nb)).col_norm();
        a_items.push((cur.clone(), norm));
    }
    let mut b_items = Vec::with_capacity(1 << db);
    let mut cur = BitVec::zeros(na * nb);
    b_items.push((cur.clone(), 0usize));
    for i in 1u64..(1u64 << db) {
        cur.xor_assign(&kb_gens[i.trailing_zeros() as usize]);
        let norm = TensorWord::new(vec_to_mat(&cur, na, nb)).row_norm();
        b_items.push((cur.clone(), norm));
    }
    let mut best_cost: HashMap<BitVec, usize> = HashMap::new();
    for (a, ca_norm) in &a_items {
        for (b, cb_norm) in &b_items {
            let word = a.xored(b);
            let cost = ca_norm + cb_norm;
            best_cost
                .entry(word)
                .and_modify(|c| *c = (*c).min(cost))
                .or_insert(cost);
        }
    }
    let mut best: Option<Ratio<u64>> = None;
    for (word, cost) in &best_cost {
        if word.is_zero() {
            continue;
        }
        let ratio = Ratio::new(word.weight() as u64, *cost as u64);
        if best.is_none_or(|b| ratio < b) {
            best = Some(ratio);
        }
    }
    Ok(best)
}

/// Exact agreement-testability constant d2', evaluated straight from its
/// definition: min over pairs (c_a, c_b) with c_a != c_b of
/// |c_a + c_b| / min over c in C_A (x) C_B of (cols(c + c_a) + rows(c + c_b)).
pub fn agreement_test_parameter(
    ca: &LinearCode,
    cb: &LinearCode,
    cap: u128,
) -> Result<Option<Ratio<u64>>> {
    let (na, nb) = (ca.len(), cb.len());
    if na * nb > 64 {
        return Err(Error::CapExceeded {
            needed: u128::MAX,
            cap,
        });
    }
    let da = ca.dim() * nb;
    let db = na * cb.dim();
    let dc = ca.dim() * cb.dim();
    let work = (1u128 << da) * (1u128 << db) * (1u128 << dc);
    if da + db + dc >= 100 || work > cap * 16 {
        return Err(Error::CapExceeded { needed: work, cap });
    }

    let pack = |v: &BitVec| -> u64 { v.words().first().copied().unwrap_or(0) };
    let expand = |gens: &[BitVec]| -> Vec<u64> {
        let dim = gens.len();
        let mut out = Vec::with_capacity(1 << dim);
        let mut cur = BitVec::zeros(na * nb);
        out.push(0u64);
        for i in 1u64..(1u64 << dim) {
            cur.xor_assign(&gens[i.trailing_zeros() as usize]);
            out.push(pack(&cur));
        }
        out
    };

    let mut a_gens = Vec::new();
    for g in ca.generators() {
        for j in 0..nb {
            a_gens.push(mat_to_vec(&BitMatrix::from_fn(na, nb, |i, jj| {
                jj == j && g.get(i)
            })));
        }
    }
    let mut b_gens = Vec::new();
    for g in cb.generators() {
        for i in 0..na {
            b_gens.push(mat_to_vec(&BitMatrix::from_fn(na, nb, |ii, j| {
                ii == i && g.get(j)
            })));
        }
    }
    // C_A (x) C_B basis: g_a (x) g_b.
    let mut c_gens = Vec::new();
    for ga in ca.generators() {
        for gb in cb.generators() {
            c_gens.push(mat_to_vec(&BitMatrix::from_fn(na, nb, |i, j| {
                ga.get(i) && gb.get(j)
            })));
        }
    }
    let a_words = expand(&a_gens);
    let b_words = expand(&b_gens);
    let c_words = expand(&c_gens);

    let col_norm_of = |w: u64| -> u8 {
        let m = vec_to_mat(&unpack(w, na * nb), na, nb);
        TensorWord::new(m).col_norm() as u8
    };
    let row_norm_of = |w: u64| -> u8 {
        let m = vec_to_mat(&unpack(w, na * nb), na, nb);
        TensorWord::new(m).row_norm() as u8
    };
    // cost tables: col_cost[ci][ai] = cols(c + c_a), row_cost[ci][bi].
    let col_cost: Vec<Vec<u8>> = c_words
        .iter()
        .map(|&c| a_words.iter().map(|&a| col_norm_of(c ^ a)).collect())
        .collect();
    let row_cost: Vec<Vec<u8>> = c_words
        .iter()
        .map(|&c| b_words.iter().map(|&b| row_norm_of(c ^ b)).collect())
        .collect();

    let mut best: Option<Ratio<u64>> = None;
    for (ai, &a) in a_words.iter().enumerate() {
        for (bi, &b) in b_words.iter().enumerate() {
            let disagreement = (a ^ b).count_ones() as u64;
            if disagreement == 0 {
                continue; // c_a = c_b is the vacuous case
            }
            let mut min_cost = u32::MAX;
            for ci in 0..c_words.len() {
                let cost = col_cost[ci][ai] as u32 + row_cost[ci][bi] as u32;
                min_cost = min_cost.min(cost);
            }
            debug_assert!(min_cost > 0);
            let ratio = Ratio::new(disagreement, min_cost as u64);
            if best.is_none_or(|bst| ratio < bst) {
                best = Some(ratio);
            }
        }
    }
    Ok(best)
}

fn unpack(word: u64, len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        if word >> i & 1 == 1 {
            v.set(i, true);
        }
    }
    v
}

/// Structured decomposition of a word supported on I_a x [n_b] U [n_a] x I_b
/// with |I_a|, |I_b| < d1: c_a supported on the I_b columns (recovered
/// through a left inverse of the restricted parity check), c_b = c + c_a on
/// the I_a rows. When |I_a|, |I_b| < d1/2, also verifies
/// |c| >= (d1/2)(cols(c_a) + rows(c_b)).
pub fn structured_decomposition(
    c: &BitMatrix,
    ia: &[usize],
    ib: &[usize],
    ca: &LinearCode,
    cb: &LinearCode,
) -> Result<Decomposition> {
    let (na, nb) = (ca.len(), cb.len());
    if c.rows() != na || c.cols() != nb {
        return Err(Error::ShapeMismatch("structured_decomposition word".into()));
    }
    let d1a = ca.distance_exact(1 << 24)?;
    let d1b = cb.distance_exact(1 << 24)?;
    let d1 = match (d1a.finite(), d1b.finite()) {
        (Some(a), Some(b)) => a.min(b),
        _ => usize::MAX, // zero codes: any puncture stays injective
    };
    if ia.len() >= d1 || ib.len() >= d1 {
        return Err(Error::InvalidParameter(format!(
            "|I_a| = {} and |I_b| = {} must both be < d1 = {}",
            ia.len(),
            ib.len(),
            d1
        )));
    }
    if !sigma_member(c, ca, cb)? {
        return Err(Error::NotInSigma);
    }
    // Support condition.
    let in_ia = |i: usize| ia.contains(&i);
    let in_ib = |j: usize| ib.contains(&j);
    for i in 0..na {
        for j in 0..nb {
            if c.get(i, j) && !in_ia(i) && !in_ib(j) {
                return Err(Error::InvalidParameter(format!(
                    "support condition violated at ({i},{j})"
                )));
            }
        }
    }

    // Recovery map for columns: v = (J_A' H_A|_rest || I_rest) v_rest.
    let rest_a: Vec<usize> = (0..na).filter(|&i| !in_ia(i)).collect();
    let c_a = if ib.is_empty() || ia.len() == na {
        BitMatrix::zeros(na, nb)
    } else if ia.is_empty() {
        // Columns are already full codewords.
        let mut m = BitMatrix::zeros(na, nb);
        for &j in ib {
            for i in 0..na {
                if c.get(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    } else {
        let ha = ca.parity_check();
        let ha_restricted_ia = ha.select_columns(ia);
        let j_a = ha_restricted_ia.left_inverse().map_err(|_| {
            Error::InvalidParameter("restricted parity check is not injective".into())
        })?;
        let ha_rest = ha.select_columns(&rest_a);
        let mut m = BitMatrix::zeros(na, nb);
        for &j in ib {
            let v_rest = BitVec::from_bools(&rest_a.iter().map(|&i| c.get(i, j)).collect::<Vec<_>>());
            let v_ia = j_a.mul_vec(&ha_rest.mul_vec(&v_rest));
            for (pos, &i) in ia.iter().enumerate() {
                if v_ia.get(pos) {
                    m.set(i, j, true);
                }
            }
            for (pos, &i) in rest_a.iter().enumerate() {
                if v_rest.get(pos) {
                    m.set(i, j, true);
                }
            }
        }
        m
    };
    let mut c_b = c.clone();
    c_b.xor_assign(&c_a);
    let dec = Decomposition::from_parts(c_a, c_b);

    // Verify the contract: supports, memberships, and sum.
    for j in 0..nb {
        if !in_ib(j) && (0..na).any(|i| dec.c_a.get(i, j)) {
            return Err(Error::InvalidParameter(format!(
                "c_a leaked outside I_b at column {j}"
            )));
        }
        if !ca.contains(&dec.c_a.column(j)) {
            return Err(Error::InvalidParameter(format!(
                "c_a column {j} is not a codeword"
            )));
        }
    }
    for i in 0..na {
        if !in_ia(i) && dec.c_b.row_weight(i) > 0 {
            return Err(Error::InvalidParameter(format!(
                "c_b leaked outside I_a at row {i}"
            )));
        }
        if !cb.contains(&dec.c_b.row(i)) {
            return Err(Error::InvalidParameter(format!(
                "c_b row {i} is not a codeword"
            )));
        }
    }
    if 2 * ia.len() < d1 && 2 * ib.len() < d1 {
        let weight = TensorWord::new(c.clone()).weight();
        if 2 * weight < d1 * dec.cost {
            return Err(Error::InvalidParameter(format!(
                "half-distance inequality violated: 2|c| = {} < d1 * cost = {}",
                2 * weight,
                d1 * dec.cost
            )));
        }
    }
    Ok(dec)
}

/// Outcome of the punctured heavy-row property check.
#[derive(Clone, Debug)]
pub struct HeavyRowReport {
    pub pass: bool,
    pub pairs_checked: usize,
    pub words_checked: u128,
    /// (I_a, I_b, offending word) when pass is false.
    pub counterexample: Option<(Vec<usize>, Vec<usize>, BitMatrix)>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // Advance.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// For every pair of s-punctured codes, every nonzero word of
/// Sigma(C_A', C_B') must have some row or column of weight >= t.
pub fn punctured_heavy_check(
    ca: &LinearCode,
    cb: &LinearCode,
    s: usize,
    t: usize,
    cap: u128,
) -> Result<HeavyRowReport> {
    let (na, nb) = (ca.len(), cb.len());
    if s >= na || s >= nb {
        return Err(Error::InvalidParameter("puncture larger than the codes".into()));
    }
    let ia_sets = combinations(na, s);
    let ib_sets = combinations(nb, s);
    let mut report = HeavyRowReport {
        pass: true,
        pairs_checked: 0,
        words_checked: 0,
        counterexample: None,
    };
    for ia in &ia_sets {
        let ca_p = ca.puncture(ia)?;
        for ib in &ib_sets {
            let cb_p = cb.puncture(ib)?;
            report.pairs_checked += 1;
            let basis = sigma_basis(&ca_p, &cb_p);
            let dim = basis.len();
            if dim >= 127 {
                return Err(Error::CapExceeded { needed: u128::MAX, cap });
            }
            report.words_checked = report.words_checked.saturating_add((1u128 << dim) - 1);
            if report.words_checked > cap {
                return Err(Error::CapExceeded {
                    needed: report.words_checked,
                    cap,
                });
            }
            let (np_a, np_b) = (ca_p.len(), cb_p.len());
            let mut cur = BitVec::zeros(np_a * np_b);
            for i in 1u128..(1u128 << dim) {
                cur.xor_assign(&basis[i.trailing_zeros() as usize]);
                let m = vec_to_mat(&cur, np_a, np_b);
                let heavy_row = (0..np_a).any(|r| m.row_weight(r) >= t);
                let heavy_col = (0..np_b).any(|c| m.col_weight(c) >= t);
                if !heavy_row && !heavy_col {
                    report.pass = false;
                    report.counterexample = Some((ia.clone(), ib.clone(), m));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Exact Gaussian binomial (x choose y)_2 = [x]_2! / ([y]_2! [x-y]_2!).
pub fn gaussian_binomial(x: u32, y: u32) -> Result<BigUint> {
    if y > x {
        return Err(Error::InvalidParameter(format!("binom({x},{y})_2 needs y <= x")));
    }
    let factorial2 = |z: u32| -> BigUint {
        let mut acc = BigUint::one();
        for i in 1..=z {
            acc *= (BigUint::one() << i) - BigUint::one();
        }
        acc
    };
    Ok(factorial2(x) / (factorial2(y) * factorial2(x - y)))
}

/// The bracketing bound 2^{y(x-y)} <= (x choose y)_2 <= 8 * 2^{y(x-y)}.
pub fn gaussian_binomial_bracket(x: u32, y: u32) -> Result<(BigUint, BigUint, BigUint, bool)> {
    let v = gaussian_binomial(x, y)?;
    let lower = BigUint::one() << (y * (x - y));
    let upper = BigUint::from(8u32) << (y * (x - y));
    let ok = lower <= v && v <= upper;
    Ok((v, lower, upper, ok))
}

/// Count y-dimensional subspaces of F_2^x by enumerating all y x x matrices
/// and deduplicating reduced row echelon forms. Exhaustive oracle for small x.
pub fn subspace_count_oracle(x: u32, y: u32) -> Result<u64> {
    if x > 5 || y > x {
        return Err(Error::InvalidParameter("subspace oracle is for x <= 5".into()));
    }
    if y == 0 {
        return Ok(1);
    }
    let bits = (x * y) as u64;
    let mut seen = std::collections::HashSet::new();
    for assignment in 0u64..(1u64 << bits) {
        // y rows of x bits each.
        let mut rows: Vec<u32> = (0..y)
            .map(|r| ((assignment >> (r * x)) & ((1 << x) - 1)) as u32)
            .collect();
        // Row reduce.
        let mut rank = 0;
        for col in 0..x {
            let Some(p) = (rank..y as usize).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..y as usize {
                if r != rank && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        if rank == y as usize {
            rows.truncate(rank);
            seen.insert(rows);
        }
    }
    Ok(seen.len() as u64)
}

fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// One row of the union bound table: log2 of the bound terms at rank r.
#[derive(Clone, Debug)]
pub struct UnionBoundRow {
    pub rank: usize,
    /// log2 |M(Delta - s, r, t)| bound.
    pub log2_matrix_bound: f64,
    /// log2 of the codeword-probability bound 512 (r+1) 2^{-3/4 ...}.
    pub log2_prob_bound: f64,
    /// log2 of the full term including the subset-choice factor.
    pub log2_term: f64,
    /// Exhaustive |M| and its claimed bound, at tiny Delta.
    pub exact_matrix_count: Option<u64>,
    pub exact_bound_holds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct UnionBoundReport {
    pub rows: Vec<UnionBoundRow>,
    /// log2 of the summed union bound.
    pub log2_total: f64,
}

/// Exhaustive tally of Delta x Delta matrices by (rank, max row/col weight).
/// tally[r][w] = number of matrices with rank r whose heaviest row or column
/// has weight w.
pub fn bad_matrix_tally(delta: usize) -> Result<Vec<Vec<u64>>> {
    if delta > 5 {
        return Err(Error::CapExceeded {
            needed: 1u128 << (delta * delta),
            cap: 1 << 25,
        });
    }
    let bits = delta * delta;
    let mut tally = vec![vec![0u64; delta + 1]; delta + 1];
    for assignment in 0u64..(1u64 << bits) {
        let rows: Vec<u32> = (0..delta)
            .map(|r| ((assignment >> (r * delta)) & ((1 << delta) - 1)) as u32)
            .collect();
        let mut work = rows.clone();
        let mut rank = 0;
        for col in 0..delta {
            let Some(p) = (rank..delta).find(|&r| work[r] >> col & 1 == 1) else {
                continue;
            };
            work.swap(rank, p);
            for r in 0..delta {
                if r != rank && work[r] >> col & 1 == 1 {
                    work[r] ^= work[rank];
                }
            }
            rank += 1;
        }
        let mut maxw = 0usize;
        for r in &rows {
            maxw = maxw.max(r.count_ones() as usize);
        }
        for c in 0..delta {
            let w = rows.iter().filter(|&&r| r >> c & 1 == 1).count();
            maxw = maxw.max(w);
        }
        tally[rank][maxw] += 1;
    }
    Ok(tally)
}

/// Exhaustive |M(delta, r, t)|: rank-r matrices with all rows and columns of
/// weight < t.
pub fn bad_matrix_count(tally: &[Vec<u64>], r: usize, t: usize) -> u64 {
    tally[r].iter().take(t).sum()
}

/// Evaluate the union bound terms per rank in log2 arithmetic; at Delta <= 5
/// also cross-check the matrix-count claim with exact enumeration.
pub fn union_bound_report(
    delta: usize,
    s: usize,
    t: usize,
    ka: usize,
    kb: usize,
) -> Result<UnionBoundReport> {
    if s >= delta {
        return Err(Error::InvalidParameter("s must be < Delta".into()));
    }
    let dp = delta - s;
    if 2 * t > dp {
        return Err(Error::InvalidParameter(format!(
            "t = {t} must be <= (Delta - s)/2 = {}",
            dp as f64 / 2.0
        )));
    }
    let tally = if dp <= 5 { Some(bad_matrix_tally(dp)?) } else { None };
    let log2_subsets = 2.0 * delta as f64 * binary_entropy(s as f64 / delta as f64);
    let mut rows = Vec::new();
    let mut total = f64::NEG_INFINITY;
    for r in 0..=dp {
        let log2_matrix_bound = 2.0 * r as f64 * dp as f64 * binary_entropy(t as f64 / dp as f64)
            + 2.0 * dp as f64 * binary_entropy(r as f64 / dp as f64);
        let exponent = 0.75 * (dp.saturating_sub(ka) * dp.saturating_sub(kb)) as f64 / dp as f64;
        let log2_prob_bound = (512.0 * (r as f64 + 1.0)).log2() - exponent * r as f64;
        let log2_term = log2_subsets + log2_matrix_bound + log2_prob_bound;
        let (exact_matrix_count, exact_bound_holds) = match &tally {
            Some(t_table) => {
                let count = bad_matrix_count(t_table, r, t);
                let holds = if count == 0 {
                    true
                } else {
                    (count as f64).log2() <= log2_matrix_bound + 1e-9
                };
                (Some(count), Some(holds))
            }
            None => (None, None),
        };
        if r >= 1 {
            total = log_sum_exp2(total, log2_term);
        }
        rows.push(UnionBoundRow {
            rank: r,
            log2_matrix_bound,
            log2_prob_bound,
            log2_term,
            exact_matrix_count,
            exact_bound_holds,
        });
    }
    Ok(UnionBoundReport {
        rows,
        log2_total: total,
    })
}

fn log_sum_exp2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}

/// LHS and RHS of the two-dimensional Gilbert-Varshamov style feasibility
/// inequality at (rho_a, rho_b, delta1, delta2).
pub fn gv2d_terms(rho_a: f64, rho_b: f64, delta1: f64, delta2: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&rho_a) || !(0.0..=1.0).contains(&rho_b) {
        return Err(Error::InvalidParameter("rates must lie in [0,1]".into()));
    }
    if delta1 <= 0.0 || delta1 >= 0.5 {
        return Err(Error::InvalidParameter("delta1 must lie in (0, 1/2)".into()));
    }
    let sigma = delta1 / 2.0;
    let dmax = delta1 * (1.0 - sigma) / 8.0;
    if delta2 <= 0.0 || delta2 >= dmax {
        return Err(Error::InvalidParameter(format!(
            "delta2 must lie in (0, {dmax})"
        )));
    }
    let arg = 4.0 * delta2 / (delta1 * (1.0 - sigma));
    let lhs = 2.0 * binary_entropy(sigma) + 2.0 * (1.0 - sigma) * binary_entropy(arg);
    let rhs = 0.75 * (1.0 - sigma - rho_a) * (1.0 - sigma - rho_b) / (1.0 - sigma);
    Ok((lhs, rhs))
}

/// Strict feasibility with a 1e-9 slack on the inequality.
pub fn gv2d_feasible(rho_a: f64, rho_b: f64, delta1: f64, delta2: f64) -> Result<bool> {
    let (lhs, rhs) = gv2d_terms(rho_a, rho_b, delta1, delta2)?;
    Ok(lhs < rhs - 1e-9)
}

/// Scan a grid; out-of-domain points are reported as infeasible.
pub fn gv2d_region(
    rho_a: f64,
    rho_b: f64,
    delta1_grid: &[f64],
    delta2_grid: &[f64],
) -> Vec<(f64, f64, bool)> {
    let mut out = Vec::new();
    for &d1 in delta1_grid {
        for &d2 in delta2_grid {
            let ok = gv2d_feasible(rho_a, rho_b, d1, d2).unwrap_or(false);
            out.push((d1, d2, ok));
        }
    }
    out
}

/// The exact 3-term complex Y(H_A, H_B):
/// F^{n_a x n_b} -> F^{n_a x m_b + m_a x n_b} -> F^{m_a x m_b}
/// with boundary_2(c) = (c H_B^T, H_A c) and boundary_1(x, y) = H_A x + y H_B^T.
#[derive(Clone)]
pub struct LocalTensorComplex {
    ca: LinearCode,
    cb: LinearCode,
    boundary2: BitMatrix,
    boundary1: BitMatrix,
}

impl LocalTensorComplex {
    pub fn new(ha: BitMatrix, hb: BitMatrix) -> Self {
        let (na, ma) = (ha.cols(), ha.rows());
        let (nb, mb) = (hb.cols(), hb.rows());
        // boundary_2 rows: first n_a x m_b block (I kron H_B), then
        // m_a x n_b block (H_A kron I).
        let top = BitMatrix::identity(na).kron(&hb);
        let bottom = ha.kron(&BitMatrix::identity(nb));
        let boundary2 = top.vstack(&bottom);
        // boundary_1 = (H_A kron I_{m_b} | I_{m_a} kron H_B).
        let left = ha.kron(&BitMatrix::identity(mb));
        let right = BitMatrix::identity(ma).kron(&hb);
        let mut boundary1 = BitMatrix::zeros(ma * mb, na * mb + ma * nb);
        for i in 0..ma * mb {
            for j in left.row(i).iter_ones() {
                boundary1.set(i, j, true);
            }
            for j in right.row(i).iter_ones() {
                boundary1.set(i, na * mb + j, true);
            }
        }
        Self {
            ca: LinearCode::from_parity_check(ha),
            cb: LinearCode::from_parity_check(hb),
            boundary2,
            boundary1,
        }
    }

    pub fn boundary2(&self) -> &BitMatrix {
        &self.boundary2
    }

    pub fn boundary1(&self) -> &BitMatrix {
        &self.boundary1
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (
            self.boundary2.cols(),
            self.boundary2.rows(),
            self.boundary1.rows(),
        )
    }

    /// Chain condition plus Kuenneth exactness: dim ker boundary_1 equals
    /// rank boundary_2.
    pub fn exactness_check(&self) -> (bool, bool) {
        let chain = self.boundary1.mul(&self.boundary2).is_zero();
        let exact =
            self.boundary1.cols() - self.boundary1.rank() == self.boundary2.rank();
        (chain, exact)
    }

    /// Split a middle-grade vector into its (x, y) components.
    pub fn split_middle(&self, c1: &BitVec) -> (BitMatrix, BitMatrix) {
        let (na, ma) = (self.ca.len(), self.ca.check_count());
        let (nb, mb) = (self.cb.len(), self.cb.check_count());
        let x = BitMatrix::from_fn(na, mb, |i, j| c1.get(i * mb + j));
        let y = BitMatrix::from_fn(ma, nb, |i, j| c1.get(na * mb + i * nb + j));
        (x, y)
    }

    /// Row-support + column-support norm of a middle-grade vector.
    pub fn middle_norm(&self, c1: &BitVec) -> usize {
        let (x, y) = self.split_middle(c1);
        TensorWord::new(x).row_norm() + TensorWord::new(y).col_norm()
    }

    /// Lift c1 in im(boundary_2) to c2 with boundary_2 c2 = c1 and
    /// rows(c2) + cols(c2) <= (1 + Delta/d2) (rows(x) + cols(y)), where d2 is
    /// the exact robustness of (C_A, C_B). Follows the guess-then-repair
    /// construction: solve rows of x and columns of y independently with
    /// zero guesses on zero supports, then cancel the disagreement through a
    /// minimal robust decomposition.
    pub fn lift_small(&self, c1: &BitVec, d2: Ratio<u64>, cap: u128) -> Result<BitVec> {
        let (na, nb) = (self.ca.len(), self.cb.len());
        if c1.len() != self.boundary2.rows() {
            return Err(Error::ShapeMismatch("lift_small input".into()));
        }
        let (x, y) = self.split_middle(c1);
        // Exactness membership: boundary_1 c1 = 0.
        if !self.boundary1.mul_vec(c1).is_zero() {
            return Err(Error::NotInImage);
        }
        let ha = self.ca.parity_check();
        let hb = self.cb.parity_check();
        // s2b rows: H_B u = x[i,:], zero where the row vanishes.
        let mut s2b = BitMatrix::zeros(na, nb);
        for i in 0..na {
            if x.row_weight(i) == 0 {
                continue;
            }
            let rhs = x.row(i);
            let Some((sol, _)) = hb.solve_affine(&rhs)? else {
                return Err(Error::NotInImage);
            };
            s2b.set_row(i, &sol);
        }
        // s2a columns: H_A u = y[:,j], zero where the column vanishes.
        let mut s2a = BitMatrix::zeros(na, nb);
        for j in 0..nb {
            let col = y.column(j);
            if col.is_zero() {
                continue;
            }
            let Some((sol, _)) = ha.solve_affine(&col)? else {
                return Err(Error::NotInImage);
            };
            for i in sol.iter_ones() {
                s2a.set(i, j, true);
            }
        }
        let mut t2 = s2a.clone();
        t2.xor_assign(&s2b);
        let dec = min_decomposition(&t2, &self.ca, &self.cb, cap)?;
        let mut c2 = s2a;
        c2.xor_assign(&dec.c_a);
        // boundary_2 c2 = c1, exactly.
        let c2_vec = mat_to_vec(&c2);
        let image = self.boundary2.mul_vec(&c2_vec);
        if &image != c1 {
            return Err(Error::NotInImage);
        }
        // Norm bound with exact rational arithmetic.
        let word = TensorWord::new(c2);
        let lhs = Ratio::from_integer((word.row_norm() + word.col_norm()) as u64);
        let delta = Ratio::from_integer(na as u64);
        let factor = Ratio::one() + delta / d2;
        let rhs = factor * Ratio::from_integer(self.middle_norm(c1) as u64);
        if lhs > rhs {
            return Err(Error::InvalidParameter(format!(
                "lift norm bound violated: {lhs} > {rhs}"
            )));
        }
        Ok(c2_vec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{parity, repetition, sample_uniform, LinearCode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn full_space(n: usize) -> LinearCode {
        LinearCode::from_parity_check(BitMatrix::zeros(0, n))
    }

    #[test]
    fn sigma_membership_examples() {
        let rep3 = repetition(3);
        let zero = BitMatrix::zeros(3, 3);
        assert!(sigma_member(&zero, &rep3, &rep3).unwrap());

        let full = full_space(3);
        let unit = BitMatrix::from_fn(3, 3, |i, j| i == 0 && j == 0);
        assert!(sigma_member(&unit, &full, &full).unwrap());

        // e1 (x) (1,1,1): one row all ones.
        let row = BitMatrix::from_fn(3, 3, |i, _| i == 0);
        assert!(sigma_member(&row, &rep3, &rep3).unwrap());
        assert!(!sigma_member(&unit, &rep3, &rep3).unwrap());
    }

    #[test]
    fn min_decomposition_examples() {
        let rep3 = repetition(3);
        let zero = BitMatrix::zeros(3, 3);
        let dec = min_decomposition(&zero, &rep3, &rep3, 1 << 20).unwrap();
        assert_eq!(dec.cost, 0);

        let full = full_space(2);
        let unit = BitMatrix::from_fn(2, 2, |i, j| i == 0 && j == 0);
        let dec = min_decomposition(&unit, &full, &full, 1 << 20).unwrap();
        assert_eq!(dec.cost, 1);
        assert!(dec.verify(&unit, &full, &full));

        let row = BitMatrix::from_fn(3, 3, |i, _| i == 0);
        let dec = min_decomposition(&row, &rep3, &rep3, 1 << 20).unwrap();
        assert_eq!(dec.cost, 1);
        assert!(dec.c_a.is_zero());
        assert!(dec.verify(&row, &rep3, &rep3));
    }

    #[test]
    fn robustness_full_space_is_one() {
        let full = full_space(3);
        let rep = robustness_exact(&full, &full, 1 << 22).unwrap();
        assert_eq!(rep.d2, Some(Ratio::new(1, 1)));
        let (w, dec) = rep.witness.unwrap();
        assert!(dec.verify(&w, &full, &full));
    }

    #[test]
    fn robustness_zero_code_is_vacuous() {
        let zero = LinearCode::from_parity_check(BitMatrix::identity(3));
        let rep = robustness_exact(&zero, &zero, 1 << 22).unwrap();
        assert!(rep.is_vacuous());
    }

    #[test]
    fn oracles_agree_on_small_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..6 {
            let ca = sample_uniform(4, 2, &mut rng);
            let cb = sample_uniform(4, 1, &mut rng);
            let d2_a = robustness_exact(&ca, &cb, 1 << 24).unwrap().d2;
            let d2_b = robustness_exact_oracle2(&ca, &cb, 1 << 24).unwrap();
            assert_eq!(d2_a, d2_b);
            let d2_c = agreement_test_parameter(&ca, &cb, 1 << 26).unwrap();
            assert_eq!(d2_a, d2_c);
        }
    }

    #[test]
    fn agreement_examples() {
        let full = full_space(3);
        assert_eq!(
            agreement_test_parameter(&full, &full, 1 << 26).unwrap(),
            Some(Ratio::one())
        );
        let zero = LinearCode::from_parity_check(BitMatrix::identity(3));
        assert_eq!(agreement_test_parameter(&zero, &zero, 1 << 26).unwrap(), None);
    }

    #[test]
    fn structured_decomposition_rep3() {
        let rep3 = repetition(3);
        // c = e1 (x) (1,1,1): I_a = {0}, I_b = {} (row support only).
        let c = BitMatrix::from_fn(3, 3, |i, _| i == 0);
        let dec = structured_decomposition(&c, &[0], &[], &rep3, &rep3).unwrap();
        assert!(dec.c_a.is_zero());
        assert_eq!(dec.c_b, c);
        assert_eq!(dec.cost, 1);

        let zero = BitMatrix::zeros(3, 3);
        let dec = structured_decomposition(&zero, &[0], &[1], &rep3, &rep3).unwrap();
        assert_eq!(dec.cost, 0);
    }

    #[test]
    fn structured_decomposition_rejects_bad_support() {
        let rep3 = repetition(3);
        let c = BitMatrix::from_fn(3, 3, |i, _| i == 1);
        assert!(structured_decomposition(&c, &[0], &[], &rep3, &rep3).is_err());
    }

    #[test]
    fn heavy_row_examples() {
        let rep3 = repetition(3);
        // t = 1: any nonzero word has a nonzero row.
        let r = punctured_heavy_check(&rep3, &rep3, 0, 1, 1 << 24).unwrap();
        assert!(r.pass);
        // Deliberately weak pair: parity code has weight-2 codewords, so a
        // single column word beats t = 3.
        let weak = parity(4);
        let r = punctured_heavy_check(&weak, &weak, 0, 3, 1 << 24).unwrap();
        assert!(!r.pass);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(2, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(2, 3).is_err());
        let (v, lo, hi, ok) = gaussian_binomial_bracket(4, 2).unwrap();
        assert_eq!(v, BigUint::from(35u32));
        assert_eq!(lo, BigUint::from(16u32));
        assert_eq!(hi, BigUint::from(128u32));
        assert!(ok);
    }

    #[test]
    fn subspace_counts_match_formula() {
        for x in 0..=4u32 {
            for y in 0..=x {
                let counted = subspace_count_oracle(x, y).unwrap();
                let formula: BigUint = gaussian_binomial(x, y).unwrap();
                assert_eq!(BigUint::from(counted), formula, "({x},{y})");
            }
        }
    }

    #[test]
    fn union_bound_monotone_in_t() {
        let a = union_bound_report(8, 1, 3, 3, 3).unwrap();
        let b = union_bound_report(8, 1, 2, 3, 3).unwrap();
        let c = union_bound_report(8, 1, 1, 3, 3).unwrap();
        assert!(b.log2_total <= a.log2_total);
        assert!(c.log2_total <= b.log2_total);
        // Rank 0 row counts the zero matrix only (exhaustive range).
        let small = union_bound_report(4, 0, 2, 2, 2).unwrap();
        assert_eq!(small.rows[0].exact_matrix_count, Some(1));
    }

    #[test]
    fn union_bound_exact_counts_hold() {
        let rep = union_bound_report(4, 0, 2, 2, 2).unwrap();
        for row in &rep.rows {
            assert_eq!(row.exact_bound_holds, Some(true), "rank {}", row.rank);
        }
    }

    #[test]
    fn gv2d_domain_and_signs() {
        assert!(gv2d_terms(0.2, 0.2, 0.6, 0.001).is_err());
        assert!(gv2d_terms(0.2, 0.2, 0.05, 1.0).is_err());
        // One negative factor makes the rhs negative: infeasible.
        let (lhs, rhs) = gv2d_terms(0.95, 0.75, 0.4, 0.001).unwrap();
        assert!(rhs < 0.0);
        assert!(lhs >= 0.0);
        assert!(!gv2d_feasible(0.95, 0.75, 0.4, 0.001).unwrap());
        // Small rates and tiny delta2: feasible.
        assert!(gv2d_feasible(0.2, 0.2, 0.05, 1e-5).unwrap());
    }

    #[test]
    fn local_complex_exactness_and_lift() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let ca = sample_uniform(4, 2, &mut rng);
            let cb = sample_uniform(4, 2, &mut rng);
            let y = LocalTensorComplex::new(ca.parity_check().clone(), cb.parity_check().clone());
            let (chain, exact) = y.exactness_check();
            assert!(chain);
            assert!(exact);

            let d2 = robustness_exact(&ca, &cb, 1 << 24).unwrap().d2;
            let Some(d2) = d2 else { continue };
            // Lift images of random c2.
            for trial in 0..10u64 {
                let c2 = BitVec::from_bools(
                    &(0..16).map(|i| (trial * 7 + i) % 3 == 0).collect::<Vec<_>>(),
                );
                let c1 = y.boundary2().mul_vec(&c2);
                let lifted = y.lift_small(&c1, d2, 1 << 24).unwrap();
                assert_eq!(y.boundary2().mul_vec(&lifted), c1);
            }
        }
    }

    #[test]
    fn lift_rejects_non_image() {
        let ca = repetition(3);
        let cb = repetition(3);
        let y = LocalTensorComplex::new(ca.parity_check().clone(), cb.parity_check().clone());
        // A vector with nonzero boundary_1 cannot be lifted.
        let mut c1 = BitVec::zeros(y.boundary2().rows());
        c1.set(0, true);
        if !y.boundary1().mul_vec(&c1).is_zero() {
            assert!(matches!(
                y.lift_small(&c1, Ratio::one(), 1 << 20),
                Err(Error::NotInImage)
            ));
        }
    }
}
