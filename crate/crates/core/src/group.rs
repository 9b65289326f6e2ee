//! Finite groups as index tables, inverse-closed generator sets, and the
//! explicit PSL(2,q) / LPS generator constructions.

use crate::error::{Error, Result};

/// A finite group with a full multiplication table. Elements are indices
/// `0..order`; `id` is the identity index.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: u32,
    /// Human-readable labels, one per element (used in exports).
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Build from a multiplication table; validates identity, inverses, and
    /// associativity on all triples for small groups (sampled above 64).
    pub fn from_table(mul: Vec<Vec<u32>>) -> Result<Self> {
        let order = mul.len();
        if order == 0 || mul.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidParameter(
                "multiplication table must be square and nonempty".into(),
            ));
        }
        let flat: Vec<u32> = mul.iter().flatten().copied().collect();
        if flat.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidParameter(
                "table entry out of range".into(),
            ));
        }
        let labels = (0..order).map(|i| i.to_string()).collect();
        Self::from_flat(order, flat, labels)
    }

    fn from_flat(order: usize, mul: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        // Locate a two-sided identity.
        let id = (0..order)
            .find(|&e| {
                (0..order).all(|g| {
                    mul[e * order + g] == g as u32 && mul[g * order + e] == g as u32
                })
            })
            .ok_or_else(|| Error::InvalidParameter("no identity element".into()))?;
        let mut inv = vec![u32::MAX; order];
        for g in 0..order {
            let gi = (0..order)
                .find(|&h| mul[g * order + h] == id as u32 && mul[h * order + g] == id as u32)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("element {g} has no inverse"))
                })?;
            inv[g] = gi as u32;
        }
        let group = Self {
            order,
            mul,
            inv,
            id: id as u32,
            labels,
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> bool {
            self.mul_idx(self.mul_idx(a, b), c) == self.mul_idx(a, self.mul_idx(b, c))
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::InvalidParameter(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Sampled triples with a fixed stride; exhaustive checking is
            // cubic and the structured constructors are associative anyway.
            let mut s = 0x9e3779b97f4a7c15u64;
            for _ in 0..2000 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (s >> 16) as usize % n;
                let b = (s >> 32) as usize % n;
                let c = (s >> 48) as usize % n;
                if !check(a, b, c) {
                    return Err(Error::InvalidParameter(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> usize {
        self.id as usize
    }

    #[inline]
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv_idx(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }
}

/// Which side a generator set acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An inverse-closed multiset of non-identity generators. |elements| = Delta
/// counting multiplicity; an involution occupies a single slot.
#[derive(Clone)]
pub struct GeneratorSet {
    elements: Vec<usize>,
    side: Side,
}

impl GeneratorSet {
    pub fn new(group: &FiniteGroup, elements: Vec<usize>, side: Side) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidParameter("empty generator set".into()));
        }
        for &g in &elements {
            if g >= group.order() {
                return Err(Error::InvalidParameter(format!(
                    "generator index {g} out of range"
                )));
            }
            if g == group.id() {
                return Err(Error::ClosureViolation(
                    "identity element is not allowed as a generator".into(),
                ));
            }
        }
        // Closed under inverse as a multiset.
        let mut counts = std::collections::HashMap::new();
        for &g in &elements {
            *counts.entry(g).or_insert(0i64) += 1;
        }
        for (&g, &c) in &counts {
            let gi = group.inv_idx(g);
            if counts.get(&gi).copied().unwrap_or(0) != c {
                return Err(Error::ClosureViolation(format!(
                    "generator {} has multiplicity {} but its inverse {} does not",
                    group.label(g),
                    c,
                    group.label(gi)
                )));
            }
        }
        Ok(Self { elements, side })
    }

    pub fn delta(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

/// The cyclic group Z/nZ with generators given as nonzero offsets.
/// Offsets must be closed under negation mod n.
pub fn build_cyclic(n: usize, offsets: &[i64], side: Side) -> Result<(FiniteGroup, GeneratorSet)> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group order must be positive".into()));
    }
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(((a + b) % n) as u32);
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let group = FiniteGroup::from_flat(n, mul, labels)?;
    let elements: Vec<usize> = offsets
        .iter()
        .map(|&o| (o.rem_euclid(n as i64)) as usize)
        .collect();
    let gens = GeneratorSet::new(&group, elements, side)?;
    Ok((group, gens))
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, q: u64) -> u64 {
    mod_pow(a, q - 2, q)
}

/// Legendre symbol (a|q) for odd prime q: 1, q-1 (= -1), or 0.
pub fn legendre(a: u64, q: u64) -> u64 {
    mod_pow(a % q, (q - 1) / 2, q)
}

fn sqrt_mod(a: u64, q: u64) -> Option<u64> {
    (0..q).find(|&x| x * x % q == a % q)
}

/// 2x2 matrix over F_q, kept as the canonical representative of {M, -M}.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Psl2Elem([u64; 4]);

fn psl2_canon(m: [u64; 4], q: u64) -> Psl2Elem {
    // Negate so the first nonzero entry (row-major) lies in 1..=(q-1)/2.
    let first = m.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if first > (q - 1) / 2 {
        Psl2Elem([(q - m[0]) % q, (q - m[1]) % q, (q - m[2]) % q, (q - m[3]) % q])
    } else {
        Psl2Elem(m)
    }
}

fn psl2_mul(a: [u64; 4], b: [u64; 4], q: u64) -> [u64; 4] {
    [
        (a[0] * b[0] + a[1] * b[2]) % q,
        (a[0] * b[1] + a[1] * b[3]) % q,
        (a[2] * b[0] + a[3] * b[2]) % q,
        (a[2] * b[1] + a[3] * b[3]) % q,
    ]
}

/// PSL(2, Z/qZ) for an odd prime q, of order q(q^2-1)/2. Elements are
/// canonical representatives of {M, -M} with det M = 1, indexed in a fixed
/// enumeration order.
pub fn build_psl2(q: u64) -> Result<FiniteGroup> {
    if !is_prime(q) || q < 3 {
        return Err(Error::InvalidParameter(format!(
            "q = {q} must be an odd prime >= 3"
        )));
    }
    let expected = (q * (q * q - 1) / 2) as usize;
    if expected > 4096 {
        return Err(Error::InvalidParameter(format!(
            "PSL(2,{q}) has order {expected}, beyond the dense-table limit 4096"
        )));
    }
    let mut index = std::collections::HashMap::new();
    let mut elems = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d + 2 * q * q - b * c) % q == 1 {
                        let canon = psl2_canon([a, b, c, d], q);
                        if !index.contains_key(&canon) {
                            index.insert(canon, elems.len());
                            elems.push(canon);
                        }
                    }
                }
            }
        }
    }
    debug_assert_eq!(elems.len(), expected);
    let n = elems.len();
    let mut mul = vec![0u32; n * n];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let p = psl2_canon(psl2_mul(x.0, y.0, q), q);
            mul[i * n + j] = index[&p] as u32;
        }
    }
    let labels = elems
        .iter()
        .map(|e| format!("[{},{};{},{}]", e.0[0], e.0[1], e.0[2], e.0[3]))
        .collect();
    FiniteGroup::from_flat(n, mul, labels)
}

/// Index of a canonical PSL(2,q) matrix in the enumeration used by
/// [`build_psl2`]. Re-derives the same enumeration order.
fn psl2_index_map(q: u64) -> std::collections::HashMap<Psl2Elem, usize> {
    let mut index = std::collections::HashMap::new();
    let mut count = 0usize;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d + 2 * q * q - b * c) % q == 1 {
                        let canon = psl2_canon([a, b, c, d], q);
                        index.entry(canon).or_insert_with(|| {
                            let i = count;
                            count += 1;
                            i
                        });
                    }
                }
            }
        }
    }
    index
}

/// LPS generators: the Delta = p+1 elements of PSL(2, Z/qZ) coming from the
/// integer quaternions a0^2 + a1^2 + a2^2 + a3^2 = p with a0 odd positive and
/// a1, a2, a3 even, mapped through a fixed square root of -1 mod q and scaled
/// to determinant 1. Requires unequal primes p, q = 1 mod 4 with
/// (q|p) = (p|q) = 1; the set is closed under inverse as a multiset.
pub fn lps_generators(p: u64, q: u64, group: &FiniteGroup, side: Side) -> Result<GeneratorSet> {
    if p == q || !is_prime(p) || !is_prime(q) || p % 4 != 1 || q % 4 != 1 {
        return Err(Error::InvalidParameter(
            "p and q must be unequal primes congruent to 1 mod 4".into(),
        ));
    }
    if legendre(q, p) != 1 || legendre(p, q) != 1 {
        return Err(Error::InvalidParameter(
            "p and q must be quadratic residues of each other".into(),
        ));
    }
    let i_unit = sqrt_mod(q - 1, q)
        .ok_or_else(|| Error::InvalidParameter("no square root of -1 mod q".into()))?;
    let sqrt_p = sqrt_mod(p % q, q)
        .ok_or_else(|| Error::InvalidParameter("p is not a square mod q".into()))?;
    let scale = mod_inv(sqrt_p, q);

    // Enumerate quaternion solutions; Jacobi's count gives exactly p + 1
    // with a0 odd positive and the rest even.
    let bound = (p as f64).sqrt() as i64 + 1;
    let mut mats = Vec::new();
    for a0 in (1..=bound).step_by(2) {
        for a1 in (-bound..=bound).filter(|x| x % 2 == 0) {
            for a2 in (-bound..=bound).filter(|x| x % 2 == 0) {
                for a3 in (-bound..=bound).filter(|x| x % 2 == 0) {
                    if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3) as u64 == p {
                        let r = |x: i64| x.rem_euclid(q as i64) as u64;
                        // [[a0 + i a1, a2 + i a3], [-a2 + i a3, a0 - i a1]]
                        let m = [
                            (r(a0) + i_unit * r(a1)) % q,
                            (r(a2) + i_unit * r(a3)) % q,
                            (r(-a2) + i_unit * r(a3)) % q,
                            (r(a0) + i_unit * r(-a1)) % q,
                        ];
                        let scaled = [
                            m[0] * scale % q,
                            m[1] * scale % q,
                            m[2] * scale % q,
                            m[3] * scale % q,
                        ];
                        mats.push(psl2_canon(scaled, q));
                    }
                }
            }
        }
    }
    if mats.len() != (p + 1) as usize {
        return Err(Error::InvalidParameter(format!(
            "expected {} quaternion solutions, found {}",
            p + 1,
            mats.len()
        )));
    }
    let index = psl2_index_map(q);
    let mut elements = Vec::with_capacity(mats.len());
    for m in mats {
        let det = (m.0[0] * m.0[3] + 2 * q * q - m.0[1] * m.0[2]) % q;
        debug_assert_eq!(det, 1);
        let idx = *index
            .get(&m)
            .ok_or_else(|| Error::InvalidParameter("generator not in PSL(2,q)".into()))?;
        if idx >= group.order() {
            return Err(Error::InvalidParameter(
                "group does not match PSL(2,q) for this q".into(),
            ));
        }
        elements.push(idx);
    }
    elements.sort_unstable();
    GeneratorSet::new(group, elements, side)
}
