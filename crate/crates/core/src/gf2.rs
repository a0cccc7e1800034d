//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are indexed by the edge set of a host graph elsewhere in the
//! crate, but nothing in this module knows about graphs: it provides rank,
//! reduced row echelon form, orthogonal complements with respect to the
//! standard inner product `<u, v> = |u AND v| mod 2`, subspace intersection,
//! and minimum/maximum-weight coset elements (exact by Gray-code
//! enumeration below a dimension cap, randomized information-set descent
//! above it).
//!
//! All types are immutable after construction and safe to share across
//! threads; the heuristic search is deterministic given its seed.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const WORD_BITS: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector in F_2^len, packed 64 bits per word (bit `i` lives in
/// `words[i / 64]` at position `i % 64`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    words: Vec<u64>,
    len: usize,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            words: vec![0; word_count(len)],
            len,
        }
    }

    /// All-ones vector (trailing bits of the last word stay clear).
    pub fn ones(len: usize) -> Self {
        let mut v = Gf2Vector {
            words: vec![!0u64; word_count(len)],
            len,
        };
        v.mask_tail();
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i);
        }
        v
    }

    fn mask_tail(&mut self) {
        let extra = self.len % WORD_BITS;
        if extra != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << extra) - 1;
            }
        }
        if self.len == 0 {
            self.words.clear();
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {} out of range (len {})", i, self.len);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {} out of range (len {})", i, self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard inner product: parity of the intersection size.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Lowest set bit index, if any.
    pub fn leading_bit(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Sorted support positions.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                out.push(wi * WORD_BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Orders equal-length vectors by their support sequence, read as a
    /// sorted list of positions compared lexicographically. At the lowest
    /// differing bit, the vector having that bit set comes first.
    pub fn cmp_support(&self, other: &Gf2Vector) -> std::cmp::Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if a & bit != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl std::fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Gf2Vector(len={}, support={:?})",
            self.len,
            self.support()
        )
    }
}

/// An ordered list of rows, all of the same ambient dimension.
#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    ambient: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(ambient: usize) -> Self {
        Gf2Matrix {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        for r in &rows {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: r.len(),
                });
            }
        }
        Ok(Gf2Matrix { ambient, rows })
    }

    pub fn push(&mut self, row: Gf2Vector) -> Result<()> {
        if row.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }
}

/// Reduced row echelon basis: pivot columns strictly increasing, each pivot
/// column carrying exactly one 1 across the rows.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    ambient: usize,
    rows: Vec<Gf2Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn empty(ambient: usize) -> Self {
        EchelonBasis {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Identity basis of the full space.
    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| Gf2Vector::from_support(ambient, &[i]))
            .collect();
        EchelonBasis {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place: the result has zeros at
    /// every pivot column, and is the canonical representative of
    /// `v + rowspace(self)`.
    pub fn reduce_vector(&self, v: &mut Gf2Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    fn check_len(&self, v: &Gf2Vector) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        Ok(())
    }
}

/// Incremental echelonization with word-parallel XOR.
///
/// Rows are stored truncated to start at their pivot word, so late
/// reductions touch only short tails. `push` reports whether the row was
/// independent of everything seen so far; callers doing span tests stop
/// feeding rows once the rank hits a known target dimension.
pub struct RankBuilder {
    ambient: usize,
    words: usize,
    /// pivot bit -> index into `rows`, or usize::MAX.
    pivot_of: Vec<usize>,
    /// (pivot bit, row tail starting at the pivot's word).
    rows: Vec<(usize, Vec<u64>)>,
    scratch: Vec<u64>,
}

impl RankBuilder {
    pub fn new(ambient: usize) -> Self {
        RankBuilder {
            ambient,
            words: word_count(ambient),
            pivot_of: vec![usize::MAX; ambient],
            rows: Vec::new(),
            scratch: vec![0; word_count(ambient)],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Feeds a row given by its support; returns true if the rank grew.
    pub fn push_sparse(&mut self, support: &[usize]) -> bool {
        self.scratch.iter_mut().for_each(|w| *w = 0);
        for &i in support {
            debug_assert!(i < self.ambient);
            self.scratch[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
        }
        self.reduce_scratch()
    }

    /// Feeds a dense row; returns true if the rank grew.
    pub fn push(&mut self, row: &Gf2Vector) -> bool {
        debug_assert_eq!(row.len(), self.ambient);
        self.scratch.copy_from_slice(row.words());
        self.reduce_scratch()
    }

    fn reduce_scratch(&mut self) -> bool {
        let mut wi = 0;
        loop {
            while wi < self.words && self.scratch[wi] == 0 {
                wi += 1;
            }
            if wi == self.words {
                return false;
            }
            let bit = wi * WORD_BITS + self.scratch[wi].trailing_zeros() as usize;
            let r = self.pivot_of[bit];
            if r == usize::MAX {
                let tail = self.scratch[wi..].to_vec();
                self.pivot_of[bit] = self.rows.len();
                self.rows.push((bit, tail));
                return true;
            }
            let (pbit, tail) = &self.rows[r];
            let off = pbit / WORD_BITS;
            for (dst, src) in self.scratch[off..].iter_mut().zip(tail) {
                *dst ^= src;
            }
        }
    }

    /// Membership test for the rowspace accumulated so far.
    pub fn contains(&self, v: &Gf2Vector) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut acc = v.words().to_vec();
        let mut wi = 0;
        loop {
            while wi < self.words && acc[wi] == 0 {
                wi += 1;
            }
            if wi == self.words {
                return true;
            }
            let bit = wi * WORD_BITS + acc[wi].trailing_zeros() as usize;
            let r = self.pivot_of[bit];
            if r == usize::MAX {
                return false;
            }
            let (pbit, tail) = &self.rows[r];
            let off = pbit / WORD_BITS;
            for (dst, src) in acc[off..].iter_mut().zip(tail) {
                *dst ^= src;
            }
        }
    }

    /// Back-substitutes to a reduced echelon basis.
    pub fn finish(self) -> EchelonBasis {
        let ambient = self.ambient;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].0);

        let mut rows: Vec<Gf2Vector> = Vec::with_capacity(self.rows.len());
        let mut pivots: Vec<usize> = Vec::with_capacity(self.rows.len());
        for &i in &order {
            let (pbit, tail) = &self.rows[i];
            let mut v = Gf2Vector::zeros(ambient);
            let off = pbit / WORD_BITS;
            v.words[off..off + tail.len()].copy_from_slice(tail);
            rows.push(v);
            pivots.push(*pbit);
        }
        // Eliminate above each pivot, working from the last pivot upward.
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let (head, rest) = rows.split_at_mut(i);
            let ri = &rest[0];
            for row in head.iter_mut() {
                if row.get(p) {
                    row.xor_assign(ri);
                }
            }
        }
        EchelonBasis {
            ambient,
            rows,
            pivots,
        }
    }
}

/// Row-reduces `m` to its reduced echelon basis.
pub fn reduce(m: &Gf2Matrix) -> EchelonBasis {
    let mut b = RankBuilder::new(m.ambient());
    for row in m.rows() {
        b.push(row);
    }
    b.finish()
}

/// True iff `v` is a GF(2) combination of the basis rows.
pub fn in_rowspace(basis: &EchelonBasis, v: &Gf2Vector) -> Result<bool> {
    basis.check_len(v)?;
    let mut r = v.clone();
    basis.reduce_vector(&mut r);
    Ok(r.is_zero())
}

/// Basis of the orthogonal complement with respect to the standard inner
/// product. dim(result) = ambient - dim(basis); applying it twice returns a
/// basis of the original rowspace.
pub fn nullspace(basis: &EchelonBasis) -> EchelonBasis {
    let ambient = basis.ambient();
    let pivot_set: std::collections::HashSet<usize> = basis.pivots.iter().copied().collect();
    let mut rows = Vec::with_capacity(ambient - basis.dim());
    for free in 0..ambient {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = Gf2Vector::zeros(ambient);
        v.set(free);
        for (row, &p) in basis.rows.iter().zip(&basis.pivots) {
            if row.get(free) {
                v.set(p);
            }
        }
        rows.push(v);
    }
    let m = Gf2Matrix::from_rows(ambient, rows).expect("nullspace rows share ambient");
    let out = reduce(&m);
    debug_assert_eq!(out.dim(), ambient - basis.dim());
    out
}

/// Basis of rowspace(a) ∩ rowspace(b) via the Zassenhaus construction.
///
/// The modularity identity dim(a) + dim(b) = dim(a âˆ© b) + dim(a + b) is
/// asserted on every call.
pub fn intersect(a: &EchelonBasis, b: &EchelonBasis) -> Result<EchelonBasis> {
    if a.ambient() != b.ambient() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient(),
            got: b.ambient(),
        });
    }
    let m = a.ambient();
    let mut builder = RankBuilder::new(2 * m);
    // Rows [x | x] for x in a.
    for row in a.rows() {
        let mut wide = Gf2Vector::zeros(2 * m);
        for i in row.support() {
            wide.set(i);
            wide.set(m + i);
        }
        builder.push(&wide);
    }
    // Rows [y | 0] for y in b.
    for row in b.rows() {
        let mut wide = Gf2Vector::zeros(2 * m);
        for i in row.support() {
            wide.set(i);
        }
        builder.push(&wide);
    }
    // Rows with zero left half carry the intersection in their right half.
    let wide_basis = builder.finish();
    let mut rows = Vec::new();
    for (row, &p) in wide_basis.rows().iter().zip(wide_basis.pivots()) {
        if p >= m {
            let mut v = Gf2Vector::zeros(m);
            for i in row.support() {
                debug_assert!(i >= m);
                v.set(i - m);
            }
            rows.push(v);
        }
    }
    let out = reduce(&Gf2Matrix::from_rows(m, rows)?);
    // Modularity cross-check against an independently computed sum rank.
    let mut sum = RankBuilder::new(m);
    for row in a.rows().iter().chain(b.rows()) {
        sum.push(row);
    }
    assert_eq!(
        a.dim() + b.dim(),
        out.dim() + sum.rank(),
        "subspace dimension identity violated"
    );
    Ok(out)
}

/// Default cap on exact coset enumeration: 2^24 members stream through the
/// Gray-code scan in seconds at desk-scale ambient dimensions.
pub const EXACT_DIM_CAP: usize = 24;

const HEURISTIC_RESTARTS: usize = 64;

/// Minimum-weight element of the coset `v + rowspace(s)`.
///
/// For dim(s) <= exact_dim_cap the whole coset is enumerated with Gray-code
/// updates and the result is certified: globally minimal weight, ties broken
/// toward the lexicographically least support sequence. Above the cap the
/// result is the best element found by randomized information-set restarts
/// (certified = false).
pub fn coset_min_weight(
    s: &EchelonBasis,
    v: &Gf2Vector,
    exact_dim_cap: usize,
) -> Result<(Gf2Vector, bool)> {
    coset_min_weight_seeded(s, v, exact_dim_cap, 0x6f5e_c0de)
}

/// As [`coset_min_weight`], with an explicit seed for the heuristic
/// restarts so concurrent callers can use independent streams.
pub fn coset_min_weight_seeded(
    s: &EchelonBasis,
    v: &Gf2Vector,
    exact_dim_cap: usize,
    seed: u64,
) -> Result<(Gf2Vector, bool)> {
    s.check_len(v)?;
    let dim = s.dim();
    if dim == 0 {
        return Ok((v.clone(), true));
    }
    if dim <= exact_dim_cap && dim < usize::BITS as usize {
        Ok((coset_min_exact(s, v), true))
    } else {
        Ok((coset_min_heuristic(s, v, seed), false))
    }
}

fn better(cand: &Gf2Vector, cand_w: usize, best: &Gf2Vector, best_w: usize) -> bool {
    cand_w < best_w || (cand_w == best_w && cand.cmp_support(best) == std::cmp::Ordering::Less)
}

fn coset_min_exact(s: &EchelonBasis, v: &Gf2Vector) -> Gf2Vector {
    let dim = s.dim();
    let mut acc = v.clone();
    let mut best = acc.clone();
    let mut best_w = best.weight();
    // Binary-reflected Gray code: step i flips basis row trailing_zeros(i).
    for i in 1u64..(1u64 << dim) {
        let row = i.trailing_zeros() as usize;
        acc.xor_assign(&s.rows[row]);
        let w = acc.weight();
        if better(&acc, w, &best, best_w) {
            best = acc.clone();
            best_w = w;
        }
    }
    best
}

/// Prange-style information-set descent: echelonize the basis under a random
/// column order, reduce `v` to the canonical representative with zeros on
/// the chosen pivots, keep the lightest representative seen.
fn coset_min_heuristic(s: &EchelonBasis, v: &Gf2Vector, seed: u64) -> Gf2Vector {
    let ambient = s.ambient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = v.clone();
    let mut best_w = best.weight();
    let mut perm: Vec<usize> = (0..ambient).collect();
    for _ in 0..HEURISTIC_RESTARTS {
        perm.shuffle(&mut rng);
        // Echelonize under the permuted column priority.
        let mut chosen: Vec<(usize, Gf2Vector)> = Vec::with_capacity(s.dim());
        for row in s.rows() {
            let mut r = row.clone();
            for (p, br) in &chosen {
                if r.get(*p) {
                    r.xor_assign(br);
                }
            }
            if let Some(p) = perm.iter().copied().find(|&c| r.get(c)) {
                chosen.push((p, r));
            }
        }
        let mut cand = v.clone();
        for (p, br) in &chosen {
            if cand.get(*p) {
                cand.xor_assign(br);
            }
        }
        let w = cand.weight();
        if better(&cand, w, &best, best_w) {
            best = cand;
            best_w = w;
        }
    }
    best
}

/// Maximum-weight element of `v + rowspace(s)`, computed as the
/// complement of the minimum-weight element of the complemented coset.
pub fn coset_max_weight(
    s: &EchelonBasis,
    v: &Gf2Vector,
    exact_dim_cap: usize,
) -> Result<(Gf2Vector, bool)> {
    s.check_len(v)?;
    let ones = Gf2Vector::ones(s.ambient());
    let mut flipped = v.clone();
    flipped.xor_assign(&ones);
    let (min_flipped, certified) = coset_min_weight(s, &flipped, exact_dim_cap)?;
    let mut out = min_flipped;
    out.xor_assign(&ones);
    Ok((out, certified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vector(len: usize, bits: &[usize]) -> Gf2Vector {
        Gf2Vector::from_support(len, bits)
    }

    #[test]
    fn reduce_identity_full_rank() {
        let rows = (0..3).map(|i| vector(3, &[i])).collect();
        let b = reduce(&Gf2Matrix::from_rows(3, rows).unwrap());
        assert_eq!(b.dim(), 3);
        assert_eq!(b.pivots(), &[0, 1, 2]);
    }

    #[test]
    fn reduce_zero_matrix() {
        let rows = vec![Gf2Vector::zeros(5); 4];
        let b = reduce(&Gf2Matrix::from_rows(5, rows).unwrap());
        assert_eq!(b.dim(), 0);
    }

    #[test]
    fn reduce_dependent_rows() {
        // {110, 011, 101}: the third row is the sum of the first two.
        let rows = vec![vector(3, &[0, 1]), vector(3, &[1, 2]), vector(3, &[0, 2])];
        let b = reduce(&Gf2Matrix::from_rows(3, rows).unwrap());
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn rowspace_membership() {
        let b = reduce(&Gf2Matrix::from_rows(3, vec![vector(3, &[0, 1, 2])]).unwrap());
        assert!(in_rowspace(&b, &Gf2Vector::zeros(3)).unwrap());
        assert!(in_rowspace(&b, &vector(3, &[0, 1, 2])).unwrap());
        // 110 is not in {000, 111}.
        assert!(!in_rowspace(&b, &vector(3, &[0, 1])).unwrap());
        assert!(matches!(
            in_rowspace(&b, &Gf2Vector::zeros(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nullspace_identity_and_zero() {
        let full = EchelonBasis::full(4);
        assert_eq!(nullspace(&full).dim(), 0);
        let empty = EchelonBasis::empty(4);
        assert_eq!(nullspace(&empty).dim(), 4);
    }

    #[test]
    fn nullspace_of_all_ones() {
        // Orthogonal complement of span{111}: brute force over all 8
        // vectors keeps those with even overlap with 111.
        let b = reduce(&Gf2Matrix::from_rows(3, vec![vector(3, &[0, 1, 2])]).unwrap());
        let ns = nullspace(&b);
        assert_eq!(ns.dim(), 2);
        let ones = vector(3, &[0, 1, 2]);
        let mut even = Vec::new();
        for mask in 0u32..8 {
            let bits: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            let v = vector(3, &bits);
            if !v.dot(&ones) {
                even.push(v);
            }
        }
        assert_eq!(even.len(), 4);
        for v in even {
            assert!(in_rowspace(&ns, &v).unwrap());
        }
    }

    #[test]
    fn intersect_trivial_cases() {
        let a = reduce(&Gf2Matrix::from_rows(4, vec![vector(4, &[0]), vector(4, &[1])]).unwrap());
        let same = intersect(&a, &a).unwrap();
        assert_eq!(same.dim(), 2);
        for r in a.rows() {
            assert!(in_rowspace(&same, r).unwrap());
        }
        let b = reduce(&Gf2Matrix::from_rows(4, vec![vector(4, &[2]), vector(4, &[3])]).unwrap());
        assert_eq!(intersect(&a, &b).unwrap().dim(), 0);
    }

    #[test]
    fn coset_min_small() {
        // S = span{111}, v = 110: coset {110, 001}, minimum 001.
        let s = reduce(&Gf2Matrix::from_rows(3, vec![vector(3, &[0, 1, 2])]).unwrap());
        let (min, cert) = coset_min_weight(&s, &vector(3, &[0, 1]), EXACT_DIM_CAP).unwrap();
        assert!(cert);
        assert_eq!(min.support(), vec![2]);
        let (max, cert) = coset_max_weight(&s, &vector(3, &[0, 1]), EXACT_DIM_CAP).unwrap();
        assert!(cert);
        assert_eq!(max.support(), vec![0, 1]);
    }

    #[test]
    fn coset_min_zero_and_empty_basis() {
        let s = EchelonBasis::empty(6);
        let v = vector(6, &[1, 4]);
        let (min, cert) = coset_min_weight(&s, &v, EXACT_DIM_CAP).unwrap();
        assert!(cert);
        assert_eq!(min, v);
        let full = EchelonBasis::full(6);
        let (max, _) = coset_max_weight(&full, &v, EXACT_DIM_CAP).unwrap();
        assert_eq!(max.weight(), 6);
        let (min, _) = coset_min_weight(&full, &v, EXACT_DIM_CAP).unwrap();
        assert_eq!(min.weight(), 0);
    }

    #[test]
    fn lexicographic_tie_break() {
        // S = span{1100}: coset of 1010 is {1010, 0110}; supports {0,2} and
        // {1,2} tie at weight 2 and {0,2} is lexicographically least.
        let s = reduce(&Gf2Matrix::from_rows(4, vec![vector(4, &[0, 1])]).unwrap());
        let (min, cert) = coset_min_weight(&s, &vector(4, &[0, 2]), EXACT_DIM_CAP).unwrap();
        assert!(cert);
        assert_eq!(min.support(), vec![0, 2]);
    }

    fn random_basis(ambient: usize, rows: &[Vec<usize>]) -> EchelonBasis {
        let rows = rows.iter().map(|r| vector(ambient, r)).collect();
        reduce(&Gf2Matrix::from_rows(ambient, rows).unwrap())
    }

    proptest! {
        #[test]
        fn rank_nullity(ambient in 1usize..16, raw in prop::collection::vec(prop::collection::vec(0usize..16, 0..6), 0..8)) {
            let rows: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|r| r.into_iter().filter(|&i| i < ambient).collect())
                .collect();
            let b = random_basis(ambient, &rows);
            let ns = nullspace(&b);
            prop_assert_eq!(b.dim() + ns.dim(), ambient);
            for r in ns.rows() {
                for s in b.rows() {
                    prop_assert!(!r.dot(s));
                }
            }
            // Double complement returns the original rowspace.
            let nns = nullspace(&ns);
            prop_assert_eq!(nns.dim(), b.dim());
            for r in b.rows() {
                prop_assert!(in_rowspace(&nns, r).unwrap());
            }
        }

        #[test]
        fn coset_min_matches_exhaustive(
            ambient in 1usize..12,
            raw in prop::collection::vec(prop::collection::vec(0usize..12, 1..5), 1..6),
            vbits in prop::collection::vec(0usize..12, 0..6),
        ) {
            let rows: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|r| r.into_iter().filter(|&i| i < ambient).collect())
                .collect();
            let s = random_basis(ambient, &rows);
            let vbits: Vec<usize> = vbits.into_iter().filter(|&i| i < ambient).collect();
            let v = vector(ambient, &vbits);
            let (min, cert) = coset_min_weight(&s, &v, EXACT_DIM_CAP).unwrap();
            prop_assert!(cert);
            // Exhaustive scan of the coset.
            let dim = s.dim();
            let mut best: Option<Gf2Vector> = None;
            for mask in 0u32..(1u32 << dim) {
                let mut cand = v.clone();
                for (i, row) in s.rows().iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        cand.xor_assign(row);
                    }
                }
                best = match best {
                    None => Some(cand),
                    Some(b) => {
                        if better(&cand, cand.weight(), &b, b.weight()) {
                            Some(cand)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let best = best.unwrap();
            prop_assert_eq!(min.weight(), best.weight());
            prop_assert_eq!(min.support(), best.support());
        }

        #[test]
        fn min_max_duality(
            ambient in 1usize..12,
            raw in prop::collection::vec(prop::collection::vec(0usize..12, 1..5), 1..6),
            vbits in prop::collection::vec(0usize..12, 0..6),
        ) {
            let rows: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|r| r.into_iter().filter(|&i| i < ambient).collect())
                .collect();
            let s = random_basis(ambient, &rows);
            let vbits: Vec<usize> = vbits.into_iter().filter(|&i| i < ambient).collect();
            let v = vector(ambient, &vbits);
            let (max, _) = coset_max_weight(&s, &v, EXACT_DIM_CAP).unwrap();
            let ones = Gf2Vector::ones(ambient);
            let mut flipped = v.clone();
            flipped.xor_assign(&ones);
            let (min_c, _) = coset_min_weight(&s, &flipped, EXACT_DIM_CAP).unwrap();
            prop_assert_eq!(max.weight(), ambient - min_c.weight());
        }
    }
}
