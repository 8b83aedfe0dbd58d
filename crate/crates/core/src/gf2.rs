//! Bit-packed vectors and matrices over GF(2).
//!
//! Vectors are stored least-significant-bit first in `u64` words. All the
//! linear algebra below (rank, span membership, kernels, inverses) is plain
//! Gaussian elimination with word-wide XOR, which is exact and more than
//! fast enough at the sizes this crate targets.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of set bits.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Weight of the bitwise OR with `other`, without allocating.
    pub fn union_weight(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Parity of the bitwise AND: the GF(2) inner product.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors of different length");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b))
            .count_ones()
            % 2
            == 1
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.ones().collect()
    }

    /// Lexicographic order on supports viewed as ascending index sequences.
    ///
    /// At the lowest index where membership differs, the vector containing
    /// that index is the smaller one.
    pub fn support_cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if a & bit != 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({}; {:?})", self.len, self.support())
    }
}

/// A row-major matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row width mismatch");
        }
        Self { cols, rows }
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        self.rows.push(row);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn transposed(&self) -> BitMatrix {
        let mut out = vec![BitVec::zeros(self.rows.len()); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                out[j].set(i);
            }
        }
        BitMatrix::from_rows(self.rows.len(), out)
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows, self.cols)
    }
}

/// Incrementally maintained row echelon basis of a span.
pub struct Echelon {
    cols: usize,
    // (pivot column, row) with pivots strictly ascending
    rows: Vec<(usize, BitVec)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis in place.
    pub fn reduce(&self, v: &mut BitVec) {
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds `v` to the span. Returns true if it was independent.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        match v.first_one() {
            None => false,
            Some(pivot) => {
                let pos = self.rows.partition_point(|(p, _)| *p < pivot);
                self.rows.insert(pos, (pivot, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}

/// Rank of a set of rows over GF(2).
pub fn rank(rows: &[BitVec], cols: usize) -> usize {
    let mut ech = Echelon::new(cols);
    for r in rows {
        ech.insert(r.clone());
    }
    ech.rank()
}

/// Basis of the kernel `{ v : A v = 0 }` of the matrix whose rows are `rows`.
///
/// Pivots are chosen in ascending column order, so the basis is
/// deterministic for a given row list.
pub fn kernel_basis(rows: &[BitVec], cols: usize) -> Vec<BitVec> {
    let mut work: Vec<BitVec> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..cols {
        if let Some(i) = (r..work.len()).find(|&i| work[i].get(c)) {
            work.swap(r, i);
            for j in 0..work.len() {
                if j != r && work[j].get(c) {
                    let (a, b) = if j < r {
                        let (lo, hi) = work.split_at_mut(r);
                        (&mut lo[j], &hi[0])
                    } else {
                        let (lo, hi) = work.split_at_mut(j);
                        (&mut hi[0], &lo[r])
                    };
                    a.xor_assign(b);
                }
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_cols.binary_search(&f).is_ok() {
            continue;
        }
        let mut v = BitVec::zeros(cols);
        v.set(f);
        for &(row, col) in &pivots {
            if work[row].get(f) {
                v.set(col);
            }
        }
        basis.push(v);
    }
    basis
}

/// Depth-first walk over all supports of a fixed weight, in lexicographic
/// order. `synd` starts at `initial` and is kept equal to
/// `initial + sum of the selected columns` by incremental XOR. `visit` sees
/// each support with its accumulated vector and returns true to stop the
/// walk early; the return value reports whether that happened.
pub fn for_each_support(
    columns: &[BitVec],
    weight: usize,
    initial: BitVec,
    visit: &mut dyn FnMut(&[usize], &BitVec) -> bool,
) -> bool {
    fn go(
        columns: &[BitVec],
        start: usize,
        remaining: usize,
        synd: &mut BitVec,
        support: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], &BitVec) -> bool,
    ) -> bool {
        if remaining == 0 {
            return visit(support, synd);
        }
        for e in start..=(columns.len() - remaining) {
            synd.xor_assign(&columns[e]);
            support.push(e);
            if go(columns, e + 1, remaining - 1, synd, support, visit) {
                return true;
            }
            support.pop();
            synd.xor_assign(&columns[e]);
        }
        false
    }

    if weight > columns.len() {
        return false;
    }
    let mut synd = initial;
    let mut support = Vec::with_capacity(weight);
    go(columns, 0, weight, &mut synd, &mut support, visit)
}

/// Inverse of a square matrix given as rows; `None` if singular.
pub fn invert(rows: &[BitVec]) -> Option<Vec<BitVec>> {
    let n = rows.len();
    let mut work: Vec<BitVec> = rows.to_vec();
    let mut inv: Vec<BitVec> = (0..n)
        .map(|i| {
            let mut v = BitVec::zeros(n);
            v.set(i);
            v
        })
        .collect();
    for (v, c) in work.iter().zip(0..) {
        assert_eq!(v.len(), n, "invert requires a square matrix");
        let _ = c;
    }
    for c in 0..n {
        let pivot = (c..n).find(|&i| work[i].get(c))?;
        work.swap(c, pivot);
        inv.swap(c, pivot);
        for j in 0..n {
            if j != c && work[j].get(c) {
                let (wj, wc) = two_mut(&mut work, j, c);
                wj.xor_assign(wc);
                let (ij, ic) = two_mut(&mut inv, j, c);
                ij.xor_assign(ic);
            }
        }
    }
    Some(inv)
}

fn two_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}
