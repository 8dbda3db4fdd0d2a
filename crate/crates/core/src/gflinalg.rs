//! Linear algebra over GF(2): dense bit matrices, Gaussian elimination,
//! independence tests on field elements, basis completion and trace-dual
//! bases.
//!
//! Pivoting is deterministic (leftmost column, lowest row) so every
//! construction built on top of it is reproducible bit for bit.

use crate::error::{Error, Result};
use crate::gf2m::{Elem, Field};

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVector({s})")
    }
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// The low `len` bits of `x`.
    pub fn from_u64(x: u64, len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len.min(64) {
            v.set(i, (x >> i) & 1 == 1);
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
        assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_with(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// The first 64 bits packed into an integer.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn dot(&self, other: &BitVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        assert!(cols > 0 && rows.iter().all(|r| r.len() == cols));
        BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.data[r].set(c, b)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            out.set(r, row.dot(x));
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        rref(&mut work, self.cols, &mut []).len()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut work = self.data.clone();
        let mut inv: Vec<BitVector> = BitMatrix::identity(n).data;
        let pivots = rref_with(&mut work, n, &mut inv);
        if pivots.len() < n {
            return None;
        }
        // rows are already in pivot order for a full-rank square matrix
        Some(BitMatrix {
            rows: n,
            cols: n,
            data: inv,
        })
    }
}

/// Reduces `rows` to reduced row echelon form, applying the same row
/// operations to the scalar right-hand sides in `rhs` (which may be empty).
/// Returns the pivot column of each of the leading rows.
fn rref(rows: &mut [BitVector], cols: usize, rhs: &mut [bool]) -> Vec<usize> {
    let track = !rhs.is_empty();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(next, p);
        if track {
            rhs.swap(next, p);
        }
        let pivot_row = rows[next].clone();
        let pivot_rhs = if track { rhs[next] } else { false };
        for r in 0..rows.len() {
            if r != next && rows[r].get(c) {
                rows[r].xor_with(&pivot_row);
                if track {
                    rhs[r] ^= pivot_rhs;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

/// Like [`rref`] but mirrors the row operations on a companion matrix.
fn rref_with(rows: &mut [BitVector], cols: usize, companion: &mut [BitVector]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(next, p);
        companion.swap(next, p);
        let pivot_row = rows[next].clone();
        let pivot_comp = companion[next].clone();
        for r in 0..rows.len() {
            if r != next && rows[r].get(c) {
                rows[r].xor_with(&pivot_row);
                companion[r].xor_with(&pivot_comp);
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

/// Result of [`solve_gf2`]: a particular solution when the system is
/// consistent, and a basis of the nullspace in either case.
#[derive(Clone, Debug)]
pub struct Gf2Solution {
    pub particular: Option<BitVector>,
    pub kernel: Vec<BitVector>,
}

impl Gf2Solution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// Solves `A x = rhs`. Free variables are set to zero in the particular
/// solution; the kernel basis has one vector per free column, in column
/// order.
pub fn solve_gf2(a: &BitMatrix, rhs: &BitVector) -> Gf2Solution {
    assert_eq!(rhs.len(), a.rows(), "rhs length must match row count");
    let mut work = a.data.clone();
    let mut b: Vec<bool> = (0..a.rows()).map(|i| rhs.get(i)).collect();
    // rref() only tracks rhs when non-empty; rows > 0 always holds here
    let pivots = rref(&mut work, a.cols(), &mut b);
    let rank = pivots.len();

    let consistent = b[rank..].iter().all(|&x| !x);
    let particular = consistent.then(|| {
        let mut x = BitVector::zeros(a.cols());
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, b[r]);
        }
        x
    });

    let mut is_pivot = vec![false; a.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..a.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVector::zeros(a.cols());
            v.set(f, true);
            for (r, &c) in pivots.iter().enumerate() {
                if work[r].get(f) {
                    v.set(c, true);
                }
            }
            v
        })
        .collect();
    Gf2Solution { particular, kernel }
}

/// Incremental GF(2) basis of `u32` vectors, reduced on leading bits.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    pivots: [u32; 32],
    dim: usize,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `x` against the basis.
    pub fn reduce(&self, mut x: u32) -> u32 {
        while x != 0 {
            let top = 31 - x.leading_zeros() as usize;
            if self.pivots[top] == 0 {
                break;
            }
            x ^= self.pivots[top];
        }
        x
    }

    /// Inserts `x`; returns false if it was already in the span.
    pub fn insert(&mut self, x: u32) -> bool {
        let r = self.reduce(x);
        if r == 0 {
            return false;
        }
        self.pivots[31 - r.leading_zeros() as usize] = r;
        self.dim += 1;
        true
    }

    pub fn contains(&self, x: u32) -> bool {
        self.reduce(x) == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// GF(2)-rank of a list of field elements.
pub fn rank(elems: &[Elem]) -> usize {
    let mut b = XorBasis::new();
    elems.iter().filter(|e| b.insert(e.bits())).count()
}

/// True iff the elements are linearly independent over GF(2).
pub fn independent(elems: &[Elem]) -> bool {
    rank(elems) == elems.len()
}

/// True iff `x` lies in the GF(2)-span of `gens`.
pub fn in_span(gens: &[Elem], x: Elem) -> bool {
    let mut b = XorBasis::new();
    for g in gens {
        b.insert(g.bits());
    }
    b.contains(x.bits())
}

/// All 2^k elements of span(basis). Element number `v` is the sum of the
/// basis vectors selected by the bits of `v`.
pub fn span(basis: &[Elem]) -> Vec<Elem> {
    assert!(basis.len() < 32, "span too large to enumerate");
    let n = 1usize << basis.len();
    let mut out = Vec::with_capacity(n);
    out.push(Elem::ZERO);
    for v in 1..n {
        let low = v.trailing_zeros() as usize;
        out.push(out[v & (v - 1)] + basis[low]);
    }
    out
}

/// An ordered GF(2)-basis of GF(2^m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    elems: Vec<Elem>,
}

impl Basis {
    pub fn new(field: &Field, elems: Vec<Elem>) -> Result<Basis> {
        if elems.len() != field.m() as usize || !independent(&elems) {
            return Err(Error::DependentInput);
        }
        Ok(Basis { elems })
    }

    /// The polynomial basis 1, α, ..., α^(m-1).
    pub fn polynomial(field: &Field) -> Basis {
        Basis {
            elems: (0..field.m()).map(|k| Elem(1 << k)).collect(),
        }
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Σ coeffs[j] · b_j.
    pub fn combine(&self, coeffs: u32) -> Elem {
        self.elems
            .iter()
            .enumerate()
            .filter(|(j, _)| (coeffs >> j) & 1 == 1)
            .fold(Elem::ZERO, |acc, (_, &b)| acc + b)
    }
}

/// The trace-dual of a [`Basis`]: `Tr(b_i · b'_j) = [i == j]`.
pub type DualBasis = Basis;

/// Extends `elems` to a basis, greedily appending the unit vectors
/// 1, α, α^2, ... that increase the rank.
pub fn complete_to_basis(field: &Field, elems: &[Elem]) -> Result<Basis> {
    let mut xb = XorBasis::new();
    for e in elems {
        if !xb.insert(e.bits()) {
            return Err(Error::DependentInput);
        }
    }
    let mut out = elems.to_vec();
    for k in 0..field.m() {
        if out.len() == field.m() as usize {
            break;
        }
        if xb.insert(1 << k) {
            out.push(Elem(1 << k));
        }
    }
    Ok(Basis { elems: out })
}

/// The trace-dual basis, from one inversion of `G[i][k] = Tr(b_i α^k)`:
/// the coordinates of `b'_j` form column `j` of `G^{-1}`.
pub fn dual_basis(field: &Field, basis: &Basis) -> DualBasis {
    let m = field.m() as usize;
    let mut g = BitMatrix::zeros(m, m);
    for (i, &b) in basis.elems.iter().enumerate() {
        for k in 0..m {
            g.set(i, k, field.trace(field.mul(b, Elem(1 << k))));
        }
    }
    let inv = g
        .inverse()
        .expect("trace form is non-degenerate on a basis");
    let elems = (0..m)
        .map(|j| {
            let bits = (0..m)
                .filter(|&k| inv.get(k, j))
                .fold(0u32, |acc, k| acc | 1 << k);
            Elem(bits)
        })
        .collect();
    Basis { elems }
}

/// Coordinates of `x` in `basis`, using its dual: `x_j = Tr(b'_j x)`.
pub fn coordinates(field: &Field, dual: &DualBasis, x: Elem) -> u32 {
    dual.elems.iter().enumerate().fold(0, |acc, (j, &d)| {
        acc | (field.trace(field.mul(d, x)) as u32) << j
    })
}

/// The m×m matrix of a GF(2)-linear map on GF(2^m): column `c` holds the
/// coordinates of `f(α^c)`.
pub fn map_matrix(field: &Field, f: impl Fn(Elem) -> Elem) -> BitMatrix {
    let m = field.m() as usize;
    let mut a = BitMatrix::zeros(m, m);
    for c in 0..m {
        let y = f(Elem(1 << c)).bits();
        for r in 0..m {
            a.set(r, c, (y >> r) & 1 == 1);
        }
    }
    a
}

pub(crate) fn elem_of(v: &BitVector) -> Elem {
    Elem(v.to_u64() as u32)
}

pub(crate) fn vec_of(field: &Field, x: Elem) -> BitVector {
    BitVector::from_u64(x.bits() as u64, field.m() as usize)
}

/// Basis of the kernel of a GF(2)-linear map on GF(2^m).
pub fn map_kernel(field: &Field, f: impl Fn(Elem) -> Elem) -> Vec<Elem> {
    let a = map_matrix(field, f);
    let zero = BitVector::zeros(field.m() as usize);
    solve_gf2(&a, &zero).kernel.iter().map(elem_of).collect()
}

/// One solution of `f(x) = y` for a GF(2)-linear `f`, if any.
pub fn map_solve(field: &Field, f: impl Fn(Elem) -> Elem, y: Elem) -> Option<Elem> {
    let a = map_matrix(field, f);
    solve_gf2(&a, &vec_of(field, y))
        .particular
        .as_ref()
        .map(elem_of)
}
