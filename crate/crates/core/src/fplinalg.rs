//! Exact linear algebra over a prime field F_p (p odd).
//!
//! Vectors are plain `Vec<u32>` slices of residues in `[0, p)`. Matrices act
//! on column vectors from the left, so `m.apply(v)` is `m·v`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Largest prime accepted at the boundary.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not an odd prime below 2^31")]
    NotOddPrime(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("enumeration of {dim}-dimensional space over F_{prime} exceeds cap {cap}")]
    CapExceeded { prime: u32, dim: usize, cap: u64 },
}

/// Deterministic primality test by trial division; fine for `p < 2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Checks `p` is an odd prime usable as a ground field.
pub fn check_prime(p: u64) -> Result<u32, LinalgError> {
    if p % 2 == 1 && p < MAX_PRIME && is_prime(p) {
        Ok(p as u32)
    } else {
        Err(LinalgError::NotOddPrime(p))
    }
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    add(a, p - b % p, p)
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero mod p.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow(a, p as u64 - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// `y += c·x` coordinatewise.
pub fn axpy(y: &mut [u32], c: u32, x: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = add(*yi, mul(c, xi, p), p);
    }
}

pub fn scale(v: &[u32], c: u32, p: u32) -> Vec<u32> {
    v.iter().map(|&x| mul(x, c, p)).collect()
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    prime: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(F_{}; ", self.prime)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()?;
        write!(f, ")")
    }
}

impl FpMatrix {
    pub fn zeros(prime: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { prime, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(prime: u32, n: usize) -> Self {
        let mut m = Self::zeros(prime, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry mod p.
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(prime: u32, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r.iter().map(|&x| reduce(x, prime)));
        }
        FpMatrix { prime, rows: rows.len(), cols, data }
    }

    /// Builds a matrix from rows already reduced mod p.
    pub fn from_residue_rows<R: AsRef<[u32]>>(prime: u32, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r.iter().map(|&x| x % prime));
        }
        FpMatrix { prime, rows: rows.len(), cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns<R: AsRef<[u32]>>(prime: u32, rows: usize, columns: &[R]) -> Self {
        let mut m = Self::zeros(prime, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "ragged matrix column");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % prime);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.prime;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.prime, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.prime as u64;
        (0..self.rows)
            .map(|i| {
                let acc = self.row(i).iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    (acc + a as u64 * b as u64) % p
                });
                acc as u32
            })
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.prime, other.prime);
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.prime;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy(dst, a, orow, p);
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.prime;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b, p)).collect();
        FpMatrix { prime: p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.prime;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b, p)).collect();
        FpMatrix { prime: p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, c: u32) -> FpMatrix {
        let p = self.prime;
        FpMatrix { prime: p, rows: self.rows, cols: self.cols, data: scale(&self.data, c, p) }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.prime, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row-echelon form. Returns the rank and the reduced matrix
    /// (same shape, zero rows at the bottom).
    pub fn rref(&self) -> (usize, FpMatrix) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (rank, m)
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        self.rref().0
    }

    fn rref_in_place(&mut self) -> usize {
        let p = self.prime;
        let cols = self.cols;
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let s = inv(self.get(r, c), p);
            for j in c..cols {
                let x = self.get(r, j);
                self.data[r * cols + j] = mul(x, s, p);
            }
            let pivot_row: Vec<u32> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f != 0 {
                    let dst = &mut self.data[i * cols..(i + 1) * cols];
                    axpy(dst, neg(f, p), &pivot_row, p);
                }
            }
            r += 1;
        }
        r
    }

    /// Right kernel `{x : self·x = 0}`.
    pub fn kernel(&self) -> FpSubspace {
        let p = self.prime;
        let (rank, red) = self.rref();
        let pivots: Vec<usize> = (0..rank)
            .map(|i| red.row(i).iter().position(|&x| x != 0).unwrap())
            .collect();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(red.get(i, free), p);
            }
            basis.push(v);
        }
        FpSubspace::span(p, self.cols, &basis)
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(self.prime, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        aug.rref_in_place();
        let mut out = Self::zeros(self.prime, n, n);
        for i in 0..n {
            for j in 0..n {
                let expect = u32::from(i == j);
                if aug.get(i, j) != expect {
                    return None;
                }
                out.data[i * n + j] = aug.get(i, n + j);
            }
        }
        Some(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { prime: self.prime, rows: self.rows + other.rows, cols: self.cols, data }
    }
}

/// A subspace of F_p^n, stored as its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpSubspace {
    prime: u32,
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpSubspace(F_{}^{}; ", self.prime, self.ambient)?;
        f.debug_list().entries(self.basis.row_vectors()).finish()?;
        write!(f, ")")
    }
}

impl FpSubspace {
    pub fn zero(prime: u32, ambient: usize) -> Self {
        FpSubspace { prime, ambient, basis: FpMatrix::zeros(prime, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(prime: u32, ambient: usize) -> Self {
        Self::from_matrix(&FpMatrix::identity(prime, ambient))
    }

    /// Span of the given vectors.
    pub fn span<R: AsRef<[u32]>>(prime: u32, ambient: usize, vectors: &[R]) -> Self {
        Self::from_matrix(&FpMatrix::from_residue_rows(prime, ambient, vectors))
    }

    /// Row space of a matrix.
    pub fn from_matrix(m: &FpMatrix) -> Self {
        let (rank, red) = m.rref();
        let cols = m.cols();
        let mut basis = FpMatrix::zeros(m.prime(), rank, cols);
        basis.data.copy_from_slice(&red.data[..rank * cols]);
        let pivots = (0..rank)
            .map(|i| basis.row(i).iter().position(|&x| x != 0).unwrap())
            .collect();
        FpSubspace { prime: m.prime(), ambient: cols, basis, pivots }
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(prime: u32, ambient: usize, indices: &[usize]) -> Self {
        let vecs: Vec<Vec<u32>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self::span(prime, ambient, &vecs)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduced row-echelon basis (one row per basis vector).
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &FpSubspace) -> Result<(), LinalgError> {
        if self.prime != other.prime {
            return Err(LinalgError::PrimeMismatch(self.prime, other.prime));
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Residue of `v` after eliminating the pivot coordinates; zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.prime;
        let mut r: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = r[pc];
            if f != 0 {
                axpy(&mut r, neg(f, p), self.basis.row(i), p);
            }
        }
        r
    }

    pub fn member(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.member(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc] % self.prime).collect())
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![0; self.ambient];
        for (i, &c) in coords.iter().enumerate() {
            axpy(&mut v, c, self.basis.row(i), self.prime);
        }
        v
    }

    /// Tests `other ⊆ self`.
    pub fn contains(&self, other: &FpSubspace) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        Ok(other.basis_vectors().all(|v| self.member(v)))
    }

    pub fn sum(&self, other: &FpSubspace) -> Result<FpSubspace, LinalgError> {
        self.check_compatible(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)))
    }

    /// Intersection, from the left kernel of the stacked bases.
    pub fn intersect(&self, other: &FpSubspace) -> Result<FpSubspace, LinalgError> {
        self.check_compatible(other)?;
        let k = self.dim();
        if k == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.prime, self.ambient));
        }
        let stacked = self.basis.vstack(&other.basis);
        let left_kernel = stacked.transpose().kernel();
        let vecs: Vec<Vec<u32>> =
            left_kernel.basis_vectors().map(|coeffs| self.combine(&coeffs[..k])).collect();
        Ok(Self::span(self.prime, self.ambient, &vecs))
    }

    /// Vectors of `outer` completing a basis of `self` to one of `outer`,
    /// chosen greedily from `outer`'s echelon basis. Requires `self ⊆ outer`.
    pub fn quotient_basis(&self, outer: &FpSubspace) -> Result<Vec<Vec<u32>>, LinalgError> {
        if !outer.contains(self)? {
            return Err(LinalgError::NotContained);
        }
        let mut acc = self.clone();
        let mut reps = Vec::new();
        for v in outer.basis_vectors() {
            if !acc.member(v) {
                reps.push(v.to_vec());
                acc = acc.sum(&Self::span(self.prime, self.ambient, &[v]))?;
            }
        }
        Ok(reps)
    }

    /// Image under a linear map given as a matrix acting on columns.
    pub fn image(&self, m: &FpMatrix) -> FpSubspace {
        let vecs: Vec<Vec<u32>> = self.basis_vectors().map(|v| m.apply(v)).collect();
        Self::span(self.prime, m.rows(), &vecs)
    }

    /// Number of vectors in the subspace, if it fits in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        (self.prime as u64).checked_pow(self.dim() as u32)
    }

    /// Every vector of the subspace, in lexicographic order of coordinates.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Vec<u32>>, LinalgError> {
        let card = self.cardinality().filter(|&c| c <= cap).ok_or(LinalgError::CapExceeded {
            prime: self.prime,
            dim: self.dim(),
            cap,
        })?;
        let d = self.dim();
        let mut out = Vec::with_capacity(card as usize);
        let mut coords = vec![0u32; d];
        for _ in 0..card {
            out.push(self.combine(&coords));
            for c in coords.iter_mut().rev() {
                *c += 1;
                if *c == self.prime {
                    *c = 0;
                } else {
                    break;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det2(m: &[[i64; 2]; 2], p: u32) -> u32 {
        reduce(m[0][0] * m[1][1] - m[0][1] * m[1][0], p)
    }

    #[test]
    fn rref_examples() {
        let z = FpMatrix::zeros(3, 2, 2);
        assert_eq!(z.rref().0, 0);

        let id = FpMatrix::identity(5, 3);
        let (r, red) = id.rref();
        assert_eq!(r, 3);
        assert_eq!(red, id);

        let rows = [[1, 2], [2, 1]];
        assert_eq!(det2(&rows, 3), 0);
        let m = FpMatrix::from_rows(3, 2, &rows);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn subspace_examples() {
        let e1 = FpSubspace::span(3, 2, &[[1, 0]]);
        let e2 = FpSubspace::span(3, 2, &[[0, 1]]);
        let s = e1.sum(&e2).unwrap();
        assert!(s.is_full());
        assert_eq!(s.intersect(&s).unwrap(), s);

        let a = FpSubspace::span(5, 2, &[[1, 1]]);
        let b = FpSubspace::span(5, 2, &[[1, 2]]);
        // exhaustive oracle over all 25 vectors of F_5^2
        let mut common = 0;
        for x in 0..5 {
            for y in 0..5 {
                if a.member(&[x, y]) && b.member(&[x, y]) {
                    common += 1;
                }
            }
        }
        assert_eq!(common, 1);
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn mismatch_and_quotient_errors() {
        let a = FpSubspace::full(3, 2);
        let b = FpSubspace::full(5, 2);
        assert_eq!(a.sum(&b), Err(LinalgError::PrimeMismatch(3, 5)));
        let c = FpSubspace::full(3, 3);
        assert_eq!(a.intersect(&c), Err(LinalgError::DimensionMismatch(2, 3)));
        let line = FpSubspace::span(3, 2, &[[1, 1]]);
        let other = FpSubspace::span(3, 2, &[[1, 0]]);
        assert_eq!(line.quotient_basis(&other), Err(LinalgError::NotContained));
        let reps = line.quotient_basis(&a).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(line.sum(&FpSubspace::span(3, 2, &reps)).unwrap(), a);
    }

    #[test]
    fn kernel_and_inverse() {
        let m = FpMatrix::from_rows(7, 3, &[[1, 2, 3], [2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        for v in k.basis_vectors() {
            assert!(is_zero(&m.apply(v)));
        }
        let a = FpMatrix::from_rows(7, 2, &[[2, 1], [1, 1]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), FpMatrix::identity(7, 2));
        assert!(FpMatrix::from_rows(7, 2, &[[1, 2], [2, 4]]).inverse().is_none());
    }

    #[test]
    fn prime_boundary() {
        assert!(check_prime(2).is_err());
        assert!(check_prime(9).is_err());
        assert_eq!(check_prime(101), Ok(101));
        assert!(check_prime(MAX_PRIME + 1).is_err());
    }

    #[test]
    fn enumerate_respects_cap() {
        let s = FpSubspace::full(3, 2);
        assert_eq!(s.enumerate(9).unwrap().len(), 9);
        assert!(matches!(s.enumerate(8), Err(LinalgError::CapExceeded { .. })));
    }

    fn arb_subspace(p: u32) -> impl Strategy<Value = FpSubspace> {
        prop::collection::vec(prop::collection::vec(0..p, 4), 0..5)
            .prop_map(move |rows| FpSubspace::span(p, 4, &rows))
    }

    fn arb_pair() -> impl Strategy<Value = (FpSubspace, FpSubspace)> {
        prop_oneof![Just(3u32), Just(5u32), Just(7u32)]
            .prop_flat_map(|p| (arb_subspace(p), arb_subspace(p)))
    }

    proptest! {
        #[test]
        fn rref_idempotent(rows in prop::collection::vec(prop::collection::vec(0u32..7, 4), 0..6)) {
            let m = FpMatrix::from_residue_rows(7, 4, &rows);
            let once = m.rref();
            prop_assert_eq!(once.1.rref(), once);
        }

        #[test]
        fn grassmann_formula((a, b) in arb_pair()) {
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
        }

        #[test]
        fn mutual_containment_is_equality((a, b) in arb_pair()) {
            let both = a.contains(&b).unwrap() && b.contains(&a).unwrap();
            prop_assert_eq!(both, a.basis() == b.basis());
        }
    }
}
