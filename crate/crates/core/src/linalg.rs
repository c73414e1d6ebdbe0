//! Exact linear algebra over a prime field `F_p`.
//!
//! Matrices are dense and row-major. Every matrix carries its [`Field`], so
//! mixing moduli is caught at the first operation instead of silently
//! producing garbage. Pivoting always takes the first nonzero entry, which
//! keeps every output reproducible bit-for-bit.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default modulus. Large enough that trace-form radicals are valid for every
/// endomorphism algebra below the session dimension cap.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Config(format!("modulus {p} is not prime")));
        }
        Ok(Field { p })
    }

    pub fn default_prime() -> Self {
        Field { p: DEFAULT_PRIME }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric lift to `(-p/2, p/2]`, used when reading small integers back
    /// out of residues.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds from signed integer rows. All rows must have equal length.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must equal rows*cols");
        Matrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn column_vector(field: Field, v: &[u32]) -> Self {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrices over different fields");
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "shape mismatch in product {:?}·{:?}", self.shape(), other.shape());
        let p = self.field.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b as u64) % p;
                }
            }
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (a, &b) in self.row(i).iter().zip(v) {
                    s = (s + *a as u64 * b as u64) % f.p as u64;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self + c·other`
    pub fn axpy(&mut self, c: u32, other: &Matrix) {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_vec(self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    /// Flattens row-major into a vector.
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.data[r * m.cols + j] = f.mul(v, inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v != 0 {
                        let cur = m.data[i * m.cols + j];
                        m.data[i * m.cols + j] = f.add(cur, f.mul(nf, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().rank
        } else {
            self.transpose().rref().rank
        }
    }

    /// Columns span the null space; there are `cols - rank` of them.
    pub fn kernel(&self) -> Matrix {
        let Rref { reduced, pivots, .. } = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, f.neg(reduced.get(r, fc)));
            }
        }
        k
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn image(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// One solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, matrix has {}",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::column_vector(self.field, b));
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    pub fn trace(&self) -> u32 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |s, i| f.add(s, self.get(i, i)))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && (self.rows == 0 || self.pow(self.rows as u64).is_zero())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} mod {}]", self.rows, self.cols, self.field.p)?;
        for i in 0..self.rows {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel()
}

pub fn solve_linear(m: &Matrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    m.solve(b)
}

/// Coordinates with respect to a fixed set of linearly independent columns.
///
/// Precomputes an invertible square submatrix so that each lookup is one
/// matrix-vector product.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Matrix,
    pivot_rows: Vec<usize>,
    inv: Matrix,
}

impl Coordinates {
    /// `basis` columns must be independent.
    pub fn new(basis: Matrix) -> Self {
        let piv = basis.transpose().rref().pivots;
        assert_eq!(piv.len(), basis.cols(), "coordinate basis is not independent");
        let inv = basis.select_rows(&piv).inverse().expect("pivot block invertible");
        Coordinates {
            basis,
            pivot_rows: piv,
            inv,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Assumes `v` lies in the span.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        let sel: Vec<u32> = self.pivot_rows.iter().map(|&i| v[i]).collect();
        self.inv.mul_vec(&sel)
    }

    /// `None` if `v` is not in the span.
    pub fn coords_checked(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.coords(v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }
}

/// Columns completing the column space of `sub` to all of `F^n`, chosen
/// among standard unit vectors.
pub fn complement_basis(sub: &Matrix, n: usize) -> Matrix {
    let f = sub.field();
    let piv = if sub.cols() == 0 { vec![] } else { sub.transpose().rref().pivots };
    let free: Vec<usize> = (0..n).filter(|i| !piv.contains(i)).collect();
    Matrix::from_fn(f, n, free.len(), |i, j| (i == free[j]) as u32)
}

/// Columns completing `sub` to a basis of `sup` (which must contain it),
/// chosen among the columns of `sup`.
pub fn relative_complement(sub: &Matrix, sup: &Matrix) -> Matrix {
    let both = sub.hstack(sup);
    let piv = both.rref().pivots;
    let chosen: Vec<usize> = piv.into_iter().filter(|&c| c >= sub.cols()).map(|c| c - sub.cols()).collect();
    sup.select_cols(&chosen)
}

/// Basis of `U ∩ W` for column spaces `U`, `W` in the same ambient space.
pub fn intersect(u: &Matrix, w: &Matrix) -> Matrix {
    let f = u.field();
    if u.cols() == 0 || w.cols() == 0 {
        return Matrix::zeros(f, u.rows(), 0);
    }
    let k = u.hstack(&w.scale(f.neg(1))).kernel();
    u.mul(&k.submatrix(0..u.cols(), 0..k.cols())).image()
}

/// Basis of `U + W`.
pub fn span_sum(u: &Matrix, w: &Matrix) -> Matrix {
    u.hstack(w).image()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(f(7), 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let z = Matrix::zeros(f(7), 2, 4);
        let r = z.rref();
        assert!(r.reduced.is_zero());
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one_over_f5() {
        // [[1,2],[2,4]]: second row is twice the first.
        let m = Matrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced, Matrix::from_rows(f(5), &[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(f(5), 3).kernel().cols(), 0);
        let k = Matrix::zeros(f(5), 3, 3).kernel();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
        // x + 2y = 0  =>  (x, y) ∝ (-2, 1) = (3, 1)
        let m = Matrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![3, 1]);
    }

    #[test]
    fn solve_examples() {
        let fld = f(7);
        let id = Matrix::identity(fld, 3);
        assert_eq!(id.solve(&[4, 5, 6]).unwrap(), Some(vec![4, 5, 6]));
        let z = Matrix::zeros(fld, 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        // x + y = 3, y = 4  =>  x = -1 = 6
        let m = Matrix::from_rows(fld, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.solve(&[3, 4]).unwrap(), Some(vec![6, 4]));
        assert!(matches!(m.solve(&[1, 2, 3]), Err(Error::Dimension(_))));
    }

    #[test]
    fn empty_shapes_behave_as_zero_maps() {
        let fld = f(7);
        let a = Matrix::zeros(fld, 0, 3);
        let b = Matrix::zeros(fld, 3, 2);
        assert_eq!(a.mul(&b).shape(), (0, 2));
        assert_eq!(a.kernel().cols(), 3);
        let c = Matrix::zeros(fld, 2, 0);
        assert_eq!(c.rank(), 0);
        assert_eq!(c.solve(&[0, 0]).unwrap(), Some(vec![]));
        assert_eq!(c.solve(&[1, 0]).unwrap(), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::new(32001).is_err());
        assert!(Field::new(32003).is_ok());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..11, r * c)
                .prop_map(move |d| Matrix::from_vec(Field::new(11).unwrap(), r, c, d))
        })
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated(m in arb_matrix()) {
            let k = m.kernel();
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
        }

        #[test]
        fn solve_has_zero_residual(m in arb_matrix(), seed in proptest::collection::vec(0u32..11, 6)) {
            let b: Vec<u32> = seed.into_iter().take(m.rows()).chain(std::iter::repeat(0)).take(m.rows()).collect();
            if let Some(x) = m.solve(&b).unwrap() {
                prop_assert_eq!(m.mul_vec(&x), b);
            }
        }

        #[test]
        fn inverse_round_trip(m in arb_matrix()) {
            if let Some(inv) = m.inverse() {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(m.field(), m.rows()));
            }
        }
    }
}
