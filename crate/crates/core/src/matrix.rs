//! Dense matrices over a [`RingSpec`].
//!
//! Zero-height and zero-width matrices are ordinary values: an `m x 0`
//! matrix times a `0 x n` matrix is the `m x n` zero matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(ring: RingSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidEntry(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !ring.contains(e)) {
            return Err(Error::InvalidEntry(format!("{bad:?} is not an element of {ring}")));
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn from_fn(ring: RingSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, entries }
    }

    /// Builds a matrix from integer rows, reducing into the ring.
    ///
    /// All rows must have length `cols`; use this for literals in tests and
    /// examples where an empty row list still needs a width.
    pub fn from_i64(ring: RingSpec, cols: usize, rows: &[&[i64]]) -> Self {
        Self::from_fn(ring, rows.len(), cols, |i, j| {
            assert_eq!(rows[i].len(), cols, "ragged matrix literal");
            ring.from_i64(rows[i][j])
        })
    }

    /// Square diagonal matrix.
    pub fn diagonal(ring: RingSpec, diag: &[Scalar]) -> Self {
        let n = diag.len();
        Self::from_fn(ring, n, n, |i, j| if i == j { diag[i].clone() } else { ring.zero() })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        debug_assert!(self.ring.contains(&v));
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Matrix {
        self.select_rows(&[i])
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_columns(&[j])
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Self::from_fn(self.ring, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Self::from_fn(self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Columns `range` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_columns(&idx)
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_rows(&idx)
    }

    /// The matrix with column `j` deleted.
    pub fn remove_column(&self, j: usize) -> Result<Matrix> {
        if j >= self.cols {
            return Err(Error::IndexOutOfRange { index: j, len: self.cols });
        }
        let idx: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        Ok(self.select_columns(&idx))
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let r = self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = r.add(&out.entries[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Matrix, op: &'static str, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, "add", |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, "sub", |a, b| self.ring.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        self.map(|e| self.ring.neg(e))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map(|e| self.ring.mul(s, e))
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise image in another ring.
    pub fn map_into(&self, target: RingSpec, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Side-by-side concatenation `(M1, M2, ...)`; all parts need equal height.
    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().expect("hstack of no matrices");
        let rows = first.rows;
        for p in parts {
            first.same_ring(p)?;
            if p.rows != rows {
                return Err(Error::DimensionMismatch { op: "hstack", left: first.shape(), right: p.shape() });
            }
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for p in parts {
                entries.extend_from_slice(&p.entries[i * p.cols..(i + 1) * p.cols]);
            }
        }
        Ok(Matrix { ring: first.ring, rows, cols, entries })
    }

    /// Vertical concatenation; all parts need equal width.
    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().expect("vstack of no matrices");
        let cols = first.cols;
        for p in parts {
            first.same_ring(p)?;
            if p.cols != cols {
                return Err(Error::DimensionMismatch { op: "vstack", left: first.shape(), right: p.shape() });
            }
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let entries = parts.iter().flat_map(|p| p.entries.iter().cloned()).collect();
        Ok(Matrix { ring: first.ring, rows, cols, entries })
    }

    /// Block matrix from a grid of blocks; heights agree along block rows
    /// and widths along block columns.
    pub fn from_blocks(grid: &[Vec<&Matrix>]) -> Result<Matrix> {
        let rows: Vec<Matrix> = grid.iter().map(|r| Matrix::hstack(r)).collect::<Result<_>>()?;
        let refs: Vec<&Matrix> = rows.iter().collect();
        Matrix::vstack(&refs)
    }

    /// `[[A, 0], [0, B]]`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.same_ring(b)?;
        let r = a.ring;
        let z_ab = Matrix::zeros(r, a.rows, b.cols);
        let z_ba = Matrix::zeros(r, b.rows, a.cols);
        Matrix::from_blocks(&[vec![a, &z_ab], vec![&z_ba, b]])
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[src]`.
    pub fn add_row_multiple(&mut self, target: usize, src: usize, c: &Scalar) {
        assert_ne!(target, src);
        let r = self.ring;
        for j in 0..self.cols {
            let v = r.mul(c, self.get(src, j));
            let idx = target * self.cols + j;
            self.entries[idx] = r.add(&self.entries[idx], &v);
        }
    }

    /// `col[target] += c * col[src]`.
    pub fn add_col_multiple(&mut self, target: usize, src: usize, c: &Scalar) {
        assert_ne!(target, src);
        let r = self.ring;
        for i in 0..self.rows {
            let v = r.mul(self.get(i, src), c);
            let idx = i * self.cols + target;
            self.entries[idx] = r.add(&self.entries[idx], &v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Scalar) {
        let r = self.ring;
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = r.mul(c, &self.entries[idx]);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Scalar) {
        let r = self.ring;
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.entries[idx] = r.mul(&self.entries[idx], c);
        }
    }

    /// Row `i` as owned scalars.
    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_row_zero(&self, i: usize) -> bool {
        self.entries[i * self.cols..(i + 1) * self.cols].iter().all(|e| self.ring.is_zero(e))
    }
}

impl fmt::Display for Matrix {
    /// The `<rows>x<cols>[a,b;c,d]` text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        if self.rows * self.cols > 0 {
            for i in 0..self.rows {
                if i > 0 {
                    write!(f, ";")?;
                }
                for j in 0..self.cols {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", self.get(i, j))?;
                }
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::integers()
    }

    #[test]
    fn empty_products() {
        let a = Matrix::zeros(z(), 3, 0);
        let b = Matrix::zeros(z(), 0, 2);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.shape(), (3, 2));
        assert!(c.is_zero());
        let d = b.mul(&Matrix::zeros(z(), 2, 4)).unwrap();
        assert_eq!(d.shape(), (0, 4));
    }

    #[test]
    fn mul_checks_dimensions() {
        let a = Matrix::from_i64(z(), 2, &[&[1, 2]]);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = Matrix::identity(z(), 1);
        let b = Matrix::identity(RingSpec::rationals(), 1);
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn blocks() {
        let a = Matrix::from_i64(z(), 1, &[&[2]]);
        let b = Matrix::from_i64(z(), 2, &[&[1, 3]]);
        let d = Matrix::block_diag(&a, &b).unwrap();
        assert_eq!(d, Matrix::from_i64(z(), 3, &[&[2, 0, 0], &[0, 1, 3]]));
        let e = Matrix::block_diag(&Matrix::zeros(z(), 0, 0), &a).unwrap();
        assert_eq!(e, a);
    }

    #[test]
    fn remove_column() {
        let a = Matrix::from_i64(z(), 3, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.remove_column(1).unwrap(), Matrix::from_i64(z(), 2, &[&[1, 3], &[4, 6]]));
        assert!(a.remove_column(3).is_err());
    }

    #[test]
    fn display() {
        let a = Matrix::from_i64(z(), 2, &[&[1, -2], &[0, 3]]);
        assert_eq!(a.to_string(), "2x2[1,-2;0,3]");
        assert_eq!(Matrix::zeros(z(), 2, 0).to_string(), "2x0[]");
    }
}
