//! Matrix pairs `(B | A)` and the certified pre-order between them.

mod certificate;
mod decide;
mod lattice;
mod normal;

pub use certificate::{
    compose, compose_all, decompose, rod_left_multiply, rod_right_multiply, rod_translate, split_system, verify, Certificate,
    CertifiedRelation,
};
pub use decide::{decide_leq, decide_leq_with, equivalent, DecideOptions, Refutation, Verdict};
pub use lattice::{
    bottom_relation, dual, dual_relation, is_bottom, is_top, join, meet, meet_certified, meet_universal, top_relation,
    MeetRelations,
};
pub use normal::{canonical_form, pid_reduce, pid_reduce_certified, to_system, PidReduction, SystemReduction};

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::RingSpec;

/// A pair of matrices with the same number of rows; `B` is `m x k`, `A` is
/// `m x n` and the arity is `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixPair {
    b: Matrix,
    a: Matrix,
}

impl MatrixPair {
    pub fn new(b: Matrix, a: Matrix) -> Result<Self> {
        if b.ring() != a.ring() {
            return Err(Error::RingMismatch(b.ring(), a.ring()));
        }
        if b.rows() != a.rows() {
            return Err(Error::DimensionMismatch { op: "pair", left: b.shape(), right: a.shape() });
        }
        Ok(MatrixPair { b, a })
    }

    /// The system `(A)`, stored with a left matrix of width zero.
    pub fn system(a: Matrix) -> Self {
        let b = Matrix::zeros(a.ring(), a.rows(), 0);
        MatrixPair { b, a }
    }

    /// The maximum `1_n`, the empty system.
    pub fn top(ring: RingSpec, n: usize) -> Self {
        Self::system(Matrix::zeros(ring, 0, n))
    }

    /// The minimum `0_n = [I_n]`.
    pub fn bottom(ring: RingSpec, n: usize) -> Self {
        Self::system(Matrix::identity(ring, n))
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn ring(&self) -> RingSpec {
        self.a.ring()
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    /// Column count `k` of the left matrix.
    pub fn width(&self) -> usize {
        self.b.cols()
    }

    pub fn arity(&self) -> usize {
        self.a.cols()
    }

    /// True when the left matrix is zero (of any width).
    pub fn is_system(&self) -> bool {
        self.b.is_zero()
    }

    /// Same pair with a zero left matrix replaced by one of width zero.
    pub fn normalize_system(&self) -> Self {
        if self.is_system() {
            Self::system(self.a.clone())
        } else {
            self.clone()
        }
    }

    /// `(B A)`, the left and right matrices side by side.
    pub fn joined(&self) -> Matrix {
        Matrix::hstack(&[&self.b, &self.a]).expect("rows agree by construction")
    }
}

impl fmt::Display for MatrixPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_pair(self))
    }
}

pub(crate) fn same_ring(p: &MatrixPair, q: &MatrixPair) -> Result<()> {
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch(p.ring(), q.ring()));
    }
    Ok(())
}

pub(crate) fn same_arity(p: &MatrixPair, q: &MatrixPair) -> Result<()> {
    same_ring(p, q)?;
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch(p.arity(), q.arity()));
    }
    Ok(())
}
