//! Row reduction, Smith normal form and linear solving.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{RingKind, RingSpec, Scalar};

/// Reduced row-echelon form with zero rows deleted.
#[derive(Clone, Debug)]
pub struct Rref {
    /// `rank x cols`, unique for the row space of the input.
    pub reduced: Matrix,
    /// `rank x rows`, with `transform * input == reduced`.
    pub transform: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Result<Rref> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    let (rows, cols) = m.shape();
    let mut work = Matrix::hstack(&[m, &Matrix::identity(ring, rows)])?;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ring.is_zero(work.get(i, c))) else {
            continue;
        };
        work.swap_rows(r, p);
        let inv = ring.inv(work.get(r, c)).expect("nonzero pivot in a field");
        work.scale_row(r, &inv);
        for i in 0..rows {
            if i != r && !ring.is_zero(work.get(i, c)) {
                let f = ring.neg(work.get(i, c));
                work.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let top = work.row_range(0, r);
    Ok(Rref {
        reduced: top.column_range(0, cols),
        transform: top.column_range(cols, cols + rows),
        rank: r,
        pivots,
    })
}

pub fn rank(m: &Matrix) -> Result<usize> {
    Ok(rref(m)?.rank)
}

/// Basis (as rows) of `{ x : m * x = 0 }` over a field.
pub fn nullspace(m: &Matrix) -> Result<Matrix> {
    let ring = m.ring();
    let r = rref(m)?;
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    Ok(Matrix::from_fn(ring, free.len(), n, |b, j| {
        let f = free[b];
        if j == f {
            ring.one()
        } else if let Some(row) = r.pivots.iter().position(|&p| p == j) {
            ring.neg(r.reduced.get(row, f))
        } else {
            ring.zero()
        }
    }))
}

/// `P * M * Q = D` with `D` diagonal and `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: Matrix,
    pub p: Matrix,
    pub p_inv: Matrix,
    pub q: Matrix,
    pub q_inv: Matrix,
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn factors(&self) -> Vec<Scalar> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct SnfCalc {
    ring: RingSpec,
    d: Matrix,
    p: Matrix,
    p_inv: Matrix,
    q: Matrix,
    q_inv: Matrix,
}

impl SnfCalc {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.p.swap_rows(a, b);
        self.p_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.q_inv.swap_rows(a, b);
    }

    // row[t] += c * row[s]
    fn add_row(&mut self, t: usize, s: usize, c: &Scalar) {
        self.d.add_row_multiple(t, s, c);
        self.p.add_row_multiple(t, s, c);
        let neg = self.ring.neg(c);
        self.p_inv.add_col_multiple(s, t, &neg);
    }

    // col[t] += c * col[s]
    fn add_col(&mut self, t: usize, s: usize, c: &Scalar) {
        self.d.add_col_multiple(t, s, c);
        self.q.add_col_multiple(t, s, c);
        let neg = self.ring.neg(c);
        self.q_inv.add_row_multiple(s, t, &neg);
    }

    fn scale_row(&mut self, i: usize, u: &Scalar) {
        let inv = self.ring.inv(u).expect("unit");
        self.d.scale_row(i, u);
        self.p.scale_row(i, u);
        self.p_inv.scale_col(i, &inv);
    }

    fn min_norm_entry(&self, t: usize) -> Result<Option<(usize, usize)>> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let v = self.d.get(i, j);
                if self.ring.is_zero(v) {
                    continue;
                }
                let n = self.ring.norm(v)?;
                if best.as_ref().is_none_or(|(b, _, _)| n < *b) {
                    best = Some((n, i, j));
                }
            }
        }
        Ok(best.map(|(_, i, j)| (i, j)))
    }

    fn run(mut self) -> Result<Snf> {
        let (m, n) = self.d.shape();
        let ring = self.ring;
        let mut t = 0;
        while t < m.min(n) {
            let Some((i, j)) = self.min_norm_entry(t)? else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let pivot = self.d.get(t, t).clone();
                let mut dirty = false;
                for i in t + 1..m {
                    if ring.is_zero(self.d.get(i, t)) {
                        continue;
                    }
                    let (quo, rem) = ring.div_rem(self.d.get(i, t), &pivot)?;
                    self.add_row(i, t, &ring.neg(&quo));
                    if !ring.is_zero(&rem) {
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if ring.is_zero(self.d.get(t, j)) {
                        continue;
                    }
                    let (quo, rem) = ring.div_rem(self.d.get(t, j), &pivot)?;
                    self.add_col(j, t, &ring.neg(&quo));
                    if !ring.is_zero(&rem) {
                        dirty = true;
                    }
                }
                if dirty {
                    // a remainder of smaller norm is now in row/column t
                    let mut best = (ring.norm(self.d.get(t, t))?, t, t);
                    for i in t + 1..m {
                        let v = self.d.get(i, t);
                        if !ring.is_zero(v) && ring.norm(v)? < best.0 {
                            best = (ring.norm(v)?, i, t);
                        }
                    }
                    for j in t + 1..n {
                        let v = self.d.get(t, j);
                        if !ring.is_zero(v) && ring.norm(v)? < best.0 {
                            best = (ring.norm(v)?, t, j);
                        }
                    }
                    self.swap_rows(t, best.1);
                    self.swap_cols(t, best.2);
                    continue;
                }
                let mut offender = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        let (_, rem) = ring.div_rem(self.d.get(i, j), &pivot)?;
                        if !ring.is_zero(&rem) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.add_row(t, i, &ring.one()),
                    None => break,
                }
            }
            let u = ring.normalizing_unit(self.d.get(t, t));
            if !ring.is_one(&u) {
                self.scale_row(t, &u);
            }
            t += 1;
        }
        let rank = (0..m.min(n)).take_while(|&i| !ring.is_zero(self.d.get(i, i))).count();
        Ok(Snf { d: self.d, p: self.p, p_inv: self.p_inv, q: self.q, q_inv: self.q_inv, rank })
    }
}

pub fn smith_normal_form(m: &Matrix) -> Result<Snf> {
    let ring = m.ring();
    if !ring.is_euclidean() {
        return Err(Error::NotEuclidean(ring));
    }
    let (rows, cols) = m.shape();
    SnfCalc {
        ring,
        d: m.clone(),
        p: Matrix::identity(ring, rows),
        p_inv: Matrix::identity(ring, rows),
        q: Matrix::identity(ring, cols),
        q_inv: Matrix::identity(ring, cols),
    }
    .run()
}

/// A matrix `W` with `b * W = a`, if one exists.
pub fn solve_left(b: &Matrix, a: &Matrix) -> Result<Option<Matrix>> {
    if b.ring() != a.ring() {
        return Err(Error::RingMismatch(b.ring(), a.ring()));
    }
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch { op: "solve_left", left: b.shape(), right: a.shape() });
    }
    let ring = b.ring();
    match ring.kind() {
        RingKind::PrimeField(_) | RingKind::Rationals => solve_field(b, a),
        RingKind::Integers => solve_euclidean(b, a),
        RingKind::ModRing(n) => solve_mod(b, a, n),
    }
}

fn solve_field(b: &Matrix, a: &Matrix) -> Result<Option<Matrix>> {
    let ring = b.ring();
    let k = b.cols();
    let aug = Matrix::hstack(&[b, a])?;
    let r = rref(&aug)?;
    if r.pivots.iter().any(|&p| p >= k) {
        return Ok(None);
    }
    let mut w = Matrix::zeros(ring, k, a.cols());
    for (row, &p) in r.pivots.iter().enumerate() {
        for j in 0..a.cols() {
            w.set(p, j, r.reduced.get(row, k + j).clone());
        }
    }
    Ok(Some(w))
}

fn solve_euclidean(b: &Matrix, a: &Matrix) -> Result<Option<Matrix>> {
    let ring = b.ring();
    let snf = smith_normal_form(b)?;
    // D * Y = P * A with W = Q * Y
    let pa = snf.p.mul(a)?;
    let mut y = Matrix::zeros(ring, b.cols(), a.cols());
    for i in 0..pa.rows() {
        for j in 0..pa.cols() {
            let v = pa.get(i, j);
            if i < snf.rank {
                let (quo, rem) = ring.div_rem(v, snf.d.get(i, i))?;
                if !ring.is_zero(&rem) {
                    return Ok(None);
                }
                y.set(i, j, quo);
            } else if !ring.is_zero(v) {
                return Ok(None);
            }
        }
    }
    Ok(Some(snf.q.mul(&y)?))
}

/// Solve `B W = A (mod n)` as `[B | n I] [W; Z] = A` over the integers.
fn solve_mod(b: &Matrix, a: &Matrix, n: u64) -> Result<Option<Matrix>> {
    let ring = b.ring();
    let z = RingSpec::integers();
    let lift = |m: &Matrix| m.map_into(z, |e| Scalar::Integer(ring.lift(e).expect("residue")));
    let m = b.rows();
    let n_id = Matrix::identity(z, m).scale(&Scalar::Integer(BigInt::from(n)));
    let big = Matrix::hstack(&[&lift(b), &n_id])?;
    let Some(sol) = solve_euclidean(&big, &lift(a))? else {
        return Ok(None);
    };
    let w = sol.row_range(0, b.cols());
    Ok(Some(w.map_into(ring, |e| ring.from_bigint(z.lift(e).as_ref().expect("integer")))))
}

/// A matrix `C` with `B C B = B`, via the full-rank factorization of `B`.
pub fn generalized_inverse(b: &Matrix) -> Result<Matrix> {
    let ring = b.ring();
    let r = rref(b)?;
    // B = F R with F = B[:, pivots]; r.transform * F = I, R * R^+ = I
    let right_inv = Matrix::from_fn(ring, b.cols(), r.rank, |i, j| {
        if r.pivots[j] == i {
            ring.one()
        } else {
            ring.zero()
        }
    });
    right_inv.mul(&r.transform)
}

/// Determinant of a square matrix over a field or `Z` (by elimination / SNF).
pub fn determinant(m: &Matrix) -> Result<Scalar> {
    let ring = m.ring();
    if !m.is_square() {
        return Err(Error::DimensionMismatch { op: "determinant", left: m.shape(), right: m.shape() });
    }
    let n = m.rows();
    if ring.is_field() {
        let mut work = m.clone();
        let mut det = ring.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !ring.is_zero(work.get(i, c))) else {
                return Ok(ring.zero());
            };
            if p != c {
                work.swap_rows(p, c);
                det = ring.neg(&det);
            }
            let piv = work.get(c, c).clone();
            det = ring.mul(&det, &piv);
            let inv = ring.inv(&piv).expect("nonzero");
            for i in c + 1..n {
                if !ring.is_zero(work.get(i, c)) {
                    let f = ring.neg(&ring.mul(work.get(i, c), &inv));
                    work.add_row_multiple(i, c, &f);
                }
            }
        }
        return Ok(det);
    }
    if ring.kind() == RingKind::Integers {
        // det(D) = det(P)^-1 det(M) det(Q)^-1 and P, Q unimodular; recover sign by rationals
        let q = RingSpec::rationals();
        let lifted = m.map_into(q, |e| q.from_bigint(&ring.lift(e).expect("integer")));
        let d = determinant(&lifted)?;
        return Ok(ring.from_bigint(&q.lift(&d).expect("integral determinant")));
    }
    Err(Error::UnsupportedRing { ring, op: "determinant" })
}
