use crate::error::Result;
use crate::linalg::solve_left;
use crate::matrix::Matrix;

use super::certificate::{Certificate, CertifiedRelation};
use super::{same_arity, MatrixPair};

/// `[B 0 ; 0 B' | A ; A']`.
pub fn meet(p: &MatrixPair, q: &MatrixPair) -> Result<MatrixPair> {
    same_arity(p, q)?;
    MatrixPair::new(Matrix::block_diag(p.b(), q.b())?, Matrix::vstack(&[p.a(), q.a()])?)
}

/// The meet together with its two projections.
#[derive(Clone, Debug)]
pub struct MeetRelations {
    pub meet: MatrixPair,
    pub below_left: CertifiedRelation,
    pub below_right: CertifiedRelation,
}

pub fn meet_certified(p: &MatrixPair, q: &MatrixPair) -> Result<MeetRelations> {
    let m = meet(p, q)?;
    let ring = p.ring();
    let n = p.arity();
    let proj = |rows: usize, before: usize, after: usize| -> Result<Matrix> {
        Matrix::hstack(&[
            &Matrix::zeros(ring, rows, before),
            &Matrix::identity(ring, rows),
            &Matrix::zeros(ring, rows, after),
        ])
    };
    let left = Certificate::new(
        proj(p.rows(), 0, q.rows())?,
        proj(p.width(), 0, q.width())?,
        Matrix::zeros(ring, p.width(), n),
    );
    let right = Certificate::new(
        proj(q.rows(), p.rows(), 0)?,
        proj(q.width(), p.width(), 0)?,
        Matrix::zeros(ring, q.width(), n),
    );
    Ok(MeetRelations {
        below_left: CertifiedRelation::new(m.clone(), p.clone(), left)?,
        below_right: CertifiedRelation::new(m.clone(), q.clone(), right)?,
        meet: m,
    })
}

/// From `r <= p` and `r <= q`, the relation `r <= meet(p, q)`.
pub fn meet_universal(to_p: &CertifiedRelation, to_q: &CertifiedRelation) -> Result<CertifiedRelation> {
    if to_p.source() != to_q.source() {
        return Err(crate::Error::ChainMismatch);
    }
    let m = meet(to_p.target(), to_q.target())?;
    let (a, b) = (to_p.cert(), to_q.cert());
    let cert = Certificate::new(
        Matrix::vstack(&[a.u(), b.u()])?,
        Matrix::vstack(&[a.v(), b.v()])?,
        Matrix::vstack(&[a.g(), b.g()])?,
    );
    CertifiedRelation::new(to_p.source().clone(), m, cert)
}

/// `[B^T ; A^T | 0 ; I_n]`. Over a commutative ring the opposite ring is
/// the ring itself.
pub fn dual(p: &MatrixPair) -> MatrixPair {
    let ring = p.ring();
    let (k, n) = (p.width(), p.arity());
    let left = Matrix::vstack(&[&p.b().transpose(), &p.a().transpose()]).expect("both have m columns");
    let right = Matrix::vstack(&[&Matrix::zeros(ring, k, n), &Matrix::identity(ring, n)]).expect("n columns");
    MatrixPair::new(left, right).expect("k + n rows on both sides")
}

/// From `p <= q`, the reversed relation `dual(q) <= dual(p)`.
pub fn dual_relation(rel: &CertifiedRelation) -> Result<CertifiedRelation> {
    let (p, q, c) = (rel.source(), rel.target(), rel.cert());
    let ring = p.ring();
    let n = p.arity();
    let u = Matrix::from_blocks(&[
        vec![&c.v().transpose(), &Matrix::zeros(ring, p.width(), n)],
        vec![&c.g().transpose(), &Matrix::identity(ring, n)],
    ])?;
    let cert = Certificate::new(u, c.u().transpose(), Matrix::zeros(ring, p.rows(), n));
    CertifiedRelation::new(dual(q), dual(p), cert)
}

/// `(p* ^ q*)*`, written out as a single block pair.
pub fn join(p: &MatrixPair, q: &MatrixPair) -> Result<MatrixPair> {
    same_arity(p, q)?;
    let ring = p.ring();
    let n = p.arity();
    let (m1, m2) = (p.rows(), q.rows());
    let (k1, k2) = (p.width(), q.width());
    let z = |r: usize, c: usize| Matrix::zeros(ring, r, c);
    let id = Matrix::identity(ring, n);
    let left = Matrix::from_blocks(&[
        vec![p.b(), p.a(), &z(m1, k2), &z(m1, n)],
        vec![&z(m2, k1), &z(m2, n), q.b(), q.a()],
        vec![&z(n, k1), &id, &z(n, k2), &id],
    ])?;
    let right = Matrix::vstack(&[&z(m1 + m2, n), &id])?;
    MatrixPair::new(left, right)
}

/// `W` with `B W = A`, which exists exactly when `p` is the maximum.
pub fn is_top(p: &MatrixPair) -> Result<Option<Matrix>> {
    solve_left(p.b(), p.a())
}

/// `U` with `U B = 0` and `U A = I_n`, which exists exactly when `p` is
/// the minimum.
pub fn is_bottom(p: &MatrixPair) -> Result<Option<Matrix>> {
    let ring = p.ring();
    let (k, n) = (p.width(), p.arity());
    let rhs = Matrix::hstack(&[&Matrix::zeros(ring, n, k), &Matrix::identity(ring, n)])?;
    let ut = solve_left(&p.joined().transpose(), &rhs.transpose())?;
    Ok(ut.map(|m| m.transpose()))
}

/// Certificate `1_n <= p` from a witness of [`is_top`].
pub fn top_relation(p: &MatrixPair, w: &Matrix) -> Result<CertifiedRelation> {
    let ring = p.ring();
    let top = MatrixPair::top(ring, p.arity());
    let cert = Certificate::new(Matrix::zeros(ring, p.rows(), 0), Matrix::zeros(ring, p.width(), 0), w.neg());
    CertifiedRelation::new(top, p.clone(), cert)
}

/// Certificate `p <= 0_n` from a witness of [`is_bottom`].
pub fn bottom_relation(p: &MatrixPair, u: &Matrix) -> Result<CertifiedRelation> {
    let ring = p.ring();
    let n = p.arity();
    let cert = Certificate::new(u.clone(), Matrix::zeros(ring, 0, p.width()), Matrix::zeros(ring, 0, n));
    CertifiedRelation::new(p.clone(), MatrixPair::bottom(ring, n), cert)
}
