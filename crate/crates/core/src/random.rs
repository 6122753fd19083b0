//! Seeded generators for matrices, pairs and chains of rewriting moves.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::pair::{compose_all, rod_left_multiply, rod_right_multiply, rod_translate, CertifiedRelation, MatrixPair};
use crate::ring::{RingKind, RingSpec, Scalar};

/// Seed used by the acceptance suite and the CLI unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform residue over finite rings; integers in `[-bound, bound]` over `Z`
/// and `Q` (with denominators up to `bound` over `Q`).
pub fn scalar(rng: &mut Rand, ring: RingSpec, bound: i64) -> Scalar {
    match ring.kind() {
        RingKind::PrimeField(n) | RingKind::ModRing(n) => Scalar::Residue(rng.gen_range(0..n)),
        RingKind::Integers => ring.from_i64(rng.gen_range(-bound..=bound)),
        RingKind::Rationals => {
            let den = rng.gen_range(1..=bound.max(1));
            ring.from_fraction(&rng.gen_range(-bound..=bound).into(), &den.into()).expect("nonzero denominator")
        }
    }
}

pub fn matrix(rng: &mut Rand, ring: RingSpec, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| scalar(rng, ring, bound))
}

/// A matrix whose shape is drawn from `0..=max_rows` by `0..=max_cols`.
pub fn matrix_up_to(rng: &mut Rand, ring: RingSpec, max_rows: usize, max_cols: usize, bound: i64) -> Matrix {
    let rows = rng.gen_range(0..=max_rows);
    let cols = rng.gen_range(0..=max_cols);
    matrix(rng, ring, rows, cols, bound)
}

/// A pair of the given arity with at most `max_rows` rows and `max_width`
/// left columns.
pub fn pair(rng: &mut Rand, ring: RingSpec, arity: usize, max_rows: usize, max_width: usize, bound: i64) -> MatrixPair {
    let m = rng.gen_range(0..=max_rows);
    let k = rng.gen_range(0..=max_width);
    let b = matrix(rng, ring, m, k, bound);
    let a = matrix(rng, ring, m, arity, bound);
    MatrixPair::new(b, a).expect("rows agree")
}

/// A system `[A]` of the given arity with at most `max_rows` rows.
pub fn system(rng: &mut Rand, ring: RingSpec, arity: usize, max_rows: usize, bound: i64) -> MatrixPair {
    let m = rng.gen_range(0..=max_rows);
    MatrixPair::system(matrix(rng, ring, m, arity, bound))
}

fn unit(rng: &mut Rand, ring: RingSpec) -> Scalar {
    match ring.kind() {
        RingKind::Integers => ring.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 }),
        _ => loop {
            let s = scalar(rng, ring, 3);
            if ring.is_unit(&s) {
                return s;
            }
        },
    }
}

/// An invertible `n x n` matrix built from random elementary operations,
/// together with its inverse.
pub fn invertible(rng: &mut Rand, ring: RingSpec, n: usize, bound: i64) -> (Matrix, Matrix) {
    let mut m = Matrix::identity(ring, n);
    let mut inv = Matrix::identity(ring, n);
    if n == 0 {
        return (m, inv);
    }
    for _ in 0..3 * n {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 => {
                m.swap_rows(s, t);
                inv.swap_cols(s, t);
            }
            1 => {
                let u = unit(rng, ring);
                m.scale_row(s, &u);
                inv.scale_col(s, &ring.inv(&u).expect("unit"));
            }
            _ if s != t => {
                let c = scalar(rng, ring, bound);
                m.add_row_multiple(t, s, &c);
                inv.add_col_multiple(s, t, &ring.neg(&c));
            }
            _ => {}
        }
    }
    (m, inv)
}

/// One rewriting move `p <= p'` with a random upper pair `p'`, keeping at
/// most `max_dim` rows and left columns.
pub fn rod_step(rng: &mut Rand, p: &MatrixPair, max_dim: usize, bound: i64) -> Result<CertifiedRelation> {
    let ring = p.ring();
    match rng.gen_range(0..3) {
        0 => {
            let rows = rng.gen_range(0..=max_dim);
            let u = matrix(rng, ring, rows, p.rows(), bound);
            rod_left_multiply(p, &u)
        }
        1 => {
            // p = (B' V | A) for B' = (B X) Q^-1, V = Q (I; 0).
            let extra = if p.width() < max_dim { rng.gen_range(0..=max_dim - p.width()) } else { 0 };
            let x = matrix(rng, ring, p.rows(), extra, bound);
            let k = p.width() + extra;
            let (q, q_inv) = invertible(rng, ring, k, bound);
            let upper = MatrixPair::new(Matrix::hstack(&[p.b(), &x])?.mul(&q_inv)?, p.a().clone())?;
            let embed = Matrix::vstack(&[&Matrix::identity(ring, p.width()), &Matrix::zeros(ring, extra, p.width())])?;
            let rel = rod_right_multiply(&upper, &q.mul(&embed)?)?;
            debug_assert_eq!(rel.source(), p);
            Ok(rel)
        }
        _ => {
            let g = matrix(rng, ring, p.width(), p.arity(), bound);
            let upper = MatrixPair::new(p.b().clone(), p.a().sub(&p.b().mul(&g)?)?)?;
            rod_translate(&upper, &g)
        }
    }
}

/// A chain `p_0 <= p_1 <= .. <= p_len` of single moves from a random start.
pub fn rod_chain(
    rng: &mut Rand,
    ring: RingSpec,
    arity: usize,
    len: usize,
    max_dim: usize,
    bound: i64,
) -> Result<Vec<CertifiedRelation>> {
    let mut p = pair(rng, ring, arity, max_dim, max_dim, bound);
    let mut chain = Vec::with_capacity(len);
    for _ in 0..len {
        let step = rod_step(rng, &p, max_dim, bound)?;
        p = step.target().clone();
        chain.push(step);
    }
    Ok(chain)
}

/// The composite of a random chain of one to four moves.
pub fn rod_relation(rng: &mut Rand, ring: RingSpec, arity: usize, max_dim: usize, bound: i64) -> Result<CertifiedRelation> {
    let len = rng.gen_range(1..=4);
    compose_all(&rod_chain(rng, ring, arity, len, max_dim, bound)?)
}
