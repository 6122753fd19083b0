//! The complex of nondegenerate matrix pairs over a finite prime field.
//!
//! Over a field every class is a system with a unique RREF coefficient
//! matrix, so `L_{n+1}(F_q)` is enumerated as the RREF matrices with `n + 1`
//! columns. Chains in dimension `n` are integer combinations of arity
//! `n + 1` classes; dimension `0` keeps every unary class, higher
//! dimensions keep only nondegenerate ones.
//!
//! Boundary matrices act on row vectors: row `i` of `d_n` is the boundary of
//! the `i`-th generator of `C_n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::{rref, smith_normal_form};
use crate::matrix::Matrix;
use crate::pair::{canonical_form, MatrixPair};
use crate::ring::{RingKind, RingSpec, Scalar};

pub const MAX_FIELD: u64 = 31;
pub const MAX_ARITY: usize = 3;

/// A class of `L_n(F_q)`, stored as its RREF coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    rref: Matrix,
}

impl ClassKey {
    /// The class of `p`, which must be over a prime field.
    pub fn of_pair(p: &MatrixPair) -> Result<Self> {
        prime_of(p.ring())?;
        Ok(ClassKey { rref: canonical_form(p)? })
    }

    /// The class of the system `[a]`.
    pub fn of_system(a: &Matrix) -> Result<Self> {
        prime_of(a.ring())?;
        Ok(ClassKey { rref: rref(a)?.reduced })
    }

    pub fn field(&self) -> RingSpec {
        self.rref.ring()
    }

    pub fn arity(&self) -> usize {
        self.rref.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.rref
    }

    pub fn pair(&self) -> MatrixPair {
        MatrixPair::system(self.rref.clone())
    }

    pub fn is_top(&self) -> bool {
        self.rref.rows() == 0
    }

    pub fn is_bottom(&self) -> bool {
        self.rref.rows() == self.rref.cols()
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[| {}]", self.rref)
    }
}

fn prime_of(ring: RingSpec) -> Result<u64> {
    match ring.kind() {
        RingKind::PrimeField(q) => Ok(q),
        _ => Err(Error::UnsupportedRing { ring, op: "homology" }),
    }
}

fn check_scale(q: u64, arity: usize) -> Result<()> {
    if q > MAX_FIELD {
        return Err(Error::ScaleCap { what: "field size", size: q as u128, cap: MAX_FIELD as u128 });
    }
    if arity > MAX_ARITY {
        return Err(Error::ScaleCap { what: "arity", size: arity as u128, cap: MAX_ARITY as u128 });
    }
    Ok(())
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Every class of `L_arity(F_q)`, ordered by rank and then by matrix.
pub fn enumerate_classes(q: u64, arity: usize) -> Result<Vec<ClassKey>> {
    check_scale(q, arity)?;
    let field = RingSpec::prime_field(q)?;
    let mut out = Vec::new();
    for r in 0..=arity {
        for pivots in subsets(arity, r) {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let pivots = &pivots;
                    (pivots[i] + 1..arity).filter(move |j| !pivots.contains(j)).map(move |j| (i, j))
                })
                .collect();
            let count = (q as usize).pow(free.len() as u32);
            let mut batch = Vec::with_capacity(count);
            for mut code in 0..count {
                let mut m = Matrix::zeros(field, r, arity);
                for (i, &p) in pivots.iter().enumerate() {
                    m.set(i, p, field.one());
                }
                for &(i, j) in &free {
                    m.set(i, j, Scalar::Residue((code % q as usize) as u64));
                    code /= q as usize;
                }
                batch.push(ClassKey { rref: m });
            }
            batch.sort();
            out.extend(batch);
        }
    }
    Ok(out)
}

/// Bottom face `N_i[B | A] = [B | A without column i]`.
pub fn face_n(c: &ClassKey, i: usize) -> Result<ClassKey> {
    if i >= c.arity() {
        return Err(Error::IndexOutOfRange { index: i, len: c.arity() });
    }
    ClassKey::of_system(&c.rref.remove_column(i)?)
}

/// Top face `E_i[B | A] = [B, A_i | A without column i]`.
pub fn face_e(c: &ClassKey, i: usize) -> Result<ClassKey> {
    if i >= c.arity() {
        return Err(Error::IndexOutOfRange { index: i, len: c.arity() });
    }
    let p = MatrixPair::new(c.rref.column(i), c.rref.remove_column(i)?)?;
    ClassKey::of_pair(&p)
}

/// `E_i = N_i` for some `i`; defined from arity 2 on.
pub fn is_degenerate(c: &ClassKey) -> Result<bool> {
    if c.arity() < 2 {
        return Err(Error::InvalidEntry("degeneracy is defined for arity at least 2".into()));
    }
    for i in 0..c.arity() {
        if face_e(c, i)? == face_n(c, i)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Ordered generators of `C_n(F_q)`.
#[derive(Clone, Debug)]
pub struct ChainGroupBasis {
    pub dim: usize,
    pub generators: Vec<ClassKey>,
    index: HashMap<ClassKey, usize>,
}

impl ChainGroupBasis {
    pub fn position(&self, c: &ClassKey) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

pub fn chain_basis(q: u64, dim: usize) -> Result<ChainGroupBasis> {
    let mut generators = enumerate_classes(q, dim + 1)?;
    if dim >= 1 {
        let mut kept = Vec::new();
        for c in generators {
            if !is_degenerate(&c)? {
                kept.push(c);
            }
        }
        generators = kept;
    }
    let index = generators.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    Ok(ChainGroupBasis { dim, generators, index })
}

/// `sum_i (-1)^i (E_i c - N_i c)` in the basis of `C_{n-1}`; faces that
/// are degenerate (hence zero in `C_{n-1}`) are dropped.
pub fn boundary_of(c: &ClassKey, target: &ChainGroupBasis) -> Result<Vec<i64>> {
    let mut row = vec![0i64; target.len()];
    for i in 0..c.arity() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (face, s) in [(face_e(c, i)?, sign), (face_n(c, i)?, -sign)] {
            match target.position(&face) {
                Some(j) => row[j] += s,
                None if target.dim >= 1 => {}
                None => unreachable!("every unary class is a generator of C_0"),
            }
        }
    }
    Ok(row)
}

fn integer_matrix(rows: &[Vec<i64>], cols: usize) -> Matrix {
    let z = RingSpec::integers();
    Matrix::from_fn(z, rows.len(), cols, |i, j| z.from_i64(rows[i][j]))
}

/// Matrix of `d_n : C_n -> C_{n-1}` for `n` in `{1, 2}`, or the augmentation
/// `C_0 -> Z` (a column of ones) for `n = 0`.
pub fn boundary_matrix(q: u64, n: usize) -> Result<Matrix> {
    let source = chain_basis(q, n)?;
    if n == 0 {
        return Ok(integer_matrix(&vec![vec![1]; source.len()], 1));
    }
    let target = chain_basis(q, n - 1)?;
    let rows = source.generators.iter().map(|c| boundary_of(c, &target)).collect::<Result<Vec<_>>>()?;
    Ok(integer_matrix(&rows, target.len()))
}

/// A finitely generated abelian group `Z^r (+) Z/d_1 (+) ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyResult {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// The group is cyclic of the given finite order.
    pub fn is_cyclic_of_order(&self, n: u64) -> bool {
        self.free_rank == 0
            && match self.torsion.as_slice() {
                [] => n == 1,
                [d] => d.to_u64() == Some(n),
                _ => false,
            }
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// `Z^generators / rowspan(relations)` via Smith normal form.
pub fn abelian_group(relations: &Matrix) -> Result<HomologyResult> {
    let snf = smith_normal_form(relations)?;
    let ring = relations.ring();
    let torsion = snf
        .factors()
        .iter()
        .map(|d| ring.lift(d).expect("integer"))
        .filter(|d| *d > BigInt::one())
        .collect();
    Ok(HomologyResult { free_rank: relations.cols() - snf.rank, torsion })
}

/// `ker(d_n) / im(d_{n+1})` for row-convention boundary matrices.
pub fn homology_of(d_n: &Matrix, d_next: &Matrix) -> Result<HomologyResult> {
    // x d_n = 0 iff x = y P with y supported on indices >= rank.
    let snf = smith_normal_form(d_n)?;
    let r = snf.rank;
    let coords = d_next.mul(&snf.p_inv)?;
    abelian_group(&coords.column_range(r, coords.cols()))
}

/// `H_n(F_q)` for `n` in `{0, 1}`.
pub fn homology(q: u64, n: usize) -> Result<HomologyResult> {
    if n > 1 {
        return Err(Error::InvalidEntry(format!("homology is implemented in dimensions 0 and 1, not {n}")));
    }
    homology_of(&boundary_matrix(q, n)?, &boundary_matrix(q, n + 1)?)
}

/// Relation matrix of `H_1(F_q)` from the two boundary families
/// `[1,r] - [1,s] - [1,s^-1 r]` and `[1,s] - [1,r] + [1,-r s^-1]`, on the
/// generators `[1,r]`, `r = 1 .. q-1`.
pub fn presentation_h1_relations(q: u64) -> Result<Matrix> {
    check_scale(q, 2)?;
    let f = RingSpec::prime_field(q)?;
    let idx = |x: &Scalar| (x.residue().expect("residue") - 1) as usize;
    let g = (q - 1) as usize;
    let mut rows = Vec::new();
    for r in 1..q {
        for s in 1..q {
            let (r, s) = (Scalar::Residue(r), Scalar::Residue(s));
            let s_inv = f.inv(&s).expect("nonzero");
            let mut a = vec![0i64; g];
            a[idx(&r)] += 1;
            a[idx(&s)] -= 1;
            a[idx(&f.mul(&s_inv, &r))] -= 1;
            rows.push(a);
            let mut b = vec![0i64; g];
            b[idx(&s)] += 1;
            b[idx(&r)] -= 1;
            b[idx(&f.neg(&f.mul(&r, &s_inv)))] += 1;
            rows.push(b);
        }
    }
    Ok(integer_matrix(&rows, g))
}

pub fn presentation_h1(q: u64) -> Result<HomologyResult> {
    abelian_group(&presentation_h1_relations(q)?)
}
