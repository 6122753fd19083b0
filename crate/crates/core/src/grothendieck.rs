//! Finitely presented modules, `K0(R-mod, (+))` and the Goursat groups.
//!
//! An `m x n` matrix `A` presents `M_A = coker(R^m -> R^n, x |-> xA)`, so
//! columns index generators and rows index relations. Equality in `K0` is
//! decided over fields and `Z` by splitting modules into indecomposables;
//! equality in `G0` is decided by transporting along `gamma`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::linalg::{rank, smith_normal_form};
use crate::matrix::Matrix;
use crate::pair::MatrixPair;
use crate::ring::{RingKind, RingSpec, Scalar};

/// Isomorphism invariant of `M_A`: `R^free_rank (+) R/d_1 (+) ... (+) R/d_s`
/// with `d_1 | ... | d_s`, each `d_i >= 2`. Over a field there are no
/// factors and `free_rank` is the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleInvariant {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl fmt::Display for ModuleInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("R".to_string()),
            r => parts.push(format!("R^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("R/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

fn supported(ring: RingSpec, op: &'static str) -> Result<()> {
    if ring.is_field() || ring.kind() == RingKind::Integers {
        Ok(())
    } else {
        Err(Error::UnsupportedRing { ring, op })
    }
}

pub fn module_invariant(a: &Matrix) -> Result<ModuleInvariant> {
    let ring = a.ring();
    supported(ring, "module invariant")?;
    if ring.is_field() {
        return Ok(ModuleInvariant { free_rank: a.cols() - rank(a)?, invariant_factors: vec![] });
    }
    let snf = smith_normal_form(a)?;
    let invariant_factors = snf
        .factors()
        .iter()
        .map(|d| ring.lift(d).expect("integer"))
        .filter(|d| *d > BigInt::one())
        .collect();
    Ok(ModuleInvariant { free_rank: a.cols() - snf.rank, invariant_factors })
}

/// True iff `A` and `A'` present isomorphic modules.
pub fn lickorish_equivalent(a: &Matrix, a2: &Matrix) -> Result<bool> {
    if a.ring() != a2.ring() {
        return Err(Error::RingMismatch(a.ring(), a2.ring()));
    }
    Ok(module_invariant(a)? == module_invariant(a2)?)
}

/// One of the four moves that generate presentation equivalence.
#[derive(Clone, Debug)]
pub enum LickorishMove {
    AppendZeroRow,
    /// `C -> [C 0; 0 1]`.
    ExtendByOne,
    PermuteRows(Vec<usize>),
    PermuteColumns(Vec<usize>),
    /// `row[target] += c * row[source]`.
    AddRowMultiple { target: usize, source: usize, factor: Scalar },
    /// `col[target] += col[source] * c`.
    AddColumnMultiple { target: usize, source: usize, factor: Scalar },
}

impl LickorishMove {
    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        let ring = a.ring();
        let check = |i: usize, len: usize| if i < len { Ok(()) } else { Err(Error::IndexOutOfRange { index: i, len }) };
        match self {
            LickorishMove::AppendZeroRow => Matrix::vstack(&[a, &Matrix::zeros(ring, 1, a.cols())]),
            LickorishMove::ExtendByOne => Matrix::block_diag(a, &Matrix::identity(ring, 1)),
            LickorishMove::PermuteRows(perm) => {
                is_permutation(perm, a.rows())?;
                Ok(a.select_rows(perm))
            }
            LickorishMove::PermuteColumns(perm) => {
                is_permutation(perm, a.cols())?;
                Ok(a.select_columns(perm))
            }
            LickorishMove::AddRowMultiple { target, source, factor } => {
                check(*target, a.rows())?;
                check(*source, a.rows())?;
                if target == source {
                    return Err(Error::InvalidEntry("row move needs two distinct rows".into()));
                }
                let mut out = a.clone();
                out.add_row_multiple(*target, *source, factor);
                Ok(out)
            }
            LickorishMove::AddColumnMultiple { target, source, factor } => {
                check(*target, a.cols())?;
                check(*source, a.cols())?;
                if target == source {
                    return Err(Error::InvalidEntry("column move needs two distinct columns".into()));
                }
                let mut out = a.clone();
                out.add_col_multiple(*target, *source, factor);
                Ok(out)
            }
        }
    }
}

fn is_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::InvalidEntry(format!("permutation of length {} for {len} items", perm.len())));
    }
    for &i in perm {
        if i >= len || seen[i] {
            return Err(Error::InvalidEntry("not a permutation".into()));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Indecomposable finitely generated modules over a field or `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indecomposable {
    /// The ring itself.
    Free,
    /// `Z/p^e`.
    PrimePower { prime: BigInt, exponent: u32 },
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::Free => write!(f, "R"),
            Indecomposable::PrimePower { prime, exponent: 1 } => write!(f, "R/{prime}"),
            Indecomposable::PrimePower { prime, exponent } => write!(f, "R/{prime}^{exponent}"),
        }
    }
}

fn factorize(d: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut n = d.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// `{M}` in the free abelian group on indecomposables; this group is
/// `K0(R-mod, (+))` over the supported rings.
pub fn invariant_class(inv: &ModuleInvariant) -> FormalSum<Indecomposable> {
    let mut s = FormalSum::term(Indecomposable::Free, inv.free_rank as i64);
    for d in &inv.invariant_factors {
        for (prime, exponent) in factorize(d) {
            s.add_term(Indecomposable::PrimePower { prime, exponent }, 1);
        }
    }
    s
}

/// Image of a sum of matrix classes in `K0`.
pub fn collapse(x: &FormalSum<Matrix>) -> Result<FormalSum<Indecomposable>> {
    x.flat_map(|a| Ok(invariant_class(&module_invariant(a)?)))
}

/// Equality in `K0(R-mod, (+))`.
pub fn k0_equal(x: &FormalSum<Matrix>, y: &FormalSum<Matrix>) -> Result<bool> {
    Ok(collapse(x)? == collapse(y)?)
}

/// `gamma[B | A] = {(B A)} - {B}`.
pub fn gamma(p: &MatrixPair) -> FormalSum<Matrix> {
    let mut s = FormalSum::generator(p.joined());
    s.add_term(p.b().clone(), -1);
    s
}

/// Linear extension of [`gamma`].
pub fn gamma_sum(x: &FormalSum<MatrixPair>) -> FormalSum<Matrix> {
    x.flat_map(|p| Ok::<_, Error>(gamma(p))).expect("gamma is total")
}

/// `kappa{A} = sum_i [A_1 .. A_{i-1} | A_i]`.
pub fn kappa(a: &Matrix) -> FormalSum<MatrixPair> {
    let mut s = FormalSum::zero();
    for i in 0..a.cols() {
        let p = MatrixPair::new(a.column_range(0, i), a.column(i)).expect("same rows");
        s.add_term(p, 1);
    }
    s
}

/// Linear extension of [`kappa`].
pub fn kappa_sum(x: &FormalSum<Matrix>) -> FormalSum<MatrixPair> {
    x.flat_map(|a| Ok::<_, Error>(kappa(a))).expect("kappa is total")
}

/// The inclusion of unary-pair generators of `G0(R)` into `G(R)`.
pub fn iota(x: &FormalSum<MatrixPair>) -> FormalSum<MatrixPair> {
    x.clone()
}

/// `gamma(iota(kappa{A})) = {A}` in `K0`.
pub fn triangle_check(a: &Matrix) -> Result<bool> {
    supported(a.ring(), "triangle check")?;
    let around = gamma_sum(&iota(&kappa(a)));
    k0_equal(&around, &FormalSum::generator(a.clone()))
}

/// `kappa(gamma[B | A]) = [B | A]` in `G0`, for a unary pair.
pub fn triangle_check_pair(p: &MatrixPair) -> Result<bool> {
    supported(p.ring(), "triangle check")?;
    let around = kappa_sum(&gamma(p));
    g0_equal(&around, &FormalSum::generator(p.clone()))
}

/// Equality in `G0(R)` (and `G(R)`) through the isomorphism `gamma`.
pub fn g0_equal(x: &FormalSum<MatrixPair>, y: &FormalSum<MatrixPair>) -> Result<bool> {
    k0_equal(&gamma_sum(x), &gamma_sum(y))
}

/// `{A} - {[A 0; B C]} + {C}`.
pub fn positive_cone_element(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<FormalSum<Matrix>> {
    let ring = a.ring();
    let block = Matrix::from_blocks(&[vec![a, &Matrix::zeros(ring, a.rows(), c.cols())], vec![b, c]])?;
    let mut s = FormalSum::generator(a.clone());
    s.add_term(block, -1);
    s.add_term(c.clone(), 1);
    Ok(s)
}

/// The rank character: dimension over a field, free rank over `Z`.
pub fn dim_character(x: &FormalSum<Matrix>) -> Result<i64> {
    let mut total = 0i64;
    for (a, c) in x.iter() {
        let r = module_invariant(a)?.free_rank.to_i64().expect("small rank");
        total += c * r;
    }
    Ok(total)
}
