use crate::error::{Error, Result};
use crate::linalg::{generalized_inverse, rref, smith_normal_form};
use crate::matrix::Matrix;
use crate::ring::Scalar;

use super::certificate::{compose_all, rod_left_multiply, rod_right_multiply, rod_translate, Certificate, CertifiedRelation};
use super::MatrixPair;

/// A pair over a field rewritten as its canonical system `[A']`.
#[derive(Clone, Debug)]
pub struct SystemReduction {
    /// RREF coefficient matrix with zero rows deleted.
    pub system: Matrix,
    /// `p <= [A']`.
    pub forward: CertifiedRelation,
    /// `[A'] <= p`.
    pub backward: CertifiedRelation,
}

fn field_projection(p: &MatrixPair) -> Result<(Matrix, Matrix, Matrix)> {
    let ring = p.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    let c = generalized_inverse(p.b())?;
    let e = p.b().mul(&c)?;
    let reduced = Matrix::identity(ring, p.rows()).sub(&e)?.mul(p.a())?;
    Ok((c, e, reduced))
}

/// Unique RREF matrix representing the class of `p` over a field; `0 x n`
/// is `1_n` and `I_n` is `0_n`.
pub fn canonical_form(p: &MatrixPair) -> Result<Matrix> {
    let (_, _, a1) = field_projection(p)?;
    Ok(rref(&a1)?.reduced)
}

pub fn to_system(p: &MatrixPair) -> Result<SystemReduction> {
    let ring = p.ring();
    let (c, e, a1) = field_projection(p)?;
    let m = p.rows();
    let n = p.arity();
    let r = rref(&a1)?;
    let a2 = r.reduced.clone();
    let id_m = Matrix::identity(ring, m);

    // (B | A) <= (E | A) <= (0 | A') <= (| A') <= (| A'')
    let ea = MatrixPair::new(e.clone(), p.a().clone())?;
    let f1 = rod_right_multiply(&ea, p.b())?;
    let f2 = rod_left_multiply(&ea, &id_m.sub(&e)?)?;
    let sys1 = MatrixPair::system(a1.clone());
    let f3 = CertifiedRelation::new(
        f2.target().clone(),
        sys1.clone(),
        Certificate::new(id_m.clone(), Matrix::zeros(ring, 0, m), Matrix::zeros(ring, 0, n)),
    )?;
    let f4 = rod_left_multiply(&sys1, &r.transform)?;
    let forward = compose_all(&[f1, f2, f3, f4])?;

    // (| A'') <= (| A') <= (E | A') <= (E | A) <= (B | A)
    let lift = a1.select_columns(&r.pivots);
    let sys2 = MatrixPair::system(a2.clone());
    let b1 = CertifiedRelation::new(
        sys2,
        sys1,
        Certificate::new(lift, Matrix::zeros(ring, 0, 0), Matrix::zeros(ring, 0, n)),
    )?;
    let ea1 = MatrixPair::new(e.clone(), a1)?;
    let b2 = rod_right_multiply(&ea1, &Matrix::zeros(ring, m, 0))?;
    let b3 = rod_translate(&ea, &p.a().neg())?;
    let b4 = rod_right_multiply(p, &c)?;
    let backward = compose_all(&[b1, b2, b3, b4])?;

    Ok(SystemReduction { system: a2, forward, backward })
}

/// A pair over a Euclidean ring as a meet of pairs with `1 x 1` left matrices.
#[derive(Clone, Debug)]
pub struct PidReduction {
    /// `(d_i, row_i(P A))` for every row of `p`, with `d_i = 0` past the
    /// diagonal.
    pub factors: Vec<(Scalar, Matrix)>,
    /// `[diag(d) | P A]`, the meet of the factor pairs.
    pub meet_pair: MatrixPair,
    pub forward: CertifiedRelation,
    pub backward: CertifiedRelation,
}

pub fn pid_reduce(p: &MatrixPair) -> Result<Vec<(Scalar, Matrix)>> {
    Ok(pid_reduce_certified(p)?.factors)
}

pub fn pid_reduce_certified(p: &MatrixPair) -> Result<PidReduction> {
    let ring = p.ring();
    let snf = smith_normal_form(p.b())?;
    let (m, k) = (p.rows(), p.width());
    let pa = snf.p.mul(p.a())?;
    let diag: Vec<Scalar> =
        (0..m).map(|i| if i < k { snf.d.get(i, i).clone() } else { ring.zero() }).collect();
    let delta = Matrix::diagonal(ring, &diag);
    let unit = |r: usize, c: usize| Matrix::from_fn(ring, r, c, |i, j| if i == j { ring.one() } else { ring.zero() });

    let pb_pa = MatrixPair::new(snf.p.mul(p.b())?, pa.clone())?;
    let d_pa = MatrixPair::new(snf.d.clone(), pa.clone())?;
    let meet_pair = MatrixPair::new(delta.clone(), pa.clone())?;

    // P D Q^-1 = P B ... (B | A) <= (PB | PA) <= (D | PA) <= (Delta | PA)
    let f1 = rod_left_multiply(p, &snf.p)?;
    let f2 = rod_right_multiply(&d_pa, &snf.q_inv)?;
    let f3 = rod_right_multiply(&meet_pair, &unit(m, k))?;
    let forward = compose_all(&[f1, f2, f3])?;

    let b1 = rod_right_multiply(&d_pa, &unit(k, m))?;
    let b2 = rod_right_multiply(&pb_pa, &snf.q)?;
    let b3 = rod_left_multiply(&pb_pa, &snf.p_inv)?;
    let backward = compose_all(&[b1, b2, b3])?;

    for rel in [&forward, &backward] {
        if !rel.verify()? {
            return Err(Error::UnverifiedCertificate);
        }
    }
    let factors = (0..m).map(|i| (diag[i].clone(), pa.row(i))).collect();
    Ok(PidReduction { factors, meet_pair, forward, backward })
}
