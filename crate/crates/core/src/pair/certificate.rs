use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::{same_arity, MatrixPair};

/// Witness `(U, V, G)` for `(B | A) <= (B' | A')`:
/// `U B = B' V` and `U A = A' + B' G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    u: Matrix,
    v: Matrix,
    g: Matrix,
}

impl Certificate {
    pub fn new(u: Matrix, v: Matrix, g: Matrix) -> Self {
        Certificate { u, v, g }
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn identity(p: &MatrixPair) -> Self {
        let ring = p.ring();
        Certificate {
            u: Matrix::identity(ring, p.rows()),
            v: Matrix::identity(ring, p.width()),
            g: Matrix::zeros(ring, p.width(), p.arity()),
        }
    }
}

/// Checks both certificate equations. Shape errors are reported as `Err`,
/// a well-shaped certificate that fails the equations as `Ok(false)`.
pub fn verify(c: &Certificate, src: &MatrixPair, dst: &MatrixPair) -> Result<bool> {
    same_arity(src, dst)?;
    for m in [&c.u, &c.v, &c.g] {
        if m.ring() != src.ring() {
            return Err(Error::RingMismatch(m.ring(), src.ring()));
        }
    }
    let (m, k, n) = (src.rows(), src.width(), src.arity());
    let (m2, k2) = (dst.rows(), dst.width());
    let shape_err = |name: &'static str, got: (usize, usize), want: (usize, usize)| Error::DimensionMismatch {
        op: name,
        left: got,
        right: want,
    };
    if c.u.shape() != (m2, m) {
        return Err(shape_err("certificate U", c.u.shape(), (m2, m)));
    }
    if c.v.shape() != (k2, k) {
        return Err(shape_err("certificate V", c.v.shape(), (k2, k)));
    }
    if c.g.shape() != (k2, n) {
        return Err(shape_err("certificate G", c.g.shape(), (k2, n)));
    }
    let ub = c.u.mul(src.b())?;
    let bv = dst.b().mul(&c.v)?;
    if ub != bv {
        return Ok(false);
    }
    let ua = c.u.mul(src.a())?;
    let rhs = dst.a().add(&dst.b().mul(&c.g)?)?;
    Ok(ua == rhs)
}

/// `source <= target`, together with a certificate that has been verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRelation {
    source: MatrixPair,
    target: MatrixPair,
    cert: Certificate,
}

impl CertifiedRelation {
    /// Verifies `cert` before wrapping it.
    pub fn new(source: MatrixPair, target: MatrixPair, cert: Certificate) -> Result<Self> {
        if !verify(&cert, &source, &target)? {
            return Err(Error::UnverifiedCertificate);
        }
        Ok(CertifiedRelation { source, target, cert })
    }

    pub fn identity(p: &MatrixPair) -> Self {
        CertifiedRelation { source: p.clone(), target: p.clone(), cert: Certificate::identity(p) }
    }

    pub fn source(&self) -> &MatrixPair {
        &self.source
    }

    pub fn target(&self) -> &MatrixPair {
        &self.target
    }

    pub fn cert(&self) -> &Certificate {
        &self.cert
    }

    pub fn into_parts(self) -> (MatrixPair, MatrixPair, Certificate) {
        (self.source, self.target, self.cert)
    }

    /// Re-checks the stored certificate.
    pub fn verify(&self) -> Result<bool> {
        verify(&self.cert, &self.source, &self.target)
    }

    /// Builds a relation without verification. Used only by transports that
    /// provably preserve the certificate equations; callers that accept
    /// external data should go through [`CertifiedRelation::new`].
    pub(crate) fn trusted(source: MatrixPair, target: MatrixPair, cert: Certificate) -> Self {
        debug_assert!(verify(&cert, &source, &target).unwrap_or(false));
        CertifiedRelation { source, target, cert }
    }
}

/// `(B | A) <= (UB | UA)` with `V = I`, `G = 0`.
pub fn rod_left_multiply(p: &MatrixPair, u: &Matrix) -> Result<CertifiedRelation> {
    let target = MatrixPair::new(u.mul(p.b())?, u.mul(p.a())?)?;
    let ring = p.ring();
    let cert = Certificate::new(
        u.clone(),
        Matrix::identity(ring, p.width()),
        Matrix::zeros(ring, p.width(), p.arity()),
    );
    Ok(CertifiedRelation::trusted(p.clone(), target, cert))
}

/// `(BV | A) <= (B | A)` with `U = I`, `G = 0`.
pub fn rod_right_multiply(p: &MatrixPair, v: &Matrix) -> Result<CertifiedRelation> {
    let source = MatrixPair::new(p.b().mul(v)?, p.a().clone())?;
    let ring = p.ring();
    let cert = Certificate::new(
        Matrix::identity(ring, p.rows()),
        v.clone(),
        Matrix::zeros(ring, p.width(), p.arity()),
    );
    Ok(CertifiedRelation::trusted(source, p.clone(), cert))
}

/// `(B | A + BG) <= (B | A)` with `U = I`, `V = I`.
pub fn rod_translate(p: &MatrixPair, g: &Matrix) -> Result<CertifiedRelation> {
    let source = MatrixPair::new(p.b().clone(), p.a().add(&p.b().mul(g)?)?)?;
    let ring = p.ring();
    let cert = Certificate::new(Matrix::identity(ring, p.rows()), Matrix::identity(ring, p.width()), g.clone());
    Ok(CertifiedRelation::trusted(source, p.clone(), cert))
}

/// Transitivity: `U = U2 U1`, `V = V2 V1`, `G = G2 + V2 G1`.
pub fn compose(first: &CertifiedRelation, second: &CertifiedRelation) -> Result<CertifiedRelation> {
    if first.target != second.source {
        return Err(Error::ChainMismatch);
    }
    let (c1, c2) = (&first.cert, &second.cert);
    let cert = Certificate::new(c2.u.mul(&c1.u)?, c2.v.mul(&c1.v)?, c2.g.add(&c2.v.mul(&c1.g)?)?);
    Ok(CertifiedRelation::trusted(first.source.clone(), second.target.clone(), cert))
}

/// Folds a nonempty chain with [`compose`].
pub fn compose_all(chain: &[CertifiedRelation]) -> Result<CertifiedRelation> {
    let (head, rest) = chain.split_first().ok_or(Error::ChainMismatch)?;
    rest.iter().try_fold(head.clone(), |acc, r| compose(&acc, r))
}

/// Splits a certified relation into a left multiplication by `U`, a right
/// multiplication by `V` and a translation by `G`, in that order.
pub fn decompose(rel: &CertifiedRelation) -> Result<[CertifiedRelation; 3]> {
    let c = &rel.cert;
    let src = &rel.source;
    let dst = &rel.target;
    // (B | A) <= (UB | UA) = (B'V | A' + B'G) <= (B' | A' + B'G) <= (B' | A')
    let step1 = rod_left_multiply(src, &c.u)?;
    let mid = MatrixPair::new(dst.b().clone(), step1.target.a().clone())?;
    let step2 = rod_right_multiply(&mid, &c.v)?;
    let step3 = rod_translate(dst, &c.g)?;
    if step1.target != step2.source || step2.target != step3.source {
        return Err(Error::UnverifiedCertificate);
    }
    Ok([step1, step2, step3])
}

/// From a relation `(A, A') <= (B | C', C'')` between a system of arity
/// `n + k` and a pair whose first `n` right columns are `C'`, build
/// `(A | A') <= (B, C' | C'')` in arity `k`.
pub fn split_system(rel: &CertifiedRelation, n: usize) -> Result<CertifiedRelation> {
    let src = &rel.source;
    let dst = &rel.target;
    if !src.is_system() {
        return Err(Error::InvalidEntry("source of the relation must be a system".into()));
    }
    let total = src.arity();
    if n > total {
        return Err(Error::IndexOutOfRange { index: n, len: total + 1 });
    }
    let ring = src.ring();
    let a = src.a().column_range(0, n);
    let a2 = src.a().column_range(n, total);
    let c1 = dst.a().column_range(0, n);
    let c2 = dst.a().column_range(n, total);
    let g = rel.cert.g();
    let g1 = g.column_range(0, n);
    let g2 = g.column_range(n, total);
    let k = total - n;
    let source = MatrixPair::new(a, a2)?;
    let target = MatrixPair::new(Matrix::hstack(&[dst.b(), &c1])?, c2)?;
    let cert = Certificate::new(
        rel.cert.u().clone(),
        Matrix::vstack(&[&g1, &Matrix::identity(ring, n)])?,
        Matrix::vstack(&[&g2, &Matrix::zeros(ring, n, k)])?,
    );
    CertifiedRelation::new(source, target, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn z() -> RingSpec {
        RingSpec::integers()
    }

    fn pair(b: &[&[i64]], bc: usize, a: &[&[i64]], ac: usize) -> MatrixPair {
        MatrixPair::new(Matrix::from_i64(z(), bc, b), Matrix::from_i64(z(), ac, a)).unwrap()
    }

    #[test]
    fn identity_verifies() {
        let p = pair(&[&[1, 2], &[3, 4]], 2, &[&[5], &[6]], 1);
        assert!(verify(&Certificate::identity(&p), &p, &p).unwrap());
    }

    #[test]
    fn invertible_left_multiply() {
        let p = pair(&[&[1, 2], &[3, 4]], 2, &[&[5], &[6]], 1);
        let u = Matrix::from_i64(z(), 2, &[&[2, 1], &[1, 1]]);
        let r = rod_left_multiply(&p, &u).unwrap();
        assert!(r.verify().unwrap());
        let u_inv = Matrix::from_i64(z(), 2, &[&[1, -1], &[-1, 2]]);
        let back = rod_left_multiply(r.target(), &u_inv).unwrap();
        let round = compose(&r, &back).unwrap();
        assert_eq!(round.source(), round.target());
        assert!(round.verify().unwrap());
    }

    #[test]
    fn translate_example() {
        let p = pair(&[&[1]], 1, &[&[5]], 1);
        let r = rod_translate(&p, &Matrix::from_i64(z(), 1, &[&[-5]])).unwrap();
        assert_eq!(r.source(), &pair(&[&[1]], 1, &[&[0]], 1));
        assert!(r.verify().unwrap());
    }

    #[test]
    fn right_multiply_by_empty() {
        let p = pair(&[&[1, 2]], 2, &[&[3]], 1);
        let r = rod_right_multiply(&p, &Matrix::zeros(z(), 2, 0)).unwrap();
        assert_eq!(r.source().width(), 0);
        assert!(r.verify().unwrap());
    }

    #[test]
    fn shape_errors_are_distinct() {
        let p = pair(&[&[1]], 1, &[&[5]], 1);
        let bad = Certificate::new(Matrix::identity(z(), 2), Matrix::identity(z(), 1), Matrix::zeros(z(), 1, 1));
        assert!(verify(&bad, &p, &p).is_err());
        let wrong = Certificate::new(Matrix::identity(z(), 1), Matrix::identity(z(), 1), Matrix::identity(z(), 1));
        assert!(!verify(&wrong, &p, &p).unwrap());
        assert_eq!(CertifiedRelation::new(p.clone(), p, wrong).unwrap_err(), Error::UnverifiedCertificate);
    }

    #[test]
    fn chain_mismatch() {
        let p = pair(&[&[1]], 1, &[&[5]], 1);
        let q = pair(&[&[2]], 1, &[&[5]], 1);
        let e = compose(&CertifiedRelation::identity(&p), &CertifiedRelation::identity(&q));
        assert_eq!(e.unwrap_err(), Error::ChainMismatch);
    }

    #[test]
    fn decompose_roundtrip() {
        let src = pair(&[&[2, 0]], 2, &[&[4, 1]], 2);
        let dst = pair(&[&[1], &[0]], 1, &[&[0, 1], &[0, 0]], 2);
        let cert = Certificate::new(
            Matrix::from_i64(z(), 1, &[&[1], &[0]]),
            Matrix::from_i64(z(), 2, &[&[2, 0]]),
            Matrix::from_i64(z(), 2, &[&[4, 0]]),
        );
        let rel = CertifiedRelation::new(src, dst, cert).unwrap();
        let [a, b, c] = decompose(&rel).unwrap();
        let all = compose_all(&[a, b, c]).unwrap();
        assert_eq!(all.source(), rel.source());
        assert_eq!(all.target(), rel.target());
        assert!(all.verify().unwrap());
    }

    #[test]
    fn split_system_certificate() {
        // (1, 1) <= (0 | 1, 1) via U = 1, V = 0x0, G empty; split with n = 1
        let src = MatrixPair::system(Matrix::from_i64(z(), 2, &[&[1, 1]]));
        let dst = pair(&[&[2]], 1, &[&[1, 1]], 2);
        let cert = Certificate::new(
            Matrix::identity(z(), 1),
            Matrix::zeros(z(), 1, 0),
            Matrix::zeros(z(), 1, 2),
        );
        let rel = CertifiedRelation::new(src, dst, cert).unwrap();
        let split = split_system(&rel, 1).unwrap();
        assert_eq!(split.target().width(), 2);
        assert_eq!(split.source().arity(), 1);
    }
}
