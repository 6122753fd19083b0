//! Ring homomorphisms and the maps they induce on pairs and certificates.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pair::{Certificate, CertifiedRelation, MatrixPair};
use crate::ring::{RingKind, RingSpec, Scalar};

/// One of the supported homomorphisms: the identity, `Z -> Z/n`, `Z -> F<p>`,
/// and reduction `Z/n -> Z/m` or `Z/n -> F<p>` for `m | n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingHom {
    from: RingSpec,
    to: RingSpec,
}

impl RingHom {
    pub fn new(from: RingSpec, to: RingSpec) -> Result<Self> {
        let ok = from == to
            || match (from.kind(), to.modulus()) {
                (RingKind::Integers, Some(_)) => true,
                (RingKind::ModRing(n), Some(m)) => n % m == 0,
                (RingKind::PrimeField(p), Some(m)) => p == m,
                _ => false,
            };
        if !ok {
            return Err(Error::UnsupportedHom { from, to });
        }
        Ok(RingHom { from, to })
    }

    pub fn from(&self) -> RingSpec {
        self.from
    }

    pub fn to(&self) -> RingSpec {
        self.to
    }

    pub fn apply(&self, s: &Scalar) -> Scalar {
        if self.from == self.to {
            return s.clone();
        }
        let v: BigInt = self.from.lift(s).expect("integer or residue");
        self.to.from_bigint(&v)
    }

    pub fn map_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if m.ring() != self.from {
            return Err(Error::RingMismatch(m.ring(), self.from));
        }
        Ok(m.map_into(self.to, |s| self.apply(s)))
    }
}

pub fn map_pair(f: &RingHom, p: &MatrixPair) -> Result<MatrixPair> {
    MatrixPair::new(f.map_matrix(p.b())?, f.map_matrix(p.a())?)
}

pub fn map_certificate(f: &RingHom, c: &Certificate) -> Result<Certificate> {
    Ok(Certificate::new(f.map_matrix(c.u())?, f.map_matrix(c.v())?, f.map_matrix(c.g())?))
}

/// Image of a relation; the mapped certificate is verified again.
pub fn map_relation(f: &RingHom, rel: &CertifiedRelation) -> Result<CertifiedRelation> {
    CertifiedRelation::new(map_pair(f, rel.source())?, map_pair(f, rel.target())?, map_certificate(f, rel.cert())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::canonical_form;

    #[test]
    fn supported_homs() {
        let z = RingSpec::integers();
        let z6 = RingSpec::mod_ring(6).unwrap();
        let z3 = RingSpec::mod_ring(3).unwrap();
        let f3 = RingSpec::prime_field(3).unwrap();
        assert!(RingHom::new(z, z6).is_ok());
        assert!(RingHom::new(z6, z3).is_ok());
        assert!(RingHom::new(z6, f3).is_ok());
        assert!(RingHom::new(z6, RingSpec::mod_ring(4).unwrap()).is_err());
        assert!(RingHom::new(z6, z).is_err());
        assert!(RingHom::new(RingSpec::rationals(), f3).is_err());
        assert!(RingHom::new(RingSpec::rationals(), RingSpec::rationals()).is_ok());
    }

    #[test]
    fn integers_to_f2() {
        let z = RingSpec::integers();
        let f2 = RingSpec::prime_field(2).unwrap();
        let f = RingHom::new(z, f2).unwrap();
        let p = MatrixPair::new(Matrix::from_i64(z, 1, &[&[2]]), Matrix::from_i64(z, 1, &[&[1]])).unwrap();
        let q = map_pair(&f, &p).unwrap();
        assert_eq!(q.b(), &Matrix::from_i64(f2, 1, &[&[0]]));
        assert_eq!(canonical_form(&q).unwrap(), Matrix::identity(f2, 1));
    }

    #[test]
    fn negative_integers_reduce() {
        let f = RingHom::new(RingSpec::integers(), RingSpec::mod_ring(6).unwrap()).unwrap();
        assert_eq!(f.apply(&RingSpec::integers().from_i64(-1)), Scalar::Residue(5));
    }
}
