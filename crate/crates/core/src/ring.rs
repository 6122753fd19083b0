//! Exact commutative rings and their elements.
//!
//! Four families are supported: prime fields `F<p>`, the rationals `Q`, the
//! integers `Z` and residue rings `Z/<n>`. Elements of the finite rings are
//! machine residues in `[0, n)`; integers and rationals are arbitrary
//! precision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    PrimeField(u64),
    Rationals,
    Integers,
    ModRing(u64),
}

/// A validated ring descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec(RingKind);

/// An element of some [`RingSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Residue(u64),
    Integer(BigInt),
    Rational(BigRational),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("F{p}: {p} is not prime")));
        }
        Ok(RingSpec(RingKind::PrimeField(p)))
    }

    pub fn mod_ring(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("Z/{n}: modulus must be at least 2")));
        }
        Ok(RingSpec(RingKind::ModRing(n)))
    }

    pub const fn integers() -> Self {
        RingSpec(RingKind::Integers)
    }

    pub const fn rationals() -> Self {
        RingSpec(RingKind::Rationals)
    }

    pub fn kind(&self) -> RingKind {
        self.0
    }

    pub fn is_field(&self) -> bool {
        matches!(self.0, RingKind::PrimeField(_) | RingKind::Rationals)
    }

    pub fn is_euclidean(&self) -> bool {
        !matches!(self.0, RingKind::ModRing(_))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, RingKind::PrimeField(_) | RingKind::ModRing(_))
    }

    /// The modulus of a finite ring.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            RingKind::PrimeField(p) => Some(p),
            RingKind::ModRing(n) => Some(n),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.0 {
            RingKind::PrimeField(_) | RingKind::ModRing(_) => Scalar::Residue(0),
            RingKind::Integers => Scalar::Integer(BigInt::zero()),
            RingKind::Rationals => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.0 {
            RingKind::PrimeField(n) | RingKind::ModRing(n) => {
                let r = v.mod_floor(&BigInt::from(n));
                Scalar::Residue(r.to_u64().expect("residue fits in u64"))
            }
            RingKind::Integers => Scalar::Integer(v.clone()),
            RingKind::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
        }
    }

    /// Builds `num/den`; only meaningful when `den` is invertible in the ring.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::InvalidEntry("zero denominator".into()));
        }
        match self.0 {
            RingKind::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            RingKind::Integers => {
                let (q, r) = num.div_rem(den);
                if !r.is_zero() {
                    return Err(Error::InvalidEntry(format!("{num}/{den} is not an integer")));
                }
                Ok(Scalar::Integer(q))
            }
            RingKind::PrimeField(_) | RingKind::ModRing(_) => {
                let d = self.from_bigint(den);
                let inv = self
                    .inv(&d)
                    .ok_or_else(|| Error::InvalidEntry(format!("{den} is not invertible in {self}")))?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    /// Checks that `s` is a well-formed element of this ring.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self.0, s) {
            (RingKind::PrimeField(n) | RingKind::ModRing(n), Scalar::Residue(v)) => *v < n,
            (RingKind::Integers, Scalar::Integer(_)) => true,
            (RingKind::Rationals, Scalar::Rational(_)) => true,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                let n = self.modulus().expect("residue in finite ring") as u128;
                Scalar::Residue(((*x as u128 + *y as u128) % n) as u64)
            }
            (Scalar::Integer(x), Scalar::Integer(y)) => Scalar::Integer(x + y),
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => panic!("mixed scalar representations in {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Residue(x) => {
                let n = self.modulus().expect("residue in finite ring");
                Scalar::Residue(if *x == 0 { 0 } else { n - x })
            }
            Scalar::Integer(x) => Scalar::Integer(-x),
            Scalar::Rational(x) => Scalar::Rational(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                let n = self.modulus().expect("residue in finite ring") as u128;
                Scalar::Residue(((*x as u128 * *y as u128) % n) as u64)
            }
            (Scalar::Integer(x), Scalar::Integer(y)) => Scalar::Integer(x * y),
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => panic!("mixed scalar representations in {self}"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(x) => *x == 0,
            Scalar::Integer(x) => x.is_zero(),
            Scalar::Rational(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    /// Multiplicative inverse, when it exists.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Residue(x) => {
                let n = self.modulus()?;
                mod_inverse(*x, n).map(Scalar::Residue)
            }
            Scalar::Integer(x) => {
                if x.is_one() || (-x).is_one() {
                    Some(Scalar::Integer(x.clone()))
                } else {
                    None
                }
            }
            Scalar::Rational(x) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(x.recip()))
                }
            }
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.inv(a).is_some()
    }

    /// Euclidean size: `|a|` over `Z`, `0`/`1` over fields.
    pub fn norm(&self, a: &Scalar) -> Result<BigInt> {
        match self.0 {
            RingKind::Integers => match a {
                Scalar::Integer(x) => Ok(x.abs()),
                _ => unreachable!(),
            },
            RingKind::PrimeField(_) | RingKind::Rationals => Ok(if self.is_zero(a) {
                BigInt::zero()
            } else {
                BigInt::one()
            }),
            RingKind::ModRing(_) => Err(Error::NotEuclidean(*self)),
        }
    }

    /// Euclidean division `a = q*b + r` with `norm(r) < norm(b)`; `b` nonzero.
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar)> {
        match (self.0, a, b) {
            (RingKind::Integers, Scalar::Integer(x), Scalar::Integer(y)) => {
                let (q, r) = x.div_rem(y);
                Ok((Scalar::Integer(q), Scalar::Integer(r)))
            }
            (RingKind::PrimeField(_) | RingKind::Rationals, _, _) => {
                let inv = self.inv(b).expect("nonzero divisor in a field");
                Ok((self.mul(a, &inv), self.zero()))
            }
            _ => Err(Error::NotEuclidean(*self)),
        }
    }

    /// Unit `u` such that `u*a` is the preferred associate of `a`
    /// (nonnegative over `Z`, `1` over fields).
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        match (self.0, a) {
            (RingKind::Integers, Scalar::Integer(x)) if x.is_negative() => self.from_i64(-1),
            (RingKind::PrimeField(_) | RingKind::Rationals, _) if !self.is_zero(a) => {
                self.inv(a).expect("nonzero in field")
            }
            _ => self.one(),
        }
    }

    /// Integer representative: residues lift to `[0, n)`; rationals must be integral.
    pub fn lift(&self, a: &Scalar) -> Option<BigInt> {
        match a {
            Scalar::Residue(x) => Some(BigInt::from(*x)),
            Scalar::Integer(x) => Some(x.clone()),
            Scalar::Rational(x) => x.is_integer().then(|| x.to_integer()),
        }
    }

    /// All ring elements, for finite rings.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.modulus().map(|n| (0..n).map(Scalar::Residue).collect())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            RingKind::PrimeField(p) => write!(f, "F{p}"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::Integers => write!(f, "Z"),
            RingKind::ModRing(n) => write!(f, "Z/{n}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(x) => write!(f, "{x}"),
            Scalar::Integer(x) => write!(f, "{x}"),
            Scalar::Rational(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

impl Scalar {
    /// The residue value of a finite-ring element.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue(x) => Some(*x),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(RingSpec::prime_field(7).is_ok());
        assert!(RingSpec::prime_field(9).is_err());
        assert!(RingSpec::prime_field(1).is_err());
        assert!(RingSpec::mod_ring(1).is_err());
        assert!(RingSpec::mod_ring(6).is_ok());
    }

    #[test]
    fn capability_flags() {
        let f5 = RingSpec::prime_field(5).unwrap();
        let z6 = RingSpec::mod_ring(6).unwrap();
        assert!(f5.is_field() && f5.is_euclidean() && f5.is_finite());
        assert!(RingSpec::rationals().is_field() && !RingSpec::rationals().is_finite());
        assert!(!RingSpec::integers().is_field() && RingSpec::integers().is_euclidean());
        assert!(!z6.is_field() && !z6.is_euclidean() && z6.is_finite());
    }

    #[test]
    fn residues_are_reduced() {
        let z6 = RingSpec::mod_ring(6).unwrap();
        assert_eq!(z6.from_i64(-1), Scalar::Residue(5));
        assert_eq!(z6.from_i64(13), Scalar::Residue(1));
        assert_eq!(z6.mul(&Scalar::Residue(4), &Scalar::Residue(5)), Scalar::Residue(2));
        assert!(z6.inv(&Scalar::Residue(2)).is_none());
        assert_eq!(z6.inv(&Scalar::Residue(5)), Some(Scalar::Residue(5)));
    }

    #[test]
    fn field_inverse() {
        let f5 = RingSpec::prime_field(5).unwrap();
        // 2 * 3 = 6 = 1 mod 5
        assert_eq!(f5.inv(&Scalar::Residue(2)), Some(Scalar::Residue(3)));
        assert!(f5.inv(&Scalar::Residue(0)).is_none());
    }

    #[test]
    fn fractions() {
        let q = RingSpec::rationals();
        let half = q.from_fraction(&BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let f7 = RingSpec::prime_field(7).unwrap();
        assert_eq!(f7.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap(), Scalar::Residue(4));
        assert!(RingSpec::integers().from_fraction(&BigInt::from(1), &BigInt::from(2)).is_err());
    }
}
