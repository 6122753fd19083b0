//! Exact matrix-pair calculus.
//!
//! A matrix pair `(B | A)` over a commutative ring reads as "B divides A on
//! the left". This crate implements the certified pre-order on pairs, the
//! lattice of pair classes, the Grothendieck-group triangle relating pairs
//! to finitely presented modules, homology of the complex of pairs over
//! finite prime fields, and evaluation of pairs on finite modules.

pub mod error;
pub mod formal;
pub mod grothendieck;
pub mod hom;
pub mod homology;
pub mod linalg;
pub mod matrix;
pub mod pair;
pub mod random;
pub mod ring;
pub mod semantics;
pub mod suite;
pub mod text;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use pair::{Certificate, CertifiedRelation, MatrixPair};
pub use ring::{RingKind, RingSpec, Scalar};
