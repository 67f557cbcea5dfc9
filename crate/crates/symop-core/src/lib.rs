//! Exact calculus of symmetric sequences, sequences, operads and their
//! algebras and modules over two concrete closed symmetric monoidal base
//! categories: finite-dimensional rational vector spaces and bounded chain
//! complexes of them.
//!
//! Everything is computed with exact arithmetic. All quotients, kernels and
//! colimits are certified by solving the relevant universal property as a
//! linear system and checking the residual is exactly zero; failures are
//! reported as [`errors::EngineError`], never approximated away.
//!
//! The core is generic over the scalar type through [`scalar::Scalar`]; the
//! concrete instantiation used by the command-line tool and the test suites
//! is [`Q`], arbitrary-precision rationals.

pub mod base;
pub mod circle;
pub mod colimits;
pub mod errors;
pub mod gen;
pub mod group;
pub mod homotopy;
pub mod json;
pub mod linalg;
pub mod operad;
pub mod scalar;
pub mod symseq;

/// The scalar type every concrete computation runs over: exact rationals
/// with arbitrary-precision integer numerator and denominator.
pub type Q = num_rational::BigRational;

/// Matrices over [`Q`].
pub type MatQ = linalg::Matrix<Q>;

/// Base-category objects over [`Q`].
pub type BaseObjectQ = base::BaseObject<Q>;

/// Base-category morphisms over [`Q`].
pub type BaseMorphismQ = base::BaseMorphism<Q>;

/// Symmetric-group equivariant objects over [`Q`].
pub type GObjectQ = group::GObject<Q>;

/// Symmetric sequences over [`Q`].
pub type SymSeqQ = symseq::SymSeq<Q>;

/// Plain (ordered) sequences over [`Q`].
pub type SeqQ = symseq::Seq<Q>;

// (Operad alias added when the operad module lands.)

