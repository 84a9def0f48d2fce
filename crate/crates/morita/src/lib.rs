//! Exact certification that a finite category algebra is Morita
//! equivalent to the algebra of its core groupoid.
//!
//! The library builds finite categories as explicit composition tables,
//! validates proper factorization systems on them, constructs the free
//! linear categories and the canonical bimodules between them, and then
//! certifies, with exact arithmetic, that the unit and counit of the
//! induced adjunction are invertible. Supporting machinery covers
//! Kovacs idempotents, idempotent splittings in the endomorphism
//! algebras, the triangular transformation between the subobject and
//! quotient realizations of a representation, and Day convolution on
//! representations of a finite general linear groupoid.
//!
//! Module map:
//! - [`exactalg`]: exact scalars (rationals, prime fields) and the
//!   row-reduction kernel (solve, kernel, cokernel, idempotent splits).
//! - [`fincat`]: composition tables, factorization systems, stiffness,
//!   subobject/quotient listings.
//! - [`lincat`]: free linear categories, Kovacs idempotents, the
//!   idempotent axiom, Cauchy-completion tools.
//! - [`bimod`]: bimodules, coend composition, canonical modules,
//!   splittings, and the equivalence certificate.
//! - [`repcat`]: representations, the subobject/quotient kernels, the
//!   triangular transformation, transport across the equivalence.
//! - [`dayconv`]: short-exact-sequence promonoidal structure and Day
//!   convolution for finite vector-space instances.
//! - [`catalog`]: builders for the standard example categories.
//! - [`format`]: the category file format.
//! - [`report`]: deterministic check reports.

pub mod bimod;
pub mod catalog;
pub mod dayconv;
pub mod exactalg;
pub mod fincat;
pub mod format;
pub mod lincat;
pub mod repcat;
pub mod report;
