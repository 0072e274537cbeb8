//! Oriented and order-decreasing full transformations of a finite chain.
//!
//! `ORD_n` is the monoid of maps `α` on `{1 < ... < n}` with `xα <= x` whose
//! image sequence `(1α, ..., nα)` is cyclic or anti-cyclic; `ORD(n, r)` keeps
//! those with at most `r` image points. This crate provides
//!
//! * [`Transformation`] and its predicates (order, orientation, degrees),
//! * exhaustive [`enumeration`] of every family involved,
//! * exact closed-form [`counting`] and rank formulas,
//! * the named [`generators`], including a minimal generating set of
//!   `ORD(n, r)` and a constructive factorization,
//! * a [`closure`] engine for finite transformation semigroups,
//! * the classification of [`maximal`] subsemigroups.
//!
//! Composition is a right action: `a.then(&b)` applies `a` first.

pub mod closure;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod generators;
pub mod maximal;
pub mod set;
pub mod transform;

pub use closure::{close, is_generating, is_maximal_in, is_subsemigroup, is_undecomposable};
pub use enumeration::{count_by_enumeration, enumerate, psi_hat, Family, FamilySelector};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use maximal::{
    maximal_descriptors, maximal_descriptors_full, DescriptorKind, MaximalDescriptor,
};
pub use set::SemigroupSet;
pub use transform::{KernelPartition, Transformation};
