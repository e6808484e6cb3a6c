//! A kernel for Cartesian cubical type theory with indexed cubical
//! inductive types.
//!
//! The crate provides:
//!
//! - [`syntax`]: the term language, schemas, and substitution.
//! - [`interp`]: the meta-operations interpreting schema specifications as
//!   terms (type and boundary interpretation, their dependent variants,
//!   argument-type actions, and multi-coercion).
//! - [`eval`]: a deterministic small-step machine with step tracing and
//!   deep observation at first-order inductive types.
//! - [`check`]: algorithmic well-formedness for schemas, boundary terms,
//!   eliminator case lists, and core terms, with a weak-head conversion
//!   check.
//! - [`stdlib`]: a catalog of example inductive types with derived
//!   eliminators and smoke programs.
//! - [`harness`]: the canonicity, arithmetic, Kan-degeneracy, coherence,
//!   and mutation suites.
//! - [`cli`]: the `.cit` surface syntax, pretty-printer, and batch driver.

pub mod check;
pub mod cli;
pub mod eval;
pub mod harness;
pub mod interp;
pub mod stdlib;
pub mod syntax;
