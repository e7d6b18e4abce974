//! Workbench for second-order choice principles under Henkin semantics.
//!
//! A Henkin structure fixes, for every arity `n`, a *predicate domain*: the
//! set of n-ary predicates that predicate quantifiers range over. This crate
//! builds finite truncations of three classical permutation structures
//! (`sigma0`, `sigma2`, `sigma3`), where the admitted predicates are those
//! left invariant by a pointwise stabilizer of a small support, and uses them
//! to separate choice principles that are equivalent under full semantics:
//!
//! * [`formula`] — formula AST, concrete syntax, capture-avoiding
//!   substitution, and builders for the choice-axiom schemas.
//! * [`group`] — truncated symmetry groups, supports, stabilizers, orbits.
//! * [`domain`] — finitely supported predicates, their enumeration under a
//!   support budget, and the three structure builders.
//! * [`eval`] — a Tarski-style evaluator whose predicate quantifiers range
//!   over the structure's domains, with pluggable existential witnesses.
//! * [`choice`] — explicit choice-relation constructions for `sigma2` and
//!   `sigma3`, and the refutation procedures that show which choice schemas
//!   fail there.
//! * [`claims`] — a registry of machine-checked claims tying everything
//!   together, with JSON reports.

pub mod choice;
pub mod claims;
pub mod domain;
pub mod eval;
pub mod formula;
pub mod group;
