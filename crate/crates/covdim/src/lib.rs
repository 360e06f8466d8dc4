//! Exact-arithmetic toolkit around the covariant dimension of finite groups.
//!
//! The crate has four layers:
//!
//! * [`groups`] — a small finite-group kernel (permutations and matrices over
//!   a prime field) with full element enumeration, conjugacy machinery and
//!   the Gaschütz faithfulness test.
//! * [`polymap`] — sparse multivariate polynomials and evaluation DAGs for
//!   polynomial maps over prime fields, with forward-mode Jacobians and exact
//!   rank computation. This is the substrate for all certificates.
//! * [`covariants`] / [`dimension`] — constructors for the explicit
//!   compressions of `S_n` (the `Σ_f` covariants built from balanced
//!   difference monomials), abelian self-covariants, degree bookkeeping, and
//!   replayable lower-bound certificates for image dimension, faithfulness
//!   and exact kernels.
//! * [`bounds`] / [`classify`] / [`search`] — a rule-based interval engine
//!   for covdim/edim of structured group expressions, explicit GL₂ models of
//!   the covariant-dimension-2 groups with extension verification, and a
//!   parallel sweep over balanced monomial classes.
//!
//! The [`cli`] module exposes all of it as the `covdim` binary.

pub mod bounds;
pub mod classify;
pub mod cli;
pub mod config;
pub mod covariants;
pub mod dimension;
pub mod groups;
pub mod polymap;
pub mod search;
