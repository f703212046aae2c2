//! Exact symbolic computation of Kähler differentials over finitely
//! presented algebras in positive (and zero) characteristic.
//!
//! The engine builds modules of differential forms as finitely presented
//! modules, computes their torsion submodules, pulls forms back along ring
//! morphisms, assembles Čech sequences over explicit covers, and emits
//! machine-checked verdicts about exactness and descent. Everything is
//! exact: zero-testing goes through reduced Gröbner bases, never through
//! floating point or sampling.
//!
//! Layers, bottom up:
//!
//! - [`field`], [`monomial`], [`poly`], [`freemod`]: exact arithmetic over
//!   `F_p` and `Q`, monomial orders, canonical polynomials.
//! - [`gb`]: Gröbner bases for ideals and submodules, normal forms,
//!   syzygies, quotients, saturation, elimination, radical membership.
//! - [`algebra`]: finitely presented algebras, verified morphisms, kernels,
//!   tensor products, reduced-structure candidates.
//! - [`omega`]: differential modules, universal derivation, exterior
//!   powers, pull-backs, torsion, the hyperplane-section criterion.
//! - [`descent`]: cover diagrams and element-level Čech exactness verdicts.
//! - [`scenario`]: parameterized end-to-end verifications with structured
//!   reports.
//! - [`dsl`], [`cli`]: the input language and the command-line surface.

pub mod algebra;
pub mod cli;
pub mod descent;
pub mod dsl;
pub mod error;
pub mod field;
pub mod freemod;
pub mod gb;
pub mod monomial;
pub mod omega;
pub mod poly;
pub mod scenario;

pub use error::{Error, Result};
