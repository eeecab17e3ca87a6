//! Finite-scale topology of indiscernibility continua.
//!
//! A continuum is a finite carrier with a truncated generating sequence of
//! tolerance relations `R_0 ⊇ … ⊇ R_L` and an explicit limit partition. On top
//! of it sit level-indexed closure and interior, graded π/σ families,
//! motions and nets, an exact dyadic real continuum, rational metrics and
//! function-table morphisms. [`suite`] turns the classical theorems into
//! executable checks.

pub mod catalog;
pub mod class;
pub mod connectivity;
pub mod continuum;
pub mod error;
pub mod figures;
pub mod graded;
pub mod metric;
pub mod morphism;
pub mod random;
pub mod rational;
pub mod real;
pub mod suite;

pub use class::Class;
pub use continuum::{
    validate, Carrier, Condition, Continuum, GeneratingSequence, Position, Relation, ValidationReport,
    Violation,
};
pub use error::{Error, Result};
pub use rational::Rational;
