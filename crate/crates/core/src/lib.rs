//! Exact geometry of rotational configuration-space obstacles.
//!
//! A scene constraint between a stationary and a rotating segment induces a
//! quadratic surface (a spin-quadric) on the unit sphere of rotation
//! spinors. This crate builds that surface exactly from rational inputs,
//! classifies it, computes its eigenstructure in closed form, evaluates the
//! per-case trigonometric charts, and exports sampled meshes through
//! stereographic projection.
//!
//! Pipeline: [`scene`] parses inputs into predicates, [`predicate`] reduces
//! them and assembles the exact quadratic form, [`spectrum`] provides
//! eigenvalues and an orthonormal eigenframe, [`param`] picks the
//! parameterization case and samples it, and [`viz`] projects and emits
//! OBJ/CSV output.

pub mod clifford;
pub mod param;
pub mod predicate;
pub mod rational;
pub mod scene;
pub mod spectrum;
pub mod viz;

pub use predicate::{
    GeneralPredicate, PredicateError, PredicateKind, ReducedPredicate, SpinMatrix, Spinor,
    ZeroSide,
};
pub use rational::{RVec3, Rational};

/// Default residual tolerance for on-surface and eigen checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
