//! Radial-energy Nehari manifold method for fixed-point equations `u = T(u)`
//! posed in cones of functions on `[0, 1]`.
//!
//! The crate covers two concrete problems: a one-dimensional p-Laplacian
//! Dirichlet problem with a gradient-dependent right-hand side, and a
//! Hammerstein integral equation with the Green kernel of `-u''`. For each it
//! provides the operators, cone checks, the radial energy and its maximizers,
//! a fixed-point search on the Nehari-type manifold, and samplers that test
//! the structural hypotheses behind existence.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cones;
pub mod error;
pub mod funcspace;
pub mod manifold;
pub mod operators;
mod par;
pub mod verify;

pub use cones::{check_membership, normalize, sample_directions, ConeKind, ConeSpec, MembershipReport};
pub use error::{NehariError, Result};
pub use funcspace::{make_uniform_grid, Grid, GridFunction, NormKind};
pub use operators::{apply_T, Annulus, ExtremumMode, F_eval, Nonlinearity, OperatorKind, ProblemSpec, Tolerances};
