//! Elementary group gradings on incidence algebras of finite posets.
//!
//! - [`poset`]: finite posets, chains, components, automorphisms
//! - [`algebra`]: the incidence algebra over `Q` and its automorphisms
//! - [`group`], [`grading`]: finite groups and elementary gradings
//! - [`identities`]: multilinear graded polynomial identities
//! - [`linalg`]: exact rational row reduction

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod grading;
pub mod group;
pub mod identities;
pub mod linalg;
pub mod poset;
pub mod random;

pub use algebra::{decompose_automorphism, AlgebraMorphism, Decomposition, IncidenceFunction};
pub use error::{Error, Result};
pub use grading::{classify_gradings, count_gradings, GradingMap};
pub use group::FiniteGroup;
pub use identities::{identity_slice, IdentitySlice, MultilinearPolynomial};
pub use linalg::{Rational, RationalMatrix};
pub use poset::{Chain, Poset, PosetAutomorphism};
