//! Exact combinatorics of k-tuples of functions arranged around a cycle of
//! finite sets `X_1 -> X_2 -> ... -> X_k -> X_1`.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`polyring`]: sparse multivariate polynomials over big integers, with
//!   one variable `x[i][j]` per vertex of the shape.
//! * [`domain`]: shapes, k-tuples, composition, stabilization and cycle-type
//!   classification.
//! * [`oracle`]: brute-force enumeration used as ground truth.
//! * [`closedform`]: generating polynomials, cardinalities and probabilities
//!   of the eventually constant / N-cyclic / lambda-cyclic classes.
//! * [`matrixtree`]: the symbolic directed Laplacian and its principal minors.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod closedform;
pub mod domain;
mod error;
pub mod matrixtree;
pub mod oracle;
pub mod polyring;

pub use closedform::ExactRational;
pub use domain::{CycleType, KTuple, NChoiceSet, Shape};
pub use error::{Error, Result};
pub use polyring::{Monomial, Polynomial, VarId};
