//! Exact barycentric algebras over the rings `Z[S^-1]`.
//!
//! The crate works with rational point sets under the barycentric operations
//! `x y p = (1 - p) x + p y` with `p` drawn from the open unit interval of a
//! ring `T`. It provides:
//!
//! * [`scalar`]: exact rationals and ring descriptors,
//! * [`linalg`] and [`lp`]: exact linear algebra, Smith normal form and
//!   certificate-producing linear feasibility,
//! * [`mode`]: barycentric terms and executable checks of the mode laws,
//! * [`hull`]: `T`-convex hull membership, Carathéodory reduction,
//!   `T`-segments and a bounded segment-closure engine,
//! * [`formula`]: synthesis and checking of existential chain formulas that
//!   pin down an affine combination using only operations from `T`,
//! * [`affine`]: affine bases and maps, and the decision of affine
//!   equivalence of rational polytopes, which coincides with isomorphism of
//!   their barycentric algebras.

pub mod affine;
pub mod error;
pub mod formula;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod mode;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{QMatrix, QVector};
pub use mode::{Point, Term};
pub use scalar::{Rational, RingSpec};
