//! Exact symbolic algebra over geometric-quantity atoms: canonical forms,
//! polynomial and rational-function arithmetic, and the zero test that
//! decides algebraic verifiability.

pub mod atom;
pub mod expr;
pub mod point;
pub mod poly;
pub mod rexpr;
pub mod scalar;

pub use atom::{canonicalize, Atom, CanonicalAtom};
pub use expr::{expand_quaternary, ExprTree, QuantityKind};
pub use point::PointRef;
pub use poly::{Monomial, Polynomial};
pub use rexpr::RationalExpr;
pub use scalar::Scalar;
