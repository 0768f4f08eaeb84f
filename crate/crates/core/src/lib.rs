//! Exact poly-Bernoulli numbers and polynomials, their generalization with
//! parameters `a, b, c` carried symbolically as `ln a, ln b, ln c`, Euler
//! polynomials, and checks of the identities relating them against
//! truncated generating-function expansions.
//!
//! Everything is exact: scalars are [`arith::Rational`], symbolic values
//! are [`arith::MultiPoly`] in `X, La, Lb, Lc`, and generating functions
//! are [`series::PowerSeries`] with an explicit truncation order.

pub mod arith;
pub mod cli;
pub mod euler;
pub mod generalized;
pub mod numbers;
pub mod report;
pub mod series;

pub use arith::{MultiPoly, Point, Rational, Var};
pub use report::{IdentityId, IdentityReport};
