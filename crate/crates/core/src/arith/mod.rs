//! Exact coefficient rings: rationals and polynomials over them.

mod poly;
mod rational;

pub use poly::{poly_arith, Bindings, Monomial, MultiPoly, Point, PolyOp, RenderStyle, Var};
pub use rational::{rat_arith, RatOp, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value bound for indeterminate {0}")]
    UnboundVariable(Var),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Binomial coefficient `C(n, k)` as a rational; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_bigint(acc)
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1u32), |acc, i| acc * i)
}
