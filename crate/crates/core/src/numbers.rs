//! Stirling numbers of the second kind and poly-Bernoulli numbers and
//! polynomials, in closed form.
//!
//! `B_n^(k)` is evaluated by the Stirling-number sum
//!
//! ```text
//! B_n^(k) = (-1)^n * sum_{m=1}^{n+1} (-1)^(m-1) (m-1)! S(n, m-1) / m^k
//! ```
//!
//! for every integer `k` (for negative `k` the `1/m^k` factor is the
//! integer `m^|k|`). The negative-index double-Stirling form is exposed
//! separately as [`poly_bernoulli_negative`].
//!
//! Two Bernoulli conventions coexist and are never converted silently:
//! `poly_bernoulli(1, 1) = +1/2`, while [`classical_bernoulli`] reads
//! `t/(e^t - 1)` and gives `B_1 = -1/2`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, Monomial, MultiPoly, Rational, Var};
use crate::series::{ps_div, ps_exp_linear, PowerSeries};

/// Memo tables for Stirling numbers and `B_n^(k)`.
///
/// Readers share a lock; inserts take it exclusively. Values are immutable
/// once inserted, so a racing duplicate insert writes an equal value.
pub struct PolyBernoulliCache {
    n_cap: usize,
    stirling: RwLock<Vec<Vec<BigInt>>>,
    pb: RwLock<HashMap<(u32, i64), Rational>>,
}

impl PolyBernoulliCache {
    pub const DEFAULT_CAP: usize = 64;

    /// Preallocates Stirling rows `0..=n_cap`. Larger `n` still works; the
    /// table grows on demand.
    pub fn new(n_cap: usize) -> Self {
        let cache = PolyBernoulliCache {
            n_cap,
            stirling: RwLock::new(vec![vec![BigInt::one()]]),
            pb: RwLock::new(HashMap::new()),
        };
        cache.ensure_rows(n_cap);
        cache
    }

    /// Process-wide cache used by the free functions of this module.
    pub fn global() -> &'static PolyBernoulliCache {
        static GLOBAL: OnceLock<PolyBernoulliCache> = OnceLock::new();
        GLOBAL.get_or_init(|| PolyBernoulliCache::new(Self::DEFAULT_CAP))
    }

    pub fn n_cap(&self) -> usize {
        self.n_cap
    }

    fn ensure_rows(&self, n: usize) {
        if self.stirling.read().unwrap().len() > n {
            return;
        }
        let mut rows = self.stirling.write().unwrap();
        while rows.len() <= n {
            let prev = rows.last().unwrap();
            let r = rows.len();
            // S(r, m) = m S(r-1, m) + S(r-1, m-1)
            let row: Vec<BigInt> = (0..=r)
                .map(|m| {
                    let stay = prev.get(m).map(|s| s * m).unwrap_or_else(BigInt::zero);
                    let join = if m == 0 {
                        BigInt::zero()
                    } else {
                        prev[m - 1].clone()
                    };
                    stay + join
                })
                .collect();
            rows.push(row);
        }
    }

    pub fn stirling2(&self, n: u32, m: u32) -> BigInt {
        if m > n {
            return BigInt::zero();
        }
        self.ensure_rows(n as usize);
        self.stirling.read().unwrap()[n as usize][m as usize].clone()
    }

    pub fn poly_bernoulli(&self, n: u32, k: i64) -> Rational {
        if let Some(v) = self.pb.read().unwrap().get(&(n, k)) {
            return v.clone();
        }
        let mut sum = Rational::zero();
        for m in 1..=n + 1 {
            let s = self.stirling2(n, m - 1);
            if s.is_zero() {
                continue;
            }
            let weight = Rational::from_int(i64::from(m)).pow(-k).expect("m >= 1");
            let term = Rational::from_bigint(factorial(m - 1) * s) * weight;
            if (m - 1) % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
        }
        if n % 2 == 1 {
            sum = -sum;
        }
        self.pb
            .write()
            .unwrap()
            .entry((n, k))
            .or_insert_with(|| sum.clone());
        sum
    }
}

/// Stirling number of the second kind `S(n, m)`; zero for `m > n`.
pub fn stirling2(n: u32, m: u32) -> BigInt {
    PolyBernoulliCache::global().stirling2(n, m)
}

/// `B_n^(k)` for any integer `k`.
pub fn poly_bernoulli(n: u32, k: i64) -> Rational {
    PolyBernoulliCache::global().poly_bernoulli(n, k)
}

/// `B_n^(-k)` from `sum_{j=0}^{min(n,k)} (j!)^2 S(n+1, j+1) S(k+1, j+1)`.
pub fn poly_bernoulli_negative(n: u32, k: u32) -> Rational {
    let cache = PolyBernoulliCache::global();
    let total: BigInt = (0..=n.min(k))
        .map(|j| {
            let f = factorial(j);
            &f * &f * cache.stirling2(n + 1, j + 1) * cache.stirling2(k + 1, j + 1)
        })
        .sum();
    Rational::from_bigint(total)
}

/// Poly-Bernoulli polynomial `B_n^(k)(X) = sum_j C(n,j) B_j^(k) X^(n-j)`.
pub fn poly_bernoulli_poly(n: u32, k: i64) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for j in 0..=n {
        let c = binomial(n, j) * poly_bernoulli(j, k);
        out = out + MultiPoly::term(c, x_power(n - j));
    }
    out
}

pub(crate) fn x_power(e: u32) -> Monomial {
    Monomial::new([e, 0, 0, 0])
}

/// `t / (e^t - 1)` to order `order`.
fn bernoulli_gf(order: usize) -> PowerSeries<Rational> {
    let work = order + 1;
    let em1 = ps_exp_linear(&Rational::one(), work).sub(&PowerSeries::one(work));
    ps_div(&PowerSeries::t(work), &em1).expect("valuation 1 over valuation 1")
}

/// Bernoulli number with `B_1 = -1/2`, read off `t/(e^t - 1)`.
pub fn classical_bernoulli(n: u32) -> Rational {
    bernoulli_gf(n as usize).egf_coeff(n as usize)
}

/// All of `B_0..=B_n` (`B_1 = -1/2`) from one series expansion.
pub fn classical_bernoulli_numbers(n: u32) -> Vec<Rational> {
    let g = bernoulli_gf(n as usize);
    (0..=n as usize).map(|i| g.egf_coeff(i)).collect()
}

/// Bernoulli polynomials `B_0(X)..=B_n(X)` from `t e^{Xt} / (e^t - 1)`.
pub fn bernoulli_polys(n: u32) -> Vec<MultiPoly> {
    let order = n as usize;
    let g = bernoulli_gf(order).lift();
    let s = g.mul(&ps_exp_linear(&MultiPoly::var(Var::X), order));
    (0..=order).map(|i| s.egf_coeff(i)).collect()
}
