//! Truncated formal power series in `t`.
//!
//! A [`PowerSeries`] stores `c_0..=c_N` and knows nothing beyond `t^N`.
//! Binary operations truncate to the smaller order and never invent
//! coefficients. Division is valuation-aware: both operands are shifted by
//! the valuation of the denominator first, so the `0/0` shapes that every
//! generating function here has at `t = 0` divide cleanly.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{factorial, MultiPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("non-series quotient: numerator valuation {num} is below denominator valuation {den}")]
    NonSeriesQuotient { num: usize, den: usize },
    #[error("leading coefficient not a unit: {0}")]
    NonUnitLeading(String),
    #[error("denominator vanishes to its truncation order")]
    ZeroDivisor,
    #[error("truncation order exhausted by the denominator valuation")]
    OrderExhausted,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("iterated-integral form needs k >= 1, got {0}")]
    InvalidIndex(i64),
}

/// Coefficient ring of a power series.
pub trait Coeff: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// The value as a nonzero rational constant, if it is one.
    fn as_unit(&self) -> Option<Rational>;
    /// Whether the printed form is a single signed term.
    fn is_atomic(&self) -> bool;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn as_unit(&self) -> Option<Rational> {
        (!self.is_zero()).then(|| self.clone())
    }
    fn is_atomic(&self) -> bool {
        true
    }
}

impl Coeff for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn from_rational(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn as_unit(&self) -> Option<Rational> {
        self.as_constant().filter(|c| !c.is_zero())
    }
    fn is_atomic(&self) -> bool {
        self.len() <= 1
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

/// Ring operation selector for [`ps_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

/// Calculus operation selector for [`ps_calculus`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CalculusOp {
    Diff,
    Integrate,
}

impl<C: Coeff> PowerSeries<C> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector: a series always knows at least `c_0`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a power series needs at least one coefficient"
        );
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// `c * t^power`, or zero when `power > order`.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The series `t` (order must be at least 1 to carry it).
    pub fn t(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    /// `n! * c_n`, the value read off an exponential generating function.
    pub fn egf_coeff(&self, n: usize) -> C {
        self.coeffs[n].scale(&Rational::from_bigint(factorial(n as u32)))
    }

    /// Index of the first nonzero coefficient, `order + 1` if none.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> PowerSeries<D> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::neg)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].add(&other.coeffs[i]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].sub(&other.coeffs[i]))
                .collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Termwise `d/dt`. An order-0 series has no known derivative
    /// coefficients; it maps to the order-0 zero series.
    pub fn diff(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        PowerSeries {
            coeffs: (1..=self.order())
                .map(|i| self.coeffs[i].scale(&Rational::from_int(i as i64)))
                .collect(),
        }
    }

    /// Termwise `integral from 0 to t`; the order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            let inv = Rational::unit_fraction(BigInt::from(i + 1)).expect("nonzero");
            coeffs.push(c.scale(&inv));
        }
        PowerSeries { coeffs }
    }

    /// Drops the first `v` coefficients (division by `t^v`).
    fn shift_down(&self, v: usize) -> Option<Self> {
        (v <= self.order()).then(|| PowerSeries {
            coeffs: self.coeffs[v..].to_vec(),
        })
    }
}

impl PowerSeries<Rational> {
    pub fn lift(&self) -> PowerSeries<MultiPoly> {
        self.map(|c| MultiPoly::constant(c.clone()))
    }
}

pub fn ps_arith<C: Coeff>(
    op: SeriesOp,
    s1: &PowerSeries<C>,
    s2: &PowerSeries<C>,
) -> PowerSeries<C> {
    match op {
        SeriesOp::Add => s1.add(s2),
        SeriesOp::Sub => s1.sub(s2),
        SeriesOp::Mul => s1.mul(s2),
    }
}

/// Quotient `num / den` after cancelling `t^v`, `v = valuation(den)`.
///
/// The shifted denominator must start with a nonzero rational constant.
/// The result order is the smaller of the two shifted orders.
pub fn ps_div<C: Coeff>(
    num: &PowerSeries<C>,
    den: &PowerSeries<C>,
) -> Result<PowerSeries<C>, SeriesError> {
    let v = den.valuation();
    if v > den.order() {
        return Err(SeriesError::ZeroDivisor);
    }
    let vn = num.valuation();
    if vn < v {
        return Err(SeriesError::NonSeriesQuotient { num: vn, den: v });
    }
    let num = num.shift_down(v).ok_or(SeriesError::OrderExhausted)?;
    let den = den.shift_down(v).expect("v <= order");
    let lead = den.coeffs[0]
        .as_unit()
        .ok_or_else(|| SeriesError::NonUnitLeading(den.coeffs[0].to_string()))?;
    let inv = lead.recip().expect("unit is nonzero");
    let n = num.order().min(den.order());
    let mut q: Vec<C> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = num.coeffs[i].clone();
        for j in 1..=i {
            if !den.coeffs[j].is_zero() {
                acc = acc.sub(&den.coeffs[j].mul(&q[i - j]));
            }
        }
        q.push(acc.scale(&inv));
    }
    Ok(PowerSeries { coeffs: q })
}

/// `outer(inner(t))`, by Horner evaluation over truncated series.
pub fn ps_compose<C: Coeff>(
    outer: &PowerSeries<C>,
    inner: &PowerSeries<C>,
) -> Result<PowerSeries<C>, SeriesError> {
    if inner.valuation() == 0 {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let n = outer.order().min(inner.order());
    let inner = inner.truncate(n);
    let mut acc = PowerSeries::constant(outer.coeffs[outer.order()].clone(), n);
    for c in outer.coeffs.iter().rev().skip(1) {
        acc = acc.mul(&inner);
        acc.coeffs[0] = acc.coeffs[0].add(c);
    }
    Ok(acc)
}

/// `e^{c t}` to the given order.
pub fn ps_exp_linear<C: Coeff>(c: &C, order: usize) -> PowerSeries<C> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(C::one());
    for n in 1..=order {
        let inv = Rational::unit_fraction(BigInt::from(n)).expect("n >= 1");
        let next = coeffs[n - 1].mul(c).scale(&inv);
        coeffs.push(next);
    }
    PowerSeries { coeffs }
}

pub fn ps_calculus<C: Coeff>(op: CalculusOp, s: &PowerSeries<C>) -> PowerSeries<C> {
    match op {
        CalculusOp::Diff => s.diff(),
        CalculusOp::Integrate => s.integrate(),
    }
}

/// `Li_k(z) = sum_{m >= 1} z^m / m^k` to order `order` in `z`.
pub fn polylog_series(k: i64, order: usize) -> PowerSeries<Rational> {
    let mut s = PowerSeries::zero(order);
    for m in 1..=order {
        s.coeffs[m] = Rational::from_int(m as i64).pow(-k).expect("m >= 1");
    }
    s
}

/// `1 - e^{-t}` to the given order.
fn one_minus_exp_neg(order: usize) -> PowerSeries<Rational> {
    PowerSeries::one(order).sub(&ps_exp_linear(&Rational::from_int(-1), order))
}

/// `Li_k(1 - e^{-t}) / (1 - e^{-t})`; `n! [t^n]` is the poly-Bernoulli
/// number `B_n^(k)`.
pub fn gf_poly_bernoulli(k: i64, order: usize) -> PowerSeries<Rational> {
    let work = order + 1;
    let u = one_minus_exp_neg(work);
    let num = ps_compose(&polylog_series(k, work), &u).expect("u has zero constant term");
    ps_div(&num, &u).expect("both sides have valuation 1 and unit leading coefficient")
}

/// The same generating function built as nested integrals:
/// `s_1 = t/(e^t - 1)`, `s_j = (1/(e^t - 1)) * integral_0^t s_{j-1}`,
/// result `e^t * s_k`.
pub fn gf_iterated_integral(k: i64, order: usize) -> Result<PowerSeries<Rational>, SeriesError> {
    if k < 1 {
        return Err(SeriesError::InvalidIndex(k));
    }
    let work = order + 1;
    let one = Rational::one();
    let exp_minus_one = ps_exp_linear(&one, work + 1).sub(&PowerSeries::one(work + 1));
    let mut s = ps_div(&PowerSeries::t(work), &exp_minus_one)?;
    for _ in 1..k {
        s = ps_div(&s.integrate(), &exp_minus_one)?;
    }
    Ok(ps_exp_linear(&one, order).mul(&s).truncate(order))
}

impl<C: Coeff> fmt::Display for PowerSeries<C> {
    /// `c0 + c1*t + c2*t^2 + O(t^{N+1})`, zero coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            if !c.is_atomic() {
                text = format!("({text})");
            }
            let negative = text.starts_with('-');
            let body = if negative { &text[1..] } else { &text[..] };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => f.write_str(body)?,
                1 => write!(f, "{body}*t")?,
                _ => write!(f, "{body}*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{{{}}})", self.order() + 1)
    }
}

impl<C: Coeff> fmt::Debug for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Var;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rs(v: &[&str]) -> PowerSeries<Rational> {
        PowerSeries::from_coeffs(v.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn arithmetic_examples() {
        let t = PowerSeries::<Rational>::t(4);
        assert_eq!(
            ps_arith(SeriesOp::Mul, &t, &t),
            rs(&["0", "0", "1", "0", "0"])
        );
        let a = rs(&["1", "-1"]);
        let b = rs(&["0", "1"]);
        assert_eq!(ps_arith(SeriesOp::Add, &a, &b), rs(&["1", "0"]));
        let e = ps_exp_linear(&q("1"), 6);
        let e_inv = ps_exp_linear(&q("-1"), 6);
        assert_eq!(e.mul(&e_inv), PowerSeries::one(6));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = PowerSeries::<Rational>::one(5);
        let b = PowerSeries::<Rational>::one(2);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&b).order(), 2);
    }

    #[test]
    fn division_examples() {
        let t2 = PowerSeries::<Rational>::monomial(q("1"), 2, 4);
        let t = PowerSeries::<Rational>::t(4);
        assert_eq!(ps_div(&t2, &t).unwrap(), rs(&["0", "1", "0", "0"]));

        let em1 = ps_exp_linear(&q("1"), 4).sub(&PowerSeries::one(4));
        assert_eq!(
            ps_div(&em1, &t).unwrap(),
            rs(&["1", "1/2", "1/6", "1/24"]).truncate(3)
        );
        assert_eq!(
            ps_div(&em1, &t).unwrap().truncate(2),
            rs(&["1", "1/2", "1/6"])
        );

        let u = one_minus_exp_neg(3);
        let li1 = ps_compose(&polylog_series(1, 3), &u).unwrap();
        assert_eq!(ps_div(&li1, &u).unwrap(), rs(&["1", "1/2", "1/12"]));
    }

    #[test]
    fn division_errors() {
        let t = PowerSeries::<Rational>::t(3);
        let one = PowerSeries::<Rational>::one(3);
        assert!(matches!(
            ps_div(&one, &t),
            Err(SeriesError::NonSeriesQuotient { num: 0, den: 1 })
        ));
        assert_eq!(
            ps_div(&one, &PowerSeries::zero(3)),
            Err(SeriesError::ZeroDivisor)
        );

        let lead = MultiPoly::var(Var::La);
        let den = PowerSeries::from_coeffs(vec![MultiPoly::zero(), lead]);
        let num = PowerSeries::from_coeffs(vec![MultiPoly::zero(), MultiPoly::one()]);
        assert!(matches!(ps_div(&num, &den), Err(SeriesError::NonUnitLeading(s)) if s == "La"));
    }

    #[test]
    fn composition_examples() {
        let z2 = PowerSeries::<Rational>::monomial(q("1"), 2, 3);
        let inner = rs(&["0", "1", "1", "0"]);
        assert_eq!(ps_compose(&z2, &inner).unwrap(), rs(&["0", "0", "1", "2"]));

        let li1 = ps_compose(&polylog_series(1, 3), &one_minus_exp_neg(3)).unwrap();
        assert_eq!(li1, rs(&["0", "1", "0", "0"]));

        let outer = rs(&["5", "2", "7"]);
        assert_eq!(
            ps_compose(&outer, &PowerSeries::zero(2)).unwrap(),
            rs(&["5", "0", "0"])
        );
        assert_eq!(
            ps_compose(&outer, &PowerSeries::one(2)),
            Err(SeriesError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn exp_linear_examples() {
        assert_eq!(ps_exp_linear(&q("0"), 3), PowerSeries::one(3));
        assert_eq!(ps_exp_linear(&q("1"), 3), rs(&["1", "1", "1/2", "1/6"]));
        let mlb = -MultiPoly::var(Var::Lb);
        let e = ps_exp_linear(&mlb, 2);
        let expected: Vec<MultiPoly> = ["1", "-Lb", "1/2*Lb^2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(e.coeffs(), &expected[..]);
    }

    #[test]
    fn calculus_examples() {
        let t2 = PowerSeries::<Rational>::monomial(q("1"), 2, 3);
        assert_eq!(ps_calculus(CalculusOp::Diff, &t2), rs(&["0", "2", "0"]));
        assert_eq!(
            ps_calculus(CalculusOp::Integrate, &PowerSeries::<Rational>::one(0)),
            rs(&["0", "1"])
        );
        let s = rs(&["3", "1", "1/2", "5"]);
        let back = s.diff().integrate();
        assert_eq!(back, s.sub(&PowerSeries::constant(q("3"), 3)));
    }

    #[test]
    fn polylog_examples() {
        assert_eq!(polylog_series(1, 3), rs(&["0", "1", "1/2", "1/3"]));
        assert_eq!(polylog_series(0, 3), rs(&["0", "1", "1", "1"]));
        assert_eq!(polylog_series(-1, 3), rs(&["0", "1", "2", "3"]));
    }

    #[test]
    fn polylog_matches_rational_function_forms() {
        // Li_0(z) (1 - z) = z and Li_{-1}(z) (1 - z)^2 = z.
        let one_minus_z = rs(&["1", "-1", "0", "0", "0", "0"]);
        let z = PowerSeries::<Rational>::t(5);
        assert_eq!(polylog_series(0, 5).mul(&one_minus_z), z);
        assert_eq!(polylog_series(-1, 5).mul(&one_minus_z).mul(&one_minus_z), z);
    }

    #[test]
    fn poly_bernoulli_generating_function() {
        let g = gf_poly_bernoulli(1, 2);
        assert_eq!(g, rs(&["1", "1/2", "1/12"]));
        assert_eq!(gf_poly_bernoulli(2, 3).egf_coeff(1), q("1/4"));
        assert_eq!(gf_poly_bernoulli(-2, 3).egf_coeff(2), q("14"));
    }

    #[test]
    fn iterated_integral_small_cases() {
        assert_eq!(gf_iterated_integral(1, 2).unwrap(), gf_poly_bernoulli(1, 2));
        assert_eq!(gf_iterated_integral(2, 8).unwrap(), gf_poly_bernoulli(2, 8));
        assert_eq!(gf_iterated_integral(3, 8).unwrap(), gf_poly_bernoulli(3, 8));
        assert_eq!(
            gf_iterated_integral(0, 3),
            Err(SeriesError::InvalidIndex(0))
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(
            rs(&["1", "-1/2", "0", "3"]).to_string(),
            "1 - 1/2*t + 3*t^3 + O(t^{4})"
        );
        assert_eq!(PowerSeries::<Rational>::zero(1).to_string(), "0 + O(t^{2})");
        let s = PowerSeries::from_coeffs(vec![MultiPoly::one(), "La - Lb".parse().unwrap()]);
        assert_eq!(s.to_string(), "1 + (La - Lb)*t + O(t^{2})");
    }
}
