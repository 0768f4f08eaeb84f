//! Sparse multivariate polynomials over [`Rational`] in the fixed
//! indeterminates `X`, `La`, `Lb`, `Lc`.
//!
//! `La`, `Lb`, `Lc` stand for `ln a`, `ln b`, `ln c` as formal symbols and
//! `X` for the polynomial argument. Terms live in a `BTreeMap` keyed by
//! [`Monomial`], whose ordering is graded lexicographic with
//! `X > La > Lb > Lc`. Zero coefficients are never stored, so two
//! polynomials are equal exactly when their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

use super::{ArithError, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    La,
    Lb,
    Lc,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::La, Var::Lb, Var::Lc];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "X",
            Var::La => "La",
            Var::Lb => "Lb",
            Var::Lc => "Lc",
        }
    }

    fn parse(s: &str) -> Option<Var> {
        match s {
            "X" | "x" => Some(Var::X),
            "La" | "ln(a)" => Some(Var::La),
            "Lb" | "ln(b)" => Some(Var::Lb),
            "Lc" | "ln(c)" => Some(Var::Lc),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial([u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(exps: [u32; 4]) -> Self {
        Monomial(exps)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn with_exponent(&self, v: Var, e: u32) -> Monomial {
        let mut exps = self.0;
        exps[v.index()] = e;
        Monomial(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Binary operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(op: PolyOp, p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

/// Partial assignment of polynomials to indeterminates, used by
/// [`MultiPoly::substitute`].
#[derive(Clone, Debug, Default)]
pub struct Bindings([Option<MultiPoly>; 4]);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, v: Var, value: impl Into<MultiPoly>) -> Self {
        self.0[v.index()] = Some(value.into());
        self
    }

    pub fn get(&self, v: Var) -> Option<&MultiPoly> {
        self.0[v.index()].as_ref()
    }
}

/// Partial assignment of rationals to indeterminates, used by
/// [`MultiPoly::eval`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Point([Option<Rational>; 4]);

impl Point {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds every indeterminate, in `X, La, Lb, Lc` order.
    pub fn total(x: Rational, la: Rational, lb: Rational, lc: Rational) -> Self {
        Point([Some(x), Some(la), Some(lb), Some(lc)])
    }

    pub fn bind(mut self, v: Var, value: Rational) -> Self {
        self.0[v.index()] = Some(value);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.0[v.index()].as_ref()
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Degree in `v`; zero polynomial has degree 0.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True when every term has total degree `d` in the given variables.
    pub fn is_homogeneous_in(&self, vars: &[Var], d: u32) -> bool {
        self.terms
            .keys()
            .all(|m| vars.iter().map(|&v| m.exponent(v)).sum::<u32>() == d)
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces bound indeterminates by their polynomials. Unbound ones
    /// pass through unchanged.
    pub fn substitute(&self, bindings: &Bindings) -> MultiPoly {
        let mut powers: [Vec<MultiPoly>; 4] = Default::default();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = *m;
            let mut acc = MultiPoly::constant(c.clone());
            for v in Var::ALL {
                let Some(value) = bindings.get(v) else {
                    continue;
                };
                let e = m.exponent(v) as usize;
                kept = kept.with_exponent(v, 0);
                let table = &mut powers[v.index()];
                if table.is_empty() {
                    table.push(MultiPoly::one());
                }
                while table.len() <= e {
                    let next = table.last().unwrap() * value;
                    table.push(next);
                }
                acc = &acc * &table[e];
            }
            let shifted = acc.mul_monomial(&kept);
            out = &out + &shifted;
        }
        out
    }

    fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Exact value at `point`. Every indeterminate occurring in `self` must
    /// be bound.
    pub fn eval(&self, point: &Point) -> Result<Rational, ArithError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let value = point.get(v).ok_or(ArithError::UnboundVariable(v))?;
                t *= &value.pow(i64::from(e))?;
            }
            total += &t;
        }
        Ok(total)
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(
                    m.with_exponent(v, e - 1),
                    &(c * Rational::from_int(i64::from(e))),
                );
            }
        }
        out
    }

    /// Termwise antiderivative in `v` with zero constant of integration.
    pub fn antiderivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) + 1;
            let inv = Rational::unit_fraction(BigInt::from(e)).expect("e >= 1");
            out.add_term(m.with_exponent(v, e), &(c * inv));
        }
        out
    }

    /// Coefficients of `v^0, v^1, ..., v^deg` as polynomials free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            out[e].add_term(m.with_exponent(v, 0), c);
        }
        out
    }

    /// Exact quotient by the indeterminate `v`, or `None` if some term
    /// does not contain `v`.
    pub fn div_by_var(&self, v: Var) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                return None;
            }
            terms.insert(m.with_exponent(v, e - 1), c.clone());
        }
        Some(MultiPoly { terms })
    }

    /// Homogeneous substitution `v -> num/den` on a polynomial of
    /// `v`-degree at most `n`, scaled by `den^n`:
    /// `sum_j p_j * num^j * den^(n-j)` where `p_j` is the coefficient of
    /// `v^j`. No fraction is ever formed.
    pub fn homogeneous_substitute(
        &self,
        v: Var,
        num: &MultiPoly,
        den: &MultiPoly,
        n: u32,
    ) -> MultiPoly {
        let coeffs = self.coefficients_in(v);
        assert!(
            coeffs.len() <= n as usize + 1,
            "homogeneous substitution needs degree <= {n}"
        );
        let mut out = MultiPoly::zero();
        for (j, p) in coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let weight = &num.pow(j as u32) * &den.pow(n - j as u32);
            out = &out + &(p * &weight);
        }
        out
    }

    pub fn render(&self, style: &RenderStyle) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if m.is_one() || !mag.is_one() {
                factors.push(mag.to_string());
            }
            for v in style.order {
                match m.exponent(v) {
                    0 => {}
                    1 => factors.push(style.name(v).to_string()),
                    e => factors.push(format!("{}^{}", style.name(v), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Display names and in-term factor order for [`MultiPoly::render`].
/// Term order is always descending graded lex.
#[derive(Clone, Debug)]
pub struct RenderStyle {
    pub names: [&'static str; 4],
    pub order: [Var; 4],
}

impl RenderStyle {
    /// `X`, `La`, `Lb`, `Lc`; the [`fmt::Display`] format.
    pub const CANONICAL: RenderStyle = RenderStyle {
        names: ["X", "La", "Lb", "Lc"],
        order: [Var::X, Var::La, Var::Lb, Var::Lc],
    };

    /// `x`, `ln(a)`, `ln(b)`, `ln(c)` with logarithms written first.
    pub const MATH: RenderStyle = RenderStyle {
        names: ["x", "ln(a)", "ln(b)", "ln(c)"],
        order: [Var::La, Var::Lb, Var::Lc, Var::X],
    };

    fn name(&self, v: Var) -> &'static str {
        self.names[v.index()]
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&RenderStyle::CANONICAL))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiPoly {
    type Err = ArithError;

    /// Accepts either render style; `·` is also accepted as a factor
    /// separator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = MultiPoly::zero();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if i > 0 {
                    pieces.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        pieces.push((negative, current));
        for (negative, body) in pieces {
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff = Rational::one();
            let mut mono = [0u32; 4];
            for factor in body.split(['*', '·']) {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff = coeff * factor.parse::<Rational>()?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                let v = Var::parse(name).ok_or_else(bad)?;
                mono[v.index()] += exp;
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial(mono), &coeff);
        }
        Ok(out)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(Rational::from_int(c))
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        let la = MultiPoly::var(Var::La);
        let lb = MultiPoly::var(Var::Lb);
        assert_eq!(poly_arith(PolyOp::Add, &la, &lb), p("La + Lb"));
        let prod = poly_arith(PolyOp::Mul, &(&la + &lb), &(&la - &lb));
        assert_eq!(prod, p("La^2 - Lb^2"));
        assert!(poly_arith(PolyOp::Mul, &MultiPoly::var(Var::X), &MultiPoly::zero()).is_zero());
        assert!((&la - &la).is_empty());
    }

    #[test]
    fn substitution_examples() {
        let b = Bindings::new().bind(Var::La, 1).bind(Var::Lb, 0);
        assert_eq!(p("La + Lb").substitute(&b), MultiPoly::one());

        let b = Bindings::new().bind(Var::X, -MultiPoly::var(Var::Lb));
        let f = &p("La + Lb") * &MultiPoly::var(Var::X);
        assert_eq!(f.substitute(&b), -(&p("La + Lb") * &p("Lb")));

        let b = Bindings::new().bind(Var::La, p("La + Lc"));
        assert_eq!(p("La").substitute(&b), p("La + Lc"));
    }

    #[test]
    fn substitution_leaves_unbound_variables() {
        let f = p("3*X^2*La + Lb*Lc - 1/2");
        assert_eq!(f.substitute(&Bindings::new()), f);
        let b = Bindings::new().bind(Var::X, p("X + 1"));
        assert_eq!(
            f.substitute(&b),
            p("3*X^2*La + 6*X*La + 3*La + Lb*Lc - 1/2")
        );
    }

    #[test]
    fn eval_examples() {
        let pt = Point::total(q("0"), q("2"), q("3"), q("0"));
        assert_eq!(p("La^2 + Lb").eval(&pt).unwrap(), q("7"));
        assert_eq!(MultiPoly::zero().eval(&Point::new()).unwrap(), q("0"));
        // (La+Lb)/2^4 - Lb at La = Lb = 1
        let pt = Point::new().bind(Var::La, q("1")).bind(Var::Lb, q("1"));
        assert_eq!(p("1/16*La + 1/16*Lb - Lb").eval(&pt).unwrap(), q("-7/8"));
    }

    #[test]
    fn eval_names_unbound_variable() {
        let pt = Point::new().bind(Var::X, q("1"));
        let err = p("X + Lc").eval(&pt).unwrap_err();
        assert_eq!(err, ArithError::UnboundVariable(Var::Lc));
        assert!(err.to_string().contains("Lc"));
    }

    #[test]
    fn canonical_rendering() {
        let f = &(&p("Lc") * &p("X")) + &p("1/4*La - 3/4*Lb");
        assert_eq!(f.to_string(), "X*Lc + 1/4*La - 3/4*Lb");
        assert_eq!(
            f.render(&RenderStyle::MATH),
            "ln(c)*x + 1/4*ln(a) - 3/4*ln(b)"
        );
        assert_eq!(p("X + 1/4").render(&RenderStyle::MATH), "x + 1/4");
        assert_eq!(p("-X^2 + 1").to_string(), "-X^2 + 1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_both_styles() {
        assert_eq!(
            p("ln(c)*x + 1/4*ln(a) - 3/4*ln(b)"),
            p("X*Lc + 1/4*La - 3/4*Lb")
        );
        assert_eq!(p("2·X^2·La"), p("2*X^2*La"));
        assert_eq!(p("X*X"), p("X^2"));
        assert!("X +".parse::<MultiPoly>().is_err());
        assert!("Y".parse::<MultiPoly>().is_err());
        assert!("".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn calculus_and_division() {
        let f = p("X^3*Lc + 2*X*La + Lb");
        assert_eq!(f.derivative(Var::X), p("3*X^2*Lc + 2*La"));
        assert_eq!(f.antiderivative(Var::X).derivative(Var::X), f);
        assert_eq!(p("La*Lc + Lc^2").div_by_var(Var::Lc), Some(p("La + Lc")));
        assert_eq!(p("La*Lc + 1").div_by_var(Var::Lc), None);
    }

    #[test]
    fn homogeneous_substitution() {
        // X^2 + X + 1 with X -> a/b at weight 2 gives a^2 + ab + b^2
        let f = p("X^2 + X + 1");
        let g = f.homogeneous_substitute(Var::X, &p("La"), &p("Lb"), 2);
        assert_eq!(g, p("La^2 + La*Lb + Lb^2"));
        let h = p("X").homogeneous_substitute(Var::X, &p("La"), &p("Lb"), 3);
        assert_eq!(h, p("La*Lb^2"));
    }

    #[test]
    fn coefficients_and_degrees() {
        let f = p("X^2*Lc^2 + X*La + Lb");
        assert_eq!(f.degree_in(Var::X), 2);
        assert_eq!(f.total_degree(), 4);
        assert_eq!(f.coefficients_in(Var::X), vec![p("Lb"), p("La"), p("Lc^2")]);
        assert!(p("La^2 + La*Lb").is_homogeneous_in(&[Var::La, Var::Lb], 2));
        assert_eq!(p("5").as_constant(), Some(q("5")));
        assert_eq!(p("X").as_constant(), None);
    }
}
