//! Generalized poly-Bernoulli numbers `B_n^(k)(a,b)` and polynomials
//! `B_n^(k)(x,a,b)`, `B_n^(k)(x,a,b,c)`, defined by
//!
//! ```text
//! Li_k(1 - (ab)^{-t}) / (b^t - a^{-t}) * c^{xt} = sum_n B_n^(k)(x,a,b,c) t^n / n!
//! ```
//!
//! The parameters enter only through `La = ln a`, `Lb = ln b`, `Lc = ln c`,
//! kept as formal symbols, so every value is an exact [`MultiPoly`].
//! Arguments of the form `-Lb/(La+Lb)` are never built as fractions: the
//! polynomial in `X` is substituted homogeneously and the `(La+Lb)^n`
//! prefactor absorbs the denominator.
//!
//! The generating function itself is only expanded after specializing
//! `(La, Lb)` to a rational point, because the shifted denominator
//! `La + Lb` is not a unit in the polynomial ring.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{binomial, factorial, ArithError, Bindings, MultiPoly, Point, Rational, Var};
use crate::euler::{euler_polys, gen_euler_polys, shift_x, unit_a_equal_bc};
use crate::numbers::{
    bernoulli_polys, classical_bernoulli_numbers, poly_bernoulli, poly_bernoulli_negative,
    poly_bernoulli_poly, stirling2, x_power,
};
use crate::report::{Checker, IdentityId, IdentityReport};
use crate::series::{
    gf_iterated_integral, gf_poly_bernoulli, polylog_series, ps_compose, ps_div, ps_exp_linear,
    PowerSeries, SeriesError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("degenerate parameter point: ln a + ln b = 0")]
    DegenerateParameters,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{0} is not divisible by Lc")]
    NotDivisibleByLc(MultiPoly),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `B_n^(k)(a,b)`, in `La, Lb`.
    Numbers,
    /// `B_n^(k)(x,a,b)`, i.e. `c = e`.
    PolyAb,
    /// `B_n^(k)(x,a,b,c)`.
    PolyAbc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPolyBern {
    pub n: u32,
    pub k: i64,
    pub variant: Variant,
    pub value: MultiPoly,
}

impl GenPolyBern {
    pub fn new(n: u32, k: i64, variant: Variant) -> Self {
        let value = match variant {
            Variant::Numbers => gen_pb_numbers(n, k),
            Variant::PolyAb => gen_pb_poly(n, k).substitute(&Bindings::new().bind(Var::Lc, 1)),
            Variant::PolyAbc => gen_pb_poly(n, k),
        };
        GenPolyBern {
            n,
            k,
            variant,
            value,
        }
    }

    /// Structural invariants of the value for its variant.
    pub fn is_well_formed(&self) -> bool {
        let v = &self.value;
        match self.variant {
            Variant::Numbers => {
                v.degree_in(Var::X) == 0
                    && v.degree_in(Var::Lc) == 0
                    && v.is_homogeneous_in(&[Var::La, Var::Lb], self.n)
            }
            Variant::PolyAb => v.degree_in(Var::X) <= self.n && v.degree_in(Var::Lc) == 0,
            Variant::PolyAbc => {
                v.degree_in(Var::X) <= self.n
                    && v.coefficients_in(Var::X)
                        .iter()
                        .enumerate()
                        .all(|(j, c)| c.terms().all(|(m, _)| m.exponent(Var::Lc) >= j as u32))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Memo {
    Numbers,
    Poly,
}

/// Values are pure functions of `(n, k)`; a racing duplicate insert stores
/// an equal value.
fn memoized(kind: Memo, n: u32, k: i64, build: impl FnOnce() -> MultiPoly) -> MultiPoly {
    type Table = RwLock<HashMap<(Memo, u32, i64), MultiPoly>>;
    static TABLE: OnceLock<Table> = OnceLock::new();
    let table = TABLE.get_or_init(Table::default);
    if let Some(v) = table.read().unwrap().get(&(kind, n, k)) {
        return v.clone();
    }
    let value = build();
    table.write().unwrap().insert((kind, n, k), value.clone());
    value
}

fn la_plus_lb() -> MultiPoly {
    &MultiPoly::var(Var::La) + &MultiPoly::var(Var::Lb)
}

fn lb() -> MultiPoly {
    MultiPoly::var(Var::Lb)
}

fn lc() -> MultiPoly {
    MultiPoly::var(Var::Lc)
}

fn signed(c: Rational, negative: bool) -> Rational {
    if negative {
        -c
    } else {
        c
    }
}

/// `B_n^(k)(a,b) = (La+Lb)^n B_n^(k)(-Lb/(La+Lb))`, as a homogeneous
/// substitution into the poly-Bernoulli polynomial.
pub fn gen_pb_numbers(n: u32, k: i64) -> MultiPoly {
    memoized(Memo::Numbers, n, k, || {
        poly_bernoulli_poly(n, k).homogeneous_substitute(Var::X, &-lb(), &la_plus_lb(), n)
    })
}

/// `sum_{i=0}^n (-1)^(n-i) (La+Lb)^i Lb^(n-i) C(n,i) B_i^(k)`, built
/// directly from the numbers.
pub fn gen_pb_numbers_expanded(n: u32, k: i64) -> MultiPoly {
    let s = la_plus_lb();
    (0..=n).fold(MultiPoly::zero(), |acc, i| {
        let c = signed(binomial(n, i) * poly_bernoulli(i, k), (n - i) % 2 == 1);
        acc + (&s.pow(i) * &lb().pow(n - i)).scale(&c)
    })
}

/// The sum as typeset in the theorem statement: lower index 1 and
/// `B_n^(k)` inside the summand.
fn gen_pb_numbers_as_printed(n: u32, k: i64) -> MultiPoly {
    let s = la_plus_lb();
    let b = poly_bernoulli(n, k);
    (1..=n).fold(MultiPoly::zero(), |acc, i| {
        let c = signed(binomial(n, i) * &b, (n - i) % 2 == 1);
        acc + (&s.pow(i) * &lb().pow(n - i)).scale(&c)
    })
}

/// `B_n^(k)(x;a,b,c) = sum_l C(n,l) Lc^(n-l) B_l^(k)(a,b) X^(n-l)`.
pub fn gen_pb_poly(n: u32, k: i64) -> MultiPoly {
    memoized(Memo::Poly, n, k, || {
        (0..=n).fold(MultiPoly::zero(), |acc, l| {
            let xc = &MultiPoly::term(binomial(n, l), x_power(n - l)) * &lc().pow(n - l);
            acc + &xc * &gen_pb_numbers(l, k)
        })
    })
}

/// `(La+Lb)^n B_n^(k)((-Lb + X Lc)/(La+Lb))`, read homogeneously.
pub fn gen_pb_poly_shifted_argument(n: u32, k: i64) -> MultiPoly {
    let arg = &-lb() + &(&MultiPoly::var(Var::X) * &lc());
    poly_bernoulli_poly(n, k).homogeneous_substitute(Var::X, &arg, &la_plus_lb(), n)
}

/// `sum_l C(n,l) Lc^(n-l) [B_l^(k)(-Lb/(La+Lb)) (La+Lb)^l] X^(n-l)`.
pub fn gen_pb_poly_via_shifted_numbers(n: u32, k: i64) -> MultiPoly {
    (0..=n).fold(MultiPoly::zero(), |acc, l| {
        let inner =
            poly_bernoulli_poly(l, k).homogeneous_substitute(Var::X, &-lb(), &la_plus_lb(), l);
        let xc = &MultiPoly::term(binomial(n, l), x_power(n - l)) * &lc().pow(n - l);
        acc + &xc * &inner
    })
}

/// Double sum over `B_j^(k)` only:
/// `sum_l sum_j (-1)^(l-j) C(n,l) C(l,j) Lc^(n-l) Lb^(l-j) (La+Lb)^j B_j^(k) X^(n-l)`.
pub fn gen_pb_poly_double_sum(n: u32, k: i64) -> MultiPoly {
    let s = la_plus_lb();
    let mut out = MultiPoly::zero();
    for l in 0..=n {
        let outer = &MultiPoly::term(binomial(n, l), x_power(n - l)) * &lc().pow(n - l);
        for j in 0..=l {
            let c = signed(binomial(l, j) * poly_bernoulli(j, k), (l - j) % 2 == 1);
            let inner = (&lb().pow(l - j) * &s.pow(j)).scale(&c);
            out = out + &outer * &inner;
        }
    }
    out
}

fn check_point(la: &Rational, lb: &Rational) -> Result<(), GenError> {
    if (la + lb).is_zero() {
        Err(GenError::DegenerateParameters)
    } else {
        Ok(())
    }
}

/// `Li_k(1 - (ab)^{-t}) / (b^t - a^{-t})` at rational `(La, Lb)`.
fn gf_generalized_at(
    k: i64,
    la: &Rational,
    lb: &Rational,
    order: usize,
) -> Result<PowerSeries<Rational>, GenError> {
    check_point(la, lb)?;
    let work = order + 1;
    let s = la + lb;
    let u = PowerSeries::one(work).sub(&ps_exp_linear(&-&s, work));
    let num = ps_compose(&polylog_series(k, work), &u)?;
    let den = ps_exp_linear(lb, work).sub(&ps_exp_linear(&-la, work));
    Ok(ps_div(&num, &den)?.truncate(order))
}

/// `n! [t^n]` of the generating function at `(La, Lb)`, for `n <= n_max`.
pub fn gen_pb_numbers_oracle(
    n_max: u32,
    k: i64,
    la: &Rational,
    lb: &Rational,
) -> Result<Vec<Rational>, GenError> {
    let g = gf_generalized_at(k, la, lb, n_max as usize)?;
    Ok((0..=n_max as usize).map(|i| g.egf_coeff(i)).collect())
}

/// Same as [`gen_pb_numbers_oracle`] with the extra factor `c^{xt}`.
/// `point` must bind `X`, `La`, `Lb`, `Lc`.
pub fn gen_pb_poly_oracle(n_max: u32, k: i64, point: &Point) -> Result<Vec<Rational>, GenError> {
    let series = gen_pb_poly_series(n_max as usize, k, point)?;
    Ok((0..=n_max as usize).map(|i| series.egf_coeff(i)).collect())
}

/// The generating series of `B_n^(k)(x,a,b,c)` at a fully rational point.
pub fn gen_pb_poly_series(
    order: usize,
    k: i64,
    point: &Point,
) -> Result<PowerSeries<Rational>, GenError> {
    let get = |v: Var| point.get(v).cloned().ok_or(ArithError::UnboundVariable(v));
    let (x, la, lb, lc) = (get(Var::X)?, get(Var::La)?, get(Var::Lb)?, get(Var::Lc)?);
    let g = gf_generalized_at(k, &la, &lb, order)?;
    Ok(g.mul(&ps_exp_linear(&(&x * &lc), order)))
}

/// `d^l/dX^l B_n^(k)(X,a,b,c)`, taken termwise.
pub fn pb_derivative(n: u32, k: i64, l: u32) -> MultiPoly {
    let mut p = gen_pb_poly(n, k);
    for _ in 0..l {
        p = p.derivative(Var::X);
    }
    debug_assert_eq!(p, pb_derivative_closed_form(n, k, l));
    p
}

/// `n!/(n-l)! Lc^l B_{n-l}^(k)(X,a,b,c)`, zero for `l > n`.
pub fn pb_derivative_closed_form(n: u32, k: i64, l: u32) -> MultiPoly {
    if l > n {
        return MultiPoly::zero();
    }
    let falling = Rational::from_bigint(factorial(n) / factorial(n - l));
    (&gen_pb_poly(n - l, k) * &lc().pow(l)).scale(&falling)
}

fn at_x(p: &MultiPoly, x: &Rational) -> MultiPoly {
    p.substitute(&Bindings::new().bind(Var::X, x.clone()))
}

/// `integral_alpha^beta B_n^(k)(x,a,b,c) dx` by termwise antidifferentiation.
pub fn pb_definite_integral(n: u32, k: i64, alpha: &Rational, beta: &Rational) -> MultiPoly {
    let anti = gen_pb_poly(n, k).antiderivative(Var::X);
    &at_x(&anti, beta) - &at_x(&anti, alpha)
}

/// `[B_{n+1}^(k)(beta) - B_{n+1}^(k)(alpha)] / ((n+1) Lc)`, with the
/// division by `Lc` done as exact polynomial division.
pub fn pb_integral_closed_form(
    n: u32,
    k: i64,
    alpha: &Rational,
    beta: &Rational,
) -> Result<MultiPoly, GenError> {
    let p = gen_pb_poly(n + 1, k);
    let diff = &at_x(&p, beta) - &at_x(&p, alpha);
    let quotient = diff
        .div_by_var(Var::Lc)
        .ok_or(GenError::NotDivisibleByLc(diff))?;
    let inv = Rational::new(1, i64::from(n) + 1).expect("n + 1 > 0");
    Ok(quotient.scale(&inv))
}

/// Knobs shared by the verification routines.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Seed for the random rational evaluation points.
    pub seed: u64,
    /// Number of random points per oracle comparison.
    pub points: usize,
    /// Extra series coefficients beyond `n_max` in oracle expansions.
    pub order_margin: usize,
    /// Values of the second argument `y`.
    pub ys: Vec<Rational>,
    /// Integration bounds `(alpha, beta)`.
    pub bounds: Vec<(Rational, Rational)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let q = |s: &str| s.parse::<Rational>().expect("literal");
        VerifyOptions {
            seed: 42,
            points: 3,
            order_margin: 2,
            ys: vec![q("0"), q("1/2"), q("-1/3")],
            bounds: vec![
                (q("0"), q("1")),
                (q("-1/2"), q("1/3")),
                (q("2/5"), q("2/5")),
            ],
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-9i64..=9);
    let den = rng.random_range(1i64..=9);
    Rational::new(num, den).expect("den >= 1")
}

/// Seeded points binding all four indeterminates, with `La + Lb != 0`.
pub fn random_points(seed: u64, count: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = random_rational(&mut rng);
        let la = random_rational(&mut rng);
        let lb = random_rational(&mut rng);
        let lc = random_rational(&mut rng);
        if !(&la + &lb).is_zero() {
            out.push(Point::total(x, la, lb, lc));
        }
    }
    out
}

fn describe_point(p: &Point) -> String {
    let show = |v: Var| p.get(v).map(|r| r.to_string()).unwrap_or_default();
    format!(
        "X={} La={} Lb={} Lc={}",
        show(Var::X),
        show(Var::La),
        show(Var::Lb),
        show(Var::Lc)
    )
}

/// Eval for points built by [`random_points`], which bind every symbol.
fn eval_total(p: &MultiPoly, point: &Point) -> MultiPoly {
    MultiPoly::constant(p.eval(point).expect("total point"))
}

/// Every identity of the first family, over `0 <= n <= n_max`, `k in ks`.
pub fn verify_theorem1(n_max: u32, ks: &[i64], opts: &VerifyOptions) -> Vec<IdentityReport> {
    let order = n_max as usize + opts.order_margin;
    let points = random_points(opts.seed, opts.points.max(3));
    let mut t11 = Checker::new(IdentityId::T1_11, n_max, ks).order(order);
    let mut t12 = Checker::new(IdentityId::T1_12, n_max, ks);
    let mut t13 = Checker::new(IdentityId::T1_13, n_max, ks).order(order);
    let mut t14 = Checker::new(IdentityId::T1_14, n_max, ks);
    let mut t15 = Checker::new(IdentityId::T1_15, n_max, ks);
    let mut t16 = Checker::new(IdentityId::T1_16, n_max, ks);

    let plus_one = shift_x(MultiPoly::one());
    let shift_ab = Bindings::new()
        .bind(Var::La, &MultiPoly::var(Var::La) + &lc())
        .bind(Var::Lb, &lb() - &lc());
    let t_slot = Bindings::new()
        .bind(Var::La, &MultiPoly::one() + &MultiPoly::var(Var::X))
        .bind(Var::Lb, -MultiPoly::var(Var::X));
    let a_e_b_1_c_e = Bindings::new()
        .bind(Var::La, 1)
        .bind(Var::Lb, 0)
        .bind(Var::Lc, 1);
    let doubled = Bindings::new()
        .bind(
            Var::La,
            MultiPoly::var(Var::La).scale(&Rational::from_int(2)),
        )
        .bind(Var::Lb, lb().scale(&Rational::from_int(2)));
    let x_zero = Bindings::new().bind(Var::X, 0);

    let mut printed_mismatch: Option<(u32, i64)> = None;
    for &k in ks {
        let mut oracle_numbers = Vec::new();
        let mut oracle_polys = Vec::new();
        for p in &points {
            let (la, lbv) = (p.get(Var::La).unwrap(), p.get(Var::Lb).unwrap());
            oracle_numbers.push(gen_pb_numbers_oracle(order as u32, k, la, lbv));
            oracle_polys.push(gen_pb_poly_oracle(order as u32, k, p));
        }
        for n in 0..=n_max {
            let numbers = gen_pb_numbers(n, k);
            let poly = gen_pb_poly(n, k);
            let pb_poly = poly_bernoulli_poly(n, k);

            let scaled = numbers.scale(&Rational::from_int(2).pow(i64::from(n)).expect("2 != 0"));
            t11.check(
                n,
                k,
                || "homogeneous of degree n in La, Lb".into(),
                &numbers.substitute(&doubled),
                &scaled,
            );
            for (p, oracle) in points.iter().zip(&oracle_numbers) {
                let ctx = || describe_point(p);
                match oracle {
                    Ok(vals) => t11.check(
                        n,
                        k,
                        ctx,
                        &eval_total(&numbers, p),
                        &MultiPoly::constant(vals[n as usize].clone()),
                    ),
                    Err(e) => t11.fail(n, k, format!("{}: {e}", ctx())),
                }
            }

            t12.check(n, k, String::new, &numbers, &gen_pb_numbers_expanded(n, k));
            if printed_mismatch.is_none() && gen_pb_numbers_as_printed(n, k) != numbers {
                printed_mismatch = Some((n, k));
            }

            t13.check(n, k, || "X = 0".into(), &poly.substitute(&x_zero), &numbers);
            for (p, oracle) in points.iter().zip(&oracle_polys) {
                let ctx = || describe_point(p);
                match oracle {
                    Ok(vals) => t13.check(
                        n,
                        k,
                        ctx,
                        &eval_total(&poly, p),
                        &MultiPoly::constant(vals[n as usize].clone()),
                    ),
                    Err(e) => t13.fail(n, k, format!("{}: {e}", ctx())),
                }
            }

            t14.check(
                n,
                k,
                String::new,
                &poly.substitute(&plus_one),
                &poly.substitute(&shift_ab),
            );

            t15.check(
                n,
                k,
                || "a = e^(T+1), b = e^(-T), T carried by X".into(),
                &numbers.substitute(&t_slot),
                &pb_poly,
            );
            t15.check(
                n,
                k,
                || "a = e, b = 1, c = e".into(),
                &poly.substitute(&a_e_b_1_c_e),
                &pb_poly,
            );

            t16.check(
                n,
                k,
                String::new,
                &poly,
                &gen_pb_poly_shifted_argument(n, k),
            );
        }
    }
    if let Some((n, k)) = printed_mismatch {
        t12.note(format!(
            "typeset sum (lower index 1, summand B_n) disagrees first at n={n} k={k}; the sum from i=0 over B_i is the one checked"
        ));
    }
    vec![
        t11.finish(),
        t12.finish(),
        t13.finish(),
        t14.finish(),
        t15.finish(),
        t16.finish(),
    ]
}

/// A polynomial in an auxiliary indeterminate `Y` with [`MultiPoly`]
/// coefficients; index `i` holds the coefficient of `Y^i`.
type YPoly = Vec<MultiPoly>;

fn ypoly_add(a: &mut YPoly, power: usize, c: &MultiPoly) {
    if a.len() <= power {
        a.resize(power + 1, MultiPoly::zero());
    }
    a[power] = &a[power] + c;
}

fn ypoly_trim(mut a: YPoly) -> YPoly {
    while a.last().is_some_and(MultiPoly::is_zero) {
        a.pop();
    }
    a
}

/// `p(X + Y)`.
fn shift_x_by_y(p: &MultiPoly) -> YPoly {
    let mut out = Vec::new();
    for (j, pj) in p.coefficients_in(Var::X).iter().enumerate() {
        for i in 0..=j {
            let c = &MultiPoly::term(binomial(j as u32, i as u32), x_power((j - i) as u32)) * pj;
            ypoly_add(&mut out, i, &c);
        }
    }
    ypoly_trim(out)
}

/// Addition formula in the argument, with `y` both rational and symbolic.
pub fn verify_theorem2(n_max: u32, ks: &[i64], opts: &VerifyOptions) -> Vec<IdentityReport> {
    let mut rep = Checker::new(IdentityId::T2_17, n_max, ks);
    let x0: Rational = "1/2".parse().expect("literal");
    let y0: Rational = "-1/3".parse().expect("literal");
    for &k in ks {
        let polys: Vec<MultiPoly> = (0..=n_max).map(|n| gen_pb_poly(n, k)).collect();
        for n in 0..=n_max {
            let whole = &polys[n as usize];
            let weight = |l: u32| &MultiPoly::constant(binomial(n, l)) * &lc().pow(n - l);

            for y in &opts.ys {
                let lhs = whole.substitute(&shift_x(MultiPoly::constant(y.clone())));
                let in_y = (0..=n).fold(MultiPoly::zero(), |acc, l| {
                    let ypow = y.pow(i64::from(n - l)).expect("non-negative power");
                    acc + (&weight(l) * &polys[l as usize]).scale(&ypow)
                });
                let in_x = (0..=n).fold(MultiPoly::zero(), |acc, l| {
                    let xpow = MultiPoly::term(Rational::one(), x_power(n - l));
                    acc + &(&weight(l) * &at_x(&polys[l as usize], y)) * &xpow
                });
                rep.check(n, k, || format!("y={y}"), &lhs, &in_y);
                rep.check(
                    n,
                    k,
                    || format!("y={y}, roles of x and y exchanged"),
                    &lhs,
                    &in_x,
                );
            }

            // symbolic y as an auxiliary indeterminate Y
            let lhs = shift_x_by_y(whole);
            let mut in_y: YPoly = Vec::new();
            let mut in_x: YPoly = Vec::new();
            for l in 0..=n {
                let w = weight(l);
                ypoly_add(&mut in_y, (n - l) as usize, &(&w * &polys[l as usize]));
                let xpow = MultiPoly::term(Rational::one(), x_power(n - l));
                for (i, c) in polys[l as usize].coefficients_in(Var::X).iter().enumerate() {
                    ypoly_add(&mut in_x, i, &(&(&w * c) * &xpow));
                }
            }
            let (in_y, in_x) = (ypoly_trim(in_y), ypoly_trim(in_x));
            for (i, lhs_i) in lhs.iter().enumerate() {
                let zero = MultiPoly::zero();
                let ctx = || format!("symbolic y, coefficient of y^{i}");
                rep.check(n, k, ctx, lhs_i, in_y.get(i).unwrap_or(&zero));
                rep.check(n, k, ctx, lhs_i, in_x.get(i).unwrap_or(&zero));
            }
            if lhs.len() != in_y.len() || lhs.len() != in_x.len() {
                rep.fail(n, k, "symbolic y, degree mismatch in y");
            }

            // both sides at a rational pair (x0, y0)
            let first = (0..=n).fold(MultiPoly::zero(), |acc, l| {
                let ypow = y0.pow(i64::from(n - l)).expect("non-negative power");
                acc + (&weight(l) * &at_x(&polys[l as usize], &x0)).scale(&ypow)
            });
            let second = (0..=n).fold(MultiPoly::zero(), |acc, l| {
                let xpow = x0.pow(i64::from(n - l)).expect("non-negative power");
                acc + (&weight(l) * &at_x(&polys[l as usize], &y0)).scale(&xpow)
            });
            rep.check(n, k, || format!("x={x0}, y={y0}"), &first, &second);
            rep.check(
                n,
                k,
                || format!("x={x0}, y={y0} against B_n(x+y)"),
                &first,
                &at_x(whole, &(&x0 + &y0)),
            );
        }
    }
    vec![rep.finish()]
}

/// The single and double sum expansions against [`gen_pb_poly`].
pub fn verify_theorem3(n_max: u32, ks: &[i64]) -> Vec<IdentityReport> {
    let mut t18 = Checker::new(IdentityId::T3_18, n_max, ks);
    let mut t19 = Checker::new(IdentityId::T3_19, n_max, ks);
    t19.note("final factor taken as X^(n-l); the typeset X^(n-k) does not depend on the summation indices");
    for &k in ks {
        for n in 0..=n_max {
            let poly = gen_pb_poly(n, k);
            t18.check(
                n,
                k,
                String::new,
                &poly,
                &gen_pb_poly_via_shifted_numbers(n, k),
            );
            t19.check(n, k, String::new, &poly, &gen_pb_poly_double_sum(n, k));
        }
    }
    vec![t18.finish(), t19.finish()]
}

/// Derivatives for `0 <= l <= n+1` and definite integrals over
/// `opts.bounds`.
pub fn verify_theorem4(n_max: u32, ks: &[i64], opts: &VerifyOptions) -> Vec<IdentityReport> {
    let mut t20 = Checker::new(IdentityId::T4_20, n_max, ks);
    let mut t21 = Checker::new(IdentityId::T4_21, n_max, ks);
    for &k in ks {
        for n in 0..=n_max {
            let mut p = gen_pb_poly(n, k);
            for l in 0..=n + 1 {
                t20.check(
                    n,
                    k,
                    || format!("l={l}"),
                    &p,
                    &pb_derivative_closed_form(n, k, l),
                );
                p = p.derivative(Var::X);
            }
            for (alpha, beta) in &opts.bounds {
                let ctx = || format!("alpha={alpha} beta={beta}");
                let lhs = pb_definite_integral(n, k, alpha, beta);
                match pb_integral_closed_form(n, k, alpha, beta) {
                    Ok(rhs) => t21.check(n, k, ctx, &lhs, &rhs),
                    Err(e) => t21.fail(n, k, format!("{}: {e}", ctx())),
                }
            }
        }
    }
    vec![t20.finish(), t21.finish()]
}

/// Expansion of `B_n^(k1)(x+y,1,b,b)` over generalized Euler polynomials,
/// symbolic in `X` and `Lb`, for each `y` in `opts.ys` and `k1` in `k1s`.
pub fn verify_theorem5(n_max: u32, k1s: &[i64], opts: &VerifyOptions) -> Vec<IdentityReport> {
    let mut rep = Checker::new(IdentityId::T5, n_max, k1s);
    let special = unit_a_equal_bc();
    let euler: Vec<MultiPoly> = gen_euler_polys(n_max)
        .iter()
        .map(|e| e.substitute(&special))
        .collect();
    let half = Rational::new(1, 2).expect("literal");
    let mut printed_mismatch: Option<(u32, i64)> = None;
    for &k1 in k1s {
        let polys: Vec<MultiPoly> = (0..=n_max)
            .map(|n| gen_pb_poly(n, k1).substitute(&special))
            .collect();
        for n in 0..=n_max {
            for y in &opts.ys {
                let y1 = y + Rational::one();
                let lhs = polys[n as usize].substitute(&shift_x(MultiPoly::constant(y.clone())));
                let pair = |i: u32| &at_x(&polys[i as usize], y) + &at_x(&polys[i as usize], &y1);
                let rhs = (0..=n).fold(MultiPoly::zero(), |acc, i| {
                    acc + (&pair(i) * &euler[(n - i) as usize]).scale(&(binomial(n, i) * &half))
                });
                rep.check(n, k1, || format!("y={y}"), &lhs, &rhs);

                let printed = (0..=n).fold(MultiPoly::zero(), |acc, i| {
                    acc + (&pair(n) * &euler[(n - i) as usize]).scale(&(binomial(n, i) * &half))
                });
                if printed_mismatch.is_none() && printed != lhs {
                    printed_mismatch = Some((n, k1));
                }
            }
        }
    }
    if let Some((n, k)) = printed_mismatch {
        rep.note(format!(
            "typeset summand B_n(y)+B_n(y+1) disagrees first at n={n} k={k}; the summand B_i(y)+B_i(y+1) is the one checked"
        ));
    }
    vec![rep.finish()]
}

/// `B_n(x) = sum_{k != 1} C(n,k) B_k E_{n-k}(x)` with `B_1 = -1/2`.
pub fn verify_corollary1(n_max: u32) -> Vec<IdentityReport> {
    let mut rep = Checker::new(IdentityId::C1, n_max, &[1]);
    let bern = bernoulli_polys(n_max);
    let nums = classical_bernoulli_numbers(n_max);
    let euler = euler_polys(n_max);
    for n in 0..=n_max {
        let rhs = (0..=n)
            .filter(|&k| k != 1)
            .fold(MultiPoly::zero(), |acc, k| {
                acc + euler[(n - k) as usize].scale(&(binomial(n, k) * &nums[k as usize]))
            });
        rep.check(n, 1, String::new, &bern[n as usize], &rhs);
    }
    vec![rep.finish()]
}

/// Alternating-sum form of `S(n, m)`, independent of the recurrence.
fn stirling2_alternating(n: u32, m: u32) -> Rational {
    let sum: Rational = (0..=m)
        .map(|l| {
            let term = binomial(m, l)
                * Rational::from_int(i64::from(l))
                    .pow(i64::from(n))
                    .expect("l^n");
            signed(term, l % 2 == 1)
        })
        .sum();
    let scaled = signed(sum, m % 2 == 1);
    scaled
        .checked_div(&Rational::from_bigint(factorial(m)))
        .expect("m! > 0")
}

/// Closed forms against generating-function expansions: the Stirling sum
/// for every `k in ks`, the double-Stirling form for `k <= 0` (with its
/// `n <-> k` symmetry), the nested-integral series for `k >= 1`, and the
/// alternating-sum Stirling numbers.
pub fn verify_oracle(n_max: u32, ks: &[i64], opts: &VerifyOptions) -> Vec<IdentityReport> {
    let order = n_max as usize + opts.order_margin;
    let mut rep = Checker::new(IdentityId::Oracle, n_max, ks).order(order);
    for n in 0..=n_max {
        for m in 0..=n {
            let rec = MultiPoly::constant(Rational::from_bigint(stirling2(n, m)));
            rep.check(
                n,
                0,
                || format!("S({n},{m}) alternating sum"),
                &rec,
                &MultiPoly::constant(stirling2_alternating(n, m)),
            );
        }
    }
    for &k in ks {
        let gf = gf_poly_bernoulli(k, order);
        let nested = (k >= 1).then(|| gf_iterated_integral(k, order));
        for n in 0..=n_max {
            let closed = MultiPoly::constant(poly_bernoulli(n, k));
            rep.check(
                n,
                k,
                || "series coefficient".into(),
                &closed,
                &MultiPoly::constant(gf.egf_coeff(n as usize)),
            );
            if k <= 0 {
                let neg = poly_bernoulli_negative(n, k.unsigned_abs() as u32);
                rep.check(
                    n,
                    k,
                    || "double-Stirling form".into(),
                    &closed,
                    &MultiPoly::constant(neg.clone()),
                );
                let dual = poly_bernoulli_negative(k.unsigned_abs() as u32, n);
                rep.check(
                    n,
                    k,
                    || "n <-> k symmetry".into(),
                    &MultiPoly::constant(neg.clone()),
                    &MultiPoly::constant(dual),
                );
                if !neg.is_integer() || neg.is_negative() || neg.is_zero() {
                    rep.fail(n, k, format!("value {neg} is not a positive integer"));
                }
            }
            match &nested {
                Some(Ok(s)) => rep.check(
                    n,
                    k,
                    || "nested integrals".into(),
                    &closed,
                    &MultiPoly::constant(s.egf_coeff(n as usize)),
                ),
                Some(Err(e)) => rep.fail(n, k, e.to_string()),
                None => {}
            }
        }
    }
    vec![rep.finish()]
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
    fn numbers_examples() {
        for k in -3..=3 {
            assert_eq!(gen_pb_numbers(0, k), MultiPoly::one());
        }
        // (La+Lb)/2^k - Lb
        assert_eq!(gen_pb_numbers(1, 2), p("1/4*La - 3/4*Lb"));
        assert_eq!(gen_pb_numbers(1, -1), p("2*La + Lb"));
        let at = Bindings::new().bind(Var::La, 1).bind(Var::Lb, 0);
        for n in 0..8 {
            assert_eq!(
                gen_pb_numbers(n, 1).substitute(&at),
                MultiPoly::constant(poly_bernoulli(n, 1))
            );
        }
    }

    #[test]
    fn eval_of_a_small_value() {
        let pt = Point::new().bind(Var::La, q("1")).bind(Var::Lb, q("1"));
        assert_eq!(gen_pb_numbers(1, 4).eval(&pt).unwrap(), q("-7/8"));
    }

    #[test]
    fn expanded_and_printed_sums() {
        for n in 0..6 {
            assert_eq!(gen_pb_numbers(n, 3), gen_pb_numbers_expanded(n, 3));
        }
        assert!(gen_pb_numbers_as_printed(0, 2).is_zero());
    }

    #[test]
    fn oracle_examples() {
        let vals = gen_pb_numbers_oracle(4, 1, &q("1"), &q("0")).unwrap();
        let expected: Vec<Rational> = ["1", "1/2", "1/6", "0", "-1/30"]
            .iter()
            .map(|s| q(s))
            .collect();
        assert_eq!(vals, expected);

        let vals = gen_pb_numbers_oracle(1, 2, &q("1"), &q("1")).unwrap();
        assert_eq!(vals[1], q("-1/2"));

        let (la, lb) = (q("1/2"), q("1/3"));
        let vals = gen_pb_numbers_oracle(6, -1, &la, &lb).unwrap();
        let pt = Point::new().bind(Var::La, la).bind(Var::Lb, lb);
        for n in 0..=6 {
            assert_eq!(gen_pb_numbers(n, -1).eval(&pt).unwrap(), vals[n as usize]);
        }
    }

    #[test]
    fn oracle_rejects_degenerate_point() {
        assert_eq!(
            gen_pb_numbers_oracle(3, 1, &q("2/3"), &q("-2/3")),
            Err(GenError::DegenerateParameters)
        );
    }

    #[test]
    fn poly_examples() {
        assert_eq!(gen_pb_poly(1, 2), p("X*Lc + 1/4*La - 3/4*Lb"));
        assert_eq!(gen_pb_poly(0, 5), MultiPoly::one());
        let x0 = Bindings::new().bind(Var::X, 0);
        for n in 0..6 {
            assert_eq!(gen_pb_poly(n, -2).substitute(&x0), gen_pb_numbers(n, -2));
        }
        let t_slot = Bindings::new()
            .bind(Var::La, p("1 + X"))
            .bind(Var::Lb, p("-X"));
        for n in 0..=8 {
            assert_eq!(
                gen_pb_poly(n, 2).substitute(&x0).substitute(&t_slot),
                poly_bernoulli_poly(n, 2)
            );
        }
    }

    #[test]
    fn variants_are_well_formed() {
        for n in 0..6 {
            for k in [-2, 0, 3] {
                for v in [Variant::Numbers, Variant::PolyAb, Variant::PolyAbc] {
                    let g = GenPolyBern::new(n, k, v);
                    assert!(g.is_well_formed(), "{g:?}");
                }
            }
        }
        let ab = GenPolyBern::new(1, 2, Variant::PolyAb);
        assert_eq!(ab.value, p("X + 1/4*La - 3/4*Lb"));
    }

    #[test]
    fn shift_identity_at_n_one() {
        let k = 3;
        let poly = gen_pb_poly(1, k);
        let left = poly.substitute(&shift_x(MultiPoly::one()));
        let right = poly.substitute(
            &Bindings::new()
                .bind(Var::La, p("La + Lc"))
                .bind(Var::Lb, p("Lb - Lc")),
        );
        assert_eq!(left, right);
        assert_eq!(left, p("X*Lc + 1/8*La - 7/8*Lb + Lc"));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(pb_derivative(4, 2, 0), gen_pb_poly(4, 2));
        assert_eq!(pb_derivative(1, -3, 1), p("Lc"));
        assert!(pb_derivative(3, 1, 4).is_zero());
        assert_eq!(
            pb_derivative(5, 1, 1),
            (&gen_pb_poly(4, 1) * &lc()).scale(&q("5"))
        );
    }

    #[test]
    fn integral_examples() {
        assert!(pb_definite_integral(3, 2, &q("1/3"), &q("1/3")).is_zero());
        for k in [-1, 2] {
            assert_eq!(
                pb_definite_integral(0, k, &q("0"), &q("1")),
                MultiPoly::one()
            );
            assert_eq!(
                pb_integral_closed_form(0, k, &q("0"), &q("1")).unwrap(),
                MultiPoly::one()
            );
        }
        let expected = p("1/2*Lc + 1/4*La - 3/4*Lb");
        assert_eq!(pb_definite_integral(1, 2, &q("0"), &q("1")), expected);
        assert_eq!(
            pb_integral_closed_form(1, 2, &q("0"), &q("1")).unwrap(),
            expected
        );
    }

    #[test]
    fn second_argument_examples() {
        // n = 1, y = 2/3: shifting X equals adding Lc*y
        let y = q("2/3");
        let poly = gen_pb_poly(1, 2);
        let lhs = poly.substitute(&shift_x(MultiPoly::constant(y.clone())));
        assert_eq!(lhs, &poly + &lc().scale(&y));
        let ys = shift_x_by_y(&p("X^2"));
        assert_eq!(ys, vec![p("X^2"), p("2*X"), p("1")]);
    }

    #[test]
    fn theorem5_small_case() {
        let special = unit_a_equal_bc();
        let b1 = gen_pb_poly(1, 1).substitute(&special);
        assert_eq!(b1, p("X*Lb - 1/2*Lb"));
        let opts = VerifyOptions {
            ys: vec![q("0")],
            ..Default::default()
        };
        let reports = verify_theorem5(1, &[1], &opts);
        assert!(reports[0].passed(), "{}", reports[0]);
    }

    #[test]
    fn corollary_small_case() {
        let r = &verify_corollary1(4)[0];
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks, 5);
    }

    #[test]
    fn random_points_are_seeded_and_valid() {
        let a = random_points(7, 5);
        assert_eq!(a, random_points(7, 5));
        assert_ne!(a, random_points(8, 5));
        for pt in &a {
            assert!(!(pt.get(Var::La).unwrap() + pt.get(Var::Lb).unwrap()).is_zero());
        }
    }

    #[test]
    fn alternating_stirling() {
        assert_eq!(stirling2_alternating(0, 0), q("1"));
        assert_eq!(stirling2_alternating(3, 2), q("3"));
        assert_eq!(stirling2_alternating(5, 3), q("25"));
    }
}
