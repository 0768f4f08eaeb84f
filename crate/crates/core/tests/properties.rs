use proptest::prelude::*;

use polybern::arith::{rat_arith, Bindings, RatOp};
use polybern::generalized::{gen_pb_numbers, gen_pb_poly, pb_derivative};
use polybern::numbers::{poly_bernoulli, poly_bernoulli_negative, poly_bernoulli_poly};
use polybern::series::{
    gf_iterated_integral, gf_poly_bernoulli, ps_compose, ps_div, ps_exp_linear, PowerSeries,
};
use polybern::{MultiPoly, Point, Rational, Var};

const VARS: [Var; 4] = [Var::X, Var::La, Var::Lb, Var::Lc];

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((rational(), prop::array::uniform4(0u32..3)), 0..5).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(), |acc, (c, e)| {
            let mono = VARS.iter().zip(e).fold(MultiPoly::one(), |m, (&v, k)| {
                &m * &MultiPoly::var(v).pow(k)
            });
            acc + mono.scale(&c)
        })
    })
}

fn point() -> impl Strategy<Value = Point> {
    (rational(), rational(), rational(), rational())
        .prop_map(|(x, la, lb, lc)| Point::total(x, la, lb, lc))
}

fn series(order: usize) -> impl Strategy<Value = PowerSeries<Rational>> {
    prop::collection::vec(rational(), order + 1).prop_map(PowerSeries::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
    }

    #[test]
    fn rational_division(a in rational(), b in rational()) {
        let r = rat_arith(RatOp::Div, &a, &b);
        if b.is_zero() {
            prop_assert!(r.is_err());
        } else {
            prop_assert_eq!(&r.unwrap() * &b, a);
        }
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn eval_is_a_ring_map(p in poly(), q in poly(), pt in point()) {
        let (ep, eq) = (p.eval(&pt).unwrap(), q.eval(&pt).unwrap());
        prop_assert_eq!((&p * &q).eval(&pt).unwrap(), &ep * &eq);
        prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &ep + &eq);
    }

    #[test]
    fn identity_substitution(p in poly()) {
        let id = VARS.iter().fold(Bindings::new(), |b, &v| b.bind(v, v));
        prop_assert_eq!(p.substitute(&id), p);
    }

    #[test]
    fn substitution_commutes_with_eval(p in poly(), pt in point()) {
        let consts = VARS.iter().fold(Bindings::new(), |b, &v| {
            b.bind(v, MultiPoly::constant(pt.get(v).unwrap().clone()))
        });
        prop_assert_eq!(p.substitute(&consts).as_constant(), Some(p.eval(&pt).unwrap()));
    }

    #[test]
    fn poly_text_round_trip(p in poly()) {
        prop_assert_eq!(p.to_string().parse::<MultiPoly>().unwrap(), p);
    }

    #[test]
    fn antiderivative_inverts_derivative(p in poly()) {
        prop_assert_eq!(p.antiderivative(Var::X).derivative(Var::X), p);
    }

    #[test]
    fn series_division_round_trip(a in series(8), mut b in series(8), lead in nonzero_rational()) {
        let mut coeffs = b.coeffs().to_vec();
        coeffs[0] = lead;
        b = PowerSeries::from_coeffs(coeffs);
        let quotient = ps_div(&a, &b).unwrap();
        prop_assert_eq!(quotient.mul(&b), a);
    }

    #[test]
    fn composition_is_associative(f in series(6), g in series(6), h in series(6)) {
        let shift = |s: PowerSeries<Rational>| {
            let mut c = s.coeffs().to_vec();
            c[0] = Rational::zero();
            PowerSeries::from_coeffs(c)
        };
        let (g, h) = (shift(g), shift(h));
        let left = ps_compose(&ps_compose(&f, &g).unwrap(), &h).unwrap();
        let right = ps_compose(&f, &ps_compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exponential_is_additive(a in rational(), b in rational()) {
        let lhs = ps_exp_linear(&(&a + &b), 10);
        let rhs = ps_exp_linear(&a, 10).mul(&ps_exp_linear(&b, 10));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nested_integrals_match(k in 1i64..=5, order in 0usize..=12) {
        prop_assert_eq!(gf_iterated_integral(k, order).unwrap(), gf_poly_bernoulli(k, order));
    }

    #[test]
    fn closed_form_matches_series(n in 0u32..=20, k in -5i64..=5) {
        let gf = gf_poly_bernoulli(k, n as usize);
        prop_assert_eq!(gf.egf_coeff(n as usize), poly_bernoulli(n, k));
    }

    #[test]
    fn negative_index_duality(n in 0u32..=12, k in 0u32..=12) {
        let v = poly_bernoulli_negative(n, k);
        prop_assert_eq!(&v, &poly_bernoulli_negative(k, n));
        prop_assert!(v.is_integer() && !v.is_negative() && !v.is_zero());
    }

    #[test]
    fn generalized_reduces_at_a_e_b_1(n in 0u32..=8, k in -3i64..=3) {
        let special = Bindings::new().bind(Var::La, 1).bind(Var::Lb, 0).bind(Var::Lc, 1);
        prop_assert_eq!(gen_pb_numbers(n, k).substitute(&special).as_constant(), Some(poly_bernoulli(n, k)));
        prop_assert_eq!(gen_pb_poly(n, k).substitute(&special), poly_bernoulli_poly(n, k));
    }

    #[test]
    fn first_derivative(n in 1u32..=8, k in -3i64..=3) {
        let want = (&MultiPoly::var(Var::Lc) * &gen_pb_poly(n - 1, k))
            .scale(&Rational::from_int(i64::from(n)));
        prop_assert_eq!(pb_derivative(n, k, 1), want);
    }
}
