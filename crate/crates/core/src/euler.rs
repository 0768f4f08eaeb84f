//! Euler polynomials `E_n(x)` from `2 e^{xt} / (e^t + 1)` and the
//! three-parameter family `E_n(x, a, b, c)` from `2 c^{xt} / (b^t + a^t)`,
//! with `a^t = e^{t La}` and so on.

use crate::arith::{binomial, Bindings, MultiPoly, Rational, Var};
use crate::numbers::x_power;
use crate::report::{Checker, IdentityId, IdentityReport};
use crate::series::{ps_div, ps_exp_linear, PowerSeries};

fn egf_coeffs(s: &PowerSeries<MultiPoly>) -> Vec<MultiPoly> {
    (0..=s.order()).map(|i| s.egf_coeff(i)).collect()
}

/// `E_0(X)..=E_n(X)`.
pub fn euler_polys(n: u32) -> Vec<MultiPoly> {
    let order = n as usize;
    let one = MultiPoly::one();
    let num = ps_exp_linear(&MultiPoly::var(Var::X), order).scale(&Rational::from_int(2));
    let den = ps_exp_linear(&one, order).add(&PowerSeries::one(order));
    egf_coeffs(&ps_div(&num, &den).expect("constant term 2 is a unit"))
}

pub fn euler_poly(n: u32) -> MultiPoly {
    euler_polys(n).pop().expect("non-empty")
}

/// `E_0(X,a,b,c)..=E_n(X,a,b,c)` over `X, La, Lb, Lc`.
pub fn gen_euler_polys(n: u32) -> Vec<MultiPoly> {
    let order = n as usize;
    let x_lc = &MultiPoly::var(Var::X) * &MultiPoly::var(Var::Lc);
    let num = ps_exp_linear(&x_lc, order).scale(&Rational::from_int(2));
    let den = ps_exp_linear(&MultiPoly::var(Var::Lb), order)
        .add(&ps_exp_linear(&MultiPoly::var(Var::La), order));
    egf_coeffs(&ps_div(&num, &den).expect("constant term 2 is a unit"))
}

pub fn gen_euler_poly(n: u32) -> MultiPoly {
    gen_euler_polys(n).pop().expect("non-empty")
}

/// `a = 1`, `b = c = e`.
pub(crate) fn classical_point() -> Bindings {
    Bindings::new()
        .bind(Var::La, 0)
        .bind(Var::Lb, 1)
        .bind(Var::Lc, 1)
}

/// `a = 1`, `c = b`.
pub(crate) fn unit_a_equal_bc() -> Bindings {
    Bindings::new().bind(Var::La, 0).bind(Var::Lc, Var::Lb)
}

pub(crate) fn shift_x(by: MultiPoly) -> Bindings {
    Bindings::new().bind(Var::X, &MultiPoly::var(Var::X) + &by)
}

/// Checks, for `0 <= k <= n_max`:
/// `E1`: `E_k(x+1) = sum_j C(k,j) E_j(x)`;
/// `E2`: `E_k(x+1) + E_k(x) = 2x^k`;
/// `E3`: `E_k(x+1,1,b,b) + E_k(x,1,b,b) = 2 x^k (ln b)^k`.
/// `E1` also checks that the generalized family at `a = 1, b = c = e`
/// reproduces `E_k(x)`.
pub fn verify_euler_identities(n_max: u32) -> Vec<IdentityReport> {
    let classical = euler_polys(n_max);
    let general = gen_euler_polys(n_max);
    let plus_one = shift_x(MultiPoly::one());

    let mut e1 = Checker::new(IdentityId::E1, n_max, &[]);
    let mut e2 = Checker::new(IdentityId::E2, n_max, &[]);
    let mut e3 = Checker::new(IdentityId::E3, n_max, &[]);
    let spec_bc = unit_a_equal_bc();
    let spec_e = classical_point();
    for k in 0..=n_max {
        let ek = &classical[k as usize];
        let shifted = ek.substitute(&plus_one);

        let specialized = general[k as usize].substitute(&spec_e);
        e1.check(
            k,
            0,
            || "generalized family at a=1, b=c=e".into(),
            &specialized,
            ek,
        );
        let sum: MultiPoly = (0..=k).fold(MultiPoly::zero(), |acc, j| {
            acc + classical[j as usize].scale(&binomial(k, j))
        });
        e1.check(k, 0, String::new, &shifted, &sum);

        let two_xk = MultiPoly::term(Rational::from_int(2), x_power(k));
        e2.check(k, 0, String::new, &(&shifted + ek), &two_xk);

        let f = general[k as usize].substitute(&spec_bc);
        let lhs = &f.substitute(&plus_one) + &f;
        let rhs = &two_xk * &MultiPoly::var(Var::Lb).pow(k);
        e3.check(k, 0, String::new, &lhs, &rhs);
    }
    vec![e1.finish(), e2.finish(), e3.finish()]
}
