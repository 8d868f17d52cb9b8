//! Closed formulas for Cayley component Poincaré polynomials, transcribed
//! term by term with the original grouping. Each evaluates to a rational
//! function in `t`; whether it normalizes to a polynomial is checked by the
//! caller.

use crate::arith::{LaurentPoly, RatFunc, Variable};

fn int(c: i64) -> RatFunc {
    RatFunc::from_int(c)
}

fn frac(n: i64, d: i64) -> RatFunc {
    over(&int(n), &int(d))
}

fn t_pow(e: i64) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::var_pow(Variable::T, e as i32))
}

/// `t^k - 1`.
fn t_minus_one(k: i32) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::var_pow(Variable::T, k) - LaurentPoly::one())
}

/// `t^k + 1`.
fn t_plus_one(k: i32) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::var_pow(Variable::T, k) + LaurentPoly::one())
}

fn pow(f: &RatFunc, e: i64) -> RatFunc {
    f.pow(e as i32).expect("nonzero base")
}

fn over(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.div(b)
        .expect("the formulas only divide by nonzero polynomials")
}

fn sum(terms: &[RatFunc]) -> RatFunc {
    terms.iter().fold(RatFunc::zero(), |acc, x| acc.add(x))
}

/// Cayley components of `SO_0(n, n+2)`, `n` odd:
///
/// ```text
/// t^{(2g-2)(6n-2)} ( t^{(2g-2)(2n-2)} (t^3-1)^{2g} / ((t^4-1)(t^2-1))
///     + (t-1)^{2g}/(t^2-1) * (1/4 + g/(t-1) - 1/(2(t^2-1)) - (n-1)(g-1))
///     - 1/4 * (t-1)^{2g}/(t^2+1) )
/// ```
pub fn so0_nn2_closed(n: u32, g: u32) -> RatFunc {
    let (n, g) = (n as i64, g as i64);
    let tm1 = t_minus_one(1);
    let t2m1 = t_minus_one(2);

    let first = over(
        &t_pow((2 * g - 2) * (2 * n - 2)).mul(&pow(&t_minus_one(3), 2 * g)),
        &t_minus_one(4).mul(&t2m1),
    );
    let bracket = sum(&[
        frac(1, 4),
        over(&int(g), &tm1),
        over(&int(-1), &int(2).mul(&t2m1)),
        int(-(n - 1) * (g - 1)),
    ]);
    let second = over(&pow(&tm1, 2 * g), &t2m1).mul(&bracket);
    let third = frac(-1, 4).mul(&over(&pow(&tm1, 2 * g), &t_plus_one(2)));

    t_pow((2 * g - 2) * (6 * n - 2)).mul(&sum(&[first, second, third]))
}

/// Cayley components of the quaternionic real form of `E6`:
///
/// ```text
/// t^{90g-90}(t-1)^{4g} / (6(t^2-1)^2) * ( 3(6g-6)^2 + 2g(g-1)/(t-1)^2 + 4g/(t-1)
///     + 10g^2/(t-1)^2 + (6g-6)(6/(t^2-1) - 3 - 12g/(t-1))
///     - 12g/((t-1)(t^2-1)) + 4/(t^2-1)^2 + 2/3 - 2/(t^2-1) )
/// - t^{102g-102}(t-1)^{2g}(t^3-1)^g / (t^2-1)
///     * ( 6g-6 - 2g/(t^3-1) + 1/(t^2-1) + 1/(t^4-1) )
/// + t^{126g-126}(t^3-1)^{2g}(t^5-1)^{2g} / ((t^2-1)(t^4-1)^2(t^6-1))
/// - t^{90g-90}(1+t+t^2)^{2g}(t^2-1) / (9(t^6-1))
/// ```
pub fn e6_closed(g: u32) -> RatFunc {
    let g = g as i64;
    let tm1 = t_minus_one(1);
    let t2m1 = t_minus_one(2);
    let t3m1 = t_minus_one(3);
    let t4m1 = t_minus_one(4);
    let t6m1 = t_minus_one(6);

    let prefactor_1 = over(
        &t_pow(90 * g - 90).mul(&pow(&tm1, 4 * g)),
        &int(6).mul(&pow(&t2m1, 2)),
    );
    let bracket_1 = sum(&[
        int(3 * (6 * g - 6) * (6 * g - 6)),
        over(&int(2 * g * (g - 1)), &pow(&tm1, 2)),
        over(&int(4 * g), &tm1),
        over(&int(10 * g * g), &pow(&tm1, 2)),
        int(6 * g - 6).mul(&sum(&[
            over(&int(6), &t2m1),
            int(-3),
            over(&int(-12 * g), &tm1),
        ])),
        over(&int(-12 * g), &tm1.mul(&t2m1)),
        over(&int(4), &pow(&t2m1, 2)),
        frac(2, 3),
        over(&int(-2), &t2m1),
    ]);
    let term_1 = prefactor_1.mul(&bracket_1);

    let prefactor_2 = over(
        &t_pow(102 * g - 102)
            .mul(&pow(&tm1, 2 * g))
            .mul(&pow(&t3m1, g)),
        &t2m1,
    );
    let bracket_2 = sum(&[
        int(6 * g - 6),
        over(&int(-2 * g), &t3m1),
        over(&int(1), &t2m1),
        over(&int(1), &t4m1),
    ]);
    let term_2 = prefactor_2.mul(&bracket_2).neg();

    let term_3 = over(
        &t_pow(126 * g - 126)
            .mul(&pow(&t3m1, 2 * g))
            .mul(&pow(&t_minus_one(5), 2 * g)),
        &t2m1.mul(&pow(&t4m1, 2)).mul(&t6m1),
    );

    let one_t_t2: RatFunc = "1 + t + t^2".parse().expect("literal");
    let term_4 = over(
        &t_pow(90 * g - 90).mul(&pow(&one_t_t2, 2 * g)).mul(&t2m1),
        &int(9).mul(&t6m1),
    )
    .neg();

    sum(&[term_1, term_2, term_3, term_4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so0_formula_reproduces_printed_g2_values() {
        let expected: LaurentPoly = "3*t^32 - 10*t^33 + 15*t^34 - 16*t^35 + 15*t^36 - 12*t^37 \
            + 9*t^38 - 8*t^39 + 8*t^40 - 4*t^41 + 2*t^42 - 4*t^43 + t^44 + t^46"
            .parse()
            .unwrap();
        assert_eq!(so0_nn2_closed(3, 2).as_laurent(), Some(&expected));
    }

    #[test]
    fn so0_formula_is_not_polynomial_for_odd_genus() {
        let f = so0_nn2_closed(3, 3);
        assert_eq!(f.den(), &"t^2 + 1".parse::<LaurentPoly>().unwrap());
    }

    #[test]
    fn e6_formula_keeps_a_double_pole_at_i() {
        for g in 2..=3 {
            let f = e6_closed(g);
            assert!(f.as_laurent().is_none());
            let t2p1: LaurentPoly = "(t^2 + 1)^2".parse().unwrap();
            assert!(f.den().div_exact(&t2p1).is_ok(), "g = {g}: {}", f.den());
        }
    }
}
