use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd_cofactors;
use super::monomial::{Monomial, Variable};
use super::poly::LaurentPoly;
use crate::{Error, Result};

/// A quotient of Laurent polynomials in canonical form.
///
/// Canonical means: the numerator and denominator are coprime, the
/// denominator has no negative exponents and no monomial factor (monomials
/// live in the numerator), its coefficients are coprime integers and its
/// leading coefficient is positive. Zero is `0 / 1`. Two values are equal
/// exactly when their canonical forms coincide, so `PartialEq` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic on rational functions; division by zero is an error.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, which: RatOp) -> Result<RatFunc> {
    match which {
        RatOp::Add => Ok(a.add(b)),
        RatOp::Sub => Ok(a.sub(b)),
        RatOp::Mul => Ok(a.mul(b)),
        RatOp::Div => a.div(b),
    }
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (shift_n, n) = num.split_monomial();
        let (shift_d, d) = den.split_monomial();
        let (n, d) = cancel(&n, &d);
        Ok(finish(n.mul_monomial(&shift_n.div(&shift_d)), d))
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::from_int(c))
    }

    pub fn constant(c: BigRational) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: Variable) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::var(v))
    }

    pub fn from_poly(p: LaurentPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The numerator when the value is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            if num.is_zero() {
                return RatFunc::zero();
            }
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            let (n, d) = cancel(&num, &self.den);
            return finish(n, d);
        }
        // a/b + c/d: with g = gcd(b, d) any common factor of the new
        // numerator and b*d/g already divides g.
        let (g, b_rest, d_rest) = if self.den.is_one() || other.den.is_one() {
            (LaurentPoly::one(), self.den.clone(), other.den.clone())
        } else {
            let r = gcd_cofactors(&self.den, &other.den);
            (r.gcd, r.cofactor_a, r.cofactor_b)
        };
        let num = &self.num * &d_rest + &other.num * &b_rest;
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = &self.den * &d_rest;
        if g.is_one() {
            return finish(num, den);
        }
        let r = gcd_cofactors(&num, &g);
        if r.gcd.is_one() {
            return finish(num, den);
        }
        let den = den
            .div_exact(&r.gcd)
            .expect("gcd of the denominators divides their lcm");
        finish(r.cofactor_a, den)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(&self.num * &other.num);
        }
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        finish(&n1 * &n2, &d1 * &d2)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (shift, n) = self.num.split_monomial();
        Ok(finish(self.den.mul_monomial(&shift.pow(-1)), n))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // powers of coprime polynomials stay coprime
        Ok(finish(base.num.pow(k), base.den.pow(k)))
    }

    /// Adams operation `x -> x^k` on every variable.
    pub fn adams(&self, k: u32) -> RatFunc {
        // x -> x^k is a flat ring endomorphism: coprimality, the absence of
        // monomial factors and the leading term are all preserved.
        RatFunc {
            num: self.num.adams(k),
            den: self.den.adams(k),
        }
    }

    /// Substitutes variables by monomials and re-normalizes.
    pub fn substitute(&self, sigma: &Substitution) -> Result<RatFunc> {
        let den = sigma.apply(&self.den);
        if den.is_zero() {
            return Err(Error::Pole(sigma.to_string()));
        }
        RatFunc::new(sigma.apply(&self.num), den)
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vars = self.num.variables();
        for v in self.den.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort();
        vars
    }
}

/// Removes the gcd of `n` and `d`.
fn cancel(n: &LaurentPoly, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if d.as_constant().is_some() || n.as_constant().is_some() {
        return (n.clone(), d.clone());
    }
    let r = gcd_cofactors(n, d);
    (r.cofactor_a, r.cofactor_b)
}

/// Normalizes the content and sign of a coprime pair whose denominator has
/// no monomial factor.
fn finish(num: LaurentPoly, den: LaurentPoly) -> RatFunc {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RatFunc::zero();
    }
    let mut c = den.content();
    if den.leading().is_some_and(|(_, lc)| lc.is_negative()) {
        c = -c;
    }
    if c.is_one() {
        return RatFunc { num, den };
    }
    let inv = c.recip();
    RatFunc {
        num: num.scale(&inv),
        den: den.scale(&inv),
    }
}

/// An assignment of variables to nonzero Laurent monomials, e.g.
/// `q -> t^2, α_i -> t` or `u -> -t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Variable, (BigRational, Monomial)>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Adds `v -> value`; `value` must be a single nonzero term.
    pub fn with(mut self, v: Variable, value: LaurentPoly) -> Result<Substitution> {
        match value.terms() {
            [(m, c)] => {
                self.map.insert(v, (c.clone(), *m));
                Ok(self)
            }
            _ => Err(Error::InvalidParameter(format!(
                "substitution value for {v} must be a nonzero monomial, got {value}"
            ))),
        }
    }

    /// `v -> t^e`.
    pub fn with_power(self, v: Variable, target: Variable, e: i32) -> Substitution {
        self.with(v, LaurentPoly::var_pow(target, e))
            .expect("a variable power is a monomial")
    }

    /// `v -> c` for a nonzero constant.
    pub fn with_constant(self, v: Variable, c: i64) -> Result<Substitution> {
        self.with(v, LaurentPoly::from_int(c))
    }

    /// The Weil specialization `q -> t^2`, `α_i -> t` for `1 <= i <= genus`.
    pub fn weil_to_t(genus: usize) -> Substitution {
        let mut s = Substitution::new().with_power(Variable::Q, Variable::T, 2);
        for i in 1..=genus {
            s = s.with_power(Variable::weil(i), Variable::T, 1);
        }
        s
    }

    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        if self.map.is_empty() {
            return p.clone();
        }
        LaurentPoly::from_terms(p.terms().iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut out = Monomial::ONE;
            for (v, e) in m.support() {
                match self.map.get(&v) {
                    Some((vc, vm)) => {
                        coeff *= pow_signed(vc, e);
                        out = out.mul(&vm.pow(e));
                    }
                    None => out.0[v.index()] += e,
                }
            }
            (out, coeff)
        }))
    }
}

fn pow_signed(c: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), e.unsigned_abs() as usize)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, (c, m))) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {}", LaurentPoly::monomial(*m, c.clone()))?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;

    /// `"num"` or `"num / (den)"`: a single top-level `" / "` separates the
    /// numerator from the denominator.
    fn from_str(s: &str) -> Result<RatFunc> {
        match s.split_once(" / ") {
            None => Ok(RatFunc::from_poly(s.parse()?)),
            Some((n, d)) => RatFunc::new(n.parse()?, d.parse()?),
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn telescoping_sum() {
        let a = r("1 / (1 - z)");
        let b = r("-z / (1 - z)");
        assert_eq!(a.add(&b), RatFunc::one());
    }

    #[test]
    fn inverse_product() {
        let x = r("q - t");
        assert_eq!(x.mul(&x.inv().unwrap()), RatFunc::one());
    }

    #[test]
    fn factor_cancellation() {
        assert_eq!(r("q^2 - 1").div(&r("q - 1")).unwrap(), r("q + 1"));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(r("q").div(&RatFunc::zero()), Err(Error::DivisionByZero));
        assert_eq!(
            RatFunc::new(r("1").num().clone(), LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn canonical_form() {
        let f = r("(2*t^3 - 2*t^2) / (-4*t^2 + 4)");
        // t^2 (t - 1) * 2 / (-4 (t - 1)(t + 1)) = -t^2 / (2 (t + 1))
        assert_eq!(f.den(), &"t + 1".parse::<LaurentPoly>().unwrap());
        assert_eq!(f.num(), &"-1/2*t^2".parse::<LaurentPoly>().unwrap());
        let g = r("(t^-1 - z) / (t*z)");
        assert_eq!(g.den(), &LaurentPoly::one());
        assert_eq!(g.num(), &"t^-2*z^-1 - t^-1".parse::<LaurentPoly>().unwrap());
    }

    #[test]
    fn substitution_examples() {
        let s = Substitution::weil_to_t(1);
        let f = r("(q - a1) / (q - 1)");
        assert_eq!(f.substitute(&s).unwrap(), r("t / (t + 1)"));

        let z1 = Substitution::new().with_constant(Variable::Z, 1).unwrap();
        assert!(matches!(
            r("1 / (1 - z)").substitute(&z1),
            Err(Error::Pole(_))
        ));
        assert_eq!(
            r("(1 - z^2) / (1 - z)").substitute(&z1).unwrap(),
            RatFunc::from_int(2)
        );
    }

    #[test]
    fn substitution_rejects_non_monomials() {
        assert!(Substitution::new()
            .with(Variable::Q, "t + 1".parse().unwrap())
            .is_err());
        assert!(Substitution::new().with_constant(Variable::Q, 0).is_err());
    }

    #[test]
    fn adams_examples() {
        assert_eq!(r("q*z").adams(2), r("q^2*z^2"));
        let f = r("(1 - z) / (1 - q)");
        assert_eq!(f.adams(1), f);
        assert_eq!(f.adams(3), r("(1 - z^3) / (1 - q^3)"));
    }

    #[test]
    fn negative_power() {
        assert_eq!(r("t - 1").pow(-2).unwrap(), r("1 / (t^2 - 2*t + 1)"));
        assert_eq!(r("t").pow(0).unwrap(), RatFunc::one());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        let var = prop::sample::select(vec![Variable::Q, Variable::Z, Variable::T]);
        prop::collection::vec((var.clone(), -1i32..3, var, 0i32..3, -4i64..5), 1..4).prop_map(
            |terms| {
                LaurentPoly::from_terms(terms.into_iter().map(|(v1, e1, v2, e2, c)| {
                    (
                        Monomial::from_pairs(&[(v1, e1), (v2, e2)]),
                        BigRational::from_integer(c.into()),
                    )
                }))
            },
        )
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
            }
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn canonical_equality_matches_cross_multiplication(a in arb_ratfunc(), b in arb_ratfunc()) {
            let cross = (a.num() * b.den()) == (b.num() * a.den());
            prop_assert_eq!(cross, a == b);
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_ratfunc(), b in arb_ratfunc()) {
            let s = Substitution::new()
                .with_power(Variable::Q, Variable::T, 2)
                .with_power(Variable::Z, Variable::T, -1);
            if let (Ok(sa), Ok(sb)) = (a.substitute(&s), b.substitute(&s)) {
                prop_assert_eq!(a.mul(&b).substitute(&s).unwrap(), sa.mul(&sb));
            }
        }

        #[test]
        fn adams_composes_and_commutes_with_monomial_substitution(
            a in arb_ratfunc(), j in 1u32..4, k in 1u32..4
        ) {
            prop_assert_eq!(a.adams(j).adams(k), a.adams(j * k));
            let s = Substitution::new()
                .with_power(Variable::Q, Variable::T, 2)
                .with_power(Variable::Z, Variable::T, 1);
            if let Ok(sa) = a.substitute(&s) {
                prop_assert_eq!(sa.adams(k), a.adams(k).substitute(&s).unwrap());
            }
            // the shortcut in `adams` must agree with full normalization
            let ak = a.adams(k);
            prop_assert_eq!(RatFunc::new(ak.num().clone(), ak.den().clone()).unwrap(), ak);
        }
    }
}
