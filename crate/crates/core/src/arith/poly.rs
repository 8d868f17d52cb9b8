use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Monomial, Variable, NVARS};
use crate::{Error, Result};

/// Sparse multivariate Laurent polynomial with rational coefficients.
///
/// Terms are stored with nonzero coefficients, distinct monomials, sorted
/// from the largest monomial (leading term) down.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: i32) -> Self {
        Self::monomial(Monomial::var_pow(v, e), BigRational::one())
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        LaurentPoly { terms }
    }

    /// Terms sorted from the leading monomial down.
    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Componentwise minimum of all exponent vectors (`ONE` for zero).
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.meet(m)),
        }
    }

    /// Splits `self = x^m * p` where `p` has no negative exponents and is not
    /// divisible by any variable.
    pub fn split_monomial(&self) -> (Monomial, LaurentPoly) {
        let m = self.min_monomial();
        if m.is_one() {
            return (m, self.clone());
        }
        (m, self.mul_monomial(&m.pow(-1)))
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_nonnegative())
    }

    /// Variables occurring with a nonzero exponent, in alphabet order.
    pub fn variables(&self) -> Vec<Variable> {
        let mut seen = [false; NVARS];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    seen[i] = true;
                }
            }
        }
        (0..NVARS)
            .filter(|&i| seen[i])
            .map(Variable::from_index)
            .collect()
    }

    pub fn only_involves(&self, vars: &[Variable]) -> bool {
        self.variables().iter().all(|v| vars.contains(v))
    }

    /// Largest exponent of `v`, `None` for the zero polynomial.
    pub fn degree_in(&self, v: Variable) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn min_degree_in(&self, v: Variable) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        // multiplying by a monomial preserves the order
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(tm, c)| (tm.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    /// Returns the coefficients as integers over a common positive
    /// denominator (the lcm of the coefficient denominators).
    pub fn integer_form(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let den = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (terms, den)
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let (a, da) = self.integer_form();
        let (b, db) = other.integer_form();
        let den = da * db;
        let acc = mul_small(&a, &b).unwrap_or_else(|| mul_big(&a, &b));
        let mut terms: Vec<_> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, BigRational::new(c, den.clone())))
            .collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        LaurentPoly { terms }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Adams operation: every variable `x` is replaced by `x^k`.
    pub fn adams(&self, k: u32) -> LaurentPoly {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        // uniform scaling of exponents preserves the graded lex order
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pow(k as i32), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .cloned()
                .collect(),
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        BigRational::new(num, den)
    }

    /// `self` divided by its content, with positive leading coefficient.
    pub fn primitive(&self) -> LaurentPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// True when all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Exact division in the Laurent polynomial ring.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.terms.len() == 1 {
            let (m, c) = &divisor.terms[0];
            return Ok(self.mul_monomial(&m.pow(-1)).scale(&c.recip()));
        }
        // Monomials are units; after stripping them the divisor has no
        // variable factor, so divisibility can be decided in the ordinary
        // polynomial ring.
        let (shift_n, n) = self.split_monomial();
        let (shift_d, d) = divisor.split_monomial();
        let q = poly_div_exact(&n, &d)?;
        Ok(q.mul_monomial(&shift_n.div(&shift_d)))
    }

    /// Applies `f` to every monomial, summing colliding terms.
    pub fn map_monomials<F>(&self, f: F) -> LaurentPoly
    where
        F: Fn(&Monomial, &BigRational) -> (Monomial, BigRational),
    {
        Self::from_terms(self.terms.iter().map(|(m, c)| f(m, c)))
    }

    /// Evaluates a polynomial in the single variable `v` at an integer point.
    pub fn eval_univariate(&self, v: Variable, x: &BigRational) -> Option<BigRational> {
        if !self.only_involves(&[v]) {
            return None;
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let p = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                if x.is_zero() {
                    return None;
                }
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        Some(acc)
    }
}

/// Integer polynomial product with `i128` accumulation; `None` on overflow.
fn mul_small(
    a: &[(Monomial, BigInt)],
    b: &[(Monomial, BigInt)],
) -> Option<HashMap<Monomial, BigInt>> {
    let small = |v: &[(Monomial, BigInt)]| -> Option<Vec<(Monomial, i64)>> {
        v.iter().map(|(m, c)| c.to_i64().map(|c| (*m, c))).collect()
    };
    let a = small(a)?;
    let b = small(b)?;
    let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    for (ma, ca) in &a {
        for (mb, cb) in &b {
            let prod = (*ca as i128) * (*cb as i128);
            let slot = acc.entry(ma.mul(mb)).or_insert(0);
            *slot = slot.checked_add(prod)?;
        }
    }
    Some(acc.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect())
}

fn mul_big(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)]) -> HashMap<Monomial, BigInt> {
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    for (ma, ca) in a {
        for (mb, cb) in b {
            *acc.entry(ma.mul(mb)).or_default() += ca * cb;
        }
    }
    acc
}

/// Division of polynomials without negative exponents; fails unless exact.
fn poly_div_exact(n: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly> {
    let (lead_m, lead_c) = d.terms[0].clone();
    let lead_inv = lead_c.recip();
    let mut rem: BTreeMap<Monomial, BigRational> = n.terms.iter().cloned().collect();
    let mut quotient = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        if !m.dominates(&lead_m) {
            return Err(Error::NotDivisible);
        }
        let qm = m.div(&lead_m);
        let qc = c * &lead_inv;
        for (dm, dc) in &d.terms[1..] {
            let key = qm.mul(dm);
            let delta = &qc * dc;
            match rem.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
        quotient.push((qm, qc));
    }
    // popped in decreasing order, so already sorted
    Ok(LaurentPoly { terms: quotient })
}

/// Exact quotient `num / den`; fails with [`Error::NotDivisible`] when the
/// remainder is nonzero.
pub fn exact_poly_divide(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    num.div_exact(den)
}

/// Keeps the monomials `u^i v^j` with `i + j` even.
pub fn even_total_degree_part(p: &LaurentPoly) -> Result<LaurentPoly> {
    if !p.only_involves(&[Variable::U, Variable::V]) {
        return Err(Error::Precondition(
            "even-degree extraction expects a polynomial in u and v only".into(),
        ));
    }
    if !p.is_polynomial() {
        return Err(Error::Precondition(
            "even-degree extraction expects nonnegative exponents".into(),
        ));
    }
    Ok(p.filter_terms(|m| (m.exp(Variable::U) + m.exp(Variable::V)) % 2 == 0))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // ascending order reads more naturally
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

impl From<Variable> for LaurentPoly {
    fn from(v: Variable) -> Self {
        LaurentPoly::var(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inherent(self, rhs)
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inherent(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inherent(&self, rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inherent(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(&self)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = LaurentPoly::add(self, rhs);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = LaurentPoly::sub(self, rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_expands() {
        assert_eq!(p("1 + u") * p("1 + v"), p("1 + u + v + u*v"));
        assert_eq!(p("t - 1").pow(2), p("t^2 - 2*t + 1"));
        assert_eq!(p("1/2*q - z^-1") * p("2"), p("q - 2*z^-1"));
    }

    #[test]
    fn multiplication_survives_i128_overflow() {
        let big = LaurentPoly::from_terms([
            (
                Monomial::var(Variable::T),
                BigRational::from_integer(BigInt::from(i64::MAX)),
            ),
            (
                Monomial::ONE,
                BigRational::from_integer(BigInt::from(i64::MAX)),
            ),
        ]);
        let sq = big.pow(4);
        let expected_top = BigInt::from(i64::MAX).pow(4);
        assert_eq!(
            sq.coeff(&Monomial::var_pow(Variable::T, 4)),
            BigRational::from_integer(expected_top)
        );
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(
            exact_poly_divide(&p("t^2 - 2*t + 1"), &p("t - 1")).unwrap(),
            p("t - 1")
        );
        let t6 = p("t^6");
        let num = &t6 * &p("t - 1").pow(4);
        assert_eq!(exact_poly_divide(&num, &p("t - 1").pow(4)).unwrap(), t6);
        assert_eq!(
            exact_poly_divide(&p("t^2 + 1"), &p("t - 1")),
            Err(Error::NotDivisible)
        );
    }

    #[test]
    fn laurent_division_moves_monomials() {
        let num = p("t^-3*z - t^-2");
        let den = p("z*t^-1 - 1");
        assert_eq!(num.div_exact(&den).unwrap(), p("t^-2"));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            p("t").div_exact(&LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn even_part() {
        assert_eq!(
            even_total_degree_part(&p("(1+u)*(1+v)")).unwrap(),
            p("1 + u*v")
        );
        let sq = (p("1+u") * p("1+v")).pow(2);
        assert_eq!(
            even_total_degree_part(&sq).unwrap(),
            p("1 + u^2 + 4*u*v + v^2 + u^2*v^2")
        );
        assert_eq!(even_total_degree_part(&p("5")).unwrap(), p("5"));
        assert!(even_total_degree_part(&p("1 + t")).is_err());
        assert!(even_total_degree_part(&p("u^-1")).is_err());
    }

    #[test]
    fn content_and_primitive() {
        let f = p("2/3*t + 4/9");
        assert_eq!(f.content(), BigRational::new(2.into(), 9.into()));
        assert_eq!(f.primitive(), p("3*t + 2"));
        assert_eq!(p("-2*t + 4").primitive(), p("t - 2"));
    }

    #[test]
    fn split_monomial_strips_common_factor() {
        let (m, rest) = p("t^-1*z^2 + t*z").split_monomial();
        assert_eq!(
            m,
            Monomial::from_pairs(&[(Variable::T, -1), (Variable::Z, 1)])
        );
        assert_eq!(rest, p("z + t^2"));
    }

    #[test]
    fn adams_scales_exponents() {
        assert_eq!(p("q*z").adams(2), p("q^2*z^2"));
        assert_eq!(p("1 - z + t^-1").adams(3), p("1 - z^3 + t^-3"));
    }
}
