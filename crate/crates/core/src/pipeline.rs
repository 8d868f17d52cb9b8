//! Partition generating series of `K^l`-twisted Higgs bundles, its plethystic
//! logarithm, the Donaldson–Thomas invariants `Ω_n`, and the compactly
//! supported intersection cohomology Poincaré polynomials of the `GL(n)` and
//! `PGL(n)` moduli spaces.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{
    exact_poly_divide, LaurentPoly, Monomial, RatFunc, Substitution, Variable, MAX_GENUS,
};
use crate::group::{ComponentSpec, Group, Provenance};
use crate::partitions::{enumerate_partitions, Partition};
use crate::series::TruncSeries;
use crate::{Error, Result};

/// Genus `g >= 2` of the curve and twist `l >= 2` of the Higgs field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveParams {
    genus: u32,
    twist: u32,
}

impl CurveParams {
    pub fn new(genus: u32, twist: u32) -> Result<CurveParams> {
        if genus < 2 {
            return Err(Error::InvalidParameter(format!(
                "genus must be at least 2, got {genus}"
            )));
        }
        if twist < 2 {
            return Err(Error::InvalidParameter(format!(
                "twist must be at least 2, got {twist}"
            )));
        }
        Ok(CurveParams { genus, twist })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    fn g(&self) -> i32 {
        self.genus as i32
    }

    fn l(&self) -> i32 {
        self.twist as i32
    }
}

/// When the Weil specialization `q = t^2`, `α_i = t` happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum WeilMode {
    /// Substitute while building each term; coefficients live in `Q(t, z)`.
    #[default]
    Early,
    /// Keep `q` and every `α_i` symbolic until the final step.
    Late,
}

impl fmt::Display for WeilMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeilMode::Early => "early",
            WeilMode::Late => "late",
        })
    }
}

/// The monomials standing for `q` and the Weil numbers in a given mode.
struct Alphabet {
    q: Monomial,
    alphas: Vec<Monomial>,
}

impl Alphabet {
    fn new(p: &CurveParams, mode: WeilMode) -> Result<Alphabet> {
        match mode {
            WeilMode::Early => Ok(Alphabet {
                q: Monomial::var_pow(Variable::T, 2),
                alphas: vec![Monomial::var(Variable::T); p.genus as usize],
            }),
            WeilMode::Late => {
                if p.genus as usize > MAX_GENUS {
                    return Err(Error::InvalidParameter(format!(
                        "symbolic Weil numbers support genus up to {MAX_GENUS}, got {}",
                        p.genus
                    )));
                }
                Ok(Alphabet {
                    q: Monomial::var(Variable::Q),
                    alphas: (1..=p.genus as usize)
                        .map(|i| Monomial::var(Variable::weil(i)))
                        .collect(),
                })
            }
        }
    }

    fn q_pow(&self, k: i32) -> Monomial {
        self.q.pow(k)
    }
}

fn binomial(a: Monomial, b: Monomial) -> LaurentPoly {
    let one = num_rational::BigRational::one();
    LaurentPoly::from_terms([(a, one.clone()), (b, -one)])
}

fn z_pow(k: i32) -> Monomial {
    Monomial::var_pow(Variable::Z, k)
}

/// The summand of the partition generating series attached to `λ`.
pub fn omega_term(lambda: &Partition, p: &CurveParams, mode: WeilMode) -> Result<RatFunc> {
    let alphabet = Alphabet::new(p, mode)?;
    Ok(omega_term_with(lambda, p, &alphabet))
}

fn omega_term_with(lambda: &Partition, p: &CurveParams, alphabet: &Alphabet) -> RatFunc {
    let sign_exp = (p.l() - 1) * (2 * p.g() - 2);
    assert!(sign_exp % 2 == 0, "the sign exponent (l-1)(2g-2) is even");
    let uniform = alphabet.alphas.windows(2).all(|w| w[0] == w[1]);

    let mut shift = Monomial::ONE;
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for (a, leg) in lambda.arm_legs() {
        let (a, leg) = (a as i32, leg as i32);
        // (-q^a z^leg)^e with e even
        shift = shift.mul(&alphabet.q_pow(a).mul(&z_pow(leg)).pow(sign_exp));
        let weil_factor = |alpha: &Monomial| {
            let first = binomial(alphabet.q_pow(a), alpha.pow(-1).mul(&z_pow(leg + 1)));
            let second = binomial(alphabet.q_pow(a + 1), alpha.mul(&z_pow(leg)));
            &first * &second
        };
        if uniform {
            if let Some(alpha) = alphabet.alphas.first() {
                num = &num * &weil_factor(alpha).pow(p.genus);
            }
        } else {
            for alpha in &alphabet.alphas {
                num = &num * &weil_factor(alpha);
            }
        }
        den = &den * &binomial(alphabet.q_pow(a), z_pow(leg + 1));
        den = &den * &binomial(alphabet.q_pow(a + 1), z_pow(leg));
    }
    RatFunc::new(num.mul_monomial(&shift), den)
        .expect("the denominator is a product of nonzero binomials")
}

/// `Σ_{|λ| <= N} omega_term(λ) T^{|λ|}`, terms evaluated in parallel.
pub fn omega_series(p: &CurveParams, order: usize, mode: WeilMode) -> Result<TruncSeries> {
    let alphabet = Alphabet::new(p, mode)?;
    let partitions = enumerate_partitions(order as u32);
    let terms: Vec<RatFunc> = partitions
        .par_iter()
        .map(|lambda| omega_term_with(lambda, p, &alphabet))
        .collect();
    let mut coeffs = vec![RatFunc::zero(); order + 1];
    for (lambda, term) in partitions.iter().zip(&terms) {
        let k = lambda.size() as usize;
        coeffs[k] = coeffs[k].add(term);
    }
    Ok(TruncSeries::from_coeffs(order, coeffs))
}

/// `(q-1)(1-z) Log Ω(T, z)`.
pub fn h_series(p: &CurveParams, order: usize, mode: WeilMode) -> Result<TruncSeries> {
    if order < 1 {
        return Err(Error::Precondition(
            "h_series needs order at least 1".into(),
        ));
    }
    let alphabet = Alphabet::new(p, mode)?;
    let log = omega_series(p, order, mode)?.plethystic_log()?;
    let prefactor = RatFunc::from_poly(
        &binomial(alphabet.q, Monomial::ONE) * &binomial(Monomial::ONE, z_pow(1)),
    );
    let h = log.scale(&prefactor);
    let z_is_one = z_to_one();
    for n in 1..=order {
        let den = h.coeff(n).den();
        if z_is_one.apply(den).is_zero() {
            return Err(Error::Inconsistency(format!(
                "coefficient of T^{n} keeps a pole at z = 1: denominator {den}"
            )));
        }
    }
    Ok(h)
}

fn z_to_one() -> Substitution {
    Substitution::new()
        .with_constant(Variable::Z, 1)
        .expect("1 is a nonzero constant")
}

/// `Ω_1..=Ω_N` from a single series computation.
pub fn dt_invariants(max_rank: u32, p: &CurveParams, mode: WeilMode) -> Result<Vec<RatFunc>> {
    if max_rank < 1 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    let alphabet = Alphabet::new(p, mode)?;
    let h = h_series(p, max_rank as usize, mode)?;
    let z_is_one = z_to_one();
    (1..=max_rank)
        .map(|n| {
            let at_one = h.coeff(n as usize).substitute(&z_is_one)?;
            let shift = alphabet.q_pow((p.l() - 1) * (p.g() - 1) * n as i32);
            Ok(at_one.mul(&RatFunc::from_poly(LaurentPoly::monomial(
                shift,
                One::one(),
            ))))
        })
        .collect()
}

/// The Donaldson–Thomas invariant `Ω_n`.
pub fn dt_invariant(n: u32, p: &CurveParams, mode: WeilMode) -> Result<RatFunc> {
    Ok(dt_invariants(n, p, mode)?.pop().expect("n >= 1 invariants"))
}

/// An intersection cohomology Poincaré polynomial in `t`: integer
/// coefficients, nonnegative exponents, leading coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoincarePolynomial {
    /// Coefficient of `t^k` at index `k`; the last entry is nonzero.
    coeffs: Vec<BigInt>,
    spec: ComponentSpec,
    provenance: Provenance,
}

impl PoincarePolynomial {
    /// Validates a Laurent polynomial in `t` against the Poincaré polynomial
    /// invariants. Violations are reported as internal inconsistencies.
    pub fn from_laurent(
        p: &LaurentPoly,
        spec: ComponentSpec,
        provenance: Provenance,
    ) -> Result<PoincarePolynomial> {
        let bad = |why: &str| {
            Err(Error::Inconsistency(format!(
                "{}: {why}: {p}",
                spec.label()
            )))
        };
        if p.is_zero() {
            return bad("zero polynomial");
        }
        if !p.only_involves(&[Variable::T]) {
            return bad("involves variables other than t");
        }
        if !p.is_polynomial() {
            return bad("negative exponent");
        }
        if !p.has_integer_coefficients() {
            return bad("non-integer coefficient");
        }
        let degree = p.degree_in(Variable::T).expect("nonzero") as usize;
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(Variable::T) as usize] = c.to_integer();
        }
        if !coeffs[degree].is_one() {
            return bad("leading coefficient is not 1");
        }
        Ok(PoincarePolynomial {
            coeffs,
            spec,
            provenance,
        })
    }

    pub fn spec(&self) -> &ComponentSpec {
        &self.spec
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The same polynomial under another label.
    pub fn relabel(self, spec: ComponentSpec, provenance: Provenance) -> PoincarePolynomial {
        PoincarePolynomial {
            spec,
            provenance,
            ..self
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero")
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Dense coefficients, index = exponent.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Nonzero terms `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(k, c)| {
            (
                Monomial::var_pow(Variable::T, k as i32),
                num_rational::BigRational::from_integer(c.clone()),
            )
        }))
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

fn gl_spec(n: u32, p: &CurveParams) -> ComponentSpec {
    ComponentSpec {
        group: Group::Gl,
        rank: Some(n),
        genus: p.genus,
        twist: Some(p.twist),
    }
}

fn gl_from_dt(
    n: u32,
    p: &CurveParams,
    mode: WeilMode,
    omega: &RatFunc,
) -> Result<PoincarePolynomial> {
    let specialized = match mode {
        WeilMode::Early => omega.clone(),
        WeilMode::Late => omega.substitute(&Substitution::weil_to_t(p.genus as usize))?,
    };
    let prefactor = 2 * p.l() * (p.g() - 1) * (n * n) as i32;
    let value = specialized.mul(&RatFunc::from_poly(LaurentPoly::var_pow(
        Variable::T,
        prefactor,
    )));
    let poly = value.as_laurent().ok_or_else(|| {
        Error::Inconsistency(format!(
            "GL({n}) Poincaré series is not a polynomial: {value}"
        ))
    })?;
    PoincarePolynomial::from_laurent(poly, gl_spec(n, p), Provenance::Pipeline)
}

/// `P_c` of the `GL(n)` moduli space for every rank `1..=max_rank`.
pub fn poincare_gl_all(
    max_rank: u32,
    p: &CurveParams,
    mode: WeilMode,
) -> Result<Vec<PoincarePolynomial>> {
    dt_invariants(max_rank, p, mode)?
        .iter()
        .zip(1..)
        .map(|(omega, n)| gl_from_dt(n, p, mode, omega))
        .collect()
}

pub fn poincare_gl_with(n: u32, p: &CurveParams, mode: WeilMode) -> Result<PoincarePolynomial> {
    Ok(poincare_gl_all(n, p, mode)?.pop().expect("n >= 1 ranks"))
}

/// `P_c` of the `K^l`-twisted `GL(n, C)` moduli space, valid for every
/// degree coprime to `n`.
pub fn poincare_gl(n: u32, p: &CurveParams) -> Result<PoincarePolynomial> {
    poincare_gl_with(n, p, WeilMode::Early)
}

/// Divides a `GL(n)` polynomial by `(t-1)^{2g}`.
pub fn pgl_from_gl(gl: &PoincarePolynomial) -> Result<PoincarePolynomial> {
    let spec = gl.spec();
    let divisor = LaurentPoly::from_terms([
        (Monomial::var(Variable::T), One::one()),
        (Monomial::ONE, -num_rational::BigRational::one()),
    ])
    .pow(2 * spec.genus);
    let quotient = exact_poly_divide(&gl.to_laurent(), &divisor).map_err(|_| {
        Error::Inconsistency(format!(
            "(t-1)^{} does not divide the {} polynomial",
            2 * spec.genus,
            spec.label()
        ))
    })?;
    PoincarePolynomial::from_laurent(
        &quotient,
        ComponentSpec {
            group: Group::Pgl,
            ..*spec
        },
        Provenance::Pipeline,
    )
}

pub fn poincare_pgl_with(n: u32, p: &CurveParams, mode: WeilMode) -> Result<PoincarePolynomial> {
    pgl_from_gl(&poincare_gl_with(n, p, mode)?)
}

/// `P_c` of the `K^l`-twisted `PGL(n, C)` moduli space, valid for every
/// degree `d` in `Z/n` coprime to `n`.
pub fn poincare_pgl(n: u32, p: &CurveParams) -> Result<PoincarePolynomial> {
    poincare_pgl_with(n, p, WeilMode::Early)
}

/// Poincaré polynomial of a pure Hodge structure: `u, v -> -t`.
pub fn hodge_to_poincare(h: &LaurentPoly) -> Result<LaurentPoly> {
    if !h.only_involves(&[Variable::U, Variable::V]) || !h.is_polynomial() {
        return Err(Error::Precondition(format!(
            "expected a polynomial in u and v, got {h}"
        )));
    }
    let minus_t = -LaurentPoly::var(Variable::T);
    let sigma = Substitution::new()
        .with(Variable::U, minus_t.clone())?
        .with(Variable::V, minus_t)?;
    Ok(sigma.apply(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn params(g: u32, l: u32) -> CurveParams {
        CurveParams::new(g, l).unwrap()
    }

    #[test]
    fn parameters_are_validated() {
        assert!(CurveParams::new(1, 2).is_err());
        assert!(CurveParams::new(2, 1).is_err());
        assert!(Alphabet::new(&params(11, 2), WeilMode::Late).is_err());
        assert!(Alphabet::new(&params(11, 2), WeilMode::Early).is_ok());
    }

    #[test]
    fn omega_term_examples() {
        let p = params(2, 2);
        let empty = Partition::empty();
        assert_eq!(
            omega_term(&empty, &p, WeilMode::Late).unwrap(),
            RatFunc::one()
        );
        let one = Partition::new(vec![1]).unwrap();
        assert_eq!(
            omega_term(&one, &p, WeilMode::Late).unwrap(),
            r("(1 - a1^-1*z)*(q - a1)*(1 - a2^-1*z)*(q - a2) / ((1 - z)*(q - 1))")
        );
        assert_eq!(
            omega_term(&one, &p, WeilMode::Early).unwrap(),
            r("(1 - t^-1*z)^2*(t^2 - t)^2 / ((1 - z)*(t^2 - 1))")
        );
    }

    #[test]
    fn omega_series_examples() {
        let p = params(2, 3);
        for mode in [WeilMode::Early, WeilMode::Late] {
            assert_eq!(omega_series(&p, 0, mode).unwrap(), TruncSeries::one(0));
            let s = omega_series(&p, 2, mode).unwrap();
            assert!(s.coeff(0).is_one());
            let term =
                |parts: Vec<u32>| omega_term(&Partition::new(parts).unwrap(), &p, mode).unwrap();
            assert_eq!(s.coeff(1), &term(vec![1]));
            assert_eq!(s.coeff(2), &term(vec![2]).add(&term(vec![1, 1])));
        }
    }

    #[test]
    fn h_series_examples() {
        let p = params(2, 2);
        let late = h_series(&p, 2, WeilMode::Late).unwrap();
        assert!(late.coeff(0).is_zero());
        assert_eq!(
            late.coeff(1),
            &r("(1 - a1^-1*z)*(q - a1)*(1 - a2^-1*z)*(q - a2)")
        );
        let early = h_series(&p, 1, WeilMode::Early).unwrap();
        assert_eq!(
            early.coeff(1).substitute(&z_to_one()).unwrap(),
            r("(t - 1)^4")
        );
        assert!(h_series(&p, 0, WeilMode::Early).is_err());
    }

    #[test]
    fn dt_invariant_examples() {
        let p = params(2, 2);
        assert_eq!(
            dt_invariant(1, &p, WeilMode::Late).unwrap(),
            r("q*(1 - a1^-1)*(q - a1)*(1 - a2^-1)*(q - a2)")
        );
        assert_eq!(
            dt_invariant(1, &p, WeilMode::Early).unwrap(),
            r("t^2*(t - 1)^4")
        );
        let weil = Substitution::weil_to_t(2);
        for n in 1..=2 {
            let late = dt_invariant(n, &p, WeilMode::Late).unwrap();
            assert_eq!(
                late.substitute(&weil).unwrap(),
                dt_invariant(n, &p, WeilMode::Early).unwrap()
            );
        }
    }

    #[test]
    fn rank_one_closed_form() {
        for (g, l) in [(2, 2), (2, 3), (3, 2), (4, 5)] {
            let p = params(g, l);
            let k = 2 * (2 * l as i32 - 1) * (g as i32 - 1);
            let expected = lp(&format!("t^{k}*(t - 1)^{}", 2 * g));
            assert_eq!(poincare_gl(1, &p).unwrap().to_laurent(), expected);
            assert_eq!(
                poincare_pgl(1, &p).unwrap().to_laurent(),
                lp(&format!("t^{k}"))
            );
        }
    }

    #[test]
    fn rank_two_gl_and_pgl() {
        let p = params(2, 3);
        let gl = poincare_gl(2, &p).unwrap();
        assert_eq!(gl.degree(), 2 * (4 * 3 * 2 + 1));
        let pgl = poincare_pgl(2, &p).unwrap();
        assert_eq!((pgl.low_degree(), pgl.degree()), (32, 46));
        // Euler characteristic -2^{2g-3} from the fixed points of the C^* action
        assert_eq!(pgl.eval(&BigInt::one()), BigInt::from(-2));
        assert_eq!(pgl.spec().degree_label(), crate::DegreeLabel::Cyclic(2));
    }

    #[test]
    fn invalid_polynomials_are_inconsistencies() {
        let spec = gl_spec(1, &params(2, 2));
        for bad in ["2*t^3", "t^-1 + t", "1/2*t + t^2", "t^2 + z", "0"] {
            let err =
                PoincarePolynomial::from_laurent(&lp(bad), spec, Provenance::Pipeline).unwrap_err();
            assert!(err.is_internal(), "{bad}");
        }
        let ok = PoincarePolynomial::from_laurent(&lp("3 - t + t^2"), spec, Provenance::Pipeline)
            .unwrap();
        assert_eq!(ok.eval(&BigInt::from(2)), BigInt::from(5));
        assert_eq!((ok.low_degree(), ok.degree()), (0, 2));
    }

    #[test]
    fn hodge_to_poincare_examples() {
        assert_eq!(hodge_to_poincare(&lp("1 + u*v")).unwrap(), lp("1 + t^2"));
        assert_eq!(
            hodge_to_poincare(&lp("(1 + u)*(1 + v)")).unwrap(),
            lp("(1 - t)^2")
        );
        assert_eq!(hodge_to_poincare(&lp("7")).unwrap(), lp("7"));
        assert!(hodge_to_poincare(&lp("u*t")).is_err());
    }
}
