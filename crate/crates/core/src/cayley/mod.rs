//! Invariants of Cayley components: Hodge polynomials of the `SO(n, n+1)`
//! family, Poincaré polynomials of the `SO_0(n, n+2)` and `E6` components by
//! closed formula or by pipeline, and the `U(n, n)` / `PU(n, n)` components.

pub mod formulas;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{even_total_degree_part, LaurentPoly, Monomial, Variable};
use crate::group::{ComponentSpec, Group, Provenance};
use crate::pipeline::{
    hodge_to_poincare, poincare_gl_with, poincare_pgl_with, CurveParams, PoincarePolynomial,
    WeilMode,
};
use crate::{Error, Result};

/// Which route computes a Poincaré polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Pipeline,
    Closed,
    /// Evaluate both routes and require exact agreement.
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Pipeline => "pipeline",
            Method::Closed => "closed",
            Method::Both => "both",
        })
    }
}

/// Variant selector for the `SO(n, n+1)` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoVariant {
    So,
    So0,
}

/// A Hodge polynomial in `u, v`: symmetric under `u <-> v`, nonnegative
/// integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HodgePolynomial {
    poly: LaurentPoly,
    spec: Option<ComponentSpec>,
}

impl HodgePolynomial {
    pub fn new(poly: LaurentPoly, spec: Option<ComponentSpec>) -> Result<HodgePolynomial> {
        let bad = |why: &str| {
            Err(Error::Inconsistency(format!(
                "Hodge polynomial {poly}: {why}"
            )))
        };
        if !poly.only_involves(&[Variable::U, Variable::V]) || !poly.is_polynomial() {
            return bad("not a polynomial in u and v");
        }
        if !poly.has_integer_coefficients() || poly.terms().iter().any(|(_, c)| c.is_negative()) {
            return bad("coefficients must be nonnegative integers");
        }
        if swap_uv(&poly) != poly {
            return bad("not symmetric under u <-> v");
        }
        Ok(HodgePolynomial { poly, spec })
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn spec(&self) -> Option<&ComponentSpec> {
        self.spec.as_ref()
    }

    /// Nonzero terms `((i, j), h^{i,j})` sorted by `(i, j)`.
    pub fn terms(&self) -> Vec<((u32, u32), BigInt)> {
        let mut out: Vec<_> = self
            .poly
            .terms()
            .iter()
            .map(|(m, c)| {
                (
                    (m.exp(Variable::U) as u32, m.exp(Variable::V) as u32),
                    c.to_integer(),
                )
            })
            .collect();
        out.sort();
        out
    }

    /// Largest total degree `i + j`.
    pub fn total_degree(&self) -> u32 {
        self.terms()
            .iter()
            .map(|((i, j), _)| i + j)
            .max()
            .unwrap_or(0)
    }

    /// The Poincaré polynomial `u, v -> -t` of the pure Hodge structure.
    pub fn to_poincare(&self) -> LaurentPoly {
        hodge_to_poincare(&self.poly).expect("validated polynomial in u, v")
    }
}

impl fmt::Display for HodgePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn swap_uv(p: &LaurentPoly) -> LaurentPoly {
    p.map_monomials(|m, c| {
        let mut out = *m;
        out.0[Variable::U.index()] = m.exp(Variable::V);
        out.0[Variable::V.index()] = m.exp(Variable::U);
        (out, c.clone())
    })
}

fn uv_pow(k: u32) -> Monomial {
    Monomial::from_pairs(&[(Variable::U, k as i32), (Variable::V, k as i32)])
}

/// `(1 + u)^g (1 + v)^g`.
fn jacobian_factor(g: u32) -> LaurentPoly {
    let one = LaurentPoly::one();
    (&one + &LaurentPoly::var(Variable::U)).pow(g) * (&one + &LaurentPoly::var(Variable::V)).pow(g)
}

fn fiber_poly(d: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..d).map(|k| (uv_pow(k), num_traits::One::one())))
}

/// `1 + uv + ... + (uv)^{D-1}`.
pub fn fiber_hodge(d: u32) -> Result<HodgePolynomial> {
    if d < 1 {
        return Err(Error::InvalidParameter(
            "fiber dimension D must be at least 1".into(),
        ));
    }
    HodgePolynomial::new(fiber_poly(d), None)
}

/// `D = (2n - 1)(g - 1)`.
pub fn fiber_dimension(n: u32, g: u32) -> u32 {
    (2 * n - 1) * (g - 1)
}

/// Hodge polynomial of the Cayley components of `SO(n, n+1)` and
/// `SO_0(n, n+1)`.
pub fn hodge_collier_gothen(n: u32, g: u32, variant: SoVariant) -> Result<HodgePolynomial> {
    let group = match variant {
        SoVariant::So => Group::So,
        SoVariant::So0 => Group::So0,
    };
    let spec = ComponentSpec::new(group, Some(n), g, None)?;
    let full = jacobian_factor(g);
    let base = match variant {
        SoVariant::So0 if n % 2 == 1 => full,
        _ => even_total_degree_part(&full)?,
    };
    HodgePolynomial::new(&base * &fiber_poly(fiber_dimension(n, g)), Some(spec))
}

/// Hodge polynomial of the `K^n`-twisted `SO_0(1, 2)` component.
pub fn hodge_so012_component(n: u32, g: u32) -> Result<HodgePolynomial> {
    let spec = ComponentSpec::new(Group::So012, Some(n), g, None)?;
    HodgePolynomial::new(
        &jacobian_factor(g) * &fiber_poly(fiber_dimension(n, g)),
        Some(spec),
    )
}

fn closed_route(f: crate::arith::RatFunc, spec: ComponentSpec) -> Result<PoincarePolynomial> {
    let poly = f.as_laurent().ok_or_else(|| {
        Error::Inconsistency(format!(
            "closed formula for {} does not normalize to a polynomial: {f}",
            spec.label()
        ))
    })?;
    PoincarePolynomial::from_laurent(poly, spec, Provenance::ClosedFormula)
}

fn combine(
    spec: ComponentSpec,
    method: Method,
    closed: impl FnOnce() -> Result<PoincarePolynomial>,
    pipeline: impl FnOnce() -> Result<PoincarePolynomial>,
) -> Result<PoincarePolynomial> {
    match method {
        Method::Closed => closed(),
        Method::Pipeline => Ok(pipeline()?.relabel(spec, Provenance::Pipeline)),
        Method::Both => {
            let by_pipeline = pipeline()?;
            let by_formula = closed()?;
            if by_formula.coeffs() != by_pipeline.coeffs() {
                return Err(Error::Inconsistency(format!(
                    "closed formula and pipeline disagree for {}: closed {} vs pipeline {}",
                    spec.label(),
                    by_formula,
                    by_pipeline
                )));
            }
            Ok(by_formula.relabel(spec, Provenance::BothAgree))
        }
    }
}

pub fn poincare_so0_nn2_with(
    n: u32,
    g: u32,
    method: Method,
    mode: WeilMode,
) -> Result<PoincarePolynomial> {
    let spec = ComponentSpec::new(Group::So0Nn2, Some(n), g, None)?;
    combine(
        spec,
        method,
        || closed_route(formulas::so0_nn2_closed(n, g), spec),
        || poincare_pgl_with(2, &CurveParams::new(g, n)?, mode),
    )
}

/// `P_c` of the Cayley components of `SO_0(n, n+2)`, `n` odd; the pipeline
/// route is `PGL(2)` with twist `K^n`.
pub fn poincare_so0_nn2(n: u32, g: u32, method: Method) -> Result<PoincarePolynomial> {
    poincare_so0_nn2_with(n, g, method, WeilMode::Early)
}

pub fn poincare_e6_with(g: u32, method: Method, mode: WeilMode) -> Result<PoincarePolynomial> {
    let spec = ComponentSpec::new(Group::E6, None, g, None)?;
    combine(
        spec,
        method,
        || closed_route(formulas::e6_closed(g), spec),
        || poincare_pgl_with(3, &CurveParams::new(g, 4)?, mode),
    )
}

/// `P_c` of the Cayley components of the quaternionic `E6`; the pipeline
/// route is `PGL(3)` with twist `K^4`.
pub fn poincare_e6(g: u32, method: Method) -> Result<PoincarePolynomial> {
    poincare_e6_with(g, method, WeilMode::Early)
}

pub fn poincare_unn_with(n: u32, g: u32, mode: WeilMode) -> Result<PoincarePolynomial> {
    let spec = ComponentSpec::new(Group::Unn, Some(n), g, None)?;
    Ok(poincare_gl_with(n, &CurveParams::new(g, 2)?, mode)?.relabel(spec, Provenance::Pipeline))
}

/// `P_c` of the maximal Toledo component of `U(n, n)`: `GL(n)` with `l = 2`.
pub fn poincare_unn(n: u32, g: u32) -> Result<PoincarePolynomial> {
    poincare_unn_with(n, g, WeilMode::Early)
}

pub fn poincare_punn_with(n: u32, g: u32, mode: WeilMode) -> Result<PoincarePolynomial> {
    let spec = ComponentSpec::new(Group::Punn, Some(n), g, None)?;
    Ok(poincare_pgl_with(n, &CurveParams::new(g, 2)?, mode)?.relabel(spec, Provenance::Pipeline))
}

/// `P_c` of the higher rank Teichmüller component of `PU(n, n)`: `PGL(n)`
/// with `l = 2`.
pub fn poincare_punn(n: u32, g: u32) -> Result<PoincarePolynomial> {
    poincare_punn_with(n, g, WeilMode::Early)
}

/// The result of [`compute`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariant {
    Poincare(PoincarePolynomial),
    Hodge(HodgePolynomial),
}

impl Invariant {
    pub fn provenance(&self) -> Provenance {
        match self {
            Invariant::Poincare(p) => p.provenance(),
            Invariant::Hodge(_) => Provenance::ClosedFormula,
        }
    }
}

/// Computes the invariant named by `spec`. Hodge polynomials have a single
/// closed-form route and ignore `method`; GL, PGL, U(n,n) and PU(n,n) only
/// have the pipeline route.
pub fn compute(spec: &ComponentSpec, method: Method, mode: WeilMode) -> Result<Invariant> {
    let spec = ComponentSpec::new(spec.group, spec.rank, spec.genus, spec.twist)?;
    let g = spec.genus;
    let n = spec.rank.unwrap_or(0);
    let pipeline_only = || {
        if method == Method::Pipeline {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{} has no closed formula; use method pipeline",
                spec.group
            )))
        }
    };
    let poincare = |p: PoincarePolynomial| Invariant::Poincare(p);
    Ok(match spec.group {
        Group::Gl => {
            pipeline_only()?;
            let l = spec.twist.expect("validated");
            poincare(poincare_gl_with(n, &CurveParams::new(g, l)?, mode)?)
        }
        Group::Pgl => {
            pipeline_only()?;
            let l = spec.twist.expect("validated");
            poincare(poincare_pgl_with(n, &CurveParams::new(g, l)?, mode)?)
        }
        Group::Unn => {
            pipeline_only()?;
            poincare(poincare_unn_with(n, g, mode)?)
        }
        Group::Punn => {
            pipeline_only()?;
            poincare(poincare_punn_with(n, g, mode)?)
        }
        Group::So0Nn2 => poincare(poincare_so0_nn2_with(n, g, method, mode)?),
        Group::E6 => poincare(poincare_e6_with(g, method, mode)?),
        Group::So => Invariant::Hodge(hodge_collier_gothen(n, g, SoVariant::So)?),
        Group::So0 => Invariant::Hodge(hodge_collier_gothen(n, g, SoVariant::So0)?),
        Group::So012 => Invariant::Hodge(hodge_so012_component(n, g)?),
    })
}

/// Coefficient of `u^i v^j`.
pub fn hodge_number(h: &HodgePolynomial, i: u32, j: u32) -> BigInt {
    let m = Monomial::from_pairs(&[(Variable::U, i as i32), (Variable::V, j as i32)]);
    let c = h.poly.coeff(&m);
    if c.is_zero() {
        BigInt::zero()
    } else {
        c.to_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(fiber_hodge(1).unwrap().poly(), &LaurentPoly::one());
        assert_eq!(fiber_hodge(3).unwrap().poly(), &lp("1 + u*v + u^2*v^2"));
        assert_eq!(fiber_dimension(2, 2), 3);
        assert!(fiber_hodge(0).is_err());
    }

    #[test]
    fn collier_gothen_examples() {
        let so = hodge_collier_gothen(2, 2, SoVariant::So).unwrap();
        assert_eq!(
            so.poly(),
            &lp("(1 + u^2 + 4*u*v + v^2 + u^2*v^2)*(1 + u*v + u^2*v^2)")
        );
        assert_eq!(
            hodge_collier_gothen(2, 2, SoVariant::So0).unwrap().poly(),
            so.poly()
        );
        assert_eq!(
            hodge_collier_gothen(3, 2, SoVariant::So0).unwrap().poly(),
            &lp("(1 + u)^2*(1 + v)^2*(1 + u*v + u^2*v^2 + u^3*v^3 + u^4*v^4)")
        );
        assert!(hodge_collier_gothen(1, 2, SoVariant::So).is_err());
        assert!(hodge_collier_gothen(2, 1, SoVariant::So0).is_err());
        assert_eq!(hodge_number(&so, 1, 1), BigInt::from(5));
    }

    #[test]
    fn so012_examples() {
        let h = hodge_so012_component(2, 2).unwrap();
        assert_eq!(h.poly(), &lp("(1 + u)^2*(1 + v)^2*(1 + u*v + u^2*v^2)"));
        assert_eq!(h.to_poincare(), lp("(1 - t)^4*(1 + t^2 + t^4)"));
        assert!(hodge_so012_component(1, 2).is_err());
    }

    #[test]
    fn hodge_validation() {
        assert!(HodgePolynomial::new(lp("u"), None).is_err());
        assert!(HodgePolynomial::new(lp("1 - u*v"), None).is_err());
        assert!(HodgePolynomial::new(lp("u*t + v*t"), None).is_err());
        assert!(HodgePolynomial::new(lp("u + v"), None).is_ok());
    }

    #[test]
    fn delegations() {
        let p = CurveParams::new(2, 2).unwrap();
        assert_eq!(
            poincare_unn(1, 2).unwrap().coeffs(),
            poincare_gl_with(1, &p, WeilMode::Early).unwrap().coeffs()
        );
        assert_eq!(poincare_punn(1, 3).unwrap().to_laurent(), lp("t^12"));
        assert_eq!(poincare_unn(1, 2).unwrap().spec().group, Group::Unn);
    }

    #[test]
    fn method_restrictions() {
        let gl = ComponentSpec::new(Group::Gl, Some(1), 2, Some(2)).unwrap();
        assert!(compute(&gl, Method::Closed, WeilMode::Early).is_err());
        assert!(compute(&gl, Method::Pipeline, WeilMode::Early).is_ok());
        let so = ComponentSpec::new(Group::So, Some(2), 2, None).unwrap();
        assert!(matches!(
            compute(&so, Method::Both, WeilMode::Early),
            Ok(Invariant::Hodge(_))
        ));
        assert!(poincare_so0_nn2(4, 2, Method::Closed).is_err());
    }
}
