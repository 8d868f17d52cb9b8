//! The verification harness: printed polynomials from a corpus file plus the
//! structural checks on pipeline outputs.

use std::fmt;

use cayley_ic::arith::{LaurentPoly, RatFunc, Variable};
use cayley_ic::cayley::{
    hodge_collier_gothen, hodge_so012_component, HodgePolynomial, Method, SoVariant,
};
use cayley_ic::pipeline::{
    poincare_gl, poincare_gl_all, poincare_gl_with, poincare_pgl, CurveParams, WeilMode,
};
use cayley_ic::series::TruncSeries;
use cayley_ic::{ComponentSpec, Group};
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Deserialize;

use crate::cache::Cache;
use crate::run_job;

type Outcome = Result<String, String>;
type CheckFn = fn() -> Outcome;

pub const DEFAULT_CORPUS: &str = include_str!("../data/printed.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct Corpus {
    pub entry: Vec<CorpusEntry>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub group: String,
    pub n: Option<u32>,
    pub g: u32,
    pub l: Option<u32>,
    pub methods: Vec<String>,
    pub polynomial: String,
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Corpus, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome.is_err()).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                Ok(detail) => writeln!(f, "PASS {}: {detail}", c.name)?,
                Err(why) => writeln!(f, "FAIL {}: {why}", c.name)?,
            }
        }
        write!(
            f,
            "{} checks, {} failed",
            self.checks.len(),
            self.failures()
        )
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s {
        "closed" => Ok(Method::Closed),
        "pipeline" => Ok(Method::Pipeline),
        "both" => Ok(Method::Both),
        other => Err(format!("unknown method {other:?}")),
    }
}

fn corpus_check(
    entry: &CorpusEntry,
    method: &str,
    mode: WeilMode,
    cache: Option<&Cache>,
) -> Outcome {
    let expected: LaurentPoly = entry
        .polynomial
        .parse()
        .map_err(|e| format!("corpus polynomial: {e}"))?;
    let group: Group = entry
        .group
        .parse()
        .map_err(|e: cayley_ic::Error| e.to_string())?;
    let spec = ComponentSpec::new(group, entry.n, entry.g, entry.l).map_err(|e| e.to_string())?;
    let record = run_job(&spec, parse_method(method)?, mode, cache).map_err(|e| e.to_string())?;
    let got = record.to_laurent()?;
    if got == expected {
        Ok(format!("{} terms match", expected.len()))
    } else {
        Err(format!(
            "expected {expected}, got {got}, difference (got - expected) {}",
            &got - &expected
        ))
    }
}

fn params(g: u32, l: u32) -> Result<CurveParams, String> {
    CurveParams::new(g, l).map_err(|e| e.to_string())
}

fn lp(s: &str) -> LaurentPoly {
    s.parse().expect("literal polynomial")
}

fn t_pow(e: u32) -> LaurentPoly {
    LaurentPoly::var_pow(Variable::T, e as i32)
}

fn rank_one() -> Outcome {
    for g in [2, 3] {
        for l in [2, 3, 5] {
            let shift = t_pow(2 * (2 * l - 1) * (g - 1));
            let want_gl = &shift * &lp("t - 1").pow(2 * g);
            let gl = poincare_gl(1, &params(g, l)?)
                .map_err(|e| e.to_string())?
                .to_laurent();
            if gl != want_gl {
                return Err(format!("GL(1) g={g} l={l}: expected {want_gl}, got {gl}"));
            }
            let pgl = poincare_pgl(1, &params(g, l)?)
                .map_err(|e| e.to_string())?
                .to_laurent();
            if pgl != shift {
                return Err(format!("PGL(1) g={g} l={l}: expected {shift}, got {pgl}"));
            }
        }
    }
    Ok("6 (g, l) pairs".into())
}

fn gl_structure() -> Outcome {
    let mut count = 0;
    for g in 2..=3u32 {
        for l in 2..=5u32 {
            let all =
                poincare_gl_all(3, &params(g, l)?, WeilMode::Early).map_err(|e| e.to_string())?;
            for (p, n) in all.iter().zip(1u32..) {
                let what = format!("GL({n}) g={g} l={l}");
                let want = 2 * (n * n * l * (2 * g - 2) + 1) as usize;
                if p.degree() != want {
                    return Err(format!(
                        "{what}: expected degree {want}, got {}",
                        p.degree()
                    ));
                }
                if !p.coeff(want).is_one() {
                    return Err(format!("{what}: leading coefficient {}", p.coeff(want)));
                }
                if p.to_laurent().div_exact(&lp("t - 1").pow(2 * g)).is_err() {
                    return Err(format!("{what}: not divisible by (t-1)^{}", 2 * g));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} outputs"))
}

fn mode_commutation() -> Outcome {
    for (n, g, l) in [(1, 2, 2), (2, 2, 2), (2, 2, 3)] {
        let early =
            poincare_gl_with(n, &params(g, l)?, WeilMode::Early).map_err(|e| e.to_string())?;
        let late =
            poincare_gl_with(n, &params(g, l)?, WeilMode::Late).map_err(|e| e.to_string())?;
        if early.coeffs() != late.coeffs() {
            return Err(format!("(n,g,l)=({n},{g},{l}): early {early}, late {late}"));
        }
    }
    Ok("3 cases".into())
}

fn random_series(rng: &mut StdRng, order: usize) -> TruncSeries {
    let mut coeffs = vec![RatFunc::one()];
    for _ in 0..order {
        let mut c = || rng.gen_range(-4i64..=4);
        let num = lp(&format!("{} {:+}*q {:+}*z*t", c(), c(), c()));
        let den = lp(&format!("1 {:+}*q {:+}*u^2", c().abs() + 1, c()));
        coeffs.push(RatFunc::new(num, den).expect("denominator has a constant term"));
    }
    TruncSeries::from_coeffs(order, coeffs)
}

fn plethystic_round_trips() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..20 {
        let f = random_series(&mut rng, 5);
        let g = random_series(&mut rng, 5);
        let err = |e: cayley_ic::Error| format!("series {i}: {e}");
        let log_f = f.plethystic_log().map_err(err)?;
        if log_f.plethystic_exp().map_err(err)? != f {
            return Err(format!("series {i}: Exp(Log F) != F"));
        }
        let lhs = f.mul(&g).map_err(err)?.plethystic_log().map_err(err)?;
        if lhs != log_f.add(&g.plethystic_log().map_err(err)?).map_err(err)? {
            return Err(format!("series {i}: Log(FG) != Log F + Log G"));
        }
    }
    Ok("20 series at N=5".into())
}

fn symmetric_nonnegative(h: &HodgePolynomial) -> bool {
    let terms = h.terms();
    terms
        .iter()
        .all(|((i, j), c)| !c.is_negative() && terms.contains(&((*j, *i), c.clone())))
}

fn hodge_properties() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        for g in 2..=3 {
            for h in [
                hodge_collier_gothen(n, g, SoVariant::So),
                hodge_collier_gothen(n, g, SoVariant::So0),
                hodge_so012_component(n, g),
            ] {
                let h = h.map_err(|e| format!("(n,g)=({n},{g}): {e}"))?;
                if !symmetric_nonnegative(&h) {
                    return Err(format!("(n,g)=({n},{g}): {h}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} outputs"))
}

/// Runs every corpus entry under each of its methods, then the structural
/// checks.
pub fn verify(corpus: &Corpus, mode: WeilMode, cache: Option<&Cache>) -> Report {
    let mut checks = Vec::new();
    for entry in &corpus.entry {
        for method in &entry.methods {
            checks.push(Check {
                name: format!("{} [{method}]", entry.name),
                outcome: corpus_check(entry, method, mode, cache),
            });
        }
    }
    let builtin: [(&str, CheckFn); 5] = [
        ("rank-1 closed form", rank_one),
        ("GL structural invariants n<=3 g<=3 l<=5", gl_structure),
        ("early/late mode commutation", mode_commutation),
        ("plethystic round trips", plethystic_round_trips),
        ("Hodge symmetry and positivity", hodge_properties),
    ];
    for (name, run) in builtin {
        checks.push(Check {
            name: name.to_string(),
            outcome: run(),
        });
    }
    Report { checks }
}
