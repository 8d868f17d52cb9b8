//! Job keys and result records: the serialized form of a computed invariant.

use std::time::Duration;

use cayley_ic::arith::{BigInt, BigRational, LaurentPoly, Monomial, Variable};
use cayley_ic::cayley::{Invariant, Method};
use cayley_ic::pipeline::WeilMode;
use cayley_ic::{ComponentSpec, Group};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

/// Everything that determines a computed result.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JobKey {
    pub schema: u32,
    pub group: String,
    pub n: Option<u32>,
    pub g: u32,
    pub l: Option<u32>,
    pub method: String,
    pub mode: String,
    /// Largest rank whose series coefficient is needed; `None` for Hodge
    /// polynomials, which involve no series.
    pub order: Option<u32>,
}

impl JobKey {
    pub fn new(spec: &ComponentSpec, method: Method, mode: WeilMode) -> JobKey {
        let order = match spec.group {
            Group::So | Group::So0 | Group::So012 => None,
            Group::So0Nn2 => Some(2),
            Group::E6 => Some(3),
            Group::Gl | Group::Pgl | Group::Unn | Group::Punn => spec.rank,
        };
        JobKey {
            schema: SCHEMA,
            group: spec.group.cli_name().to_string(),
            n: spec.rank,
            g: spec.genus,
            l: spec.twist,
            method: method.to_string(),
            mode: mode.to_string(),
            order,
        }
    }

    /// Canonical serialization, the input of the cache file name hash.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// `"t"` or `["u", "v"]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VariableNames {
    Single(String),
    Several(Vec<String>),
}

impl VariableNames {
    pub fn names(&self) -> Vec<&str> {
        match self {
            VariableNames::Single(v) => vec![v.as_str()],
            VariableNames::Several(vs) => vs.iter().map(String::as_str).collect(),
        }
    }
}

/// One term: exponents, one per variable, and the decimal coefficient.
pub type Term = (Vec<u32>, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub key: JobKey,
    pub variable: VariableNames,
    /// Sorted by total degree, then lexicographically.
    pub terms: Vec<Term>,
    pub provenance: String,
    pub wall_time_ms: u64,
}

impl ResultRecord {
    pub fn from_invariant(key: JobKey, inv: &Invariant, elapsed: Duration) -> ResultRecord {
        let (variable, poly) = match inv {
            Invariant::Poincare(p) => (VariableNames::Single("t".into()), p.to_laurent()),
            Invariant::Hodge(h) => (
                VariableNames::Several(vec!["u".into(), "v".into()]),
                h.poly().clone(),
            ),
        };
        let vars = match &variable {
            VariableNames::Single(_) => vec![Variable::T],
            VariableNames::Several(_) => vec![Variable::U, Variable::V],
        };
        ResultRecord {
            key,
            variable,
            terms: terms_of(&poly, &vars),
            provenance: inv.provenance().to_string(),
            wall_time_ms: elapsed.as_millis() as u64,
        }
    }

    /// The polynomial the terms describe.
    pub fn to_laurent(&self) -> Result<LaurentPoly, String> {
        let vars = self
            .variable
            .names()
            .iter()
            .map(|v| match *v {
                "t" => Ok(Variable::T),
                "u" => Ok(Variable::U),
                "v" => Ok(Variable::V),
                other => Err(format!("unknown variable {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (exps, c) in &self.terms {
            if exps.len() != vars.len() {
                return Err(format!(
                    "term {exps:?} does not match variables {:?}",
                    self.variable
                ));
            }
            let pairs: Vec<_> = vars
                .iter()
                .zip(exps)
                .map(|(v, e)| (*v, *e as i32))
                .collect();
            let c: BigInt = c.parse().map_err(|_| format!("bad coefficient {c:?}"))?;
            terms.push((Monomial::from_pairs(&pairs), BigRational::from_integer(c)));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// Nonnegative-exponent integer terms of `poly` in `vars`, in record order.
pub fn terms_of(poly: &LaurentPoly, vars: &[Variable]) -> Vec<Term> {
    let mut terms: Vec<Term> = poly
        .terms()
        .iter()
        .map(|(m, c)| {
            let exps = vars.iter().map(|v| m.exp(*v) as u32).collect();
            (exps, c.to_integer().to_string())
        })
        .collect();
    terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), e.clone()));
    terms
}
