//! Labels for the groups and components whose invariants the crate computes.

use std::fmt;
use std::str::FromStr;

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// `GL(n, C)` with `K^l` twist.
    Gl,
    /// `PGL(n, C)` with `K^l` twist.
    Pgl,
    /// Cayley component of `SO(n, n+1)`.
    So,
    /// Cayley component of `SO_0(n, n+1)`.
    So0,
    /// Component of `K^n`-twisted `SO_0(1, 2)` Higgs bundles.
    So012,
    /// Cayley component of `SO_0(n, n+2)`, `n` odd.
    So0Nn2,
    /// Cayley component of the quaternionic real form of `E6`.
    E6,
    /// Maximal Toledo component of `U(n, n)`.
    Unn,
    /// Higher rank Teichmüller component of `PU(n, n)`.
    Punn,
}

/// The topological types `d` an output is valid for. The polynomials do not
/// depend on `d`; this is metadata only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeLabel {
    /// Every `d` in `Z`.
    AllIntegers,
    /// Every `d` in `Z/k`.
    Cyclic(u32),
    /// The invariant carries no degree label.
    None,
}

impl Group {
    pub const ALL: [Group; 9] = [
        Group::Gl,
        Group::Pgl,
        Group::So,
        Group::So0,
        Group::So012,
        Group::So0Nn2,
        Group::E6,
        Group::Unn,
        Group::Punn,
    ];

    /// Command-line spelling.
    pub fn cli_name(self) -> &'static str {
        match self {
            Group::Gl => "gl",
            Group::Pgl => "pgl",
            Group::So => "so",
            Group::So0 => "so0",
            Group::So012 => "so012",
            Group::So0Nn2 => "so0-nn2",
            Group::E6 => "e6",
            Group::Unn => "unn",
            Group::Punn => "punn",
        }
    }

    /// Human-readable label, e.g. `PGL(2,C)` or `SO0(3,5)`.
    pub fn label(self, n: Option<u32>) -> String {
        let n_str = n.map_or_else(|| "n".to_string(), |n| n.to_string());
        let n_plus = |k: u32| n.map_or_else(|| format!("n+{k}"), |n| (n + k).to_string());
        match self {
            Group::Gl => format!("GL({n_str},C)"),
            Group::Pgl => format!("PGL({n_str},C)"),
            Group::So => format!("SO({n_str},{})", n_plus(1)),
            Group::So0 => format!("SO0({n_str},{})", n_plus(1)),
            Group::So012 => format!("SO0(1,2) twisted by K^{n_str}"),
            Group::So0Nn2 => format!("SO0({n_str},{})", n_plus(2)),
            Group::E6 => "E6 quaternionic".to_string(),
            Group::Unn => format!("U({n_str},{n_str})"),
            Group::Punn => format!("PU({n_str},{n_str})"),
        }
    }

    pub fn degree_label(self, n: Option<u32>) -> DegreeLabel {
        match self {
            Group::Gl | Group::Unn => DegreeLabel::AllIntegers,
            Group::Pgl | Group::Punn => DegreeLabel::Cyclic(n.unwrap_or(1)),
            Group::So0Nn2 => DegreeLabel::Cyclic(2),
            Group::E6 => DegreeLabel::Cyclic(3),
            Group::So | Group::So0 | Group::So012 => DegreeLabel::None,
        }
    }

    /// Whether the output is a Hodge polynomial in `u, v` rather than a
    /// Poincaré polynomial in `t`.
    pub fn is_hodge(self) -> bool {
        matches!(self, Group::So | Group::So0 | Group::So012)
    }
}

/// A concrete invariant request: which group or component, and its
/// parameters. Fields that do not apply to the group are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSpec {
    pub group: Group,
    pub rank: Option<u32>,
    pub genus: u32,
    pub twist: Option<u32>,
}

impl ComponentSpec {
    /// Validates the parameters against the group's preconditions.
    pub fn new(
        group: Group,
        rank: Option<u32>,
        genus: u32,
        twist: Option<u32>,
    ) -> Result<ComponentSpec, Error> {
        let invalid = |msg: String| Err(Error::InvalidParameter(msg));
        if genus < 2 {
            return invalid(format!("genus must be at least 2, got {genus}"));
        }
        let needs_twist = matches!(group, Group::Gl | Group::Pgl);
        match (needs_twist, twist) {
            (true, None) => return invalid(format!("{group} needs a twist l")),
            (true, Some(l)) if l < 2 => {
                return invalid(format!("twist must be at least 2, got {l}"))
            }
            (false, Some(_)) => return invalid(format!("{group} has no free twist parameter")),
            _ => {}
        }
        let min_rank = match group {
            Group::E6 => {
                if rank.is_some() {
                    return invalid("e6 takes no rank parameter".into());
                }
                return Ok(ComponentSpec {
                    group,
                    rank,
                    genus,
                    twist,
                });
            }
            Group::Gl | Group::Pgl | Group::Unn | Group::Punn => 1,
            Group::So | Group::So0 | Group::So012 => 2,
            Group::So0Nn2 => 3,
        };
        let Some(n) = rank else {
            return invalid(format!("{group} needs a rank n"));
        };
        if n < min_rank {
            return invalid(format!("{group} needs n >= {min_rank}, got {n}"));
        }
        if group == Group::So0Nn2 && n % 2 == 0 {
            return invalid(format!("{group} needs n odd, got {n}"));
        }
        Ok(ComponentSpec {
            group,
            rank,
            genus,
            twist,
        })
    }

    pub fn label(&self) -> String {
        self.group.label(self.rank)
    }

    pub fn degree_label(&self) -> DegreeLabel {
        self.group.degree_label(self.rank)
    }
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Pipeline,
    ClosedFormula,
    /// Closed formula and pipeline were both evaluated and agree.
    BothAgree,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Pipeline => "pipeline",
            Provenance::ClosedFormula => "closed-formula",
            Provenance::BothAgree => "both-agree",
        })
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Group, Error> {
        let lower = s.to_ascii_lowercase();
        Group::ALL
            .into_iter()
            .find(|g| g.cli_name() == lower)
            .or(match lower.as_str() {
                "so-odd" => Some(Group::So0Nn2),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidParameter(format!("unknown group {s:?}")))
    }
}

impl fmt::Display for DegreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeLabel::AllIntegers => f.write_str("every d in Z"),
            DegreeLabel::Cyclic(k) => write!(f, "every d in Z/{k}"),
            DegreeLabel::None => f.write_str("-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for g in Group::ALL {
            assert_eq!(g.cli_name().parse::<Group>().unwrap(), g);
        }
        assert_eq!("so-odd".parse::<Group>().unwrap(), Group::So0Nn2);
        assert!("sl".parse::<Group>().is_err());
    }

    #[test]
    fn component_preconditions() {
        assert!(ComponentSpec::new(Group::So0Nn2, Some(2), 2, None).is_err());
        assert!(ComponentSpec::new(Group::So0Nn2, Some(3), 2, None).is_ok());
        assert!(ComponentSpec::new(Group::So0Nn2, Some(1), 2, None).is_err());
        assert!(ComponentSpec::new(Group::So, Some(1), 2, None).is_err());
        assert!(ComponentSpec::new(Group::E6, None, 2, None).is_ok());
        assert!(ComponentSpec::new(Group::E6, Some(3), 2, None).is_err());
        assert!(ComponentSpec::new(Group::Gl, Some(2), 2, None).is_err());
        assert!(ComponentSpec::new(Group::Gl, Some(2), 2, Some(1)).is_err());
        assert!(ComponentSpec::new(Group::Pgl, Some(2), 2, Some(3)).is_ok());
        assert!(ComponentSpec::new(Group::Unn, Some(1), 2, Some(2)).is_err());
        assert!(ComponentSpec::new(Group::Punn, Some(1), 1, None).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(Group::So0Nn2.label(Some(3)), "SO0(3,5)");
        assert_eq!(Group::Pgl.degree_label(Some(3)), DegreeLabel::Cyclic(3));
        assert_eq!(Group::E6.degree_label(None).to_string(), "every d in Z/3");
    }
}
