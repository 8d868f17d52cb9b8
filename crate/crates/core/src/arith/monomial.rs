use std::cmp::Ordering;
use std::fmt;

/// Largest genus whose Weil numbers fit in the alphabet.
pub const MAX_GENUS: usize = 10;

/// Number of slots in an exponent vector.
pub const NVARS: usize = 6 + MAX_GENUS;

/// A variable of the fixed alphabet. The declaration order is the
/// significance order used by the monomial ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Q,
    Z,
    T,
    U,
    V,
    /// The formal series variable `T`.
    Formal,
    /// Weil number `α_i`, `1 <= i <= MAX_GENUS`.
    Weil(u8),
}

impl Variable {
    pub fn weil(i: usize) -> Variable {
        assert!(
            (1..=MAX_GENUS).contains(&i),
            "Weil index {i} outside 1..={MAX_GENUS}"
        );
        Variable::Weil(i as u8)
    }

    pub fn index(self) -> usize {
        match self {
            Variable::Q => 0,
            Variable::Z => 1,
            Variable::T => 2,
            Variable::U => 3,
            Variable::V => 4,
            Variable::Formal => 5,
            Variable::Weil(i) => 5 + i as usize,
        }
    }

    pub fn from_index(idx: usize) -> Variable {
        match idx {
            0 => Variable::Q,
            1 => Variable::Z,
            2 => Variable::T,
            3 => Variable::U,
            4 => Variable::V,
            5 => Variable::Formal,
            i if i < NVARS => Variable::Weil((i - 5) as u8),
            _ => panic!("variable index {idx} out of range"),
        }
    }

    pub fn name(self) -> String {
        match self {
            Variable::Q => "q".into(),
            Variable::Z => "z".into(),
            Variable::T => "t".into(),
            Variable::U => "u".into(),
            Variable::V => "v".into(),
            Variable::Formal => "T".into(),
            Variable::Weil(i) => format!("a{i}"),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector over the alphabet; negative exponents are allowed.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `q`, then `z`, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Variable) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: i32) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(Variable, i32)]) -> Monomial {
        let mut m = Monomial::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn exp(&self, v: Variable) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        out
    }

    /// `self / other`, exponents may go negative.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o -= e;
        }
        out
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = *self;
        for e in out.0.iter_mut() {
            *e *= k;
        }
        out
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = (*o).min(*e);
        }
        out
    }

    /// True when every exponent of `self` is at least the matching exponent
    /// of `other`.
    pub fn dominates(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Variables with a nonzero exponent, in alphabet order.
    pub fn support(&self) -> impl Iterator<Item = (Variable, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Variable::from_index(i), e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_alphabet() {
        let q = Monomial::var(Variable::Q);
        let z = Monomial::var(Variable::Z);
        let t2 = Monomial::var_pow(Variable::T, 2);
        assert!(q > z);
        assert!(t2 > q);
        assert!(Monomial::ONE < z);
        assert!(Monomial::var_pow(Variable::T, -1) < Monomial::ONE);
    }

    #[test]
    fn weil_indices_round_trip() {
        for i in 1..=MAX_GENUS {
            let v = Variable::weil(i);
            assert_eq!(Variable::from_index(v.index()), v);
        }
        assert_eq!(Variable::weil(1).index(), 6);
    }

    #[test]
    fn display() {
        let m = Monomial::from_pairs(&[(Variable::T, 3), (Variable::Z, -1)]);
        assert_eq!(m.to_string(), "z^-1*t^3");
    }
}
