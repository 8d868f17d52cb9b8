//! Power series in the formal variable `T`, truncated after `T^N`, with
//! rational-function coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::RatFunc;
use crate::moebius::moebius;
use crate::{Error, Result};

/// Coefficients of `T^0..=T^N`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<RatFunc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl TruncSeries {
    pub fn zero(order: usize) -> TruncSeries {
        TruncSeries {
            coeffs: vec![RatFunc::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = RatFunc::one();
        s
    }

    /// Builds a series of the given order; missing coefficients are zero and
    /// coefficients past `T^order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = RatFunc>) -> TruncSeries {
        let mut coeffs: Vec<RatFunc> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, RatFunc::zero());
        TruncSeries { coeffs }
    }

    /// `c * T^k`, or zero when `k` exceeds the order.
    pub fn monomial(order: usize, k: usize, c: RatFunc) -> TruncSeries {
        let mut s = TruncSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RatFunc {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    fn same_order(&self, other: &TruncSeries) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(RatFunc::neg).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(RatFunc::zero(), |acc, i| {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect();
        Ok(TruncSeries { coeffs })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &RatFunc) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    fn scale_rational(&self, c: &BigRational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition(format!(
                "log needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        // n L_n = n f_n - sum_{k<n} k L_k f_{n-k}
        let n_max = self.order();
        let f = &self.coeffs;
        let mut l = vec![RatFunc::zero(); n_max + 1];
        for n in 1..=n_max {
            let mut acc = RatFunc::zero();
            for k in 1..n {
                if l[k].is_zero() || f[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&l[k].mul(&f[n - k]).scale(&rational(k as i64, 1)));
            }
            l[n] = f[n].sub(&acc.scale(&rational(1, n as i64)));
        }
        Ok(TruncSeries { coeffs: l })
    }

    /// Formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(format!(
                "exp needs constant term 0, got {}",
                self.coeffs[0]
            )));
        }
        // n g_n = sum_{k=1}^{n} k h_k g_{n-k}
        let n_max = self.order();
        let h = &self.coeffs;
        let mut g = vec![RatFunc::zero(); n_max + 1];
        g[0] = RatFunc::one();
        for n in 1..=n_max {
            let mut acc = RatFunc::zero();
            for k in 1..=n {
                if h[k].is_zero() || g[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&h[k].mul(&g[n - k]).scale(&rational(k as i64, 1)));
            }
            g[n] = acc.scale(&rational(1, n as i64));
        }
        Ok(TruncSeries { coeffs: g })
    }

    /// Adams operation: `T^m -> T^{km}` and every coefficient through
    /// [`RatFunc::adams`].
    pub fn adams(&self, k: u32) -> TruncSeries {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        let n = self.order();
        let mut out = TruncSeries::zero(n);
        for (m, c) in self.coeffs.iter().enumerate() {
            let target = m * k as usize;
            if target > n {
                break;
            }
            out.coeffs[target] = c.adams(k);
        }
        out
    }

    /// Plethystic logarithm `sum_k mu(k)/k * adams(log f, k)`; requires
    /// constant term 1.
    pub fn plethystic_log(&self) -> Result<TruncSeries> {
        let l = self.log()?;
        let n = self.order();
        let mut out = TruncSeries::zero(n);
        for k in 1..=n.max(1) {
            let mu = moebius(k as u64);
            if mu == 0 {
                continue;
            }
            out = out.add(
                &l.adams(k as u32)
                    .scale_rational(&rational(mu as i64, k as i64)),
            )?;
        }
        Ok(out)
    }

    /// Plethystic exponential `exp(sum_k adams(f, k)/k)`; requires constant
    /// term 0.
    pub fn plethystic_exp(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(format!(
                "plethystic exp needs constant term 0, got {}",
                self.coeffs[0]
            )));
        }
        let n = self.order();
        let mut sum = TruncSeries::zero(n);
        for k in 1..=n.max(1) {
            sum = sum.add(&self.adams(k as u32).scale_rational(&rational(1, k as i64)))?;
        }
        sum.exp()
    }
}

pub fn series_arith(a: &TruncSeries, b: &TruncSeries, which: SeriesOp) -> Result<TruncSeries> {
    match which {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
    }
}

pub fn series_log(f: &TruncSeries) -> Result<TruncSeries> {
    f.log()
}

pub fn series_exp(f: &TruncSeries) -> Result<TruncSeries> {
    f.exp()
}

pub fn series_adams(f: &TruncSeries, k: u32) -> TruncSeries {
    f.adams(k)
}

pub fn plethystic_log(f: &TruncSeries) -> Result<TruncSeries> {
    f.plethystic_log()
}

pub fn plethystic_exp(f: &TruncSeries) -> Result<TruncSeries> {
    f.plethystic_exp()
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*T^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(T^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LaurentPoly, Monomial, Variable};
    use proptest::prelude::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn series(order: usize, coeffs: &[&str]) -> TruncSeries {
        TruncSeries::from_coeffs(order, coeffs.iter().map(|s| r(s)))
    }

    fn geometric(order: usize) -> TruncSeries {
        TruncSeries::from_coeffs(order, std::iter::repeat_n(RatFunc::one(), order + 1))
    }

    #[test]
    fn products_truncate() {
        let a = series(2, &["1", "1"]);
        let b = series(2, &["1", "-1"]);
        assert_eq!(a.mul(&b).unwrap(), series(2, &["1", "0", "-1"]));
        let c = series(1, &["1", "1"]);
        assert_eq!(c.mul(&c).unwrap(), series(1, &["1", "2"]));
        assert_eq!(a.add(&TruncSeries::zero(2)).unwrap(), a);
        assert_eq!(a.mul(&c), Err(Error::OrderMismatch(2, 1)));
    }

    #[test]
    fn log_of_geometric_series() {
        let l = geometric(3).log().unwrap();
        assert_eq!(l, series(3, &["0", "1", "1/2", "1/3"]));
        assert_eq!(TruncSeries::zero(4).exp().unwrap(), TruncSeries::one(4));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            TruncSeries::zero(2).log(),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            TruncSeries::one(2).exp(),
            Err(Error::Precondition(_))
        ));
        assert!(TruncSeries::zero(2).plethystic_log().is_err());
        assert!(TruncSeries::one(2).plethystic_exp().is_err());
    }

    #[test]
    fn adams_examples() {
        let t = series(4, &["0", "1"]);
        assert_eq!(t.adams(2), series(4, &["0", "0", "1"]));
        let qt = series(4, &["0", "q"]);
        assert_eq!(qt.adams(2), series(4, &["0", "0", "q^2"]));
        assert_eq!(qt.adams(1), qt);
        assert_eq!(series(3, &["0", "0", "z"]).adams(2), TruncSeries::zero(3));
    }

    #[test]
    fn plethystic_examples() {
        assert_eq!(
            geometric(6).plethystic_log().unwrap(),
            series(6, &["0", "1"])
        );
        assert_eq!(
            TruncSeries::one(5).plethystic_log().unwrap(),
            TruncSeries::zero(5)
        );
        assert_eq!(
            series(4, &["0", "1"]).plethystic_exp().unwrap(),
            geometric(4)
        );
        assert_eq!(
            TruncSeries::zero(4).plethystic_exp().unwrap(),
            TruncSeries::one(4)
        );
    }

    #[test]
    fn exp_of_log_of_linear() {
        let s = series(5, &["1", "(q - z) / (1 - t*z)"]);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn plethystic_exp_of_q_t() {
        // Exp(qT) = 1/(1 - qT)
        let s = series(4, &["0", "q"]);
        assert_eq!(
            s.plethystic_exp().unwrap(),
            series(4, &["1", "q", "q^2", "q^3", "q^4"])
        );
    }

    fn arb_coeff() -> impl Strategy<Value = RatFunc> {
        let var = prop::sample::select(vec![Variable::Q, Variable::Z, Variable::T]);
        let term = (var.clone(), 0i32..3, -3i64..4);
        (
            prop::collection::vec(term.clone(), 1..3),
            prop::collection::vec(term, 1..3),
            1i32..3,
        )
            .prop_map(move |(nt, dt, shift)| {
                let poly = |ts: Vec<(Variable, i32, i64)>| {
                    LaurentPoly::from_terms(ts.into_iter().map(|(v, e, c)| {
                        (Monomial::var_pow(v, e), BigRational::from_integer(c.into()))
                    }))
                };
                let den =
                    poly(dt) + LaurentPoly::var_pow(Variable::Z, shift) + LaurentPoly::from_int(5);
                match RatFunc::new(poly(nt), den) {
                    Ok(f) => f,
                    Err(_) => RatFunc::one(),
                }
            })
    }

    fn arb_series(constant: i64) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec(arb_coeff(), 5).prop_map(move |cs| {
            TruncSeries::from_coeffs(5, std::iter::once(RatFunc::from_int(constant)).chain(cs))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn log_is_additive(f in arb_series(1), g in arb_series(1)) {
            let lhs = f.mul(&g).unwrap().plethystic_log().unwrap();
            let rhs = f.plethystic_log().unwrap().add(&g.plethystic_log().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn plethystic_round_trips(f in arb_series(1), h in arb_series(0)) {
            prop_assert_eq!(&f.plethystic_log().unwrap().plethystic_exp().unwrap(), &f);
            prop_assert_eq!(&h.plethystic_exp().unwrap().plethystic_log().unwrap(), &h);
            prop_assert_eq!(&h.exp().unwrap().log().unwrap(), &h);
        }

        #[test]
        fn exp_is_multiplicative(f in arb_series(0), g in arb_series(0)) {
            let lhs = f.add(&g).unwrap().plethystic_exp().unwrap();
            let rhs = f.plethystic_exp().unwrap().mul(&g.plethystic_exp().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
