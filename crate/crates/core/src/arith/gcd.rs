//! Multivariate polynomial gcd over the rationals.
//!
//! Dense modular algorithm (Brown): images modulo 31-bit primes are computed
//! by recursive evaluation and Newton interpolation down to the univariate
//! Euclidean algorithm, lifted with the Chinese remainder theorem, and
//! accepted only once trial division over the integers succeeds. The trial
//! division also yields the cofactors, which callers need anyway.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Monomial, Variable};
use super::poly::LaurentPoly;

type Exps = Vec<u32>;
type ZPoly = BTreeMap<Exps, BigInt>;
type MPoly = BTreeMap<Exps, u64>;
type UPoly = Vec<u64>;

pub(crate) struct GcdCofactors {
    pub gcd: LaurentPoly,
    pub cofactor_a: LaurentPoly,
    pub cofactor_b: LaurentPoly,
}

/// Greatest common divisor in the Laurent polynomial ring, normalized to have
/// no monomial factor, coprime integer coefficients and a positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => LaurentPoly::zero(),
        (true, false) => b.split_monomial().1.primitive(),
        (false, true) => a.split_monomial().1.primitive(),
        (false, false) => gcd_cofactors(a, b).gcd,
    }
}

/// Gcd of two nonzero Laurent polynomials together with `a / gcd` and
/// `b / gcd`.
pub(crate) fn gcd_cofactors(a: &LaurentPoly, b: &LaurentPoly) -> GcdCofactors {
    assert!(
        !a.is_zero() && !b.is_zero(),
        "gcd_cofactors needs nonzero input"
    );
    let (shift_a, a_s) = a.split_monomial();
    let (shift_b, b_s) = b.split_monomial();
    let trivial = || GcdCofactors {
        gcd: LaurentPoly::one(),
        cofactor_a: a.clone(),
        cofactor_b: b.clone(),
    };
    if a_s.as_constant().is_some() || b_s.as_constant().is_some() {
        return trivial();
    }

    let content_a = a_s.content();
    let content_b = b_s.content();
    let prim_a = a_s.scale(&content_a.recip());
    let prim_b = b_s.scale(&content_b.recip());

    let mut vars = prim_a.variables();
    for v in prim_b.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();

    let za = to_zpoly(&prim_a, &vars);
    let zb = to_zpoly(&prim_b, &vars);
    let (g, qa, qb) = if za == zb {
        let one: ZPoly = [(vec![0; vars.len()], BigInt::one())].into_iter().collect();
        (za.clone(), one.clone(), one)
    } else {
        match modular_gcd(&za, &zb, vars.len()) {
            None => return trivial(),
            Some(r) => r,
        }
    };

    let mut gcd = from_zpoly(&g, &vars);
    let mut cofactor_a = from_zpoly(&qa, &vars)
        .scale(&content_a)
        .mul_monomial(&shift_a);
    let mut cofactor_b = from_zpoly(&qb, &vars)
        .scale(&content_b)
        .mul_monomial(&shift_b);
    if gcd.leading().is_some_and(|(_, c)| c.is_negative()) {
        gcd = -gcd;
        cofactor_a = -cofactor_a;
        cofactor_b = -cofactor_b;
    }
    GcdCofactors {
        gcd,
        cofactor_a,
        cofactor_b,
    }
}

fn to_zpoly(p: &LaurentPoly, vars: &[Variable]) -> ZPoly {
    p.terms()
        .iter()
        .map(|(m, c)| {
            debug_assert!(c.is_integer());
            let key = vars.iter().map(|&v| m.exp(v) as u32).collect();
            (key, c.numer().clone())
        })
        .collect()
}

fn from_zpoly(z: &ZPoly, vars: &[Variable]) -> LaurentPoly {
    LaurentPoly::from_terms(z.iter().map(|(key, c)| {
        let mut m = Monomial::ONE;
        for (&v, &e) in vars.iter().zip(key.iter()) {
            m.0[v.index()] = e as i32;
        }
        (m, BigRational::from_integer(c.clone()))
    }))
}

// ---------------------------------------------------------------------------
// primes and Z/p arithmetic

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < 256 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy)]
struct Zp {
    p: u64,
}

impl Zp {
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    fn reduce(self, c: &BigInt) -> u64 {
        let r = c.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }
}

/// xorshift64*, used only to pick evaluation points.
struct PointSource(u64);

impl PointSource {
    fn next_below(&mut self, p: u64) -> u64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_f491_4f6c_dd1d) % p
    }
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over Z/p (index = degree, no trailing zeros)

fn u_trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn u_eval(f: Zp, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn u_scale(f: Zp, a: &[u64], s: u64) -> UPoly {
    u_trim(a.iter().map(|&c| f.mul(c, s)).collect())
}

fn u_mul(f: Zp, a: &[u64], b: &[u64]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    u_trim(out)
}

fn u_add(f: Zp, a: &[u64], b: &[u64]) -> UPoly {
    let n = a.len().max(b.len());
    u_trim(
        (0..n)
            .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

fn u_divrem(f: Zp, a: &[u64], b: &[u64]) -> (UPoly, UPoly) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let inv_lead = f.inv(b[db]);
    let mut quot = vec![0; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = f.mul(rem[i + db], inv_lead);
        quot[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, bj));
            }
        }
    }
    rem.truncate(db);
    (u_trim(quot), u_trim(rem))
}

fn u_monic(f: Zp, a: UPoly) -> UPoly {
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead);
            u_scale(f, &a, inv)
        }
    }
}

fn u_gcd(f: Zp, a: &[u64], b: &[u64]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = u_divrem(f, &x, &y);
        x = y;
        y = r;
    }
    u_monic(f, x)
}

fn u_deg(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

// ---------------------------------------------------------------------------
// multivariate gcd over Z/p

fn m_monic(f: Zp, a: MPoly) -> MPoly {
    match a.last_key_value() {
        None => a,
        Some((_, &lead)) => {
            let inv = f.inv(lead);
            a.into_iter().map(|(k, c)| (k, f.mul(c, inv))).collect()
        }
    }
}

fn m_is_constant(a: &MPoly) -> bool {
    a.len() == 1 && a.keys().next().unwrap().iter().all(|&e| e == 0)
}

/// Views a `k`-variate polynomial as a polynomial in the first `k - 1`
/// variables with univariate coefficients in the last one.
fn split_last(f: Zp, a: &MPoly) -> BTreeMap<Exps, UPoly> {
    let mut out: BTreeMap<Exps, UPoly> = BTreeMap::new();
    for (key, &c) in a {
        let (head, last) = key.split_at(key.len() - 1);
        let e = last[0] as usize;
        let slot = out.entry(head.to_vec()).or_default();
        if slot.len() <= e {
            slot.resize(e + 1, 0);
        }
        slot[e] = f.add(slot[e], c);
    }
    out
}

fn join_last(a: &BTreeMap<Exps, UPoly>) -> MPoly {
    let mut out = MPoly::new();
    for (head, coeffs) in a {
        for (e, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut key = head.clone();
                key.push(e as u32);
                out.insert(key, c);
            }
        }
    }
    out
}

fn eval_last(f: Zp, a: &BTreeMap<Exps, UPoly>, x: u64) -> MPoly {
    a.iter()
        .filter_map(|(head, coeffs)| {
            let v = u_eval(f, coeffs, x);
            (v != 0).then(|| (head.clone(), v))
        })
        .collect()
}

fn content_last(f: Zp, a: &BTreeMap<Exps, UPoly>) -> UPoly {
    let mut g: UPoly = Vec::new();
    for coeffs in a.values() {
        g = u_gcd(f, &g, coeffs);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn divide_coeffs(f: Zp, a: &BTreeMap<Exps, UPoly>, d: &[u64]) -> BTreeMap<Exps, UPoly> {
    if d.len() == 1 && d[0] == 1 {
        return a.clone();
    }
    a.iter()
        .map(|(k, c)| {
            let (q, r) = u_divrem(f, c, d);
            debug_assert!(r.is_empty());
            (k.clone(), q)
        })
        .collect()
}

/// Monic gcd (leading coefficient 1 in lexicographic order) of two
/// polynomials in `k` variables over Z/p.
fn pgcd(f: Zp, a: &MPoly, b: &MPoly, k: usize, points: &mut PointSource) -> MPoly {
    if a.is_empty() {
        return m_monic(f, b.clone());
    }
    if b.is_empty() {
        return m_monic(f, a.clone());
    }
    let one = || -> MPoly { [(vec![0; k], 1)].into_iter().collect() };
    if k == 0 {
        return one();
    }
    if k == 1 {
        let dense = |m: &MPoly| -> UPoly {
            let top = m.keys().map(|e| e[0] as usize).max().unwrap_or(0);
            let mut v = vec![0; top + 1];
            for (e, &c) in m {
                v[e[0] as usize] = c;
            }
            u_trim(v)
        };
        let g = u_gcd(f, &dense(a), &dense(b));
        return g
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (vec![e as u32], c))
            .collect();
    }

    let sa = split_last(f, a);
    let sb = split_last(f, b);
    let cont_a = content_last(f, &sa);
    let cont_b = content_last(f, &sb);
    let cont = u_gcd(f, &cont_a, &cont_b);
    let sa = divide_coeffs(f, &sa, &cont_a);
    let sb = divide_coeffs(f, &sb, &cont_b);

    let lc_a = sa.last_key_value().unwrap().1.clone();
    let lc_b = sb.last_key_value().unwrap().1.clone();
    let gamma = u_gcd(f, &lc_a, &lc_b);
    let deg_a = sa.values().map(|c| u_deg(c)).max().unwrap_or(0);
    let deg_b = sb.values().map(|c| u_deg(c)).max().unwrap_or(0);
    let bound = deg_a.min(deg_b) + u_deg(&gamma);

    let with_content = |h: BTreeMap<Exps, UPoly>| -> MPoly {
        let h: BTreeMap<Exps, UPoly> = h
            .into_iter()
            .map(|(k, c)| (k, u_mul(f, &c, &cont)))
            .collect();
        m_monic(f, join_last(&h))
    };

    let mut interp: BTreeMap<Exps, UPoly> = BTreeMap::new();
    let mut lead: Option<Exps> = None;
    let mut modulus: UPoly = vec![1];
    let mut npoints = 0usize;
    loop {
        let x = points.next_below(f.p);
        if u_eval(f, &modulus, x) == 0 || u_eval(f, &lc_a, x) == 0 || u_eval(f, &lc_b, x) == 0 {
            continue;
        }
        let image = pgcd(
            f,
            &eval_last(f, &sa, x),
            &eval_last(f, &sb, x),
            k - 1,
            points,
        );
        if m_is_constant(&image) {
            // primitive parts are coprime
            let c: BTreeMap<Exps, UPoly> = [(vec![0; k - 1], vec![1])].into_iter().collect();
            return with_content(c);
        }
        let image_lead = image.last_key_value().unwrap().0.clone();
        let scale = u_eval(f, &gamma, x);
        match &lead {
            Some(l) if image_lead > *l => continue,
            Some(l) if image_lead == *l => {
                let minv = f.inv(u_eval(f, &modulus, x));
                let mut keys: Vec<Exps> = interp.keys().cloned().collect();
                keys.extend(image.keys().filter(|k| !interp.contains_key(*k)).cloned());
                for key in keys {
                    let target = f.mul(*image.get(&key).unwrap_or(&0), scale);
                    let current = interp.get(&key).map(|c| u_eval(f, c, x)).unwrap_or(0);
                    let delta = f.mul(f.sub(target, current), minv);
                    if delta != 0 {
                        let step = u_scale(f, &modulus, delta);
                        let entry = interp.entry(key).or_default();
                        *entry = u_add(f, entry, &step);
                    }
                }
                interp.retain(|_, c| !c.is_empty());
            }
            _ => {
                interp = image
                    .iter()
                    .map(|(k, &c)| (k.clone(), vec![f.mul(c, scale)]))
                    .collect();
                lead = Some(image_lead);
                modulus = vec![1];
                npoints = 0;
            }
        }
        modulus = u_mul(f, &modulus, &[f.sub(0, x), 1]);
        npoints += 1;
        if npoints > bound {
            let c = content_last(f, &interp);
            let pp = divide_coeffs(f, &interp, &c);
            return with_content(pp);
        }
    }
}

// ---------------------------------------------------------------------------
// lifting over the integers

fn reduce_zpoly(f: Zp, a: &ZPoly) -> MPoly {
    a.iter()
        .filter_map(|(k, c)| {
            let r = f.reduce(c);
            (r != 0).then(|| (k.clone(), r))
        })
        .collect()
}

fn crt_combine(acc: &ZPoly, modulus: &BigInt, image: &MPoly, f: Zp) -> ZPoly {
    let p = BigInt::from(f.p);
    let inv = f.inv(f.reduce(modulus));
    let full = modulus * &p;
    let half = &full >> 1;
    let mut keys: Vec<&Exps> = acc.keys().collect();
    keys.extend(image.keys().filter(|k| !acc.contains_key(*k)));
    let zero = BigInt::zero();
    let mut out = ZPoly::new();
    for key in keys {
        let x = acc.get(key).unwrap_or(&zero);
        let v = *image.get(key).unwrap_or(&0);
        let s = f.mul(f.sub(v, f.reduce(x)), inv);
        let mut y = (x + modulus * BigInt::from(s)).mod_floor(&full);
        if y > half {
            y -= &full;
        }
        if !y.is_zero() {
            out.insert(key.clone(), y);
        }
    }
    out
}

fn symmetric_lift(image: &MPoly, f: Zp) -> ZPoly {
    image
        .iter()
        .map(|(k, &c)| {
            let c = if c > f.p / 2 {
                BigInt::from(c) - BigInt::from(f.p)
            } else {
                BigInt::from(c)
            };
            (k.clone(), c)
        })
        .collect()
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let g = a.values().fold(BigInt::zero(), |g, c| g.gcd(c));
    let g = if a.last_key_value().is_some_and(|(_, c)| c.is_negative()) {
        -g
    } else {
        g
    };
    a.iter().map(|(k, c)| (k.clone(), c / &g)).collect()
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Exact division over the integers in lexicographic order.
fn z_div_exact(n: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let (lead_key, lead_c) = d.last_key_value()?;
    let mut rem = n.clone();
    let mut quot = ZPoly::new();
    while let Some((key, c)) = rem.pop_last() {
        if !dominates(&key, lead_key) {
            return None;
        }
        let (qc, r) = c.div_rem(lead_c);
        if !r.is_zero() {
            return None;
        }
        let qk: Exps = key.iter().zip(lead_key).map(|(a, b)| a - b).collect();
        for (dk, dc) in d.iter().rev().skip(1) {
            let k: Exps = qk.iter().zip(dk).map(|(a, b)| a + b).collect();
            let delta = &qc * dc;
            match rem.entry(k) {
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
        quot.insert(qk, qc);
    }
    Some(quot)
}

/// Gcd of two primitive integer polynomials with cofactors; `None` when the
/// gcd is 1.
fn modular_gcd(a: &ZPoly, b: &ZPoly, k: usize) -> Option<(ZPoly, ZPoly, ZPoly)> {
    let lc_a = a.last_key_value().unwrap().1;
    let lc_b = b.last_key_value().unwrap().1;
    let gamma = lc_a.gcd(lc_b);

    let mut acc: Option<(ZPoly, BigInt, Exps)> = None;
    for (i, &p) in primes().iter().cycle().enumerate() {
        let f = Zp { p };
        if f.reduce(lc_a) == 0 || f.reduce(lc_b) == 0 {
            continue;
        }
        let mut points = PointSource(0x9e37_79b9_7f4a_7c15 ^ (i as u64 + 1).wrapping_mul(p));
        let image = pgcd(f, &reduce_zpoly(f, a), &reduce_zpoly(f, b), k, &mut points);
        if m_is_constant(&image) {
            return None;
        }
        let image_lead = image.last_key_value().unwrap().0.clone();
        let g = f.reduce(&gamma);
        let image: MPoly = image.into_iter().map(|(k, c)| (k, f.mul(c, g))).collect();

        let next = match acc.take() {
            Some((g_acc, m, lead)) if image_lead == lead => {
                let combined = crt_combine(&g_acc, &m, &image, f);
                if combined == g_acc {
                    let candidate = z_primitive(&combined);
                    if let Some(qa) = z_div_exact(a, &candidate) {
                        if let Some(qb) = z_div_exact(b, &candidate) {
                            return Some((candidate, qa, qb));
                        }
                    }
                    // a bad image slipped through; start over
                    None
                } else {
                    Some((combined, m * BigInt::from(p), lead))
                }
            }
            Some(prev) if image_lead > prev.2 => Some(prev),
            _ => Some((symmetric_lift(&image, f), BigInt::from(p), image_lead)),
        };
        acc = next;
    }
    unreachable!("prime cycle is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn univariate() {
        let g = poly_gcd(&p("t^2 - 1"), &p("t^2 - 2*t + 1"));
        assert_eq!(g, p("t - 1"));
        assert_eq!(poly_gcd(&p("t^2 + 1"), &p("t - 1")), p("1"));
    }

    #[test]
    fn bivariate_binomials() {
        let a = p("(t^2 - z)*(t^3 - z^2)*(1 - z)");
        let b = p("(t^2 - z)*(1 - z)^2*(t + z)");
        assert_eq!(poly_gcd(&a, &b), p("(t^2 - z)*(z - 1)").primitive());
    }

    #[test]
    fn rational_inputs_and_monomial_factors() {
        let a = p("1/2*t^-3*(t - 1)*(z + 2)");
        let b = p("3*z^4*(t - 1)^2");
        assert_eq!(poly_gcd(&a, &b), p("t - 1"));
    }

    #[test]
    fn cofactors_multiply_back() {
        let a = p("-2*q^-1*(q - a1)*(q - a2)*(1 - z*a1^-1)");
        let b = p("6*(q - a1)*(q^2 - 1)");
        let r = gcd_cofactors(&a, &b);
        assert_eq!(&r.gcd * &r.cofactor_a, a);
        assert_eq!(&r.gcd * &r.cofactor_b, b);
        assert_eq!(r.gcd, p("q - a1"));
    }

    #[test]
    fn many_variables() {
        let common = p("q*z - a1*a2 + t^2*u + v");
        let a = &common * &p("q^2 + z*a1 + 7");
        let b = &common * &p("u*v - 3*a2 + q");
        assert_eq!(poly_gcd(&a, &b), common);
    }

    #[test]
    fn zero_handling() {
        assert_eq!(poly_gcd(&LaurentPoly::zero(), &p("-2*t - 4")), p("t + 2"));
        assert!(poly_gcd(&LaurentPoly::zero(), &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn large_coefficient_gcd() {
        let common = p("123456789123456789*t^3 - 987654321987654321*z + 55555555555555555555");
        let a = &common * &p("t^5 - 3*z^2 + 1");
        let b = &common * &p("z^3 + 11*t - 2");
        assert_eq!(poly_gcd(&a, &b), common.primitive());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((0i32..4, 0i32..4, -5i64..6), 1..5).prop_map(|terms| {
            LaurentPoly::from_terms(terms.into_iter().map(|(et, ez, c)| {
                (
                    Monomial::from_pairs(&[(Variable::T, et), (Variable::Z, ez)]),
                    BigRational::from_integer(c.into()),
                )
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gcd_divides_and_contains_common_factor(
            g in small_poly(), x in small_poly(), y in small_poly()
        ) {
            prop_assume!(!g.is_zero() && !x.is_zero() && !y.is_zero());
            let a = &g * &x;
            let b = &g * &y;
            let d = poly_gcd(&a, &b);
            prop_assert!(a.div_exact(&d).is_ok());
            prop_assert!(b.div_exact(&d).is_ok());
            let (_, g_stripped) = g.split_monomial();
            prop_assert!(d.div_exact(&g_stripped).is_ok());
        }
    }
}
