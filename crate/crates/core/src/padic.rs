//! Exact rationals viewed p-adically: valuations, Hensel lifting and
//! m-th power tests over `Q_p` (unramified, `e = 1`).
//!
//! Nothing here is ever rounded. Absolute values are never materialised;
//! every comparison `|x| < |y|` is carried out as `v(x) > v(y)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::poly::IntPoly;
use crate::primes;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactScalar(BigRational::from_integer(n.into()))
    }

    /// `None` when the denominator is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(ExactScalar(BigRational::new(numer.into(), denom)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        ExactScalar(r)
    }

    /// `p^e` for any integer exponent.
    pub fn prime_power(p: u64, e: i64) -> Self {
        let base = BigInt::from(p).pow(e.unsigned_abs());
        if e >= 0 {
            ExactScalar::from_integer(base)
        } else {
            ExactScalar(BigRational::new(BigInt::one(), base))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactScalar(self.0.recip()))
        }
    }

    pub fn powi(&self, e: i32) -> Self {
        ExactScalar(Pow::pow(&self.0, e))
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar::from_integer(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty scalar")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("scalar literal longer than {MAX_SCALAR_DIGITS} characters")]
    TooLong,
}

/// Longest accepted literal; keeps untrusted inputs from requesting
/// unbounded bignum work.
pub const MAX_SCALAR_DIGITS: usize = 4096;

fn parse_bigint(s: &str) -> Result<BigInt, ParseScalarError> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::InvalidInteger(s.to_string()));
    }
    s.parse::<BigInt>().map_err(|_| ParseScalarError::InvalidInteger(s.to_string()))
}

impl FromStr for ExactScalar {
    type Err = ParseScalarError;

    /// Accepts `"n"` or `"n/d"` with optional sign on either part.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        if s.len() > MAX_SCALAR_DIGITS {
            return Err(ParseScalarError::TooLong);
        }
        match s.split_once('/') {
            None => Ok(ExactScalar::from_integer(parse_bigint(s)?)),
            Some((n, d)) => {
                let n = parse_bigint(n.trim())?;
                let d = parse_bigint(d.trim())?;
                ExactScalar::new(n, d).ok_or(ParseScalarError::ZeroDenominator)
            }
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(ExactScalar::from(n)),
        }
    }
}

/// A p-adic valuation; `Infinite` is the valuation of zero and compares
/// above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `v_p(n)` for a nonzero integer, `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

pub fn valuation(x: &ExactScalar, p: u64) -> Valuation {
    match int_valuation(x.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = int_valuation(x.denom(), p).unwrap_or(0);
            Valuation::Finite(vn as i64 - vd as i64)
        }
    }
}

/// Splits a nonzero `x` as `p^v * u` with `u` a p-adic unit.
pub fn unit_part(x: &ExactScalar, p: u64) -> Option<(i64, ExactScalar)> {
    let v = valuation(x, p).finite()?;
    Some((v, x * ExactScalar::prime_power(p, -v)))
}

/// Representative in `[0, p^k)` of a p-integral rational; `None` when `x`
/// has negative valuation.
pub fn residue_mod(x: &ExactScalar, p: u64, k: u32) -> Option<BigInt> {
    let modulus = BigInt::from(p).pow(k);
    if x.is_zero() || k == 0 {
        return Some(BigInt::zero());
    }
    if int_valuation(x.denom(), p).unwrap_or(0) > 0 {
        return None;
    }
    let inv = mod_inverse(&x.denom().mod_floor(&modulus), &modulus)?;
    Some((x.numer() * inv).mod_floor(&modulus))
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}

/// Membership in `1 + p^n Z_p`.
pub fn in_one_plus_ball(x: &ExactScalar, p: u64, n: i64) -> bool {
    valuation(&(x - ExactScalar::one()), p) >= Valuation::Finite(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("working precision must be at least 1")]
    ZeroPrecision,
    #[error("Hensel precondition fails: v(f(a0)) = {value} is not > 2 v(f'(a0)) = 2*{derivative}")]
    PreconditionFailed { value: Valuation, derivative: Valuation },
    #[error("input is not p-integral")]
    NotIntegral,
    #[error("zero has no m-th root test")]
    ZeroInput,
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("precision {have} is below the required {needed}")]
    InsufficientPrecision { needed: u32, have: u32 },
    #[error("even m-th powers over Q_2 are not supported")]
    UnsupportedTwoAdic,
    #[error("residue search exceeded {0} candidates")]
    SearchLimit(u64),
}

/// Prime, working precision and (fixed) ramification data for approximate
/// p-adic operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicContext {
    p: u64,
    precision: u32,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self, PadicError> {
        if !primes::is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        Ok(PadicContext { p, precision })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Ramification degree; the base field is always `Q_p`.
    pub fn e(&self) -> u32 {
        1
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }
}

fn bigint_valuation(n: &BigInt, p: u64) -> Valuation {
    match int_valuation(n, p) {
        Some(v) => Valuation::Finite(v as i64),
        None => Valuation::Infinite,
    }
}

/// Newton iteration for a simple-enough root of `f` near `a0`. Returns
/// the final root together with `v(f(r_k))` for every iterate, starting
/// with `r_0 = a0`.
pub fn hensel_iterates(
    f: &IntPoly,
    a0: &ExactScalar,
    ctx: &PadicContext,
) -> Result<(BigInt, Vec<Valuation>), PadicError> {
    let p = ctx.p();
    let n = ctx.precision();
    if f.is_zero() {
        return Err(PadicError::PreconditionFailed {
            value: Valuation::Infinite,
            derivative: Valuation::Infinite,
        });
    }
    if valuation(a0, p) < Valuation::Finite(0) {
        return Err(PadicError::NotIntegral);
    }
    let df = f.derivative();
    let a0_exact = a0.clone();
    let f_a0 = f.eval_scalar(&a0_exact);
    let df_a0 = df.eval_scalar(&a0_exact);
    let v_f = valuation(&f_a0, p);
    let v_df = valuation(&df_a0, p);
    let delta = match v_df {
        Valuation::Finite(d) if v_f > Valuation::Finite(2 * d) => d as u32,
        _ => {
            return Err(PadicError::PreconditionFailed { value: v_f, derivative: v_df });
        }
    };
    let work = n + 2 * delta + 2;
    let modulus = BigInt::from(p).pow(work);
    let pd = BigInt::from(p).pow(delta);
    let mut r = residue_mod(a0, p, work).ok_or(PadicError::NotIntegral)?;
    let mut trace = vec![v_f];
    let target = Valuation::Finite(n as i64);
    let mut fr = f.eval(&r);
    while bigint_valuation(&fr, p) < target {
        let dfr = df.eval(&r);
        let unit = (&dfr / &pd).mod_floor(&modulus);
        let inv = mod_inverse(&unit, &modulus).expect("derivative unit part is invertible");
        let step = (&fr / &pd) * inv;
        r = (&r - step).mod_floor(&modulus);
        fr = f.eval(&r);
        trace.push(bigint_valuation(&fr, p));
    }
    let keep = n.max(delta + 1);
    let r = r.mod_floor(&BigInt::from(p).pow(keep));
    Ok((r, trace))
}

/// Lifts `a0` to an integer `r` with `v(f(r)) >= N` and
/// `v(r - a0) > v(f'(a0))`, provided `v(f(a0)) > 2 v(f'(a0))`.
pub fn hensel_root(f: &IntPoly, a0: &ExactScalar, ctx: &PadicContext) -> Result<BigInt, PadicError> {
    hensel_iterates(f, a0, ctx).map(|(r, _)| r)
}

const RESIDUE_SEARCH_LIMIT: u64 = 50_000_000;

/// Decides whether `x` is an m-th power in `Q_p`. When it is, returns a
/// witness `w` with `v(w^m - x) >= N + v(x)`.
pub fn is_mth_power(
    x: &ExactScalar,
    m: u32,
    ctx: &PadicContext,
) -> Result<Option<ExactScalar>, PadicError> {
    if x.is_zero() {
        return Err(PadicError::ZeroInput);
    }
    if m == 0 {
        return Err(PadicError::ZeroExponent);
    }
    let p = ctx.p();
    let n = ctx.precision();
    let k = int_valuation(&BigInt::from(m), p).unwrap_or(0) as u32;
    let needed = m + 2 * k + 1;
    if n < needed {
        return Err(PadicError::InsufficientPrecision { needed, have: n });
    }
    if p == 2 && m % 2 == 0 {
        return Err(PadicError::UnsupportedTwoAdic);
    }
    let (v, u) = unit_part(x, p).expect("nonzero");
    if v.rem_euclid(m as i64) != 0 {
        return Ok(None);
    }
    let Some(a0) = unit_root_seed(&u, m, k, p)? else {
        return Ok(None);
    };
    let u_int = residue_mod(&u, p, n).expect("unit is p-integral");
    let mut f = vec![BigInt::zero(); m as usize + 1];
    f[0] = -u_int;
    f[m as usize] = BigInt::one();
    let f = IntPoly::new(f);
    let root = hensel_root(&f, &ExactScalar::from_integer(a0), ctx)?;
    let w = ExactScalar::from_integer(root) * ExactScalar::prime_power(p, v / m as i64);
    debug_assert!(
        valuation(&(w.powi(m as i32) - x), p) >= Valuation::Finite(n as i64 + v),
        "witness fails re-verification"
    );
    Ok(Some(w))
}

/// A starting point `a0` for Newton on `y^m - u` satisfying the Hensel
/// inequality `v(a0^m - u) > 2 v_p(m)`, or `None` if `u` is not an m-th
/// power unit.
fn unit_root_seed(u: &ExactScalar, m: u32, k: u32, p: u64) -> Result<Option<BigInt>, PadicError> {
    // Every element of 1 + p^m Z_p is an m-th power (e = 1, p odd).
    if p != 2 && in_one_plus_ball(u, p, m as i64) {
        return Ok(Some(BigInt::one()));
    }
    let ubar = residue_mod(u, p, 1).expect("unit").to_u64().expect("residue fits");
    let g = primes::gcd(m as u64, p - 1);
    if primes::mod_pow(ubar, (p - 1) / g, p) != 1 {
        return Ok(None);
    }
    if p > RESIDUE_SEARCH_LIMIT {
        return Err(PadicError::SearchLimit(RESIDUE_SEARCH_LIMIT));
    }
    let residue_roots: Vec<u64> = (1..p).filter(|&y| primes::mod_pow(y, m as u64, p) == ubar).collect();
    if k == 0 {
        return Ok(residue_roots.first().map(|&y| BigInt::from(y)));
    }
    let level = 2 * k + 1;
    let modulus = BigInt::from(p).pow(level);
    let lifts = BigInt::from(p).pow(level - 1);
    let candidates = lifts.to_u64().unwrap_or(u64::MAX).saturating_mul(residue_roots.len() as u64);
    if candidates > RESIDUE_SEARCH_LIMIT {
        return Err(PadicError::SearchLimit(RESIDUE_SEARCH_LIMIT));
    }
    let target = residue_mod(u, p, level).expect("unit");
    let me = BigInt::from(m);
    let pb = BigInt::from(p);
    for &y in &residue_roots {
        let mut t = BigInt::zero();
        while t < lifts {
            let a0 = BigInt::from(y) + &pb * &t;
            if a0.modpow(&me, &modulus) == target {
                return Ok(Some(a0));
            }
            t += 1;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&s("729/676"), 3), Valuation::Finite(6));
        assert_eq!(valuation(&s("0"), 5), Valuation::Infinite);
        assert_eq!(valuation(&s("54"), 3), Valuation::Finite(3));
        assert_eq!(valuation(&s("1/18"), 3), Valuation::Finite(-2));
    }

    #[test]
    fn one_plus_ball_examples() {
        assert!(in_one_plus_ball(&s("28"), 3, 3));
        assert!(in_one_plus_ball(&s("1"), 7, 100));
        assert!(!in_one_plus_ball(&s("783/781"), 3, 3));
        // 29 = 2 and 781 = -2 mod 27, so the squared ratio is 1 mod 27
        assert!(in_one_plus_ball(&s("29/781").square(), 3, 3));
    }

    #[test]
    fn hensel_cube_root_of_28() {
        let f = IntPoly::from_i64(&[-28, 0, 0, 1]);
        let ctx = PadicContext::new(3, 5).unwrap();
        let r = hensel_root(&f, &s("1"), &ctx).unwrap();
        // oracle: cube every residue mod 3^5
        let roots: Vec<i64> = (0..243i64).filter(|y| (y * y * y - 28).rem_euclid(243) == 0).collect();
        assert!(roots.contains(&r.to_i64().unwrap()), "{r} not in {roots:?}");
        assert_eq!(r, BigInt::from(10));
    }

    #[test]
    fn hensel_exact_root_and_failure() {
        let ctx = PadicContext::new(5, 4).unwrap();
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(hensel_root(&f, &s("1"), &ctx).unwrap(), BigInt::one());
        let ctx3 = PadicContext::new(3, 4).unwrap();
        let g = IntPoly::from_i64(&[-2, 0, 0, 1]);
        assert!(matches!(hensel_root(&g, &s("1"), &ctx3), Err(PadicError::PreconditionFailed { .. })));
    }

    #[test]
    fn hensel_is_a_contraction() {
        let f = IntPoly::from_i64(&[-28, 0, 0, 1]);
        let ctx = PadicContext::new(3, 40).unwrap();
        let (_, trace) = hensel_iterates(&f, &s("1"), &ctx).unwrap();
        assert!(trace.len() >= 3);
        assert!(trace.windows(2).all(|w| w[0] < w[1]), "{trace:?}");
    }

    #[test]
    fn mth_power_examples() {
        let ctx = PadicContext::new(3, 6).unwrap();
        let w = is_mth_power(&s("28"), 3, &ctx).unwrap().expect("28 is a 3-adic cube");
        assert!(valuation(&(w.powi(3) - s("28")), 3) >= Valuation::Finite(6));
        let x = s("729/676");
        let w = is_mth_power(&x, 3, &ctx).unwrap().expect("cube");
        assert!(valuation(&(w.powi(3) - &x), 3) >= Valuation::Finite(12));
        assert_eq!(is_mth_power(&s("3"), 2, &ctx).unwrap(), None);
        assert_eq!(is_mth_power(&s("0"), 2, &ctx), Err(PadicError::ZeroInput));
    }

    #[test]
    fn mth_power_general_units() {
        let ctx = PadicContext::new(7, 12).unwrap();
        // 2 = 3^2 mod 7 and 2 is a 7-adic square
        assert!(is_mth_power(&s("2"), 2, &ctx).unwrap().is_some());
        assert!(is_mth_power(&s("3"), 2, &ctx).unwrap().is_none());
        // cubes mod 9 among 3-adic units are exactly +-1 mod 9
        let ctx3 = PadicContext::new(3, 8).unwrap();
        assert!(is_mth_power(&s("10"), 3, &ctx3).unwrap().is_some());
        assert!(is_mth_power(&s("-8"), 3, &ctx3).unwrap().is_some());
        assert!(is_mth_power(&s("4"), 3, &ctx3).unwrap().is_none());
        assert!(is_mth_power(&s("7"), 3, &ctx3).unwrap().is_none());
    }

    #[test]
    fn mth_power_precision_guard() {
        let ctx = PadicContext::new(3, 5).unwrap();
        assert_eq!(
            is_mth_power(&s("28"), 3, &ctx),
            Err(PadicError::InsufficientPrecision { needed: 6, have: 5 })
        );
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(s("-6/4").to_string(), "-3/2");
        assert_eq!(s(" 12 ").to_string(), "12");
        assert_eq!(s("4/-2").to_string(), "-2");
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("".parse::<ExactScalar>().is_err());
        assert!("1.5".parse::<ExactScalar>().is_err());
        assert!("--1".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn residue_mod_inverts_denominators() {
        let r = residue_mod(&s("1/2"), 3, 2).unwrap();
        assert_eq!(r, BigInt::from(5));
        assert_eq!(residue_mod(&s("1/3"), 3, 2), None);
    }
}
