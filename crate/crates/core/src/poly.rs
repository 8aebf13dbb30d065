//! Dense univariate polynomials over Z and Q (coefficients lowest degree
//! first) and p-adic Newton polygons.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::padic::{valuation, ExactScalar, Valuation};

/// Integer polynomial, trailing zero coefficients trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// `x - a`.
    pub fn linear_root(a: &BigInt) -> Self {
        IntPoly::new(vec![-a, BigInt::one()])
    }

    /// `x^d + c`.
    pub fn binomial(d: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] += BigInt::one();
        coeffs[0] += c;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_scalar(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * x + ExactScalar::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `f(x + a)`, by repeated synthetic division.
    pub fn taylor_shift(&self, a: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        IntPoly::new(c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| ExactScalar::from_integer(c.clone())).collect())
    }

    /// `(i, v_p(a_i))` for every coefficient.
    pub fn coefficient_valuations(&self, p: u64) -> Vec<Valuation> {
        self.coeffs.iter().map(|c| valuation(&ExactScalar::from_integer(c.clone()), p)).collect()
    }
}

/// Serialised as its display form, e.g. `"x^2 + 3"`.
impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            if i == 1 {
                f.write_str("x")?;
            } else {
                write!(f, "x^{i}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("unexpected `{found}` at byte {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("degree {0} exceeds the limit {MAX_PARSE_DEGREE}")]
    DegreeTooLarge(u64),
    #[error("coefficient longer than {MAX_COEFF_DIGITS} digits")]
    CoefficientTooLong,
}

pub const MAX_PARSE_DEGREE: usize = 4096;
pub const MAX_COEFF_DIGITS: usize = 4096;

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParsePolyError {
        match self.bytes.get(self.pos) {
            Some(&b) => ParsePolyError::Unexpected { pos: self.pos, found: b as char },
            None => ParsePolyError::UnexpectedEnd,
        }
    }

    fn digits(&mut self) -> Result<Option<String>, ParsePolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        if self.pos - start > MAX_COEFF_DIGITS {
            return Err(ParsePolyError::CoefficientTooLong);
        }
        Ok(Some(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()))
    }
}

impl FromStr for IntPoly {
    type Err = ParsePolyError;

    /// Parses sums of terms such as `x^7+x^3+3x^2+x+1`, `2*x - 5` or
    /// `-x^2`. Repeated powers are added together.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer { bytes: s.as_bytes(), pos: 0 };
        if lx.peek().is_none() {
            return Err(ParsePolyError::Empty);
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            match lx.peek() {
                None => break,
                Some(b'+') => lx.pos += 1,
                Some(b'-') => {
                    lx.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return Err(lx.unexpected()),
            }
            first = false;
            let coeff = lx.digits()?.map(|d| d.parse::<BigInt>().expect("digits"));
            let mut exp = 0u64;
            let mut has_x = false;
            if coeff.is_some() && lx.peek() == Some(b'*') {
                lx.pos += 1;
                if lx.peek() != Some(b'x') {
                    return Err(lx.unexpected());
                }
            }
            if lx.peek() == Some(b'x') {
                lx.pos += 1;
                has_x = true;
                exp = 1;
                if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    let Some(d) = lx.digits()? else { return Err(lx.unexpected()) };
                    exp = d.parse::<u64>().unwrap_or(u64::MAX);
                }
            }
            if coeff.is_none() && !has_x {
                return Err(lx.unexpected());
            }
            if exp > MAX_PARSE_DEGREE as u64 {
                return Err(ParsePolyError::DegreeTooLarge(exp));
            }
            let e = exp as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += sign * coeff.unwrap_or_else(BigInt::one);
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Polynomial with exact rational coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<ExactScalar>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![ExactScalar::one()])
    }

    /// `x - a`.
    pub fn linear_root(a: &ExactScalar) -> Self {
        RatPoly::new(vec![-a, ExactScalar::one()])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a ExactScalar>) -> Self {
        roots.into_iter().fold(RatPoly::one(), |acc, r| acc.mul(&RatPoly::linear_root(r)))
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs.iter().rev().fold(ExactScalar::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::new(Vec::new());
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, k: &ExactScalar) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * ExactScalar::from(i as i64))
                .collect(),
        )
    }

    /// Substitution `x -> a*x + b`.
    pub fn compose_linear(&self, a: &ExactScalar, b: &ExactScalar) -> RatPoly {
        let lin = RatPoly::new(vec![b.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(RatPoly::new(Vec::new()), |acc, c| acc.mul(&lin).add(&RatPoly::new(vec![c.clone()])))
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].recip().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::new(Vec::new()), self.clone());
        }
        let mut q = vec![ExactScalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            Some(l) => {
                let inv = l.recip().expect("nonzero");
                a.scale(&inv)
            }
            None => a,
        }
    }

    /// Squarefree over Q, i.e. `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// One edge of a lower convex hull, from `(x0, y0)` to `(x1, y1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSegment {
    pub x0: usize,
    pub y0: i64,
    pub x1: usize,
    pub y1: i64,
}

impl NewtonSegment {
    pub fn length(&self) -> usize {
        self.x1 - self.x0
    }

    pub fn slope(&self) -> ExactScalar {
        ExactScalar::new(self.y1 - self.y0, self.length() as i64).expect("positive length")
    }
}

/// Lower convex hull of the points `(i, v_i)`, skipping infinite
/// valuations.
pub fn newton_polygon(vals: &[Valuation]) -> Vec<NewtonSegment> {
    let pts: Vec<(i64, i64)> =
        vals.iter().enumerate().filter_map(|(i, v)| v.finite().map(|y| (i as i64, y))).collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (ax, ay) = hull[hull.len() - 2];
            let (bx, by) = hull[hull.len() - 1];
            // drop b unless it lies strictly below the segment a -> pt
            let cross = (bx - ax) * (pt.1 - ay) - (by - ay) * (pt.0 - ax);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| NewtonSegment { x0: w[0].0 as usize, y0: w[0].1, x1: w[1].0 as usize, y1: w[1].1 })
        .collect()
}

/// Newton polygon of a rational polynomial at `p`.
pub fn newton_polygon_of(f: &RatPoly, p: u64) -> Vec<NewtonSegment> {
    let vals: Vec<Valuation> = f.coeffs().iter().map(|c| valuation(c, p)).collect();
    newton_polygon(&vals)
}
