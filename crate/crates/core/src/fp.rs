//! Polynomials over the prime field F_p, `p < 2^32`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;
use crate::primes::mod_pow;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    /// Reduces every coefficient mod `p` and trims.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!((2..1 << 32).contains(&p), "field characteristic out of range");
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        FpPoly::new(p, coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly::new(p, Vec::new())
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverting zero in F_p");
        mod_pow(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.inv(self.leading());
        self.scale(l)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().map(|&a| a * (k % p) % p).collect())
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.c.len().max(other.c.len());
        FpPoly::new(self.p, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(other.c.len());
        FpPoly::new(p, (0..n).map(|i| self.coeff(i) + p - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        if self.c.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let li = self.inv(d.leading());
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * li % p;
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - c * dc % p) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| (i as u64 % p) * a % p).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.c.iter().rev().fold(0, |acc, &a| (acc * (x % p) + a) % p)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Multiplicity of `alpha` as a root.
    pub fn root_multiplicity(&self, alpha: u64) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = FpPoly::new(self.p, vec![self.p - alpha % self.p, 1]);
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.divrem(&lin);
            if !r.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }

    /// Ben-Or: `f` of degree `d` is irreducible iff
    /// `gcd(f, x^(p^i) - x) = 1` for every `1 <= i <= d/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let f = self.monic();
        let x = FpPoly::x(self.p);
        let mut h = x.rem(&f);
        for _ in 1..=d / 2 {
            h = h.powmod(self.p as u128, &f);
            if f.gcd(&h.sub(&x)).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// `lc(self)^deg(other) * prod other(r)` over the roots `r` of `self`.
    pub fn resultant(&self, other: &FpPoly) -> u64 {
        let p = self.p;
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else { return 0 };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = 1u64;
        loop {
            let da = a.degree().expect("nonzero");
            let db = match b.degree() {
                None => return 0,
                Some(d) => d,
            };
            if da == 0 {
                return acc * mod_pow(a.leading(), db as u64, p) % p;
            }
            if db == 0 {
                return acc * mod_pow(b.leading(), da as u64, p) % p;
            }
            // res(a, b) = (-1)^(da db) res(b, a), and
            // res(b, a) = lc(b)^(da - deg r) res(b, r) with r = a mod b
            let r = a.rem(&b);
            if (da * db) % 2 == 1 {
                acc = (p - acc) % p;
            }
            let Some(dr) = r.degree() else { return 0 };
            acc = acc * mod_pow(b.leading(), (da - dr) as u64, p) % p;
            a = b;
            b = r;
        }
    }

    /// Distinct roots in `F_p`, ascending.
    pub fn roots(&self) -> Vec<u64> {
        let p = self.p;
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let x = FpPoly::x(p);
        let xp = x.rem(&f).powmod(p as u128, &f);
        let mut split = f.gcd(&xp.sub(&x));
        let mut out = Vec::new();
        if split.eval(0) == 0 {
            out.push(0);
            split = split.divrem(&x).0;
        }
        let mut stack = vec![split];
        let mut delta = 0u64;
        while let Some(g) = stack.pop() {
            match g.degree() {
                None | Some(0) => continue,
                Some(1) => {
                    let g = g.monic();
                    out.push((p - g.coeff(0)) % p);
                    continue;
                }
                _ => {}
            }
            if p == 2 {
                // only roots 0 and 1 remain, and 0 was removed
                out.push(1);
                continue;
            }
            // gcd(g, (x + delta)^((p-1)/2) - 1) splits g for some delta
            loop {
                delta += 1;
                let shifted = FpPoly::new(p, vec![delta % p, 1]).rem(&g);
                let h = shifted.powmod(((p - 1) / 2) as u128, &g).sub(&FpPoly::one(p));
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && dd < g.degree().unwrap_or(0) {
                    let rest = g.divrem(&d).0;
                    stack.push(d);
                    stack.push(rest);
                    break;
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// First monic irreducible polynomial of degree `d` in the order of
    /// its coefficient vector read as a base-`p` number.
    pub fn first_irreducible(p: u64, d: usize) -> FpPoly {
        assert!(d >= 1);
        let mut digits = vec![0u64; d];
        loop {
            let mut c = digits.clone();
            c.push(1);
            let f = FpPoly::new(p, c);
            if f.is_irreducible() {
                return f;
            }
            let mut i = 0;
            loop {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
                assert!(i < d, "irreducible polynomials exist in every degree");
            }
        }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = IntPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect());
        write!(f, "{lifted} (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_match_enumeration() {
        for p in [2u64, 3, 5, 7, 13] {
            for seed in 0..30i64 {
                let c: Vec<i64> = (0..5).map(|i| (seed * 7 + i * i * 3 + seed * i) % p as i64).collect();
                let f = FpPoly::from_i64(p, &c).mul(&FpPoly::from_i64(p, &[-(seed % p as i64), 1]));
                let want: Vec<u64> = (0..p).filter(|&a| f.eval(a) == 0).collect();
                if f.is_zero() {
                    continue;
                }
                assert_eq!(f.roots(), want, "{f}");
            }
        }
    }

    #[test]
    fn first_irreducible_degrees() {
        for (p, d) in [(2u64, 1usize), (2, 5), (3, 4), (7, 3)] {
            let f = FpPoly::first_irreducible(p, d);
            assert_eq!(f.degree(), Some(d));
            assert!(f.is_irreducible());
        }
        assert_eq!(FpPoly::first_irreducible(3, 2), FpPoly::from_i64(3, &[1, 0, 1]));
    }

    /// Brute force: some monic polynomial of degree `1..=d/2` divides `f`.
    fn has_small_factor(f: &FpPoly) -> bool {
        let p = f.p();
        let d = f.degree().unwrap();
        for k in 1..=d / 2 {
            let count = p.pow(k as u32);
            for idx in 0..count {
                let mut c = Vec::with_capacity(k + 1);
                let mut t = idx;
                for _ in 0..k {
                    c.push(t % p);
                    t /= p;
                }
                c.push(1);
                if f.rem(&FpPoly::new(p, c)).is_zero() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn irreducibility_examples() {
        assert!(FpPoly::from_i64(3, &[1, 0, 1]).is_irreducible());
        assert!(!FpPoly::from_i64(5, &[-1, 0, 1]).is_irreducible());
        let f = FpPoly::from_i64(7, &[3, 1, 0, 0, 0, 0, 1]);
        assert_eq!(f.is_irreducible(), !has_small_factor(&f));
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for p in [2u64, 3, 5] {
            for idx in 0..p.pow(4) {
                let mut c = Vec::new();
                let mut t = idx;
                for _ in 0..4 {
                    c.push(t % p);
                    t /= p;
                }
                c.push(1);
                let f = FpPoly::new(p, c);
                assert_eq!(f.is_irreducible(), !has_small_factor(&f), "{f}");
            }
        }
    }

    #[test]
    fn resultant_is_product_over_roots() {
        let p = 11;
        // (x - 2)(x - 5) against g: res = g(2) g(5)
        let d = FpPoly::from_i64(p, &[10, -7, 1]);
        let g = FpPoly::from_i64(p, &[1, 3, 0, 1]);
        assert_eq!(d.resultant(&g), g.eval(2) * g.eval(5) % p);
        assert_eq!(d.resultant(&d), 0);
    }

    #[test]
    fn multiplicities() {
        let f = FpPoly::from_i64(5, &[0, 0, 1]).mul(&FpPoly::from_i64(5, &[-1, 1]));
        assert_eq!(f.root_multiplicity(0), 2);
        assert_eq!(f.root_multiplicity(1), 1);
        assert_eq!(f.root_multiplicity(2), 0);
        assert!(!f.is_squarefree());
    }
}
