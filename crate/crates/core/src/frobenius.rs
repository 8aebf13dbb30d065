//! Point counts of `y^2 = f(x)` over `F_(l^k)`, Frobenius characteristic
//! polynomials, and the small-genus surjectivity table.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fp::FpPoly;
use crate::poly::IntPoly;
use crate::primes::{self, mod_pow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("field size {ell}^{k} exceeds the budget {budget}")]
    BudgetExceeded { ell: u64, k: u32, budget: u64 },
    #[error("degree {degree} curve has genus {actual}, not {claimed}")]
    GenusMismatch { degree: usize, claimed: usize, actual: usize },
    #[error("l = p = {0}")]
    SamePrime(u64),
    #[error("the character-sum route needs odd degree")]
    EvenDegree,
    #[error("recount at k = {k} gives {counted}, polynomial predicts {predicted}")]
    Inconsistent { k: u32, counted: BigInt, predicted: BigInt },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Fields up to this size are counted with log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 23;

/// `F_(l^k) = F_l[x]/(modulus)`; the modulus is primitive, so `x`
/// generates the multiplicative group. Elements are encoded as
/// `sum c_i l^i`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    ell: u64,
    k: u32,
    q: u64,
    modulus: FpPoly,
}

fn is_primitive_modulus(m: &FpPoly, q: u64) -> bool {
    if !m.is_irreducible() {
        return false;
    }
    let ell = m.p();
    let x = FpPoly::x(ell).rem(m);
    let one = FpPoly::one(ell);
    if m.degree() == Some(1) {
        // root is -c0; primitive iff it generates F_l^*
        let r = (ell - m.coeff(0)) % ell;
        return r != 0 && primes::multiplicative_order(r, ell) == Some(ell - 1);
    }
    primes::factor(q - 1).into_iter().all(|(r, _)| x.powmod(((q - 1) / r) as u128, m) != one)
}

impl FiniteField {
    /// Seeded random search for a primitive modulus, falling back to a
    /// sequential scan.
    pub fn new(ell: u64, k: u32, seed: u64) -> Result<Self, FrobeniusError> {
        if ell == 2 || !primes::is_prime(ell) || ell >= 1 << 32 {
            return Err(FrobeniusError::BadPrime(ell));
        }
        let q = ell.checked_pow(k).filter(|&q| q < 1 << 62).ok_or(FrobeniusError::BudgetExceeded {
            ell,
            k,
            budget: 1 << 62,
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (ell << 8) ^ k as u64);
        let mut found = None;
        for _ in 0..256 {
            let mut c: Vec<u64> = (0..k).map(|_| rng.gen_range(0..ell)).collect();
            c.push(1);
            let m = FpPoly::new(ell, c);
            if is_primitive_modulus(&m, q) {
                found = Some(m);
                break;
            }
        }
        let modulus = match found {
            Some(m) => m,
            None => Self::scan(ell, k, q),
        };
        Ok(FiniteField { ell, k, q, modulus })
    }

    fn scan(ell: u64, k: u32, q: u64) -> FpPoly {
        let mut digits = vec![0u64; k as usize];
        loop {
            let mut c = digits.clone();
            c.push(1);
            let m = FpPoly::new(ell, c);
            if is_primitive_modulus(&m, q) {
                return m;
            }
            let mut i = 0;
            loop {
                digits[i] += 1;
                if digits[i] < ell {
                    break;
                }
                digits[i] = 0;
                i += 1;
                assert!(i < k as usize, "primitive polynomials exist in every degree");
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.ell
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(idx % self.ell);
            idx /= self.ell;
        }
        out
    }

    pub fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.ell + d)
    }

    /// Product of two digit vectors reduced by the modulus.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.k as usize;
        let ell = self.ell;
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % ell;
            }
        }
        let m = self.modulus.coeffs();
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in m.iter().enumerate().take(k) {
                prod[i - k + j] = (prod[i - k + j] + (ell - c) * mj) % ell;
            }
        }
        prod.truncate(k);
        prod
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = vec![0u64; self.k as usize];
        acc[0] = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character by Euler's criterion.
    pub fn chi(&self, a: &[u64]) -> i64 {
        if a.iter().all(|&c| c == 0) {
            return 0;
        }
        let r = self.pow(a, (self.q - 1) / 2);
        if r[0] == 1 && r[1..].iter().all(|&c| c == 0) {
            1
        } else {
            -1
        }
    }

    /// `sum_x chi(f(x))` over the field, `f` given mod `l`.
    pub fn character_sum(&self, f: &FpPoly) -> i64 {
        if self.q <= TABLE_LIMIT {
            LogTables::new(self).character_sum(f)
        } else {
            self.character_sum_walk(f)
        }
    }

    /// Multiplication by `x^j` as a `k x k` matrix, row-major.
    fn power_matrix(&self, j: u64) -> Vec<u64> {
        let k = self.k as usize;
        let mut xj = vec![0u64; k];
        if k == 1 {
            xj[0] = (self.ell - self.modulus.coeff(0)) % self.ell;
        } else {
            xj[1] = 1;
        }
        let xj = self.pow(&xj, j);
        let mut mat = vec![0u64; k * k];
        for t in 0..k {
            let mut basis = vec![0u64; k];
            basis[t] = 1;
            let c = self.mul(&xj, &basis);
            for r in 0..k {
                mat[r * k + t] = c[r];
            }
        }
        mat
    }

    /// Walks `x = g^i` for every exponent `i`, keeping each monomial
    /// `x^j` of `f` updated by a fixed matrix, and takes `chi(f(x))` as
    /// `chi_l` of the norm `Res(modulus, f(x))`.
    fn character_sum_walk(&self, f: &FpPoly) -> i64 {
        let k = self.k as usize;
        let ell = self.ell;
        let c0 = f.coeff(0);
        let monos: Vec<(u64, u64)> = f
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j as u64, c))
            .collect();
        let mats: Vec<Vec<u64>> = monos.iter().map(|&(j, _)| self.power_matrix(j)).collect();
        let m: Vec<u64> = self.modulus.coeffs().to_vec();
        let ord = self.q - 1;
        let chunks = 256u64.min(ord);
        let step = ord.div_ceil(chunks);
        let mut gen = vec![0u64; k];
        if k == 1 {
            gen[0] = (ell - m[0]) % ell;
        } else {
            gen[1] = 1;
        }
        let walked: i64 = (0..chunks)
            .into_par_iter()
            .map(|ci| {
                let start = ci * step;
                let end = ((ci + 1) * step).min(ord);
                if start >= end {
                    return 0;
                }
                let x0 = self.pow(&gen, start);
                let mut vs: Vec<Vec<u64>> = monos.iter().map(|&(j, _)| self.pow(&x0, j)).collect();
                let mut tmp = vec![0u64; k];
                let mut y = vec![0u64; k];
                let mut acc = 0i64;
                for _ in start..end {
                    y.iter_mut().for_each(|c| *c = 0);
                    y[0] = c0;
                    for ((_, c), v) in monos.iter().zip(&vs) {
                        for r in 0..k {
                            y[r] += c * v[r];
                        }
                    }
                    y.iter_mut().for_each(|c| *c %= ell);
                    acc += chi_of_norm(&m, &y, ell);
                    for (mat, v) in mats.iter().zip(vs.iter_mut()) {
                        for r in 0..k {
                            let row = &mat[r * k..(r + 1) * k];
                            tmp[r] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<u64>() % ell;
                        }
                        v.copy_from_slice(&tmp);
                    }
                }
                acc
            })
            .sum();
        let at_zero = if c0 == 0 {
            0
        } else {
            let c = if mod_pow(c0, (ell - 1) / 2, ell) == 1 { 1 } else { -1 };
            if self.k % 2 == 0 {
                1
            } else {
                c
            }
        };
        walked + at_zero
    }

    /// Reference path: Horner evaluation and Euler's criterion per element.
    pub fn character_sum_direct(&self, f: &FpPoly) -> i64 {
        let coeffs: Vec<u64> = f.coeffs().to_vec();
        (0..self.q)
            .into_par_iter()
            .map(|idx| {
                let x = self.decode(idx);
                let mut y = vec![0u64; self.k as usize];
                for &c in coeffs.iter().rev() {
                    y = self.mul(&y, &x);
                    y[0] = (y[0] + c) % self.ell;
                }
                self.chi(&y)
            })
            .sum()
    }
}

/// `chi_l(Res(m, y))` for monic `m` of degree `k` and `deg y < k`, on
/// stack buffers.
fn chi_of_norm(m: &[u64], y: &[u64], ell: u64) -> i64 {
    const CAP: usize = 64;
    let mut a = [0u64; CAP];
    let mut b = [0u64; CAP];
    a[..m.len()].copy_from_slice(m);
    b[..y.len()].copy_from_slice(y);
    let deg = |v: &[u64; CAP], hint: usize| (0..=hint).rev().find(|&i| v[i] != 0);
    let mut da = m.len() - 1;
    let Some(mut db) = deg(&b, y.len().saturating_sub(1)) else { return 0 };
    let mut acc = 1u64;
    loop {
        if db == 0 {
            acc = acc * mod_pow(b[0], da as u64, ell) % ell;
            break;
        }
        // a <- a mod b
        let inv = mod_pow(b[db], ell - 2, ell);
        let mut top = da;
        while top >= db {
            let c = a[top] * inv % ell;
            if c != 0 {
                for i in 0..=db {
                    let idx = top - db + i;
                    a[idx] = (a[idx] + (ell - c) * b[i]) % ell;
                }
            }
            if top == 0 {
                break;
            }
            top -= 1;
        }
        let Some(dr) = deg(&a, db - 1) else { return 0 };
        if (da * db) % 2 == 1 {
            acc = (ell - acc) % ell;
        }
        acc = acc * mod_pow(b[db], (da - dr) as u64, ell) % ell;
        std::mem::swap(&mut a, &mut b);
        da = db;
        db = dr;
    }
    if acc == 0 {
        0
    } else if mod_pow(acc, (ell - 1) / 2, ell) == 1 {
        1
    } else {
        -1
    }
}

/// Discrete log tables for the generator `x`.
struct LogTables {
    ell: u64,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl LogTables {
    fn new(field: &FiniteField) -> Self {
        let q = field.q;
        let ell = field.ell;
        let k = field.k as usize;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let m = field.modulus.coeffs().to_vec();
        let mut cur = vec![0u64; k];
        cur[0] = 1;
        if k == 1 {
            // generator is the root of the linear modulus
            let r = (ell - m[0]) % ell;
            let mut v = 1u64;
            for i in 0..q - 1 {
                exp.push(v as u32);
                log[v as usize] = i as u32;
                v = v * r % ell;
            }
        } else {
            for i in 0..q - 1 {
                let idx = field.encode(&cur);
                exp.push(idx as u32);
                log[idx as usize] = i as u32;
                // multiply by x
                let top = cur[k - 1];
                for j in (1..k).rev() {
                    cur[j] = cur[j - 1];
                }
                cur[0] = 0;
                if top != 0 {
                    for j in 0..k {
                        cur[j] = (cur[j] + (ell - top) * m[j]) % ell;
                    }
                }
            }
        }
        LogTables { ell, q, exp, log }
    }

    fn character_sum(&self, f: &FpPoly) -> i64 {
        let coeffs = f.coeffs();
        let ord = self.q - 1;
        let ell = self.ell;
        (0..self.q)
            .into_par_iter()
            .map(|x| {
                let lx = self.log[x as usize];
                let mut y: u64 = 0;
                for &c in coeffs.iter().rev() {
                    if y != 0 {
                        y = if x == 0 {
                            0
                        } else {
                            let l = (self.log[y as usize] as u64 + lx as u64) % ord;
                            self.exp[l as usize] as u64
                        };
                    }
                    // constant coefficients only touch the lowest digit
                    let d0 = y % ell;
                    y = y - d0 + (d0 + c) % ell;
                }
                if y == 0 {
                    0
                } else if self.log[y as usize] % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }
}

/// Genus of `y^2 = f` for squarefree `f` of degree `d >= 3`.
pub fn genus_of(f: &IntPoly) -> usize {
    f.degree().map(|d| d.saturating_sub(1) / 2).unwrap_or(0)
}

fn reduce_good(f: &IntPoly, ell: u64) -> Result<FpPoly, FrobeniusError> {
    if ell == 2 || !primes::is_prime(ell) || ell >= 1 << 32 {
        return Err(FrobeniusError::BadPrime(ell));
    }
    let fb = FpPoly::from_int_poly(f, ell);
    if fb.degree() != f.degree() || fb.degree().unwrap_or(0) < 1 || !fb.is_squarefree() {
        return Err(FrobeniusError::BadReduction(ell));
    }
    Ok(fb)
}

fn field_size(ell: u64, k: u32, budget: u64) -> Result<u64, FrobeniusError> {
    match ell.checked_pow(k) {
        Some(q) if q <= budget => Ok(q),
        _ => Err(FrobeniusError::BudgetExceeded { ell, k, budget }),
    }
}

/// Projective points on the smooth model of `y^2 = f` over `F_(l^k)`.
pub fn count_points(f: &IntPoly, ell: u64, k: u32, budget: u64) -> Result<BigInt, FrobeniusError> {
    let fb = reduce_good(f, ell)?;
    let q = field_size(ell, k, budget)?;
    let field = FiniteField::new(ell, k, 0)?;
    Ok(count_with(&fb, &field, q))
}

fn count_with(fb: &FpPoly, field: &FiniteField, q: u64) -> BigInt {
    let s = field.character_sum(fb);
    let d = fb.degree().expect("nonconstant");
    let at_inf = if d % 2 == 1 {
        1
    } else {
        let lc = fb.leading();
        let square = field.degree() % 2 == 0 || mod_pow(lc, (field.characteristic() - 1) / 2, field.characteristic()) == 1;
        if square {
            2
        } else {
            0
        }
    };
    BigInt::from(q) + BigInt::from(s) + BigInt::from(at_inf)
}

/// Frobenius data for `y^2 = f` at `l`, charpoly lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    #[serde(serialize_with = "ser_display")]
    pub f: IntPoly,
    pub ell: u64,
    pub g: usize,
    #[serde(serialize_with = "ser_vec")]
    pub counts: Vec<BigInt>,
    #[serde(serialize_with = "ser_vec")]
    pub charpoly: Vec<BigInt>,
    /// `Some(true)` when the count at `k = g + 1` matched.
    pub recount: Option<bool>,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn ser_vec<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl FrobeniusData {
    pub fn charpoly_poly(&self) -> IntPoly {
        IntPoly::new(self.charpoly.clone())
    }

    /// Minus the coefficient of `T^(2g-1)`.
    pub fn trace(&self) -> BigInt {
        -&self.charpoly[2 * self.g - 1]
    }
}

/// Power sums `s_k` of the roots of a monic polynomial given by its
/// elementary symmetric functions `e_0 = 1, e_1, ..`.
fn power_sums(e: &[BigInt], n: usize) -> Vec<BigInt> {
    let deg = e.len() - 1;
    let mut s: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..k.min(deg + 1) {
            let term = &e[i] * &s[k - i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if k <= deg {
            let t = &e[k] * BigInt::from(k);
            if k % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        s[k] = acc;
    }
    s
}

/// Charpoly from `N_1..N_g` via Newton's identities and the functional
/// equation `e_(2g-i) = l^(g-i) e_i`.
pub fn charpoly_from_counts(counts: &[BigInt], ell: u64, g: usize) -> Result<Vec<BigInt>, FrobeniusError> {
    let l = BigInt::from(ell);
    let s: Vec<BigInt> = (1..=g).map(|k| l.pow(k as u32) + 1 - &counts[k - 1]).collect();
    let mut e = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let kk = BigInt::from(k);
        if !(&acc % &kk).is_zero() {
            return Err(FrobeniusError::Invariant(format!("Newton identity not integral at k = {k}")));
        }
        e.push(acc / kk);
    }
    for k in g + 1..=2 * g {
        let mirror = &e[2 * g - k] * l.pow((k - g) as u32);
        e.push(mirror);
    }
    Ok(elementary_to_charpoly(&e))
}

fn elementary_to_charpoly(e: &[BigInt]) -> Vec<BigInt> {
    let n = e.len() - 1;
    // charpoly = sum (-1)^k e_k T^(n-k), lowest first
    (0..=n)
        .map(|j| {
            let k = n - j;
            if k % 2 == 0 {
                e[k].clone()
            } else {
                -&e[k]
            }
        })
        .collect()
}

fn charpoly_to_elementary(c: &[BigInt]) -> Vec<BigInt> {
    elementary_to_charpoly(c)
}

/// `N_k` predicted by a charpoly.
pub fn predicted_count(charpoly: &[BigInt], ell: u64, k: usize) -> BigInt {
    let e = charpoly_to_elementary(charpoly);
    let s = power_sums(&e, k);
    BigInt::from(ell).pow(k as u32) + 1 - &s[k]
}

pub fn frobenius_charpoly(f: &IntPoly, ell: u64, g: usize, budget: u64) -> Result<FrobeniusData, FrobeniusError> {
    frobenius_charpoly_with(f, ell, g, budget, 0)
}

/// As [`frobenius_charpoly`], with the seed for the field modulus search.
pub fn frobenius_charpoly_with(f: &IntPoly, ell: u64, g: usize, budget: u64, seed: u64) -> Result<FrobeniusData, FrobeniusError> {
    let fb = reduce_good(f, ell)?;
    let degree = f.degree().unwrap_or(0);
    let actual = genus_of(f);
    if actual != g || g == 0 {
        return Err(FrobeniusError::GenusMismatch { degree, claimed: g, actual });
    }
    let mut counts = Vec::with_capacity(g);
    for k in 1..=g as u32 {
        let q = field_size(ell, k, budget)?;
        let field = FiniteField::new(ell, k, seed)?;
        counts.push(count_with(&fb, &field, q));
    }
    let charpoly = charpoly_from_counts(&counts, ell, g)?;
    let k1 = g as u32 + 1;
    let recount = match field_size(ell, k1, budget.min(TABLE_LIMIT)) {
        Ok(q) => {
            let field = FiniteField::new(ell, k1, seed)?;
            let counted = count_with(&fb, &field, q);
            let predicted = predicted_count(&charpoly, ell, k1 as usize);
            if counted != predicted {
                return Err(FrobeniusError::Inconsistent { k: k1, counted, predicted });
            }
            Some(true)
        }
        Err(_) => None,
    };
    let data = FrobeniusData { f: f.clone(), ell, g, counts, charpoly, recount };
    check_invariants(&data)?;
    Ok(data)
}

/// Weil bound, functional equation, power sums and `P(1) > 0`.
pub fn check_invariants(d: &FrobeniusData) -> Result<(), FrobeniusError> {
    let l = BigInt::from(d.ell);
    let g = d.g;
    for (i, n) in d.counts.iter().enumerate() {
        let k = i as u32 + 1;
        let dev = n - l.pow(k) - 1;
        if &dev * &dev > BigInt::from(4 * g * g) * l.pow(k) {
            return Err(FrobeniusError::Invariant(format!("Weil bound fails at k = {k}")));
        }
    }
    let c = &d.charpoly;
    if c.len() != 2 * g + 1 || !c[2 * g].is_one() {
        return Err(FrobeniusError::Invariant("charpoly not monic of degree 2g".into()));
    }
    for i in 0..=g {
        // coefficient of T^i against T^(2g-i)
        if c[i] != &c[2 * g - i] * l.pow((g - i) as u32) {
            return Err(FrobeniusError::Invariant(format!("functional equation fails at {i}")));
        }
    }
    for k in 1..=g {
        if predicted_count(c, d.ell, k) != d.counts[k - 1] {
            return Err(FrobeniusError::Invariant(format!("power sum mismatch at k = {k}")));
        }
    }
    let at_one: BigInt = c.iter().sum();
    if !at_one.is_positive() {
        return Err(FrobeniusError::Invariant("P(1) <= 0".into()));
    }
    Ok(())
}

/// Independent route: `L(T) = sum over monic D of chi(Res(D, f)) T^deg D`
/// for odd-degree `f`, truncated at degree `g` and completed by the
/// functional equation. Returns the charpoly lowest first.
pub fn charpoly_by_characters(f: &IntPoly, ell: u64, budget: u64) -> Result<Vec<BigInt>, FrobeniusError> {
    let fb = reduce_good(f, ell)?;
    let d = fb.degree().expect("nonconstant");
    if d % 2 == 0 {
        return Err(FrobeniusError::EvenDegree);
    }
    let g = d / 2;
    field_size(ell, g as u32, budget)?;
    let chi = |a: u64| -> i64 {
        if a == 0 {
            0
        } else if mod_pow(a, (ell - 1) / 2, ell) == 1 {
            1
        } else {
            -1
        }
    };
    let mut lcoef = vec![BigInt::one()];
    for k in 1..=g {
        let total = ell.pow(k as u32);
        let s: i64 = (0..total)
            .into_par_iter()
            .map(|idx| {
                let mut c = Vec::with_capacity(k + 1);
                let mut r = idx;
                for _ in 0..k {
                    c.push(r % ell);
                    r /= ell;
                }
                c.push(1);
                chi(FpPoly::new(ell, c).resultant(&fb))
            })
            .sum();
        lcoef.push(BigInt::from(s));
    }
    let l = BigInt::from(ell);
    for k in g + 1..=2 * g {
        let v = &lcoef[2 * g - k] * l.pow((k - g) as u32);
        lcoef.push(v);
    }
    // charpoly(T) = T^(2g) L(1/T): lowest-first coefficients are L reversed
    lcoef.reverse();
    Ok(lcoef)
}

pub fn is_irreducible_over_fp(poly: &IntPoly, p: u64) -> bool {
    let f = FpPoly::from_int_poly(poly, p);
    f.degree().unwrap_or(0) >= 1 && f.is_irreducible()
}

/// One row of the small-genus surjectivity table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub g: usize,
    pub p: u64,
    /// `f` with coefficients lowest degree first.
    pub f: &'static str,
    pub ell: u64,
}

impl TableRow {
    pub fn id(&self) -> String {
        format!("{}-{}", self.g, self.p)
    }

    pub fn poly(&self) -> IntPoly {
        self.f.parse().expect("vendored rows parse")
    }

    pub fn is_fast(&self) -> bool {
        self.ell.checked_pow(self.g as u32).is_some_and(|q| q <= 10_000_000)
    }
}

/// The table of curves whose Frobenius at `l` has irreducible charpoly
/// mod `p` with nonzero trace.
pub const TABLE_ROWS: [TableRow; 9] = [
    TableRow { g: 3, p: 7, f: "x^7 + x^3 + 3*x^2 + x + 1", ell: 3 },
    TableRow { g: 4, p: 5, f: "x^9 + x^3 + x^2 + x + 1", ell: 3 },
    TableRow { g: 4, p: 7, f: "x^9 + 2*x^3 + 2*x^2 + x + 1", ell: 3 },
    TableRow { g: 5, p: 11, f: "x^11 + x^3 + 3*x^2 + x + 1", ell: 3 },
    TableRow { g: 7, p: 5, f: "x^15 + 3*x^3 + x^2 + 3*x + 1", ell: 3 },
    TableRow { g: 7, p: 11, f: "x^15 + 4*x^3 + x^2 + 5*x + 1", ell: 5 },
    TableRow { g: 7, p: 13, f: "x^15 + 2*x^3 + 2*x^2 + 2*x + 1", ell: 3 },
    TableRow { g: 13, p: 11, f: "x^27 + x^3 + 2*x^2 + 2*x + 1", ell: 5 },
    TableRow { g: 13, p: 17, f: "x^27 + x^3 + 2*x^2 + x + 1", ell: 5 },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRowReport {
    pub g: usize,
    pub p: u64,
    pub ell: u64,
    pub frobenius: FrobeniusData,
    /// Charpoly reduced mod `p`, lowest first.
    pub charpoly_mod_p: Vec<u64>,
    pub irreducible_mod_p: bool,
    pub trace_mod_p: u64,
    pub pass: bool,
}

pub fn check_table_row(g: usize, p: u64, f: &IntPoly, ell: u64, budget: u64) -> Result<TableRowReport, FrobeniusError> {
    if ell == p {
        return Err(FrobeniusError::SamePrime(p));
    }
    if !primes::is_prime(p) || p >= 1 << 32 {
        return Err(FrobeniusError::BadPrime(p));
    }
    let data = frobenius_charpoly(f, ell, g, budget)?;
    let cp = data.charpoly_poly();
    let reduced = FpPoly::from_int_poly(&cp, p);
    let irreducible = reduced.degree() == Some(2 * g) && reduced.is_irreducible();
    let pb = BigInt::from(p);
    let trace_mod_p = (((data.trace() % &pb) + &pb) % &pb).to_u64().expect("reduced");
    let charpoly_mod_p: Vec<u64> = (0..=2 * g).map(|i| reduced.coeff(i)).collect();
    Ok(TableRowReport {
        g,
        p,
        ell,
        pass: irreducible && trace_mod_p != 0,
        frobenius: data,
        charpoly_mod_p,
        irreducible_mod_p: irreducible,
        trace_mod_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate_affine(f: &IntPoly, ell: u64) -> i64 {
        let fb = FpPoly::from_int_poly(f, ell);
        (0..ell)
            .map(|x| {
                let y = fb.eval(x);
                if y == 0 {
                    1
                } else if mod_pow(y, (ell - 1) / 2, ell) == 1 {
                    2
                } else {
                    0
                }
            })
            .sum()
    }

    #[test]
    fn count_examples() {
        let f = TABLE_ROWS[0].poly();
        assert_eq!(count_points(&f, 3, 1, DEFAULT_BUDGET).unwrap(), BigInt::from(7));
        let c = IntPoly::from_i64(&[1, 0, 0, 1]);
        assert_eq!(count_points(&c, 5, 1, DEFAULT_BUDGET).unwrap(), BigInt::from(enumerate_affine(&c, 5) + 1));
        let double = IntPoly::from_i64(&[0, 0, 1, 1]);
        assert_eq!(count_points(&double, 5, 1, DEFAULT_BUDGET), Err(FrobeniusError::BadReduction(5)));
        assert!(matches!(count_points(&c, 5, 20, 1000), Err(FrobeniusError::BudgetExceeded { .. })));
    }

    #[test]
    fn table_and_direct_paths_agree() {
        let f = IntPoly::from_i64(&[1, 1, 3, 1, 0, 0, 0, 1]);
        let fb = FpPoly::from_int_poly(&f, 3);
        for k in 1..=4 {
            let field = FiniteField::new(3, k, 7).unwrap();
            let tab = LogTables::new(&field).character_sum(&fb);
            assert_eq!(tab, field.character_sum_direct(&fb), "k = {k}");
            assert_eq!(tab, field.character_sum_walk(&fb), "k = {k}");
        }
    }

    #[test]
    fn genus_one_trace() {
        let f = IntPoly::from_i64(&[1, 1, 0, 1]);
        let d = frobenius_charpoly(&f, 5, 1, DEFAULT_BUDGET).unwrap();
        let n1 = BigInt::from(enumerate_affine(&f, 5) + 1);
        assert_eq!(d.charpoly, vec![BigInt::from(5), -(BigInt::from(6) - &n1), BigInt::one()]);
    }

    #[test]
    fn first_row_and_character_route() {
        let row = TABLE_ROWS[0];
        let f = row.poly();
        let d = frobenius_charpoly(&f, 3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.charpoly[0], BigInt::from(27));
        assert_eq!(d.recount, Some(true));
        assert_eq!(charpoly_by_characters(&f, 3, DEFAULT_BUDGET).unwrap(), d.charpoly);
        let r = check_table_row(row.g, row.p, &f, row.ell, DEFAULT_BUDGET).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(check_table_row(3, 7, &f, 7, DEFAULT_BUDGET), Err(FrobeniusError::SamePrime(7)));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible_over_fp(&IntPoly::from_i64(&[1, 0, 1]), 3));
        assert!(!is_irreducible_over_fp(&IntPoly::from_i64(&[-1, 0, 1]), 5));
    }

    #[test]
    fn fast_rows_flagged() {
        let fast: Vec<String> = TABLE_ROWS.iter().filter(|r| r.is_fast()).map(|r| r.id()).collect();
        assert_eq!(fast.len(), 7);
        assert!(!TABLE_ROWS[7].is_fast());
    }
}
