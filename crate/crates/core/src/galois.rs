//! Goldbach-type prime searches, excluded primes, auxiliary primes for the
//! explicit inverse Galois construction, and local factorisation types.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fp::FpPoly;
use crate::padic::{int_valuation, Valuation};
use crate::poly::{newton_polygon, IntPoly};
use crate::primes::{self, PrimeSieve};
use crate::tame::{glue_global, LocalModel, TameError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("{0} is not an even integer >= 4")]
    OddInput(u64),
    #[error("no Goldbach triple and 2g+1 = {0} is composite")]
    NoRouteAvailable(u64),
    #[error("no auxiliary primes below {cap}: {reason}")]
    SearchExhausted { cap: u64, reason: String },
    #[error("p = {0} lies in the Goldbach triple")]
    PrimeInTriple(u64),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("{a} is not coprime to {q}")]
    NotCoprime { a: u64, q: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not squarefree over Q")]
    NotSquarefree,
    #[error("infeasible type specification: {0}")]
    InfeasibleSpec(String),
    #[error("bad spec file: {0}")]
    SpecFile(String),
    #[error(transparent)]
    Tame(#[from] TameError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GoldbachTriple {
    pub n: u64,
    pub q1: u64,
    pub q2: u64,
    pub q3: u64,
}

impl GoldbachTriple {
    pub fn members(&self) -> BTreeSet<u64> {
        [self.q1, self.q2, self.q3].into_iter().collect()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.q1 == p || self.q2 == p || self.q3 == p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DoubleGoldbach {
    pub n: u64,
    pub q1: u64,
    pub q2: u64,
    pub q3: u64,
    pub q4: u64,
    pub q5: u64,
}

impl DoubleGoldbach {
    /// The two triples `(q4, q5, q3)` and `(q1, q2, q5)`.
    pub fn triples(&self) -> [GoldbachTriple; 2] {
        [
            GoldbachTriple { n: self.n, q1: self.q4, q2: self.q5, q3: self.q3 },
            GoldbachTriple { n: self.n, q1: self.q1, q2: self.q2, q3: self.q5 },
        ]
    }
}

fn check_even(n: u64) -> Result<(), GaloisError> {
    if n < 4 || n % 2 == 1 {
        return Err(GaloisError::OddInput(n));
    }
    Ok(())
}

fn sieve_for(n: u64) -> PrimeSieve {
    PrimeSieve::new(n as usize)
}

/// Pairs `q1 <= q2` of primes with `q1 + q2 = n`, ascending in `q1`.
pub fn goldbach_pairs(n: u64, sieve: &PrimeSieve) -> Vec<(u64, u64)> {
    sieve
        .primes_in(2, n as usize / 2 + 1)
        .filter(|&q| sieve.is_prime(n as usize - q))
        .map(|q| (q as u64, n - q as u64))
        .collect()
}

/// All Goldbach triples for `n`, ordered by `(q1, q3)`.
pub fn goldbach_triples(n: u64) -> Result<Vec<GoldbachTriple>, GaloisError> {
    check_even(n)?;
    Ok(goldbach_triples_with(n, &sieve_for(n)))
}

pub fn goldbach_triples_with(n: u64, sieve: &PrimeSieve) -> Vec<GoldbachTriple> {
    let mut out = Vec::new();
    for (q1, q2) in goldbach_pairs(n, sieve) {
        for q3 in sieve.primes_in(q2 as usize + 1, n as usize) {
            out.push(GoldbachTriple { n, q1, q2, q3: q3 as u64 });
        }
    }
    out
}

/// Every double Goldbach tuple for `n`.
pub fn double_goldbach(n: u64) -> Result<Vec<DoubleGoldbach>, GaloisError> {
    check_even(n)?;
    let sieve = sieve_for(n);
    let pairs = goldbach_pairs(n, &sieve);
    let mut out = Vec::new();
    for &(q1, q2) in &pairs {
        for &(q4, q5) in pairs.iter().take_while(|(q4, _)| *q4 < q1) {
            for q3 in sieve.primes_in(q5 as usize + 1, n as usize) {
                out.push(DoubleGoldbach { n, q1, q2, q3: q3 as u64, q4, q5 });
            }
        }
    }
    Ok(out)
}

/// Existence test for double Goldbach tuples. Any tuple has
/// `q4 < q1 <= L1`, so `q4 <= L2` where `L1 > L2` are the two largest
/// lower Goldbach members; a prime in `(n - L2, n)` is then necessary
/// and, with `(L1, L2)` itself, sufficient.
pub fn double_goldbach_witness(n: u64, sieve: &PrimeSieve) -> Option<DoubleGoldbach> {
    if n < 4 || n % 2 == 1 {
        return None;
    }
    let half = n as usize / 2;
    let mut lower = (2..=half).rev().filter(|&q| sieve.is_prime(q) && sieve.is_prime(n as usize - q));
    let l1 = lower.next()? as u64;
    let l2 = lower.next()? as u64;
    let q5 = n - l2;
    let q3 = sieve.primes_in(q5 as usize + 1, n as usize).next()? as u64;
    Some(DoubleGoldbach { n, q1: l1, q2: n - l1, q3, q4: l2, q5 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedReport {
    pub g: u64,
    /// Intersection of the member sets of all triples for `2g+2`.
    pub route_a: Option<BTreeSet<u64>>,
    /// `{2g+1}` when it is prime.
    pub route_b: Option<BTreeSet<u64>>,
    pub excluded: BTreeSet<u64>,
}

/// Odd primes that neither a Goldbach triple for `2g+2` nor the `2g+1`
/// prime route can avoid.
pub fn excluded_primes(g: u64) -> Result<BTreeSet<u64>, GaloisError> {
    Ok(excluded_report(g, &sieve_for(2 * g + 2))?.excluded)
}

pub fn excluded_report(g: u64, sieve: &PrimeSieve) -> Result<ExcludedReport, GaloisError> {
    if g == 0 {
        return Err(GaloisError::OddInput(2));
    }
    let n = 2 * g + 2;
    let triples = goldbach_triples_with(n, sieve);
    let route_a = if triples.is_empty() {
        None
    } else {
        let mut it = triples.iter().map(|t| t.members());
        let first = it.next().expect("nonempty");
        Some(it.fold(first, |acc, s| acc.intersection(&s).copied().collect()))
    };
    let q = 2 * g + 1;
    let route_b = primes::is_prime(q).then(|| BTreeSet::from([q]));
    let mut excluded = match (&route_a, &route_b) {
        (Some(a), Some(b)) => a.intersection(b).copied().collect(),
        (Some(a), None) => a.clone(),
        (None, Some(b)) => b.clone(),
        (None, None) => return Err(GaloisError::NoRouteAvailable(q)),
    };
    excluded.retain(|&x| x != 2);
    Ok(ExcludedReport { g, route_a, route_b, excluded })
}

pub fn is_primitive_root(a: u64, q: u64) -> Result<bool, GaloisError> {
    if !primes::is_prime(q) {
        return Err(GaloisError::NotPrime(q));
    }
    match primes::multiplicative_order(a % q, q) {
        None => Err(GaloisError::NotCoprime { a, q }),
        Some(o) => Ok(o == q - 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AuxPrimes {
    pub p1: u64,
    pub p2: u64,
    pub p3: u64,
}

pub const DEFAULT_AUX_CAP: u64 = 1_000_000;

fn prim_root_class_possible(q: u64, need_one_mod_3: bool) -> bool {
    // a primitive root mod 3 is 2 mod 3
    !(need_one_mod_3 && q == 3)
}

/// Smallest auxiliary primes above `max(2g+1, p)`: `p2` a primitive root
/// mod `q1` and `q2`, `p3` a primitive root mod `q3`, both `1 mod 3` when
/// `p = 3`, and `p1` the smallest remaining prime.
pub fn find_aux_primes(g: u64, p: u64, triple: &GoldbachTriple, cap: u64) -> Result<AuxPrimes, GaloisError> {
    if p == 2 || !primes::is_prime(p) {
        return Err(GaloisError::BadPrime(p));
    }
    let need3 = p == 3;
    for q in [triple.q1, triple.q2, triple.q3] {
        if !prim_root_class_possible(q, need3) {
            return Err(GaloisError::SearchExhausted {
                cap,
                reason: format!("a primitive root mod {q} cannot be 1 mod 3"),
            });
        }
    }
    if triple.contains(p) {
        return Err(GaloisError::PrimeInTriple(p));
    }
    let lo = (2 * g + 1).max(p);
    let ok3 = |c: u64| !need3 || c % 3 == 1;
    let is_pr = |a: u64, q: u64| primes::multiplicative_order(a % q, q) == Some(q - 1);
    let search = |pred: &dyn Fn(u64) -> bool, what: &str| -> Result<u64, GaloisError> {
        let mut c = lo;
        loop {
            c = primes::next_prime(c);
            if c > cap {
                return Err(GaloisError::SearchExhausted { cap, reason: format!("no {what}") });
            }
            if pred(c) {
                return Ok(c);
            }
        }
    };
    let p2 = search(&|c| ok3(c) && is_pr(c, triple.q1) && is_pr(c, triple.q2), "p2")?;
    let p3 = search(&|c| c != p2 && ok3(c) && is_pr(c, triple.q3), "p3")?;
    let p1 = search(&|c| c != p2 && c != p3, "p1")?;
    Ok(AuxPrimes { p1, p2, p3 })
}

/// Type `t - {q_1, .., q_k}` at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeSpec {
    pub p: u64,
    pub t: u32,
    pub blocks: Vec<u64>,
}

impl TypeSpec {
    pub fn new(p: u64, t: u32, blocks: Vec<u64>) -> Result<Self, GaloisError> {
        let spec = TypeSpec { p, t, blocks };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), GaloisError> {
        if !primes::is_prime(self.p) || self.p >= 1 << 32 {
            return Err(GaloisError::NotPrime(self.p));
        }
        if self.t == 0 {
            return Err(GaloisError::InfeasibleSpec("t must be at least 1".into()));
        }
        if let Some(&q) = self.blocks.iter().find(|&&q| !primes::is_prime(q)) {
            return Err(GaloisError::InfeasibleSpec(format!("block degree {q} is not prime")));
        }
        if self.blocks.len() as u64 > self.p {
            return Err(GaloisError::InfeasibleSpec(format!(
                "{} blocks need distinct residues mod {}",
                self.blocks.len(),
                self.p
            )));
        }
        Ok(())
    }

    pub fn block_degree(&self) -> u64 {
        self.blocks.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub degree: u64,
    /// Lift of the block root modulo `p^t`, when one works.
    #[serde(serialize_with = "opt_decimal")]
    pub alpha: Option<BigInt>,
    pub residue: Option<u64>,
    /// Coefficient valuations of `f(x + alpha)` below the block degree.
    pub valuations: Vec<Valuation>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub spec: TypeSpec,
    pub precision: u32,
    pub monic: bool,
    pub blocks: Vec<BlockReport>,
    /// Repeated roots mod `p` that match no block, or a repeated factor
    /// of degree > 1; empty when the cofactor reduces to a separable
    /// polynomial away from the block roots.
    pub cofactor_defects: Vec<String>,
    pub pass: bool,
}

/// Decides whether `f` has the given type, working with `f mod p^precision`
/// (default `t + 2`).
pub fn check_type(f: &IntPoly, spec: &TypeSpec, precision: Option<u32>) -> Result<TypeReport, GaloisError> {
    spec.validate()?;
    if f.degree().unwrap_or(0) == 0 || !f.to_rat().is_squarefree() {
        return Err(GaloisError::NotSquarefree);
    }
    let p = spec.p;
    let t = spec.t;
    let prec = precision.unwrap_or(t + 2).max(t + 1);
    let modulus = BigInt::from(p).pow(prec);
    let fr = IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(&modulus)).collect());
    let monic = f.is_monic();
    let fbar = FpPoly::from_int_poly(&fr, p);

    let mut cofactor_defects = Vec::new();
    let repeated = fbar.gcd(&fbar.derivative());
    let rep_roots = repeated.roots();
    let mut roots_by_mult: Vec<(u64, usize)> = rep_roots.iter().map(|&a| (a, fbar.root_multiplicity(a))).collect();
    let linear_part: usize = roots_by_mult.iter().map(|&(_, m)| m - 1).sum();
    if repeated.degree().unwrap_or(0) != linear_part {
        cofactor_defects.push(format!("repeated factor of degree > 1 in {repeated}"));
    }

    let mut wanted = spec.blocks.clone();
    wanted.sort_unstable_by(|a, b| b.cmp(a));
    let mut blocks = Vec::new();
    for &q in &wanted {
        let pos = roots_by_mult.iter().position(|&(_, m)| m as u64 == q);
        let Some(pos) = pos else {
            blocks.push(BlockReport { degree: q, alpha: None, residue: None, valuations: vec![], pass: false });
            continue;
        };
        let (a, _) = roots_by_mult.remove(pos);
        blocks.push(eisenstein_block(&fr, p, t, q as usize, a));
    }
    for (a, m) in roots_by_mult {
        cofactor_defects.push(format!("root {a} of multiplicity {m} matches no block"));
    }
    let pass = monic && cofactor_defects.is_empty() && blocks.iter().all(|b| b.pass);
    Ok(TypeReport { spec: spec.clone(), precision: prec, monic, blocks, cofactor_defects, pass })
}

/// Searches lifts `alpha = a + p k` mod `p^t` with `v(f_i(alpha)) >= t`
/// for `i < q` and `v(f_0(alpha)) = t`; then the factor of `f(x + alpha)`
/// congruent to `x^q` is `t`-Eisenstein.
fn eisenstein_block(f: &IntPoly, p: u64, t: u32, q: usize, a: u64) -> BlockReport {
    let pt = BigInt::from(p).pow(t - 1);
    let pb = BigInt::from(p);
    let mut k = BigInt::zero();
    let mut last = Vec::new();
    while k < pt {
        let alpha = BigInt::from(a) + &pb * &k;
        let shifted = f.taylor_shift(&alpha);
        let vals: Vec<Valuation> = (0..=q).map(|i| coeff_val(&shifted.coeff(i), p)).collect();
        let low_ok = vals[..q].iter().all(|v| *v >= Valuation::Finite(t as i64));
        let ok = low_ok && vals[0] == Valuation::Finite(t as i64) && vals[q] == Valuation::Finite(0);
        if ok {
            return BlockReport { degree: q as u64, alpha: Some(alpha), residue: Some(a), valuations: vals, pass: true };
        }
        last = vals;
        k += 1;
    }
    BlockReport { degree: q as u64, alpha: None, residue: Some(a), valuations: last, pass: false }
}

fn opt_decimal<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// `(x - a)^q`.
pub fn linear_power(a: u64, q: usize) -> IntPoly {
    let lin = IntPoly::linear_root(&BigInt::from(a));
    (0..q).fold(IntPoly::one(), |acc, _| acc.mul(&lin))
}

fn coeff_val(c: &BigInt, p: u64) -> Valuation {
    match int_valuation(c, p) {
        Some(v) => Valuation::Finite(v as i64),
        None => Valuation::Infinite,
    }
}

/// Newton polygon of `f(x + alpha)` at `p`, exposed for reports.
pub fn shifted_polygon(f: &IntPoly, p: u64, alpha: &BigInt) -> Vec<crate::poly::NewtonSegment> {
    let s = f.taylor_shift(alpha);
    newton_polygon(&s.coeffs().iter().map(|c| coeff_val(c, p)).collect::<Vec<_>>())
}

/// A typed local model or a squarefree filler at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalSpec {
    Typed(TypeSpec),
    Filler { filler: u64 },
}

impl LocalSpec {
    pub fn prime(&self) -> u64 {
        match self {
            LocalSpec::Typed(s) => s.p,
            LocalSpec::Filler { filler } => *filler,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub degree: usize,
    pub specs: Vec<LocalSpec>,
}

pub const MAX_SPEC_DEGREE: usize = 512;

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, GaloisError> {
        let sf: SpecFile = serde_json::from_str(text).map_err(|e| GaloisError::SpecFile(e.to_string()))?;
        if sf.degree == 0 || sf.degree > MAX_SPEC_DEGREE {
            return Err(GaloisError::SpecFile(format!("degree {} out of range", sf.degree)));
        }
        if sf.specs.is_empty() {
            return Err(GaloisError::SpecFile("no specs".into()));
        }
        for s in &sf.specs {
            match s {
                LocalSpec::Typed(ts) => ts.validate()?,
                LocalSpec::Filler { filler } => {
                    if !primes::is_prime(*filler) || *filler >= 1 << 32 {
                        return Err(GaloisError::NotPrime(*filler));
                    }
                }
            }
        }
        Ok(sf)
    }
}

/// A monic polynomial of degree `r`, separable mod `p` with no root in
/// `avoid`: distinct linear factors `x - a`, topped up by an irreducible.
pub fn separable_cofactor(p: u64, r: usize, avoid: &[u64]) -> IntPoly {
    let free: Vec<u64> = (0..p).filter(|a| !avoid.contains(a)).collect();
    let (lin, extra) = if r <= free.len() {
        (r, 0)
    } else if r - free.len() >= 2 {
        (free.len(), r - free.len())
    } else {
        (free.len() - 1, r - free.len() + 1)
    };
    let mut h = IntPoly::one();
    for &a in &free[..lin] {
        h = h.mul(&IntPoly::linear_root(&BigInt::from(a)));
    }
    if extra > 0 {
        let irr = FpPoly::first_irreducible(p, extra);
        h = h.mul(&IntPoly::new(irr.coeffs().iter().map(|&c| BigInt::from(c)).collect()));
    }
    h
}

/// The local model for one spec: blocks `(x - alpha)^q - p^t` at
/// `alpha = 0, 1, ..` times a separable cofactor, modulo `p^(t+2)`.
pub fn local_model(d: usize, spec: &LocalSpec) -> Result<LocalModel, GaloisError> {
    match spec {
        LocalSpec::Filler { filler } => Ok(LocalModel { prime: *filler, exponent: 1, poly: separable_cofactor(*filler, d, &[]) }),
        LocalSpec::Typed(ts) => {
            ts.validate()?;
            let used = ts.block_degree() as usize;
            if used > d {
                return Err(GaloisError::InfeasibleSpec(format!("blocks {:?} exceed degree {d}", ts.blocks)));
            }
            let pt = BigInt::from(ts.p).pow(ts.t);
            let mut f = IntPoly::one();
            let alphas: Vec<u64> = (0..ts.blocks.len() as u64).collect();
            for (&q, &a) in ts.blocks.iter().zip(&alphas) {
                let block = linear_power(a, q as usize).sub(&IntPoly::new(vec![pt.clone()]));
                f = f.mul(&block);
            }
            if d > used && alphas.len() as u64 == ts.p && d - used == 1 {
                return Err(GaloisError::InfeasibleSpec("no residue left for the cofactor".into()));
            }
            f = f.mul(&separable_cofactor(ts.p, d - used, &alphas));
            Ok(LocalModel { prime: ts.p, exponent: ts.t + 2, poly: f })
        }
    }
}

/// Glues the local models of every spec into one monic integer
/// polynomial of degree `d` and re-checks every typed spec.
pub fn construct_typed_poly(d: usize, specs: &[LocalSpec]) -> Result<IntPoly, GaloisError> {
    let mut seen = BTreeSet::new();
    for s in specs {
        if !seen.insert(s.prime()) {
            return Err(GaloisError::InfeasibleSpec(format!("two specs at {}", s.prime())));
        }
    }
    let models = specs.iter().map(|s| local_model(d, s)).collect::<Result<Vec<_>, _>>()?;
    glue_checked(d, &models, specs)
}

/// Gluing plus a round trip through [`check_type`].
pub fn glue_checked(d: usize, models: &[LocalModel], specs: &[LocalSpec]) -> Result<IntPoly, GaloisError> {
    let f = glue_global(models, true)?;
    if f.degree() != Some(d) {
        return Err(GaloisError::InfeasibleSpec(format!("glued degree {:?} != {d}", f.degree())));
    }
    for s in specs {
        if let LocalSpec::Typed(ts) = s {
            let r = check_type(&f, ts, None)?;
            if !r.pass {
                return Err(GaloisError::InfeasibleSpec(format!("glued polynomial fails its type at {}", ts.p)));
            }
        }
    }
    Ok(f)
}

/// `x - alpha` as a helper for tests and callers.
pub fn linear(alpha: i64) -> IntPoly {
    IntPoly::from_i64(&[-alpha, 1])
}

/// Reduces `x` to a `u64` residue mod `p`.
pub fn residue_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced")
}

/// `true` when `x` is `1` modulo `m`.
pub fn is_one_mod(x: &BigInt, m: &BigInt) -> bool {
    (x - BigInt::one()).mod_floor(m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trip(n: u64, q1: u64, q2: u64, q3: u64) -> GoldbachTriple {
        GoldbachTriple { n, q1, q2, q3 }
    }

    #[test]
    fn triple_examples() {
        assert_eq!(goldbach_triples(8).unwrap(), vec![trip(8, 3, 5, 7)]);
        assert_eq!(goldbach_triples(10).unwrap(), vec![trip(10, 5, 5, 7)]);
        assert_eq!(goldbach_triples(16).unwrap(), vec![trip(16, 5, 11, 13)]);
        assert_eq!(goldbach_triples(7), Err(GaloisError::OddInput(7)));
    }

    #[test]
    fn double_goldbach_examples() {
        for g in [1u64, 2, 3, 4, 5, 7, 13] {
            assert!(double_goldbach(2 * g + 2).unwrap().is_empty(), "g = {g}");
        }
        assert!(!double_goldbach(14).unwrap().is_empty());
        assert!(double_goldbach(6).unwrap().is_empty());
        let sieve = PrimeSieve::new(400);
        for n in (4..=400).step_by(2) {
            let full = double_goldbach(n).unwrap();
            let w = double_goldbach_witness(n, &sieve);
            assert_eq!(full.is_empty(), w.is_none(), "n = {n}");
            if let Some(w) = w {
                assert!(full.contains(&w));
            }
        }
    }

    #[test]
    fn excluded_table() {
        let set = |xs: &[u64]| xs.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(excluded_primes(3).unwrap(), set(&[7]));
        assert_eq!(excluded_primes(4).unwrap(), set(&[5, 7]));
        assert_eq!(excluded_primes(5).unwrap(), set(&[11]));
        assert_eq!(excluded_primes(7).unwrap(), set(&[5, 11, 13]));
        assert_eq!(excluded_primes(13).unwrap(), set(&[11, 17]));
        assert!(excluded_primes(6).unwrap().is_empty());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(is_primitive_root(2, 5), Ok(true));
        assert_eq!(is_primitive_root(4, 5), Ok(false));
        assert_eq!(is_primitive_root(3, 7), Ok(true));
        assert_eq!(is_primitive_root(10, 5), Err(GaloisError::NotCoprime { a: 10, q: 5 }));
    }

    #[test]
    fn aux_prime_examples() {
        let r = find_aux_primes(3, 3, &trip(8, 3, 5, 7), DEFAULT_AUX_CAP);
        assert!(matches!(r, Err(GaloisError::SearchExhausted { .. })));
        assert_eq!(find_aux_primes(5, 7, &trip(12, 5, 7, 11), DEFAULT_AUX_CAP), Err(GaloisError::PrimeInTriple(7)));
        let a = find_aux_primes(4, 3, &trip(10, 5, 5, 7), DEFAULT_AUX_CAP).unwrap();
        assert_eq!(a, AuxPrimes { p1: 11, p2: 13, p3: 19 });
    }

    #[test]
    fn type_examples() {
        let f = IntPoly::from_i64(&[-11, 0, 1]).mul(&IntPoly::from_i64(&[1, 1, 1]));
        assert!(check_type(&f, &TypeSpec::new(11, 1, vec![2]).unwrap(), None).unwrap().pass);
        let f = IntPoly::from_i64(&[-25, 0, 0, 1]);
        assert!(check_type(&f, &TypeSpec::new(5, 2, vec![3]).unwrap(), None).unwrap().pass);
        let f = IntPoly::from_i64(&[-9, 0, 1]);
        assert!(!check_type(&f, &TypeSpec::new(3, 1, vec![2]).unwrap(), None).unwrap().pass);
        let sq = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(check_type(&sq, &TypeSpec::new(3, 1, vec![2]).unwrap(), None), Err(GaloisError::NotSquarefree));
    }

    #[test]
    fn shifted_block_needs_lift() {
        // (x - 1 - 5)^3 - 25 has its 2-Eisenstein block at alpha = 6, not 1
        let f = linear_power(6, 3).sub(&IntPoly::from_i64(&[25]));
        let r = check_type(&f, &TypeSpec::new(5, 2, vec![3]).unwrap(), None).unwrap();
        assert!(r.pass);
        assert_eq!(r.blocks[0].alpha, Some(BigInt::from(6)));
    }

    #[test]
    fn construction_examples() {
        let s13 = LocalSpec::Typed(TypeSpec::new(13, 1, vec![2]).unwrap());
        let f = construct_typed_poly(4, &[s13.clone()]).unwrap();
        let want = IntPoly::from_i64(&[-13, 0, 1]).mul(&linear(1)).mul(&linear(2));
        let m = BigInt::from(13).pow(3);
        assert!(f.sub(&want).coeffs().iter().all(|c| c.mod_floor(&m).is_zero()));
        let bad = LocalSpec::Typed(TypeSpec::new(11, 1, vec![3, 5]).unwrap());
        assert!(matches!(construct_typed_poly(4, &[bad]), Err(GaloisError::InfeasibleSpec(_))));

        let t = trip(8, 3, 5, 7);
        let aux = find_aux_primes(3, 5, &trip(8, 3, 5, 7), DEFAULT_AUX_CAP);
        assert_eq!(aux, Err(GaloisError::PrimeInTriple(5)));
        let aux = find_aux_primes(3, 11, &t, DEFAULT_AUX_CAP).unwrap();
        let specs = vec![
            LocalSpec::Typed(TypeSpec::new(aux.p1, 1, vec![2]).unwrap()),
            LocalSpec::Typed(TypeSpec::new(aux.p2, 1, vec![t.q1, t.q2]).unwrap()),
            LocalSpec::Typed(TypeSpec::new(aux.p3, 2, vec![t.q3]).unwrap()),
        ];
        let f = construct_typed_poly(8, &specs).unwrap();
        assert!(f.is_monic());
        assert_eq!(f.degree(), Some(8));
    }

    #[test]
    fn spec_file_parses() {
        let sf = SpecFile::from_json(r#"{"degree": 4, "specs": [{"p": 13, "t": 1, "blocks": [2]}, {"filler": 3}]}"#).unwrap();
        assert_eq!(sf.specs[1], LocalSpec::Filler { filler: 3 });
        assert!(SpecFile::from_json(r#"{"degree": 4, "specs": [{"p": 12, "t": 1, "blocks": [2]}]}"#).is_err());
        assert!(SpecFile::from_json(r#"{"degree": 0, "specs": []}"#).is_err());
    }
}
