//! The explicit tame constructions: odd p through Whittaker groups with
//! m-th power periods, p = 2 through a split multiplicative-reduction
//! family, and CRT gluing of local models.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::padic::{is_mth_power, residue_mod, unit_part, valuation, ExactScalar, PadicContext, PadicError, Valuation};
use crate::period::{
    approximation_report, closed_form_pole, period_closed_form, period_truncated, q_bound, PeriodError, PeriodMatrixApprox,
};
use crate::poly::{newton_polygon, IntPoly, NewtonSegment, RatPoly};
use crate::primes;
use crate::whittaker::{good_position_check, hyperelliptic_model, PointConfiguration, WhittakerData, WhittakerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TameError {
    #[error("p = 2 is handled by the two-adic family")]
    EvenPrime,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("m must be at least 1")]
    ZeroM,
    #[error("expected {expected} exponents, got {got}")]
    ExponentCount { expected: usize, got: usize },
    #[error("condition {id} failed: {witness}")]
    ConditionFailed { id: String, witness: String },
    #[error("two-adic roots need pairwise distinct valuations: {0}")]
    RepeatedValuation(String),
    #[error("two-adic roots must be nonzero 2-adic integers")]
    BadRoot,
    #[error("local models have different degrees")]
    DegreeMismatch,
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),
    #[error("no local models given")]
    NoModels,
    #[error("local model at {0} is not monic modulo its modulus")]
    NotMonic(u64),
    #[error("no integer shift makes the model value a square")]
    NoSquareValue,
    #[error(transparent)]
    Whittaker(#[from] WhittakerError),
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// Parameters of the odd-p construction: `r_1 = c_1 = p^(m alpha_1)`,
/// `r_i = p^(m alpha_i)`, `c_i = 2 p^(m beta_i)` for `i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameParameters {
    pub g: usize,
    pub p: u64,
    pub m: u32,
    /// `alpha_1..alpha_g`, absent when built from raw scalars.
    pub alphas: Option<Vec<u32>>,
    /// `beta_2..beta_g`.
    pub betas: Option<Vec<u32>>,
    pub centers: Vec<ExactScalar>,
    pub radii: Vec<ExactScalar>,
}

fn check_prime(p: u64) -> Result<(), TameError> {
    if !primes::is_prime(p) {
        return Err(TameError::NotPrime(p));
    }
    if p == 2 {
        return Err(TameError::EvenPrime);
    }
    Ok(())
}

impl TameParameters {
    pub fn from_exponents(g: usize, p: u64, m: u32, alphas: Vec<u32>, betas: Vec<u32>) -> Result<Self, TameError> {
        check_prime(p)?;
        if g == 0 {
            return Err(TameError::ZeroGenus);
        }
        if m == 0 {
            return Err(TameError::ZeroM);
        }
        if alphas.len() != g {
            return Err(TameError::ExponentCount { expected: g, got: alphas.len() });
        }
        if betas.len() != g - 1 {
            return Err(TameError::ExponentCount { expected: g - 1, got: betas.len() });
        }
        let pw = |e: u32| ExactScalar::prime_power(p, m as i64 * e as i64);
        let two = ExactScalar::from(2);
        let radii: Vec<ExactScalar> = alphas.iter().map(|&a| pw(a)).collect();
        let mut centers = vec![radii[0].clone()];
        centers.extend(betas.iter().map(|&b| &two * pw(b)));
        Ok(TameParameters { g, p, m, alphas: Some(alphas), betas: Some(betas), centers, radii })
    }

    /// Arbitrary centres and radii, for probing the hypotheses.
    pub fn from_scalars(p: u64, m: u32, centers: Vec<ExactScalar>, radii: Vec<ExactScalar>) -> Result<Self, TameError> {
        check_prime(p)?;
        if m == 0 {
            return Err(TameError::ZeroM);
        }
        if centers.is_empty() {
            return Err(TameError::ZeroGenus);
        }
        if centers.len() != radii.len() {
            return Err(TameError::ExponentCount { expected: centers.len(), got: radii.len() });
        }
        Ok(TameParameters { g: centers.len(), p, m, alphas: None, betas: None, centers, radii })
    }

    pub fn config(&self) -> Result<PointConfiguration, TameError> {
        Ok(PointConfiguration::from_centers(self.p, &self.centers, &self.radii)?)
    }

    pub fn whittaker_data(&self) -> Result<WhittakerData, TameError> {
        Ok(WhittakerData::build(self.config()?)?)
    }

    /// `(a_i, b_i) = (c_i - r_i, c_i + r_i)`.
    pub fn pairs(&self) -> Vec<(ExactScalar, ExactScalar)> {
        self.centers.iter().zip(&self.radii).map(|(c, r)| (c - r, c + r)).collect()
    }
}

/// `alpha_i = 2g - i`, `beta_i = g - i + 1`, `m = p`.
pub fn canonical_parameters(g: usize, p: u64) -> Result<TameParameters, TameError> {
    check_prime(p)?;
    if g == 0 {
        return Err(TameError::ZeroGenus);
    }
    let alphas = (1..=g).map(|i| (2 * g - i) as u32).collect();
    let betas = (2..=g).map(|i| (g - i + 1) as u32).collect();
    TameParameters::from_exponents(g, p, p as u32, alphas, betas)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    Verified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionRecord {
    pub id: String,
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub status: ConditionStatus,
    pub witness: String,
}

/// Every checkable conclusion with its exact witness, plus the results
/// that are cited rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameCertificate {
    pub construction: String,
    pub parameters: serde_json::Value,
    pub conditions: Vec<ConditionRecord>,
    pub premises: Vec<String>,
}

impl TameCertificate {
    pub fn all_verified(&self) -> bool {
        self.conditions.iter().all(|c| c.status == ConditionStatus::Verified)
    }

    pub fn failed(&self) -> Vec<&ConditionRecord> {
        self.conditions.iter().filter(|c| c.status == ConditionStatus::Failed).collect()
    }

    pub fn status(&self, id: &str) -> Option<ConditionStatus> {
        self.conditions.iter().find(|c| c.id == id).map(|c| c.status)
    }
}

fn record(id: &str, anchor: &str, ok: bool, witness: String) -> ConditionRecord {
    ConditionRecord {
        id: id.into(),
        anchor: anchor.into(),
        status: if ok { ConditionStatus::Verified } else { ConditionStatus::Failed },
        witness,
    }
}

fn strictly_decreasing(xs: &[u32]) -> bool {
    xs.windows(2).all(|w| w[0] > w[1])
}

/// Working precision for m-th power tests: `m (2g + 2)`, raised to the
/// minimum the Hensel step needs.
pub fn default_precision(g: usize, m: u32, p: u64) -> u32 {
    let k = crate::padic::int_valuation(&BigInt::from(m), p).unwrap_or(0) as u32;
    (m * (2 * g as u32 + 2)).max(m + 2 * k + 1)
}

pub const ODD_PREMISES: [&str; 3] = [
    "Mumford curves have semistable (split toric) reduction",
    "Raynaud uniformisation: if every period is an m-th power then K(J[m]) = K(zeta_m)",
    "the closed-form and truncated periods approximate the true periods as the approximation theorem states",
];

/// Runs all checks and returns the certificate, failures included.
pub fn assess_construction(params: &TameParameters, n: usize, precision: Option<u32>) -> Result<TameCertificate, TameError> {
    let p = params.p;
    let m = params.m;
    let em = m as i64;
    let mut conditions = Vec::new();

    if let (Some(al), Some(be)) = (&params.alphas, &params.betas) {
        let mut chain: Vec<u32> = al.clone();
        chain.extend(be);
        let ok = strictly_decreasing(&chain) && chain.iter().all(|&x| x > 0);
        conditions.push(record(
            "hypothesis",
            "alpha_1 > .. > alpha_g > beta_2 > .. > beta_g > 0",
            ok,
            format!("alphas = {al:?}, betas = {be:?}"),
        ));
    }

    let pairs = params.pairs();
    let a1 = &pairs[0].0;
    conditions.push(record("i", "a_1 = 0", a1.is_zero(), format!("a_1 = c_1 - r_1 = {a1}")));

    let config = params.config()?;
    let report = good_position_check(&config);
    let chain: Vec<_> = report.clauses.iter().filter(|c| c.name.starts_with("chain") || c.name == "b1_nonzero").collect();
    let chain_ok = chain.iter().all(|c| c.holds);
    let chain_witness: Vec<String> = chain.iter().map(|c| format!("{} [{}]", c.name, c.witness)).collect();
    conditions.push(record(
        "ii",
        "0 < |b_1| < |a_2| <= |b_2| <= .. <= |b_g| < 1",
        chain_ok,
        chain_witness.join("; "),
    ));

    let mut ratio_ok = true;
    let mut ratio_w = Vec::new();
    for i in 0..params.g {
        for j in 0..params.g {
            if i == j {
                continue;
            }
            let vr = valuation(&params.radii[i], p);
            let vd = valuation(&(&params.centers[i] - &params.centers[j]), p);
            let ok = match (vr, vd) {
                (Valuation::Finite(r), Valuation::Finite(d)) => r - d >= em,
                _ => false,
            };
            ratio_ok &= ok;
            ratio_w.push(format!("({},{}): v(r)={vr}, v(c_i-c_j)={vd}", i + 1, j + 1));
        }
    }
    if ratio_w.is_empty() {
        ratio_w.push("no pairs i != j".into());
    }
    conditions.push(record("iii", "|r_i| / |c_i - c_j| <= p^(-e m) for i != j", ratio_ok, ratio_w.join("; ")));

    let built = WhittakerData::build(config).map_err(|e| e.to_string()).and_then(|d| match closed_form_pole(&d) {
        Some((i, j)) => Err(format!("closed form Q0_{}{} has a zero denominator", i + 1, j + 1)),
        None => Ok(d),
    });
    let data = match built {
        Ok(d) => d,
        Err(w) => {
            conditions.push(record("iv", "every closed-form entry is an m-th power", false, w.clone()));
            conditions.push(record("v", "every period is an m-th power", false, w));
            return Ok(certificate("odd_p_whittaker", params, conditions));
        }
    };
    let prec = precision.unwrap_or_else(|| default_precision(params.g, m, p));
    let ctx = PadicContext::new(p, prec)?;
    let q0 = period_closed_form(&data);
    let (iv_ok, iv_w) = mth_power_witness(&q0, m, &ctx)?;
    conditions.push(record("iv", "every closed-form entry Q^0_ij is an m-th power", iv_ok, iv_w));

    let qn = period_truncated(&data, n)?;
    let (v_ok, v_w) = transfer_witness(&data, n, &qn, &q0, em);
    conditions.push(record("v", "every period Q_ij is an m-th power", iv_ok && v_ok, v_w));

    Ok(certificate("odd_p_whittaker", params, conditions))
}

fn certificate(kind: &str, params: &TameParameters, conditions: Vec<ConditionRecord>) -> TameCertificate {
    TameCertificate {
        construction: kind.into(),
        parameters: serde_json::to_value(params).expect("serialisable"),
        conditions,
        premises: ODD_PREMISES.iter().map(|s| s.to_string()).collect(),
    }
}

fn mth_power_witness(q0: &PeriodMatrixApprox, m: u32, ctx: &PadicContext) -> Result<(bool, String), TameError> {
    let p = ctx.p();
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, row) in q0.entries.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let w = is_mth_power(x, m, ctx)?;
            let (v, u) = unit_part(x, p).expect("period entries are nonzero");
            let k = (m as u32).min(ctx.precision());
            let ures = residue_mod(&u, p, k).map(|r| r.to_string()).unwrap_or_default();
            ok &= w.is_some();
            parts.push(format!(
                "Q0_{}{} = {x}: v = {v}, unit = {ures} mod {p}^{k}, {}",
                i + 1,
                j + 1,
                if w.is_some() { "m-th power" } else { "not an m-th power" }
            ));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn transfer_witness(data: &WhittakerData, n: usize, qn: &PeriodMatrixApprox, q0: &PeriodMatrixApprox, em: i64) -> (bool, String) {
    let report = approximation_report(data, n, qn, q0);
    let mut ok = true;
    let mut parts = vec![format!("q_bound = {}", q_bound(data))];
    for e in &report.entries {
        let pass = e.gap >= Valuation::Finite(em);
        ok &= pass;
        parts.push(format!("v(Q{n}_{}{}/Q0_{}{} - 1) = {} {} e*m = {em}", e.i + 1, e.j + 1, e.i + 1, e.j + 1, e.gap, if pass { ">=" } else { "<" }));
    }
    (ok, parts.join("; "))
}

/// Like [`assess_construction`] but turns the first failed condition
/// into an error.
pub fn verify_construction(params: &TameParameters, n: usize) -> Result<TameCertificate, TameError> {
    let cert = assess_construction(params, n, None)?;
    if let Some(c) = cert.failed().first() {
        return Err(TameError::ConditionFailed { id: c.id.clone(), witness: c.witness.clone() });
    }
    Ok(cert)
}

/// `y^2 + h(x) y = -N^2` with `h = prod (x - a_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoAdicCurve {
    pub g: usize,
    pub roots: Vec<ExactScalar>,
    pub n: ExactScalar,
}

impl TwoAdicCurve {
    /// Requires nonzero 2-adic integer roots with pairwise distinct
    /// valuations; the bound on `v_2(N)` is checked by [`verify_two_adic`].
    pub fn new(roots: Vec<ExactScalar>, n: ExactScalar) -> Result<Self, TameError> {
        if roots.len() < 2 {
            return Err(TameError::ZeroGenus);
        }
        let mut vals = Vec::new();
        for r in &roots {
            match valuation(r, 2) {
                Valuation::Finite(v) if v >= 0 => vals.push(v),
                _ => return Err(TameError::BadRoot),
            }
        }
        let mut sorted = vals.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(TameError::RepeatedValuation(format!("{vals:?}")));
        }
        Ok(TwoAdicCurve { g: roots.len() - 1, roots, n })
    }

    /// `h(x) = prod (x - a_i)`.
    pub fn h(&self) -> RatPoly {
        RatPoly::from_roots(&self.roots)
    }
}

/// `a_i = 2^(k_i)`, `N = 2^(sum k_i)`, default `k_i = i` for `i = 1..g+1`.
pub fn two_adic_curve(g: usize, valuation_pattern: Option<&[u32]>) -> Result<TwoAdicCurve, TameError> {
    if g == 0 {
        return Err(TameError::ZeroGenus);
    }
    let ks: Vec<u32> = match valuation_pattern {
        Some(ks) => {
            if ks.len() != g + 1 {
                return Err(TameError::ExponentCount { expected: g + 1, got: ks.len() });
            }
            ks.to_vec()
        }
        None => (1..=g as u32 + 1).collect(),
    };
    let roots = ks.iter().map(|&k| ExactScalar::prime_power(2, k as i64)).collect();
    let total: i64 = ks.iter().map(|&k| k as i64).sum();
    TwoAdicCurve::new(roots, ExactScalar::prime_power(2, total))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoAdicReport {
    pub conditions: Vec<ConditionRecord>,
    /// Newton-polygon slopes of `h` at 2, left to right.
    pub slopes: Vec<ExactScalar>,
    pub premises: Vec<String>,
    pub pass: bool,
}

fn segments_str(segs: &[NewtonSegment]) -> String {
    let parts: Vec<String> = segs.iter().map(|s| format!("({},{})-({},{})", s.x0, s.y0, s.x1, s.y1)).collect();
    parts.join(" ")
}

pub fn verify_two_adic(curve: &TwoAdicCurve) -> TwoAdicReport {
    let mut conditions = Vec::new();
    let sum_v: i64 = curve.roots.iter().map(|r| valuation(r, 2).finite().expect("nonzero")).sum();
    let vn = valuation(&curve.n, 2);
    conditions.push(record(
        "hypothesis",
        "v_2(N) >= sum v_2(a_i), roots with distinct valuations",
        vn >= Valuation::Finite(sum_v),
        format!("v_2(N) = {vn}, sum v_2(a_i) = {sum_v}"),
    ));

    let h = curve.h();
    let np = |f: &RatPoly| newton_polygon(&f.coeffs().iter().map(|c| valuation(c, 2)).collect::<Vec<_>>());
    let segs = np(&h);
    let slopes: Vec<ExactScalar> = segs.iter().map(|s| s.slope()).collect();
    let unit_len = segs.len() == curve.g + 1 && segs.iter().all(|s| s.length() == 1);
    let mut distinct = slopes.clone();
    distinct.sort();
    distinct.dedup();
    let integral = slopes.iter().all(|s| s.is_integer());
    conditions.push(record(
        "a",
        "Newton polygon of h breaks into g+1 unit segments with distinct integer slopes",
        unit_len && integral && distinct.len() == slopes.len(),
        format!("segments {}", segments_str(&segs)),
    ));

    let two_n = &curve.n * ExactScalar::from(2);
    let h0 = h.coeff(0);
    let v2n = valuation(&two_n, 2);
    let vh0 = valuation(&h0, 2);
    conditions.push(record("b", "v_2(2N) > v_2(h(0))", v2n > vh0, format!("v_2(2N) = {v2n}, v_2(h(0)) = {vh0}")));

    let shift = |sign: i64| h.add(&RatPoly::new(vec![&two_n * ExactScalar::from(sign)]));
    let minus = np(&shift(-1));
    let plus = np(&shift(1));
    conditions.push(record(
        "c",
        "h - 2N and h + 2N have the Newton polygon of h",
        minus == segs && plus == segs,
        format!("h-2N: {}; h+2N: {}", segments_str(&minus), segments_str(&plus)),
    ));
    let pass = conditions.iter().all(|c| c.status == ConditionStatus::Verified);
    TwoAdicReport {
        conditions,
        slopes,
        premises: vec![
            "a curve whose h +- 2N split with these polygons has semistable totally toric reduction".into(),
            "J[2] is then contained in J(Q_2)".into(),
        ],
        pass,
    }
}

/// `f_l (mod l^N_l)` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalModel {
    pub prime: u64,
    pub exponent: u32,
    pub poly: IntPoly,
}

impl LocalModel {
    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.exponent)
    }
}

fn symmetric(x: BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// CRT on every coefficient; the result is reduced into the symmetric
/// range modulo the product of the moduli.
pub fn glue_global(models: &[LocalModel], monic: bool) -> Result<IntPoly, TameError> {
    let first = models.first().ok_or(TameError::NoModels)?;
    let d = first.poly.degree();
    if models.iter().any(|m| m.poly.degree() != d) {
        return Err(TameError::DegreeMismatch);
    }
    for (i, a) in models.iter().enumerate() {
        for b in &models[i + 1..] {
            if primes::gcd(a.prime, b.prime) != 1 {
                return Err(TameError::NonCoprimeModuli(a.prime, b.prime));
            }
        }
    }
    let d = d.unwrap_or(0);
    if monic {
        for m in models {
            if !(m.poly.coeff(d) - BigInt::one()).mod_floor(&m.modulus()).is_zero() {
                return Err(TameError::NotMonic(m.prime));
            }
        }
    }
    let total: BigInt = models.iter().map(|m| m.modulus()).product();
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc = BigInt::zero();
        for m in models {
            let mi = m.modulus();
            let rest = &total / &mi;
            let inv = crate::padic::mod_inverse(&rest.mod_floor(&mi), &mi).expect("coprime moduli");
            acc += m.poly.coeff(k) * &rest * inv;
        }
        coeffs.push(symmetric(acc, &total));
    }
    if monic {
        coeffs[d] = BigInt::one();
    }
    Ok(IntPoly::new(coeffs))
}

/// Converts the degree-(2g+1) theta model `F` into a monic, p-integral
/// degree-(2g+2) model isomorphic over `Q_p`: `x = beta + 1/u` with
/// `F(beta)` a nonzero square, then `u -> u / p^k`.
pub fn even_degree_model(f: &RatPoly, p: u64, precision: u32) -> Result<(RatPoly, ExactScalar, u32), TameError> {
    let deg = f.degree().ok_or(TameError::NoSquareValue)?;
    let ctx = PadicContext::new(p, precision.max(3))?;
    let beta = (0i64..4096)
        .map(ExactScalar::from)
        .find(|b| {
            let v = f.eval(b);
            !v.is_zero() && matches!(is_mth_power(&v, 2, &ctx), Ok(Some(_)))
        })
        .ok_or(TameError::NoSquareValue)?;
    let fb = f.eval(&beta);
    // G(u) = u^deg F(beta + 1/u) = sum_k c_k u^(deg - k) where F(beta + t) = sum c_k t^k
    let shifted = f.compose_linear(&ExactScalar::one(), &beta);
    let mut g = vec![ExactScalar::zero(); deg + 2];
    for k in 0..=deg {
        // u * G(u): coefficient of u^(deg - k + 1)
        g[deg - k + 1] = shifted.coeff(k) / &fb;
    }
    let h = RatPoly::new(g);
    // smallest k with p^(k (2g+2 - i)) * h_i integral for all i
    let top = deg + 1;
    let mut k = 0u32;
    loop {
        let scaled = scale_roots(&h, p, k, top);
        if scaled.coeffs().iter().all(|c| valuation(c, p) >= Valuation::Finite(0)) {
            return Ok((scaled, beta, k));
        }
        k += 1;
    }
}

/// `p^(k d) h(u / p^k)` for monic `h` of degree `d`.
fn scale_roots(h: &RatPoly, p: u64, k: u32, d: usize) -> RatPoly {
    RatPoly::new(
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * ExactScalar::prime_power(p, k as i64 * (d - i) as i64))
            .collect(),
    )
}

/// Local model at `p` for gluing: the even-degree form of the truncated
/// theta model, reduced mod `p^exponent`.
pub fn mumford_local_model(data: &WhittakerData, n: usize, exponent: u32) -> Result<LocalModel, TameError> {
    let p = data.p();
    let f = hyperelliptic_model(data, n)?;
    let (h, _, _) = even_degree_model(&f, p, exponent.max(8))?;
    let coeffs = h
        .coeffs()
        .iter()
        .map(|c| residue_mod(c, p, exponent).expect("p-integral"))
        .collect();
    Ok(LocalModel { prime: p, exponent, poly: IntPoly::new(coeffs) })
}

/// Symmetric-range representative, exposed for callers assembling
/// polynomials by hand.
pub fn symmetric_residue(x: &BigInt, modulus: &BigInt) -> BigInt {
    let r = symmetric(x.clone(), modulus);
    debug_assert!(r.abs() * 2 <= *modulus);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> ExactScalar {
        ExactScalar::from(x)
    }

    #[test]
    fn canonical_examples() {
        let t = canonical_parameters(1, 3).unwrap();
        assert_eq!(t.radii, vec![s(27)]);
        assert_eq!(t.pairs(), vec![(s(0), s(54))]);
        let t = canonical_parameters(2, 3).unwrap();
        assert_eq!(t.alphas, Some(vec![3, 2]));
        assert_eq!(t.betas, Some(vec![1]));
        assert_eq!(t.centers, vec![ExactScalar::prime_power(3, 9), s(54)]);
        let t = canonical_parameters(3, 5).unwrap();
        assert_eq!(t.alphas, Some(vec![5, 4, 3]));
        assert_eq!(t.betas, Some(vec![2, 1]));
        assert_eq!(t.radii[0], ExactScalar::prime_power(5, 25));
        assert_eq!(canonical_parameters(2, 2), Err(TameError::EvenPrime));
    }

    #[test]
    fn conditions_i_to_iv_hold_for_g2() {
        let cert = assess_construction(&canonical_parameters(2, 3).unwrap(), 2, None).unwrap();
        for id in ["hypothesis", "i", "ii", "iii", "iv"] {
            assert_eq!(cert.status(id), Some(ConditionStatus::Verified), "{id}: {cert:?}");
        }
    }

    #[test]
    fn ordering_tamper_detected() {
        let t = TameParameters::from_exponents(3, 3, 3, vec![5, 2, 1], vec![3, 1]).unwrap();
        let cert = assess_construction(&t, 1, None).unwrap();
        assert_eq!(cert.status("hypothesis"), Some(ConditionStatus::Failed));
    }

    #[test]
    fn two_adic_examples() {
        let c = two_adic_curve(1, None).unwrap();
        assert_eq!(c.n, s(8));
        assert_eq!(c.h(), RatPoly::from_roots(&[s(2), s(4)]));
        let r = verify_two_adic(&c);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.slopes, vec![s(-2), s(-1)]);
        let c2 = two_adic_curve(2, None).unwrap();
        assert_eq!(c2.n, s(64));
        assert!(verify_two_adic(&c2).pass);
        assert!(matches!(two_adic_curve(1, Some(&[1, 1])), Err(TameError::RepeatedValuation(_))));
        let weak = TwoAdicCurve::new(vec![s(2), s(4)], s(4)).unwrap();
        let r = verify_two_adic(&weak);
        assert_eq!(r.conditions[0].status, ConditionStatus::Failed);
    }

    #[test]
    fn glue_examples() {
        let m = |prime, exponent, c: &[i64]| LocalModel { prime, exponent, poly: IntPoly::from_i64(c) };
        let f = glue_global(&[m(3, 2, &[3, 0, 1]), m(5, 1, &[1, 0, 1])], true).unwrap();
        assert_eq!(f, IntPoly::from_i64(&[21, 0, 1]));
        let single = glue_global(&[m(7, 1, &[6, 5, 1])], true).unwrap();
        assert_eq!(single, IntPoly::from_i64(&[-1, -2, 1]));
        assert_eq!(glue_global(&[m(3, 1, &[1, 1]), m(5, 1, &[1, 0, 1])], false), Err(TameError::DegreeMismatch));
        assert_eq!(
            glue_global(&[m(3, 1, &[1, 1]), m(3, 2, &[1, 1])], false),
            Err(TameError::NonCoprimeModuli(3, 3))
        );
    }

    #[test]
    fn even_degree_model_is_monic_and_integral() {
        let data = canonical_parameters(1, 3).unwrap().whittaker_data().unwrap();
        let lm = mumford_local_model(&data, 2, 12).unwrap();
        assert_eq!(lm.poly.degree(), Some(4));
        assert!(lm.poly.is_monic());
    }
}
