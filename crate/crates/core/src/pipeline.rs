//! End-to-end runs behind the command line: the explicit construction,
//! the inverse Galois checklist and the Frobenius table.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::frobenius::{check_table_row, FrobeniusError, TableRow, TableRowReport, TABLE_ROWS};
use crate::galois::{
    check_type, excluded_report, find_aux_primes, glue_checked, goldbach_triples_with, local_model, GaloisError,
    GoldbachTriple, LocalSpec, SpecFile, TypeReport, TypeSpec, DEFAULT_AUX_CAP,
};
use crate::fp::FpPoly;
use crate::poly::IntPoly;
use crate::primes::{self, PrimeSieve};
use crate::tame::{
    assess_construction, canonical_parameters, mumford_local_model, two_adic_curve, verify_two_adic, ConditionStatus,
    TameError, TameParameters,
};
use crate::whittaker::hyperelliptic_model;

pub const SCHEMA: &str = "mumford-tame/1";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("every route for g = {g} contains p = {p}{hint}")]
    ExcludedPrime { g: u64, p: u64, hint: String },
    #[error(transparent)]
    Tame(#[from] TameError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

/// Overall outcome; the discriminant is the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verified = 0,
    Failed = 2,
    PremiseOnly = 3,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        self as i32
    }

    fn combine(statuses: impl IntoIterator<Item = Status>) -> Outcome {
        let mut out = Outcome::Verified;
        for s in statuses {
            match s {
                Status::Failed => return Outcome::Failed,
                Status::Premise => out = Outcome::PremiseOnly,
                Status::Verified => {}
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Failed,
    Premise,
}

impl From<ConditionStatus> for Status {
    fn from(s: ConditionStatus) -> Self {
        match s {
            ConditionStatus::Verified => Status::Verified,
            ConditionStatus::Failed => Status::Failed,
        }
    }
}

/// Result of one command: outcome, names of failed conditions and the
/// payload.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub failed: Vec<String>,
    pub result: Value,
}

impl Report {
    /// Versioned JSON with every number written as a decimal string.
    pub fn to_json(&self) -> Value {
        stringify_numbers(json!({
            "schema": SCHEMA,
            "command": self.command,
            "outcome": self.outcome,
            "exit_code": self.outcome.exit_code(),
            "failed": self.failed,
            "result": self.result,
        }))
    }
}

pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(xs) => Value::Array(xs.into_iter().map(stringify_numbers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialise")
}

#[derive(Clone, Debug, Default)]
pub struct ConstructOptions {
    pub m: Option<u32>,
    pub n: usize,
    pub precision: Option<u32>,
}

/// Odd `p`: canonical parameters, all conditions, and the truncated
/// model. `p = 2`: the two-adic family.
pub fn cmd_construct(g: usize, p: u64, opts: &ConstructOptions) -> Result<Report, PipelineError> {
    if g == 0 {
        return Err(PipelineError::Usage("g must be at least 1".into()));
    }
    if !primes::is_prime(p) {
        return Err(PipelineError::Usage(format!("{p} is not prime")));
    }
    if p == 2 {
        let curve = two_adic_curve(g, None)?;
        let rep = verify_two_adic(&curve);
        let outcome = Outcome::combine(rep.conditions.iter().map(|c| c.status.into()));
        let failed = rep.conditions.iter().filter(|c| c.status == ConditionStatus::Failed).map(|c| c.id.clone()).collect();
        return Ok(Report {
            command: "construct".into(),
            outcome,
            failed,
            result: json!({ "construction": "two_adic", "curve": to_value(&curve), "model": "y^2 + h(x) y = -N^2", "report": to_value(&rep) }),
        });
    }
    let canon = canonical_parameters(g, p)?;
    let params = match opts.m {
        Some(m) if m != canon.m => TameParameters::from_exponents(
            g,
            p,
            m,
            canon.alphas.clone().expect("canonical"),
            canon.betas.clone().expect("canonical"),
        )?,
        _ => canon,
    };
    let cert = assess_construction(&params, opts.n, opts.precision)?;
    let model = params
        .whittaker_data()
        .ok()
        .and_then(|d| hyperelliptic_model(&d, opts.n).ok())
        .map(|f| f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let outcome = Outcome::combine(cert.conditions.iter().map(|c| c.status.into()));
    let failed = cert.failed().iter().map(|c| c.id.clone()).collect();
    Ok(Report {
        command: "construct".into(),
        outcome,
        failed,
        result: json!({ "certificate": to_value(&cert), "model_coefficients": model, "truncation": opts.n }),
    })
}

/// Builds and checks the polynomial described by a spec file.
pub fn cmd_construct_typed(spec: &SpecFile) -> Result<Report, PipelineError> {
    let f = crate::galois::construct_typed_poly(spec.degree, &spec.specs)?;
    let mut checks = Vec::new();
    let mut failed = Vec::new();
    for s in &spec.specs {
        match s {
            LocalSpec::Typed(ts) => {
                let r = check_type(&f, ts, None)?;
                if !r.pass {
                    failed.push(format!("type at {}", ts.p));
                }
                checks.push(to_value(&r));
            }
            LocalSpec::Filler { filler } => {
                let ok = FpPoly::from_int_poly(&f, *filler).is_squarefree();
                if !ok {
                    failed.push(format!("squarefree mod {filler}"));
                }
                checks.push(json!({ "filler": filler, "squarefree": ok }));
            }
        }
    }
    Ok(Report {
        command: "construct".into(),
        outcome: if failed.is_empty() { Outcome::Verified } else { Outcome::Failed },
        failed,
        result: json!({ "polynomial": f.to_string(), "checks": checks }),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChecklistItem {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

fn item(id: &str, status: Status, witness: String) -> ChecklistItem {
    ChecklistItem { id: id.into(), status, witness }
}

#[derive(Clone, Debug, Serialize)]
pub struct IgpChecklist {
    pub g: u64,
    pub p: u64,
    pub route: String,
    pub triple: Option<GoldbachTriple>,
    pub aux_primes: Vec<u64>,
    pub polynomial: String,
    pub items: Vec<ChecklistItem>,
}

#[derive(Clone, Debug)]
pub struct IgpOptions {
    pub n: usize,
    pub aux_cap: u64,
}

impl Default for IgpOptions {
    fn default() -> Self {
        IgpOptions { n: 1, aux_cap: DEFAULT_AUX_CAP }
    }
}

enum Route {
    Triple(GoldbachTriple, crate::galois::AuxPrimes),
    PrimeDegree { p1: u64, pq: u64 },
}

fn choose_route(g: u64, p: u64, cap: u64) -> Result<Route, PipelineError> {
    let n = 2 * g + 2;
    let sieve = PrimeSieve::new(n as usize);
    let mut last_err = None;
    for t in goldbach_triples_with(n, &sieve).into_iter().filter(|t| !t.contains(p)) {
        match find_aux_primes(g, p, &t, cap) {
            Ok(aux) => return Ok(Route::Triple(t, aux)),
            Err(e) => last_err = Some(e),
        }
    }
    let q = 2 * g + 1;
    if primes::is_prime(q) && q != p {
        let lo = q.max(p);
        let p1 = primes::next_prime(lo);
        let pq = primes::next_prime(p1);
        return Ok(Route::PrimeDegree { p1, pq });
    }
    let table: Vec<&TableRow> = TABLE_ROWS.iter().filter(|r| r.g as u64 == g && r.p == p).collect();
    let hint = match (table.first(), last_err) {
        (Some(r), _) => format!("; table row {} covers it (table-check)", r.id()),
        (None, Some(e)) => format!("; {e}"),
        (None, None) => String::new(),
    };
    Err(PipelineError::ExcludedPrime { g, p, hint })
}

/// Finds a route, builds the glued polynomial and runs every local check.
pub fn cmd_igp(g: u64, p: u64, opts: &IgpOptions) -> Result<Report, PipelineError> {
    if g == 0 {
        return Err(PipelineError::Usage("g must be at least 1".into()));
    }
    if p == 2 || !primes::is_prime(p) {
        return Err(PipelineError::Usage(format!("p = {p} must be an odd prime")));
    }
    let d = (2 * g + 2) as usize;
    let route = choose_route(g, p, opts.aux_cap)?;
    let (route_name, triple, typed): (&str, Option<GoldbachTriple>, Vec<TypeSpec>) = match &route {
        Route::Triple(t, a) => (
            "goldbach_triple",
            Some(*t),
            vec![
                TypeSpec::new(a.p1, 1, vec![2])?,
                TypeSpec::new(a.p2, 1, vec![t.q1, t.q2])?,
                TypeSpec::new(a.p3, 2, vec![t.q3])?,
            ],
        ),
        Route::PrimeDegree { p1, pq } => (
            "2g+1_prime",
            None,
            vec![TypeSpec::new(*p1, 1, vec![2])?, TypeSpec::new(*pq, 1, vec![2 * g + 1])?],
        ),
    };
    let aux: Vec<u64> = typed.iter().map(|t| t.p).collect();
    let fillers: Vec<u64> = (3..=2 * g + 1).filter(|&l| primes::is_prime(l) && l != p).chain(std::iter::once(2)).collect();
    let mut specs: Vec<LocalSpec> = typed.iter().cloned().map(LocalSpec::Typed).collect();
    specs.extend(fillers.iter().map(|&l| LocalSpec::Filler { filler: l }));
    let mut models = specs.iter().map(|s| local_model(d, s)).collect::<Result<Vec<_>, _>>()?;

    let params = canonical_parameters(g as usize, p)?;
    let data = params.whittaker_data()?;
    let exponent = crate::tame::default_precision(g as usize, params.m, p);
    let mumford = mumford_local_model(&data, opts.n, exponent)?;
    models.push(mumford.clone());
    let f = glue_checked(d, &models, &specs)?;

    let mut items = Vec::new();
    match &route {
        Route::Triple(t, a) => {
            let pr = |x: u64, q: u64| primes::multiplicative_order(x % q, q) == Some(q - 1);
            let ok = pr(a.p2, t.q1) && pr(a.p2, t.q2) && pr(a.p3, t.q3) && (p != 3 || (a.p2 % 3 == 1 && a.p3 % 3 == 1));
            items.push(item(
                "aux_primes",
                if ok { Status::Verified } else { Status::Failed },
                format!("p1 = {}, p2 = {} (primitive mod {} and {}), p3 = {} (primitive mod {})", a.p1, a.p2, t.q1, t.q2, a.p3, t.q3),
            ));
        }
        Route::PrimeDegree { p1, pq } => {
            items.push(item("aux_primes", Status::Verified, format!("p1 = {p1}, block prime {pq}, 2g+1 = {} != p", 2 * g + 1)));
        }
    }
    let ids = ["i", "ii", "iii"];
    for (ts, id) in typed.iter().zip(ids) {
        let r: TypeReport = check_type(&f, ts, None)?;
        let blocks: Vec<String> = r.blocks.iter().map(|b| format!("deg {} at {:?}", b.degree, b.alpha.as_ref().map(|a| a.to_string()))).collect();
        items.push(item(
            id,
            if r.pass { Status::Verified } else { Status::Failed },
            format!("type {}-{:?} at {}: {}", ts.t, ts.blocks, ts.p, blocks.join(", ")),
        ));
    }
    let mut semi = Vec::new();
    let mut semi_ok = true;
    for &l in &fillers {
        let ok = FpPoly::from_int_poly(&f, l).is_squarefree();
        semi_ok &= ok;
        semi.push(format!("f mod {l} squarefree: {ok}"));
    }
    semi.push("semistability at the remaining primes and at 2 is cited".into());
    items.push(item("iv", if semi_ok { Status::Premise } else { Status::Failed }, semi.join("; ")));

    let modp = mumford.modulus();
    let close = f.sub(&mumford.poly).coeffs().iter().all(|c| num_integer::Integer::mod_floor(c, &modp) == num_bigint::BigInt::from(0));
    items.push(item(
        "v",
        if close { Status::Premise } else { Status::Failed },
        format!("f agrees with the Mumford model mod {p}^{exponent}: {close}; closeness implies toric reduction is cited"),
    ));
    let cert = assess_construction(&params, opts.n, None)?;
    let vi = cert.status("v").map(Status::from).unwrap_or(Status::Failed);
    let vi = if vi == Status::Verified { Status::Premise } else { vi };
    items.push(item(
        "vi",
        vi,
        format!("every period of the local Mumford curve is an m-th power, m = {}: {:?}", params.m, cert.status("v")),
    ));
    let sq = f.to_rat().is_squarefree();
    items.push(item("squarefree", if sq { Status::Verified } else { Status::Failed }, format!("deg f = {d}, gcd(f, f') = 1: {sq}")));

    let outcome = Outcome::combine(items.iter().map(|i| i.status));
    let failed = items.iter().filter(|i| i.status == Status::Failed).map(|i| i.id.clone()).collect();
    let checklist = IgpChecklist {
        g,
        p,
        route: route_name.into(),
        triple,
        aux_primes: aux,
        polynomial: f.to_string(),
        items,
    };
    let excluded = excluded_report(g, &PrimeSieve::new(2 * g as usize + 2)).ok();
    Ok(Report {
        command: "igp".into(),
        outcome,
        failed,
        result: json!({ "checklist": to_value(&checklist), "excluded": to_value(&excluded) }),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowSelection {
    Fast,
    All,
    Ids(Vec<String>),
}

impl std::str::FromStr for RowSelection {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(RowSelection::Fast),
            "all" => Ok(RowSelection::All),
            _ => {
                let ids: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
                for id in &ids {
                    if !TABLE_ROWS.iter().any(|r| &r.id() == id) {
                        return Err(PipelineError::Usage(format!("unknown row {id}")));
                    }
                }
                Ok(RowSelection::Ids(ids))
            }
        }
    }
}

pub fn selected_rows(sel: &RowSelection) -> Vec<TableRow> {
    TABLE_ROWS
        .iter()
        .filter(|r| match sel {
            RowSelection::Fast => r.is_fast(),
            RowSelection::All => true,
            RowSelection::Ids(ids) => ids.contains(&r.id()),
        })
        .copied()
        .collect()
}

pub fn cmd_tablecheck(sel: &RowSelection, budget: u64) -> Result<Report, PipelineError> {
    let mut reports: Vec<TableRowReport> = Vec::new();
    let mut failed = Vec::new();
    for row in selected_rows(sel) {
        let r = check_table_row(row.g, row.p, &row.poly(), row.ell, budget)?;
        if !r.pass {
            failed.push(row.id());
        }
        reports.push(r);
    }
    Ok(Report {
        command: "table-check".into(),
        outcome: if failed.is_empty() { Outcome::Verified } else { Outcome::Failed },
        failed,
        result: json!({ "rows": to_value(&reports) }),
    })
}

/// Parses a polynomial argument, mapping errors to usage errors.
pub fn parse_poly_arg(s: &str) -> Result<IntPoly, PipelineError> {
    s.parse().map_err(|e| PipelineError::Usage(format!("{e}")))
}

pub fn cmd_goldbach(n: u64) -> Result<Report, PipelineError> {
    let triples = crate::galois::goldbach_triples(n)?;
    let sieve = PrimeSieve::new(n as usize);
    let double = crate::galois::double_goldbach_witness(n, &sieve);
    Ok(Report {
        command: "goldbach".into(),
        outcome: Outcome::Verified,
        failed: vec![],
        result: json!({ "n": n, "triples": to_value(&triples), "double_goldbach_witness": to_value(&double) }),
    })
}

pub fn cmd_excluded(g_max: u64) -> Result<Report, PipelineError> {
    if g_max == 0 {
        return Err(PipelineError::Usage("g-max must be at least 1".into()));
    }
    let sieve = PrimeSieve::new(2 * g_max as usize + 2);
    let mut rows = Vec::new();
    for g in 1..=g_max {
        let entry = match excluded_report(g, &sieve) {
            Ok(r) => to_value(&r),
            Err(e) => json!({ "g": g, "error": e.to_string() }),
        };
        rows.push(entry);
    }
    Ok(Report { command: "excluded".into(), outcome: Outcome::Verified, failed: vec![], result: json!({ "rows": rows }) })
}

pub fn cmd_type_check(f: &IntPoly, spec: &TypeSpec, precision: Option<u32>) -> Result<Report, PipelineError> {
    let r = check_type(f, spec, precision)?;
    Ok(Report {
        command: "type-check".into(),
        outcome: if r.pass { Outcome::Verified } else { Outcome::Failed },
        failed: if r.pass { vec![] } else { vec![format!("type at {}", spec.p)] },
        result: to_value(&r),
    })
}

pub fn cmd_frobenius(f: &IntPoly, ell: u64, genus: usize, budget: u64, seed: u64) -> Result<Report, PipelineError> {
    let d = crate::frobenius::frobenius_charpoly_with(f, ell, genus, budget, seed)?;
    Ok(Report {
        command: "frobenius".into(),
        outcome: Outcome::Verified,
        failed: vec![],
        result: json!({ "frobenius": to_value(&d), "charpoly": d.charpoly_poly().to_string(), "trace": d.trace().to_string() }),
    })
}

/// Closed-form and truncated periods with their relative gaps.
pub fn cmd_period(g: usize, p: u64, n: usize) -> Result<Report, PipelineError> {
    if g == 0 || p == 2 || !primes::is_prime(p) {
        return Err(PipelineError::Usage("period needs g >= 1 and an odd prime p".into()));
    }
    let data = canonical_parameters(g, p)?.whittaker_data()?;
    let q0 = crate::period::period_closed_form(&data);
    let qn = crate::period::period_truncated(&data, n).map_err(TameError::from)?;
    let rep = crate::period::approximation_report(&data, n, &qn, &q0);
    let failed = rep.failures().iter().map(|e| format!("Q_{}{}", e.i + 1, e.j + 1)).collect::<Vec<_>>();
    Ok(Report {
        command: "period".into(),
        outcome: if rep.pass { Outcome::Verified } else { Outcome::Failed },
        failed,
        result: json!({ "closed_form": to_value(&q0), "truncated": to_value(&qn), "approximation": to_value(&rep) }),
    })
}

/// Branch points and the degree-(2g+1) model from truncated theta values.
pub fn cmd_model(g: usize, p: u64, n: usize) -> Result<Report, PipelineError> {
    if g == 0 || p == 2 || !primes::is_prime(p) {
        return Err(PipelineError::Usage("model needs g >= 1 and an odd prime p".into()));
    }
    let data = canonical_parameters(g, p)?.whittaker_data()?;
    let f = hyperelliptic_model(&data, n).map_err(TameError::from)?;
    let roots = crate::whittaker::branch_points(&data, n).map_err(TameError::from)?;
    Ok(Report {
        command: "model".into(),
        outcome: Outcome::Verified,
        failed: vec![],
        result: json!({
            "truncation": n,
            "branch_points": roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "coefficients": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
    })
}
