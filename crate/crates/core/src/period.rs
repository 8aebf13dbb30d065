//! Period matrices of Whittaker Jacobians: closed forms, truncated
//! products over Gamma_n, and the checks relating them.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{MobiusMap, ProjectivePoint};
use crate::padic::{is_mth_power, valuation, ExactScalar, PadicContext, PadicError, Valuation};
use crate::whittaker::{Alphabet, WhittakerData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodError {
    #[error("pole hit in entry ({i}, {j}) at word {word}")]
    PoleHit { i: usize, j: usize, word: String },
    #[error("base points of entry ({i}, {j}) are conjugate under word {word}")]
    ConjugateBasePoints { i: usize, j: usize, word: String },
    #[error("error bound {have:?} is below the required {needed}")]
    InsufficientErrorBound { needed: i64, have: Option<i64> },
    #[error("index out of range")]
    BadIndex,
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum PeriodKind {
    ClosedForm,
    Truncated(usize),
    Corrected,
}

/// A g x g approximation to the period matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodMatrixApprox {
    pub g: usize,
    pub kind: PeriodKind,
    pub entries: Vec<Vec<ExactScalar>>,
    /// Claimed lower bound on `v(entry / Q_ij - 1)` for the true period
    /// matrix, as asserted by the approximation theorem.
    pub error_valuation_bound: Option<i64>,
}

impl PeriodMatrixApprox {
    pub fn entry(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i][j]
    }

    pub fn valuations(&self, p: u64) -> Vec<Vec<Valuation>> {
        self.entries.iter().map(|row| row.iter().map(|x| valuation(x, p)).collect()).collect()
    }
}

/// `min_{i != j} v(r_i) - v(c_i - c_j)`; `v(r_1)` when `g = 1`, and
/// `i64::MIN` when two centres coincide.
pub fn q_bound(data: &WhittakerData) -> i64 {
    let p = data.p();
    let g = data.g();
    let vr = |i: usize| valuation(&data.radii[i], p).finite().expect("r != 0");
    if g == 1 {
        return vr(0);
    }
    let mut best = i64::MAX;
    for i in 0..g {
        for j in 0..g {
            if i != j {
                // concentric discs: |r_i| / |c_i - c_j| is infinite
                let bound = match valuation(&(&data.centers[i] - &data.centers[j]), p) {
                    Valuation::Finite(vd) => vr(i) - vd,
                    Valuation::Infinite => i64::MIN,
                };
                best = best.min(bound);
            }
        }
    }
    best
}

/// Canonical base points `a = 2 - c_i + r_i` on the boundary of `B'_i`
/// and `z = 2 - c_j - r_j` on the boundary of `B'_j`.
pub fn base_points(data: &WhittakerData, i: usize, j: usize) -> (ExactScalar, ExactScalar) {
    let two = ExactScalar::from(2);
    let a = &two - &data.centers[i] + &data.radii[i];
    let z = &two - &data.centers[j] - &data.radii[j];
    (a, z)
}

fn check_index(data: &WhittakerData, i: usize, j: usize) -> Result<(), PeriodError> {
    if i >= data.g() || j >= data.g() {
        return Err(PeriodError::BadIndex);
    }
    Ok(())
}

fn closed_form_denominator(data: &WhittakerData, i: usize, j: usize) -> ExactScalar {
    let (c, r) = (&data.centers, &data.radii);
    ExactScalar::from(2) - &c[i] - &c[j] + &r[i] - &r[j]
}

/// First `(i, j)` whose closed-form denominator vanishes. Never happens
/// in good position.
pub fn closed_form_pole(data: &WhittakerData) -> Option<(usize, usize)> {
    let g = data.g();
    (0..g).flat_map(|i| (0..g).map(move |j| (i, j))).find(|&(i, j)| closed_form_denominator(data, i, j).is_zero())
}

/// `((c_i - c_j - r_i - r_j) / (2 - c_i - c_j + r_i - r_j))^2`.
pub fn closed_form_entry(data: &WhittakerData, i: usize, j: usize) -> ExactScalar {
    let (c, r) = (&data.centers, &data.radii);
    let num = &c[i] - &c[j] - &r[i] - &r[j];
    (num / closed_form_denominator(data, i, j)).square()
}

pub fn period_closed_form(data: &WhittakerData) -> PeriodMatrixApprox {
    let g = data.g();
    let entries = (0..g).map(|i| (0..g).map(|j| closed_form_entry(data, i, j)).collect()).collect();
    PeriodMatrixApprox { g, kind: PeriodKind::ClosedForm, entries, error_valuation_bound: Some(q_bound(data)) }
}

fn affine(pt: ProjectivePoint) -> Option<ExactScalar> {
    match pt {
        ProjectivePoint::Affine(x) => Some(x),
        ProjectivePoint::Infinity => None,
    }
}

/// `(u - w) / (t - w)`, read as 1 when `w` is infinite.
fn ratio(u: &ExactScalar, t: &ExactScalar, w: &Option<ExactScalar>) -> Option<Result<ExactScalar, ()>> {
    let Some(w) = w else { return Some(Ok(ExactScalar::one())) };
    let den = t - w;
    if den.is_zero() {
        return None;
    }
    let num = u - w;
    if num.is_zero() {
        return Some(Err(()));
    }
    Some(Ok(num / den))
}

/// One factor `(z - Ma)(gj z - M gi a) / ((z - M gi a)(gj z - Ma))`.
fn product_factor(
    m: &MobiusMap,
    a: &ExactScalar,
    gia: &ExactScalar,
    z: &ExactScalar,
    gjz: &ExactScalar,
) -> Option<Result<ExactScalar, ()>> {
    let ma = affine(m.apply_affine(a));
    let mgia = affine(m.apply_affine(gia));
    let left = ratio(z, gjz, &ma)?;
    let right = ratio(gjz, z, &mgia)?;
    Some(match (left, right) {
        (Ok(x), Ok(y)) => Ok(x * y),
        _ => Err(()),
    })
}

/// `Q^n_ij` with explicit base points.
pub fn period_entry_truncated_with(
    data: &WhittakerData,
    i: usize,
    j: usize,
    a: &ExactScalar,
    z: &ExactScalar,
    n: usize,
) -> Result<ExactScalar, PeriodError> {
    check_index(data, i, j)?;
    let words = data.word_maps(n, Alphabet::Gamma);
    period_entry_over(data, i, j, a, z, &words)
}

fn period_entry_over(
    data: &WhittakerData,
    i: usize,
    j: usize,
    a: &ExactScalar,
    z: &ExactScalar,
    words: &[(crate::whittaker::GroupWord, MobiusMap)],
) -> Result<ExactScalar, PeriodError> {
    let pole = |word: String| PeriodError::PoleHit { i, j, word };
    let gia = affine(data.gammas[i].apply_affine(a)).ok_or_else(|| pole("g_i".into()))?;
    let gjz = affine(data.gammas[j].apply_affine(z)).ok_or_else(|| pole("g_j".into()))?;
    let mut acc = ExactScalar::one();
    for (w, m) in words {
        match product_factor(m, a, &gia, z, &gjz) {
            None => return Err(pole(w.to_string())),
            Some(Err(())) => return Err(PeriodError::ConjugateBasePoints { i, j, word: w.to_string() }),
            Some(Ok(f)) => acc = acc * f,
        }
    }
    Ok(acc)
}

/// `Q^n_ij` with the canonical base points.
pub fn period_entry_truncated(data: &WhittakerData, i: usize, j: usize, n: usize) -> Result<ExactScalar, PeriodError> {
    let (a, z) = base_points(data, i, j);
    period_entry_truncated_with(data, i, j, &a, &z, n)
}

/// The full matrix `Q^n` over `Gamma_n`.
pub fn period_truncated(data: &WhittakerData, n: usize) -> Result<PeriodMatrixApprox, PeriodError> {
    let g = data.g();
    let words = data.word_maps(n, Alphabet::Gamma);
    let mut entries = Vec::with_capacity(g);
    for i in 0..g {
        let mut row = Vec::with_capacity(g);
        for j in 0..g {
            let (a, z) = base_points(data, i, j);
            row.push(period_entry_over(data, i, j, &a, &z, &words)?);
        }
        entries.push(row);
    }
    Ok(PeriodMatrixApprox { g, kind: PeriodKind::Truncated(n), entries, error_valuation_bound: Some(q_bound(data)) })
}

fn pt(m: &MobiusMap, x: &ExactScalar) -> Option<ExactScalar> {
    affine(m.apply_affine(x))
}

fn four_term(n1: ExactScalar, n2: ExactScalar, d1: ExactScalar, d2: ExactScalar) -> Option<ExactScalar> {
    let den = &d1 * &d2;
    if den.is_zero() {
        None
    } else {
        Some(n1 * n2 / den)
    }
}

/// `(z - gj^-1 a)(gj z - gj a) / ((z - gj^-1 gi a)(gj z - gj gi a))` for
/// explicit base points.
pub fn correction_factor_with(
    data: &WhittakerData,
    i: usize,
    j: usize,
    a: &ExactScalar,
    z: &ExactScalar,
) -> Result<ExactScalar, PeriodError> {
    check_index(data, i, j)?;
    let pole = || PeriodError::PoleHit { i, j, word: "correction".into() };
    let gj = &data.gammas[j];
    let gj_inv = gj.inverse();
    let gia = pt(&data.gammas[i], a).ok_or_else(pole)?;
    let gjz = pt(gj, z).ok_or_else(pole)?;
    let t1 = z - pt(&gj_inv, a).ok_or_else(pole)?;
    let t2 = &gjz - pt(gj, a).ok_or_else(pole)?;
    let t3 = z - pt(&gj_inv, &gia).ok_or_else(pole)?;
    let t4 = &gjz - pt(gj, &gia).ok_or_else(pole)?;
    four_term(t1, t2, t3, t4).ok_or_else(pole)
}

pub fn correction_factor(data: &WhittakerData, i: usize, j: usize) -> Result<ExactScalar, PeriodError> {
    let (a, z) = base_points(data, i, j);
    correction_factor_with(data, i, j, &a, &z)
}

/// The product of the two `Gamma_1` factors that are not small:
/// `gamma_j^-1` at `z` and `gamma_j` at `gamma_j z`. Equals
/// `(z - gj^-1 a)(gj z - gj gi a) / ((z - gj^-1 gi a)(gj z - gj a))`.
pub fn excluded_letter_factor(data: &WhittakerData, i: usize, j: usize) -> Result<ExactScalar, PeriodError> {
    check_index(data, i, j)?;
    let (a, z) = base_points(data, i, j);
    let pole = || PeriodError::PoleHit { i, j, word: "excluded letters".into() };
    let gj = &data.gammas[j];
    let gj_inv = gj.inverse();
    let gia = pt(&data.gammas[i], &a).ok_or_else(pole)?;
    let gjz = pt(gj, &z).ok_or_else(pole)?;
    let t1 = &z - pt(&gj_inv, &a).ok_or_else(pole)?;
    let t2 = &gjz - pt(gj, &gia).ok_or_else(pole)?;
    let t3 = &z - pt(&gj_inv, &gia).ok_or_else(pole)?;
    let t4 = &gjz - pt(gj, &a).ok_or_else(pole)?;
    four_term(t1, t2, t3, t4).ok_or_else(pole)
}

/// `Q^alpha = Q^0 * correction_factor`, entrywise.
pub fn period_corrected(data: &WhittakerData) -> Result<PeriodMatrixApprox, PeriodError> {
    let g = data.g();
    let mut entries = Vec::with_capacity(g);
    for i in 0..g {
        let mut row = Vec::with_capacity(g);
        for j in 0..g {
            row.push(closed_form_entry(data, i, j) * correction_factor(data, i, j)?);
        }
        entries.push(row);
    }
    Ok(PeriodMatrixApprox { g, kind: PeriodKind::Corrected, entries, error_valuation_bound: Some(q_bound(data)) })
}

/// True iff no gamma-word of length at most `n` sends `a` to `z`.
pub fn nonconjugacy_check(data: &WhittakerData, a: &ExactScalar, z: &ExactScalar, n: usize) -> bool {
    let target = ProjectivePoint::Affine(z.clone());
    data.word_maps(n, Alphabet::Gamma).iter().all(|(_, m)| m.apply_affine(a) != target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryGap {
    pub i: usize,
    pub j: usize,
    /// `v(Q^n_ij / Q^0_ij - 1)`.
    pub gap: Valuation,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationReport {
    pub n: usize,
    pub q_bound: i64,
    pub entries: Vec<EntryGap>,
    pub pass: bool,
}

impl ApproximationReport {
    pub fn min_gap(&self) -> Valuation {
        self.entries.iter().map(|e| e.gap).min().unwrap_or(Valuation::Infinite)
    }

    pub fn failures(&self) -> Vec<&EntryGap> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }
}

/// Entrywise gaps `v(a_ij / b_ij - 1)`.
pub fn relative_gaps(a: &PeriodMatrixApprox, b: &PeriodMatrixApprox, p: u64) -> Vec<Vec<Valuation>> {
    a.entries
        .iter()
        .zip(&b.entries)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| valuation(&(x / y - ExactScalar::one()), p)).collect())
        .collect()
}

/// Checks `v(Q^n_ij / Q^0_ij - 1) >= q_bound` for every entry.
pub fn verify_approximation(data: &WhittakerData, n: usize) -> Result<ApproximationReport, PeriodError> {
    let q0 = period_closed_form(data);
    let qn = period_truncated(data, n)?;
    Ok(approximation_report(data, n, &qn, &q0))
}

pub fn approximation_report(
    data: &WhittakerData,
    n: usize,
    qn: &PeriodMatrixApprox,
    q0: &PeriodMatrixApprox,
) -> ApproximationReport {
    let bound = q_bound(data);
    let gaps = relative_gaps(qn, q0, data.p());
    let mut entries = Vec::new();
    for (i, row) in gaps.iter().enumerate() {
        for (j, &gap) in row.iter().enumerate() {
            entries.push(EntryGap { i, j, gap, pass: gap >= Valuation::Finite(bound) });
        }
    }
    let pass = entries.iter().all(|e| e.pass);
    ApproximationReport { n, q_bound: bound, entries, pass }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MthPowerEntry {
    pub i: usize,
    pub j: usize,
    pub valuation: Valuation,
    pub is_power: bool,
    pub witness: Option<ExactScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MthPowerReport {
    pub m: u32,
    pub entries: Vec<MthPowerEntry>,
    pub all_powers: bool,
}

/// Tests every entry for being an m-th power in `Q_p`. Requires the
/// matrix's error bound to reach `e*m`, so that the conclusion transfers to
/// the true periods by the m-th power lemma.
pub fn entries_are_mth_powers(q: &PeriodMatrixApprox, m: u32, ctx: &PadicContext) -> Result<MthPowerReport, PeriodError> {
    let needed = (ctx.e() * m) as i64;
    if q.error_valuation_bound.is_none_or(|b| b < needed) {
        return Err(PeriodError::InsufficientErrorBound { needed, have: q.error_valuation_bound });
    }
    let mut entries = Vec::new();
    for (i, row) in q.entries.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let witness = is_mth_power(x, m, ctx)?;
            entries.push(MthPowerEntry {
                i,
                j,
                valuation: valuation(x, ctx.p()),
                is_power: witness.is_some(),
                witness,
            });
        }
    }
    let all_powers = entries.iter().all(|e| e.is_power);
    Ok(MthPowerReport { m, entries, all_powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whittaker::PointConfiguration;

    fn s(x: i64) -> ExactScalar {
        ExactScalar::from(x)
    }

    fn data(p: u64, centers: &[ExactScalar], radii: &[ExactScalar]) -> WhittakerData {
        WhittakerData::build(PointConfiguration::from_centers(p, centers, radii).unwrap()).unwrap()
    }

    fn g2p3() -> WhittakerData {
        let q9 = ExactScalar::prime_power(3, 9);
        data(3, &[q9.clone(), s(54)], &[q9, ExactScalar::prime_power(3, 6)])
    }

    #[test]
    fn closed_form_examples() {
        let d1 = data(3, &[s(27)], &[s(27)]);
        assert_eq!(period_closed_form(&d1).entries[0][0], ExactScalar::new(729, 676).unwrap());
        assert_eq!(q_bound(&d1), 3);
        let d = g2p3();
        let q0 = period_closed_form(&d);
        assert_eq!(q0.entries[0][1], ExactScalar::new(783, 781).unwrap().square());
        assert_eq!(valuation(&q0.entries[0][1], 3), Valuation::Finite(6));
        assert_eq!(q_bound(&d), 3);
        // diagonal closed form (r_i / (c_i - 1))^2
        for i in 0..2 {
            let alt = (&d.radii[i] / (&d.centers[i] - s(1))).square();
            assert_eq!(q0.entries[i][i], alt);
        }
    }

    #[test]
    fn identity_word_is_closed_form() {
        let d = g2p3();
        assert_eq!(period_truncated(&d, 0).unwrap().entries, period_closed_form(&d).entries);
    }

    #[test]
    fn correction_factor_is_one() {
        let d = g2p3();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(correction_factor(&d, i, j).unwrap(), s(1));
            }
        }
        let d1 = data(3, &[s(27)], &[s(27)]);
        assert_eq!(correction_factor(&d1, 0, 0).unwrap(), s(1));
        // the wrong-sign choice a' = 2 - c - r still gives 1; a generic pair does not
        let two = s(2);
        let a = &two - &d.centers[0] - &d.radii[0];
        let (_, z) = base_points(&d, 0, 1);
        assert_eq!(correction_factor_with(&d, 0, 1, &a, &z).unwrap(), s(1));
        assert_ne!(correction_factor_with(&d, 0, 1, &s(5), &s(7)).unwrap(), s(1));
    }

    #[test]
    fn off_diagonal_gaps_meet_bound() {
        let d = g2p3();
        let r1 = verify_approximation(&d, 1).unwrap();
        let r2 = verify_approximation(&d, 2).unwrap();
        for (e1, e2) in r1.entries.iter().zip(&r2.entries) {
            if e1.i != e1.j {
                assert!(e1.pass && e2.pass, "{e1:?} {e2:?}");
                assert!(e2.gap >= e1.gap);
            }
        }
    }

    #[test]
    fn excluded_letters_explain_diagonal() {
        let d = g2p3();
        let q0 = period_closed_form(&d);
        let q2 = period_truncated(&d, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let fixed = &q0.entries[i][j] * excluded_letter_factor(&d, i, j).unwrap();
                let gap = valuation(&(&q2.entries[i][j] / fixed - s(1)), 3);
                assert!(gap >= Valuation::Finite(q_bound(&d)), "({i},{j}) {gap}");
            }
        }
    }

    #[test]
    fn nonconjugacy_examples() {
        let d = g2p3();
        let (a, z) = base_points(&d, 0, 1);
        assert!(nonconjugacy_check(&d, &a, &z, 4));
        assert!(!nonconjugacy_check(&d, &a, &a, 0));
        let ga = affine(d.gammas[0].apply_affine(&a)).unwrap();
        assert!(!nonconjugacy_check(&d, &a, &ga, 1));
    }

    #[test]
    fn mth_power_entries() {
        let ctx = PadicContext::new(3, 12).unwrap();
        let d1 = data(3, &[s(27)], &[s(27)]);
        let rep = entries_are_mth_powers(&period_closed_form(&d1), 3, &ctx).unwrap();
        assert!(rep.all_powers);
        let mut bad = period_closed_form(&g2p3());
        bad.entries[0][0] = s(3);
        assert!(!entries_are_mth_powers(&bad, 3, &ctx).unwrap().all_powers);
        bad.error_valuation_bound = Some(2);
        assert!(matches!(entries_are_mth_powers(&bad, 3, &ctx), Err(PeriodError::InsufficientErrorBound { .. })));
    }
}
