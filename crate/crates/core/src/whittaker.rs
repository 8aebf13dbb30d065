//! Whittaker groups from 2g+2 points: involutions, generators, the
//! canonical fundamental domain, reduced words and theta products.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{disc_distance, image_of_disc, involution_for_pair, Disc, GeometryError, MobiusMap, ProjectivePoint};
use crate::padic::{valuation, ExactScalar, Valuation};
use crate::poly::RatPoly;
use crate::primes;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhittakerError {
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("configuration needs at least one pair")]
    Empty,
    #[error("declared g = {declared} but {pairs} pairs given")]
    GenusMismatch { declared: usize, pairs: usize },
    #[error("points are not distinct: {0}")]
    DuplicatePoints(String),
    #[error("configuration is not in good position: {0}")]
    NotGoodPosition(String),
    #[error("pole hit at word {0}")]
    PoleHit(String),
    #[error("invalid configuration JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The pairs `(a_i, b_i)`, `i = 1..g`; the pair `(1, inf)` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfiguration {
    p: u64,
    g: usize,
    pairs: Vec<(ExactScalar, ExactScalar)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    p: u64,
    g: Option<usize>,
    pairs: Vec<[ExactScalar; 2]>,
}

impl PointConfiguration {
    /// Checks the prime and that `g >= 1`; distinctness is checked by
    /// [`WhittakerData::build`] and reported by [`good_position_check`].
    pub fn new(p: u64, pairs: Vec<(ExactScalar, ExactScalar)>) -> Result<Self, WhittakerError> {
        if p == 2 || !primes::is_prime(p) {
            return Err(WhittakerError::BadPrime(p));
        }
        if pairs.is_empty() {
            return Err(WhittakerError::Empty);
        }
        Ok(PointConfiguration { p, g: pairs.len(), pairs })
    }

    /// Pairs from centres and radii: `a = c - r`, `b = c + r`.
    pub fn from_centers(p: u64, centers: &[ExactScalar], radii: &[ExactScalar]) -> Result<Self, WhittakerError> {
        let pairs = centers.iter().zip(radii).map(|(c, r)| (c - r, c + r)).collect();
        PointConfiguration::new(p, pairs)
    }

    /// Parses `{"p": .., "g": .., "pairs": [[a, b], ..]}`; scalars may be
    /// JSON integers or strings such as `"-675"` or `"1/3"`.
    pub fn from_json(text: &str) -> Result<Self, WhittakerError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| WhittakerError::Json(e.to_string()))?;
        if let Some(g) = raw.g {
            if g != raw.pairs.len() {
                return Err(WhittakerError::GenusMismatch { declared: g, pairs: raw.pairs.len() });
            }
        }
        PointConfiguration::new(raw.p, raw.pairs.into_iter().map(|[a, b]| (a, b)).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn pairs(&self) -> &[(ExactScalar, ExactScalar)] {
        &self.pairs
    }

    /// All of Z: `a_1, b_1, .., a_g, b_g, 1, inf`.
    pub fn points(&self) -> Vec<ProjectivePoint> {
        let mut out: Vec<ProjectivePoint> = self
            .pairs
            .iter()
            .flat_map(|(a, b)| [ProjectivePoint::Affine(a.clone()), ProjectivePoint::Affine(b.clone())])
            .collect();
        out.push(ProjectivePoint::Affine(ExactScalar::one()));
        out.push(ProjectivePoint::Infinity);
        out
    }

    fn duplicate(&self) -> Option<String> {
        let pts = self.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[i] == pts[j] {
                    return Some(format!("point {} repeated (positions {i} and {j})", pts[i]));
                }
            }
        }
        None
    }
}

/// Everything derived from a point configuration.
#[derive(Clone, Debug)]
pub struct WhittakerData {
    pub config: PointConfiguration,
    pub centers: Vec<ExactScalar>,
    pub radii: Vec<ExactScalar>,
    pub involutions: Vec<MobiusMap>,
    pub s_infinity: MobiusMap,
    pub gammas: Vec<MobiusMap>,
    /// `B_i = B(c_i, r_i)`, open.
    pub discs: Vec<Disc>,
    /// `B'_i = s_inf(B_i) = B(2 - c_i, r_i)`, open.
    pub discs_prime: Vec<Disc>,
    /// Least distance between two distinct domain discs, `None` when some
    /// pair of closed discs meets.
    pub min_distance: Option<i64>,
}

impl WhittakerData {
    pub fn build(config: PointConfiguration) -> Result<Self, WhittakerError> {
        if let Some(msg) = config.duplicate() {
            return Err(WhittakerError::DuplicatePoints(msg));
        }
        let p = config.p;
        let two = ExactScalar::from(2);
        let centers: Vec<ExactScalar> = config.pairs.iter().map(|(a, b)| (a + b) / &two).collect();
        let radii: Vec<ExactScalar> = config.pairs.iter().map(|(a, b)| (b - a) / &two).collect();
        let involutions = config
            .pairs
            .iter()
            .map(|(a, b)| involution_for_pair(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        let s_inf = MobiusMap::s_infinity();
        let gammas: Vec<MobiusMap> = involutions.iter().map(|s| s.compose(&s_inf)).collect();
        for (k, gamma) in gammas.iter().enumerate() {
            let explicit = explicit_gamma(&centers[k], &radii[k]);
            assert!(gamma == &explicit, "generator {k} disagrees with its closed form");
        }
        let discs: Vec<Disc> = centers
            .iter()
            .zip(&radii)
            .map(|(c, r)| Disc::open(c.clone(), valuation(r, p).finite().expect("r != 0")))
            .collect();
        let discs_prime = discs
            .iter()
            .map(|d| image_of_disc(&s_inf, d, p))
            .collect::<Result<Vec<_>, _>>()?;
        let min_distance = min_pairwise_distance(&discs, &discs_prime, p);
        Ok(WhittakerData {
            config,
            centers,
            radii,
            involutions,
            s_infinity: s_inf,
            gammas,
            discs,
            discs_prime,
            min_distance,
        })
    }

    pub fn p(&self) -> u64 {
        self.config.p
    }

    pub fn g(&self) -> usize {
        self.config.g
    }

    pub fn good_position(&self) -> GoodPositionReport {
        good_position_check(&self.config)
    }

    pub fn letter_map(&self, letter: Letter) -> MobiusMap {
        match letter {
            Letter::Gamma { k, inverse: false } => self.gammas[k].clone(),
            Letter::Gamma { k, inverse: true } => self.gammas[k].inverse(),
            Letter::S(k) => self.involutions[k].clone(),
            Letter::SInf => self.s_infinity.clone(),
        }
    }

    /// Matrix of `h_1 h_2 ... h_m`.
    pub fn word_map(&self, word: &GroupWord) -> MobiusMap {
        word.letters.iter().fold(MobiusMap::identity(), |acc, &l| acc.compose(&self.letter_map(l)))
    }

    /// Every reduced word of length at most `n` with its matrix, in
    /// shortlex order; prefix products are shared.
    pub fn word_maps(&self, n: usize, alphabet: Alphabet) -> Vec<(GroupWord, MobiusMap)> {
        let letters = alphabet.letters(self.g());
        let maps: Vec<MobiusMap> = letters.iter().map(|&l| self.letter_map(l)).collect();
        let mut out = vec![(GroupWord::identity(), MobiusMap::identity())];
        let mut level_start = 0;
        for _ in 0..n {
            let level_end = out.len();
            for idx in level_start..level_end {
                for (l, m) in letters.iter().zip(&maps) {
                    let (w, wm) = &out[idx];
                    if w.can_extend(*l) {
                        let next = (w.extended(*l), wm.compose(m));
                        out.push(next);
                    }
                }
            }
            level_start = level_end;
        }
        out
    }

    /// Domain disc attached to a generator letter: `B_k` for `gamma_k`,
    /// `B'_k` for its inverse.
    pub fn letter_disc(&self, letter: Letter) -> Option<&Disc> {
        match letter {
            Letter::Gamma { k, inverse: false } => Some(&self.discs[k]),
            Letter::Gamma { k, inverse: true } => Some(&self.discs_prime[k]),
            _ => None,
        }
    }
}

/// `gamma_k = [[c, c^2 - r^2 - 2c], [1, c - 2]]`.
pub fn explicit_gamma(c: &ExactScalar, r: &ExactScalar) -> MobiusMap {
    let two = ExactScalar::from(2);
    MobiusMap::new(c.clone(), c.square() - r.square() - &two * c, ExactScalar::one(), c - &two)
        .expect("det = r^2 != 0")
}

fn min_pairwise_distance(discs: &[Disc], discs_prime: &[Disc], p: u64) -> Option<i64> {
    let all: Vec<&Disc> = discs.iter().chain(discs_prime).collect();
    let mut best: Option<i64> = None;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let d = disc_distance(&all[i].closure(), &all[j].closure(), p).ok()?;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best
}

/// One named inequality of the good-position criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodPositionReport {
    pub clauses: Vec<Clause>,
    pub pass: bool,
}

impl GoodPositionReport {
    pub fn failed(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.holds).collect()
    }
}

fn vstr(v: Valuation) -> String {
    v.to_string()
}

/// Checks `a_1 = 0`, `0 < |b_1| < |a_2| <= |b_2| <= .. <= |b_g| < 1`,
/// `|r_i| < |c_i - c_j|` for `i != j`, and disjointness of the 2g closed
/// domain discs.
pub fn good_position_check(config: &PointConfiguration) -> GoodPositionReport {
    let p = config.p;
    let g = config.g;
    let mut clauses = Vec::new();
    let mut push = |name: String, holds: bool, witness: String| clauses.push(Clause { name, holds, witness });

    let dup = config.duplicate();
    push("distinct_points".into(), dup.is_none(), dup.unwrap_or_else(|| format!("{} points", 2 * g + 2)));

    let (a1, b1) = &config.pairs[0];
    push("a1_zero".into(), a1.is_zero(), format!("a1 = {a1}"));

    let mut chain: Vec<(String, &ExactScalar)> = vec![("b1".into(), b1)];
    for (i, (a, b)) in config.pairs.iter().enumerate().skip(1) {
        chain.push((format!("a{}", i + 1), a));
        chain.push((format!("b{}", i + 1), b));
    }
    let vb1 = valuation(b1, p);
    push("b1_nonzero".into(), !vb1.is_infinite(), format!("v(b1) = {}", vstr(vb1)));
    for (k, w) in chain.windows(2).enumerate() {
        let (v0, v1) = (valuation(w[0].1, p), valuation(w[1].1, p));
        // |x| < |y| is v(x) > v(y); only the first link is strict
        let holds = if k == 0 { v0 > v1 } else { v0 >= v1 };
        let rel = if k == 0 { "<" } else { "<=" };
        push(
            format!("chain |{}| {rel} |{}|", w[0].0, w[1].0),
            holds,
            format!("v({}) = {}, v({}) = {}", w[0].0, vstr(v0), w[1].0, vstr(v1)),
        );
    }
    let (last_name, last) = chain.last().expect("nonempty");
    let vl = valuation(last, p);
    push(format!("chain |{last_name}| < 1"), vl > Valuation::Finite(0), format!("v({last_name}) = {}", vstr(vl)));

    let two = ExactScalar::from(2);
    let centers: Vec<ExactScalar> = config.pairs.iter().map(|(a, b)| (a + b) / &two).collect();
    let radii: Vec<ExactScalar> = config.pairs.iter().map(|(a, b)| (b - a) / &two).collect();
    for i in 0..g {
        for j in 0..g {
            if i == j {
                continue;
            }
            let vr = valuation(&radii[i], p);
            let vd = valuation(&(&centers[i] - &centers[j]), p);
            let holds = match (vr, vd) {
                (Valuation::Finite(r), Valuation::Finite(d)) => r > d,
                _ => false,
            };
            push(
                format!("ratio |r{}|/|c{} - c{}| < 1", i + 1, i + 1, j + 1),
                holds,
                format!("v(r) = {}, v(c_i - c_j) = {}", vstr(vr), vstr(vd)),
            );
        }
    }

    let mut discs: Vec<(String, Disc)> = Vec::new();
    for i in 0..g {
        if let Some(rv) = valuation(&radii[i], p).finite() {
            discs.push((format!("B{}", i + 1), Disc::closed(centers[i].clone(), rv)));
            discs.push((format!("B'{}", i + 1), Disc::closed(&two - &centers[i], rv)));
        } else {
            push(format!("radius r{} nonzero", i + 1), false, "r = 0".into());
        }
    }
    for i in 0..discs.len() {
        for j in i + 1..discs.len() {
            let meet = discs[i].1.intersects(&discs[j].1, p);
            let vc = valuation(&(&discs[i].1.center - &discs[j].1.center), p);
            push(
                format!("disjoint {} {}", discs[i].0, discs[j].0),
                !meet,
                format!(
                    "v(center difference) = {}, radii {} and {}",
                    vstr(vc),
                    discs[i].1.radius_valuation,
                    discs[j].1.radius_valuation
                ),
            );
        }
    }
    let pass = clauses.iter().all(|c| c.holds);
    GoodPositionReport { clauses, pass }
}

/// A letter in either alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Gamma { k: usize, inverse: bool },
    S(usize),
    SInf,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gamma { k, inverse: false } => write!(f, "g{}", k + 1),
            Letter::Gamma { k, inverse: true } => write!(f, "g{}^-1", k + 1),
            Letter::S(k) => write!(f, "s{}", k + 1),
            Letter::SInf => f.write_str("s_inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    /// `gamma_1^{+-1}, .., gamma_g^{+-1}`; words are elements of the free group.
    Gamma,
    /// `s_1, .., s_g, s_inf`; words are elements of the free product of
    /// order-2 groups.
    Involution,
}

impl Alphabet {
    /// Letters in their fixed order.
    pub fn letters(self, g: usize) -> Vec<Letter> {
        match self {
            Alphabet::Gamma => (0..g)
                .flat_map(|k| [Letter::Gamma { k, inverse: false }, Letter::Gamma { k, inverse: true }])
                .collect(),
            Alphabet::Involution => (0..g).map(Letter::S).chain([Letter::SInf]).collect(),
        }
    }

    /// Number of reduced words of length at most `n`.
    pub fn word_count(self, g: usize, n: usize) -> u128 {
        let (first, branch) = match self {
            Alphabet::Gamma => (2 * g as u128, 2 * g as u128 - 1),
            Alphabet::Involution => (g as u128 + 1, g as u128),
        };
        let mut total = 1u128;
        let mut level = first;
        for _ in 0..n {
            total += level;
            level *= branch;
        }
        total
    }
}

/// A reduced word `h_1 h_2 .. h_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn can_extend(&self, l: Letter) -> bool {
        match (self.letters.last(), l) {
            (None, _) => true,
            (Some(Letter::Gamma { k, inverse }), Letter::Gamma { k: k2, inverse: i2 }) => !(*k == k2 && *inverse != i2),
            (Some(prev), l) => *prev != l,
        }
    }

    fn extended(&self, l: Letter) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.push(l);
        GroupWord { letters }
    }

    pub fn is_reduced(&self) -> bool {
        (1..self.letters.len())
            .all(|i| GroupWord { letters: self.letters[..i].to_vec() }.can_extend(self.letters[i]))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Shortlex iterator over reduced words of length at most `n`.
pub struct WordIter {
    letters: Vec<Letter>,
    max_len: usize,
    level: Vec<GroupWord>,
    next_level: Vec<GroupWord>,
    pos: usize,
    len: usize,
}

impl WordIter {
    pub fn new(g: usize, n: usize, alphabet: Alphabet) -> Self {
        WordIter {
            letters: alphabet.letters(g),
            max_len: n,
            level: vec![GroupWord::identity()],
            next_level: Vec::new(),
            pos: 0,
            len: 0,
        }
    }
}

impl Iterator for WordIter {
    type Item = GroupWord;

    fn next(&mut self) -> Option<GroupWord> {
        loop {
            if self.pos < self.level.len() {
                let w = self.level[self.pos].clone();
                self.pos += 1;
                if self.len < self.max_len {
                    for &l in &self.letters {
                        if w.can_extend(l) {
                            self.next_level.push(w.extended(l));
                        }
                    }
                }
                return Some(w);
            }
            if self.next_level.is_empty() {
                return None;
            }
            self.level = std::mem::take(&mut self.next_level);
            self.pos = 0;
            self.len += 1;
        }
    }
}

pub fn enumerate_words(g: usize, n: usize, alphabet: Alphabet) -> Vec<GroupWord> {
    WordIter::new(g, n, alphabet).collect()
}

/// Truncated theta product over involution words of length at most `n`:
/// `prod (z - w(0)) / (z - w(1))`.
pub fn theta_value(data: &WhittakerData, z: &ProjectivePoint, n: usize) -> Result<ExactScalar, WhittakerError> {
    let ProjectivePoint::Affine(z) = z else {
        return Ok(ExactScalar::one());
    };
    let zero = ProjectivePoint::Affine(ExactScalar::zero());
    let one = ProjectivePoint::Affine(ExactScalar::one());
    let mut acc = ExactScalar::one();
    for (w, m) in data.word_maps(n, Alphabet::Involution) {
        let (ProjectivePoint::Affine(w0), ProjectivePoint::Affine(w1)) = (m.apply(&zero), m.apply(&one)) else {
            return Err(WhittakerError::PoleHit(w.to_string()));
        };
        let den = z - &w1;
        if den.is_zero() {
            return Err(WhittakerError::PoleHit(w.to_string()));
        }
        acc = acc * (z - &w0) / den;
    }
    Ok(acc)
}

/// Branch points `theta_n(z)` for `z` in `Z \ {1}`, in the order of
/// [`PointConfiguration::points`].
pub fn branch_points(data: &WhittakerData, n: usize) -> Result<Vec<ExactScalar>, WhittakerError> {
    data.config
        .points()
        .iter()
        .filter(|z| **z != ProjectivePoint::Affine(ExactScalar::one()))
        .map(|z| theta_value(data, z, n))
        .collect()
}

/// `prod_{z in Z \ {1}} (x - theta_n(z))`, of degree `2g + 1`.
pub fn hyperelliptic_model(data: &WhittakerData, n: usize) -> Result<RatPoly, WhittakerError> {
    let report = data.good_position();
    if !report.pass {
        let names: Vec<String> = report.failed().iter().map(|c| c.name.clone()).collect();
        return Err(WhittakerError::NotGoodPosition(names.join("; ")));
    }
    let roots = branch_points(data, n)?;
    Ok(RatPoly::from_roots(&roots))
}
