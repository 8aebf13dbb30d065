//! Möbius transformations of P^1(Q) and p-adic discs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::padic::{valuation, ExactScalar, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("matrix is singular")]
    Singular,
    #[error("fixed points coincide")]
    DegeneratePair,
    #[error("pole of the map lies in the closed disc; the image is a disc complement")]
    PoleInsideDisc,
    #[error("discs intersect")]
    NotDisjoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Affine(ExactScalar),
    Infinity,
}

impl ProjectivePoint {
    pub fn affine(&self) -> Option<&ExactScalar> {
        match self {
            ProjectivePoint::Affine(x) => Some(x),
            ProjectivePoint::Infinity => None,
        }
    }
}

impl From<ExactScalar> for ProjectivePoint {
    fn from(x: ExactScalar) -> Self {
        ProjectivePoint::Affine(x)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Affine(x) => write!(f, "{x}"),
            ProjectivePoint::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `z -> (a z + b) / (c z + d)`, an element of PGL_2(Q).
#[derive(Clone, Debug)]
pub struct MobiusMap {
    a: ExactScalar,
    b: ExactScalar,
    c: ExactScalar,
    d: ExactScalar,
}

impl MobiusMap {
    pub fn new(a: ExactScalar, b: ExactScalar, c: ExactScalar, d: ExactScalar) -> Result<Self, GeometryError> {
        let m = MobiusMap { a, b, c, d };
        if m.det().is_zero() {
            return Err(GeometryError::Singular);
        }
        Ok(m)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, GeometryError> {
        MobiusMap::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        MobiusMap::from_i64(1, 0, 0, 1).expect("nonsingular")
    }

    /// `z -> 2 - z`, the involution exchanging the pair `(1, inf)`.
    pub fn s_infinity() -> Self {
        MobiusMap::from_i64(1, -2, 0, -1).expect("nonsingular")
    }

    pub fn entries(&self) -> [&ExactScalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> ExactScalar {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, z: &ProjectivePoint) -> ProjectivePoint {
        match z {
            ProjectivePoint::Infinity => {
                if self.c.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Affine(&self.a / &self.c)
                }
            }
            ProjectivePoint::Affine(x) => self.apply_affine(x),
        }
    }

    pub fn apply_affine(&self, x: &ExactScalar) -> ProjectivePoint {
        let den = &self.c * x + &self.d;
        if den.is_zero() {
            ProjectivePoint::Infinity
        } else {
            ProjectivePoint::Affine((&self.a * x + &self.b) / den)
        }
    }

    /// Matrix product `self * other`, i.e. `z -> self(other(z))`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// Adjugate, which is the inverse in PGL_2.
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Equality in PGL_2: the matrices are proportional.
    pub fn proportional(&self, other: &MobiusMap) -> bool {
        let x = self.entries();
        let y = other.entries();
        (0..4).all(|i| (i + 1..4).all(|j| x[i] * y[j] == x[j] * y[i]))
    }

    pub fn is_identity(&self) -> bool {
        self.proportional(&MobiusMap::identity())
    }

    /// The point sent to infinity.
    pub fn pole(&self) -> ProjectivePoint {
        if self.c.is_zero() {
            ProjectivePoint::Infinity
        } else {
            ProjectivePoint::Affine(-&self.d / &self.c)
        }
    }

    /// Integer representative with coprime entries and first nonzero
    /// entry positive.
    pub fn normalized(&self) -> [BigInt; 4] {
        let e = self.entries();
        let l = e.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = e.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for x in ints.iter_mut() {
            *x = &*x / &g;
            if sign_neg {
                *x = -&*x;
            }
        }
        [ints[0].clone(), ints[1].clone(), ints[2].clone(), ints[3].clone()]
    }
}

impl PartialEq for MobiusMap {
    fn eq(&self, other: &Self) -> bool {
        self.proportional(other)
    }
}

impl Eq for MobiusMap {}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.normalized();
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl Serialize for MobiusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n: Vec<String> = self.normalized().iter().map(|x| x.to_string()).collect();
        n.serialize(serializer)
    }
}

/// The involution fixing `a` and `b`:
/// `[[c, r^2 - c^2], [1, -c]]` with `c = (a+b)/2`, `r = (b-a)/2`.
pub fn involution_for_pair(a: &ExactScalar, b: &ExactScalar) -> Result<MobiusMap, GeometryError> {
    if a == b {
        return Err(GeometryError::DegeneratePair);
    }
    let two = ExactScalar::from(2);
    let c = (a + b) / &two;
    let r = (b - a) / &two;
    MobiusMap::new(c.clone(), r.square() - c.square(), ExactScalar::one(), -c)
}

/// A disc `{z : v(z - center) > radius_valuation}` (open) or `>=` (closed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disc {
    pub center: ExactScalar,
    pub radius_valuation: i64,
    pub open: bool,
}

impl Disc {
    pub fn open(center: ExactScalar, radius_valuation: i64) -> Self {
        Disc { center, radius_valuation, open: true }
    }

    pub fn closed(center: ExactScalar, radius_valuation: i64) -> Self {
        Disc { center, radius_valuation, open: false }
    }

    pub fn closure(&self) -> Disc {
        Disc { open: false, ..self.clone() }
    }

    pub fn contains(&self, z: &ExactScalar, p: u64) -> bool {
        let v = valuation(&(z - &self.center), p);
        let rho = Valuation::Finite(self.radius_valuation);
        if self.open {
            v > rho
        } else {
            v >= rho
        }
    }

    pub fn contains_point(&self, z: &ProjectivePoint, p: u64) -> bool {
        z.affine().is_some_and(|x| self.contains(x, p))
    }

    /// `v(z - center) = radius_valuation` exactly.
    pub fn on_boundary(&self, z: &ExactScalar, p: u64) -> bool {
        valuation(&(z - &self.center), p) == Valuation::Finite(self.radius_valuation)
    }

    pub fn intersects(&self, other: &Disc, p: u64) -> bool {
        // ultrametric discs are nested or disjoint
        self.contains(&other.center, p) || other.contains(&self.center, p)
    }
}

/// Image of a disc under a Möbius map whose pole is outside the closed disc.
pub fn image_of_disc(m: &MobiusMap, disc: &Disc, p: u64) -> Result<Disc, GeometryError> {
    if let ProjectivePoint::Affine(pole) = m.pole() {
        if disc.closure().contains(&pole, p) {
            return Err(GeometryError::PoleInsideDisc);
        }
    }
    let [_, _, c, d] = m.entries();
    let center = match m.apply_affine(&disc.center) {
        ProjectivePoint::Affine(x) => x,
        ProjectivePoint::Infinity => return Err(GeometryError::PoleInsideDisc),
    };
    let v_det = valuation(&m.det(), p).finite().expect("nonsingular");
    let v_den = valuation(&(c * &disc.center + d), p).finite().expect("pole outside disc");
    Ok(Disc { center, radius_valuation: disc.radius_valuation + v_det - 2 * v_den, open: disc.open })
}

/// Path distance between two disjoint discs on the Berkovich line, in
/// units of `log_p`.
pub fn disc_distance(b1: &Disc, b2: &Disc, p: u64) -> Result<i64, GeometryError> {
    if b1.intersects(b2, p) {
        return Err(GeometryError::NotDisjoint);
    }
    let v = valuation(&(&b1.center - &b2.center), p).finite().ok_or(GeometryError::NotDisjoint)?;
    Ok(b1.radius_valuation + b2.radius_valuation - 2 * v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> ExactScalar {
        ExactScalar::from(x)
    }

    #[test]
    fn apply_examples() {
        let one = ProjectivePoint::Affine(s(1));
        assert_eq!(MobiusMap::s_infinity().apply(&one), one);
        let swap = MobiusMap::from_i64(0, 1, 1, 0).unwrap();
        assert_eq!(swap.apply(&ProjectivePoint::Affine(s(0))), ProjectivePoint::Infinity);
        assert_eq!(swap.apply(&ProjectivePoint::Infinity), ProjectivePoint::Affine(s(0)));
        assert_eq!(MobiusMap::identity().apply(&ProjectivePoint::Infinity), ProjectivePoint::Infinity);
    }

    #[test]
    fn involution_examples() {
        let q = ExactScalar::prime_power(3, 9);
        let m = involution_for_pair(&s(0), &(&q * s(2))).unwrap();
        let expect = MobiusMap::new(q.clone(), s(0), s(1), -&q).unwrap();
        assert_eq!(m, expect);
        assert!(m.compose(&m).is_identity());
        assert_eq!(m.apply_affine(&s(0)), ProjectivePoint::Affine(s(0)));
        assert_eq!(m.apply_affine(&(&q * s(2))), ProjectivePoint::Affine(&q * s(2)));
        assert_eq!(involution_for_pair(&s(-1), &s(1)).unwrap(), MobiusMap::from_i64(0, 1, 1, 0).unwrap());
        assert_eq!(involution_for_pair(&s(4), &s(4)), Err(GeometryError::DegeneratePair));
    }

    #[test]
    fn disc_images() {
        let b = Disc::open(s(54), 6);
        assert_eq!(image_of_disc(&MobiusMap::identity(), &b, 3).unwrap(), b);
        assert_eq!(image_of_disc(&MobiusMap::s_infinity(), &b, 3).unwrap(), Disc::open(s(2 - 54), 6));
        let swap = MobiusMap::from_i64(0, 1, 1, 0).unwrap();
        assert_eq!(image_of_disc(&swap, &Disc::closed(s(3), 1), 3), Err(GeometryError::PoleInsideDisc));
    }

    #[test]
    fn distances() {
        let b1 = Disc::open(ExactScalar::prime_power(3, 9), 9);
        let b2 = Disc::open(s(54), 6);
        assert_eq!(disc_distance(&b1, &b2, 3), Ok(9));
        assert_eq!(disc_distance(&b2, &b1, 3), Ok(9));
        let b2p = Disc::open(s(2 - 54), 6);
        assert_eq!(disc_distance(&b2, &b2p, 3), Ok(12));
        assert_eq!(disc_distance(&b1, &Disc::open(s(0), 2), 3), Err(GeometryError::NotDisjoint));
    }

    #[test]
    fn normalized_entries() {
        let m = MobiusMap::new(ExactScalar::new(-1, 2).unwrap(), s(1), s(0), ExactScalar::new(3, 4).unwrap()).unwrap();
        assert_eq!(m.normalized().map(|x| x.to_string()), ["2", "-4", "0", "-3"]);
    }
}
