mod common;

use mumford_tame::geometry::{disc_distance, image_of_disc, involution_for_pair, Disc, MobiusMap, ProjectivePoint};
use mumford_tame::padic::ExactScalar;
use mumford_tame::whittaker::Letter;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-2000i64..2000, 1i64..200).prop_map(|(n, d)| ExactScalar::new(n, d).unwrap())
}

fn map() -> impl Strategy<Value = MobiusMap> {
    (-30i64..30, -30i64..30, -30i64..30, -30i64..30)
        .prop_filter("singular", |(a, b, c, d)| a * d != b * c)
        .prop_map(|(a, b, c, d)| MobiusMap::from_i64(a, b, c, d).unwrap())
}

fn disc() -> impl Strategy<Value = Disc> {
    (scalar(), -3i64..6, any::<bool>()).prop_map(|(c, r, open)| if open { Disc::open(c, r) } else { Disc::closed(c, r) })
}

proptest! {
    #[test]
    fn involutions_square_to_identity_and_fix_their_pair(a in scalar(), b in scalar()) {
        prop_assume!(a != b);
        let s = involution_for_pair(&a, &b).unwrap();
        prop_assert!(s.compose(&s).is_identity());
        prop_assert_eq!(s.apply_affine(&a), ProjectivePoint::Affine(a.clone()));
        prop_assert_eq!(s.apply_affine(&b), ProjectivePoint::Affine(b.clone()));
    }

    #[test]
    fn disc_distance_is_symmetric_and_positive(p in prop::sample::select(vec![3u64, 5, 7]), d1 in disc(), d2 in disc()) {
        let (Ok(x), Ok(y)) = (disc_distance(&d1, &d2, p), disc_distance(&d2, &d1, p)) else {
            prop_assert!(d1.intersects(&d2, p));
            return Ok(());
        };
        prop_assert_eq!(x, y);
        if !d1.closure().intersects(&d2.closure(), p) {
            prop_assert!(x > 0, "{:?} {:?} -> {}", d1, d2, x);
        }
    }

    #[test]
    fn disc_images_compose(p in prop::sample::select(vec![3u64, 5, 7]), m in map(), m2 in map(), d in disc()) {
        let step = image_of_disc(&m2, &d, p).and_then(|d2| image_of_disc(&m, &d2, p));
        let direct = image_of_disc(&m.compose(&m2), &d, p);
        if let (Ok(a), Ok(b)) = (step, direct) {
            prop_assert_eq!(a.radius_valuation, b.radius_valuation);
            prop_assert_eq!(a.open, b.open);
            // same disc, possibly different centres
            prop_assert!(a.contains(&b.center, p) && b.contains(&a.center, p));
        }
    }
}

/// `gamma_k` sends the complement of `B'_k` into the closure of `B_k`.
#[test]
fn generators_pair_the_domain_discs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sampler = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let (_, data) = common::random_good_configuration(&mut rng, 3);
        let p = data.p();
        for k in 0..data.g() {
            let gamma = data.letter_disc(Letter::Gamma { k, inverse: false }).unwrap().closure();
            let prime = data.letter_disc(Letter::Gamma { k, inverse: true }).unwrap();
            let mut hits = 0;
            while hits < 50 {
                let z = random_point(&mut sampler, p);
                if prime.contains(&z, p) {
                    continue;
                }
                hits += 1;
                match data.gammas[k].apply_affine(&z) {
                    ProjectivePoint::Affine(w) => assert!(gamma.contains(&w, p), "gamma_{k}({z}) = {w} outside {gamma:?}"),
                    ProjectivePoint::Infinity => panic!("gamma_{k} has its pole at {z}, outside B'_{k}"),
                }
            }
            assert!(gamma.contains_point(&data.gammas[k].apply(&ProjectivePoint::Infinity), p));
        }
    }
}

fn random_point<R: rand::Rng>(rng: &mut R, p: u64) -> ExactScalar {
    let e = rng.gen_range(-3..8);
    let n = rng.gen_range(-1000i64..1000);
    let d = rng.gen_range(1i64..50);
    ExactScalar::new(n, d).unwrap() * ExactScalar::prime_power(p, e) + ExactScalar::from(rng.gen_range(0..3))
}
