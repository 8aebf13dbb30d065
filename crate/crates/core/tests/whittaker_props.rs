mod common;

use mumford_tame::geometry::ProjectivePoint;
use mumford_tame::padic::{valuation, ExactScalar, Valuation};
use mumford_tame::period::base_points;
use mumford_tame::tame::canonical_parameters;
use mumford_tame::whittaker::{enumerate_words, theta_value, Alphabet, Letter, WhittakerData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn word_counts_match_closed_forms() {
    for g in 1..=4 {
        for n in 0..=6 {
            for alphabet in [Alphabet::Gamma, Alphabet::Involution] {
                let words = enumerate_words(g, n, alphabet);
                let (first, branch) = match alphabet {
                    Alphabet::Gamma => (2 * g as u128, 2 * g as u128 - 1),
                    Alphabet::Involution => (g as u128 + 1, g as u128),
                };
                let closed: u128 = 1 + (1..=n as u32).map(|k| first * branch.pow(k - 1)).sum::<u128>();
                assert_eq!(words.len() as u128, closed, "g = {g}, n = {n}, {alphabet:?}");
                assert_eq!(alphabet.word_count(g, n), closed);
                assert!(words.iter().all(|w| w.is_reduced()));
            }
        }
    }
}

fn constructed() -> Vec<WhittakerData> {
    [(1, 3), (2, 3), (1, 5), (1, 7), (2, 5)]
        .into_iter()
        .map(|(g, p)| canonical_parameters(g, p).unwrap().whittaker_data().unwrap())
        .collect()
}

fn random_configurations() -> Vec<WhittakerData> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..6).map(|_| common::random_good_configuration(&mut rng, 3).1).collect()
}

#[test]
fn theta_products_are_cauchy() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for data in constructed() {
        let p = data.p();
        let mut samples = Vec::new();
        while samples.len() < 3 {
            let z = ExactScalar::new(rng.gen_range(-500i64..500), rng.gen_range(1i64..40)).unwrap();
            let zp = ProjectivePoint::Affine(z.clone());
            let inside = data.discs.iter().chain(&data.discs_prime).any(|d| d.closure().contains(&z, p));
            if !inside && theta_value(&data, &zp, 5).is_ok() {
                samples.push(zp);
            }
        }
        for z in samples {
            let thetas: Vec<ExactScalar> = (0..=5).map(|n| theta_value(&data, &z, n).unwrap()).collect();
            let gaps: Vec<Valuation> = thetas.windows(2).map(|w| valuation(&(&w[1] - &w[0]), p)).collect();
            assert!(gaps.windows(2).all(|w| w[0] <= w[1]), "{z:?}: {gaps:?}");
        }
    }
}

/// Reduced gamma-words not ending in `gamma_i` send the boundary point
/// `a` of `B'_i` into the open disc of their first letter.
#[test]
fn word_images_nest() {
    for data in constructed().into_iter().chain(random_configurations()) {
        let p = data.p();
        for i in 0..data.g() {
            let (a, _) = base_points(&data, i, i);
            assert!(data.discs_prime[i].on_boundary(&a, p));
            for (w, m) in data.word_maps(3, Alphabet::Gamma) {
                let (Some(first), Some(last)) = (w.first(), w.last()) else { continue };
                if last == (Letter::Gamma { k: i, inverse: false }) {
                    continue;
                }
                let disc = data.letter_disc(first).unwrap();
                assert!(disc.contains_point(&m.apply_affine(&a), p), "{w} a_{i}");
            }
        }
    }
}
