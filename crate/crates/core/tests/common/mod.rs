#![allow(dead_code)]

pub mod oracle;

use mumford_tame::tame::TameParameters;
use mumford_tame::whittaker::WhittakerData;
use rand::seq::index::sample;
use rand::Rng;

/// A random exponent pattern `alpha_1 > .. > alpha_g > beta_2 > .. > beta_g > 0`
/// scaled by `m`, kept only if the points land in good position.
pub fn random_good_configuration<R: Rng>(rng: &mut R, max_g: usize) -> (TameParameters, WhittakerData) {
    loop {
        let g = rng.gen_range(1..=max_g);
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let m = rng.gen_range(1..=2u32);
        let len = 2 * g - 1;
        let mut chain: Vec<u32> = sample(rng, len + 3, len).into_iter().map(|x| x as u32 + 1).collect();
        chain.sort_unstable_by(|a, b| b.cmp(a));
        let betas = chain.split_off(g);
        let Ok(params) = TameParameters::from_exponents(g, p, m, chain, betas) else { continue };
        let Ok(data) = params.whittaker_data() else { continue };
        if data.good_position().pass {
            return (params, data);
        }
    }
}
