#![allow(dead_code)]

use cactus_core::crystal::WeightList;
use cactus_core::linalg::{q_frac, Q};
use rand::Rng;

/// Every weight list of length `n` with entries in `0..=max`.
pub fn weight_lists(n: usize, max: u32) -> Vec<WeightList> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=max).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(WeightList::new).collect()
}

/// Weight lists of length `n` that are nondecreasing.
pub fn sorted_weight_lists(n: usize, max: u32) -> Vec<WeightList> {
    weight_lists(n, max).into_iter().filter(|w| w.as_slice().windows(2).all(|p| p[0] <= p[1])).collect()
}

/// Top weights with the right parity.
pub fn nus(w: &WeightList) -> Vec<u32> {
    let t = w.total();
    (0..=t).filter(|nu| (t - nu).is_multiple_of(2)).collect()
}

pub fn random_q(rng: &mut impl Rng) -> Q {
    q_frac(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

/// `n` pairwise distinct random rationals.
pub fn random_points(rng: &mut impl Rng, n: usize) -> Vec<Q> {
    loop {
        let z: Vec<Q> = (0..n).map(|_| random_q(rng)).collect();
        if (0..n).all(|i| (i + 1..n).all(|j| z[i] != z[j])) {
            return z;
        }
    }
}

pub fn random_weights(rng: &mut impl Rng, n: usize, max: u32) -> WeightList {
    WeightList::new((0..n).map(|_| rng.gen_range(0..=max)).collect())
}
