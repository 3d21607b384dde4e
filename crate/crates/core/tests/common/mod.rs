//! Reference implementations that share no code with the solvers they check.

#![allow(dead_code)]

use intcover::generate::{gen_random, gen_random_chain};
use intcover::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Points covered by the intervals selected in `mask`, by direct membership test.
pub fn mask_coverage(instance: &Instance, mask: u32) -> u64 {
    let ivs = instance.intervals();
    instance
        .points()
        .iter()
        .filter(|&&p| {
            (0..ivs.len()).any(|i| mask >> i & 1 == 1 && ivs[i].lo <= p && p <= ivs[i].hi)
        })
        .count() as u64
}

/// Best coverage over every subset of at most `k` intervals.
pub fn brute_opt(instance: &Instance, k: usize) -> u64 {
    let m = instance.num_intervals();
    assert!(m <= 16, "oracle is exponential in m");
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize <= k)
        .map(|mask| mask_coverage(instance, mask))
        .max()
        .unwrap_or(0)
}

/// Brute-force optima for every budget `0..=m`, in one pass over subsets.
pub fn brute_opt_all(instance: &Instance) -> Vec<u64> {
    let m = instance.num_intervals();
    assert!(m <= 16, "oracle is exponential in m");
    let mut best = vec![0u64; m + 1];
    for mask in 0u32..1 << m {
        let c = mask.count_ones() as usize;
        best[c] = best[c].max(mask_coverage(instance, mask));
    }
    for k in 1..=m {
        best[k] = best[k].max(best[k - 1]);
    }
    best
}

/// Greedy simulated directly on point membership, leftmost on ties.
pub fn brute_greedy_prefix(instance: &Instance) -> Vec<u64> {
    let ivs = instance.intervals();
    let mut mask = 0u32;
    let mut out = Vec::new();
    for _ in 0..ivs.len() {
        let base = mask_coverage(instance, mask);
        let (best, _) = (0..ivs.len())
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| (i, mask_coverage(instance, mask | 1 << i) - base))
            .fold((usize::MAX, 0), |acc, (i, g)| {
                if acc.0 == usize::MAX || g > acc.1 {
                    (i, g)
                } else {
                    acc
                }
            });
        mask |= 1 << best;
        out.push(mask_coverage(instance, mask));
    }
    out
}

/// Seeded small random instance with `n <= max_n` points and at most
/// `max_m` intervals before normalization.
pub fn random_instance(seed: u64, max_n: usize, max_m: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545_f491_4f6c_dd1d));
    let n = rng.gen_range(0..=max_n);
    let m = rng.gen_range(1..=max_m);
    let width = rng.gen_range(2..=3 * max_n.max(2) as i64);
    if rng.gen_bool(0.5) {
        gen_random(n, m, 0..=width, seed).unwrap()
    } else {
        let max_len = rng.gen_range(0..=width / 2);
        gen_random_chain(n, m, 0..=width.max(m as i64), max_len, seed).unwrap()
    }
}
