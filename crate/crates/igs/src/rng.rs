//! Counter-based randomness.
//!
//! Every random decision in the crate is keyed by a tuple of integers
//! (master seed plus counters such as substitution level, arc index or
//! trial index). Equal keys give equal draws regardless of evaluation
//! order or thread count, which makes whole pipelines bit-reproducible.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finaliser; statistically strong for key mixing.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Mixes a seed with two counters into a single stream key.
pub fn mix64(seed: u64, a: u64, b: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b)
}

/// One uniform u64 for the given key.
pub fn keyed_u64(seed: u64, a: u64, b: u64) -> u64 {
    splitmix64(mix64(seed, a, b))
}

/// A full RNG stream for the given key (Monte-Carlo trials).
pub fn keyed_stream(seed: u64, a: u64, b: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(seed, a, b))
}

/// Cumulative u64 thresholds for drawing an index from exact probabilities.
///
/// Index `k` is drawn when the uniform u64 falls in `[t_{k-1}, t_k)`, with
/// thresholds `t_k = round(cum_k * 2^64)`. The bias against exact rational
/// sampling is at most 2^-64 per category.
pub fn thresholds(probs: &[crate::system::Prob]) -> Vec<u64> {
    use num_traits::ToPrimitive;
    let mut acc = crate::system::Prob::new(0.into(), 1.into());
    let mut out = Vec::with_capacity(probs.len());
    for p in probs {
        acc += p;
        // acc * 2^64, exact in i128 for the denominators used here
        let num = acc.numer();
        let den = acc.denom();
        let scaled = if *num >= *den {
            u64::MAX
        } else {
            let hi = (num << 64) / den;
            hi.to_u64().unwrap_or(u64::MAX)
        };
        out.push(scaled);
    }
    if let Some(last) = out.last_mut() {
        *last = u64::MAX;
    }
    out
}

/// Draws an index given precomputed thresholds.
pub fn draw_index(thresholds: &[u64], uniform: u64) -> usize {
    thresholds
        .iter()
        .position(|&t| uniform < t)
        .unwrap_or(thresholds.len() - 1)
}

/// Convenience: one categorical draw from a keyed uniform.
pub fn draw_keyed(thresholds: &[u64], seed: u64, a: u64, b: u64) -> usize {
    draw_index(thresholds, keyed_u64(seed, a, b))
}

/// Next categorical draw from a stream.
pub fn draw_stream(thresholds: &[u64], rng: &mut ChaCha8Rng) -> usize {
    draw_index(thresholds, rng.next_u64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Prob;

    #[test]
    fn keyed_draws_are_stable() {
        assert_eq!(keyed_u64(1, 2, 3), keyed_u64(1, 2, 3));
        assert_ne!(keyed_u64(1, 2, 3), keyed_u64(1, 2, 4));
        assert_ne!(keyed_u64(1, 2, 3), keyed_u64(2, 2, 3));
    }

    #[test]
    fn threshold_frequencies_match_probabilities() {
        let probs = vec![Prob::new(1.into(), 3.into()), Prob::new(2.into(), 3.into())];
        let th = thresholds(&probs);
        let mut counts = [0u32; 2];
        for i in 0..30_000u64 {
            counts[draw_keyed(&th, 42, 0, i)] += 1;
        }
        let f = counts[0] as f64 / 30_000.0;
        assert!((f - 1.0 / 3.0).abs() < 0.01, "frequency {} too far from 1/3", f);
    }

    #[test]
    fn thresholds_cover_the_whole_range() {
        let probs = vec![
            Prob::new(1.into(), 12.into()),
            Prob::new(1.into(), 4.into()),
            Prob::new(1.into(), 6.into()),
            Prob::new(1.into(), 2.into()),
        ];
        let th = thresholds(&probs);
        assert_eq!(*th.last().unwrap(), u64::MAX);
        assert_eq!(draw_index(&th, u64::MAX - 1), 3);
        assert_eq!(draw_index(&th, 0), 0);
    }
}
