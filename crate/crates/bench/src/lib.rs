//! Shared inputs for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use usvkit::{random, Layout};

/// `count` seeded random layouts with `n` squares each.
pub fn layouts(n: usize, count: usize, free: bool, seed: u64) -> Vec<Layout> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| if free { random::free_layout(&mut rng, n, 6, 3 * n as i64) } else { random::grid_layout(&mut rng, n, 2 * n as i64) })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn layouts_are_seeded() {
        assert_eq!(super::layouts(8, 3, true, 1), super::layouts(8, 3, true, 1));
    }
}
