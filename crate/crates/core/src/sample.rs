//! Deterministic random sampling.
//!
//! Bits come from SplitMix64 (the mixer behind Java's `SplittableRandom`) with the
//! state initialised to the seed itself. Each bit is the top bit of one
//! output, drawn in row-major order `(1,0), (2,0), (2,1), (3,0), ...`, so a
//! given `(n, seed)` produces the same triangle on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::comb::comb;
use crate::pathfam::{BitTriangle, PathFamily};

pub fn sample_triangle(n: usize, seed: u64) -> BitTriangle {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut t = BitTriangle::zeros(n);
    for i in 1..n {
        for j in 0..i {
            t.set(i, j, rng.next_u64() >> 63 == 1);
        }
    }
    t
}

/// A uniform random triangle and its combed, disjoint family.
pub fn sample_family(n: usize, seed: u64) -> (BitTriangle, PathFamily) {
    let t = sample_triangle(n, seed);
    let f = comb(&t);
    (t, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathfam::{is_disjoint, is_valid};

    // reference mixer, written out independently of the crate
    fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    #[test]
    fn generator_matches_reference() {
        let mut rng = SplitMix64::seed_from_u64(1_234_567);
        assert_eq!(rng.next_u64(), 6_457_827_717_110_365_317);
        let mut s = 99;
        let t = sample_triangle(12, 99);
        for i in 1..12 {
            for j in 0..i {
                assert_eq!(t.get(i, j) as u64, splitmix(&mut s) >> 63);
            }
        }
    }

    #[test]
    fn deterministic_and_disjoint() {
        assert_eq!(sample_triangle(0, 5).n(), 0);
        assert_eq!(sample_family(5, 1), sample_family(5, 1));
        let (_, f) = sample_family(40, 7);
        assert!(is_valid(&f) && is_disjoint(&f));
    }

    #[test]
    fn bits_look_balanced() {
        let t = sample_triangle(100, 3);
        let ones = (1..100)
            .map(|i| t.row(i).iter().map(|&b| b as usize).sum::<usize>())
            .sum::<usize>() as f64
            / t.bit_count() as f64;
        assert!((ones - 0.5).abs() < 0.05, "{ones}");
    }
}
