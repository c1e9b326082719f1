//! Seeded sampling of random subsets.
//!
//! The generator is Marsaglia's xorshift64* as published by Vigna: shifts
//! `(12, 25, 27)` on a 64-bit state, output multiplied by
//! `0x2545F4914F6CDD1D`. The state is initialised with one SplitMix64 step
//! from the seed (constants `0x9E3779B97F4A7C15`, `0xBF58476D1CE4E5B9`,
//! `0x94D049BB133111EB`), so seed 0 is usable. Each element of the group,
//! in index order, is included iff the top bit of the next output is set.

use crate::group::{FiniteAbelianGroup, GroupSubset};

#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        // xorshift has a fixed point at 0.
        let state = splitmix64(seed);
        Self { state: if state == 0 { 0x9E37_79B9_7F4A_7C15 } else { state } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform in `0..n` by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Each element independently with probability ½.
    pub fn subset(&mut self, g: &FiniteAbelianGroup) -> GroupSubset {
        let members: Vec<usize> = (0..g.order()).filter(|_| self.next_bool()).collect();
        GroupSubset::new(g, members).expect("indices in range")
    }
}
