#![allow(dead_code)]

use modmat::word::Letter;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed from `MM_SEED`, else a fixed default, so runs are reproducible.
pub fn seed() -> u64 {
    std::env::var("MM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_240_601)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

pub fn letters_from_bits(bits: u32, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|i| if bits >> i & 1 == 1 { Letter::Alpha } else { Letter::Beta })
        .collect()
}

/// Every word of length `1..=max_len` using both letters.
pub fn mixed_words(max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for len in 2..=max_len {
        for bits in 1..(1u32 << len) - 1 {
            out.push(letters_from_bits(bits, len));
        }
    }
    out
}
