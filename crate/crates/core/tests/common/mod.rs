#![allow(dead_code)]

use chaos_imgcrypt::GrayImage;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Transparency order straight from the definition: every (beta, a, x) triple
/// enumerated, no spectral shortcuts.
pub fn transparency_order_bruteforce(table: &[u8], n: u32, m: u32) -> f64 {
    let size = 1usize << n;
    let bit = |v: u8, j: u32| i64::from((v >> j) & 1);
    let mut best = f64::NEG_INFINITY;
    for beta in 0..1u32 << m {
        let mut spread = 0i64;
        for a in 1..size {
            let mut inner = 0i64;
            for j in 0..m {
                let mut ac = 0i64;
                for x in 0..size {
                    ac += if bit(table[x], j) ^ bit(table[x ^ a], j) == 0 {
                        1
                    } else {
                        -1
                    };
                }
                inner += if (beta >> j) & 1 == 1 { -ac } else { ac };
            }
            spread += inner.abs();
        }
        let lead = (f64::from(m) - 2.0 * f64::from(beta.count_ones())).abs();
        best = best.max(lead - spread as f64 / (size * size - size) as f64);
    }
    best
}

pub fn random_bijection(size: usize, rng: &mut impl Rng) -> Vec<u8> {
    let mut t: Vec<u8> = (0..size).map(|v| v as u8).collect();
    t.shuffle(rng);
    t
}

pub fn random_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(width, height, |_, _| rng.gen()).unwrap()
}

pub fn differing_fraction(a: &[u8], b: &[u8]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count() as f64 / a.len() as f64
}
