//! Splittable seed derivation.
//!
//! Every random choice in the crate is a pure function of a root seed and a
//! path of labels, so any component (a subset, a sketch battery, a trial) can
//! be replayed in isolation. Labels in use:
//!
//! | label       | index          | consumer                                 |
//! |-------------|----------------|------------------------------------------|
//! | `subset`    | forest number  | vertex sampling for one certificate forest |
//! | `bank`      | forest number  | sketch seeds for one forest's bank       |
//! | `round`     | Borůvka round  | one sketch battery inside a bank         |
//! | `z`         | 0              | fingerprint base inside one sketch       |
//! | `trial`     | trial number   | CLI accuracy harness                     |
//! | `planted`   | attempt        | edge dropping in planted-cut instances   |
//! | `intersect` | 0              | forced collision in disjointness inputs  |

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn label_hash(label: &str) -> u64 {
    // FNV-1a; labels are short compile-time constants.
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325_u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// Derives the child seed `parent / label / index`.
pub fn derive(parent: u64, label: &str, index: u64) -> u64 {
    mix64(mix64(parent ^ label_hash(label)).wrapping_add(mix64(index)))
}

/// Maps a hash to a uniform float in `[0, 1)`.
#[inline]
pub fn unit_f64(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
