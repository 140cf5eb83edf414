#![allow(dead_code)]

pub mod compare;
pub mod oracle;

use std::path::PathBuf;

use anosov_core::{GeometricType, Sign, SignedTarget};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random valid type with at most `max_n` rectangles and at most
/// `max_bands` bands in every direction.
pub fn random_type(rng: &mut impl Rng, max_n: usize, max_bands: usize) -> GeometricType {
    loop {
        let n = rng.gen_range(1..=max_n);
        let h: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_bands)).collect();
        let total: usize = h.iter().sum();
        if total < n || total > n * max_bands {
            continue;
        }
        // Random composition of `total` into n parts in 1..=max_bands.
        let mut v = vec![1usize; n];
        let mut left = total - n;
        while left > 0 {
            let k = rng.gen_range(0..n);
            if v[k] < max_bands {
                v[k] += 1;
                left -= 1;
            }
        }
        let mut slots: Vec<(usize, usize)> = (0..n).flat_map(|k| (0..v[k]).map(move |l| (k, l))).collect();
        slots.shuffle(rng);
        let mut it = slots.into_iter();
        let phi = h
            .iter()
            .map(|&hi| {
                (0..hi)
                    .map(|_| {
                        let (k, l) = it.next().unwrap();
                        let eps = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                        SignedTarget { k, l, eps }
                    })
                    .collect()
            })
            .collect();
        return GeometricType::new(h, v, phi).expect("generated type is valid");
    }
}

/// The fixed random corpus shared by the oracle and acceptance suites.
pub fn corpus(size: usize, max_n: usize) -> Vec<GeometricType> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    (0..size).map(|_| random_type(&mut rng, max_n, 3)).collect()
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

/// Compares against a frozen file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}
