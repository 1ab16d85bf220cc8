#![allow(dead_code)]

use polycycle::enumeration::children;
use polycycle::Polycycle;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PAIRS: [(u32, u32); 9] = [(3, 3), (4, 3), (3, 4), (5, 3), (3, 5), (6, 3), (4, 4), (3, 6), (7, 3)];

/// Random growth: start from an r-gon and attach up to `faces - 1` faces.
pub fn random_polycycle(r: u32, q: u32, faces: usize, seed: u64) -> Polycycle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Polycycle::from_faces(r, q, r as usize, &[(0..r).collect()]).unwrap();
    for _ in 1..faces {
        let kids = children(&p);
        match kids.choose(&mut rng) {
            Some(k) => p = k.clone(),
            None => break,
        }
    }
    p
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut rng);
    perm
}
