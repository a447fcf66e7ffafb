//! Seeded input builders shared by the benchmarks.

use ringlab_core::matrix::RingMatrix;
use ringlab_core::ring::{Element, Ring};
use ringlab_core::rng::SplitMix64;

pub fn zn(n: u64) -> Ring {
    Ring::zmod(n).unwrap()
}

/// A deterministic batch of matrices over the given finite ring.
pub fn seeded_matrices(ring: &Ring, count: usize, dim: usize) -> Vec<RingMatrix> {
    let all = ring.elements().expect("finite ring");
    let mut rng = SplitMix64::derive(7, &format!("bench:{ring}"));
    (0..count)
        .map(|_| {
            let entries: Vec<Element> = (0..dim * dim)
                .map(|_| all[rng.below(all.len() as u64) as usize].clone())
                .collect();
            RingMatrix::new(dim, dim, entries)
        })
        .collect()
}

/// A deterministic batch of element pairs.
pub fn seeded_pairs(ring: &Ring, count: usize) -> Vec<(Element, Element)> {
    let all = ring.elements().expect("finite ring");
    let mut rng = SplitMix64::derive(11, &format!("bench_pairs:{ring}"));
    (0..count)
        .map(|_| {
            (
                all[rng.below(all.len() as u64) as usize].clone(),
                all[rng.below(all.len() as u64) as usize].clone(),
            )
        })
        .collect()
}
