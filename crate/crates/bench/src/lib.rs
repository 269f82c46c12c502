//! Shared inputs for the criterion benchmarks.

use sefe_cplanar::generate::{random_instance, Shape};
use sefe_cplanar::{solve, LeafOrder, PtbeInstance, SolveOptions};

/// Deterministic instances of the given size, alternating tree shapes.
pub fn corpus(leaves: usize, edges: usize, count: u64) -> Vec<PtbeInstance> {
    (0..count)
        .map(|seed| {
            let shape = if seed.is_multiple_of(2) {
                Shape::Star
            } else {
                Shape::RandomTree
            };
            random_instance(leaves, edges / 2, edges - edges / 2, seed, shape)
        })
        .collect()
}

/// YES instances with their witnesses, taken from the first seeds that give one.
pub fn yes_corpus(leaves: usize, edges: usize, count: usize) -> Vec<(PtbeInstance, LeafOrder)> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let shape = if seed.is_multiple_of(2) {
            Shape::Star
        } else {
            Shape::RandomTree
        };
        let inst = random_instance(leaves, edges / 2, edges - edges / 2, seed, shape);
        if let Some(w) = solve(&inst, SolveOptions::default())
            .expect("solvable")
            .witness
        {
            out.push((inst, w));
        }
        seed += 1;
    }
    out
}
