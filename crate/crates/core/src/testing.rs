//! Independent oracles shared by unit tests. Nothing here goes through the
//! enumeration kernel.

use std::collections::BTreeSet;

use rand::Rng;

use crate::bitset::BitSet;
use crate::context::{AttributeSet, FormalContext};

/// Closes every one of the 2^|M| attribute subsets and deduplicates.
pub(crate) fn brute_force_intents(ctx: &FormalContext) -> Vec<AttributeSet> {
    let n_m = ctx.n_attributes();
    assert!(n_m <= 16, "oracle is exponential in |M|");
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u32..(1 << n_m) {
        let mut extent: Vec<usize> = (0..ctx.n_objects()).collect();
        for m in 0..n_m {
            if mask >> m & 1 == 1 {
                extent.retain(|&g| ctx.incidence(g, m));
            }
        }
        let intent: Vec<usize> = (0..n_m)
            .filter(|&m| extent.iter().all(|&g| ctx.incidence(g, m)))
            .collect();
        seen.insert(intent);
    }
    seen.into_iter()
        .map(|v| BitSet::from_indices(n_m, v).unwrap())
        .collect()
}

pub(crate) fn random_context<R: Rng>(rng: &mut R, max_g: usize, max_m: usize) -> FormalContext {
    let n_g = rng.random_range(1..=max_g);
    let n_m = rng.random_range(1..=max_m);
    let density = rng.random_range(0.2..0.7);
    FormalContext::from_fn(
        "",
        (0..n_g).map(|i| format!("g{i}")).collect(),
        (0..n_m).map(|i| format!("m{i}")).collect(),
        |_, _| rng.random_bool(density),
    )
    .unwrap()
}
