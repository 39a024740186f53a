//! Independent reference computations for integration tests. Contexts are
//! copied into plain `u64` masks and everything is recomputed from the
//! definitions, without touching the library's bitsets or enumerators.

#![allow(dead_code)]

use std::collections::BTreeSet;

use genconcept::FormalContext;
use rand::seq::SliceRandom;
use rand::Rng;

/// A context with at most 64 objects and 64 attributes as bit masks.
#[derive(Clone, Debug)]
pub struct Masks {
    pub n_g: usize,
    pub n_m: usize,
    pub rows: Vec<u64>,
}

impl Masks {
    pub fn of(ctx: &FormalContext) -> Self {
        assert!(ctx.n_objects() <= 64 && ctx.n_attributes() <= 64);
        let rows = (0..ctx.n_objects())
            .map(|g| (0..ctx.n_attributes()).filter(|&m| ctx.incidence(g, m)).fold(0u64, |acc, m| acc | 1 << m))
            .collect();
        Masks {
            n_g: ctx.n_objects(),
            n_m: ctx.n_attributes(),
            rows,
        }
    }

    pub fn all_m(&self) -> u64 {
        full(self.n_m)
    }

    pub fn column(&self, m: usize) -> u64 {
        (0..self.n_g).filter(|&g| self.rows[g] >> m & 1 == 1).fold(0, |acc, g| acc | 1 << g)
    }

    /// A′ for a set of objects.
    pub fn intent_of(&self, ext: u64) -> u64 {
        (0..self.n_g).filter(|&g| ext >> g & 1 == 1).fold(self.all_m(), |acc, g| acc & self.rows[g])
    }

    /// B′ for a set of attributes.
    pub fn extent_of(&self, int: u64) -> u64 {
        (0..self.n_g).filter(|&g| self.rows[g] & int == int).fold(0, |acc, g| acc | 1 << g)
    }

    pub fn is_extent(&self, ext: u64) -> bool {
        self.extent_of(self.intent_of(ext)) == ext
    }

    /// Every concept as (extent, intent), by closing all 2^|M| attribute
    /// subsets.
    pub fn brute_concepts(&self) -> BTreeSet<(u64, u64)> {
        assert!(self.n_m <= 20, "brute force over 2^{} subsets", self.n_m);
        (0..1u64 << self.n_m)
            .map(|b| {
                let ext = self.extent_of(b);
                (ext, self.intent_of(ext))
            })
            .collect()
    }

    pub fn count(&self) -> usize {
        self.brute_concepts().len()
    }
}

pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_of(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0, |acc, i| acc | 1 << i)
}

pub fn random_context<R: Rng>(rng: &mut R, max_g: usize, max_m: usize) -> FormalContext {
    let n_g = rng.random_range(1..=max_g);
    let n_m = rng.random_range(1..=max_m);
    let density: f64 = rng.random_range(0.15..0.75);
    let cells: Vec<bool> = (0..n_g * n_m).map(|_| rng.random_bool(density)).collect();
    FormalContext::from_fn(
        "random",
        (0..n_g).map(|g| format!("g{g}")).collect(),
        (0..n_m).map(|m| format!("m{m}")).collect(),
        |g, m| cells[g * n_m + m],
    )
    .unwrap()
}

/// Random partition of `0..n` into non-empty blocks.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let k = rng.random_range(1..=n);
    let mut blocks = vec![Vec::new(); k];
    for (i, x) in order.into_iter().enumerate() {
        let b = if i < k { i } else { rng.random_range(0..k) };
        blocks[b].push(x);
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks
}

/// Random non-empty subset of `0..n`.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}
