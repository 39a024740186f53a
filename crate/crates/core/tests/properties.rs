mod common;

use std::collections::BTreeSet;

use common::{full, mask_of, Masks};
use genconcept::context::{read_csv, read_cxt, write_csv, write_cxt};
use genconcept::generalize::{generalize_attributes, Axis, GroupingScheme, Mode};
use genconcept::lattice::{count_concepts, enumerate_concepts};
use genconcept::synth::{generate_context, records_to_csv, sweep, SweepGrid};
use genconcept::{BitSet, FormalContext, Fraction};
use proptest::prelude::*;

fn context_strategy(max_g: usize, max_m: usize) -> impl Strategy<Value = FormalContext> {
    (1..=max_g, 1..=max_m)
        .prop_flat_map(|(g, m)| (Just(g), Just(m), proptest::collection::vec(any::<bool>(), g * m)))
        .prop_map(|(g, m, cells)| {
            FormalContext::from_fn(
                "p",
                (0..g).map(|i| format!("g{i}")).collect(),
                (0..m).map(|i| format!("m{i}")).collect(),
                |i, j| cells[i * m + j],
            )
            .unwrap()
        })
}

/// Context plus a random partition of its attributes.
fn grouped_strategy() -> impl Strategy<Value = (FormalContext, Vec<Vec<usize>>)> {
    context_strategy(10, 7).prop_flat_map(|ctx| {
        let n = ctx.n_attributes();
        (Just(ctx), proptest::collection::vec(0..n, n)).prop_map(move |(ctx, owner)| {
            let mut blocks = vec![Vec::new(); n];
            for (m, b) in owner.into_iter().enumerate() {
                blocks[b].push(m);
            }
            blocks.retain(|b| !b.is_empty());
            (ctx, blocks)
        })
    })
}

fn scheme(n: usize, mode: Mode, blocks: &[Vec<usize>]) -> GroupingScheme {
    let mut s = GroupingScheme::new(Axis::Attributes, mode, n, false);
    for (i, b) in blocks.iter().enumerate() {
        s.push(&format!("s{i}"), BitSet::from_indices(n, b.iter().copied()).unwrap(), None).unwrap();
    }
    s
}

/// Number of intents, as the intersection closure of the object rows
/// together with the full attribute set.
fn closure_count(m: &Masks) -> usize {
    let mut intents: BTreeSet<u64> = BTreeSet::from([m.all_m()]);
    for &row in &m.rows {
        let fresh: Vec<u64> = intents.iter().map(|b| b & row).collect();
        intents.extend(fresh);
    }
    intents.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lattice_matches_brute_force(ctx in context_strategy(12, 9)) {
        let lat = enumerate_concepts(&ctx).unwrap();
        let got: BTreeSet<(u64, u64)> =
            lat.concepts().iter().map(|c| (mask_of(c.extent.iter()), mask_of(c.intent.iter()))).collect();
        prop_assert_eq!(got, Masks::of(&ctx).brute_concepts());
    }

    #[test]
    fn order_follows_extent_inclusion(ctx in context_strategy(8, 6)) {
        let lat = enumerate_concepts(&ctx).unwrap();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                let sub = lat.concept(a).extent.is_subset(&lat.concept(b).extent);
                prop_assert_eq!(lat.leq(a, b).unwrap(), sub);
            }
        }
    }

    #[test]
    fn exists_column_is_union((ctx, blocks) in grouped_strategy()) {
        let m = Masks::of(&ctx);
        let g = Masks::of(&generalize_attributes(&ctx, &scheme(ctx.n_attributes(), Mode::Exists, &blocks)).unwrap());
        for (j, b) in blocks.iter().enumerate() {
            prop_assert_eq!(g.column(j), b.iter().fold(0, |acc, &x| acc | m.column(x)));
        }
    }

    #[test]
    fn forall_column_is_intersection_and_never_grows((ctx, blocks) in grouped_strategy()) {
        let m = Masks::of(&ctx);
        let generalized = generalize_attributes(&ctx, &scheme(ctx.n_attributes(), Mode::ForAll, &blocks)).unwrap();
        let g = Masks::of(&generalized);
        for (j, b) in blocks.iter().enumerate() {
            prop_assert_eq!(g.column(j), b.iter().fold(full(m.n_g), |acc, &x| acc & m.column(x)));
        }
        prop_assert!(count_concepts(&generalized).unwrap() <= count_concepts(&ctx).unwrap());
    }

    #[test]
    fn alpha_at_full_threshold_is_forall((ctx, blocks) in grouped_strategy()) {
        let n = ctx.n_attributes();
        let alpha = scheme(n, Mode::Alpha, &blocks).with_alpha(Fraction::from_integer(1));
        let by_alpha = generalize_attributes(&ctx, &alpha).unwrap();
        let by_forall = generalize_attributes(&ctx, &scheme(n, Mode::ForAll, &blocks)).unwrap();
        prop_assert_eq!(by_alpha.rows(), by_forall.rows());
    }

    #[test]
    fn cxt_and_csv_round_trip(ctx in context_strategy(10, 8)) {
        let cxt = write_cxt(&ctx);
        prop_assert_eq!(write_cxt(&read_cxt(&cxt).unwrap()), cxt);
        let csv = write_csv(&ctx).unwrap();
        let parsed = read_csv(&csv).unwrap();
        prop_assert_eq!(parsed.rows(), ctx.rows());
    }
}

#[test]
fn synthetic_context_size_is_frozen() {
    // 50 x 25 at density 0.3, seed 7
    let ctx = generate_context(50, 25, 0.3, 7).unwrap();
    let oracle = closure_count(&Masks::of(&ctx));
    assert_eq!(oracle, 693);
    assert_eq!(count_concepts(&ctx).unwrap(), oracle);
}

#[test]
fn closure_count_agrees_with_brute_force() {
    let ctx = generate_context(20, 12, 0.4, 3).unwrap();
    let m = Masks::of(&ctx);
    assert_eq!(closure_count(&m), m.count());
}

#[test]
fn sweep_csv_is_deterministic() {
    let grid = SweepGrid::single(20, 10, 0.3, &[2, 5], Mode::Exists, 8);
    let a = records_to_csv(&sweep(&grid).unwrap());
    let b = records_to_csv(&sweep(&grid).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 1 + 16);
}
