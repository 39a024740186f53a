//! Small reference contexts and grouping files shipped with the crate.
//!
//! `retail` is an 8 transactions x 8 items table; `small` is a 5x6 table
//! whose existential merge of `m1` and `m2` grows the lattice from 7 to 8
//! concepts (`small_generalized`). The `retail_*` tables are the retail
//! context apposed with its existential, universal and 60% threshold
//! generalizations.

use crate::context::{read_cxt, FormalContext};

pub const SMALL_CXT: &str = include_str!("../data/small.cxt");
pub const SMALL_GENERALIZED_CXT: &str = include_str!("../data/small-generalized.cxt");
pub const RETAIL_CXT: &str = include_str!("../data/retail.cxt");
pub const RETAIL_EXISTS_CXT: &str = include_str!("../data/retail-exists.cxt");
pub const RETAIL_FORALL_CXT: &str = include_str!("../data/retail-forall.cxt");
pub const RETAIL_ALPHA_CXT: &str = include_str!("../data/retail-alpha.cxt");
pub const AIRLINE_CXT: &str = include_str!("../data/airline.cxt");

pub const EXISTS_ABCD_JSON: &str = include_str!("../data/exists-ABCD.json");
pub const FORALL_STUV_JSON: &str = include_str!("../data/forall-STUV.json");
pub const ALPHA_EFH_JSON: &str = include_str!("../data/alpha-EFH.json");
pub const MERGE_M1_M2_JSON: &str = include_str!("../data/merge-m1-m2.json");
pub const AIRLINE_TAXONOMY_JSON: &str = include_str!("../data/airline-taxonomy.json");

fn load(text: &str) -> FormalContext {
    read_cxt(text).expect("bundled sample is well formed")
}

pub fn small() -> FormalContext {
    load(SMALL_CXT)
}

pub fn small_generalized() -> FormalContext {
    load(SMALL_GENERALIZED_CXT)
}

pub fn retail() -> FormalContext {
    load(RETAIL_CXT)
}

pub fn retail_exists() -> FormalContext {
    load(RETAIL_EXISTS_CXT)
}

pub fn retail_forall() -> FormalContext {
    load(RETAIL_FORALL_CXT)
}

pub fn retail_alpha() -> FormalContext {
    load(RETAIL_ALPHA_CXT)
}

pub fn airline() -> FormalContext {
    load(AIRLINE_CXT)
}

/// Contranominal scale: object i has every attribute except attribute i.
pub fn contranominal(n: usize) -> FormalContext {
    FormalContext::from_fn(
        format!("contranominal-{n}"),
        (1..=n).map(|i| format!("g{i}")).collect(),
        (1..=n).map(|i| format!("m{i}")).collect(),
        |g, m| g != m,
    )
    .expect("names are distinct")
}

/// Chain: object i has the first i attributes (object 0 has none), so rows
/// are strictly nested and none is the full attribute set.
pub fn chain(n: usize) -> FormalContext {
    FormalContext::from_fn(
        format!("chain-{n}"),
        (0..n).map(|i| format!("g{i}")).collect(),
        (1..=n).map(|i| format!("m{i}")).collect(),
        |g, m| m < g,
    )
    .expect("names are distinct")
}
