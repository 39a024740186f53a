//! Two-level structure of the apposition of (G, M, I) and (G, S, J): the
//! outer lattice is that of (G, S, J), and each outer node holds a copy of
//! the lattice of (G, M, I) with the concepts realized at that node marked.
//! Layout and drawing are left to external tools.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_concepts, ConceptId, LatticeDocument};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OuterNode {
    pub outer: ConceptId,
    /// Inner concepts (A, B) such that some apposed concept restricts to
    /// this outer node and to (A, B).
    pub realized: Vec<ConceptId>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NestedDocument {
    pub format_version: u32,
    pub outer: LatticeDocument,
    pub inner: LatticeDocument,
    pub nodes: Vec<OuterNode>,
    /// Concepts of the apposition; equals the number of realized pairs.
    pub apposed_count: usize,
}

pub fn export_nested(original: &FormalContext, generalized: &FormalContext) -> Result<NestedDocument> {
    if original.object_names() != generalized.object_names() {
        return Err(Error::Apposition("object lists differ between the two contexts".into()));
    }
    let inner = enumerate_concepts(original)?;
    let outer = enumerate_concepts(generalized)?;
    let apposed = enumerate_concepts(&original.apposition(generalized)?)?;
    let n_m = original.n_attributes();
    let n_s = generalized.n_attributes();
    let mut realized = vec![Vec::new(); outer.len()];
    for c in apposed.concepts() {
        let inner_intent = BitSet::from_indices(n_m, c.intent.iter().filter(|&m| m < n_m)).expect("in range");
        let outer_intent = BitSet::from_indices(n_s, c.intent.iter().filter(|&m| m >= n_m).map(|m| m - n_m)).expect("in range");
        let o = outer.find_intent(&outer_intent).expect("restriction of an apposed intent is an intent");
        let i = inner.find_intent(&inner_intent).expect("restriction of an apposed intent is an intent");
        realized[o].push(i);
    }
    let nodes = realized
        .into_iter()
        .enumerate()
        .map(|(outer, mut realized)| {
            realized.sort_unstable();
            OuterNode { outer, realized }
        })
        .collect();
    Ok(NestedDocument {
        format_version: 1,
        outer: LatticeDocument::from_lattice(&outer),
        inner: LatticeDocument::from_lattice(&inner),
        nodes,
        apposed_count: apposed.len(),
    })
}
