//! Concept lattices: enumeration, order, covering relation, meets and joins,
//! structural predicates and iceberg enumeration.

mod cbo;
mod export;

pub use export::{to_dot, ConceptDocument, LatticeDocument};

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::error::{Error, Result};
use crate::ratio::{check_unit_threshold, Fraction, SupportValue};

/// Default bound on the number of concepts any single enumeration may
/// produce before giving up.
pub const DEFAULT_CONCEPT_CEILING: usize = 10_000_000;

/// Position of a concept inside its [`ConceptLattice`].
pub type ConceptId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

/// All concepts of a context, sorted lectically by intent, together with
/// their covering relation and the object and attribute concepts.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<Concept>,
    by_intent: HashMap<AttributeSet, ConceptId>,
    by_extent: HashMap<ObjectSet, ConceptId>,
    /// (child, parent) pairs of the covering relation.
    covers: Vec<(ConceptId, ConceptId)>,
    upper: Vec<Vec<ConceptId>>,
    lower: Vec<Vec<ConceptId>>,
    gamma: Vec<ConceptId>,
    mu: Vec<ConceptId>,
}

/// Enumerates every concept of `ctx` with the default ceiling.
pub fn enumerate_concepts(ctx: &FormalContext) -> Result<ConceptLattice> {
    enumerate_concepts_with(ctx, DEFAULT_CONCEPT_CEILING)
}

pub fn enumerate_concepts_with(ctx: &FormalContext, ceiling: usize) -> Result<ConceptLattice> {
    let mut concepts = Vec::new();
    cbo::for_each_concept(ctx, 0, ceiling, |extent, intent| {
        concepts.push(Concept {
            extent: extent.clone(),
            intent: intent.clone(),
        })
    })?;
    Ok(ConceptLattice::from_concepts(ctx.clone(), concepts))
}

/// Counts concepts without storing them.
pub fn count_concepts(ctx: &FormalContext) -> Result<usize> {
    count_concepts_with(ctx, DEFAULT_CONCEPT_CEILING)
}

pub fn count_concepts_with(ctx: &FormalContext, ceiling: usize) -> Result<usize> {
    cbo::for_each_concept(ctx, 0, ceiling, |_, _| {})
}

/// Closed intents whose support reaches `minsupp`, in lectic order.
pub fn iceberg_intents(ctx: &FormalContext, minsupp: &Fraction) -> Result<Vec<(AttributeSet, SupportValue)>> {
    check_unit_threshold(minsupp, "minimum support")?;
    if ctx.n_objects() == 0 {
        return Err(Error::argument("context has no objects"));
    }
    let n = ctx.n_objects();
    // smallest extent size k with k/n >= minsupp
    let min_extent = ((*minsupp.numer() as u128 * n as u128).div_ceil(*minsupp.denom() as u128)) as usize;
    let mut out = Vec::new();
    cbo::for_each_concept(ctx, min_extent.max(1), DEFAULT_CONCEPT_CEILING, |extent, intent| {
        out.push((intent.clone(), SupportValue::new(extent.len(), n)));
    })?;
    out.sort_by(|a, b| a.0.lectic_cmp(&b.0));
    Ok(out)
}

impl ConceptLattice {
    fn from_concepts(context: FormalContext, mut concepts: Vec<Concept>) -> Self {
        concepts.sort_by(|a, b| a.intent.lectic_cmp(&b.intent));
        let by_intent: HashMap<_, _> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.intent.clone(), i))
            .collect();
        let by_extent: HashMap<_, _> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.clone(), i))
            .collect();

        let (upper, covers) = covering_relation(&concepts);
        let mut lower = vec![Vec::new(); concepts.len()];
        for &(child, parent) in &covers {
            lower[parent].push(child);
        }

        let gamma = (0..context.n_objects())
            .map(|g| by_intent[context.row(g)])
            .collect();
        let mu = (0..context.n_attributes())
            .map(|m| by_extent[context.column(m)])
            .collect();

        ConceptLattice {
            context,
            concepts,
            by_intent,
            by_extent,
            covers,
            upper,
            lower,
            gamma,
            mu,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, id: ConceptId) -> &Concept {
        &self.concepts[id]
    }

    pub fn covers(&self) -> &[(ConceptId, ConceptId)] {
        &self.covers
    }

    pub fn upper_covers(&self, id: ConceptId) -> &[ConceptId] {
        &self.upper[id]
    }

    pub fn lower_covers(&self, id: ConceptId) -> &[ConceptId] {
        &self.lower[id]
    }

    /// Object concept of `g`: (g″, g′).
    pub fn gamma(&self, g: usize) -> ConceptId {
        self.gamma[g]
    }

    /// Attribute concept of `m`: (m′, m″).
    pub fn mu(&self, m: usize) -> ConceptId {
        self.mu[m]
    }

    /// The concept with extent G.
    pub fn top(&self) -> ConceptId {
        self.by_extent[&self.context.all_objects()]
    }

    /// The concept with intent M.
    pub fn bottom(&self) -> ConceptId {
        self.by_intent[&self.context.all_attributes()]
    }

    pub fn find_intent(&self, intent: &AttributeSet) -> Option<ConceptId> {
        self.by_intent.get(intent).copied()
    }

    pub fn find_extent(&self, extent: &ObjectSet) -> Option<ConceptId> {
        self.by_extent.get(extent).copied()
    }

    /// Locates a concept value in this lattice.
    pub fn id_of(&self, concept: &Concept) -> Result<ConceptId> {
        match self.by_intent.get(&concept.intent) {
            Some(&id) if self.concepts[id].extent == concept.extent => Ok(id),
            _ => Err(Error::argument("concept does not belong to this lattice")),
        }
    }

    fn check_id(&self, id: ConceptId) -> Result<()> {
        if id >= self.concepts.len() {
            return Err(Error::argument(format!(
                "concept id {id} does not belong to a lattice of {} concepts",
                self.concepts.len()
            )));
        }
        Ok(())
    }

    /// `a <= b` iff the extent of `a` is contained in the extent of `b`.
    pub fn leq(&self, a: ConceptId, b: ConceptId) -> Result<bool> {
        self.check_id(a)?;
        self.check_id(b)?;
        Ok(self.leq_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn leq_unchecked(&self, a: ConceptId, b: ConceptId) -> bool {
        self.concepts[a].extent.is_subset(&self.concepts[b].extent)
    }

    /// Infimum: the extent is the intersection of the extents. The meet of
    /// nothing is the top concept.
    pub fn meet(&self, ids: &[ConceptId]) -> Result<ConceptId> {
        let mut extent = self.context.all_objects();
        for &id in ids {
            self.check_id(id)?;
            extent.intersect_with(&self.concepts[id].extent);
        }
        Ok(self.by_extent[&extent])
    }

    /// Supremum: the intent is the intersection of the intents. The join of
    /// nothing is the bottom concept.
    pub fn join(&self, ids: &[ConceptId]) -> Result<ConceptId> {
        let mut intent = self.context.all_attributes();
        for &id in ids {
            self.check_id(id)?;
            intent.intersect_with(&self.concepts[id].intent);
        }
        Ok(self.by_intent[&intent])
    }

    pub fn meet_concepts(&self, concepts: &[Concept]) -> Result<Concept> {
        let ids = concepts.iter().map(|c| self.id_of(c)).collect::<Result<Vec<_>>>()?;
        Ok(self.concepts[self.meet(&ids)?].clone())
    }

    pub fn join_concepts(&self, concepts: &[Concept]) -> Result<Concept> {
        let ids = concepts.iter().map(|c| self.id_of(c)).collect::<Result<Vec<_>>>()?;
        Ok(self.concepts[self.join(&ids)?].clone())
    }

    pub(crate) fn meet2(&self, a: ConceptId, b: ConceptId) -> ConceptId {
        self.by_extent[&self.concepts[a].extent.intersection(&self.concepts[b].extent)]
    }

    pub(crate) fn join2(&self, a: ConceptId, b: ConceptId) -> ConceptId {
        self.by_intent[&self.concepts[a].intent.intersection(&self.concepts[b].intent)]
    }

    /// Object labels of a concept under reduced labelling: the objects whose
    /// object concept it is.
    pub fn object_labels(&self, id: ConceptId) -> Vec<usize> {
        (0..self.context.n_objects()).filter(|&g| self.gamma[g] == id).collect()
    }

    /// Attribute labels of a concept under reduced labelling.
    pub fn attribute_labels(&self, id: ConceptId) -> Vec<usize> {
        (0..self.context.n_attributes()).filter(|&m| self.mu[m] == id).collect()
    }
}

/// Upper covers of every concept and the flat (child, parent) list.
///
/// For each concept, strictly larger extents are visited by increasing size
/// and kept when no already kept cover lies below them.
fn covering_relation(concepts: &[Concept]) -> (Vec<Vec<ConceptId>>, Vec<(ConceptId, ConceptId)>) {
    let sizes: Vec<usize> = concepts.iter().map(|c| c.extent.len()).collect();
    let mut by_size: Vec<ConceptId> = (0..concepts.len()).collect();
    by_size.sort_by_key(|&i| (sizes[i], i));

    let mut upper = vec![Vec::new(); concepts.len()];
    let mut covers = Vec::new();
    for (c, concept) in concepts.iter().enumerate() {
        let start = by_size.partition_point(|&i| sizes[i] <= sizes[c]);
        let mut kept: Vec<ConceptId> = Vec::new();
        for &d in &by_size[start..] {
            if !concept.extent.is_subset(&concepts[d].extent) {
                continue;
            }
            if kept
                .iter()
                .all(|&e| !concepts[e].extent.is_subset(&concepts[d].extent))
            {
                kept.push(d);
            }
        }
        kept.sort_unstable();
        for &d in &kept {
            covers.push((c, d));
        }
        upper[c] = kept;
    }
    (upper, covers)
}

/// Exhaustive check of x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) over all triples.
pub fn is_distributive(lat: &ConceptLattice) -> bool {
    let n = lat.len();
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for a in 0..n {
        for b in a..n {
            let m = lat.meet2(a, b);
            let j = lat.join2(a, b);
            meet[a * n + b] = m;
            meet[b * n + a] = m;
            join[a * n + b] = j;
            join[b * n + a] = j;
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = meet[x * n + y];
            for z in y + 1..n {
                let lhs = meet[x * n + join[y * n + z]];
                let rhs = join[xy * n + meet[x * n + z]];
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// True when no object intent is the intersection of other object intents
/// containing it (the empty family intersects to all attributes).
pub fn is_object_reduced(ctx: &FormalContext) -> bool {
    (0..ctx.n_objects()).all(|g| {
        let row = ctx.row(g);
        let mut meet = BitSet::full(ctx.n_attributes());
        for h in (0..ctx.n_objects()).filter(|&h| h != g) {
            if row.is_subset(ctx.row(h)) {
                meet.intersect_with(ctx.row(h));
            }
        }
        &meet != row
    })
}
