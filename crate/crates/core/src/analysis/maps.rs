//! Maps from the concepts of (G, M, I) to the concepts of a generalized
//! context (G, S, J) built from an attribute partition.
//!
//! `phi` sends (A, B) to the join of the generalized object concepts of A;
//! `psi` sends it to the meet of the generalized attribute concepts of the
//! groups owning the members of B.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generalize::{Axis, GroupingScheme};
use crate::lattice::{ConceptId, ConceptLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Phi,
    Psi,
}

/// Total map, indexed by source concept id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConceptMap {
    pub kind: MapKind,
    pub targets: Vec<ConceptId>,
}

impl ConceptMap {
    pub fn apply(&self, id: ConceptId) -> ConceptId {
        self.targets[id]
    }
}

fn check_pair(source: &ConceptLattice, target: &ConceptLattice, scheme: &GroupingScheme) -> Result<Vec<usize>> {
    if scheme.axis != Axis::Attributes {
        return Err(Error::argument("concept maps need an attribute scheme"));
    }
    let ctx = source.context();
    if ctx.object_names() != target.context().object_names() {
        return Err(Error::argument("source and target lattices have different objects"));
    }
    scheme.validate(ctx)?;
    let owner = scheme.owner_map(ctx.attribute_names())?;
    let n_groups = scheme.resolved(ctx.attribute_names()).len();
    if n_groups != target.context().n_attributes() {
        return Err(Error::argument(format!(
            "scheme has {n_groups} groups, target context has {} attributes",
            target.context().n_attributes()
        )));
    }
    Ok(owner)
}

pub fn build_phi(source: &ConceptLattice, target: &ConceptLattice, scheme: &GroupingScheme) -> Result<ConceptMap> {
    check_pair(source, target, scheme)?;
    let targets = source
        .concepts()
        .iter()
        .map(|c| {
            let gammas: Vec<ConceptId> = c.extent.iter().map(|g| target.gamma(g)).collect();
            target.join(&gammas)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConceptMap {
        kind: MapKind::Phi,
        targets,
    })
}

/// An empty intent maps to the top concept.
pub fn build_psi(source: &ConceptLattice, target: &ConceptLattice, scheme: &GroupingScheme) -> Result<ConceptMap> {
    let owner = check_pair(source, target, scheme)?;
    let targets = source
        .concepts()
        .iter()
        .map(|c| {
            let mus: Vec<ConceptId> = c.intent.iter().map(|m| target.mu(owner[m])).collect();
            target.meet(&mus)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConceptMap {
        kind: MapKind::Psi,
        targets,
    })
}

/// Whether every target concept is hit, and the ones that are not.
pub fn check_surjective(map: &ConceptMap, target: &ConceptLattice) -> (bool, Vec<ConceptId>) {
    let mut hit = vec![false; target.len()];
    for &t in &map.targets {
        hit[t] = true;
    }
    let missed: Vec<ConceptId> = (0..target.len()).filter(|&t| !hit[t]).collect();
    (missed.is_empty(), missed)
}

pub fn is_order_preserving(map: &ConceptMap, source: &ConceptLattice, target: &ConceptLattice) -> bool {
    (0..source.len()).all(|a| {
        (0..source.len())
            .filter(|&b| source.leq_unchecked(a, b))
            .all(|b| target.leq_unchecked(map.apply(a), map.apply(b)))
    })
}

pub fn phi_below_psi(phi: &ConceptMap, psi: &ConceptMap, target: &ConceptLattice) -> bool {
    phi.targets
        .iter()
        .zip(&psi.targets)
        .all(|(&p, &q)| target.leq_unchecked(p, q))
}
