//! Checks of the size statements. A failed check is a bug, so it is
//! reported as [`Error::TheoremViolation`]; an unmet hypothesis is reported
//! as [`TheoremOutcome::Inapplicable`].

use std::collections::HashSet;

use serde::Serialize;

use super::SizeReport;
use crate::context::{FormalContext, ObjectSet};
use crate::error::{Error, Result};
use crate::generalize::{generalize_attributes, group_column, Axis, GroupingScheme, Mode};
use crate::lattice::{count_concepts, enumerate_concepts, is_distributive, is_object_reduced};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TheoremOutcome {
    Holds(SizeReport),
    Inapplicable { reason: String },
}

/// A generalized attribute whose extent is already the extent of an
/// original concept, so its attribute concept in the apposition is
/// reducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibleWitness {
    pub group: String,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForallReport {
    pub report: SizeReport,
    pub witnesses: Vec<ReducibleWitness>,
}

fn violation(msg: String) -> Error {
    Error::TheoremViolation(msg)
}

fn require(scheme: &GroupingScheme, mode: Mode) -> Result<()> {
    if scheme.axis != Axis::Attributes || scheme.mode != mode {
        return Err(Error::argument(format!("expected an attribute scheme in {mode} mode")));
    }
    Ok(())
}

fn extents(ctx: &FormalContext) -> Result<HashSet<ObjectSet>> {
    Ok(enumerate_concepts(ctx)?.concepts().iter().map(|c| c.extent.clone()).collect())
}

/// Universal generalization never adds concepts: every group column is an
/// original extent, the apposition has exactly the original extents, and
/// the generalized lattice is no larger.
pub fn verify_forall_theorem(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<ForallReport> {
    require(scheme, Mode::ForAll)?;
    scheme.validate(ctx)?;
    let generalized = generalize_attributes(ctx, scheme)?;
    let mut witnesses = Vec::new();
    for (s, group) in scheme.resolved(ctx.attribute_names()).iter().enumerate() {
        let column = generalized.column(s);
        let intent = ctx.closure_attributes(&group.members)?;
        if &ctx.extent_of(&intent) != column {
            return Err(violation(format!("column of {:?} is not an original extent", group.name)));
        }
        witnesses.push(ReducibleWitness {
            group: group.name.clone(),
            extent: ctx.object_labels(column),
            intent: ctx.attribute_labels(&intent),
        });
    }
    let original = extents(ctx)?;
    let apposed = extents(&ctx.apposition(&generalized)?)?;
    if original != apposed {
        return Err(violation("apposition changed the set of extents".into()));
    }
    let size_after = count_concepts(&generalized)?;
    if size_after > apposed.len() {
        return Err(violation(format!(
            "{size_after} generalized concepts exceed {} apposed ones",
            apposed.len()
        )));
    }
    let mut report = SizeReport::new(original.len(), size_after);
    report.apposed = Some(apposed.len());
    Ok(ForallReport { report, witnesses })
}

/// Existential generalization of an object reduced context with a
/// distributive lattice: every group column is an original extent and the
/// lattice does not grow.
pub fn verify_exists_distributive(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<TheoremOutcome> {
    require(scheme, Mode::Exists)?;
    scheme.validate(ctx)?;
    if !is_object_reduced(ctx) {
        return Ok(TheoremOutcome::Inapplicable {
            reason: "context is not object reduced".into(),
        });
    }
    let lattice = enumerate_concepts(ctx)?;
    if !is_distributive(&lattice) {
        return Ok(TheoremOutcome::Inapplicable {
            reason: "concept lattice is not distributive".into(),
        });
    }
    let generalized = generalize_attributes(ctx, scheme)?;
    for (s, group) in scheme.resolved(ctx.attribute_names()).iter().enumerate() {
        if lattice.find_extent(generalized.column(s)).is_none() {
            return Err(violation(format!("column of {:?} is not an original extent", group.name)));
        }
    }
    let report = SizeReport::new(lattice.len(), count_concepts(&generalized)?);
    if report.increased() {
        return Err(violation(format!(
            "concept count grew from {} to {}",
            report.size_before, report.size_after
        )));
    }
    Ok(TheoremOutcome::Holds(report))
}

/// For each resolved group, a member whose column contains every other
/// member column; `None` if some group has no such member.
pub fn case1_greatest_elements(ctx: &FormalContext, scheme: &GroupingScheme) -> Option<Vec<usize>> {
    scheme
        .resolved(ctx.attribute_names())
        .iter()
        .map(|g| {
            g.members
                .iter()
                .find(|&top| g.members.iter().all(|m| ctx.column(m).is_subset(ctx.column(top))))
        })
        .collect()
}

/// Whether every existential group column is an extent of `ctx`.
pub fn union_columns_are_extents(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<bool> {
    for g in scheme.resolved(ctx.attribute_names()) {
        let col = group_column(ctx, &g.members, Mode::Exists, None)?;
        if ctx.closure_objects(&col)? != col {
            return Ok(false);
        }
    }
    Ok(true)
}
