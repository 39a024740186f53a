//! Generalization of attributes and objects.
//!
//! A [`GroupingScheme`] names groups of attributes (or objects). Applying it
//! replaces every group by a single column (or row) whose incidence is
//! derived from the members:
//!
//! * `Exists`: some member is present, so the column is the union of the
//!   member columns;
//! * `ForAll`: every member is present, so the column is their intersection;
//! * `Alpha`: at least a fraction `alpha` of the members is present.
//!
//! Groups may overlap. Members left out of every group either pass through
//! unchanged (`keep_ungrouped`) or make the scheme invalid.

mod hyper;
mod propose;
mod scheme_doc;
mod taxonomy;

pub use hyper::{hypercontext, HyperRelationSpec};
pub use propose::{fingerprint, propose_groupings, GroupingProposal, ProposalStatus};
pub use scheme_doc::{GroupDocument, SchemeDocument};
pub use taxonomy::{roll_up, Taxonomy, TaxonomyNode};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::context::{FormalContext, ObjectSet};
use crate::error::{Error, Result};
use crate::ratio::{check_unit_threshold, format_fraction, meets_threshold, Fraction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Attributes,
    Objects,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exists,
    #[serde(rename = "forall")]
    ForAll,
    Alpha,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exists => "exists",
            Mode::ForAll => "forall",
            Mode::Alpha => "alpha",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exists" | "e" | "any" => Ok(Mode::Exists),
            "forall" | "all" | "a" => Ok(Mode::ForAll),
            "alpha" => Ok(Mode::Alpha),
            other => Err(Error::argument(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    /// Member positions on the scheme's axis.
    pub members: BitSet,
    /// Threshold for `Alpha` mode; also read as the per-group threshold by
    /// the hypercontext cases 7 and 8.
    pub alpha: Option<Fraction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupingScheme {
    pub axis: Axis,
    pub mode: Mode,
    pub groups: Vec<Group>,
    pub keep_ungrouped: bool,
    axis_len: usize,
}

impl GroupingScheme {
    pub fn new(axis: Axis, mode: Mode, axis_len: usize, keep_ungrouped: bool) -> Self {
        GroupingScheme {
            axis,
            mode,
            groups: Vec::new(),
            keep_ungrouped,
            axis_len,
        }
    }

    /// Scheme over the attributes of `ctx` (or its objects) with groups given
    /// by member names.
    pub fn from_names<S: AsRef<str>>(
        ctx: &FormalContext,
        axis: Axis,
        mode: Mode,
        groups: &[(&str, &[S])],
        keep_ungrouped: bool,
    ) -> Result<Self> {
        let mut scheme = GroupingScheme::new(axis, mode, axis_len(ctx, axis), keep_ungrouped);
        for (name, members) in groups {
            let set = match axis {
                Axis::Attributes => ctx.attributes_named(members)?,
                Axis::Objects => ctx.objects_named(members)?,
            };
            scheme.push(name, set, None)?;
        }
        Ok(scheme)
    }

    /// Every element of the axis in its own group, named after it.
    pub fn singletons(ctx: &FormalContext, axis: Axis, mode: Mode) -> Self {
        let names = axis_names(ctx, axis);
        let mut scheme = GroupingScheme::new(axis, mode, names.len(), false);
        for (i, n) in names.iter().enumerate() {
            let mut members = BitSet::empty(names.len());
            members.insert(i);
            scheme.groups.push(Group {
                name: n.clone(),
                members,
                alpha: None,
            });
        }
        scheme
    }

    pub fn axis_len(&self) -> usize {
        self.axis_len
    }

    /// Appends a group. Empty groups are rejected.
    pub fn push(&mut self, name: &str, members: BitSet, alpha: Option<Fraction>) -> Result<()> {
        if members.universe() != self.axis_len {
            return Err(Error::Dimension {
                what: "group member universe",
                index: members.universe(),
                size: self.axis_len,
            });
        }
        if members.is_empty() {
            return Err(Error::argument(format!("group {name:?} is empty")));
        }
        self.groups.push(Group {
            name: name.to_string(),
            members,
            alpha,
        });
        Ok(())
    }

    pub fn with_alpha(mut self, alpha: Fraction) -> Self {
        for g in &mut self.groups {
            g.alpha = Some(alpha);
        }
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Elements of the axis that belong to no group.
    pub fn ungrouped(&self) -> BitSet {
        let mut covered = BitSet::empty(self.axis_len);
        for g in &self.groups {
            covered.union_with(&g.members);
        }
        covered.complement()
    }

    /// Groups in output order: declared groups first, then (when
    /// `keep_ungrouped`) every ungrouped element as a singleton named after
    /// itself.
    pub fn resolved(&self, names: &[String]) -> Vec<Group> {
        let mut out = self.groups.clone();
        if self.keep_ungrouped {
            for i in &self.ungrouped() {
                let mut members = BitSet::empty(self.axis_len);
                members.insert(i);
                out.push(Group {
                    name: names[i].clone(),
                    members,
                    alpha: None,
                });
            }
        }
        out
    }

    /// True when every element lies in exactly one resolved group.
    pub fn is_partition(&self) -> bool {
        let mut seen = BitSet::empty(self.axis_len);
        for g in &self.groups {
            if !seen.is_disjoint(&g.members) {
                return false;
            }
            seen.union_with(&g.members);
        }
        self.keep_ungrouped || seen.is_full()
    }

    /// For each element, the index of its resolved group. Requires a
    /// partition.
    pub fn owner_map(&self, names: &[String]) -> Result<Vec<usize>> {
        if !self.is_partition() {
            return Err(Error::Precondition("grouping is not a partition".into()));
        }
        let mut owner = vec![usize::MAX; self.axis_len];
        for (s, g) in self.resolved(names).iter().enumerate() {
            for i in &g.members {
                owner[i] = s;
            }
        }
        Ok(owner)
    }

    /// Checks the scheme against `ctx`.
    pub fn validate(&self, ctx: &FormalContext) -> Result<()> {
        let names = axis_names(ctx, self.axis);
        if names.len() != self.axis_len {
            return Err(Error::argument(format!(
                "scheme was built for {} elements, context has {}",
                self.axis_len,
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for g in self.resolved(names) {
            if !seen.insert(g.name.clone()) {
                return Err(Error::argument(format!("duplicate group name {:?}", g.name)));
            }
        }
        for g in &self.groups {
            if g.members.is_empty() {
                return Err(Error::argument(format!("group {:?} is empty", g.name)));
            }
            match (&g.alpha, self.mode) {
                (Some(a), _) => check_unit_threshold(a, &format!("alpha of group {:?}", g.name))?,
                (None, Mode::Alpha) => {
                    return Err(Error::argument(format!(
                        "group {:?} has no alpha threshold",
                        g.name
                    )))
                }
                (None, _) => {}
            }
        }
        if !self.keep_ungrouped && !self.ungrouped().is_empty() {
            let missing: Vec<&str> = self.ungrouped().iter().map(|i| names[i].as_str()).collect();
            return Err(Error::argument(format!(
                "groups do not cover {}",
                missing.join(", ")
            )));
        }
        Ok(())
    }

    pub fn describe(&self, ctx: &FormalContext) -> String {
        let names = axis_names(ctx, self.axis);
        self.groups
            .iter()
            .map(|g| {
                let members: Vec<&str> = g.members.iter().map(|i| names[i].as_str()).collect();
                match &g.alpha {
                    Some(a) => format!("{}={{{}}}@{}", g.name, members.join(","), format_fraction(a)),
                    None => format!("{}={{{}}}", g.name, members.join(",")),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub(crate) fn axis_len(ctx: &FormalContext, axis: Axis) -> usize {
    match axis {
        Axis::Attributes => ctx.n_attributes(),
        Axis::Objects => ctx.n_objects(),
    }
}

pub(crate) fn axis_names(ctx: &FormalContext, axis: Axis) -> &[String] {
    match axis {
        Axis::Attributes => ctx.attribute_names(),
        Axis::Objects => ctx.object_names(),
    }
}

/// Extent of the generalized attribute formed by `members` under `mode`.
pub fn group_column(
    ctx: &FormalContext,
    members: &BitSet,
    mode: Mode,
    alpha: Option<&Fraction>,
) -> Result<ObjectSet> {
    Ok(match mode {
        Mode::Exists => {
            let mut col = BitSet::empty(ctx.n_objects());
            for m in members {
                col.union_with(ctx.column(m));
            }
            col
        }
        Mode::ForAll => {
            let mut col = ctx.all_objects();
            for m in members {
                col.intersect_with(ctx.column(m));
            }
            col
        }
        // every threshold in (0, 1] leaves a one-member group unchanged
        Mode::Alpha if members.len() == 1 && alpha.is_none() => group_column(ctx, members, Mode::Exists, None)?,
        Mode::Alpha => {
            let alpha = alpha.ok_or_else(|| Error::argument("alpha mode needs a threshold"))?;
            let size = members.len();
            let mut col = BitSet::empty(ctx.n_objects());
            for g in 0..ctx.n_objects() {
                if meets_threshold(ctx.row(g).intersection_len(members), size, alpha) {
                    col.insert(g);
                }
            }
            col
        }
    })
}

/// Applies an attribute scheme with whatever mode it carries.
pub fn generalize_attributes(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<FormalContext> {
    if scheme.axis != Axis::Attributes {
        return Err(Error::argument("scheme groups objects, not attributes"));
    }
    scheme.validate(ctx)?;
    let groups = scheme.resolved(ctx.attribute_names());
    let cols = groups
        .iter()
        .map(|g| group_column(ctx, &g.members, scheme.mode, g.alpha.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    FormalContext::from_fn(
        ctx.name(),
        ctx.object_names().to_vec(),
        groups.into_iter().map(|g| g.name).collect(),
        |g, s| cols[s].contains(g),
    )
}

fn require_mode(scheme: &GroupingScheme, mode: Mode) -> Result<()> {
    if scheme.mode != mode {
        return Err(Error::argument(format!(
            "expected a {mode} scheme, got {}",
            scheme.mode
        )));
    }
    Ok(())
}

/// g J s iff g has some member of s.
pub fn generalize_exists(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<FormalContext> {
    require_mode(scheme, Mode::Exists)?;
    generalize_attributes(ctx, scheme)
}

/// g J s iff g has every member of s.
pub fn generalize_forall(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<FormalContext> {
    require_mode(scheme, Mode::ForAll)?;
    generalize_attributes(ctx, scheme)
}

/// g J s iff g has at least the fraction `alpha_s` of the members of s.
pub fn generalize_alpha(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<FormalContext> {
    require_mode(scheme, Mode::Alpha)?;
    generalize_attributes(ctx, scheme)
}

/// Row-wise dual: each object group becomes one generalized object.
pub fn generalize_objects(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<FormalContext> {
    if scheme.axis != Axis::Objects {
        return Err(Error::argument("scheme groups attributes, not objects"));
    }
    scheme.validate(ctx)?;
    let groups = scheme.resolved(ctx.object_names());
    let mut rows = Vec::with_capacity(groups.len());
    for group in &groups {
        let row = match scheme.mode {
            Mode::Exists => {
                let mut row = BitSet::empty(ctx.n_attributes());
                for g in &group.members {
                    row.union_with(ctx.row(g));
                }
                row
            }
            Mode::ForAll => {
                let mut row = ctx.all_attributes();
                for g in &group.members {
                    row.intersect_with(ctx.row(g));
                }
                row
            }
            Mode::Alpha => {
                let one = Fraction::from_integer(1);
                let alpha = match (&group.alpha, group.members.len()) {
                    (Some(a), _) => a,
                    (None, 1) => &one,
                    (None, _) => return Err(Error::argument("alpha mode needs a threshold")),
                };
                let size = group.members.len();
                let mut row = BitSet::empty(ctx.n_attributes());
                for m in 0..ctx.n_attributes() {
                    if meets_threshold(ctx.column(m).intersection_len(&group.members), size, alpha) {
                        row.insert(m);
                    }
                }
                row
            }
        };
        rows.push(row);
    }
    FormalContext::new(
        ctx.name(),
        groups.into_iter().map(|g| g.name).collect(),
        ctx.attribute_names().to_vec(),
        rows,
    )
}
