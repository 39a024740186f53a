//! Group-to-group relations between an object grouping and an attribute
//! grouping.

use serde::{Deserialize, Serialize};

use super::{Axis, Group, GroupingScheme};
use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::ratio::{check_unit_threshold, meets_threshold, Fraction};

/// Selects one of the nine relation cases.
///
/// | case | A J B iff |
/// |------|-----------|
/// | 1 | some a in A has some b in B |
/// | 2 | every a in A has every b in B |
/// | 3 | every a in A has some b in B |
/// | 4 | some b in B is shared by every a in A |
/// | 5 | every b in B is held by some a in A |
/// | 6 | some a in A has every b in B |
/// | 7 | at least `alpha_A` of A hold at least `beta_B` of B each |
/// | 8 | at least `beta_B` of B are held by at least `alpha_A` of A each |
/// | 9 | the rectangle A x B has density at least `density` |
///
/// `alpha` and `beta` are defaults; a group's own `alpha` field overrides
/// them (object groups give `alpha_A`, attribute groups give `beta_B`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperRelationSpec {
    pub case: u8,
    #[serde(default, with = "crate::ratio::serde_fraction::option", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Fraction>,
    #[serde(default, with = "crate::ratio::serde_fraction::option", skip_serializing_if = "Option::is_none")]
    pub beta: Option<Fraction>,
    #[serde(default, with = "crate::ratio::serde_fraction::option", skip_serializing_if = "Option::is_none")]
    pub density: Option<Fraction>,
}

impl HyperRelationSpec {
    pub fn case(case: u8) -> Self {
        HyperRelationSpec {
            case,
            alpha: None,
            beta: None,
            density: None,
        }
    }

    pub fn thresholds(case: u8, alpha: Fraction, beta: Fraction) -> Self {
        HyperRelationSpec {
            case,
            alpha: Some(alpha),
            beta: Some(beta),
            density: None,
        }
    }

    pub fn density(density: Fraction) -> Self {
        HyperRelationSpec {
            case: 9,
            alpha: None,
            beta: None,
            density: Some(density),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(1..=9).contains(&self.case) {
            return Err(Error::argument(format!("hypercontext case {} is not in 1..=9", self.case)));
        }
        for (t, what) in [(&self.alpha, "alpha"), (&self.beta, "beta"), (&self.density, "density")] {
            if let Some(t) = t {
                check_unit_threshold(t, what)?;
            }
        }
        if self.case == 9 && self.density.is_none() {
            return Err(Error::argument("case 9 needs a density threshold"));
        }
        Ok(())
    }
}

fn threshold(group: &Group, default: Option<&Fraction>, what: &str) -> Result<Fraction> {
    let t = group
        .alpha
        .as_ref()
        .or(default)
        .copied()
        .ok_or_else(|| Error::argument(format!("no {what} threshold for group {:?}", group.name)))?;
    check_unit_threshold(&t, what)?;
    Ok(t)
}

fn related(ctx: &FormalContext, a: &Group, b: &Group, spec: &HyperRelationSpec) -> Result<bool> {
    let objs = &a.members;
    let attrs = &b.members;
    let hits = |g: usize| ctx.row(g).intersection_len(attrs);
    let held = |m: usize| ctx.column(m).intersection_len(objs);
    Ok(match spec.case {
        1 => objs.iter().any(|g| hits(g) > 0),
        2 => objs.iter().all(|g| hits(g) == attrs.len()),
        3 => objs.iter().all(|g| hits(g) > 0),
        4 => attrs.iter().any(|m| held(m) == objs.len()),
        5 => attrs.iter().all(|m| held(m) > 0),
        6 => objs.iter().any(|g| hits(g) == attrs.len()),
        7 => {
            let alpha = threshold(a, spec.alpha.as_ref(), "alpha")?;
            let beta = threshold(b, spec.beta.as_ref(), "beta")?;
            let rich = objs.iter().filter(|&g| meets_threshold(hits(g), attrs.len(), &beta)).count();
            meets_threshold(rich, objs.len(), &alpha)
        }
        8 => {
            let alpha = threshold(a, spec.alpha.as_ref(), "alpha")?;
            let beta = threshold(b, spec.beta.as_ref(), "beta")?;
            let common = attrs.iter().filter(|&m| meets_threshold(held(m), objs.len(), &alpha)).count();
            meets_threshold(common, attrs.len(), &beta)
        }
        9 => {
            let density = spec.density.as_ref().expect("validated");
            let cells: usize = objs.iter().map(hits).sum();
            meets_threshold(cells, objs.len() * attrs.len(), density)
        }
        _ => unreachable!("validated"),
    })
}

/// Context whose objects are the object groups and whose attributes are the
/// attribute groups, related according to `spec`. The schemes' modes are
/// ignored.
pub fn hypercontext(
    ctx: &FormalContext,
    objects: &GroupingScheme,
    attributes: &GroupingScheme,
    spec: &HyperRelationSpec,
) -> Result<FormalContext> {
    if objects.axis != Axis::Objects || attributes.axis != Axis::Attributes {
        return Err(Error::argument("hypercontext needs an object scheme and an attribute scheme"));
    }
    spec.validate()?;
    objects.validate(ctx)?;
    attributes.validate(ctx)?;
    let a_groups = objects.resolved(ctx.object_names());
    let b_groups = attributes.resolved(ctx.attribute_names());
    let mut rows = Vec::with_capacity(a_groups.len());
    for a in &a_groups {
        let mut row = BitSet::empty(b_groups.len());
        for (j, b) in b_groups.iter().enumerate() {
            if related(ctx, a, b, spec)? {
                row.insert(j);
            }
        }
        rows.push(row);
    }
    FormalContext::new(
        ctx.name(),
        a_groups.into_iter().map(|g| g.name).collect(),
        b_groups.into_iter().map(|g| g.name).collect(),
        rows,
    )
}
