use serde::{Deserialize, Serialize};

use super::{axis_len, axis_names, Axis, GroupingScheme, Mode};
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::ratio::{serde_fraction, Fraction};

fn format_version() -> u32 {
    1
}

/// Name-based JSON form of a [`GroupingScheme`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDocument {
    #[serde(default = "format_version")]
    pub format_version: u32,
    pub axis: Axis,
    pub mode: Mode,
    #[serde(default)]
    pub keep_ungrouped: bool,
    pub groups: Vec<GroupDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub name: String,
    pub members: Vec<String>,
    #[serde(default, with = "serde_fraction::option", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Fraction>,
}

impl SchemeDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SchemeDocument = serde_json::from_str(text)?;
        if doc.format_version != 1 {
            return Err(Error::Format(format!(
                "unsupported scheme format_version {}",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme documents always serialize")
    }

    /// Resolves member names against `ctx` and validates the result.
    pub fn resolve(&self, ctx: &FormalContext) -> Result<GroupingScheme> {
        let mut scheme = GroupingScheme::new(self.axis, self.mode, axis_len(ctx, self.axis), self.keep_ungrouped);
        for g in &self.groups {
            let members = match self.axis {
                Axis::Attributes => ctx.attributes_named(&g.members)?,
                Axis::Objects => ctx.objects_named(&g.members)?,
            };
            scheme.push(&g.name, members, g.alpha)?;
        }
        scheme.validate(ctx)?;
        Ok(scheme)
    }

    pub fn from_scheme(scheme: &GroupingScheme, ctx: &FormalContext) -> Self {
        let names = axis_names(ctx, scheme.axis);
        SchemeDocument {
            format_version: 1,
            axis: scheme.axis,
            mode: scheme.mode,
            keep_ungrouped: scheme.keep_ungrouped,
            groups: scheme
                .groups
                .iter()
                .map(|g| GroupDocument {
                    name: g.name.clone(),
                    members: g.members.iter().map(|i| names[i].clone()).collect(),
                    alpha: g.alpha,
                })
                .collect(),
        }
    }
}
