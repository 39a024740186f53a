//! Grouping proposals for the semi-automatic workflow.
//!
//! Existential flow: frequent attributes stay as they are. Infrequent ones
//! are packed greedily, most frequent first, into the first open group whose
//! union column they enlarge; a group closes once its union support reaches
//! the threshold. Whatever is left open at the end is merged into one
//! residual group, flagged when it is still below the threshold.
//!
//! Universal flow: every frequent closed intent with at least two
//! attributes is a candidate, most frequent first.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Mode;
use crate::bitset::BitSet;
use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::error::{Error, Result};
use crate::lattice::iceberg_intents;
use crate::ratio::{check_unit_threshold, Fraction, SupportValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProposalStatus {
    Pending,
    Accepted,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupingProposal {
    pub name: String,
    #[serde(skip)]
    pub members: AttributeSet,
    #[serde(rename = "members")]
    pub member_names: Vec<String>,
    pub mode: Mode,
    /// Support of the generalized attribute the group would become.
    pub support: SupportValue,
    /// Leftover group of the existential flow that may miss the threshold.
    pub residual: bool,
    pub below_threshold: bool,
    pub status: ProposalStatus,
    pub fingerprint: String,
}

/// Stable identifier of a member set: hash of the sorted names.
pub fn fingerprint<S: AsRef<str>>(mode: Mode, names: &[S]) -> String {
    let mut sorted: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
    sorted.sort_unstable();
    let mut hasher = Sha256::new();
    hasher.update(mode.to_string().as_bytes());
    for n in sorted {
        hasher.update([0x1f]);
        hasher.update(n.as_bytes());
    }
    hasher.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn proposal(
    ctx: &FormalContext,
    members: AttributeSet,
    mode: Mode,
    support: SupportValue,
    residual: bool,
    minsupp: &Fraction,
) -> GroupingProposal {
    let member_names = ctx.attribute_labels(&members);
    let sep = if mode == Mode::ForAll { "&" } else { "+" };
    GroupingProposal {
        name: member_names.join(sep),
        fingerprint: fingerprint(mode, &member_names),
        member_names,
        members,
        mode,
        below_threshold: !support.meets(minsupp),
        support,
        residual,
        status: ProposalStatus::Pending,
    }
}

pub fn propose_groupings(ctx: &FormalContext, minsupp: &Fraction, mode: Mode) -> Result<Vec<GroupingProposal>> {
    check_unit_threshold(minsupp, "minsupp")?;
    match mode {
        Mode::Exists => Ok(propose_exists(ctx, minsupp)),
        Mode::ForAll => propose_forall(ctx, minsupp),
        Mode::Alpha => Err(Error::argument("no proposal flow for alpha groupings")),
    }
}

fn propose_exists(ctx: &FormalContext, minsupp: &Fraction) -> Vec<GroupingProposal> {
    let n = ctx.n_objects();
    let mut candidates: Vec<usize> = (0..ctx.n_attributes())
        .filter(|&m| {
            let s = ctx.attribute_support(m);
            s.count > 0 && !s.meets(minsupp)
        })
        .collect();
    candidates.sort_by(|&a, &b| ctx.column(b).len().cmp(&ctx.column(a).len()).then(a.cmp(&b)));

    let mut open: Vec<(AttributeSet, ObjectSet)> = Vec::new();
    let mut out = Vec::new();
    for m in candidates {
        let col = ctx.column(m);
        let slot = open.iter().position(|(_, ext)| !col.is_subset(ext));
        let k = match slot {
            Some(k) => k,
            None => {
                open.push((BitSet::empty(ctx.n_attributes()), BitSet::empty(n)));
                open.len() - 1
            }
        };
        open[k].0.insert(m);
        open[k].1.union_with(col);
        let support = SupportValue::new(open[k].1.len(), n);
        if support.meets(minsupp) {
            let (members, _) = open.remove(k);
            out.push(proposal(ctx, members, Mode::Exists, support, false, minsupp));
        }
    }
    if !open.is_empty() {
        let mut members = BitSet::empty(ctx.n_attributes());
        let mut extent = BitSet::empty(n);
        for (m, e) in &open {
            members.union_with(m);
            extent.union_with(e);
        }
        let support = SupportValue::new(extent.len(), n);
        out.push(proposal(ctx, members, Mode::Exists, support, true, minsupp));
    }
    out
}

fn propose_forall(ctx: &FormalContext, minsupp: &Fraction) -> Result<Vec<GroupingProposal>> {
    let mut intents: Vec<(AttributeSet, SupportValue)> = iceberg_intents(ctx, minsupp)?
        .into_iter()
        .filter(|(intent, _)| intent.len() >= 2)
        .collect();
    // stable sort keeps lectic order among equal supports
    intents.sort_by_key(|(_, support)| std::cmp::Reverse(*support));
    Ok(intents
        .into_iter()
        .map(|(intent, support)| proposal(ctx, intent, Mode::ForAll, support, false, minsupp))
        .collect())
}
