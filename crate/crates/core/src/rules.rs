//! Association rules mined from closed itemsets, and a descriptive diff
//! between rule sets before and after generalization.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::context::{AttributeSet, FormalContext};
use crate::error::{Error, Result};
use crate::generalize::{Axis, GroupingScheme};
use crate::lattice::iceberg_intents;
use crate::ratio::{check_unit_threshold, format_fraction, meets_threshold, Fraction, SupportValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationRule {
    pub premise: AttributeSet,
    pub conclusion: AttributeSet,
    /// Support of premise and conclusion together.
    pub support: SupportValue,
    /// `supp(premise ∪ conclusion) / supp(premise)`.
    pub confidence: Fraction,
}

impl AssociationRule {
    /// Computes support and confidence from the context. The premise must
    /// occur at least once.
    pub fn new(ctx: &FormalContext, premise: AttributeSet, conclusion: AttributeSet) -> Result<Self> {
        if !premise.is_disjoint(&conclusion) {
            return Err(Error::argument("premise and conclusion overlap"));
        }
        let base = ctx.derive_attributes(&premise)?.len();
        if base == 0 {
            return Err(Error::argument("premise never occurs"));
        }
        let both = ctx.derive_attributes(&premise.union(&conclusion))?.len();
        Ok(AssociationRule {
            support: SupportValue::new(both, ctx.n_objects()),
            confidence: Fraction::new(both as u64, base as u64),
            premise,
            conclusion,
        })
    }

    pub fn is_implication(&self) -> bool {
        *self.confidence.numer() == *self.confidence.denom()
    }

    pub fn named(&self, ctx: &FormalContext) -> NamedRule {
        NamedRule {
            premise: ctx.attribute_labels(&self.premise),
            conclusion: ctx.attribute_labels(&self.conclusion),
            support: self.support.to_string(),
            confidence: format_fraction(&self.confidence),
        }
    }
}

/// Output form of a rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedRule {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
    pub support: String,
    pub confidence: String,
}

/// Every object with all of `y` also has all of `z`.
pub fn is_valid_implication(ctx: &FormalContext, y: &AttributeSet, z: &AttributeSet) -> Result<bool> {
    Ok(ctx.derive_attributes(y)?.is_subset(&ctx.derive_attributes(z)?))
}

/// Strong rules of two kinds, ordered lectically by premise and then by
/// conclusion:
///
/// * exact rules `Y -> Y'' \ Y` where `Y` is a frequent minimal generator
///   (no proper subset has the same extent);
/// * approximate rules `B1 -> B2 \ B1` for frequent closed intents
///   `B1 ⊂ B2` with confidence at least `minconf`.
///
/// Distinct closed intents never have equal support, so the exact rules
/// cannot come from closed pairs alone.
pub fn mine_strong_rules(ctx: &FormalContext, minsupp: &Fraction, minconf: &Fraction) -> Result<Vec<AssociationRule>> {
    check_unit_threshold(minsupp, "minimum support")?;
    check_unit_threshold(minconf, "minimum confidence")?;
    let n = ctx.n_objects();
    let mut rules: Vec<AssociationRule> = frequent_generators(ctx, minsupp)
        .into_iter()
        .filter_map(|(y, count)| {
            let closure = ctx.intent_of(&ctx.extent_of(&y));
            let conclusion = closure.difference(&y);
            (!conclusion.is_empty()).then(|| AssociationRule {
                premise: y,
                conclusion,
                support: SupportValue::new(count, n),
                confidence: Fraction::from_integer(1),
            })
        })
        .collect();
    // every subset of a frequent set is frequent, so premises come from the
    // same list
    let frequent = iceberg_intents(ctx, minsupp)?;
    let approximate: Vec<Vec<AssociationRule>> = frequent
        .par_iter()
        .map(|(b1, s1)| {
            frequent
                .iter()
                .filter(|(b2, _)| b2 != b1 && b1.is_subset(b2))
                .filter(|(_, s2)| meets_threshold(s2.count, s1.count, minconf))
                .map(|(b2, s2)| AssociationRule {
                    premise: b1.clone(),
                    conclusion: b2.difference(b1),
                    support: *s2,
                    confidence: Fraction::new(s2.count as u64, s1.count as u64),
                })
                .collect()
        })
        .collect();
    rules.extend(approximate.into_iter().flatten());
    rules.sort_by(|a, b| a.premise.lectic_cmp(&b.premise).then(a.conclusion.lectic_cmp(&b.conclusion)));
    Ok(rules)
}

/// Frequent minimal generators with their extent sizes, found level by
/// level: a set is a minimal generator iff each of its immediate subsets is
/// one and has a strictly larger extent.
fn frequent_generators(ctx: &FormalContext, minsupp: &Fraction) -> Vec<(AttributeSet, usize)> {
    let n = ctx.n_objects();
    let empty = AttributeSet::empty(ctx.n_attributes());
    let mut known: HashMap<AttributeSet, usize> = HashMap::new();
    let mut level = vec![(empty.clone(), ctx.all_objects())];
    known.insert(empty, n);
    let mut out = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for (y, extent) in &level {
            if !meets_threshold(extent.len(), n, minsupp) {
                continue;
            }
            out.push((y.clone(), extent.len()));
            let start = y.iter().last().map_or(0, |m| m + 1);
            for m in start..ctx.n_attributes() {
                let z_extent = extent.intersection(ctx.column(m));
                let mut z = y.clone();
                z.insert(m);
                let is_key = z.iter().all(|x| {
                    let mut sub = z.clone();
                    sub.remove(x);
                    known.get(&sub).is_some_and(|&c| c > z_extent.len())
                });
                if is_key {
                    next.push((z, z_extent));
                }
            }
        }
        for (z, e) in &next {
            known.insert(z.clone(), e.len());
        }
        level = next;
    }
    out
}

/// A rule keyed by names, after renaming through a grouping.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RuleKey {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleDiff {
    pub only_before: Vec<RuleKey>,
    pub only_after: Vec<RuleKey>,
    pub shared: Vec<RuleKey>,
    /// Rules from before whose conclusion vanished after renaming, because
    /// every conclusion item landed in a premise group.
    pub collapsed: usize,
}

fn key(premise: BTreeSet<String>, conclusion: BTreeSet<String>) -> Option<RuleKey> {
    let conclusion: Vec<String> = conclusion.difference(&premise).cloned().collect();
    if conclusion.is_empty() {
        return None;
    }
    Some(RuleKey {
        premise: premise.into_iter().collect(),
        conclusion,
    })
}

/// Compares rules mined on `before_ctx` with rules mined on its
/// generalization `after_ctx`. Every grouped attribute is renamed to its
/// group; the scheme must not put an attribute in two groups.
pub fn diff_rulesets(
    before_ctx: &FormalContext,
    before: &[AssociationRule],
    after_ctx: &FormalContext,
    after: &[AssociationRule],
    scheme: &GroupingScheme,
) -> Result<RuleDiff> {
    if scheme.axis != Axis::Attributes {
        return Err(Error::argument("rule diff needs an attribute scheme"));
    }
    scheme.validate(before_ctx)?;
    let resolved = scheme.resolved(before_ctx.attribute_names());
    let resolved_names: Vec<&str> = resolved.iter().map(|g| g.name.as_str()).collect();
    if resolved_names != after_ctx.attribute_names().iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(Error::argument("generalized context does not match the scheme"));
    }
    let mut rename: Vec<String> = before_ctx.attribute_names().to_vec();
    let mut owned = vec![false; before_ctx.n_attributes()];
    for g in &resolved {
        for m in &g.members {
            if owned[m] {
                return Err(Error::argument(format!(
                    "attribute {:?} belongs to two groups",
                    before_ctx.attribute_names()[m]
                )));
            }
            owned[m] = true;
            rename[m] = g.name.clone();
        }
    }
    let names = |set: &AttributeSet, table: &[String]| -> BTreeSet<String> { set.iter().map(|m| table[m].clone()).collect() };

    let mut collapsed = 0;
    let mut before_keys = BTreeSet::new();
    for r in before {
        match key(names(&r.premise, &rename), names(&r.conclusion, &rename)) {
            Some(k) => {
                before_keys.insert(k);
            }
            None => collapsed += 1,
        }
    }
    let after_keys: BTreeSet<RuleKey> = after
        .iter()
        .filter_map(|r| key(names(&r.premise, after_ctx.attribute_names()), names(&r.conclusion, after_ctx.attribute_names())))
        .collect();
    Ok(RuleDiff {
        only_before: before_keys.difference(&after_keys).cloned().collect(),
        only_after: after_keys.difference(&before_keys).cloned().collect(),
        shared: before_keys.intersection(&after_keys).cloned().collect(),
        collapsed,
    })
}

/// CSV with columns `premise,conclusion,support,confidence`; items inside a
/// cell are separated by spaces.
pub fn rules_to_csv(ctx: &FormalContext, rules: &[AssociationRule]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["premise", "conclusion", "support", "confidence"])?;
    for r in rules {
        let n = r.named(ctx);
        w.write_record([n.premise.join(" "), n.conclusion.join(" "), n.support, n.confidence])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct RulesDocument {
    format_version: u32,
    rules: Vec<NamedRule>,
}

pub fn rules_to_json(ctx: &FormalContext, rules: &[AssociationRule]) -> String {
    let doc = RulesDocument {
        format_version: 1,
        rules: rules.iter().map(|r| r.named(ctx)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("rule documents always serialize")
}
