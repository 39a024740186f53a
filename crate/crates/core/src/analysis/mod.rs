//! How a generalization changes the lattice: classification of generalized
//! attributes, size reports, the maps from original to generalized
//! concepts, projection classes and the size theorems.

mod classify;
mod maps;
mod nested;
mod theorems;

pub use classify::{classify_group, classify_scheme, ClassKind, GenClassification, MemberWitness};
pub use maps::{build_phi, build_psi, check_surjective, is_order_preserving, phi_below_psi, ConceptMap, MapKind};
pub use nested::{export_nested, NestedDocument, OuterNode};
pub use theorems::{
    case1_greatest_elements, union_columns_are_extents, verify_exists_distributive, verify_forall_theorem,
    ForallReport, ReducibleWitness, TheoremOutcome,
};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::context::{AttributeSet, FormalContext};
use crate::error::{Error, Result};
use crate::generalize::{generalize_attributes, Axis, GroupingScheme};
use crate::lattice::{count_concepts_with, ConceptId, ConceptLattice, DEFAULT_CONCEPT_CEILING};
use crate::ratio::{serde_fraction, Fraction};

/// Concept counts after each group is applied on its own, in declared
/// order, with all later groups still ungrouped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeStep {
    pub group: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub size_before: usize,
    pub size_after: usize,
    pub delta: i64,
    /// `size_before / size_after`.
    #[serde(with = "serde_fraction")]
    pub ratio: Fraction,
    /// Concept count of the original context apposed with the generalized
    /// one, when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apposed: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<SizeStep>,
}

impl SizeReport {
    pub fn new(size_before: usize, size_after: usize) -> Self {
        SizeReport {
            size_before,
            size_after,
            delta: size_after as i64 - size_before as i64,
            ratio: Fraction::new(size_before as u64, size_after.max(1) as u64),
            apposed: None,
            steps: Vec::new(),
        }
    }

    pub fn increased(&self) -> bool {
        self.size_after > self.size_before
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "concepts before: {}\nconcepts after:  {}\ndelta: {:+}\nratio: {}\n",
            self.size_before,
            self.size_after,
            self.delta,
            crate::ratio::format_fraction(&self.ratio)
        );
        if let Some(a) = self.apposed {
            out.push_str(&format!("apposed: {a}\n"));
        }
        for s in &self.steps {
            out.push_str(&format!("  after {}: {}\n", s.group, s.size));
        }
        if self.increased() {
            out.push_str("warning: generalization increased the number of concepts\n");
        }
        out
    }
}

/// Counts before and after applying `scheme`, plus the apposed count.
pub fn size_report(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<SizeReport> {
    size_report_with(ctx, scheme, DEFAULT_CONCEPT_CEILING)
}

pub fn size_report_with(ctx: &FormalContext, scheme: &GroupingScheme, ceiling: usize) -> Result<SizeReport> {
    let generalized = generalize_attributes(ctx, scheme)?;
    let mut report = SizeReport::new(count_concepts_with(ctx, ceiling)?, count_concepts_with(&generalized, ceiling)?);
    report.apposed = Some(count_concepts_with(&ctx.apposition(&generalized)?, ceiling)?);
    Ok(report)
}

/// Applies the groups one at a time and records the count after each step.
pub fn stepwise_sizes(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<Vec<SizeStep>> {
    if scheme.axis != Axis::Attributes {
        return Err(Error::argument("stepwise sizes need an attribute scheme"));
    }
    let mut steps = Vec::new();
    for k in 1..=scheme.groups.len() {
        let mut prefix = GroupingScheme::new(Axis::Attributes, scheme.mode, ctx.n_attributes(), true);
        for g in &scheme.groups[..k] {
            prefix.push(&g.name, g.members.clone(), g.alpha)?;
        }
        let size = count_concepts_with(&generalize_attributes(ctx, &prefix)?, DEFAULT_CONCEPT_CEILING)?;
        steps.push(SizeStep {
            group: scheme.groups[k - 1].name.clone(),
            size,
        });
    }
    Ok(steps)
}

/// The original context apposed with its generalization, and the positions
/// of the generalized attributes inside it.
pub fn appose_generalized(ctx: &FormalContext, generalized: &FormalContext) -> Result<(FormalContext, AttributeSet)> {
    let apposed = ctx.apposition(generalized)?;
    let s = BitSet::from_indices(apposed.n_attributes(), ctx.n_attributes()..apposed.n_attributes())
        .expect("indices lie inside the apposed context");
    Ok((apposed, s))
}

/// Concepts grouped by the restriction of their intent to `s`, in order of
/// first appearance.
pub fn projection_classes(lat: &ConceptLattice, s: &AttributeSet) -> Result<Vec<Vec<ConceptId>>> {
    if s.universe() != lat.context().n_attributes() {
        return Err(Error::Dimension {
            what: "projection attribute set",
            index: s.universe(),
            size: lat.context().n_attributes(),
        });
    }
    let mut classes: Vec<Vec<ConceptId>> = Vec::new();
    let mut index: std::collections::HashMap<AttributeSet, usize> = std::collections::HashMap::new();
    for (id, c) in lat.concepts().iter().enumerate() {
        let key = c.intent.intersection(s);
        let k = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(id);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generalize::{Mode, SchemeDocument};
    use crate::lattice::{count_concepts, enumerate_concepts};
    use crate::samples;

    fn merge_m1_m2() -> (FormalContext, GroupingScheme) {
        let ctx = samples::small();
        let scheme = SchemeDocument::from_json(samples::MERGE_M1_M2_JSON).unwrap().resolve(&ctx).unwrap();
        (ctx, scheme)
    }

    #[test]
    fn counterexample_grows_by_one() {
        let (ctx, scheme) = merge_m1_m2();
        let report = size_report(&ctx, &scheme).unwrap();
        assert_eq!((report.size_before, report.size_after, report.delta), (7, 8, 1));
        assert_eq!(report.ratio, Fraction::new(7, 8));
        assert!(report.increased());
        assert!(report.to_text().contains("warning"));
        assert_eq!(report.ratio * Fraction::from_integer(8), Fraction::from_integer(7));
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["ratio"], "7/8");
    }

    #[test]
    fn steps_end_at_the_full_generalization() {
        let ctx = samples::retail();
        let scheme = SchemeDocument::from_json(samples::EXISTS_ABCD_JSON).unwrap().resolve(&ctx).unwrap();
        let steps = stepwise_sizes(&ctx, &scheme).unwrap();
        assert_eq!(steps.len(), 4);
        assert_eq!(steps[3].size, count_concepts(&generalize_attributes(&ctx, &scheme).unwrap()).unwrap());
    }

    #[test]
    fn projection_class_counts() {
        let retail = samples::retail();
        for text in [samples::EXISTS_ABCD_JSON, samples::FORALL_STUV_JSON, samples::ALPHA_EFH_JSON] {
            let scheme = SchemeDocument::from_json(text).unwrap().resolve(&retail).unwrap();
            let generalized = generalize_attributes(&retail, &scheme).unwrap();
            let (apposed, s) = appose_generalized(&retail, &generalized).unwrap();
            let lat = enumerate_concepts(&apposed).unwrap();
            let classes = projection_classes(&lat, &s).unwrap();
            assert_eq!(classes.len(), count_concepts(&generalized).unwrap());
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), lat.len());
            let all = projection_classes(&lat, &apposed.all_attributes()).unwrap();
            assert!(all.iter().all(|c| c.len() == 1));
            let none = projection_classes(&lat, &BitSet::empty(apposed.n_attributes())).unwrap();
            assert_eq!(none.len(), 1);
        }
    }

    #[test]
    fn forall_apposition_keeps_the_count() {
        let retail = samples::retail();
        let scheme = GroupingScheme::from_names(
            &retail,
            Axis::Attributes,
            Mode::ForAll,
            &[("S", &["e", "g"]), ("T", &["b", "c"]), ("U", &["a", "d"]), ("V", &["f", "h"])],
            false,
        )
        .unwrap();
        let report = size_report(&retail, &scheme).unwrap();
        assert_eq!(report.apposed, Some(report.size_before));
        assert!(report.size_after <= report.size_before);
    }
}
