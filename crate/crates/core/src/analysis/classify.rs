use serde::Serialize;

use crate::context::{AttributeSet, FormalContext};
use crate::error::{Error, Result};
use crate::generalize::{group_column, Axis, GroupingScheme, Mode};
use crate::ratio::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    /// Every member column lies inside the group column.
    Generalization,
    /// The group column lies inside every member column.
    Specialization,
    Equivalent,
    Approximation,
}

/// Objects separating the group column from one member column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberWitness {
    pub member: String,
    /// Objects having the member but not the group.
    pub member_only: Vec<String>,
    /// Objects having the group but not the member.
    pub group_only: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenClassification {
    pub group: String,
    pub kind: ClassKind,
    pub witnesses: Vec<MemberWitness>,
}

/// Compares the group column with each member column.
pub fn classify_group(
    ctx: &FormalContext,
    name: &str,
    members: &AttributeSet,
    mode: Mode,
    alpha: Option<&Fraction>,
) -> Result<GenClassification> {
    if members.is_empty() {
        return Err(Error::argument(format!("group {name:?} is empty")));
    }
    let column = group_column(ctx, members, mode, alpha)?;
    let mut general = true;
    let mut special = true;
    let mut witnesses = Vec::new();
    for m in members {
        let member_only = ctx.column(m).difference(&column);
        let group_only = column.difference(ctx.column(m));
        general &= member_only.is_empty();
        special &= group_only.is_empty();
        if !member_only.is_empty() || !group_only.is_empty() {
            witnesses.push(MemberWitness {
                member: ctx.attribute_names()[m].clone(),
                member_only: ctx.object_labels(&member_only),
                group_only: ctx.object_labels(&group_only),
            });
        }
    }
    let kind = match (general, special) {
        (true, true) => ClassKind::Equivalent,
        (true, false) => ClassKind::Generalization,
        (false, true) => ClassKind::Specialization,
        (false, false) => ClassKind::Approximation,
    };
    Ok(GenClassification {
        group: name.to_string(),
        kind,
        witnesses,
    })
}

/// Classifies every declared group of an attribute scheme.
pub fn classify_scheme(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<Vec<GenClassification>> {
    if scheme.axis != Axis::Attributes {
        return Err(Error::argument("classification needs an attribute scheme"));
    }
    scheme.validate(ctx)?;
    scheme
        .groups
        .iter()
        .map(|g| classify_group(ctx, &g.name, &g.members, scheme.mode, g.alpha.as_ref()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::BitSet;
    use crate::samples;
    use crate::testing::random_context;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sixty_percent_of_abc_is_an_approximation() {
        let ctx = samples::retail();
        let e = ctx.attributes_named(&["a", "b", "c"]).unwrap();
        let c = classify_group(&ctx, "E", &e, Mode::Alpha, Some(&Fraction::new(3, 5))).unwrap();
        assert_eq!(c.kind, ClassKind::Approximation);
        let b = c.witnesses.iter().find(|w| w.member == "b").unwrap();
        assert_eq!(b.member_only, ["4"]);
        assert_eq!(b.group_only, ["5"]);
    }

    #[test]
    fn singletons_are_equivalent() {
        let ctx = samples::retail();
        for m in 0..ctx.n_attributes() {
            let set = BitSet::from_indices(ctx.n_attributes(), [m]).unwrap();
            for mode in [Mode::Exists, Mode::ForAll] {
                let c = classify_group(&ctx, "x", &set, mode, None).unwrap();
                assert_eq!(c.kind, ClassKind::Equivalent);
                assert!(c.witnesses.is_empty());
            }
            let c = classify_group(&ctx, "x", &set, Mode::Alpha, Some(&Fraction::new(1, 2))).unwrap();
            assert_eq!(c.kind, ClassKind::Equivalent);
        }
    }

    #[test]
    fn quantifier_modes_never_approximate() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let ctx = random_context(&mut rng, 10, 8);
            let mut members = BitSet::empty(ctx.n_attributes());
            for m in 0..ctx.n_attributes() {
                if rng.random_bool(0.5) {
                    members.insert(m);
                }
            }
            if members.is_empty() {
                members.insert(0);
            }
            let e = classify_group(&ctx, "g", &members, Mode::Exists, None).unwrap().kind;
            assert!(matches!(e, ClassKind::Generalization | ClassKind::Equivalent));
            let a = classify_group(&ctx, "g", &members, Mode::ForAll, None).unwrap().kind;
            assert!(matches!(a, ClassKind::Specialization | ClassKind::Equivalent));
        }
    }

    #[test]
    fn empty_group_is_rejected() {
        let ctx = samples::retail();
        assert!(classify_group(&ctx, "e", &BitSet::empty(8), Mode::Exists, None).is_err());
    }
}
