// Group objects and attributes at once and relate the groups by one of
// the quantifier cases.

use genconcept::generalize::{hypercontext, Axis, GroupingScheme, HyperRelationSpec, Mode};
use genconcept::{samples, Fraction};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let retail = samples::retail();
    let objects = GroupingScheme::from_names(&retail, Axis::Objects, Mode::Exists, &[("early", &["1", "2", "3", "4"][..]), ("late", &["5", "6", "7", "8"][..])], false)?;
    let attributes = GroupingScheme::singletons(&retail, Axis::Attributes, Mode::Exists);
    for spec in [
        HyperRelationSpec::case(1),
        HyperRelationSpec::case(2),
        HyperRelationSpec::thresholds(7, Fraction::new(1, 2), Fraction::new(1, 1)),
    ] {
        let h = hypercontext(&retail, &objects, &attributes, &spec)?;
        println!("case {}:", spec.case);
        print!("{}", genconcept::context::write_cxt(&h));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
