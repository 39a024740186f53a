// Merging two attributes existentially can make the concept lattice
// larger: the six-attribute sample has 7 concepts, the merged one has 8.

use genconcept::analysis::size_report;
use genconcept::generalize::SchemeDocument;
use genconcept::lattice::enumerate_concepts;
use genconcept::samples;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = samples::small();
    let scheme = SchemeDocument::from_json(samples::MERGE_M1_M2_JSON)?.resolve(&ctx)?;
    let report = size_report(&ctx, &scheme)?;
    println!("{}", report.to_text());
    assert_eq!((report.size_before, report.size_after), (7, 8));

    let merged = genconcept::generalize::generalize_attributes(&ctx, &scheme)?;
    for c in enumerate_concepts(&merged)?.concepts() {
        println!("{:?} / {:?}", merged.object_labels(&c.extent), merged.attribute_labels(&c.intent));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
