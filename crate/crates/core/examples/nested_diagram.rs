// Nested line diagram data: the generalized lattice outside, the original
// inside, and which inner concepts each outer node realizes.

use genconcept::analysis::export_nested;
use genconcept::generalize::{generalize_attributes, SchemeDocument};
use genconcept::samples;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let retail = samples::retail();
    let scheme = SchemeDocument::from_json(samples::FORALL_STUV_JSON)?.resolve(&retail)?;
    let doc = export_nested(&retail, &generalize_attributes(&retail, &scheme)?)?;
    for node in &doc.nodes {
        println!("outer {}: {} inner", node.outer, node.realized.len());
    }
    let realized: usize = doc.nodes.iter().map(|n| n.realized.len()).sum();
    assert_eq!(realized, doc.apposed_count);
    println!("{}", serde_json::to_string(&doc)?.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
