// The three ways to collapse attribute groups on the retail sample, and
// how each shifts the lattice size.

use genconcept::analysis::classify_scheme;
use genconcept::generalize::{generalize_attributes, SchemeDocument};
use genconcept::lattice::count_concepts;
use genconcept::samples;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let retail = samples::retail();
    println!("original: {} concepts", count_concepts(&retail)?);
    for json in [samples::EXISTS_ABCD_JSON, samples::FORALL_STUV_JSON, samples::ALPHA_EFH_JSON] {
        let scheme = SchemeDocument::from_json(json)?.resolve(&retail)?;
        let generalized = generalize_attributes(&retail, &scheme)?;
        println!("{}: {} concepts", scheme.mode, count_concepts(&generalized)?);
        print!("{}", genconcept::context::write_cxt(&generalized));
        for c in classify_scheme(&retail, &scheme)? {
            println!("  {} is {:?}", c.group, c.kind);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
