// Roll airline destinations up a region taxonomy, one depth at a time.

use genconcept::generalize::{generalize_attributes, roll_up, Taxonomy};
use genconcept::lattice::count_concepts;
use genconcept::samples;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let airline = samples::airline();
    let tax = Taxonomy::from_json(samples::AIRLINE_TAXONOMY_JSON)?;
    println!("leaves: {} concepts", count_concepts(&airline)?);
    for depth in 0..=2 {
        let cut = tax.cut_at_depth(depth);
        let rolled = generalize_attributes(&airline, &roll_up(&airline, &tax, &cut)?)?;
        println!("depth {depth} {cut:?}: {} concepts", count_concepts(&rolled)?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
