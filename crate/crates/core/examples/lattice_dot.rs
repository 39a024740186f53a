// Enumerate a lattice and render it for Graphviz.

use genconcept::lattice::{enumerate_concepts, to_dot};
use genconcept::samples;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = enumerate_concepts(&samples::retail())?;
    let dot = to_dot(&lat);
    assert!(dot.starts_with("digraph"));
    println!("{dot}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
