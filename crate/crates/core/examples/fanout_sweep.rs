// Random contexts grouped at several fanouts: coarser groupings shrink
// lattices a lot, while pairwise merges sometimes grow them.

use genconcept::generalize::Mode;
use genconcept::synth::{median_ratio_by_fanout, plot_data_csv, sweep, SweepGrid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = SweepGrid::single(50, 25, 0.3, &[2, 5, 10], Mode::Exists, 40);
    let records = sweep(&grid)?;
    let grew = records.iter().filter(|r| r.ratio().is_some_and(|x| x < 1.0)).count();
    print!("{}", plot_data_csv(&median_ratio_by_fanout(&records)));
    println!("{grew} of {} groupings grew the lattice", records.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
