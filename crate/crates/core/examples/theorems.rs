// Universal grouping never grows a lattice; existential grouping of a
// distributive lattice never does either.

use genconcept::analysis::{verify_exists_distributive, verify_forall_theorem, TheoremOutcome};
use genconcept::generalize::{Axis, GroupingScheme, Mode};
use genconcept::{samples, BitSet};

fn pairs(n: usize, mode: Mode) -> Result<GroupingScheme, genconcept::Error> {
    let mut s = GroupingScheme::new(Axis::Attributes, mode, n, true);
    for i in (0..n - 1).step_by(2) {
        s.push(&format!("p{i}"), BitSet::from_indices(n, [i, i + 1]).expect("pair in range"), None)?;
    }
    Ok(s)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let retail = samples::retail();
    let r = verify_forall_theorem(&retail, &pairs(retail.n_attributes(), Mode::ForAll)?)?;
    println!("forall on retail: {} -> {}", r.report.size_before, r.report.size_after);

    for ctx in [samples::contranominal(4), samples::chain(4), retail] {
        match verify_exists_distributive(&ctx, &pairs(ctx.n_attributes(), Mode::Exists)?)? {
            TheoremOutcome::Holds(r) => println!("{}: {} -> {}", ctx.name(), r.size_before, r.size_after),
            TheoremOutcome::Inapplicable { reason } => println!("{}: {reason}", ctx.name()),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
