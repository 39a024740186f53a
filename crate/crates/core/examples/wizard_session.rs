// Drive a grouping session without the HTTP layer: look at the proposals,
// accept one, and see the lattice size change.

use genconcept::generalize::Mode;
use genconcept::service::WizardSession;
use genconcept::{samples, Fraction};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut session = WizardSession::create("demo", samples::small(), Fraction::new(3, 5), Mode::Exists, 100_000)?;
    let proposals = session.proposals()?;
    for p in &proposals {
        println!("{} {:?} supp {}", p.fingerprint, p.member_names, p.support);
    }
    let first = proposals.first().ok_or("no proposals")?;
    session.accept(&first.fingerprint, Some("merged"))?;
    let state = session.state()?;
    println!("{:?} -> {:?}, increased: {}", state.size_before, state.size_current, state.increased);
    print!("{}", genconcept::context::write_cxt(&session.generalized()?));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
