// Mine strong rules before and after generalizing, and compare.

use genconcept::generalize::{generalize_attributes, SchemeDocument};
use genconcept::rules::{diff_rulesets, mine_strong_rules};
use genconcept::{samples, Fraction};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let retail = samples::retail();
    let scheme = SchemeDocument::from_json(samples::EXISTS_ABCD_JSON)?.resolve(&retail)?;
    let generalized = generalize_attributes(&retail, &scheme)?;
    let (minsupp, minconf) = (Fraction::new(1, 4), Fraction::new(3, 4));
    let before = mine_strong_rules(&retail, &minsupp, &minconf)?;
    let after = mine_strong_rules(&generalized, &minsupp, &minconf)?;
    for r in &after {
        let n = r.named(&generalized);
        println!("{:?} -> {:?}  supp {} conf {}", n.premise, n.conclusion, n.support, n.confidence);
    }
    let diff = diff_rulesets(&retail, &before, &generalized, &after, &scheme)?;
    println!(
        "{} rules only before, {} only after, {} shared, {} collapsed",
        diff.only_before.len(),
        diff.only_after.len(),
        diff.shared.len(),
        diff.collapsed
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
