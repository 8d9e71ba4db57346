//! One line per acceptance criterion. A criterion that does not hold is
//! reported as FAIL; the target itself fails only if a sweep cannot run.

use std::time::Instant;

use msegcalc::verify::{self, Outcome};

mod invariants;

fn report(o: &Outcome) {
    println!("{}", o.line());
    for f in o.failures.iter().take(12) {
        println!("    - {f}");
    }
    if o.failures.len() > 12 {
        println!("    ... {} more", o.failures.len() - 12);
    }
    for n in &o.notes {
        println!("    note: {n}");
    }
}

fn main() {
    let start = Instant::now();
    let mut outcomes = verify::run("all").expect("suite names are valid");
    outcomes.push(invariants::run(10_000));
    outcomes.sort_by_key(|o| o.criterion);
    println!();
    for o in &outcomes {
        report(o);
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("{passed}/{} sweeps passed in {:.1?}", outcomes.len(), start.elapsed());
}
