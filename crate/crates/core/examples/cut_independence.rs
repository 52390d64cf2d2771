//! `si→` does not depend on where the walk is cut, and the finite piece
//! between two cuts carries no index.

use qwalk::indices::{verify_cut_independence, IndexOptions};
use qwalk::models::{AngleProfile, Walk};

fn main() -> qwalk::Result<()> {
    let c = |t| AngleProfile::Constant(t);
    let walks = [
        ("split-step (1.3, 0.4)", Walk::split_step(c(1.3), c(0.4))),
        ("split-step (-2.4, 0.35)", Walk::split_step(c(-2.4), c(0.35))),
        ("four-step (0.9, -0.7, 0.4)", Walk::four_step(c(0.9), c(-0.7), c(0.4), true)),
    ];
    for (name, walk) in &walks {
        let r = verify_cut_independence(walk, -10, 10, &IndexOptions::default())?;
        println!(
            "{name}: si-> at {} = {:+}, at {} = {:+}, si(W_C) = {}",
            r.cuts.0, r.si_right_first.value, r.cuts.1, r.si_right_second.value, r.si_middle.value
        );
    }
    Ok(())
}
