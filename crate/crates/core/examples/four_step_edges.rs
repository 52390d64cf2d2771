//! Gentle and reflection decoupling of the garnished four-step walk: the
//! column marginals agree, the individual entries do not.

use qwalk::indices::{compare_gentle_vs_local, walk_winding, HalfLineResult, IndexOptions};
use qwalk::models::{AngleProfile, Walk};

fn show(name: &str, r: &HalfLineResult) {
    let t = &r.table;
    println!("{name}:");
    println!("  W_L: si+ {:+} si- {:+}  si<- {:+}", t.si_plus_left.value, t.si_minus_left.value, t.si_left.value);
    println!("  W_R: si+ {:+} si- {:+}  si-> {:+}", t.si_plus_right.value, t.si_minus_right.value, t.si_right.value);
    println!("  row sums: si+ {:+} si- {:+}  si {:+}", t.si_plus.value, t.si_minus.value, t.si_total.value);
    for (region, spaces) in [("left", &r.left), ("right", &r.right)] {
        for lambda in [1.0, -1.0] {
            let (rep, keep) = spaces.counted(lambda);
            for i in (0..rep.dimension).filter(|&i| keep[i]) {
                let chi = rep.chiralities.as_ref().map_or(0.0, |c| c[i]);
                println!(
                    "    {region} edge state at {lambda:+}: center {:.2}, chirality {chi:+.3}",
                    rep.profiles[i].center
                );
            }
        }
    }
}

fn main() -> qwalk::Result<()> {
    let c = |t| AngleProfile::Constant(t);
    let walk = Walk::four_step(c(0.9), c(-0.7), c(0.4), true);
    println!("bulk winding {}", walk_winding(&walk)?.winding);
    let cmp = compare_gentle_vs_local(&walk, 0, &IndexOptions::default())?;
    show("gentle", &cmp.gentle);
    show("reflection", &cmp.local);
    println!("marginals agree: {}, entries differ: {}", cmp.marginals_agree, cmp.entries_differ);
    Ok(())
}
