//! Bound states at the junction of two split-step phases with different
//! windings.

use qwalk::indices::{half_line_indices, walk_winding, IndexOptions};
use qwalk::models::{AngleProfile, Boundary, Walk};
use qwalk::spectral::gap_eigenspaces;

fn main() -> qwalk::Result<()> {
    let ss = |a, b| Walk::split_step(AngleProfile::Constant(a), AngleProfile::Constant(b));
    let (left, right) = (ss(-1.2, 0.3), ss(1.3, 0.4));
    let walk = Walk::crossover(&left, &right, 2.0)?;
    let (wl, wr) = (walk_winding(&left)?.winding, walk_winding(&right)?.winding);
    println!("windings {wl:+} | {wr:+}");

    let res = half_line_indices(&walk, 0, &IndexOptions::default())?;
    println!("si {:+}, junction states {}", res.table.si_total.value, res.edge_dimension());

    // exact eigenvectors of the whole window, outer ends decoupled
    let w = walk.build(-60, 59, Boundary::Decoupled, &[])?;
    let rep = walk.rep(w.structure())?;
    let (plus, minus) = gap_eigenspaces(&w, Some(&rep), 1e-8)?;
    for r in [&plus, &minus] {
        for i in 0..r.dimension {
            let chi = r.chiralities.as_ref().map_or(0.0, |c| c[i]);
            println!(
                "  eigenvalue {:+}: center {:+7.2}, chirality {chi:+.3}, residual {:.1e}",
                r.eigenvalue_target, r.profiles[i].center, r.residuals[i]
            );
        }
    }
    Ok(())
}
