//! Coarse split-step phase diagram: bulk winding against the half-line index
//! `si→` measured on a decoupled window.

use std::f64::consts::PI;

use qwalk::indices::{half_line_indices, walk_winding, IndexOptions};
use qwalk::models::{AngleProfile, Walk};

fn main() -> qwalk::Result<()> {
    let n = 11;
    let axis: Vec<f64> = (0..n).map(|i| -PI + PI / n as f64 + 2.0 * PI * i as f64 / n as f64).collect();
    let opts = IndexOptions::default();
    println!("rows: theta2 descending, columns: theta1 ascending ('.' = gap closed)");
    for &t2 in axis.iter().rev() {
        let mut line = format!("{t2:+.2} ");
        for &t1 in &axis {
            let walk = Walk::split_step(AngleProfile::Constant(t1), AngleProfile::Constant(t2));
            let cell = match half_line_indices(&walk, 0, &opts) {
                Ok(r) => {
                    let w = walk_winding(&walk)?.winding;
                    assert_eq!(w, r.table.si_right.value);
                    format!("{w:+}")
                }
                Err(qwalk::Error::GapClosed(_)) => " .".into(),
                Err(e) => return Err(e),
            };
            line += &format!(" {cell}");
        }
        println!("{line}");
    }
    Ok(())
}
