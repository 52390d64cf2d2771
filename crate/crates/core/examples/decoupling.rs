//! Gentle and reflection decouplers of the split-step walk at a cut.

use qwalk::lattice::max_abs;
use qwalk::models::{gentle_path_check, verify_decoupled, AngleProfile, Walk};

fn main() -> qwalk::Result<()> {
    let walk = Walk::split_step(AngleProfile::Constant(1.3), AngleProfile::Constant(0.4));
    let cut = 3;
    let plain = walk.build_window(cut, 8, &[])?;
    println!("undecoupled crossing at {cut}: {:.3e}", plain.max_crossing(cut));

    for recipe in [walk.decoupler_gentle(cut), walk.decoupler_reflection(cut)] {
        let w = walk.build_window(cut, 8, std::slice::from_ref(&recipe))?;
        let (ok, crossing) = verify_decoupled(&w, cut);
        let gentle = match recipe.path {
            Some(_) => format!("{}", gentle_path_check(&walk, &recipe, 8, 21)?),
            None => "not certified".into(),
        };
        println!("{:?} decoupler:", recipe.kind);
        for s in &recipe.substitutions {
            let re: Vec<f64> = s.coin.iter().map(|z| z.re).collect();
            println!("  coin {:?} at {} -> column-major {re:?}", s.label, s.site);
        }
        println!("  det signs {:?}", recipe.det_signs());
        println!("  decoupled {ok} (crossing {crossing:.1e}), gentle path {gentle}");
        println!("  differs from the original window by {:.3}", max_abs(&(w.to_dense() - plain.to_dense())));
    }
    Ok(())
}
