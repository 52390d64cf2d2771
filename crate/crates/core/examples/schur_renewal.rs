//! Schur function of a decoupled walk on two cells around the cut: edge
//! states show up as fixed vectors of `λ f(λ)`, and a local perturbation `V`
//! on those cells acts as `f ↦ V f`.

use qwalk::lattice::C64;
use qwalk::models::{AngleProfile, Walk};
use qwalk::schur::{cyclic_eigen_count, eigendetect, op_norm, renewal_check, schur_eval, SchurContext};
use qwalk::testing::random_unitary;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qwalk::Result<()> {
    let walk = Walk::split_step(AngleProfile::Constant(1.3), AngleProfile::Constant(0.4));
    let ctx = SchurContext::for_walk(&walk, 0, &[-1, 0], 20, 1e-8)?;
    println!("window of {} cells, H0 of dimension {}", ctx.walk().structure().n_cells(), ctx.dim());

    for z in [C64::new(0.0, 0.0), C64::new(0.5, 0.3), C64::new(1.0, 0.0), C64::new(-1.0, 0.0)] {
        println!("  |f({z})| = {:.6}", op_norm(&schur_eval(&ctx, z)?));
    }
    for lambda in [1.0, -1.0] {
        let d = eigendetect(&ctx, lambda, 1e-8)?;
        let dense = cyclic_eigen_count(&ctx, lambda, 1e-8)?;
        println!("  eigenvalue {lambda:+}: detected {}, dense {dense}, chirality trace {:?}", d.dimension, d.chirality_trace);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v = random_unitary(ctx.dim(), &mut rng);
    let r = renewal_check(&ctx, &v, &[C64::new(0.2, -0.4), C64::new(-0.6, 0.1)])?;
    for ((walk, formula), dev) in &r.deviations {
        println!("  {walk:?} against {formula:?}: {dev:.2e}");
    }
    println!("matching {:?}", r.matching);
    Ok(())
}
