use std::f64::consts::PI;

use proptest::prelude::*;
use qwalk::indices::{half_line_indices, middle_index, walk_winding, IndexOptions, GAP_SAMPLES};
use qwalk::lattice::{max_abs, ti_to_banded, CMatrix, C64};
use qwalk::models::{gentle_path_check, AngleProfile, Boundary, Decoupler, Walk};
use qwalk::schur::{op_norm, schur_eval, schur_eval_series, SchurContext};
use qwalk::spectral::{essential_gap, gap_eigenspaces, window_spectrum, DEFAULT_GAP_THRESHOLD};
use qwalk::symmetry::{SymmetryRep, SymmetryType};
use qwalk::testing::{random_admissible_unitary, random_representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ss(t1: f64, t2: f64) -> Walk {
    Walk::split_step(AngleProfile::Constant(t1), AngleProfile::Constant(t2))
}

fn four(a: f64, b: f64, c: f64, garnish: bool) -> Walk {
    Walk::four_step(
        AngleProfile::Constant(a),
        AngleProfile::Constant(b),
        AngleProfile::Constant(c),
        garnish,
    )
}

fn min_gap(walk: &Walk) -> f64 {
    let (l, r) = walk.bulk_walks();
    [l, r]
        .iter()
        .map(|b| {
            essential_gap(&b.symbol().unwrap(), GAP_SAMPLES, DEFAULT_GAP_THRESHOLD)
                .unwrap()
                .min_gap()
        })
        .fold(f64::INFINITY, f64::min)
}

fn angle() -> impl Strategy<Value = f64> {
    -3.1..3.1_f64
}

fn walk_strategy() -> impl Strategy<Value = Walk> {
    prop_oneof![
        (angle(), angle()).prop_map(|(a, b)| ss(a, b)),
        (angle(), angle(), angle(), any::<bool>()).prop_map(|(a, b, c, g)| four(a, b, c, g)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decoupled_windows_are_unitary_banded_and_admissible(
        walk in walk_strategy(),
        cut in -3..3_i64,
        reflect in any::<bool>(),
    ) {
        let which = if reflect { Decoupler::Reflection } else { Decoupler::Gentle };
        let w = walk.build_window(cut, 10, &[walk.decoupler(cut, which)]).unwrap();
        prop_assert!(w.check_unitary(1e-12).defect < 1e-12);
        prop_assert_eq!(w.bandedness_defect(), 0.0);
        prop_assert!(w.range() <= walk.interaction_length());
        let rep = walk.rep(w.structure()).unwrap();
        prop_assert!(rep.check_admissible(&w, 1e-10).unwrap().admissible);
    }

    #[test]
    fn gentle_paths_stay_admissible(walk in walk_strategy(), cut in -3..3_i64) {
        let recipe = walk.decoupler_gentle(cut);
        prop_assert!(gentle_path_check(&walk, &recipe, 8, 21).unwrap());
        let reflection = walk.decoupler_reflection(cut);
        prop_assert!(reflection.det_signs().iter().all(|&d| (d + 1.0).abs() < 1e-12));
    }

    #[test]
    fn crossover_matches_bulk_far_from_ramp(
        a in (angle(), angle()),
        b in (angle(), angle()),
        width in 0.0..6.0_f64,
    ) {
        let (l, r) = (ss(a.0, a.1), ss(b.0, b.1));
        let x = Walk::crossover(&l, &r, width).unwrap();
        let w = x.build(-16, 15, Boundary::Periodic, &[]).unwrap();
        let left = ti_to_banded(&l.symbol().unwrap(), -16, 15).unwrap().walk;
        let right = ti_to_banded(&r.symbol().unwrap(), -16, 15).unwrap().walk;
        for xx in -12..-6 {
            for y in xx - 1..=xx + 1 {
                // equal up to the order of floating-point products
                let d = |a: Option<&CMatrix>, b: Option<&CMatrix>| max_abs(&(a.unwrap() - b.unwrap()));
                prop_assert!(d(w.block(xx, y), left.block(xx, y)) < 1e-14);
                prop_assert!(d(w.block(-xx, -y), right.block(-xx, -y)) < 1e-14);
            }
        }
    }

    #[test]
    fn spectrum_is_conjugation_symmetric(walk in walk_strategy()) {
        let w = walk.build(-8, 7, Boundary::Periodic, &[]).unwrap();
        let ev = window_spectrum(&w);
        for z in &ev {
            prop_assert!((z.norm() - 1.0).abs() < 1e-10);
            let partner = ev.iter().map(|u| (u - z.conj()).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(partner < 1e-8);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn index_table_relations_hold(
        a in (angle(), angle()),
        b in (angle(), angle()),
        width in 0.0..5.0_f64,
        cut in -4..4_i64,
    ) {
        let walk = Walk::crossover(&ss(a.0, a.1), &ss(b.0, b.1), width).unwrap();
        prop_assume!(min_gap(&walk) > 0.15);
        let res = half_line_indices(&walk, cut, &IndexOptions::default()).unwrap();
        let t = &res.table;
        prop_assert!(t.sum_rule_holds());
        prop_assert!(t.column_sums_hold());
        prop_assert!(t.row_sums_hold());
        prop_assert!(res.edge_dimension() as i64 >= t.si_total.value.abs());
        let (l, r) = walk.bulk_walks();
        prop_assert_eq!(t.si_right.value, walk_winding(&r).unwrap().winding);
        prop_assert_eq!(t.si_left.value, -walk_winding(&l).unwrap().winding);
    }

    #[test]
    fn finite_blocks_have_zero_index(walk in walk_strategy(), x0 in -6..0_i64, len in 2..10_i64) {
        prop_assert!(middle_index(&walk, x0, x0 + len).unwrap().is_zero());
    }

    #[test]
    fn cii_eigenspaces_are_even(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rep, _) = random_representation(SymmetryType::CII, 3, &mut rng);
        let w = random_admissible_unitary(&rep, &mut rng);
        let (p, m) = gap_eigenspaces(&w, Some(&rep), 1e-8).unwrap();
        for r in [p, m] {
            let idx = rep.rep_index(&r.basis, 1e-6).unwrap();
            prop_assert_eq!(idx.value % 2, 0);
        }
    }

    #[test]
    fn rep_index_is_additive(seed in any::<u64>(), ty_i in 0..5_usize) {
        let ty = SymmetryType::ALL[ty_i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rep, content) = random_representation(ty, 4, &mut rng);
        let n = rep.structure().total_dim();
        let whole = rep.rep_index(&CMatrix::identity(n, n), 1e-8).unwrap();
        prop_assert!(whole.in_group());
        prop_assert_eq!(whole, qwalk::symmetry::TaggedIndex::new(content, ty.index_group()));
        // split along the eigenspaces of a random admissible unitary
        if ty != SymmetryType::D && ty != SymmetryType::DIII {
            let w = random_admissible_unitary(&rep, &mut rng);
            let (p, m) = gap_eigenspaces(&w, Some(&rep), 1e-8).unwrap();
            let parts = rep.rep_index(&p.basis, 1e-6).unwrap() + rep.rep_index(&m.basis, 1e-6).unwrap();
            prop_assert_eq!(parts, whole);
        }
    }
}

fn schur_context(walk: &Walk) -> SchurContext {
    SchurContext::for_walk(walk, 0, &[-1, 0], 12, 1e-8).unwrap()
}

fn disc_point(r: f64, phi: f64) -> C64 {
    C64::from_polar(r, phi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn schur_function_is_contractive_and_analytic(
        t in prop::sample::select(vec![(1.3, 0.4), (-1.2, 0.3), (0.4, 1.3), (2.0, 0.3)]),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let ctx = schur_context(&ss(t.0, t.1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let z = disc_point(0.9 * rng.random::<f64>().sqrt(), rng.random_range(-PI..PI));
            let f = schur_eval(&ctx, z).unwrap();
            prop_assert!(op_norm(&f) <= 1.0 + 1e-8);
        }
        // ∂f/∂z̄ = (∂x + i ∂y) f / 2 vanishes for analytic f
        let h = 1e-4;
        for _ in 0..5 {
            let z = disc_point(0.8 * rng.random::<f64>().sqrt(), rng.random_range(-PI..PI));
            let fx = schur_eval(&ctx, z + h).unwrap() - schur_eval(&ctx, z - h).unwrap();
            let i = C64::new(0.0, 1.0);
            let fy = schur_eval(&ctx, z + i * h).unwrap() - schur_eval(&ctx, z - i * h).unwrap();
            let dbar = (fx + fy * i) / C64::new(4.0 * h, 0.0);
            prop_assert!(op_norm(&dbar) < 1e-6);
        }
    }

    #[test]
    fn series_truncation_settles(
        t in prop::sample::select(vec![(1.3, 0.4), (-1.2, 0.3), (0.4, 1.3)]),
        r in 0.1..0.7_f64,
        phi in -PI..PI,
    ) {
        let mut ctx = schur_context(&ss(t.0, t.1));
        let z = disc_point(r, phi);
        let short = schur_eval_series(&ctx, z).unwrap();
        ctx.trunc_n *= 2;
        let long = schur_eval_series(&ctx, z).unwrap();
        prop_assert!(op_norm(&(&long - &short)) < ctx.tol_series);
        prop_assert!(op_norm(&(&long - schur_eval(&ctx, z).unwrap())) < 1e-8);
    }
}

#[test]
fn zoo_cells_are_balanced() {
    let walks = [ss(1.3, 0.4), four(0.9, -0.7, 0.4, false), four(0.9, -0.7, 0.4, true)];
    for walk in walks {
        let w = walk.build(-4, 3, Boundary::Periodic, &[]).unwrap();
        let rep: SymmetryRep = walk.rep(w.structure()).unwrap();
        for x in -4..=3 {
            assert!(rep.check_balanced(x));
        }
    }
}
