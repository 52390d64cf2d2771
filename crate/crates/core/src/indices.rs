//! Symmetry indices of decoupled windows, the bulk winding number and the
//! invariance checks built on them.
//!
//! A window `x0 - n ..= x0 + n - 1` is closed into a ring whose seam is cut by
//! the gentle decoupler. Eigenvectors living at the seam belong to the
//! artificial outer boundary and are discarded: a vector is counted when less
//! than 10% of its mass lies within `n/3` cells of the seam, discarded when
//! more than 90% does, and anything in between triggers a window doubling.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BandedUnitary, CMatrix, C64};
use crate::models::{Decoupler, DecouplingKind, Walk};
use crate::spectral::{
    decay_length, essential_gap, spectral_window, EigenspaceReport, DEFAULT_GAP_THRESHOLD,
};
use crate::symmetry::{SymmetryRep, SymmetryType, TaggedIndex};

/// Default cells per side of a window.
pub const DEFAULT_HALF_WIDTH: usize = 60;
/// Counted below this seam mass, discarded above `1 - SEAM_MASS`.
pub const SEAM_MASS: f64 = 0.1;
/// Invariance tolerance for the attributed subspaces.
pub const ATTRIBUTION_TOL: f64 = 1e-6;
/// Momentum samples used for bulk gaps.
pub const GAP_SAMPLES: usize = 256;
/// Largest window the automatic sizing will ask for, in cells per side.
pub const MAX_AUTO_HALF_WIDTH: usize = 16384;

/// The 2×3 table of half-line indices and its marginals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexTable {
    pub symmetry_type: SymmetryType,
    pub decoupling_kind: DecouplingKind,
    pub si_plus_left: TaggedIndex,
    pub si_plus_right: TaggedIndex,
    pub si_minus_left: TaggedIndex,
    pub si_minus_right: TaggedIndex,
    pub si_plus: TaggedIndex,
    pub si_minus: TaggedIndex,
    pub si_left: TaggedIndex,
    pub si_right: TaggedIndex,
    pub si_total: TaggedIndex,
}

impl IndexTable {
    pub fn column_sums_hold(&self) -> bool {
        self.si_left == self.si_plus_left + self.si_minus_left
            && self.si_right == self.si_plus_right + self.si_minus_right
    }

    /// `si = si← + si→`, with `si` taken from the undecoupled window.
    pub fn sum_rule_holds(&self) -> bool {
        self.si_total == self.si_left + self.si_right
    }

    pub fn row_sums_hold(&self) -> bool {
        self.si_plus == self.si_plus_left + self.si_plus_right
            && self.si_minus == self.si_minus_left + self.si_minus_right
    }

    /// `[si₊(W_L), si₊(W_R), si₋(W_L), si₋(W_R)]`.
    pub fn entries(&self) -> [TaggedIndex; 4] {
        [
            self.si_plus_left,
            self.si_plus_right,
            self.si_minus_left,
            self.si_minus_right,
        ]
    }

    /// `(si←, si→, si)`.
    pub fn column_marginals(&self) -> (TaggedIndex, TaggedIndex, TaggedIndex) {
        (self.si_left, self.si_right, self.si_total)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingResult {
    pub winding: i64,
    pub min_modulus: f64,
    pub samples_used: usize,
}

/// Spectral subspaces of one region with the vectors that count toward its
/// index.
#[derive(Clone, Debug)]
pub struct RegionSpaces {
    pub plus: EigenspaceReport,
    pub minus: EigenspaceReport,
    pub counted_plus: Vec<bool>,
    pub counted_minus: Vec<bool>,
}

impl RegionSpaces {
    pub fn counted(&self, lambda: f64) -> (&EigenspaceReport, &[bool]) {
        if lambda > 0.0 {
            (&self.plus, &self.counted_plus)
        } else {
            (&self.minus, &self.counted_minus)
        }
    }

    pub fn dim(&self, lambda: f64) -> usize {
        self.counted(lambda).1.iter().filter(|&&c| c).count()
    }

    /// Counted vectors with residual `‖(W - λ)v‖` below `tol`.
    pub fn exact_dim(&self, lambda: f64, tol: f64) -> usize {
        let (r, keep) = self.counted(lambda);
        keep.iter()
            .zip(&r.residuals)
            .filter(|(&k, &res)| k && res < tol)
            .count()
    }

    pub fn max_counted_residual(&self) -> f64 {
        [1.0, -1.0]
            .iter()
            .flat_map(|&l| {
                let (r, keep) = self.counted(l);
                keep.iter()
                    .zip(&r.residuals)
                    .filter(|(&k, _)| k)
                    .map(|(_, &res)| res)
                    .collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct HalfLineResult {
    pub table: IndexTable,
    pub cut: i64,
    pub half_width: usize,
    pub escalations: usize,
    /// `W_L` of the decoupled window.
    pub left: RegionSpaces,
    /// `W_R` of the decoupled window.
    pub right: RegionSpaces,
    /// The window without the interior cut.
    pub whole: RegionSpaces,
}

impl HalfLineResult {
    /// `dim E₊ + dim E₋` of the undecoupled window away from the seam.
    pub fn edge_dimension(&self) -> usize {
        self.whole.dim(1.0) + self.whole.dim(-1.0)
    }

    /// As [`Self::edge_dimension`], counting only vectors with residual
    /// below `tol`.
    pub fn exact_edge_dimension(&self, tol: f64) -> usize {
        self.whole.exact_dim(1.0, tol) + self.whole.exact_dim(-1.0, tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexOptions {
    pub half_width: usize,
    pub decoupler: Decoupler,
    pub max_escalations: usize,
    /// Fraction of the smaller bulk gap used as capture radius around `±1`.
    pub capture_fraction: f64,
    /// Bulk gaps below this count as closed.
    pub gap_threshold: f64,
    /// Grow the window beyond `half_width` to fit the bulk decay length.
    pub auto_window: bool,
}

impl Default for IndexOptions {
    fn default() -> Self {
        Self {
            half_width: DEFAULT_HALF_WIDTH,
            decoupler: Decoupler::Gentle,
            max_escalations: 3,
            capture_fraction: 0.5,
            gap_threshold: DEFAULT_GAP_THRESHOLD,
            auto_window: true,
        }
    }
}

/// Symmetry index of an eigenspace report.
pub fn si_point(report: &EigenspaceReport, rep: &SymmetryRep) -> Result<TaggedIndex> {
    rep.rep_index(&report.basis, ATTRIBUTION_TOL)
}

/// Capture radii around `+1` and `-1` from the bulk gaps on both sides.
pub fn bulk_captures(walk: &Walk, opts: &IndexOptions) -> Result<(f64, f64)> {
    let (l, r) = walk.bulk_walks();
    let mut gp = f64::INFINITY;
    let mut gm = f64::INFINITY;
    for b in [l, r] {
        let sym = b.symbol().expect("bulk walks are translation invariant");
        let g = essential_gap(&sym, GAP_SAMPLES, opts.gap_threshold)?;
        gp = gp.min(g.gap_at_plus);
        gm = gm.min(g.gap_at_minus);
    }
    if gp < opts.gap_threshold || gm < opts.gap_threshold {
        return Err(Error::GapClosed(format!(
            "bulk gaps {gp:.3e} at +1 and {gm:.3e} at -1"
        )));
    }
    Ok((opts.capture_fraction * gp, opts.capture_fraction * gm))
}

/// Longest decay lengths at `+1` and at `-1` over the two bulks.
pub fn bulk_decay_lengths(walk: &Walk) -> Result<(f64, f64)> {
    let (l, r) = walk.bulk_walks();
    let (mut xp, mut xm) = (0.0_f64, 0.0_f64);
    for b in [l, r] {
        let sym = b.symbol().expect("bulk walks are translation invariant");
        xp = xp.max(decay_length(&sym, 1.0)?);
        xm = xm.max(decay_length(&sym, -1.0)?);
    }
    Ok((xp, xm))
}

/// Cells per side so that states decaying with `xi` overlap across the
/// window by much less than the capture radius.
pub fn auto_half_width(xi: f64, capture: f64) -> usize {
    (xi * ((1.0 / capture).ln() + 12.0)).ceil().max(0.0) as usize
}

enum Attempt {
    Done(Box<HalfLineResult>),
    Ambiguous,
}

/// All six half-line indices of `walk` at the cut `x0`, escalating the window
/// on ambiguous attribution.
pub fn half_line_indices(walk: &Walk, x0: i64, opts: &IndexOptions) -> Result<HalfLineResult> {
    if walk.symmetry_type() == SymmetryType::DIII {
        return Err(Error::UnsupportedSymmetry(
            "no half-line splitting for DIII".into(),
        ));
    }
    let captures = bulk_captures(walk, opts)?;
    let mut n = opts.half_width.max(walk.min_cells());
    if opts.auto_window {
        let (xp, xm) = bulk_decay_lengths(walk)?;
        let need = auto_half_width(xp, captures.0).max(auto_half_width(xm, captures.1));
        if need > MAX_AUTO_HALF_WIDTH {
            return Err(Error::GapClosed(format!(
                "decay length {:.1} cells needs a window beyond {MAX_AUTO_HALF_WIDTH} cells",
                xp.max(xm)
            )));
        }
        n = n.max(need);
    }
    for escalation in 0..=opts.max_escalations {
        let decoupled = walk.build_window(x0, n, &[walk.decoupler(x0, opts.decoupler)])?;
        let whole = walk.build_window(x0, n, &[])?;
        let rep = walk.rep(whole.structure())?;
        let kind = walk.decoupler(x0, opts.decoupler).kind;
        match attempt(&decoupled, &whole, &rep, x0, n, captures, kind)? {
            Attempt::Done(mut r) => {
                r.escalations = escalation;
                return Ok(*r);
            }
            Attempt::Ambiguous => n *= 2,
        }
    }
    Err(Error::AmbiguousAttribution {
        escalations: opts.max_escalations,
    })
}

/// Half-line indices from prebuilt windows: `decoupled` cut at `x0` and at
/// its seam, `whole` cut at its seam only, both on cells `x0-n ..= x0+n-1`.
pub fn half_line_indices_windows(
    decoupled: &BandedUnitary,
    whole: &BandedUnitary,
    rep: &SymmetryRep,
    x0: i64,
    captures: (f64, f64),
    kind: DecouplingKind,
) -> Result<Option<HalfLineResult>> {
    let s = whole.structure();
    let n = (x0 - s.x_min()) as usize;
    if s.x_max() + 1 - x0 != n as i64 {
        return Err(Error::InvalidArgument("cut is not centered in the window".into()));
    }
    Ok(match attempt(decoupled, whole, rep, x0, n, captures, kind)? {
        Attempt::Done(r) => Some(*r),
        Attempt::Ambiguous => None,
    })
}

fn attempt(
    decoupled: &BandedUnitary,
    whole: &BandedUnitary,
    rep: &SymmetryRep,
    x0: i64,
    n: usize,
    captures: (f64, f64),
    kind: DecouplingKind,
) -> Result<Attempt> {
    if rep.symmetry_type() == SymmetryType::DIII {
        return Err(Error::UnsupportedSymmetry(
            "no half-line splitting for DIII".into(),
        ));
    }
    let s = whole.structure();
    let (x_min, x_max) = (s.x_min(), s.x_max());
    let zone = (n / 3).max(1) as i64;
    let near_seam_left = |x: i64| x < x_min + zone;
    let near_seam_right = |x: i64| x > x_max - zone;

    let lw = decoupled.restrict(x_min, x0 - 1, crate::models::DECOUPLING_TOL)?;
    let rw = decoupled.restrict(x0, x_max, crate::models::DECOUPLING_TOL)?;
    let lrep = rep.restrict(x_min, x0 - 1)?;
    let rrep = rep.restrict(x0, x_max)?;

    let regions = [
        (&lw, &lrep, &near_seam_left as &dyn Fn(i64) -> bool),
        (&rw, &rrep, &near_seam_right),
    ];
    let mut out = Vec::new();
    for (w, r, seam) in regions {
        match region(w, r, captures, seam)? {
            Some(v) => out.push(v),
            None => return Ok(Attempt::Ambiguous),
        }
    }
    let both = |x: i64| near_seam_left(x) || near_seam_right(x);
    let Some(whole_sp) = region(whole, rep, captures, &both)? else {
        return Ok(Attempt::Ambiguous);
    };
    let right = out.pop().unwrap();
    let left = out.pop().unwrap();

    let idx = |sp: &RegionSpaces, r: &SymmetryRep, lambda: f64| -> Result<Option<TaggedIndex>> {
        let (rep_sp, keep) = sp.counted(lambda);
        match r.rep_index(&rep_sp.select(|i| keep[i]), ATTRIBUTION_TOL) {
            Ok(t) => Ok(Some(t)),
            Err(Error::NonInvariantSubspace { .. } | Error::NonIntegerTrace { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let vals = [
        idx(&left, &lrep, 1.0)?,
        idx(&right, &rrep, 1.0)?,
        idx(&left, &lrep, -1.0)?,
        idx(&right, &rrep, -1.0)?,
        idx(&whole_sp, rep, 1.0)?,
        idx(&whole_sp, rep, -1.0)?,
    ];
    if vals.iter().any(|v| v.is_none()) {
        return Ok(Attempt::Ambiguous);
    }
    let [pl, pr, ml, mr, p, m] = vals.map(|v| v.unwrap());
    let table = IndexTable {
        symmetry_type: rep.symmetry_type(),
        decoupling_kind: kind,
        si_plus_left: pl,
        si_plus_right: pr,
        si_minus_left: ml,
        si_minus_right: mr,
        si_plus: p,
        si_minus: m,
        si_left: pl + ml,
        si_right: pr + mr,
        si_total: p + m,
    };
    Ok(Attempt::Done(Box::new(HalfLineResult {
        table,
        cut: x0,
        half_width: n,
        escalations: 0,
        left,
        right,
        whole: whole_sp,
    })))
}

/// Spectral subspaces of one region and which vectors stay away from the
/// seam; `None` when some vector is split between the two.
fn region(
    w: &BandedUnitary,
    rep: &SymmetryRep,
    captures: (f64, f64),
    seam: &dyn Fn(i64) -> bool,
) -> Result<Option<RegionSpaces>> {
    let (plus, minus) = match spectral_window(w, Some(rep), captures.0, captures.1) {
        Ok(v) => v,
        Err(Error::NonInvariantSubspace { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let s = w.structure();
    let classify = |r: &EigenspaceReport| -> Option<Vec<bool>> {
        (0..r.dimension)
            .map(|i| {
                let col = r.basis.column(i);
                let mass: f64 = s
                    .cells()
                    .filter(|&x| seam(x))
                    .map(|x| {
                        let o = s.offset(x);
                        (0..s.dim(x)).map(|k| col[o + k].norm_sqr()).sum::<f64>()
                    })
                    .sum();
                if mass < SEAM_MASS {
                    Some(true)
                } else if mass > 1.0 - SEAM_MASS {
                    Some(false)
                } else {
                    None
                }
            })
            .collect()
    };
    let (Some(cp), Some(cm)) = (classify(&plus), classify(&minus)) else {
        return Ok(None);
    };
    Ok(Some(RegionSpaces {
        plus,
        minus,
        counted_plus: cp,
        counted_minus: cm,
    }))
}

/// Winding number of the chirally off-diagonal entry of a two-band symbol.
///
/// `W(k)` is written in the eigenbasis of `γ_cell` (`+1` first) and the
/// `(2,1)` entry is followed once around `k ∈ [0, 2π]`. With this
/// orientation the winding equals `si→` of the same walk.
pub fn bulk_winding(
    symbol: &crate::lattice::TIWalkSymbol,
    gamma_cell: &CMatrix,
    min_modulus_threshold: f64,
) -> Result<WindingResult> {
    if symbol.coin_dim() != 2 || gamma_cell.shape() != (2, 2) {
        return Err(Error::InvalidArgument("winding needs a two-band symbol".into()));
    }
    let (vals, vecs) = crate::symmetry::hermitian_eigen(gamma_cell);
    if (vals[0] + 1.0).abs() > 1e-10 || (vals[1] - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(
            "γ must have eigenvalues +1 and -1".into(),
        ));
    }
    // ascending order puts -1 first; reorder to (+1, -1)
    let v = CMatrix::from_columns(&[vecs.column(1).into_owned(), vecs.column(0).into_owned()]);
    let entry = |k: f64| -> C64 { (v.adjoint() * symbol.at(k) * &v)[(1, 0)] };

    let base = 64;
    let mut samples = 0usize;
    let mut min_mod = f64::INFINITY;
    let mut total = 0.0;
    let mut stack: Vec<(f64, C64, f64, C64, u32)> = Vec::new();
    let mut prev_k = 0.0;
    let mut prev = entry(0.0);
    samples += 1;
    min_mod = min_mod.min(prev.norm());
    for i in 1..=base {
        let k = 2.0 * PI * i as f64 / base as f64;
        let z = if i == base { entry(0.0) } else { entry(k) };
        samples += 1;
        stack.push((prev_k, prev, k, z, 0));
        while let Some((ka, za, kb, zb, depth)) = stack.pop() {
            min_mod = min_mod.min(zb.norm());
            if min_mod < min_modulus_threshold {
                return Err(Error::GapClosed(format!(
                    "winding curve within {min_mod:.3e} of the origin"
                )));
            }
            let d = (zb / za).arg();
            if d.abs() < PI / 2.0 || depth > 40 {
                total += d;
            } else {
                let km = 0.5 * (ka + kb);
                let zm = entry(km);
                samples += 1;
                min_mod = min_mod.min(zm.norm());
                // process the left half first
                stack.push((km, zm, kb, zb, depth + 1));
                stack.push((ka, za, km, zm, depth + 1));
            }
        }
        prev_k = k;
        prev = z;
    }
    let w = total / (2.0 * PI);
    let r = w.round();
    if (w - r).abs() > 1e-6 {
        return Err(Error::NonIntegerWinding { value: w });
    }
    Ok(WindingResult {
        winding: r as i64,
        min_modulus: min_mod,
        samples_used: samples,
    })
}

/// Winding of a translation-invariant zoo walk with `γ = σ₁`.
pub fn walk_winding(walk: &Walk) -> Result<WindingResult> {
    let sym = walk
        .symbol()
        .ok_or_else(|| Error::InvalidArgument("walk is not translation invariant".into()))?;
    bulk_winding(&sym, &crate::symmetry::paulis::sigma1(), 1e-6)
}

#[derive(Clone, Debug)]
pub struct CutIndependenceReport {
    pub cuts: (i64, i64),
    pub si_right_first: TaggedIndex,
    pub si_right_second: TaggedIndex,
    /// Index of the block between the cuts.
    pub si_middle: TaggedIndex,
    pub holds: bool,
}

/// Compares `si→` at two cuts and computes the index of the finite block
/// between them.
pub fn verify_cut_independence(
    walk: &Walk,
    x0: i64,
    x1: i64,
    opts: &IndexOptions,
) -> Result<CutIndependenceReport> {
    if x1 <= x0 {
        return Err(Error::InvalidArgument("cuts must satisfy x0 < x1".into()));
    }
    let gentle = IndexOptions {
        decoupler: Decoupler::Gentle,
        ..*opts
    };
    let a = half_line_indices(walk, x0, &gentle)?;
    let b = half_line_indices(walk, x1, &gentle)?;
    let si_middle = middle_index(walk, x0, x1)?;
    let holds = si_middle.is_zero() && a.table.si_right == b.table.si_right;
    Ok(CutIndependenceReport {
        cuts: (x0, x1),
        si_right_first: a.table.si_right,
        si_right_second: b.table.si_right,
        si_middle,
        holds,
    })
}

/// `si(W_C)` of the block on cells `x0 ..= x1 - 1` after gentle cuts at both
/// ends.
pub fn middle_index(walk: &Walk, x0: i64, x1: i64) -> Result<TaggedIndex> {
    let pad = 4 * walk.interaction_length() as i64 + 2;
    let w = walk.build(
        x0 - pad,
        x1 + pad - 1,
        crate::models::Boundary::Decoupled,
        &[walk.decoupler_gentle(x0), walk.decoupler_gentle(x1)],
    )?;
    let block = w.restrict(x0, x1 - 1, crate::models::DECOUPLING_TOL)?;
    let rep = walk.rep(block.structure())?;
    // every eigenvalue of a finite block is isolated, so the whole circle
    // away from ±1 pairs up; capture everything within π/2 of each point
    let (p, m) = spectral_window(&block, Some(&rep), PI / 2.0, PI / 2.0)?;
    Ok(si_point(&p, &rep)? + si_point(&m, &rep)?)
}

#[derive(Clone, Debug)]
pub struct GentleLocalComparison {
    pub gentle: HalfLineResult,
    pub local: HalfLineResult,
    pub marginals_agree: bool,
    pub entries_differ: bool,
}

/// Half-line tables for the gentle and the reflection decoupler at one cut.
pub fn compare_gentle_vs_local(
    walk: &Walk,
    x0: i64,
    opts: &IndexOptions,
) -> Result<GentleLocalComparison> {
    let gentle = half_line_indices(
        walk,
        x0,
        &IndexOptions {
            decoupler: Decoupler::Gentle,
            ..*opts
        },
    )?;
    let local = half_line_indices(
        walk,
        x0,
        &IndexOptions {
            decoupler: Decoupler::Reflection,
            ..*opts
        },
    )?;
    let marginals_agree = gentle.table.column_marginals() == local.table.column_marginals();
    let entries_differ = gentle.table.entries() != local.table.entries();
    Ok(GentleLocalComparison {
        gentle,
        local,
        marginals_agree,
        entries_differ,
    })
}

/// Chirality of each vector of a report, `0` where no chiral symmetry exists.
pub fn chiralities(report: &EigenspaceReport) -> Vec<f64> {
    report
        .chiralities
        .clone()
        .unwrap_or_else(|| vec![0.0; report.dimension])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::AngleProfile;

    fn ss(a: f64, b: f64) -> Walk {
        Walk::split_step(AngleProfile::Constant(a), AngleProfile::Constant(b))
    }

    #[test]
    fn homogeneous_walk_has_opposite_half_indices() {
        for (a, b) in [(0.4, 1.3), (1.3, 0.4), (-1.2, 0.3), (0.3, -1.2)] {
            let w = ss(a, b);
            let h = half_line_indices(&w, 0, &IndexOptions::default()).unwrap();
            let t = h.table;
            assert!(t.si_total.is_zero());
            assert_eq!(t.si_left, -t.si_right);
            assert_eq!(t.si_right.value, walk_winding(&w).unwrap().winding);
            assert!(t.sum_rule_holds() && t.column_sums_hold() && t.row_sums_hold());
        }
    }

    #[test]
    fn crossover_total_is_winding_difference() {
        let (l, r) = (ss(-1.2, 0.3), ss(1.3, 0.4));
        let wl = walk_winding(&l).unwrap().winding;
        let wr = walk_winding(&r).unwrap().winding;
        assert_eq!((wl, wr), (-1, 1));
        let w = Walk::crossover(&l, &r, 0.0).unwrap();
        let h = half_line_indices(&w, 0, &IndexOptions::default()).unwrap();
        assert_eq!(h.table.si_total.value, wr - wl);
        assert!(h.table.sum_rule_holds());
        assert!(h.edge_dimension() >= 2);
    }

    #[test]
    fn four_step_tables_depend_on_decoupler() {
        let w = Walk::four_step(
            AngleProfile::Constant(0.9),
            AngleProfile::Constant(-0.7),
            AngleProfile::Constant(0.4),
            true,
        );
        assert_eq!(walk_winding(&w).unwrap().winding, 1);
        let c = compare_gentle_vs_local(&w, 0, &IndexOptions::default()).unwrap();
        assert!(c.marginals_agree && c.entries_differ);
        assert!(c.gentle.table.row_sums_hold());
        assert_eq!(c.gentle.table.si_right.value, 1);
    }

    #[test]
    fn cut_independence_on_a_crossover() {
        let w = Walk::crossover(&ss(0.4, 1.3), &ss(1.3, 0.4), 3.0).unwrap();
        let r = verify_cut_independence(&w, -10, 10, &IndexOptions::default()).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn closed_gap_is_reported() {
        let w = ss(0.0, 0.0);
        assert!(matches!(
            half_line_indices(&w, 0, &IndexOptions::default()),
            Err(Error::GapClosed(_))
        ));
    }

    #[test]
    fn auto_width_grows_with_decay_length() {
        assert!(auto_half_width(2.0, 0.1) > auto_half_width(1.0, 0.1));
        assert_eq!(auto_half_width(0.0, 0.1), 0);
    }
}
