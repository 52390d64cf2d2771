//! Matrix Schur functions of a finite window relative to a subspace `H₀`
//! spanned by whole cells or selected components.
//!
//! `f(z) = Σ_{n≥1} z^{n-1} P W (QW)^{n-1} P` sums to `E† W (1 - zQW)⁻¹ E`,
//! with `E` the isometric embedding of `H₀`. Inside the disc `‖zQW‖ < 1` and
//! the closed form is a regular linear solve; boundary values are radial
//! limits.
//!
//! With this sum, perturbing by a unitary `V` on `H₀` gives `f_{VW} = V f` and
//! `f_{WV} = f V`; [`renewal_check`] measures every pairing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{max_abs, BandedUnitary, CMatrix, C64};
use crate::indices::{auto_half_width, bulk_decay_lengths, GAP_SAMPLES, MAX_AUTO_HALF_WIDTH};
use crate::models::Walk;
use crate::spectral::{essential_gap, DEFAULT_GAP_THRESHOLD, gap_eigenspaces, GapReport};
use crate::symmetry::{Generator, SymmetryRep};

/// Radial step of the boundary extrapolation in [`schur_eval`].
pub const RADIAL_STEP: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct SchurContext {
    walk: BandedUnitary,
    /// Columns are the basis vectors of `H₀`.
    embedding: CMatrix,
    cells: Vec<(i64, Vec<usize>)>,
    pub trunc_n: usize,
    pub tol_series: f64,
    gaps: Option<GapReport>,
    rep: Option<SymmetryRep>,
}

impl SchurContext {
    /// `H₀` spanned by the listed components of the listed cells.
    pub fn new(walk: BandedUnitary, cells: &[(i64, Vec<usize>)]) -> Result<Self> {
        let s = walk.structure();
        let mut cols = Vec::new();
        for (x, comps) in cells {
            if !s.contains(*x) {
                return Err(Error::InvalidArgument(format!("cell {x} outside the window")));
            }
            for &c in comps {
                if c >= s.dim(*x) {
                    return Err(Error::InvalidArgument(format!(
                        "component {c} outside cell {x}"
                    )));
                }
                let mut v = nalgebra::DVector::zeros(s.total_dim());
                v[s.offset(*x) + c] = C64::new(1.0, 0.0);
                cols.push(v);
            }
        }
        if cols.is_empty() {
            return Err(Error::InvalidArgument("empty subspace".into()));
        }
        let embedding = CMatrix::from_columns(&cols);
        let trunc_n = 4 * s.n_cells();
        Ok(Self {
            walk,
            embedding,
            cells: cells.to_vec(),
            trunc_n,
            tol_series: 1e-8,
            gaps: None,
            rep: None,
        })
    }

    /// `H₀` spanned by whole cells.
    pub fn from_cells(walk: BandedUnitary, cells: &[i64]) -> Result<Self> {
        let list: Vec<_> = cells
            .iter()
            .map(|&x| (x, (0..walk.structure().dim(x)).collect()))
            .collect();
        Self::new(walk, &list)
    }

    /// Context for a model walk decoupled at `x0`, with `H₀` the given
    /// whole cells. The window is at least `min_half_width` cells per side
    /// and wide enough that edge states at the cut and at the outer seam
    /// overlap by less than `tol`.
    pub fn for_walk(
        walk: &Walk,
        x0: i64,
        cells: &[i64],
        min_half_width: usize,
        tol: f64,
    ) -> Result<Self> {
        let n = required_half_width(walk, min_half_width, tol)?;
        let w = walk.build_window(x0, n, &[walk.decoupler_gentle(x0)])?;
        let rep = walk.rep(w.structure())?;
        let (l, r) = walk.bulk_walks();
        let mut gaps = GapReport {
            gap_at_plus: f64::INFINITY,
            gap_at_minus: f64::INFINITY,
            closed_plus: false,
            closed_minus: false,
        };
        for b in [l, r] {
            let g = essential_gap(&b.symbol().expect("bulk"), GAP_SAMPLES, DEFAULT_GAP_THRESHOLD)?;
            gaps.gap_at_plus = gaps.gap_at_plus.min(g.gap_at_plus);
            gaps.gap_at_minus = gaps.gap_at_minus.min(g.gap_at_minus);
            gaps.closed_plus |= g.closed_plus;
            gaps.closed_minus |= g.closed_minus;
        }
        Ok(Self::from_cells(w, cells)?.with_gaps(gaps).with_rep(rep))
    }

    /// Bulk gaps used to reject unit-circle points inside the spectrum.
    pub fn with_gaps(mut self, gaps: GapReport) -> Self {
        self.gaps = Some(gaps);
        self
    }

    pub fn with_rep(mut self, rep: SymmetryRep) -> Self {
        self.rep = Some(rep);
        self
    }

    pub fn walk(&self) -> &BandedUnitary {
        &self.walk
    }

    pub fn embedding(&self) -> &CMatrix {
        &self.embedding
    }

    pub fn cells(&self) -> &[(i64, Vec<usize>)] {
        &self.cells
    }

    pub fn dim(&self) -> usize {
        self.embedding.ncols()
    }

    /// `V` on `H₀` extended by the identity.
    pub fn extend(&self, v: &CMatrix) -> Result<CMatrix> {
        let d = self.dim();
        if v.shape() != (d, d) {
            return Err(Error::ShapeMismatch {
                expected: (d, d),
                got: v.shape(),
            });
        }
        let e = &self.embedding;
        let n = e.nrows();
        Ok(CMatrix::identity(n, n) + e * (v - CMatrix::identity(d, d)) * e.adjoint())
    }

    /// The same context for the walk `VW` (`left = true`) or `WV`.
    pub fn perturbed(&self, v: &CMatrix, left: bool) -> Result<Self> {
        let vf = self.extend(v)?;
        let d = self.walk.to_dense();
        let m = if left { &vf * d } else { d * &vf };
        let walk = BandedUnitary::from_dense(
            self.walk.structure().clone(),
            &m,
            self.walk.structure().n_cells(),
            self.walk.is_periodic(),
            0.0,
        )?;
        Ok(Self {
            walk,
            ..self.clone()
        })
    }

    fn check_point(&self, z: C64) -> Result<()> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!("|z| = {} > 1", z.norm())));
        }
        if let Some(g) = &self.gaps {
            if (z.norm() - 1.0).abs() < 1e-12 {
                let phi = z.arg().abs();
                if !(phi < g.gap_at_plus || std::f64::consts::PI - phi < g.gap_at_minus) {
                    return Err(Error::InvalidArgument(format!(
                        "z = {z} lies in the bulk spectrum"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Cells per side of the window used by [`SchurContext::for_walk`].
pub fn required_half_width(walk: &Walk, min_half_width: usize, tol: f64) -> Result<usize> {
    let (xp, xm) = bulk_decay_lengths(walk)?;
    let n = auto_half_width(xp.max(xm), tol).max(min_half_width);
    if n > MAX_AUTO_HALF_WIDTH {
        return Err(Error::GapClosed(format!("decay length {:.1}", xp.max(xm))));
    }
    Ok(n)
}

/// `f(z)` through the resolvent.
///
/// On the unit circle the value is the radial limit, extrapolated from
/// `r = 1 - h, 1 - 2h, 1 - 4h` with [`RADIAL_STEP`] as `h`. Evaluating
/// `1 - zQW` at `|z| = 1` directly is ill-posed in a finite window: states
/// at the outer seam are eigenvectors at `±1` whose overlap `ε` with `H₀` is
/// exponentially small, and they put a pole of weight `ε²` at distance `ε²`
/// from the circle. The radial limit does not see them as long as `ε² ≪ h`.
pub fn schur_eval(ctx: &SchurContext, z: C64) -> Result<CMatrix> {
    schur_eval_step(ctx, z, RADIAL_STEP)
}

#[doc(hidden)]
pub fn schur_eval_step(ctx: &SchurContext, z: C64, h: f64) -> Result<CMatrix> {
    ctx.check_point(z)?;
    let w = ctx.walk.to_dense();
    let e = &ctx.embedding;
    let qw = &w - e * (e.adjoint() * &w);
    let at = |z: C64| -> Result<CMatrix> {
        let n = w.nrows();
        let a = CMatrix::identity(n, n) - &qw * z;
        let x = a
            .lu()
            .solve(e)
            .ok_or_else(|| Error::InvalidArgument(format!("1 - zQW singular at z = {z}")))?;
        Ok(e.adjoint() * &w * x)
    };
    if z.norm() < 1.0 - 8.0 * h {
        return at(z);
    }
    let u = z / z.norm();
    let g1 = at(u * (1.0 - h))?;
    let g2 = at(u * (1.0 - 2.0 * h))?;
    let g4 = at(u * (1.0 - 4.0 * h))?;
    // cancels the terms linear and quadratic in h
    Ok((g1 * C64::new(8.0, 0.0) - g2 * C64::new(6.0, 0.0) + g4) / C64::new(3.0, 0.0))
}

/// `f(z)` by summing the first-return series up to `ctx.trunc_n` terms.
///
/// Fails when the last three terms together exceed `ctx.tol_series`; this
/// is the typical outcome on the unit circle, where a finite window keeps
/// returning amplitude.
pub fn schur_eval_series(ctx: &SchurContext, z: C64) -> Result<CMatrix> {
    ctx.check_point(z)?;
    let e = &ctx.embedding;
    // v = (QW)^{n-1} E z^{n-1}, term = E† W v
    let mut v = e.clone();
    let mut sum = CMatrix::zeros(ctx.dim(), ctx.dim());
    let mut last = [0.0_f64; 3];
    for n in 0..ctx.trunc_n {
        let wv = ctx.walk.apply_matrix(&v);
        let term = e.adjoint() * &wv;
        sum += &term;
        last[n % 3] = max_abs(&term);
        // project out H₀ and advance
        let proj = &wv - e * (e.adjoint() * &wv);
        v = proj * z;
    }
    let tail: f64 = last.iter().sum();
    if tail > ctx.tol_series {
        return Err(Error::SeriesNotConverged {
            tail,
            terms: ctx.trunc_n,
        });
    }
    Ok(sum)
}

/// Operator norm of a small matrix.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

#[derive(Clone, Debug)]
pub struct EigenDetection {
    pub lambda: f64,
    pub dimension: usize,
    /// Fixed vectors of `λ f(λ)`, as coordinates in `H₀`.
    pub basis: CMatrix,
    pub chirality_trace: Option<f64>,
}

/// Fixed space of `λ f(λ)` for `λ = ±1`.
pub fn eigendetect(ctx: &SchurContext, lambda: f64, tol: f64) -> Result<EigenDetection> {
    if lambda != 1.0 && lambda != -1.0 {
        return Err(Error::InvalidArgument(format!("λ = {lambda} is not ±1")));
    }
    let f = schur_eval(ctx, C64::new(lambda, 0.0))?;
    let d = ctx.dim();
    let m = f * C64::new(lambda, 0.0) - CMatrix::identity(d, d);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let cols: Vec<_> = (0..d)
        .filter(|&i| svd.singular_values[i] < tol)
        .map(|i| vt.row(i).adjoint())
        .collect();
    let basis = if cols.is_empty() {
        CMatrix::zeros(d, 0)
    } else {
        CMatrix::from_columns(&cols)
    };
    let chirality_trace = match &ctx.rep {
        Some(rep) if rep.symmetry_type().has(Generator::Chiral) && cols_invariant(ctx) => {
            let full = &ctx.embedding * &basis;
            let g = rep.apply(Generator::Chiral, &full);
            Some((full.adjoint() * g).trace().re)
        }
        _ => None,
    };
    Ok(EigenDetection {
        lambda,
        dimension: basis.ncols(),
        basis,
        chirality_trace,
    })
}

/// Whether `H₀` consists of whole cells, so the cellwise symmetries act on it.
fn cols_invariant(ctx: &SchurContext) -> bool {
    let s = ctx.walk.structure();
    ctx.cells.iter().all(|(x, c)| c.len() == s.dim(*x))
}

/// Dimension of the eigenspace of `W` at `λ` inside the cyclic subspace
/// generated by `H₀`: the rank of the projection of `H₀` onto that
/// eigenspace.
pub fn cyclic_eigen_count(ctx: &SchurContext, lambda: f64, tol_eig: f64) -> Result<usize> {
    let (plus, minus) = gap_eigenspaces(&ctx.walk, None, tol_eig)?;
    let e_lambda = if lambda > 0.0 { plus.basis } else { minus.basis };
    if e_lambda.ncols() == 0 {
        return Ok(0);
    }
    let overlap = e_lambda.adjoint() * &ctx.embedding;
    let sv = overlap.svd(false, false).singular_values;
    Ok(sv.iter().filter(|&&s| s > 1e-6).count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbedWalk {
    /// `V W`
    VW,
    /// `W V`
    WV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RenewalFormula {
    /// `f(z) V†`
    FVdag,
    /// `V† f(z)`
    VdagF,
    /// `V f(z)`
    VF,
    /// `f(z) V`
    FV,
}

impl RenewalFormula {
    pub const ALL: [RenewalFormula; 4] = [Self::FVdag, Self::VdagF, Self::VF, Self::FV];

    fn apply(self, f: &CMatrix, v: &CMatrix) -> CMatrix {
        match self {
            Self::FVdag => f * v.adjoint(),
            Self::VdagF => v.adjoint() * f,
            Self::VF => v * f,
            Self::FV => f * v,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenewalReport {
    /// Largest deviation over the samples for every pairing.
    pub deviations: BTreeMap<(PerturbedWalk, RenewalFormula), f64>,
    /// The formula closest to the Schur function of `VW`.
    pub matching: (PerturbedWalk, RenewalFormula),
    pub deviation: f64,
}

/// Compares the Schur function of the perturbed walks `VW` and `WV` with the
/// four candidate expressions in `f` and `V`.
pub fn renewal_check(ctx: &SchurContext, v: &CMatrix, zs: &[C64]) -> Result<RenewalReport> {
    let mut deviations = BTreeMap::new();
    let base: Vec<CMatrix> = zs.iter().map(|&z| schur_eval(ctx, z)).collect::<Result<_>>()?;
    for (side, left) in [(PerturbedWalk::VW, true), (PerturbedWalk::WV, false)] {
        let pert = ctx.perturbed(v, left)?;
        let fp: Vec<CMatrix> = zs.iter().map(|&z| schur_eval(&pert, z)).collect::<Result<_>>()?;
        for formula in RenewalFormula::ALL {
            let dev = base
                .iter()
                .zip(&fp)
                .map(|(f, g)| op_norm(&(g - formula.apply(f, v))))
                .fold(0.0, f64::max);
            deviations.insert((side, formula), dev);
        }
    }
    // `WV` pairs with `f V` exactly as `VW` pairs with `V f`, so the choice
    // is made among the formulas for `VW`
    let (&matching, &deviation) = deviations
        .iter()
        .filter(|(k, _)| k.0 == PerturbedWalk::VW)
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("four variants");
    Ok(RenewalReport {
        deviations,
        matching,
        deviation,
    })
}
