//! Band structures, gap detection and extraction of the eigenspaces at ±1 of
//! finite windows.

use std::f64::consts::PI;

use nalgebra::Schur;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BandedUnitary, CMatrix, CellStructure, StateVector, TIWalkSymbol, C64};
use crate::band::near_unit_subspace;
use crate::symmetry::{hermitian_eigen, Generator, SymmetryRep};

/// Default eigenvalue tolerance in arclength.
pub const DEFAULT_TOL_EIG: f64 = 1e-8;
/// Default phase threshold for declaring a gap closed.
pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-3;
/// Mass fraction required for attributing a vector to an edge.
pub const EDGE_MASS: f64 = 0.9;

/// Eigenvalues of a square complex matrix.
pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    let n = m.nrows();
    if n == 1 {
        return vec![m[(0, 0)]];
    }
    let t = Schur::new(m.clone()).unpack().1;
    (0..n).map(|i| t[(i, i)]).collect()
}

/// Eigenphases in `(-π, π]` of a unitary matrix, ascending.
pub fn eigenphases(u: &CMatrix) -> Vec<f64> {
    let mut p: Vec<f64> = eigenvalues(u)
        .into_iter()
        .map(|z| {
            let a = z.arg();
            if a <= -PI {
                PI
            } else {
                a
            }
        })
        .collect();
    p.sort_by(f64::total_cmp);
    p
}

/// Full spectrum of a finite window.
pub fn window_spectrum(w: &BandedUnitary) -> Vec<C64> {
    eigenvalues(&w.to_dense())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BandStructure {
    pub k_grid: Vec<f64>,
    pub eigenphases: Vec<Vec<f64>>,
}

pub fn band_structure(symbol: &TIWalkSymbol, n_k: usize) -> Result<BandStructure> {
    if n_k < 16 {
        return Err(Error::InvalidArgument(format!("n_k = {n_k} < 16")));
    }
    let k_grid: Vec<f64> = (0..n_k).map(|i| 2.0 * PI * i as f64 / n_k as f64).collect();
    let eigenphases = k_grid.iter().map(|&k| eigenphases(&symbol.at(k))).collect();
    Ok(BandStructure {
        k_grid,
        eigenphases,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub gap_at_plus: f64,
    pub gap_at_minus: f64,
    pub closed_plus: bool,
    pub closed_minus: bool,
}

impl GapReport {
    pub fn is_gapped(&self) -> bool {
        !self.closed_plus && !self.closed_minus
    }

    pub fn min_gap(&self) -> f64 {
        self.gap_at_plus.min(self.gap_at_minus)
    }
}

fn gaps_at(symbol: &TIWalkSymbol, k: f64) -> (f64, f64) {
    eigenphases(&symbol.at(k))
        .into_iter()
        .fold((f64::INFINITY, f64::INFINITY), |(p, m), ph| {
            (p.min(ph.abs()), m.min(PI - ph.abs()))
        })
}

/// Golden-section refinement of a grid minimum on `[k - h, k + h]`.
fn refine_min(f: impl Fn(f64) -> f64, k: f64, h: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (k - h, k + h);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    f(k).min(fc).min(fd)
}

/// Minimal distances of the band phases to 0 and to π.
pub fn essential_gap(symbol: &TIWalkSymbol, n_k: usize, threshold: f64) -> Result<GapReport> {
    let bands = band_structure(symbol, n_k)?;
    let h = 2.0 * PI / n_k as f64;
    let mut best_plus = (f64::INFINITY, 0.0);
    let mut best_minus = (f64::INFINITY, 0.0);
    for (&k, phases) in bands.k_grid.iter().zip(&bands.eigenphases) {
        for &ph in phases {
            if ph.abs() < best_plus.0 {
                best_plus = (ph.abs(), k);
            }
            if PI - ph.abs() < best_minus.0 {
                best_minus = (PI - ph.abs(), k);
            }
        }
    }
    let gap_at_plus = refine_min(|k| gaps_at(symbol, k).0, best_plus.1, h);
    let gap_at_minus = refine_min(|k| gaps_at(symbol, k).1, best_minus.1, h);
    Ok(GapReport {
        gap_at_plus,
        gap_at_minus,
        closed_plus: gap_at_plus < threshold,
        closed_minus: gap_at_minus < threshold,
    })
}

fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Roots of a polynomial given by ascending coefficients.
fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() <= 1e-14 * scale {
        c.pop();
    }
    let lead = c.iter().take_while(|z| z.norm() <= 1e-14 * scale).count();
    let c = &c[lead..];
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    // companion matrix of the monic polynomial
    let mut m = CMatrix::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -c[i] / c[deg];
    }
    eigenvalues(&m)
}

/// Slowest decay length, in cells, of solutions of `Wψ = λψ` for a
/// translation-invariant two-band walk, from the roots `z = e^{ik}` of
/// `det(W(z) - λ)`. Infinite when the gap at `λ` is closed.
pub fn decay_length(symbol: &TIWalkSymbol, lambda: f64) -> Result<f64> {
    if symbol.coin_dim() != 2 {
        return Err(Error::InvalidArgument(
            "decay lengths need a two-band symbol".into(),
        ));
    }
    let l = symbol.range() as i64;
    let len = (2 * l + 1) as usize;
    // entries of z^L (W(z) - λ) as polynomials in z
    let mut e = vec![vec![C64::new(0.0, 0.0); len]; 4];
    for (&j, m) in symbol.jumps() {
        for r in 0..2 {
            for c in 0..2 {
                e[2 * r + c][(j + l) as usize] += m[(r, c)];
            }
        }
    }
    e[0][l as usize] -= lambda;
    e[3][l as usize] -= lambda;
    let ad = poly_mul(&e[0], &e[3]);
    let bc = poly_mul(&e[1], &e[2]);
    let det: Vec<C64> = ad.iter().zip(&bc).map(|(x, y)| x - y).collect();
    if det.iter().all(|z| z.norm() < 1e-13) {
        // flat band at λ
        return Ok(f64::INFINITY);
    }
    let kappa = poly_roots(&det)
        .iter()
        .map(|z| z.norm().ln().abs())
        .fold(f64::INFINITY, f64::min);
    Ok(if kappa > 0.0 { 1.0 / kappa } else { f64::INFINITY })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeAttribution {
    Left,
    Right,
    Ambiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizationProfile {
    pub center: f64,
    pub edge_mass_left: f64,
    pub edge_mass_right: f64,
    pub middle_mass: f64,
}

impl LocalizationProfile {
    pub fn attribution(&self) -> EdgeAttribution {
        if self.edge_mass_left > EDGE_MASS {
            EdgeAttribution::Left
        } else if self.edge_mass_right > EDGE_MASS {
            EdgeAttribution::Right
        } else {
            EdgeAttribution::Ambiguous
        }
    }
}

/// Position expectation and probability masses in the left, middle and right
/// thirds of the window (by cell count).
pub fn localization_profile(v: &StateVector) -> LocalizationProfile {
    profile_raw(&v.structure, v.amplitudes.as_slice())
}

fn profile_raw(s: &CellStructure, amps: &[C64]) -> LocalizationProfile {
    let n = s.n_cells();
    let total: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    let (mut left, mut mid, mut right, mut center) = (0.0, 0.0, 0.0, 0.0);
    for (i, x) in s.cells().enumerate() {
        let off = s.offset(x);
        let m: f64 = amps[off..off + s.dim(x)].iter().map(|z| z.norm_sqr()).sum();
        center += x as f64 * m;
        if 3 * i < n {
            left += m;
        } else if 3 * i >= 2 * n {
            right += m;
        } else {
            mid += m;
        }
    }
    LocalizationProfile {
        center: center / total,
        edge_mass_left: left / total,
        edge_mass_right: right / total,
        middle_mass: mid / total,
    }
}

/// Orthonormal basis of the eigenspace of a finite window at `+1` or `-1`.
///
/// Within the eigenspace the basis is chosen to diagonalize `γ` (when the
/// representation has one) and then the cell position, so that edge states at
/// different ends come out as separate vectors.
#[derive(Clone, Debug)]
pub struct EigenspaceReport {
    pub eigenvalue_target: f64,
    pub structure: CellStructure,
    pub basis: CMatrix,
    pub residuals: Vec<f64>,
    /// `⟨v, W v⟩` for each basis vector.
    pub rayleigh: Vec<C64>,
    pub profiles: Vec<LocalizationProfile>,
    pub edge_attribution: Vec<EdgeAttribution>,
    pub chiralities: Option<Vec<f64>>,
    pub chirality_trace: Option<f64>,
    pub dimension: usize,
}

impl EigenspaceReport {
    pub fn centers(&self) -> Vec<f64> {
        self.profiles.iter().map(|p| p.center).collect()
    }

    pub fn vector(&self, i: usize) -> StateVector {
        StateVector {
            structure: self.structure.clone(),
            amplitudes: self.basis.column(i).into_owned(),
        }
    }

    /// Columns selected by `keep`.
    pub fn select(&self, keep: impl Fn(usize) -> bool) -> CMatrix {
        let cols: Vec<_> = (0..self.dimension)
            .filter(|&i| keep(i))
            .map(|i| self.basis.column(i).into_owned())
            .collect();
        if cols.is_empty() {
            CMatrix::zeros(self.basis.nrows(), 0)
        } else {
            CMatrix::from_columns(&cols)
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Candidate radius around `±1` inside which exact eigenvalues are sought.
const CANDIDATE_RADIUS: f64 = 1e-3;

/// Eigenspaces at `+1` and `-1` of a finite unitary window.
///
/// Eigenphases within `tol_eig/10` of `0` or `π` are accepted; one between
/// `tol_eig/10` and `10·tol_eig` is reported as [`Error::ClusterAmbiguity`].
pub fn gap_eigenspaces(
    w: &BandedUnitary,
    rep: Option<&SymmetryRep>,
    tol_eig: f64,
) -> Result<(EigenspaceReport, EigenspaceReport)> {
    let radius = CANDIDATE_RADIUS.max(100.0 * tol_eig);
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        let cand = near_unit_subspace(w, sign, radius)?;
        let (phases, vecs) = ritz_phases(w, &cand);
        let mut keep = Vec::new();
        for (i, &ph) in phases.iter().enumerate() {
            if ph < tol_eig / 10.0 {
                keep.push(vecs.column(i).into_owned());
            } else if ph <= tol_eig * 10.0 {
                return Err(Error::ClusterAmbiguity {
                    lambda: sign,
                    distance: ph,
                });
            }
        }
        let basis = if keep.is_empty() {
            CMatrix::zeros(w.structure().total_dim(), 0)
        } else {
            CMatrix::from_columns(&keep)
        };
        out.push(finish_report(w, rep, sign, basis)?);
    }
    let minus = out.pop().unwrap();
    Ok((out.pop().unwrap(), minus))
}

/// Spectral subspaces of a finite window for eigenphases within
/// `capture_plus` of `0` and within `capture_minus` of `π`.
///
/// With captures inside the essential gaps of the bulk, these subspaces are
/// symmetric and keep edge states whose eigenvalues have been pushed slightly
/// off `±1` by hybridization across the window.
pub fn spectral_window(
    w: &BandedUnitary,
    rep: Option<&SymmetryRep>,
    capture_plus: f64,
    capture_minus: f64,
) -> Result<(EigenspaceReport, EigenspaceReport)> {
    let plus = near_unit_subspace(w, 1.0, capture_plus)?;
    let minus = near_unit_subspace(w, -1.0, capture_minus)?;
    Ok((
        finish_report(w, rep, 1.0, plus)?,
        finish_report(w, rep, -1.0, minus)?,
    ))
}

/// Distances of the eigenphases of `W` on the invariant subspace spanned by
/// `basis` from the nearer of `0` and `π`, with the matching eigenvectors.
fn ritz_phases(w: &BandedUnitary, basis: &CMatrix) -> (Vec<f64>, CMatrix) {
    if basis.ncols() == 0 {
        return (Vec::new(), basis.clone());
    }
    let wb = w.apply_matrix(basis);
    let wdb = w.adjoint().apply_matrix(basis);
    let sine = basis.adjoint() * (&wb - &wdb) * C64::new(0.0, -0.5);
    let (vals, vecs) = hermitian_eigen(&sine);
    // sin φ is small both near 0 and near π; the subspace already fixes which
    let phases = vals.iter().map(|&s| s.abs().min(1.0).asin()).collect();
    (phases, basis * vecs)
}

/// Eigenspace of a finite window at `lambda ∈ {+1, -1}`.
pub fn eigenspace_near(
    w: &BandedUnitary,
    lambda: f64,
    tol_eig: f64,
    rep: Option<&SymmetryRep>,
) -> Result<EigenspaceReport> {
    if lambda != 1.0 && lambda != -1.0 {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue target {lambda} is not ±1"
        )));
    }
    let (plus, minus) = gap_eigenspaces(w, rep, tol_eig)?;
    Ok(if lambda > 0.0 { plus } else { minus })
}

fn finish_report(
    w: &BandedUnitary,
    rep: Option<&SymmetryRep>,
    target: f64,
    basis: CMatrix,
) -> Result<EigenspaceReport> {
    let s = w.structure();
    let gamma = rep
        .filter(|r| r.symmetry_type().has(Generator::Chiral))
        .map(|r| {
            if r.structure() != s {
                return Err(Error::StructureMismatch(
                    "representation and walk differ in structure".into(),
                ));
            }
            Ok(r)
        })
        .transpose()?;
    let positions = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        s.total_dim(),
        s.positions().into_iter().map(|x| C64::new(x as f64, 0.0)),
    ));
    let localize = |b: &CMatrix| -> CMatrix {
        if b.ncols() == 0 {
            return b.clone();
        }
        let (_, v) = hermitian_eigen(&(b.adjoint() * &positions * b));
        b * v
    };

    let basis = match gamma {
        Some(r) if basis.ncols() > 0 => {
            let gb = r.apply(Generator::Chiral, &basis);
            let (gv, gvecs) = hermitian_eigen(&(basis.adjoint() * &gb));
            let worst = gv
                .iter()
                .map(|&g| (g.abs() - 1.0).abs())
                .fold(0.0, f64::max);
            if worst > 1e-6 {
                return Err(Error::NonInvariantSubspace {
                    generator: "gamma",
                    defect: worst,
                });
            }
            let rotated = &basis * gvecs;
            let sector = |sign: f64| -> CMatrix {
                let cols: Vec<_> = gv
                    .iter()
                    .enumerate()
                    .filter(|(_, &g)| g * sign > 0.0)
                    .map(|(i, _)| rotated.column(i).into_owned())
                    .collect();
                if cols.is_empty() {
                    CMatrix::zeros(basis.nrows(), 0)
                } else {
                    localize(&CMatrix::from_columns(&cols))
                }
            };
            let (p, m) = (sector(1.0), sector(-1.0));
            let mut cols: Vec<_> = p.column_iter().map(|c| c.into_owned()).collect();
            cols.extend(m.column_iter().map(|c| c.into_owned()));
            CMatrix::from_columns(&cols)
        }
        _ => localize(&basis),
    };

    let dim = basis.ncols();
    let wb = w.apply_matrix(&basis);
    let residuals = (0..dim)
        .map(|i| (wb.column(i) - basis.column(i) * C64::new(target, 0.0)).norm())
        .collect();
    let rayleigh = (0..dim)
        .map(|i| (basis.column(i).adjoint() * wb.column(i))[(0, 0)])
        .collect();
    let profiles: Vec<LocalizationProfile> = (0..dim)
        .map(|i| profile_raw(s, basis.column(i).as_slice()))
        .collect();
    let edge_attribution = profiles.iter().map(|p| p.attribution()).collect();
    let chiralities = gamma.map(|r| {
        let gb = r.apply(Generator::Chiral, &basis);
        (0..dim)
            .map(|i| (basis.column(i).adjoint() * gb.column(i))[(0, 0)].re)
            .collect::<Vec<f64>>()
    });
    let chirality_trace = chiralities.as_ref().map(|c| c.iter().sum());
    Ok(EigenspaceReport {
        eigenvalue_target: target,
        structure: s.clone(),
        basis,
        residuals,
        rayleigh,
        profiles,
        edge_attribution,
        chiralities,
        chirality_trace,
        dimension: dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::c;
    use crate::symmetry::{paulis, standard_qubit_cell, SymmetryType};
    use std::collections::BTreeMap;

    #[test]
    fn identity_symbol_bands_and_gaps() {
        let id = TIWalkSymbol::constant(CMatrix::identity(2, 2)).unwrap();
        let b = band_structure(&id, 32).unwrap();
        assert!(b.eigenphases.iter().flatten().all(|&p| p.abs() < 1e-14));
        let g = essential_gap(&id, 32, DEFAULT_GAP_THRESHOLD).unwrap();
        assert!(g.closed_plus && !g.closed_minus);
        assert!((g.gap_at_minus - PI).abs() < 1e-12);

        let neg = TIWalkSymbol::constant(-CMatrix::identity(2, 2)).unwrap();
        let g = essential_gap(&neg, 32, DEFAULT_GAP_THRESHOLD).unwrap();
        assert!(g.gap_at_minus < 1e-12 && g.closed_minus);
        assert!(band_structure(&neg, 8).is_err());
    }

    #[test]
    fn eigenphases_of_diagonal() {
        let u = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::from_polar(1.0, 0.3),
            C64::from_polar(1.0, -2.0),
            c(-1.0, 0.0),
        ]));
        let p = eigenphases(&u);
        assert!((p[0] + 2.0).abs() < 1e-12);
        assert!((p[1] - 0.3).abs() < 1e-12);
        assert!((p[2] - PI).abs() < 1e-12);
    }

    #[test]
    fn onsite_sigma1_eigenspace() {
        let s = CellStructure::uniform(0, 5, 2).unwrap();
        let mut w = BandedUnitary::new(s.clone(), 0, false);
        for x in s.cells() {
            w.set_block(x, x, paulis::sigma1()).unwrap();
        }
        let rep = SymmetryRep::uniform(
            SymmetryType::AIII,
            s.clone(),
            standard_qubit_cell(SymmetryType::AIII).unwrap(),
        )
        .unwrap();
        let e = eigenspace_near(&w, 1.0, DEFAULT_TOL_EIG, Some(&rep)).unwrap();
        assert_eq!(e.dimension, 6);
        // γ = σ₁ = W on the +1 space, so every vector has chirality +1
        assert!((e.chirality_trace.unwrap() - 6.0).abs() < 1e-10);
        let m = eigenspace_near(&w, -1.0, DEFAULT_TOL_EIG, Some(&rep)).unwrap();
        assert_eq!(m.dimension, 6);
        assert!((e.chirality_trace.unwrap() + m.chirality_trace.unwrap()).abs() < 1e-10);
        // position-diagonal basis: each vector sits on one cell
        for p in &e.profiles {
            assert!((p.center - p.center.round()).abs() < 1e-10);
        }
        assert!(e.max_residual() < 1e-12);
        assert!(eigenspace_near(&w, 0.5, DEFAULT_TOL_EIG, None).is_err());
    }

    #[test]
    fn cluster_ambiguity_detected() {
        let s = CellStructure::uniform(0, 0, 2).unwrap();
        let mut w = BandedUnitary::new(s, 0, false);
        let eps = 5e-8;
        w.set_block(
            0,
            0,
            CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                C64::from_polar(1.0, eps),
                C64::from_polar(1.0, 2.0),
            ])),
        )
        .unwrap();
        assert!(matches!(
            eigenspace_near(&w, 1.0, DEFAULT_TOL_EIG, None),
            Err(Error::ClusterAmbiguity { .. })
        ));
        assert_eq!(eigenspace_near(&w, 1.0, 1e-5, None).unwrap().dimension, 1);
        assert_eq!(eigenspace_near(&w, 1.0, 1e-10, None).unwrap().dimension, 0);
    }

    #[test]
    fn profile_thirds() {
        let s = CellStructure::uniform(0, 8, 2).unwrap();
        let left = StateVector::basis(s.clone(), 0, 1);
        let p = localization_profile(&left);
        assert_eq!(p.edge_mass_left, 1.0);
        assert_eq!(p.attribution(), EdgeAttribution::Left);
        let uniform = StateVector::new(
            s.clone(),
            nalgebra::DVector::from_element(18, c(1.0 / 18f64.sqrt(), 0.0)),
        )
        .unwrap();
        let p = localization_profile(&uniform);
        assert!((p.middle_mass - 1.0 / 3.0).abs() < 1e-12);
        assert!((p.center - 4.0).abs() < 1e-12);
        assert_eq!(p.attribution(), EdgeAttribution::Ambiguous);
    }

    #[test]
    fn decay_length_of_shift_free_coin() {
        // W = σ₁ on every cell: eigenvalues ±1 for all k, gap closed
        let s = TIWalkSymbol::constant(paulis::sigma1()).unwrap();
        assert!(decay_length(&s, 1.0).unwrap().is_infinite());
        // W = i·1: no solution at ±1 at all
        let s = TIWalkSymbol::constant(CMatrix::identity(2, 2) * c(0.0, 1.0)).unwrap();
        assert_eq!(decay_length(&s, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn poly_roots_of_known_polynomial() {
        // (z - 2)(z - 0.5) = z² - 2.5 z + 1
        let mut r: Vec<f64> = poly_roots(&[c(1.0, 0.0), c(-2.5, 0.0), c(1.0, 0.0)])
            .iter()
            .map(|z| z.re)
            .collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 0.5).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn symbol_bands_are_unit_modulus() {
        let s = TIWalkSymbol::new(
            2,
            BTreeMap::from([
                (-1, CMatrix::from_row_slice(2, 2, &[c(0.6, 0.), c(0.8, 0.), c(0., 0.), c(0., 0.)])),
                (1, CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(-0.8, 0.), c(0.6, 0.)])),
            ]),
        )
        .unwrap();
        for k in [0.0, 0.7, 2.9] {
            for z in eigenvalues(&s.at(k)) {
                assert!((z.norm() - 1.0).abs() < 1e-10);
            }
        }
    }
}
