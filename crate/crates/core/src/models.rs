//! The walk zoo: split-step and four-step walks built from real rotation
//! coins and conditional shifts, their decoupling recipes, and crossovers.
//!
//! Coin space is `ℂ²` with basis `(↑, ↓)`. `S↑` moves the up component one
//! cell to the right, `S↓` moves the down component one cell to the left.
//! Finite windows are closed into a ring; with [`Boundary::Decoupled`] the
//! seam between the last and the first cell is cut by the gentle decoupler,
//! which makes the window an exactly unitary chain.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{c, max_abs, BandedUnitary, CMatrix, CellStructure, TIWalkSymbol, C64};
use crate::symmetry::{paulis, standard_qubit_cell, SymmetryRep, SymmetryType};

/// Crossing elements below this count as zero.
pub const DECOUPLING_TOL: f64 = 1e-12;

/// `R(θ) = [[cos θ, -sin θ], [sin θ, cos θ]]`.
pub fn rotation(theta: f64) -> CMatrix {
    let (s, co) = theta.sin_cos();
    CMatrix::from_row_slice(2, 2, &[c(co, 0.), c(-s, 0.), c(s, 0.), c(co, 0.)])
}

/// `R(π/2) = [[0, -1], [1, 0]]` with exact zeros, the gentle decoupling coin.
pub fn quarter_turn() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.)])
}

/// The fixed unitary `[[i, 1], [-1, -i]]/√2` that breaks particle-hole
/// symmetry of the four-step walk.
pub fn garnish_matrix() -> CMatrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[c(0., r), c(r, 0.), c(-r, 0.), c(0., -r)])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleProfile {
    Constant(f64),
    /// `left` for `x < -width/2`, `right` for `x > width/2`, linear in
    /// between. A zero width gives a sharp junction between cells -1 and 0.
    Ramp { left: f64, right: f64, width: f64 },
}

impl AngleProfile {
    pub fn at(&self, x: i64) -> f64 {
        match *self {
            AngleProfile::Constant(t) => t,
            AngleProfile::Ramp { left, right, width } => {
                if width <= 0.0 {
                    return if x < 0 { left } else { right };
                }
                let t = ((x as f64 + width / 2.0) / width).clamp(0.0, 1.0);
                left + t * (right - left)
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        match *self {
            AngleProfile::Constant(_) => true,
            AngleProfile::Ramp { left, right, .. } => left == right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoinLabel {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    SplitStep,
    FourStep { garnish: bool },
}

/// Per-site coin angles and explicit coin overrides.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinProfile {
    pub angles: BTreeMap<CoinLabel, AngleProfile>,
    pub overrides: BTreeMap<(CoinLabel, i64), CMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Coin(CoinLabel),
    /// Outer `C` factor on the left of the four-step product.
    CoinLeft(CoinLabel),
    /// Outer `C` factor on the right of the four-step product.
    CoinRight(CoinLabel),
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecouplingKind {
    /// Connected to the identity through admissible walks.
    Gentle,
    /// Local but not certified gentle.
    Local,
}

/// How a substituted coin is reached from the coin it replaces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoinPath {
    /// `R(θ₀ + t(θ₁ - θ₀))` from the original rotation angle to `θ₁`.
    RotationArc { to_angle: f64 },
    /// `(1 - t) C₀ + t C₁`, generally not unitary.
    Linear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub label: CoinLabel,
    pub site: i64,
    pub coin: CMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecouplingRecipe {
    pub cut: i64,
    pub kind: DecouplingKind,
    pub substitutions: Vec<Substitution>,
    pub path: Option<CoinPath>,
}

impl DecouplingRecipe {
    /// Moves the recipe to another cut.
    pub fn shifted(&self, cut: i64) -> Self {
        let d = cut - self.cut;
        Self {
            cut,
            kind: self.kind,
            substitutions: self
                .substitutions
                .iter()
                .map(|s| Substitution {
                    site: s.site + d,
                    ..s.clone()
                })
                .collect(),
            path: self.path,
        }
    }

    pub fn det_signs(&self) -> Vec<f64> {
        self.substitutions
            .iter()
            .map(|s| {
                let m = &s.coin;
                (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re
            })
            .collect()
    }
}

/// Treatment of the seam between the last and first cell of a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    /// Gentle decoupling at the first cell of the window.
    Decoupled,
}

/// Which decoupler to use at a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decoupler {
    Gentle,
    Reflection,
}

/// A split-step or four-step walk with site-dependent coins.
#[derive(Clone, Debug, PartialEq)]
pub struct Walk {
    kind: ModelKind,
    profile: CoinProfile,
}

impl Walk {
    /// `W = B S↓ A S↑ B` with `A_x = R(θ₂(x))`, `B_x = R(θ₁(x)/2)`.
    pub fn split_step(theta1: AngleProfile, theta2: AngleProfile) -> Self {
        Self {
            kind: ModelKind::SplitStep,
            profile: CoinProfile {
                angles: BTreeMap::from([(CoinLabel::A, theta2), (CoinLabel::B, theta1)]),
                overrides: BTreeMap::new(),
            },
        }
    }

    /// `W = C S↑ B S↑ A S↓ B S↓ C` with `A = R(θ_A)`, `B = R(θ_B)`,
    /// `C = R(θ_C)`.
    ///
    /// With `garnish`, the left `C` becomes `C G` and the right one its chiral
    /// partner `G C`, where `G` is [`garnish_matrix`]; the result keeps the
    /// chiral symmetry and loses particle-hole symmetry.
    pub fn four_step(
        theta_a: AngleProfile,
        theta_b: AngleProfile,
        theta_c: AngleProfile,
        garnish: bool,
    ) -> Self {
        Self {
            kind: ModelKind::FourStep { garnish },
            profile: CoinProfile {
                angles: BTreeMap::from([
                    (CoinLabel::A, theta_a),
                    (CoinLabel::B, theta_b),
                    (CoinLabel::C, theta_c),
                ]),
                overrides: BTreeMap::new(),
            },
        }
    }

    /// A walk equal to `left` for `x < -width/2` and to `right` for
    /// `x > width/2`, with angles interpolated linearly in between.
    pub fn crossover(left: &Walk, right: &Walk, width: f64) -> Result<Self> {
        if left.kind != right.kind {
            return Err(Error::InvalidArgument(
                "crossover between different model kinds".into(),
            ));
        }
        let mut angles = BTreeMap::new();
        for (&label, lp) in &left.profile.angles {
            let (AngleProfile::Constant(l), AngleProfile::Constant(r)) =
                (lp, &right.profile.angles[&label])
            else {
                return Err(Error::InvalidArgument(
                    "crossover endpoints must be translation invariant".into(),
                ));
            };
            angles.insert(
                label,
                AngleProfile::Ramp {
                    left: *l,
                    right: *r,
                    width,
                },
            );
        }
        Ok(Self {
            kind: left.kind,
            profile: CoinProfile {
                angles,
                overrides: BTreeMap::new(),
            },
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn profile(&self) -> &CoinProfile {
        &self.profile
    }

    /// Replaces the coin `label` at `site` by an explicit matrix.
    pub fn with_override(mut self, label: CoinLabel, site: i64, coin: CMatrix) -> Self {
        self.profile.overrides.insert((label, site), coin);
        self
    }

    pub fn symmetry_type(&self) -> SymmetryType {
        match self.kind {
            ModelKind::FourStep { garnish: true } => SymmetryType::AIII,
            _ => SymmetryType::BDI,
        }
    }

    /// Interaction length in cells.
    pub fn interaction_length(&self) -> usize {
        match self.kind {
            ModelKind::SplitStep => 1,
            ModelKind::FourStep { .. } => 2,
        }
    }

    pub fn min_cells(&self) -> usize {
        match self.kind {
            ModelKind::SplitStep => 5,
            ModelKind::FourStep { .. } => 7,
        }
    }

    fn factors(&self) -> &'static [Factor] {
        use CoinLabel::*;
        use Factor::*;
        match self.kind {
            ModelKind::SplitStep => &[Coin(B), Down, Coin(A), Up, Coin(B)],
            ModelKind::FourStep { .. } => &[
                CoinLeft(C),
                Up,
                Coin(B),
                Up,
                Coin(A),
                Down,
                Coin(B),
                Down,
                CoinRight(C),
            ],
        }
    }

    /// Rotation angle of coin `label` at `x` before overrides.
    pub fn angle(&self, label: CoinLabel, x: i64) -> f64 {
        let a = self.profile.angles[&label].at(x);
        match (self.kind, label) {
            (ModelKind::SplitStep, CoinLabel::B) => a / 2.0,
            _ => a,
        }
    }

    /// Coin `label` at `x`, honoring overrides.
    pub fn coin(&self, label: CoinLabel, x: i64) -> CMatrix {
        self.profile
            .overrides
            .get(&(label, x))
            .cloned()
            .unwrap_or_else(|| rotation(self.angle(label, x)))
    }

    fn factor_coin(&self, f: Factor, x: i64, subs: &HashMap<(CoinLabel, i64), CMatrix>) -> CMatrix {
        let (label, side) = match f {
            Factor::Coin(l) => (l, 0),
            Factor::CoinLeft(l) => (l, -1),
            Factor::CoinRight(l) => (l, 1),
            _ => unreachable!(),
        };
        let base = subs
            .get(&(label, x))
            .cloned()
            .unwrap_or_else(|| self.coin(label, x));
        match (self.kind, side) {
            (ModelKind::FourStep { garnish: true }, -1) => base * garnish_matrix(),
            (ModelKind::FourStep { garnish: true }, 1) => garnish_matrix() * base,
            _ => base,
        }
    }

    /// Substitution set of the decoupler at cut `x0`: the walk then has no
    /// matrix elements between cells `< x0` and `≥ x0`.
    pub fn decoupler(&self, x0: i64, which: Decoupler) -> DecouplingRecipe {
        let (coin, kind, path) = match which {
            Decoupler::Gentle => (
                quarter_turn(),
                DecouplingKind::Gentle,
                Some(CoinPath::RotationArc {
                    to_angle: FRAC_PI_2,
                }),
            ),
            Decoupler::Reflection => (paulis::sigma1(), DecouplingKind::Local, None),
        };
        let sites: &[(CoinLabel, i64)] = match self.kind {
            ModelKind::SplitStep => &[(CoinLabel::A, 0)],
            ModelKind::FourStep { .. } => FOUR_STEP_DECOUPLING_SITES,
        };
        DecouplingRecipe {
            cut: x0,
            kind,
            substitutions: sites
                .iter()
                .map(|&(label, d)| Substitution {
                    label,
                    site: x0 + d,
                    coin: coin.clone(),
                })
                .collect(),
            path,
        }
    }

    pub fn decoupler_gentle(&self, x0: i64) -> DecouplingRecipe {
        self.decoupler(x0, Decoupler::Gentle)
    }

    pub fn decoupler_reflection(&self, x0: i64) -> DecouplingRecipe {
        self.decoupler(x0, Decoupler::Reflection)
    }

    /// Builds the walk on cells `x_min..=x_max` with the given cuts applied.
    ///
    /// Each cut is checked with [`verify_decoupled`]; a recipe that fails to
    /// decouple is an error.
    pub fn build(
        &self,
        x_min: i64,
        x_max: i64,
        boundary: Boundary,
        cuts: &[DecouplingRecipe],
    ) -> Result<BandedUnitary> {
        let w = self.build_with(x_min, x_max, boundary, cuts, &HashMap::new())?;
        for cut in cuts {
            let (ok, max_crossing) = verify_decoupled(&w, cut.cut);
            if !ok {
                return Err(Error::NotDecoupled {
                    cut: cut.cut,
                    max_crossing,
                });
            }
        }
        Ok(w)
    }

    /// Builds the window `x0 - half_width ..= x0 + half_width - 1` with
    /// decoupled outer boundary.
    pub fn build_window(
        &self,
        x0: i64,
        half_width: usize,
        cuts: &[DecouplingRecipe],
    ) -> Result<BandedUnitary> {
        let n = half_width as i64;
        self.build(x0 - n, x0 + n - 1, Boundary::Decoupled, cuts)
    }

    fn build_with(
        &self,
        x_min: i64,
        x_max: i64,
        boundary: Boundary,
        cuts: &[DecouplingRecipe],
        extra: &HashMap<(CoinLabel, i64), CMatrix>,
    ) -> Result<BandedUnitary> {
        if x_max < x_min || ((x_max - x_min + 1) as usize) < self.min_cells() {
            return Err(Error::RangeTooShort {
                needed: self.min_cells() - 1,
                got: (x_max - x_min + 1).max(0) as usize,
            });
        }
        let n = x_max - x_min + 1;
        let wrap = |x: i64| x_min + (x - x_min).rem_euclid(n);
        let mut subs: HashMap<(CoinLabel, i64), CMatrix> = HashMap::new();
        let mut recipes: Vec<DecouplingRecipe> = Vec::new();
        if boundary == Boundary::Decoupled {
            recipes.push(self.decoupler_gentle(x_min));
        }
        recipes.extend(cuts.iter().cloned());
        for r in &recipes {
            for s in &r.substitutions {
                subs.insert((s.label, wrap(s.site)), s.coin.clone());
            }
        }
        for (k, v) in extra {
            subs.insert((k.0, wrap(k.1)), v.clone());
        }

        let l = self.interaction_length();
        let structure = CellStructure::uniform(x_min, x_max, 2)?;
        let mut w = BandedUnitary::new(structure, l, boundary == Boundary::Periodic);
        // coins per factor and cell, resolved once
        let factors = self.factors();
        let coins: Vec<Option<Vec<CMatrix>>> = factors
            .iter()
            .map(|&f| match f {
                Factor::Up | Factor::Down => None,
                _ => Some((x_min..=x_max).map(|x| self.factor_coin(f, x, &subs)).collect()),
            })
            .collect();

        let mut seam_leak = 0.0_f64;
        let mut blocks: BTreeMap<(i64, i64), CMatrix> = BTreeMap::new();
        for y in x_min..=x_max {
            for comp in 0..2 {
                // sparse column: unwrapped position -> amplitudes
                let mut state: BTreeMap<i64, [C64; 2]> = BTreeMap::new();
                let mut init = [C64::new(0.0, 0.0); 2];
                init[comp] = C64::new(1.0, 0.0);
                state.insert(y, init);
                for (fi, &f) in factors.iter().enumerate().rev() {
                    state = match f {
                        Factor::Up | Factor::Down => {
                            let (moving, step) = if f == Factor::Up { (0, 1) } else { (1, -1) };
                            let mut next: BTreeMap<i64, [C64; 2]> = BTreeMap::new();
                            for (&p, a) in &state {
                                next.entry(p).or_default()[1 - moving] += a[1 - moving];
                                next.entry(p + step).or_default()[moving] += a[moving];
                            }
                            next
                        }
                        _ => {
                            let cs = coins[fi].as_ref().unwrap();
                            state
                                .into_iter()
                                .map(|(p, a)| {
                                    let m = &cs[(wrap(p) - x_min) as usize];
                                    (
                                        p,
                                        [
                                            m[(0, 0)] * a[0] + m[(0, 1)] * a[1],
                                            m[(1, 0)] * a[0] + m[(1, 1)] * a[1],
                                        ],
                                    )
                                })
                                .collect()
                        }
                    };
                }
                for (p, a) in state {
                    let x = wrap(p);
                    if boundary == Boundary::Decoupled && x != p {
                        seam_leak = seam_leak.max(a[0].norm()).max(a[1].norm());
                        continue;
                    }
                    let b = blocks.entry((x, y)).or_insert_with(|| CMatrix::zeros(2, 2));
                    b[(0, comp)] += a[0];
                    b[(1, comp)] += a[1];
                }
            }
        }
        if seam_leak > DECOUPLING_TOL {
            return Err(Error::NotDecoupled {
                cut: x_min,
                max_crossing: seam_leak,
            });
        }
        for ((x, y), b) in blocks {
            if max_abs(&b) > 0.0 {
                w.set_block(x, y, b)?;
            }
        }
        Ok(w)
    }

    /// The symmetry representation on a cell structure: `γ = ⊕σ₁`, `η` complex
    /// conjugation and `τ = ηγ` (BDI), or `γ` alone for the garnished
    /// four-step walk (AIII).
    pub fn rep(&self, structure: &CellStructure) -> Result<SymmetryRep> {
        let ty = self.symmetry_type();
        SymmetryRep::uniform(ty, structure.clone(), standard_qubit_cell(ty)?)
    }

    /// The translation-invariant walks this one approaches far to the left and
    /// far to the right (overrides dropped).
    pub fn bulk_walks(&self) -> (Walk, Walk) {
        let side = |pick_left: bool| {
            let angles = self
                .profile
                .angles
                .iter()
                .map(|(&l, p)| {
                    let v = match *p {
                        AngleProfile::Constant(t) => t,
                        AngleProfile::Ramp { left, right, .. } => {
                            if pick_left {
                                left
                            } else {
                                right
                            }
                        }
                    };
                    (l, AngleProfile::Constant(v))
                })
                .collect();
            Walk {
                kind: self.kind,
                profile: CoinProfile {
                    angles,
                    overrides: BTreeMap::new(),
                },
            }
        };
        (side(true), side(false))
    }

    /// Quasi-momentum symbol, for translation-invariant walks without
    /// overrides.
    pub fn symbol(&self) -> Option<TIWalkSymbol> {
        if !self.profile.overrides.is_empty()
            || !self.profile.angles.values().all(|p| p.is_constant())
        {
            return None;
        }
        let up = TIWalkSymbol::new(
            2,
            BTreeMap::from([
                (-1, diag(1.0, 0.0)),
                (0, diag(0.0, 1.0)),
            ]),
        )
        .ok()?;
        let down = TIWalkSymbol::new(
            2,
            BTreeMap::from([
                (0, diag(1.0, 0.0)),
                (1, diag(0.0, 1.0)),
            ]),
        )
        .ok()?;
        let empty = HashMap::new();
        let mut acc = TIWalkSymbol::constant(CMatrix::identity(2, 2)).ok()?;
        for &f in self.factors() {
            let next = match f {
                Factor::Up => up.clone(),
                Factor::Down => down.clone(),
                _ => TIWalkSymbol::constant(self.factor_coin(f, 0, &empty)).ok()?,
            };
            acc = acc.compose(&next).ok()?;
        }
        Some(acc)
    }

    /// Walk with the recipe's coins replaced by the path value at `t`.
    fn path_walk(
        &self,
        recipe: &DecouplingRecipe,
        t: f64,
        x_min: i64,
        x_max: i64,
    ) -> Result<BandedUnitary> {
        let path = recipe.path.ok_or(Error::MissingPath)?;
        let mut extra = HashMap::new();
        for s in &recipe.substitutions {
            let coin = if t >= 1.0 {
                s.coin.clone()
            } else {
                match path {
                    CoinPath::RotationArc { to_angle } => {
                        let a0 = self.angle(s.label, s.site);
                        rotation(a0 + t * (to_angle - a0))
                    }
                    CoinPath::Linear => {
                        let c0 = self.coin(s.label, s.site);
                        c0 * C64::new(1.0 - t, 0.0) + &s.coin * C64::new(t, 0.0)
                    }
                }
            };
            extra.insert((s.label, s.site), coin);
        }
        self.build_with(x_min, x_max, Boundary::Decoupled, &[], &extra)
    }
}

/// Four-step decoupler: `A` and `B` substituted on the cell left of the cut.
pub const FOUR_STEP_DECOUPLING_SITES: &[(CoinLabel, i64)] = &[(CoinLabel::A, -1), (CoinLabel::B, -1)];

fn diag(a: f64, b: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(a, 0.), c(0., 0.), c(0., 0.), c(b, 0.)])
}

/// Whether no matrix element couples cells `< x0` with cells `≥ x0`, with the
/// largest crossing element.
pub fn verify_decoupled(w: &BandedUnitary, x0: i64) -> (bool, f64) {
    let m = w.max_crossing(x0);
    (m <= DECOUPLING_TOL, m)
}

/// Checks that every sampled walk along the recipe's path is unitary and
/// admissible.
pub fn gentle_path_check(
    walk: &Walk,
    recipe: &DecouplingRecipe,
    half_width: usize,
    n_samples: usize,
) -> Result<bool> {
    if recipe.path.is_none() {
        return Err(Error::MissingPath);
    }
    let n = half_width as i64;
    let (x_min, x_max) = (recipe.cut - n, recipe.cut + n - 1);
    let structure = CellStructure::uniform(x_min, x_max, 2)?;
    let rep = walk.rep(&structure)?;
    for i in 0..n_samples.max(2) {
        let t = i as f64 / (n_samples.max(2) - 1) as f64;
        let w = walk.path_walk(recipe, t, x_min, x_max)?;
        if !w.check_unitary(1e-10).unitary || !rep.check_admissible(&w, 1e-10)?.admissible {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ti_to_banded, StateVector, STRUCTURE_TOL};
    use crate::symmetry::Generator;
    use rand::{Rng, SeedableRng};

    fn ss(t1: f64, t2: f64) -> Walk {
        Walk::split_step(AngleProfile::Constant(t1), AngleProfile::Constant(t2))
    }

    fn fs(a: f64, b: f64, cc: f64, garnish: bool) -> Walk {
        Walk::four_step(
            AngleProfile::Constant(a),
            AngleProfile::Constant(b),
            AngleProfile::Constant(cc),
            garnish,
        )
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotation(0.0), CMatrix::identity(2, 2));
        assert!(max_abs(&(rotation(FRAC_PI_2) - quarter_turn())) < 1e-15);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let t: f64 = rng.random_range(-10.0..10.0);
            let h = rotation(t) * paulis::sigma1();
            assert!(max_abs(&(&h - h.adjoint())) < 1e-15);
        }
    }

    #[test]
    fn trivial_split_step_is_conditional_shift() {
        let w = ss(0.0, 0.0).build(0, 4, Boundary::Periodic, &[]).unwrap();
        let s = w.structure().clone();
        let out = w.apply(&StateVector::basis(s.clone(), 2, 0)).unwrap();
        assert_eq!(out, StateVector::basis(s.clone(), 3, 0));
        let out = w.apply(&StateVector::basis(s.clone(), 2, 1)).unwrap();
        assert_eq!(out, StateVector::basis(s, 1, 1));
    }

    #[test]
    fn trivial_four_step_is_double_shift() {
        let w = fs(0.0, 0.0, 0.0, false).build(0, 8, Boundary::Periodic, &[]).unwrap();
        let s = w.structure().clone();
        let out = w.apply(&StateVector::basis(s.clone(), 4, 0)).unwrap();
        assert_eq!(out, StateVector::basis(s.clone(), 6, 0));
        let out = w.apply(&StateVector::basis(s.clone(), 4, 1)).unwrap();
        assert_eq!(out, StateVector::basis(s, 2, 1));
    }

    #[test]
    fn chiral_shift_identities() {
        // γ S↓ = S↑† γ and γ S↑ = S↓† γ on a ring
        let up = Walk::split_step(AngleProfile::Constant(0.0), AngleProfile::Constant(0.0));
        let s = CellStructure::uniform(0, 6, 2).unwrap();
        let g = up.rep(&s).unwrap().gamma_dense().unwrap();
        let shift = |moving: usize, step: i64| -> CMatrix {
            let n = 7;
            let mut m = CMatrix::zeros(14, 14);
            for x in 0..n {
                for comp in 0..2 {
                    let to = if comp == moving { (x + step).rem_euclid(n) } else { x };
                    m[((to * 2) as usize + comp, (x * 2) as usize + comp)] = c(1.0, 0.0);
                }
            }
            m
        };
        let (s_up, s_down) = (shift(0, 1), shift(1, -1));
        assert_eq!(&g * &s_down, s_up.adjoint() * &g);
        assert_eq!(&g * &s_up, s_down.adjoint() * &g);
    }

    #[test]
    fn split_step_admissible_and_unitary() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let w0 = ss(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let w = w0.build(-20, 19, Boundary::Decoupled, &[]).unwrap();
            assert!(w.check_unitary(1e-12).unitary);
            assert_eq!(w.bandedness_defect(), 0.0);
            let rep = w0.rep(w.structure()).unwrap();
            let r = rep.check_admissible(&w, 1e-12).unwrap();
            assert!(r.admissible, "{:?}", r.defects);
        }
    }

    #[test]
    fn four_step_admissibility_and_garnish() {
        let w0 = fs(0.4, -1.1, 0.7, false);
        let w = w0.build(-15, 14, Boundary::Decoupled, &[]).unwrap();
        assert!(w.check_unitary(1e-12).unitary);
        assert!(w0.rep(w.structure()).unwrap().check_admissible(&w, 1e-12).unwrap().admissible);

        let g0 = fs(0.4, -1.1, 0.7, true);
        let g = g0.build(-15, 14, Boundary::Decoupled, &[]).unwrap();
        assert!(g.check_unitary(1e-12).unitary);
        let aiii = g0.rep(g.structure()).unwrap();
        assert!(aiii.check_admissible(&g, 1e-12).unwrap().admissible);
        let bdi = SymmetryRep::uniform(
            SymmetryType::BDI,
            g.structure().clone(),
            standard_qubit_cell(SymmetryType::BDI).unwrap(),
        )
        .unwrap();
        let r = bdi.check_admissible(&g, 1e-10).unwrap();
        assert!(r.defect(Generator::Chiral).unwrap() < 1e-12);
        assert!(r.defect(Generator::ParticleHole).unwrap() > 0.1);
    }

    #[test]
    fn symbol_matches_banded_interior() {
        for w0 in [ss(0.7, -1.9), fs(0.3, 1.2, -0.8, true)] {
            let sym = w0.symbol().unwrap();
            assert!(sym.unitarity_defect(64) < 1e-12);
            let w = w0.build(-10, 9, Boundary::Periodic, &[]).unwrap();
            let t = ti_to_banded(&sym, -10, 9).unwrap().into_periodic();
            assert!(max_abs(&(w.to_dense() - t.to_dense())) < 1e-14);
        }
    }

    #[test]
    fn split_step_symbol_at_zero() {
        // at k = 0 both shifts are the identity
        let (t1, t2) = (0.9, -0.4);
        let sym = ss(t1, t2).symbol().unwrap();
        let b = rotation(t1 / 2.0);
        let expected = &b * rotation(t2) * &b;
        assert!(max_abs(&(sym.at(0.0) - expected)) < 1e-14);
    }

    #[test]
    fn decouplers_decouple() {
        for w0 in [ss(0.7, -1.9), fs(0.3, 1.2, -0.8, false), fs(0.3, 1.2, -0.8, true)] {
            for which in [Decoupler::Gentle, Decoupler::Reflection] {
                let r = w0.decoupler(0, which);
                let w = w0.build(-12, 11, Boundary::Decoupled, &[r]).unwrap();
                let (ok, m) = verify_decoupled(&w, 0);
                assert!(ok && m < 1e-14, "{which:?}: {m}");
                assert!(w.check_unitary(1e-12).unitary);
            }
            let undecoupled = w0.build(-12, 11, Boundary::Decoupled, &[]).unwrap();
            let (ok, m) = verify_decoupled(&undecoupled, 0);
            assert!(!ok && m > 0.1);
        }
    }

    #[test]
    fn gentle_path_admissible_reflection_linear_path_not() {
        for w0 in [ss(0.7, -1.9), fs(0.3, 1.2, -0.8, false), fs(0.3, 1.2, -0.8, true)] {
            let gentle = w0.decoupler_gentle(0);
            assert!(gentle_path_check(&w0, &gentle, 10, 21).unwrap());
            let mut naive = w0.decoupler_reflection(0);
            assert!(matches!(
                gentle_path_check(&w0, &naive, 10, 21),
                Err(Error::MissingPath)
            ));
            naive.path = Some(CoinPath::Linear);
            assert!(!gentle_path_check(&w0, &naive, 10, 21).unwrap());
            assert!(naive.det_signs().iter().all(|&d| d < 0.0));
            assert!(gentle.det_signs().iter().all(|&d| d > 0.0));
        }
    }

    #[test]
    fn crossover_profiles() {
        let l = ss(0.5, 1.0);
        let r = ss(2.0, -1.0);
        let x = Walk::crossover(&l, &r, 0.0).unwrap();
        assert_eq!(x.angle(CoinLabel::A, -1), 1.0);
        assert_eq!(x.angle(CoinLabel::A, 0), -1.0);
        let same = Walk::crossover(&l, &l, 6.0).unwrap();
        assert!(same.symbol().is_some());
        let ramp = Walk::crossover(&l, &r, 4.0).unwrap();
        assert_eq!(ramp.angle(CoinLabel::A, -3), 1.0);
        assert_eq!(ramp.angle(CoinLabel::A, 0), 0.0);
        assert_eq!(ramp.angle(CoinLabel::A, 3), -1.0);

        // outside the ramp the blocks coincide with the bulk walks
        let wx = ramp.build(-20, 19, Boundary::Decoupled, &[]).unwrap();
        let wl = l.build(-20, 19, Boundary::Decoupled, &[]).unwrap();
        let wr = r.build(-20, 19, Boundary::Decoupled, &[]).unwrap();
        assert_eq!(wx.block(-10, -9), wl.block(-10, -9));
        assert_eq!(wx.block(10, 11), wr.block(10, 11));
        let rep = ramp.rep(wx.structure()).unwrap();
        assert!(rep.check_admissible(&wx, STRUCTURE_TOL).unwrap().admissible);
    }
}
