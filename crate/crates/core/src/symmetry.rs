//! The five symmetry types, per-cell (anti)unitary symmetry operators,
//! admissibility of walks and the index of finite representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{max_abs, BandedUnitary, CMatrix, CellStructure, C64};

/// Rounding threshold for chiral traces.
pub const TRACE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// η, particle-hole.
    ParticleHole,
    /// τ, time reversal.
    TimeReversal,
    /// γ, chiral.
    Chiral,
}

impl Generator {
    pub fn symbol(self) -> &'static str {
        match self {
            Generator::ParticleHole => "eta",
            Generator::TimeReversal => "tau",
            Generator::Chiral => "gamma",
        }
    }

    pub fn is_antiunitary(self) -> bool {
        !matches!(self, Generator::Chiral)
    }

    /// Whether the walk condition maps `W` to `W†` (γ, τ) rather than `W` (η).
    fn reverses(self) -> bool {
        !matches!(self, Generator::ParticleHole)
    }
}

/// Range of the symmetry index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexGroup {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Z2")]
    Z2,
    #[serde(rename = "2Z")]
    TwoZ,
    #[serde(rename = "2Z2")]
    TwoZ2,
}

impl fmt::Display for IndexGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexGroup::Z => "Z",
            IndexGroup::Z2 => "Z2",
            IndexGroup::TwoZ => "2Z",
            IndexGroup::TwoZ2 => "2Z2",
        })
    }
}

/// An index value tagged with its group. `2Z₂` is stored as `{0, 2}` and
/// added modulo 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaggedIndex {
    pub value: i64,
    pub group: IndexGroup,
}

impl TaggedIndex {
    pub fn new(value: i64, group: IndexGroup) -> Self {
        let value = match group {
            IndexGroup::Z | IndexGroup::TwoZ => value,
            IndexGroup::Z2 => value.rem_euclid(2),
            IndexGroup::TwoZ2 => value.rem_euclid(4),
        };
        Self { value, group }
    }

    pub fn zero(group: IndexGroup) -> Self {
        Self { value: 0, group }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Whether the value is a legal element of its group.
    pub fn in_group(&self) -> bool {
        match self.group {
            IndexGroup::Z => true,
            IndexGroup::Z2 => (0..2).contains(&self.value),
            IndexGroup::TwoZ => self.value % 2 == 0,
            IndexGroup::TwoZ2 => self.value == 0 || self.value == 2,
        }
    }
}

impl Neg for TaggedIndex {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.value, self.group)
    }
}

impl Add for TaggedIndex {
    type Output = TaggedIndex;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.group, rhs.group, "adding indices of different groups");
        Self::new(self.value + rhs.value, self.group)
    }
}

impl fmt::Display for TaggedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.group)
    }
}

/// The symmetry types, with the signs of the squares of their generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryType {
    D,
    AIII,
    BDI,
    CII,
    DIII,
}

impl SymmetryType {
    pub const ALL: [SymmetryType; 5] = [
        SymmetryType::D,
        SymmetryType::AIII,
        SymmetryType::BDI,
        SymmetryType::CII,
        SymmetryType::DIII,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SymmetryType::D => "D",
            SymmetryType::AIII => "AIII",
            SymmetryType::BDI => "BDI",
            SymmetryType::CII => "CII",
            SymmetryType::DIII => "DIII",
        }
    }

    /// Present generators with the sign of their square.
    pub fn squares(self) -> &'static [(Generator, i8)] {
        use Generator::*;
        match self {
            SymmetryType::D => &[(ParticleHole, 1)],
            SymmetryType::AIII => &[(Chiral, 1)],
            SymmetryType::BDI => &[(ParticleHole, 1), (TimeReversal, 1), (Chiral, 1)],
            SymmetryType::CII => &[(ParticleHole, -1), (TimeReversal, -1), (Chiral, 1)],
            SymmetryType::DIII => &[(ParticleHole, 1), (TimeReversal, -1), (Chiral, -1)],
        }
    }

    pub fn has(self, g: Generator) -> bool {
        self.squares().iter().any(|&(h, _)| h == g)
    }

    pub fn square(self, g: Generator) -> Option<i8> {
        self.squares().iter().find(|&&(h, _)| h == g).map(|&(_, s)| s)
    }

    pub fn index_group(self) -> IndexGroup {
        match self {
            SymmetryType::D => IndexGroup::Z2,
            SymmetryType::AIII | SymmetryType::BDI => IndexGroup::Z,
            SymmetryType::CII => IndexGroup::TwoZ,
            SymmetryType::DIII => IndexGroup::TwoZ2,
        }
    }

    /// Whether the index is the chiral trace (as opposed to a dimension count).
    pub fn uses_trace(self) -> bool {
        matches!(self, SymmetryType::AIII | SymmetryType::BDI | SymmetryType::CII)
    }
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A unitary or antiunitary operator `v ↦ U v` or `v ↦ U conj(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiUnitaryOp {
    pub matrix: CMatrix,
    pub conjugates: bool,
}

impl AntiUnitaryOp {
    pub fn unitary(matrix: CMatrix) -> Self {
        Self {
            matrix,
            conjugates: false,
        }
    }

    pub fn antiunitary(matrix: CMatrix) -> Self {
        Self {
            matrix,
            conjugates: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Applies the operator to each column.
    pub fn apply(&self, v: &CMatrix) -> CMatrix {
        if self.conjugates {
            &self.matrix * v.map(|z| z.conj())
        } else {
            &self.matrix * v
        }
    }

    /// Operator product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let matrix = if self.conjugates {
            &self.matrix * other.matrix.map(|z| z.conj())
        } else {
            &self.matrix * &other.matrix
        };
        Self {
            matrix,
            conjugates: self.conjugates != other.conjugates,
        }
    }

    /// Change of basis `V op V†`.
    pub fn conjugate_by(&self, v: &CMatrix) -> Self {
        let matrix = if self.conjugates {
            v * &self.matrix * v.transpose()
        } else {
            v * &self.matrix * v.adjoint()
        };
        Self {
            matrix,
            conjugates: self.conjugates,
        }
    }

    /// Direct sum with another operator of the same kind.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.conjugates, other.conjugates);
        let (a, b) = (self.dim(), other.dim());
        let mut m = CMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.matrix);
        m.view_mut((a, a), (b, b)).copy_from(&other.matrix);
        Self {
            matrix: m,
            conjugates: self.conjugates,
        }
    }
}

/// Returns `U conj(W) U†` for antiunitaries and `U W U†` otherwise, i.e. the
/// matrix of `op ∘ W ∘ op⁻¹`.
pub fn antiunitary_sandwich(op: &AntiUnitaryOp, w: &CMatrix) -> Result<CMatrix> {
    let d = op.dim();
    if w.shape() != (d, d) {
        return Err(Error::ShapeMismatch {
            expected: (d, d),
            got: w.shape(),
        });
    }
    Ok(sandwich_blocks(&op.matrix, &op.matrix, op.conjugates, w))
}

/// `U_x conj?(B) U_y†` for a block `B` from cell `y` to cell `x`.
fn sandwich_blocks(ux: &CMatrix, uy: &CMatrix, conjugates: bool, b: &CMatrix) -> CMatrix {
    if conjugates {
        ux * b.map(|z| z.conj()) * uy.adjoint()
    } else {
        ux * b * uy.adjoint()
    }
}

/// The generators present on one cell.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CellRep {
    pub eta: Option<AntiUnitaryOp>,
    pub tau: Option<AntiUnitaryOp>,
    pub gamma: Option<AntiUnitaryOp>,
}

impl CellRep {
    pub fn get(&self, g: Generator) -> Option<&AntiUnitaryOp> {
        match g {
            Generator::ParticleHole => self.eta.as_ref(),
            Generator::TimeReversal => self.tau.as_ref(),
            Generator::Chiral => self.gamma.as_ref(),
        }
    }

    pub fn dim(&self) -> usize {
        [&self.eta, &self.tau, &self.gamma]
            .into_iter()
            .flatten()
            .map(|op| op.dim())
            .next()
            .unwrap_or(0)
    }

    /// Checks presence, (anti)linearity, squares and pairwise commutation
    /// against a symmetry type.
    pub fn validate(&self, ty: SymmetryType, tol: f64) -> Result<()> {
        let d = self.dim();
        let id = CMatrix::identity(d, d);
        for g in [Generator::ParticleHole, Generator::TimeReversal, Generator::Chiral] {
            match (self.get(g), ty.square(g)) {
                (None, None) => {}
                (Some(_), None) => {
                    return Err(Error::InvalidRepresentation(format!(
                        "{} present but not part of type {ty}",
                        g.symbol()
                    )))
                }
                (None, Some(_)) => {
                    return Err(Error::InvalidRepresentation(format!(
                        "type {ty} requires {}",
                        g.symbol()
                    )))
                }
                (Some(op), Some(sign)) => {
                    if op.dim() != d || op.matrix.ncols() != d {
                        return Err(Error::InvalidRepresentation(format!(
                            "{} has wrong shape",
                            g.symbol()
                        )));
                    }
                    if op.conjugates != g.is_antiunitary() {
                        return Err(Error::InvalidRepresentation(format!(
                            "{} has the wrong (anti)linearity",
                            g.symbol()
                        )));
                    }
                    let u = max_abs(&(op.matrix.adjoint() * &op.matrix - &id));
                    if u > tol {
                        return Err(Error::InvalidRepresentation(format!(
                            "{} not unitary (defect {u:e})",
                            g.symbol()
                        )));
                    }
                    let sq = op.compose(op).matrix;
                    let def = max_abs(&(sq - &id * C64::from(sign as f64)));
                    if def > tol {
                        return Err(Error::InvalidRepresentation(format!(
                            "{} does not square to {sign} (defect {def:e})",
                            g.symbol()
                        )));
                    }
                }
            }
        }
        let present: Vec<&AntiUnitaryOp> =
            [&self.eta, &self.tau, &self.gamma].into_iter().flatten().collect();
        for i in 0..present.len() {
            for j in i + 1..present.len() {
                let ab = present[i].compose(present[j]).matrix;
                let ba = present[j].compose(present[i]).matrix;
                let def = max_abs(&(ab - ba));
                if def > tol {
                    return Err(Error::InvalidRepresentation(format!(
                        "generators do not commute (defect {def:e})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Per-symmetry defects of an admissibility check.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub defects: BTreeMap<Generator, f64>,
}

impl AdmissibilityReport {
    pub fn defect(&self, g: Generator) -> Option<f64> {
        self.defects.get(&g).copied()
    }
}

/// A symmetry type realized cell by cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryRep {
    ty: SymmetryType,
    structure: CellStructure,
    cells: BTreeMap<i64, CellRep>,
}

impl SymmetryRep {
    pub fn new(
        ty: SymmetryType,
        structure: CellStructure,
        cells: BTreeMap<i64, CellRep>,
    ) -> Result<Self> {
        for x in structure.cells() {
            let rep = cells.get(&x).ok_or_else(|| {
                Error::InvalidRepresentation(format!("no representation on cell {x}"))
            })?;
            if rep.dim() != structure.dim(x) {
                return Err(Error::InvalidRepresentation(format!(
                    "cell {x}: representation dimension {} vs. cell dimension {}",
                    rep.dim(),
                    structure.dim(x)
                )));
            }
            rep.validate(ty, 1e-10)?;
        }
        Ok(Self {
            ty,
            structure,
            cells,
        })
    }

    /// The same cell representation on every cell.
    pub fn uniform(ty: SymmetryType, structure: CellStructure, cell: CellRep) -> Result<Self> {
        let cells = structure.cells().map(|x| (x, cell.clone())).collect();
        Self::new(ty, structure, cells)
    }

    pub fn symmetry_type(&self) -> SymmetryType {
        self.ty
    }

    pub fn structure(&self) -> &CellStructure {
        &self.structure
    }

    pub fn cell(&self, x: i64) -> &CellRep {
        &self.cells[&x]
    }

    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        let structure = self.structure.restrict(lo, hi)?;
        let cells = (lo..=hi).map(|x| (x, self.cells[&x].clone())).collect();
        Ok(Self {
            ty: self.ty,
            structure,
            cells,
        })
    }

    /// Applies generator `g` to each column of a global matrix.
    pub fn apply(&self, g: Generator, v: &CMatrix) -> CMatrix {
        let s = &self.structure;
        let mut out = CMatrix::zeros(v.nrows(), v.ncols());
        for x in s.cells() {
            let op = self.cells[&x]
                .get(g)
                .unwrap_or_else(|| panic!("{} not present", g.symbol()));
            let rows = v.rows(s.offset(x), s.dim(x)).into_owned();
            out.rows_mut(s.offset(x), s.dim(x))
                .copy_from(&op.apply(&rows));
        }
        out
    }

    /// Dense matrix of the chiral symmetry, if present.
    pub fn gamma_dense(&self) -> Option<CMatrix> {
        if !self.ty.has(Generator::Chiral) {
            return None;
        }
        let n = self.structure.total_dim();
        Some(self.apply(Generator::Chiral, &CMatrix::identity(n, n)))
    }

    /// Checks `ηWη⁻¹ = W`, `γWγ⁻¹ = W†` and `τWτ⁻¹ = W†` for the present
    /// generators.
    pub fn check_admissible(&self, w: &BandedUnitary, tol: f64) -> Result<AdmissibilityReport> {
        if w.structure() != &self.structure {
            return Err(Error::StructureMismatch(
                "walk and representation live on different cell structures".into(),
            ));
        }
        let mut defects = BTreeMap::new();
        for &(g, _) in self.ty.squares() {
            let mut defect = 0.0_f64;
            // blocks missing on one side count against the other
            let mut keys: Vec<(i64, i64)> = w.blocks().keys().copied().collect();
            keys.extend(w.blocks().keys().map(|&(x, y)| (y, x)));
            keys.sort_unstable();
            keys.dedup();
            for (x, y) in keys {
                let ux = &self.cells[&x].get(g).unwrap().matrix;
                let uy = &self.cells[&y].get(g).unwrap().matrix;
                let (dx, dy) = (self.structure.dim(x), self.structure.dim(y));
                let b = w
                    .block(x, y)
                    .cloned()
                    .unwrap_or_else(|| CMatrix::zeros(dx, dy));
                let lhs = sandwich_blocks(ux, uy, g.is_antiunitary(), &b);
                let rhs = if g.reverses() {
                    w.block(y, x)
                        .map(|m| m.adjoint())
                        .unwrap_or_else(|| CMatrix::zeros(dx, dy))
                } else {
                    b
                };
                defect = defect.max(max_abs(&(lhs - rhs)));
            }
            defects.insert(g, defect);
        }
        let admissible = defects.values().all(|&d| d <= tol);
        Ok(AdmissibilityReport {
            admissible,
            defects,
        })
    }

    /// Symmetry index of the representation restricted to the span of the
    /// orthonormal columns of `basis`.
    pub fn rep_index(&self, basis: &CMatrix, tol: f64) -> Result<TaggedIndex> {
        let n = self.structure.total_dim();
        if basis.nrows() != n {
            return Err(Error::StructureMismatch(format!(
                "basis of length {} on structure of dimension {n}",
                basis.nrows()
            )));
        }
        let d = basis.ncols();
        let group = self.ty.index_group();
        if d == 0 {
            return Ok(TaggedIndex::zero(group));
        }
        for &(g, _) in self.ty.squares() {
            let gv = self.apply(g, basis);
            let resid = &gv - basis * (basis.adjoint() * &gv);
            let defect = resid.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
            if defect > tol {
                return Err(Error::NonInvariantSubspace {
                    generator: g.symbol(),
                    defect,
                });
            }
        }
        match self.ty {
            SymmetryType::D => Ok(TaggedIndex::new(d as i64, group)),
            SymmetryType::DIII => {
                if d % 2 == 1 {
                    return Err(Error::KramersViolation(format!(
                        "odd dimension {d} for type DIII"
                    )));
                }
                Ok(TaggedIndex::new(d as i64, group))
            }
            _ => {
                let gv = self.apply(Generator::Chiral, basis);
                let tr = (basis.adjoint() * gv).trace();
                let t = round_trace(tr)?;
                if self.ty == SymmetryType::CII && t % 2 != 0 {
                    return Err(Error::KramersViolation(format!(
                        "odd chiral trace {t} for type CII"
                    )));
                }
                Ok(TaggedIndex::new(t, group))
            }
        }
    }

    /// Whether cell `x` carries a balanced representation (index zero).
    pub fn check_balanced(&self, x: i64) -> bool {
        let d = self.structure.dim(x);
        let single = CellStructure::new(0, vec![d]).unwrap();
        let rep = SymmetryRep {
            ty: self.ty,
            structure: single,
            cells: BTreeMap::from([(0, self.cells[&x].clone())]),
        };
        rep.rep_index(&CMatrix::identity(d, d), TRACE_TOL)
            .map(|i| i.is_zero())
            .unwrap_or(false)
    }
}

/// Rounds a chiral trace to the nearest integer, rejecting residues above
/// [`TRACE_TOL`].
pub fn round_trace(tr: C64) -> Result<i64> {
    let r = tr.re.round();
    if (tr.re - r).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::NonIntegerTrace { value: tr.re });
    }
    Ok(r as i64)
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in ascending
/// order.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = (m + m.adjoint()) * C64::from(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_columns(
        &order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    (values, vectors)
}

pub mod paulis {
    use super::*;
    use crate::lattice::c;

    pub fn identity() -> CMatrix {
        CMatrix::identity(2, 2)
    }

    pub fn sigma1() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }

    pub fn sigma2() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
    }

    pub fn sigma3() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
    }

    /// `iσ₂ = [[0, 1], [-1, 0]]`.
    pub fn i_sigma2() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(-1., 0.), c(0., 0.)])
    }
}

/// Standard two-dimensional cells: `γ = σ₁`, `η` complex conjugation and
/// `τ = ηγ`, restricted to the generators of `ty` (BDI, AIII or D).
pub fn standard_qubit_cell(ty: SymmetryType) -> Result<CellRep> {
    let eta = AntiUnitaryOp::antiunitary(paulis::identity());
    let gamma = AntiUnitaryOp::unitary(paulis::sigma1());
    let tau = AntiUnitaryOp::antiunitary(paulis::sigma1());
    match ty {
        SymmetryType::BDI => Ok(CellRep {
            eta: Some(eta),
            tau: Some(tau),
            gamma: Some(gamma),
        }),
        SymmetryType::AIII => Ok(CellRep {
            gamma: Some(gamma),
            ..Default::default()
        }),
        SymmetryType::D => Ok(CellRep {
            eta: Some(eta),
            ..Default::default()
        }),
        other => Err(Error::UnsupportedSymmetry(format!(
            "no standard qubit cell for {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::paulis::*;
    use super::*;
    use crate::lattice::c;

    fn single_cell(ty: SymmetryType, cell: CellRep) -> SymmetryRep {
        let d = cell.dim();
        SymmetryRep::uniform(ty, CellStructure::new(0, vec![d]).unwrap(), cell).unwrap()
    }

    #[test]
    fn table_rows() {
        use Generator::*;
        assert_eq!(SymmetryType::D.squares(), &[(ParticleHole, 1)]);
        assert_eq!(SymmetryType::D.index_group(), IndexGroup::Z2);
        assert_eq!(SymmetryType::AIII.index_group(), IndexGroup::Z);
        assert_eq!(SymmetryType::CII.square(TimeReversal), Some(-1));
        assert_eq!(SymmetryType::DIII.square(Chiral), Some(-1));
        assert_eq!(SymmetryType::DIII.index_group(), IndexGroup::TwoZ2);
        for ty in SymmetryType::ALL {
            if ty.squares().len() == 3 {
                let p: i8 = ty.squares().iter().map(|&(_, s)| s).product();
                assert_eq!(p, 1, "{ty}");
            }
        }
    }

    #[test]
    fn tagged_arithmetic() {
        let a = TaggedIndex::new(1, IndexGroup::Z2);
        assert_eq!((a + a).value, 0);
        let b = TaggedIndex::new(2, IndexGroup::TwoZ2);
        assert_eq!((b + b).value, 0);
        assert_eq!(TaggedIndex::new(-3, IndexGroup::Z).value, -3);
        assert!(!TaggedIndex::new(3, IndexGroup::TwoZ).in_group());
    }

    #[test]
    fn sandwich_examples() {
        let w = CMatrix::from_row_slice(2, 2, &[c(0.3, 0.), c(-0.2, 0.), c(0.7, 0.), c(1.1, 0.)]);
        let conj = AntiUnitaryOp::antiunitary(identity());
        assert_eq!(antiunitary_sandwich(&conj, &w).unwrap(), w);

        let d = CMatrix::from_row_slice(2, 2, &[c(1., 2.), c(0., 0.), c(0., 0.), c(3., -1.)]);
        let g = AntiUnitaryOp::unitary(sigma1());
        let swapped = antiunitary_sandwich(&g, &d).unwrap();
        assert_eq!(swapped[(0, 0)], c(3., -1.));
        assert_eq!(swapped[(1, 1)], c(1., 2.));

        let tau = AntiUnitaryOp::antiunitary(i_sigma2());
        let wc = CMatrix::from_row_slice(2, 2, &[c(0.1, 0.4), c(-0.2, 1.0), c(0.5, -0.3), c(0.0, 2.0)]);
        let twice = antiunitary_sandwich(&tau, &antiunitary_sandwich(&tau, &wc).unwrap()).unwrap();
        assert!(max_abs(&(twice - &wc)) < 1e-15);

        assert!(antiunitary_sandwich(&tau, &CMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn rep_index_examples() {
        let bdi = single_cell(SymmetryType::BDI, standard_qubit_cell(SymmetryType::BDI).unwrap());
        let full = bdi.rep_index(&identity(), TRACE_TOL).unwrap();
        assert_eq!(full, TaggedIndex::new(0, IndexGroup::Z));

        // (1,1)/√2 spans γ = +1
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = CMatrix::from_column_slice(2, 1, &[c(s, 0.), c(s, 0.)]);
        assert_eq!(bdi.rep_index(&plus, TRACE_TOL).unwrap().value, 1);

        let up = CMatrix::from_column_slice(2, 1, &[c(1., 0.), c(0., 0.)]);
        assert!(matches!(
            bdi.rep_index(&up, TRACE_TOL),
            Err(Error::NonInvariantSubspace { .. })
        ));

        let d3 = single_cell(
            SymmetryType::D,
            CellRep {
                eta: Some(AntiUnitaryOp::antiunitary(CMatrix::identity(3, 3))),
                ..Default::default()
            },
        );
        assert_eq!(d3.rep_index(&CMatrix::identity(3, 3), TRACE_TOL).unwrap().value, 1);
        assert!(!d3.check_balanced(0));
    }

    #[test]
    fn balanced_cells() {
        let aiii = single_cell(SymmetryType::AIII, standard_qubit_cell(SymmetryType::AIII).unwrap());
        assert!(aiii.check_balanced(0));
        let d2 = single_cell(SymmetryType::D, standard_qubit_cell(SymmetryType::D).unwrap());
        assert!(d2.check_balanced(0));
        let unbalanced = single_cell(
            SymmetryType::BDI,
            CellRep {
                eta: Some(AntiUnitaryOp::antiunitary(identity())),
                tau: Some(AntiUnitaryOp::antiunitary(identity())),
                gamma: Some(AntiUnitaryOp::unitary(identity())),
            },
        );
        assert!(!unbalanced.check_balanced(0));
    }

    #[test]
    fn representation_validation() {
        // γ = iσ₂ squares to -1, wrong for AIII
        let bad = CellRep {
            gamma: Some(AntiUnitaryOp::unitary(i_sigma2())),
            ..Default::default()
        };
        assert!(bad.validate(SymmetryType::AIII, 1e-12).is_err());
        // η = conj and γ = σ₂ do not commute
        let noncommuting = CellRep {
            eta: Some(AntiUnitaryOp::antiunitary(identity())),
            tau: Some(AntiUnitaryOp::antiunitary(sigma2())),
            gamma: Some(AntiUnitaryOp::unitary(sigma2())),
        };
        assert!(noncommuting.validate(SymmetryType::BDI, 1e-12).is_err());
        let missing = CellRep {
            gamma: Some(AntiUnitaryOp::unitary(sigma1())),
            ..Default::default()
        };
        assert!(missing.validate(SymmetryType::BDI, 1e-12).is_err());
    }

    #[test]
    fn identity_walk_admissible_for_every_type() {
        use crate::testing::random_representation;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ty in SymmetryType::ALL {
            let (rep, _) = random_representation(ty, 3, &mut rng);
            let w = BandedUnitary::identity(rep.structure().clone());
            let r = rep.check_admissible(&w, 1e-10).unwrap();
            assert!(r.admissible, "{ty}: {:?}", r.defects);
        }
    }
}
