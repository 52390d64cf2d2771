//! Cell structures, block-banded unitaries and translation-invariant walk
//! symbols.
//!
//! A walk acts on `H = ⊕_x H_x` over a contiguous range of cells. Operators
//! are stored as a map of blocks keyed by `(x, y)`, where block `(x, y)` maps
//! the coin space of cell `y` into the coin space of cell `x`. Only blocks with
//! cell distance at most the interaction length are stored.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Default tolerance for structural checks.
pub const STRUCTURE_TOL: f64 = 1e-10;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Maximum absolute entry of a complex matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// A contiguous range of cells with per-cell coin dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellStructure {
    x_min: i64,
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl CellStructure {
    pub fn new(x_min: i64, dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidStructure("no cells".into()));
        }
        if let Some(i) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidStructure(format!(
                "cell {} has dimension 0",
                x_min + i as i64
            )));
        }
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for d in &dims {
            acc += d;
            offsets.push(acc);
        }
        Ok(Self {
            x_min,
            dims,
            offsets,
        })
    }

    /// Cells `x_min..=x_max`, each of dimension `dim`.
    pub fn uniform(x_min: i64, x_max: i64, dim: usize) -> Result<Self> {
        if x_max < x_min {
            return Err(Error::InvalidStructure(format!(
                "empty range [{x_min}, {x_max}]"
            )));
        }
        Self::new(x_min, vec![dim; (x_max - x_min + 1) as usize])
    }

    pub fn x_min(&self) -> i64 {
        self.x_min
    }

    pub fn x_max(&self) -> i64 {
        self.x_min + self.dims.len() as i64 - 1
    }

    pub fn n_cells(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.x_min && x <= self.x_max()
    }

    pub fn cells(&self) -> impl Iterator<Item = i64> + '_ {
        self.x_min..=self.x_max()
    }

    fn index(&self, x: i64) -> usize {
        assert!(self.contains(x), "cell {x} outside structure");
        (x - self.x_min) as usize
    }

    pub fn dim(&self, x: i64) -> usize {
        self.dims[self.index(x)]
    }

    /// Offset of the first component of cell `x` in the global layout.
    pub fn offset(&self, x: i64) -> usize {
        self.offsets[self.index(x)]
    }

    /// Cell and component of a global index.
    pub fn locate(&self, global: usize) -> (i64, usize) {
        let i = match self.offsets.binary_search(&global) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        (self.x_min + i as i64, global - self.offsets[i])
    }

    /// Cell position of every global index.
    pub fn positions(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.total_dim());
        for x in self.cells() {
            out.extend(std::iter::repeat_n(x, self.dim(x)));
        }
        out
    }

    /// Sub-structure on the cells `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi || !self.contains(lo) || !self.contains(hi) {
            return Err(Error::StructureMismatch(format!(
                "[{lo}, {hi}] not inside [{}, {}]",
                self.x_min,
                self.x_max()
            )));
        }
        Self::new(lo, self.dims[self.index(lo)..=self.index(hi)].to_vec())
    }
}

/// A state on a finite window.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub structure: CellStructure,
    pub amplitudes: CVector,
}

impl StateVector {
    pub fn new(structure: CellStructure, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != structure.total_dim() {
            return Err(Error::StructureMismatch(format!(
                "vector of length {} on structure of dimension {}",
                amplitudes.len(),
                structure.total_dim()
            )));
        }
        Ok(Self {
            structure,
            amplitudes,
        })
    }

    /// Basis vector `|x, component⟩`.
    pub fn basis(structure: CellStructure, x: i64, component: usize) -> Self {
        let mut amplitudes = CVector::zeros(structure.total_dim());
        amplitudes[structure.offset(x) + component] = C64::new(1.0, 0.0);
        Self {
            structure,
            amplitudes,
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Amplitudes of cell `x`.
    pub fn cell(&self, x: i64) -> CVector {
        let off = self.structure.offset(x);
        self.amplitudes
            .rows(off, self.structure.dim(x))
            .into_owned()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitarityReport {
    pub unitary: bool,
    pub defect: f64,
}

/// A block-banded operator over a cell structure.
///
/// With `periodic` set, the cell range is closed into a ring and distances
/// are measured cyclically.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedUnitary {
    structure: CellStructure,
    range: usize,
    periodic: bool,
    blocks: BTreeMap<(i64, i64), CMatrix>,
}

impl BandedUnitary {
    pub fn new(structure: CellStructure, range: usize, periodic: bool) -> Self {
        Self {
            structure,
            range,
            periodic,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(structure: CellStructure) -> Self {
        let mut w = Self::new(structure.clone(), 0, false);
        for x in structure.cells() {
            let d = structure.dim(x);
            w.blocks.insert((x, x), CMatrix::identity(d, d));
        }
        w
    }

    /// Extracts blocks from a dense matrix, rejecting entries beyond `range`
    /// larger than `tol`.
    pub fn from_dense(
        structure: CellStructure,
        dense: &CMatrix,
        range: usize,
        periodic: bool,
        tol: f64,
    ) -> Result<Self> {
        let n = structure.total_dim();
        if dense.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                expected: (n, n),
                got: dense.shape(),
            });
        }
        let mut w = Self::new(structure.clone(), range, periodic);
        let mut outside = 0.0_f64;
        for x in structure.cells() {
            for y in structure.cells() {
                let (ox, dx) = (structure.offset(x), structure.dim(x));
                let (oy, dy) = (structure.offset(y), structure.dim(y));
                let block = dense.view((ox, oy), (dx, dy)).into_owned();
                let m = max_abs(&block);
                if w.distance(x, y) <= range {
                    if m > 0.0 {
                        w.blocks.insert((x, y), block);
                    }
                } else {
                    outside = outside.max(m);
                }
            }
        }
        if outside > tol {
            return Err(Error::NotBanded {
                range,
                max_entry: outside,
            });
        }
        Ok(w)
    }

    pub fn structure(&self) -> &CellStructure {
        &self.structure
    }

    /// Interaction length in cells.
    pub fn range(&self) -> usize {
        self.range
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn blocks(&self) -> &BTreeMap<(i64, i64), CMatrix> {
        &self.blocks
    }

    pub fn block(&self, x: i64, y: i64) -> Option<&CMatrix> {
        self.blocks.get(&(x, y))
    }

    /// Cell distance, cyclic for periodic operators.
    pub fn distance(&self, x: i64, y: i64) -> usize {
        let d = (x - y).unsigned_abs() as usize;
        if self.periodic {
            d.min(self.structure.n_cells() - d)
        } else {
            d
        }
    }

    /// Inserts (or replaces) the block `(x, y)`.
    pub fn set_block(&mut self, x: i64, y: i64, block: CMatrix) -> Result<()> {
        let expected = (self.structure.dim(x), self.structure.dim(y));
        if block.shape() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                got: block.shape(),
            });
        }
        if self.distance(x, y) > self.range {
            return Err(Error::NotBanded {
                range: self.range,
                max_entry: max_abs(&block),
            });
        }
        self.blocks.insert((x, y), block);
        Ok(())
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.structure.total_dim();
        let mut m = CMatrix::zeros(n, n);
        for (&(x, y), b) in &self.blocks {
            let (ox, oy) = (self.structure.offset(x), self.structure.offset(y));
            m.view_mut((ox, oy), b.shape()).copy_from(b);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|(&(x, y), b)| ((y, x), b.adjoint()))
            .collect();
        Self {
            structure: self.structure.clone(),
            range: self.range,
            periodic: self.periodic,
            blocks,
        }
    }

    /// Returns `Wψ`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.structure != self.structure {
            return Err(Error::StructureMismatch(
                "state and walk live on different cell structures".into(),
            ));
        }
        Ok(StateVector {
            structure: self.structure.clone(),
            amplitudes: self.apply_raw(&psi.amplitudes),
        })
    }

    pub(crate) fn apply_raw(&self, v: &CVector) -> CVector {
        let s = &self.structure;
        let mut out = CVector::zeros(s.total_dim());
        for (&(x, y), b) in &self.blocks {
            let src = v.rows(s.offset(y), s.dim(y));
            let mut dst = out.rows_mut(s.offset(x), s.dim(x));
            dst.gemv(C64::new(1.0, 0.0), b, &src, C64::new(1.0, 0.0));
        }
        out
    }

    /// Applies the operator to every column of `m`.
    pub fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        let s = &self.structure;
        let mut out = CMatrix::zeros(s.total_dim(), m.ncols());
        for (&(x, y), b) in &self.blocks {
            let src = m.rows(s.offset(y), s.dim(y));
            let mut dst = out.rows_mut(s.offset(x), s.dim(x));
            dst.gemm(C64::new(1.0, 0.0), b, &src, C64::new(1.0, 0.0));
        }
        out
    }

    /// Checks `W†W = WW† = 1` entrywise within `tol`.
    pub fn check_unitary(&self, tol: f64) -> UnitarityReport {
        let d = self.to_dense();
        let n = d.nrows();
        let id = CMatrix::identity(n, n);
        let a = max_abs(&(d.adjoint() * &d - &id));
        let b = max_abs(&(&d * d.adjoint() - &id));
        let defect = a.max(b);
        UnitarityReport {
            unitary: defect <= tol,
            defect,
        }
    }

    /// Largest entry coupling cells `< cut` with cells `≥ cut`.
    pub fn max_crossing(&self, cut: i64) -> f64 {
        self.blocks
            .iter()
            .filter(|(&(x, y), _)| (x < cut) != (y < cut))
            .fold(0.0_f64, |acc, (_, b)| acc.max(max_abs(b)))
    }

    /// The operator restricted to cells `lo..=hi`.
    ///
    /// Fails if anything couples the range to the rest of the window.
    pub fn restrict(&self, lo: i64, hi: i64, tol: f64) -> Result<Self> {
        let structure = self.structure.restrict(lo, hi)?;
        let inside = |x: i64| x >= lo && x <= hi;
        let mut leak = 0.0_f64;
        let mut blocks = BTreeMap::new();
        for (&(x, y), b) in &self.blocks {
            match (inside(x), inside(y)) {
                (true, true) => {
                    blocks.insert((x, y), b.clone());
                }
                (false, false) => {}
                _ => leak = leak.max(max_abs(b)),
            }
        }
        if leak > tol {
            let cut = if self.blocks.keys().any(|&(x, y)| x < lo || y < lo) {
                lo
            } else {
                hi + 1
            };
            return Err(Error::NotDecoupled {
                cut,
                max_crossing: leak,
            });
        }
        let periodic = self.periodic && structure.n_cells() == self.structure.n_cells();
        Ok(Self {
            structure,
            range: self.range,
            periodic,
            blocks,
        })
    }

    /// Largest entry of a block beyond the declared interaction length.
    pub fn bandedness_defect(&self) -> f64 {
        self.blocks
            .iter()
            .filter(|(&(x, y), _)| self.distance(x, y) > self.range)
            .fold(0.0_f64, |acc, (_, b)| acc.max(max_abs(b)))
    }
}

/// Finite Laurent series `W(k) = Σ_j e^{ikj} W_j` of a translation-invariant
/// walk. `W_j` is the block from cell `x + j` to cell `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct TIWalkSymbol {
    coin_dim: usize,
    jumps: BTreeMap<i64, CMatrix>,
}

impl TIWalkSymbol {
    pub fn new(coin_dim: usize, jumps: BTreeMap<i64, CMatrix>) -> Result<Self> {
        if coin_dim == 0 {
            return Err(Error::InvalidStructure("coin dimension 0".into()));
        }
        for m in jumps.values() {
            if m.shape() != (coin_dim, coin_dim) {
                return Err(Error::ShapeMismatch {
                    expected: (coin_dim, coin_dim),
                    got: m.shape(),
                });
            }
        }
        let jumps = jumps.into_iter().filter(|(_, m)| max_abs(m) > 0.0).collect();
        Ok(Self { coin_dim, jumps })
    }

    /// The on-site symbol `{0: m}`.
    pub fn constant(m: CMatrix) -> Result<Self> {
        let d = m.nrows();
        Self::new(d, BTreeMap::from([(0, m)]))
    }

    pub fn coin_dim(&self) -> usize {
        self.coin_dim
    }

    pub fn jumps(&self) -> &BTreeMap<i64, CMatrix> {
        &self.jumps
    }

    pub fn range(&self) -> usize {
        self.jumps
            .keys()
            .map(|j| j.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates `W(k)`.
    pub fn at(&self, k: f64) -> CMatrix {
        let mut m = CMatrix::zeros(self.coin_dim, self.coin_dim);
        for (&j, wj) in &self.jumps {
            m += wj * C64::from_polar(1.0, k * j as f64);
        }
        m
    }

    /// Laurent product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.coin_dim != other.coin_dim {
            return Err(Error::ShapeMismatch {
                expected: (self.coin_dim, self.coin_dim),
                got: (other.coin_dim, other.coin_dim),
            });
        }
        let mut jumps: BTreeMap<i64, CMatrix> = BTreeMap::new();
        for (&i, a) in &self.jumps {
            for (&j, b) in &other.jumps {
                let entry = jumps
                    .entry(i + j)
                    .or_insert_with(|| CMatrix::zeros(self.coin_dim, self.coin_dim));
                *entry += a * b;
            }
        }
        Self::new(self.coin_dim, jumps)
    }

    /// Largest unitarity defect of `W(k)` over a uniform grid of `n_k` points.
    pub fn unitarity_defect(&self, n_k: usize) -> f64 {
        let id = CMatrix::identity(self.coin_dim, self.coin_dim);
        (0..n_k)
            .map(|i| {
                let m = self.at(2.0 * std::f64::consts::PI * i as f64 / n_k as f64);
                max_abs(&(&m * m.adjoint() - &id))
            })
            .fold(0.0, f64::max)
    }
}

/// A translation-invariant walk cut down to a finite range.
///
/// `walk` holds every block whose source and target lie in the range; the
/// blocks that would wrap around the range ends under periodic closure are
/// kept in `crossing` so that a boundary treatment can be chosen explicitly.
#[derive(Clone, Debug)]
pub struct TruncatedWalk {
    pub walk: BandedUnitary,
    pub crossing: BTreeMap<(i64, i64), CMatrix>,
}

impl TruncatedWalk {
    /// Closes the range into a ring by adding the wrapped blocks.
    pub fn into_periodic(self) -> BandedUnitary {
        let mut w = self.walk;
        w.periodic = true;
        for ((x, y), b) in self.crossing {
            *w.blocks
                .entry((x, y))
                .or_insert_with(|| CMatrix::zeros(b.nrows(), b.ncols())) += b;
        }
        w
    }
}

/// Materializes a translation-invariant symbol on the cells `x_min..=x_max`.
pub fn ti_to_banded(symbol: &TIWalkSymbol, x_min: i64, x_max: i64) -> Result<TruncatedWalk> {
    let l = symbol.range();
    let n_cells = if x_max >= x_min {
        (x_max - x_min + 1) as usize
    } else {
        0
    };
    if n_cells <= 2 * l {
        return Err(Error::RangeTooShort {
            needed: 2 * l,
            got: n_cells,
        });
    }
    let structure = CellStructure::uniform(x_min, x_max, symbol.coin_dim())?;
    let mut walk = BandedUnitary::new(structure, l, false);
    let mut crossing = BTreeMap::new();
    let n = n_cells as i64;
    for x in x_min..=x_max {
        for (&j, wj) in symbol.jumps() {
            let y = x + j;
            if (x_min..=x_max).contains(&y) {
                walk.blocks.insert((x, y), wj.clone());
            } else {
                let wrapped = x_min + (y - x_min).rem_euclid(n);
                crossing.insert((x, wrapped), wj.clone());
            }
        }
    }
    Ok(TruncatedWalk { walk, crossing })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: i64) -> CellStructure {
        CellStructure::uniform(0, n - 1, 2).unwrap()
    }

    #[test]
    fn structure_layout() {
        let s = CellStructure::new(-2, vec![1, 2, 3]).unwrap();
        assert_eq!(s.total_dim(), 6);
        assert_eq!(s.x_max(), 0);
        assert_eq!(s.offset(-1), 1);
        assert_eq!(s.locate(4), (0, 1));
        assert_eq!(s.positions(), vec![-2, -1, -1, 0, 0, 0]);
        assert!(CellStructure::new(0, vec![2, 0]).is_err());
        assert!(CellStructure::uniform(3, 2, 1).is_err());
    }

    #[test]
    fn identity_apply_and_unitarity() {
        let s = chain(5);
        let w = BandedUnitary::identity(s.clone());
        let psi = StateVector::new(
            s.clone(),
            CVector::from_fn(10, |i, _| c(i as f64, -(i as f64) * 0.5)),
        )
        .unwrap();
        assert_eq!(w.apply(&psi).unwrap(), psi);
        let rep = w.check_unitary(STRUCTURE_TOL);
        assert!(rep.unitary);
        assert_eq!(rep.defect, 0.0);
    }

    #[test]
    fn scaled_block_breaks_unitarity() {
        let s = chain(4);
        let mut w = BandedUnitary::identity(s);
        w.set_block(2, 2, CMatrix::identity(2, 2) * c(1.01, 0.0)).unwrap();
        let rep = w.check_unitary(STRUCTURE_TOL);
        assert!(!rep.unitary);
        assert!(rep.defect > 1e-2);
    }

    #[test]
    fn apply_rejects_mismatched_structure() {
        let w = BandedUnitary::identity(chain(4));
        let psi = StateVector::basis(chain(5), 0, 0);
        assert!(matches!(w.apply(&psi), Err(Error::StructureMismatch(_))));
    }

    #[test]
    fn dense_round_trip_and_band_check() {
        let s = chain(6);
        let sym = TIWalkSymbol::new(
            2,
            BTreeMap::from([
                (-1, CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)])),
                (1, CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)])),
            ]),
        )
        .unwrap();
        let w = ti_to_banded(&sym, 0, 5).unwrap().into_periodic();
        let d = w.to_dense();
        let back = BandedUnitary::from_dense(s.clone(), &d, 1, true, 1e-14).unwrap();
        assert_eq!(back.to_dense(), d);
        assert!(matches!(
            BandedUnitary::from_dense(s, &d, 1, false, 1e-14),
            Err(Error::NotBanded { .. })
        ));
    }

    #[test]
    fn symbol_identity_and_range_check() {
        let id = TIWalkSymbol::constant(CMatrix::identity(2, 2)).unwrap();
        assert_eq!(id.at(1.234), CMatrix::identity(2, 2));
        let t = ti_to_banded(&id, 0, 3).unwrap();
        assert!(t.crossing.is_empty());
        assert_eq!(t.walk.to_dense(), CMatrix::identity(8, 8));
        let shift = TIWalkSymbol::new(2, BTreeMap::from([(2, CMatrix::identity(2, 2))])).unwrap();
        assert!(matches!(
            ti_to_banded(&shift, 0, 3),
            Err(Error::RangeTooShort { .. })
        ));
    }

    #[test]
    fn restrict_requires_decoupling() {
        let s = chain(6);
        let mut w = BandedUnitary::identity(s.clone());
        w.range = 1;
        w.set_block(2, 3, CMatrix::identity(2, 2)).unwrap();
        assert!(w.restrict(0, 2, 1e-12).is_err());
        assert!(w.restrict(0, 1, 1e-12).is_ok());
        assert_eq!(w.max_crossing(3), 1.0);
        assert_eq!(w.max_crossing(2), 0.0);
    }
}
