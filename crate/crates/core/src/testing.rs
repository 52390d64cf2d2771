//! Random symmetric data for property checks.

use nalgebra::Dyn;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::lattice::{BandedUnitary, CMatrix, CellStructure, C64};
use crate::symmetry::{
    antiunitary_sandwich, hermitian_eigen, paulis, AntiUnitaryOp, CellRep, Generator, SymmetryRep, SymmetryType,
};

pub fn random_complex_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-ish random unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let qr = random_complex_matrix(d, d, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(d, |i, _| {
        let z = r[(i, i)];
        if z.norm() > 0.0 {
            z / z.norm()
        } else {
            C64::new(1.0, 0.0)
        }
    }));
    q * phases
}

pub fn random_hermitian<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let a = random_complex_matrix(d, d, rng);
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// A random finite representation of `ty` on a single cell, built as a direct
/// sum of irreducible blocks (at most `max_blocks`) in a random basis.
///
/// Returns the representation and its index computed from the block
/// content: dimension for D and DIII, number of `γ = +1` minus `γ = -1`
/// components otherwise.
pub fn random_representation<R: Rng>(
    ty: SymmetryType,
    max_blocks: usize,
    rng: &mut R,
) -> (SymmetryRep, i64) {
    let blocks = rng.random_range(1..=max_blocks.max(1));
    let id2 = paulis::identity();
    let mut cell: Option<CellRep> = None;
    let mut content = 0_i64;
    for _ in 0..blocks {
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let s = C64::new(sign, 0.0);
        let block = match ty {
            SymmetryType::D => {
                content += 1;
                CellRep {
                    eta: Some(AntiUnitaryOp::antiunitary(CMatrix::identity(1, 1))),
                    ..Default::default()
                }
            }
            SymmetryType::AIII => {
                content += sign as i64;
                CellRep {
                    gamma: Some(AntiUnitaryOp::unitary(CMatrix::identity(1, 1) * s)),
                    ..Default::default()
                }
            }
            SymmetryType::BDI => {
                content += sign as i64;
                CellRep {
                    eta: Some(AntiUnitaryOp::antiunitary(CMatrix::identity(1, 1))),
                    tau: Some(AntiUnitaryOp::antiunitary(CMatrix::identity(1, 1) * s)),
                    gamma: Some(AntiUnitaryOp::unitary(CMatrix::identity(1, 1) * s)),
                }
            }
            SymmetryType::CII => {
                content += 2 * sign as i64;
                CellRep {
                    eta: Some(AntiUnitaryOp::antiunitary(paulis::i_sigma2())),
                    tau: Some(AntiUnitaryOp::antiunitary(paulis::i_sigma2() * s)),
                    gamma: Some(AntiUnitaryOp::unitary(&id2 * s)),
                }
            }
            SymmetryType::DIII => {
                content += 2;
                CellRep {
                    eta: Some(AntiUnitaryOp::antiunitary(id2.clone())),
                    tau: Some(AntiUnitaryOp::antiunitary(paulis::i_sigma2())),
                    gamma: Some(AntiUnitaryOp::unitary(paulis::i_sigma2())),
                }
            }
        };
        cell = Some(match cell {
            None => block,
            Some(c) => direct_sum(&c, &block),
        });
    }
    let cell = cell.unwrap();
    let v = random_unitary(cell.dim(), rng);
    let rotated = CellRep {
        eta: cell.eta.map(|op| op.conjugate_by(&v)),
        tau: cell.tau.map(|op| op.conjugate_by(&v)),
        gamma: cell.gamma.map(|op| op.conjugate_by(&v)),
    };
    let structure = CellStructure::new(0, vec![rotated.dim()]).unwrap();
    let rep = SymmetryRep::uniform(ty, structure, rotated).expect("valid random representation");
    (rep, content)
}

fn direct_sum(a: &CellRep, b: &CellRep) -> CellRep {
    let sum = |x: &Option<AntiUnitaryOp>, y: &Option<AntiUnitaryOp>| match (x, y) {
        (Some(x), Some(y)) => Some(x.direct_sum(y)),
        _ => None,
    };
    CellRep {
        eta: sum(&a.eta, &b.eta),
        tau: sum(&a.tau, &b.tau),
        gamma: sum(&a.gamma, &b.gamma),
    }
}

/// Projects a Hermitian matrix onto the Hamiltonians of a single-cell
/// representation: `ηH = -Hη`, `γH = -Hγ`, `τH = Hτ`.
pub fn symmetrize_hamiltonian(rep: &SymmetryRep, h: &CMatrix) -> CMatrix {
    assert_eq!(rep.structure().n_cells(), 1, "single-cell representation expected");
    let ty = rep.symmetry_type();
    let cell = rep.cell(rep.structure().x_min());
    let mut acc = h.clone();
    let mut count = 1.0;
    for &(g, _) in ty.squares() {
        let sign = if g == Generator::TimeReversal { 1.0 } else { -1.0 };
        let op = cell.get(g).unwrap();
        acc += antiunitary_sandwich(op, h).unwrap() * C64::new(sign, 0.0);
        count += 1.0;
    }
    acc * C64::new(1.0 / count, 0.0)
}

/// `exp(-iH)` of a Hermitian matrix.
pub fn unitary_exp(h: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(h);
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator_generic(
        Dyn(vals.len()),
        nalgebra::Const::<1>,
        vals.iter().map(|&l| C64::from_polar(1.0, -l)),
    ));
    &vecs * phases * vecs.adjoint()
}

/// A random admissible unitary `W = ± exp(-iH)` for a single-cell
/// representation, as a one-cell banded operator.
pub fn random_admissible_unitary<R: Rng>(rep: &SymmetryRep, rng: &mut R) -> BandedUnitary {
    let n = rep.structure().total_dim();
    let h = symmetrize_hamiltonian(rep, &random_hermitian(n, rng));
    let scale = h.norm() + 1.0;
    let mut w = unitary_exp(&(h * C64::new(2.0 / scale, 0.0)));
    if rng.random_bool(0.5) {
        w = -w;
    }
    let mut out = BandedUnitary::new(rep.structure().clone(), 0, false);
    out.set_block(0, 0, w).unwrap();
    out
}

/// Direct-sum helper exposed for tests that assemble multi-cell data.
pub fn block_diagonal(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = CMatrix::zeros(n, n);
    let mut o = 0;
    for b in blocks {
        m.view_mut((o, o), b.shape()).copy_from(b);
        o += b.nrows();
    }
    m
}
