//! Banded Hermitian kernels for the spectral subspaces near `±1`.
//!
//! For a unitary `W` the matrix `M = 1 ∓ (W + W†)/2` is positive
//! semidefinite, banded, and has eigenvalue `1 - cos φ` (or `1 + cos φ`) on
//! the eigenvectors of `W` with eigenphase `φ`. Eigenphases close to `0` (or
//! `π`) are therefore the bottom of its spectrum, which shift-invert subspace
//! iteration with a banded Cholesky factor finds in linear time.

use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::lattice::{BandedUnitary, CMatrix, C64};
use crate::symmetry::hermitian_eigen;

/// Dense fallback below this dimension.
const DENSE_LIMIT: usize = 160;
const MAX_ITERATIONS: usize = 400;
const RESIDUAL_TOL: f64 = 1e-12;

/// Lower band of a Hermitian matrix, row `i` holding columns `i-p ..= i`.
pub(crate) struct HermitianBand {
    n: usize,
    p: usize,
    data: Vec<C64>,
}

impl HermitianBand {
    fn zeros(n: usize, p: usize) -> Self {
        Self {
            n,
            p,
            data: vec![C64::new(0.0, 0.0); n * (p + 1)],
        }
    }

    fn at(&self, i: usize, j: usize) -> C64 {
        self.data[i * (self.p + 1) + (i - j)]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut C64 {
        &mut self.data[i * (self.p + 1) + (i - j)]
    }

    /// `1 - sign·(W + W†)/2` for a non-periodic banded `W`.
    pub(crate) fn from_walk(w: &BandedUnitary, sign: f64) -> Self {
        let s = w.structure();
        let mut p = 0;
        for (&(x, y), b) in w.blocks() {
            let (ox, oy) = (s.offset(x), s.offset(y));
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    if b[(i, j)] != C64::new(0.0, 0.0) {
                        p = p.max((ox + i).abs_diff(oy + j));
                    }
                }
            }
        }
        let n = s.total_dim();
        let mut m = Self::zeros(n, p);
        for i in 0..n {
            *m.at_mut(i, i) += 1.0;
        }
        let h = -0.5 * sign;
        for (&(x, y), b) in w.blocks() {
            let (ox, oy) = (s.offset(x), s.offset(y));
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    let v = b[(i, j)];
                    if v == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let (gi, gj) = (ox + i, oy + j);
                    if gi >= gj {
                        *m.at_mut(gi, gj) += v * h;
                    }
                    if gj >= gi {
                        *m.at_mut(gj, gi) += v.conj() * h;
                    }
                }
            }
        }
        m
    }

    fn to_dense(&self) -> CMatrix {
        let mut d = CMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in i.saturating_sub(self.p)..=i {
                d[(i, j)] = self.at(i, j);
                d[(j, i)] = self.at(i, j).conj();
            }
        }
        d
    }

    fn mul(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.n, x.ncols());
        for c in 0..x.ncols() {
            for i in 0..self.n {
                for j in i.saturating_sub(self.p)..=i {
                    let a = self.at(i, j);
                    out[(i, c)] += a * x[(j, c)];
                    if j != i {
                        out[(j, c)] += a.conj() * x[(i, c)];
                    }
                }
            }
        }
        out
    }

    /// Cholesky factor of `self + shift`, `None` if not positive definite.
    fn cholesky(&self, shift: f64) -> Option<HermitianBand> {
        let (n, p) = (self.n, self.p);
        let mut l = Self::zeros(n, p);
        for i in 0..n {
            for j in i.saturating_sub(p)..=i {
                let mut sum = self.at(i, j);
                if i == j {
                    sum += shift;
                }
                for k in i.saturating_sub(p)..j {
                    sum -= l.at(i, k) * l.at(j, k).conj();
                }
                if i == j {
                    if !(sum.re > 0.0) {
                        return None;
                    }
                    *l.at_mut(i, i) = C64::new(sum.re.sqrt(), 0.0);
                } else {
                    *l.at_mut(i, j) = sum / l.at(j, j).re;
                }
            }
        }
        Some(l)
    }

    /// Solves `L L† X = B` in place, `self` being the factor `L`.
    fn cholesky_solve(&self, b: &mut CMatrix) {
        let (n, p) = (self.n, self.p);
        for c in 0..b.ncols() {
            for i in 0..n {
                let mut v = b[(i, c)];
                for k in i.saturating_sub(p)..i {
                    v -= self.at(i, k) * b[(k, c)];
                }
                b[(i, c)] = v / self.at(i, i).re;
            }
            for i in (0..n).rev() {
                let mut v = b[(i, c)];
                for k in i + 1..(i + p + 1).min(n) {
                    v -= self.at(k, i).conj() * b[(k, c)];
                }
                b[(i, c)] = v / self.at(i, i).re;
            }
        }
    }

    /// Number of eigenvalues below `t`, from an `LDL†` factorization of
    /// `self - t`; `None` on a vanishing pivot.
    fn count_below(&self, t: f64) -> Option<usize> {
        let (n, p) = (self.n, self.p);
        let mut l = Self::zeros(n, p);
        let mut d = vec![0.0_f64; n];
        let mut count = 0;
        for i in 0..n {
            for j in i.saturating_sub(p)..i {
                let mut sum = self.at(i, j);
                for k in i.saturating_sub(p)..j {
                    sum -= l.at(i, k) * d[k] * l.at(j, k).conj();
                }
                *l.at_mut(i, j) = sum / d[j];
            }
            let mut di = self.at(i, i).re - t;
            for k in i.saturating_sub(p)..i {
                di -= l.at(i, k).norm_sqr() * d[k];
            }
            if di.abs() < 1e-300 || !di.is_finite() {
                return None;
            }
            if di < 0.0 {
                count += 1;
            }
            d[i] = di;
        }
        Some(count)
    }
}

fn orthonormalize(y: CMatrix) -> CMatrix {
    let k = y.ncols();
    let qr = y.qr();
    qr.q().columns(0, k).into_owned()
}

/// Orthonormal basis of the spectral subspace of `w` for eigenphases within
/// `capture` of `0` (`sign = 1`) or of `π` (`sign = -1`).
pub(crate) fn near_unit_subspace(w: &BandedUnitary, sign: f64, capture: f64) -> Result<CMatrix> {
    let n = w.structure().total_dim();
    let t = 1.0 - capture.min(std::f64::consts::FRAC_PI_2).cos();
    if w.is_periodic() || n <= DENSE_LIMIT {
        return Ok(dense_subspace(&dense_m(w, sign), t));
    }
    let m = HermitianBand::from_walk(w, sign);
    let shift = (0.1 * t).max(1e-13);
    let chol = m
        .cholesky(shift)
        .ok_or_else(|| Error::InvalidArgument("shifted operator not positive definite".into()))?;
    let expected = m
        .count_below(t)
        .or_else(|| m.count_below(t * (1.0 + 1e-9)));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut k = expected.map_or(8, |c| c + 6).min(n);
    let mut x = crate::testing::random_complex_matrix(n, k, &mut rng);
    loop {
        if 4 * k > n {
            return Ok(dense_subspace(&m.to_dense(), t));
        }
        let mut done = false;
        for _ in 0..MAX_ITERATIONS {
            let mut y = x.clone();
            chol.cholesky_solve(&mut y);
            let q = orthonormalize(y);
            let mq = m.mul(&q);
            let (theta, v) = hermitian_eigen(&(q.adjoint() * &mq));
            x = &q * &v;
            let mx = &mq * &v;
            let below = theta.iter().filter(|&&th| th < t).count();
            if below + 2 >= k {
                break;
            }
            // without an inertia count, insist on a clear margin above the
            // captured part before trusting it
            let separated = expected.is_some() || theta[below] > 2.0 * t;
            let converged = separated && (0..below).all(|i| {
                let r = (mx.column(i) - x.column(i) * C64::new(theta[i], 0.0)).norm();
                r < RESIDUAL_TOL
            });
            if converged && expected.is_none_or(|e| e == below) {
                let cols: Vec<_> = (0..below).map(|i| x.column(i).into_owned()).collect();
                done = true;
                x = if cols.is_empty() {
                    CMatrix::zeros(n, 0)
                } else {
                    CMatrix::from_columns(&cols)
                };
                break;
            }
        }
        if done {
            return Ok(x);
        }
        // enlarge the block and keep the current directions
        let extra = crate::testing::random_complex_matrix(n, k, &mut rng);
        let mut cols: Vec<_> = x.column_iter().map(|c| c.into_owned()).collect();
        cols.extend(extra.column_iter().map(|c| c.into_owned()));
        k *= 2;
        x = CMatrix::from_columns(&cols);
    }
}

fn dense_m(w: &BandedUnitary, sign: f64) -> CMatrix {
    let d = w.to_dense();
    let n = d.nrows();
    CMatrix::identity(n, n) - (&d + d.adjoint()) * C64::new(0.5 * sign, 0.0)
}

fn dense_subspace(m: &CMatrix, t: f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let cols: Vec<_> = vals
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < t)
        .map(|(i, _)| vecs.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        CMatrix::zeros(m.nrows(), 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{AngleProfile, Boundary, Walk};

    #[test]
    fn banded_matches_dense() {
        let w0 = Walk::crossover(
            &Walk::split_step(AngleProfile::Constant(0.4), AngleProfile::Constant(1.3)),
            &Walk::split_step(AngleProfile::Constant(1.3), AngleProfile::Constant(0.4)),
            0.0,
        )
        .unwrap();
        let w = w0.build(-100, 99, Boundary::Decoupled, &[]).unwrap();
        for sign in [1.0, -1.0] {
            let m = HermitianBand::from_walk(&w, sign);
            let dense = dense_m(&w, sign);
            assert!(crate::lattice::max_abs(&(m.to_dense() - &dense)) < 1e-15);
            let t = 1.0 - 0.2f64.cos();
            let a = near_unit_subspace(&w, sign, 0.2).unwrap();
            let b = dense_subspace(&dense, t);
            assert_eq!(a.ncols(), b.ncols());
            assert_eq!(m.count_below(t), Some(b.ncols()));
            // same subspace: projectors agree
            let pa = &a * a.adjoint();
            let pb = &b * b.adjoint();
            assert!(crate::lattice::max_abs(&(pa - pb)) < 1e-10);
        }
    }

    #[test]
    fn cholesky_solves() {
        let w0 = Walk::split_step(AngleProfile::Constant(0.4), AngleProfile::Constant(1.3));
        let w = w0.build(-40, 39, Boundary::Decoupled, &[]).unwrap();
        let m = HermitianBand::from_walk(&w, 1.0);
        let l = m.cholesky(0.01).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let b = crate::testing::random_complex_matrix(160, 3, &mut rng);
        let mut x = b.clone();
        l.cholesky_solve(&mut x);
        let back = m.mul(&x) + &x * C64::new(0.01, 0.0);
        assert!(crate::lattice::max_abs(&(back - b)) < 1e-10);
    }
}
