//! Dense operators and density matrices on a truncated single-mode Fock
//! space `|0⟩ … |dim−1⟩`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Top-level population allowed during any evolution before the run is
/// aborted with a raise-dim error.
pub const LEAKAGE_BUDGET: f64 = 1e-8;

/// Eigenvalues below this magnitude are treated as exactly zero.
pub const EIGEN_ZERO: f64 = 1e-12;

/// Number of retained Fock levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockDim(usize);

impl FockDim {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        Ok(FockDim(dim))
    }

    /// Default cutoff `max(40, 8·max(n, n̄) + 20)` for a probe of mean
    /// photon number `n` in a bath of occupation `n̄`.
    pub fn default_for(n: f64, nbar: f64) -> Self {
        let scale = n.max(nbar).max(0.0);
        let dim = (8.0 * scale + 20.0).ceil() as usize;
        FockDim(dim.max(40))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl std::fmt::Display for FockDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Truncated annihilation operator: `a|m⟩ = √m |m−1⟩`.
pub fn annihilation(dim: FockDim) -> CMatrix {
    let d = dim.get();
    let mut a = CMatrix::zeros(d, d);
    for m in 1..d {
        a[(m - 1, m)] = c((m as f64).sqrt());
    }
    a
}

pub fn creation(dim: FockDim) -> CMatrix {
    annihilation(dim).adjoint()
}

pub fn number_operator(dim: FockDim) -> CMatrix {
    let d = dim.get();
    CMatrix::from_diagonal(&nalgebra::DVector::from_fn(d, |m, _| c(m as f64)))
}

/// Largest entrywise modulus of `m − m†`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let d = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in i..d {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_off_diagonal(m: &CMatrix) -> f64 {
    let d = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
/// Eigenvalues with magnitude below [`EIGEN_ZERO`] are snapped to zero.
///
/// Runs on the real symmetric solver: directly for real input, otherwise
/// on the embedding `[[A, −B], [B, A]]` of `A + iB`, whose spectrum is
/// that of the input with every eigenvalue doubled.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let d = m.nrows();
    let (mut values, vectors) = if m.iter().all(|z| z.im == 0.0) {
        let eig = shifted_symmetric_eigen(m.map(|z| z.re));
        (eig.eigenvalues.as_slice().to_vec(), eig.eigenvectors.map(|x| Complex64::new(x, 0.0)))
    } else {
        let eig = shifted_symmetric_eigen(real_embedding(m));
        let candidates: Vec<Vec<Complex64>> = (0..2 * d)
            .map(|k| {
                let col = eig.eigenvectors.column(k);
                (0..d).map(|i| Complex64::new(col[i], col[i + d])).collect()
            })
            .collect();
        let basis = pivoted_orthonormal(candidates, d);
        let vectors = CMatrix::from_fn(d, d, |i, k| basis[k][i]);
        let values = (0..d)
            .map(|k| {
                let v = vectors.column(k);
                (v.adjoint() * m * v)[(0, 0)].re
            })
            .collect();
        (values, vectors)
    };

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted = CMatrix::from_fn(d, d, |i, k| vectors[(i, order[k])]);
    values = order.iter().map(|&k| values[k]).collect();
    for l in &mut values {
        if l.abs() < EIGEN_ZERO {
            *l = 0.0;
        }
    }
    (values, sorted)
}

fn real_embedding(m: &CMatrix) -> DMatrix<f64> {
    let d = m.nrows();
    DMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let z = m[(i % d, j % d)];
        match (i < d, j < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// Picks `count` orthonormal vectors out of `candidates`, always taking
/// the one with the largest residual after projecting out earlier picks.
fn pivoted_orthonormal(mut candidates: Vec<Vec<Complex64>>, count: usize) -> Vec<Vec<Complex64>> {
    let norm2 = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut picked = Vec::with_capacity(count);
    for _ in 0..count {
        let (best, _) = candidates
            .iter()
            .enumerate()
            .map(|(k, v)| (k, norm2(v)))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        let mut q = candidates.swap_remove(best);
        let n = norm2(&q).sqrt();
        q.iter_mut().for_each(|z| *z /= n);
        for v in &mut candidates {
            let overlap: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(&q).for_each(|(b, a)| *b -= overlap * a);
        }
        picked.push(q);
    }
    picked
}

/// The solver's deflation test is relative to the diagonal and can stall
/// on exact zeros next to tiny couplings; shifting by the norm avoids it.
fn shifted_symmetric_eigen(mut m: DMatrix<f64>) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let shift = m.norm().max(f64::MIN_POSITIVE);
    for i in 0..m.nrows() {
        m[(i, i)] += shift;
    }
    let mut eig = SymmetricEigen::new(m);
    eig.eigenvalues.iter_mut().for_each(|l| *l -= shift);
    eig
}

fn min_eigenvalue(m: &CMatrix) -> f64 {
    let eig = if m.iter().all(|z| z.im == 0.0) {
        shifted_symmetric_eigen(m.map(|z| z.re)).eigenvalues
    } else {
        shifted_symmetric_eigen(real_embedding(m)).eigenvalues
    };
    eig.iter().copied().fold(f64::INFINITY, f64::min)
}

/// A probe state `ρ` on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    /// Wraps a square matrix. Structural checks are left to
    /// [`validate_density`]; only the shape is enforced here.
    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        FockDim::new(mat.nrows())?;
        Ok(DensityMatrix { mat })
    }

    /// `|ψ⟩⟨ψ|` for an amplitude vector, normalised to unit norm.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let dim = FockDim::new(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::domain("amplitude vector has zero or non-finite norm"));
        }
        let d = dim.get();
        let mat = CMatrix::from_fn(d, d, |i, j| amplitudes[i] * amplitudes[j].conj() / (norm * norm));
        Ok(DensityMatrix { mat })
    }

    /// Number-diagonal state with the given populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let dim = FockDim::new(populations.len())?;
        let d = dim.get();
        let mut mat = CMatrix::zeros(d, d);
        for (m, &p) in populations.iter().enumerate() {
            mat[(m, m)] = c(p);
        }
        Ok(DensityMatrix { mat })
    }

    pub fn fock(n: usize, dim: FockDim) -> Result<Self> {
        if n >= dim.get() {
            return Err(Error::domain(format!(
                "Fock level {n} does not fit in dim {}",
                dim.get()
            )));
        }
        let mut p = vec![0.0; dim.get()];
        p[n] = 1.0;
        Self::diagonal(&p)
    }

    pub fn dim(&self) -> FockDim {
        FockDim(self.mat.nrows())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Photon-number distribution `p_m = ρ_mm`.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.mat.nrows()).map(|m| self.mat[(m, m)].re).collect()
    }

    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        (op * &self.mat).trace()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.populations()
            .iter()
            .enumerate()
            .map(|(m, p)| m as f64 * p)
            .sum()
    }

    pub fn top_population(&self) -> f64 {
        let d = self.mat.nrows();
        self.mat[(d - 1, d - 1)].re
    }

    pub fn max_off_diagonal(&self) -> f64 {
        max_off_diagonal(&self.mat)
    }

    pub fn is_number_diagonal(&self, tol: f64) -> bool {
        self.max_off_diagonal() < tol
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.mat).0
    }
}

/// Tolerances used by [`validate_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceProfile {
    pub hermiticity: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
    pub leakage: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            hermiticity: 1e-12,
            trace: 1e-9,
            min_eigenvalue: -1e-9,
            leakage: LEAKAGE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub top_leakage: f64,
    /// Not an invariant; monitored by the dynamics tests.
    pub max_off_diagonal: f64,
    pub hermitian_ok: bool,
    pub trace_ok: bool,
    pub positive_ok: bool,
    pub leakage_ok: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.hermitian_ok && self.trace_ok && self.positive_ok && self.leakage_ok
    }
}

pub fn validate_density(rho: &DensityMatrix, tol: &ToleranceProfile) -> ValidationReport {
    let herm = hermiticity_defect(rho.matrix());
    let trace = rho.trace();
    let trace_defect = (trace - c(1.0)).norm();
    let hermitised = (rho.matrix() + rho.matrix().adjoint()) * c(0.5);
    let min_eig = min_eigenvalue(&hermitised);
    let top = rho.top_population();
    ValidationReport {
        hermiticity_defect: herm,
        trace_defect,
        min_eigenvalue: min_eig,
        top_leakage: top,
        max_off_diagonal: rho.max_off_diagonal(),
        hermitian_ok: herm <= tol.hermiticity,
        trace_ok: trace_defect <= tol.trace,
        positive_ok: min_eig >= tol.min_eigenvalue,
        leakage_ok: top <= tol.leakage,
    }
}
