//! Riemann-Silberstein form of the vacuum field: spin-1 matrices, helicity,
//! Schrödinger-type evolution and the photon Hamilton-Jacobi factorisation.

mod grid;
mod hj;

pub use grid::{curl_pair, schrodinger_rhs, spectral_propagate, RsGrid, SpectralResult};
pub use hj::{action_from_t0, quantum_potential, trajectory, HJFactorization, QuantumPotentialEval};

use crate::algebra::{Multivector, PauliSplit};
use crate::error::{arg, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C3 = [Complex64; 3];
pub type Mat3 = [[Complex64; 3]; 3];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// E + iB as a complex 3-vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RSVector {
    pub comps: C3,
}

impl RSVector {
    pub fn from_bivector(f: &Multivector) -> Result<Self> {
        Ok(Self { comps: PauliSplit::from_bivector(f)?.rs() })
    }

    pub fn to_bivector(&self) -> Multivector {
        PauliSplit::from_rs(&self.comps).to_bivector()
    }
}

fn levi(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || i == k {
        return 0.0;
    }
    // Even permutations of (0,1,2) are cyclic shifts.
    if (j + 3 - i) % 3 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Σ̂^p with (Σ̂^p)_{jk} = −iε_{pjk}, p = 0..2.
pub fn spin_matrix(p: usize) -> Mat3 {
    std::array::from_fn(|j| std::array::from_fn(|k| Complex64::new(0.0, -levi(p, j, k))))
}

pub fn spin_matrices() -> [Mat3; 3] {
    [spin_matrix(0), spin_matrix(1), spin_matrix(2)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn mat_vec(a: &Mat3, v: &C3) -> C3 {
    std::array::from_fn(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}

fn cross_c(k: &[f64; 3], v: &C3) -> C3 {
    [k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2], k[0] * v[1] - k[1] * v[0]]
}

/// Plus, minus and longitudinal parts of a plane-wave amplitude with wave vector k.
/// Plus satisfies k̂×f = −if, minus k̂×f = +if.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HelicityParts {
    pub plus: C3,
    pub minus: C3,
    pub longitudinal: C3,
}

pub(crate) fn unit(k: &[f64; 3]) -> Result<[f64; 3]> {
    let n = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return arg("wave vector must be nonzero");
    }
    Ok(k.map(|v| v / n))
}

/// P± = ½(Π⊥ ± iK) with K = k̂×(·) and Π⊥ = 1 − k̂k̂ᵀ; k̂ already normalised.
pub(crate) fn split_unit(f: &C3, kh: &[f64; 3]) -> HelicityParts {
    let dot: Complex64 = (0..3).map(|i| f[i] * kh[i]).sum();
    let longitudinal: C3 = std::array::from_fn(|i| dot * kh[i]);
    let perp: C3 = std::array::from_fn(|i| f[i] - longitudinal[i]);
    let kf = cross_c(kh, f);
    let i = Complex64::i();
    HelicityParts {
        plus: std::array::from_fn(|n| 0.5 * (perp[n] + i * kf[n])),
        minus: std::array::from_fn(|n| 0.5 * (perp[n] - i * kf[n])),
        longitudinal,
    }
}

pub fn helicity_project(f: &C3, k: &[f64; 3]) -> Result<HelicityParts> {
    Ok(split_unit(f, &unit(k)?))
}
