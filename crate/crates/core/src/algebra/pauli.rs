use super::Multivector;
use crate::error::{arg, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative tolerance for deciding that an input is a pure bivector.
const GRADE_TOL: f64 = 1e-12;

/// Spatial blade and sign of 𝐢σ_k for k = 1..3.
const I_SIGMA: [(usize, f64); 3] = [(0b1100, -1.0), (0b1010, 1.0), (0b0110, -1.0)];

/// Electric and magnetic parts of a bivector, F = E^kσ_k + 𝐢B^kσ_k.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct PauliSplit {
    pub e_vec: [f64; 3],
    pub b_vec: [f64; 3],
}

impl PauliSplit {
    pub fn new(e_vec: [f64; 3], b_vec: [f64; 3]) -> Self {
        Self { e_vec, b_vec }
    }

    /// Splits a pure bivector; other grades are rejected.
    pub fn from_bivector(f: &Multivector) -> Result<Self> {
        if !f.is_grade(2, GRADE_TOL) {
            return arg("pauli_split expects a pure bivector");
        }
        Ok(Self::from_bivector_unchecked(f))
    }

    /// Reads the split from the grade-2 coefficients, ignoring other grades.
    pub fn from_bivector_unchecked(f: &Multivector) -> Self {
        let mut e_vec = [0.0; 3];
        let mut b_vec = [0.0; 3];
        for k in 0..3 {
            e_vec[k] = f.coeff(1 | (2 << k));
            let (mask, sign) = I_SIGMA[k];
            b_vec[k] = sign * f.coeff(mask);
        }
        Self { e_vec, b_vec }
    }

    pub fn to_bivector(&self) -> Multivector {
        let mut m = Multivector::ZERO;
        for k in 0..3 {
            m.set_coeff(1 | (2 << k), self.e_vec[k]);
            let (mask, sign) = I_SIGMA[k];
            m.set_coeff(mask, sign * self.b_vec[k]);
        }
        m
    }

    /// ½(E² + B²).
    pub fn energy_density(&self) -> f64 {
        0.5 * (dot3(&self.e_vec, &self.e_vec) + dot3(&self.b_vec, &self.b_vec))
    }

    /// E × B.
    pub fn poynting(&self) -> [f64; 3] {
        cross3(&self.e_vec, &self.b_vec)
    }

    /// Riemann-Silberstein components E + iB.
    pub fn rs(&self) -> [Complex64; 3] {
        std::array::from_fn(|k| Complex64::new(self.e_vec[k], self.b_vec[k]))
    }

    pub fn from_rs(f: &[Complex64; 3]) -> Self {
        Self { e_vec: f.map(|c| c.re), b_vec: f.map(|c| c.im) }
    }
}

/// Splits a bivector into (E, B).
pub fn pauli_split(f: &Multivector) -> Result<PauliSplit> {
    PauliSplit::from_bivector(f)
}

/// γ₀Fγ₀ = −E + 𝐢B.
pub fn space_conjugation(f: &Multivector) -> Result<Multivector> {
    if !f.is_grade(2, GRADE_TOL) {
        return arg("space_conjugation expects a pure bivector");
    }
    let g0 = Multivector::gamma(0);
    Ok(g0 * *f * g0)
}

/// z·m with the imaginary unit lifted to the Pauli pseudoscalar 𝐢.
pub fn lift_complex(z: Complex64, m: &Multivector) -> Multivector {
    let mut out = *m * z.re;
    if z.im != 0.0 {
        out += Multivector::unit_i() * *m * z.im;
    }
    out
}

pub(crate) fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_sigma_table_matches_products() {
        for k in 1..=3 {
            let p = Multivector::unit_i() * Multivector::sigma(k);
            let (mask, sign) = I_SIGMA[k - 1];
            assert_eq!(p, Multivector::blade(mask) * sign);
        }
    }

    #[test]
    fn split_basis_examples() {
        let s = pauli_split(&Multivector::sigma(1)).unwrap();
        assert_eq!(s, PauliSplit::new([1.0, 0.0, 0.0], [0.0; 3]));
        let f = Multivector::unit_i() * Multivector::sigma(3);
        let s = pauli_split(&f).unwrap();
        assert_eq!(s, PauliSplit::new([0.0; 3], [0.0, 0.0, 1.0]));
        assert!(pauli_split(&Multivector::gamma(1)).is_err());
    }

    #[test]
    fn component_matrix_round_trip() {
        // F = ½ F^{μν} γ_μ ∧ γ_ν with F^{i0} = E^i and F^{ij} = −ε_{ijk} B^k.
        let e = [1.0, 2.0, 3.0];
        let b = [4.0, 5.0, 6.0];
        let mut fmn = [[0.0; 4]; 4];
        for i in 0..3 {
            fmn[i + 1][0] = e[i];
            fmn[0][i + 1] = -e[i];
        }
        fmn[1][2] = -b[2];
        fmn[2][1] = b[2];
        fmn[2][3] = -b[0];
        fmn[3][2] = b[0];
        fmn[3][1] = -b[1];
        fmn[1][3] = b[1];
        let mut f = Multivector::ZERO;
        for mu in 0..4 {
            for nu in 0..4 {
                let w = Multivector::gamma_lower(mu).wedge(&Multivector::gamma_lower(nu));
                f += w * (0.5 * fmn[mu][nu]);
            }
        }
        let s = pauli_split(&f).unwrap();
        assert_eq!(s, PauliSplit::new(e, b));
        assert_eq!(s.to_bivector(), f);
    }

    #[test]
    fn space_conjugation_examples() {
        let s1 = Multivector::sigma(1);
        assert_eq!(space_conjugation(&s1).unwrap(), -s1);
        let is1 = Multivector::unit_i() * s1;
        assert_eq!(space_conjugation(&is1).unwrap(), is1);
        let f = s1 * 0.3 + is1 * 1.7 + Multivector::sigma(2);
        let twice = space_conjugation(&space_conjugation(&f).unwrap()).unwrap();
        assert_eq!(twice, f);
    }

    #[test]
    fn lift_commutes_with_complex_product() {
        let a = Complex64::new(0.3, -1.1);
        let b = Complex64::new(-0.7, 0.4);
        let m = Multivector::sigma(2);
        let lhs = lift_complex(a, &lift_complex(b, &m));
        let rhs = lift_complex(a * b, &m);
        assert!((lhs - rhs).max_abs() < 1e-15);
    }
}
