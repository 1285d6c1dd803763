//! Cl(1,3) multivectors with metric diag(1,−1,−1,−1).
//!
//! Coefficients are indexed by a 4-bit blade mask. Mask `b` stands for the
//! ascending product of the upper-index generators γ^μ whose bits are set, so
//! mask 0 is the scalar and mask 15 is γ⁵ = γ⁰γ¹γ²γ³.

mod pauli;
pub(crate) mod text;

pub use pauli::{lift_complex, pauli_split, space_conjugation, PauliSplit};
pub(crate) use pauli::cross3;

use crate::error::{arg, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// η_{μμ} for μ = 0..3.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Masks of the six bivector blades in ascending order: 01, 02, 03, 12, 13, 23.
pub const BIVECTOR_MASKS: [usize; 6] = [0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100];

pub const PSEUDOSCALAR_MASK: usize = 0b1111;

const fn blade_sign(a: usize, b: usize) -> f64 {
    // Count transpositions needed to sort the concatenated index list.
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    // Repeated spatial indices contract with η = −1.
    swaps += (a & b & 0b1110).count_ones();
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

const fn sign_table() -> [[f64; 16]; 16] {
    let mut t = [[0.0; 16]; 16];
    let mut i = 0;
    while i < 16 {
        let mut j = 0;
        while j < 16 {
            t[i][j] = blade_sign(i, j);
            j += 1;
        }
        i += 1;
    }
    t
}

/// `SIGN[a][b]` is the sign of blade(a)·blade(b) = ±blade(a ^ b).
pub const SIGN: [[f64; 16]; 16] = sign_table();

#[inline]
pub fn grade_of(mask: usize) -> usize {
    (mask as u32).count_ones() as usize
}

#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multivector {
    c: [f64; 16],
}

impl Multivector {
    pub const ZERO: Multivector = Multivector { c: [0.0; 16] };

    pub const fn from_coeffs(c: [f64; 16]) -> Self {
        Self { c }
    }

    pub fn from_row(row: &[f64]) -> Result<Self> {
        if row.len() != 16 {
            return arg(format!("multivector row needs 16 values, got {}", row.len()));
        }
        let mut c = [0.0; 16];
        c.copy_from_slice(row);
        Ok(Self { c })
    }

    pub fn scalar(s: f64) -> Self {
        let mut c = [0.0; 16];
        c[0] = s;
        Self { c }
    }

    /// Unit blade for `mask`.
    pub fn blade(mask: usize) -> Self {
        let mut c = [0.0; 16];
        c[mask & 15] = 1.0;
        Self { c }
    }

    /// γ^μ.
    pub fn gamma(mu: usize) -> Self {
        Self::blade(1 << mu)
    }

    /// γ_μ = η_{μμ} γ^μ.
    pub fn gamma_lower(mu: usize) -> Self {
        Self::gamma(mu) * METRIC[mu]
    }

    /// The vector v_μ γ^μ from its lower (covariant) components.
    pub fn vector(v: [f64; 4]) -> Self {
        let mut c = [0.0; 16];
        for mu in 0..4 {
            c[1 << mu] = v[mu];
        }
        Self { c }
    }

    /// Coefficients of γ^μ, i.e. the covariant components v_μ.
    pub fn vector_components(&self) -> [f64; 4] {
        [self.c[1], self.c[2], self.c[4], self.c[8]]
    }

    /// γ⁵ = γ⁰γ¹γ²γ³.
    pub fn gamma5() -> Self {
        Self::blade(PSEUDOSCALAR_MASK)
    }

    /// The Pauli pseudoscalar σ₁σ₂σ₃ = γ₀γ₁γ₂γ₃ = −γ⁵.
    pub fn unit_i() -> Self {
        Self::gamma5() * -1.0
    }

    /// σ_k = γ_kγ_0 for k = 1..3.
    pub fn sigma(k: usize) -> Self {
        assert!((1..=3).contains(&k), "sigma index must be 1..3");
        Self::blade(1 | (1 << k))
    }

    pub fn coeffs(&self) -> &[f64; 16] {
        &self.c
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.c[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, v: f64) {
        self.c[mask] = v;
    }

    pub fn scalar_part(&self) -> f64 {
        self.c[0]
    }

    /// Coefficient of γ⁵.
    pub fn pseudoscalar_part(&self) -> f64 {
        self.c[PSEUDOSCALAR_MASK]
    }

    /// Grade-k part; grades outside 0..=4 are rejected.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > 4 {
            return arg(format!("grade {k} outside 0..=4"));
        }
        Ok(self.grade(k))
    }

    /// Grade-k part for k known to be in range.
    pub fn grade(&self, k: usize) -> Self {
        let mut c = [0.0; 16];
        for (m, v) in self.c.iter().enumerate() {
            if grade_of(m) == k {
                c[m] = *v;
            }
        }
        Self { c }
    }

    pub fn even(&self) -> Self {
        let mut c = self.c;
        for (m, v) in c.iter_mut().enumerate() {
            if grade_of(m) % 2 == 1 {
                *v = 0.0;
            }
        }
        Self { c }
    }

    pub fn reverse(&self) -> Self {
        let mut c = self.c;
        for (m, v) in c.iter_mut().enumerate() {
            if matches!(grade_of(m), 2 | 3) {
                *v = -*v;
            }
        }
        Self { c }
    }

    pub fn left_contract(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |a, b| a & !b == 0)
    }

    pub fn right_contract(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |a, b| b & !a == 0)
    }

    pub fn wedge(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |a, b| a & b == 0)
    }

    /// (a⌟b, a⌞b, a∧b) in one call.
    pub fn contractions_and_wedge(&self, rhs: &Self) -> (Self, Self, Self) {
        (self.left_contract(rhs), self.right_contract(rhs), self.wedge(rhs))
    }

    /// ⟨ab⟩₀ without forming the full product.
    pub fn scalar_product(&self, rhs: &Self) -> f64 {
        let mut s = 0.0;
        for m in 0..16 {
            s += SIGN[m][m] * self.c[m] * rhs.c[m];
        }
        s
    }

    /// Euclidean norm of the 16 coefficients.
    pub fn norm(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest coefficient outside grade k.
    pub fn off_grade_max(&self, k: usize) -> f64 {
        self.c
            .iter()
            .enumerate()
            .filter(|(m, _)| grade_of(*m) != k)
            .fold(0.0, |acc, (_, v)| acc.max(v.abs()))
    }

    /// True when every coefficient outside grade k is below `tol·max(1, |self|)`.
    pub fn is_grade(&self, k: usize, tol: f64) -> bool {
        self.off_grade_max(k) <= tol * self.norm().max(1.0)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    /// e^{γ⁵s} = cos s + γ⁵ sin s.
    pub fn duality_exp(s: f64) -> Self {
        let mut c = [0.0; 16];
        c[0] = s.cos();
        c[PSEUDOSCALAR_MASK] = s.sin();
        Self { c }
    }

    /// Inverse of an element whose product with its reverse is scalar + pseudoscalar.
    /// Returns `None` when that product is (numerically) zero or has other grades.
    pub fn inverse(&self) -> Option<Self> {
        let rev = self.reverse();
        let m = *self * rev;
        let a = m.c[0];
        let b = m.c[PSEUDOSCALAR_MASK];
        let n2 = self.norm().powi(2);
        let mut rest = m;
        rest.c[0] = 0.0;
        rest.c[PSEUDOSCALAR_MASK] = 0.0;
        let det = a * a + b * b;
        if !(det > 1e-24 * n2 * n2) || rest.max_abs() > 1e-10 * n2 {
            return None;
        }
        // (a + γ⁵b)⁻¹ = (a − γ⁵b)/(a² + b²), and it commutes with even elements.
        let mut inv_m = Self::scalar(a / det);
        inv_m.c[PSEUDOSCALAR_MASK] = -b / det;
        Some(rev * inv_m)
    }

    /// Multiplies by a complex scalar lifted with the Pauli pseudoscalar.
    pub fn scale_complex(&self, z: Complex64) -> Self {
        lift_complex(z, self)
    }

    #[inline]
    fn product_filtered(&self, rhs: &Self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let mut out = [0.0; 16];
        for i in 0..16 {
            let a = self.c[i];
            if a == 0.0 {
                continue;
            }
            for j in 0..16 {
                let b = rhs.c[j];
                if b == 0.0 || !keep(i, j) {
                    continue;
                }
                out[i ^ j] += SIGN[i][j] * a * b;
            }
        }
        Self { c: out }
    }
}

/// Free-function form of the geometric product.
pub fn geometric_product(a: &Multivector, b: &Multivector) -> Multivector {
    *a * *b
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.product_filtered(&rhs, |_, _| true)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, s: f64) -> Multivector {
        for v in self.c.iter_mut() {
            *v *= s;
        }
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, m: Multivector) -> Multivector {
        m * self
    }
}

impl MulAssign<f64> for Multivector {
    fn mul_assign(&mut self, s: f64) {
        *self = *self * s;
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl std::iter::Sum for Multivector {
    fn sum<I: Iterator<Item = Multivector>>(iter: I) -> Multivector {
        iter.fold(Multivector::ZERO, |a, b| a + b)
    }
}

impl std::fmt::Debug for Multivector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Multivector({self})")
    }
}
