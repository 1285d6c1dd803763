//! Energy-momentum extensor T(n) = −½FnF and the quantities built on it.

mod canonical;
mod flux;
mod residuals;

pub use canonical::{angular_momentum_forms, canonical_and_spin, AngularMomentumEval, CanonicalExtensorEval};
pub use flux::{
    energy_growth_study, energy_in_box, gauge_shift_flux, surface_flux, total_angular_momentum,
    ShellQuadrature, ShiftedPoynting, Surface,
};
pub use residuals::{conservation_residual, conservation_residual_at, poynting_theorem_residual};

use crate::algebra::{Multivector, PauliSplit, PSEUDOSCALAR_MASK};
use crate::catalog::{FieldClosure, SpacetimePoint};
use crate::error::{arg, Result};
use serde::{Deserialize, Serialize};

const GRADE_TOL: f64 = 1e-12;

/// T(n) = −½FnF, projected to grade 1 after checking the other grades vanish.
pub fn extensor_t(f: &Multivector, n: &Multivector) -> Result<Multivector> {
    if !f.is_grade(2, GRADE_TOL) {
        return arg("extensor_T expects a bivector field value");
    }
    if !n.is_grade(1, GRADE_TOL) {
        return arg("extensor_T expects a vector argument");
    }
    let t = *f * *n * *f * -0.5;
    let scale = f.norm().powi(2) * n.norm();
    if t.off_grade_max(1) > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return arg(format!("−½FnF left a non-vector part of size {:.3e}", t.off_grade_max(1)));
    }
    Ok(t.grade(1))
}

/// T^{μν} = −½⟨Fγ^μFγ^ν⟩₀ without grade checks.
pub fn t_matrix(f: &Multivector) -> [[f64; 4]; 4] {
    let fg: [Multivector; 4] = std::array::from_fn(|mu| *f * Multivector::gamma(mu));
    std::array::from_fn(|mu| std::array::from_fn(|nu| -0.5 * fg[mu].scalar_product(&fg[nu])))
}

/// Pointwise extensor data; serialises as one ExtensorReport record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensorEval {
    #[serde(rename = "T_matrix")]
    pub t_matrix: [[f64; 4]; 4],
    pub u: f64,
    #[serde(rename = "P")]
    pub p_vec: [f64; 3],
    /// F⌟F = E² − B².
    #[serde(rename = "I1")]
    pub invariant_i1: f64,
    /// F∧F = γ⁵L.
    #[serde(rename = "L")]
    pub invariant_l: f64,
    /// T(γ⁰)·T(γ⁰).
    pub t0_norm: f64,
    /// |P|/u, or `None` where u vanishes relative to ‖F‖².
    pub v_energy: Option<f64>,
}

pub fn components_t(f: &Multivector) -> Result<ExtensorEval> {
    let split = PauliSplit::from_bivector(f)?;
    let t_matrix = t_matrix(f);
    let f2 = *f * *f;
    let u = split.energy_density();
    let p_vec = split.poynting();
    let p_abs = (p_vec[0] * p_vec[0] + p_vec[1] * p_vec[1] + p_vec[2] * p_vec[2]).sqrt();
    let t0 = extensor_t(f, &Multivector::gamma(0))?;
    let v_energy = if u > f64::EPSILON * f.norm().powi(2) && u > 0.0 { Some(p_abs / u) } else { None };
    Ok(ExtensorEval {
        t_matrix,
        u,
        p_vec,
        invariant_i1: f2.scalar_part(),
        invariant_l: f2.coeff(PSEUDOSCALAR_MASK),
        t0_norm: t0.scalar_product(&t0),
        v_energy,
    })
}

/// One ExtensorReport record: the evaluation plus its coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensorRecord {
    pub coords: [f64; 4],
    #[serde(flatten)]
    pub eval: ExtensorEval,
}

pub fn extensor_report(f: &dyn FieldClosure, points: &[SpacetimePoint]) -> Result<Vec<ExtensorRecord>> {
    use rayon::prelude::*;
    points
        .par_iter()
        .map(|q| Ok(ExtensorRecord { coords: q.to_array(), eval: components_t(&f.eval(q))? }))
        .collect()
}
