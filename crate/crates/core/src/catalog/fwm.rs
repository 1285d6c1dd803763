use super::{HertzField, ScalarClosure, SpacetimePoint};
use crate::algebra::Multivector;
use crate::error::{arg, Result};
use crate::jet::Jet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FwmParams {
    pub beta: f64,
    pub z0: f64,
}

impl Default for FwmParams {
    fn default() -> Self {
        Self { beta: 1.0, z0: 1.0 }
    }
}

impl FwmParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite() && self.z0 > 0.0 && self.z0.is_finite()) {
            return arg("fwm.beta and fwm.z0 must be positive");
        }
        Ok(())
    }
}

/// Φ_fwm = e^{iβ(z+t)} exp{−ρ²β/ζ}/(4πiζ) with ζ = z₀ + i(z − t).
pub fn fwm_hertz(q: &SpacetimePoint, p: &FwmParams) -> Complex64 {
    let i = Complex64::i();
    let zeta = Complex64::new(p.z0, q.z - q.t);
    let rho2 = q.x * q.x + q.y * q.y;
    (i * p.beta * (q.z + q.t) - rho2 * p.beta / zeta).exp() / (4.0 * PI * i * zeta)
}

#[derive(Clone, Copy, Debug)]
pub struct Fwm {
    pub params: FwmParams,
}

impl Fwm {
    pub fn new(params: FwmParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    /// F from Π = Φ_fwm γ²¹.
    pub fn field(params: FwmParams) -> Result<HertzField<Fwm>> {
        Ok(HertzField::new(Self::new(params)?, Multivector::blade(0b0110) * -1.0))
    }
}

impl ScalarClosure for Fwm {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        fwm_hertz(q, &self.params)
    }

    fn jet(&self, q: &SpacetimePoint) -> Option<Jet> {
        let FwmParams { beta, z0 } = self.params;
        let i = Complex64::i();
        let [t, x, y, z] = Jet::coords(q.to_array());
        let zeta = (z - t) * i + z0;
        let rho2 = x * x + y * y;
        let expo = (z + t) * (i * beta) - rho2 * beta / zeta;
        Some(expo.exp() / (zeta * (4.0 * PI * i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dirac_from_partials, FieldClosure};

    #[test]
    fn on_axis_comoving_value() {
        let p = FwmParams { beta: 1.3, z0: 0.7 };
        let t = 0.9;
        let v = fwm_hertz(&SpacetimePoint::new(t, 0.0, 0.0, t), &p);
        let expect = Complex64::new(0.0, 2.0 * p.beta * t).exp() / (4.0 * PI * Complex64::i() * p.z0);
        assert!((v - expect).norm() < 1e-15);
    }

    #[test]
    fn modulus_depends_on_retarded_coordinate_only() {
        let p = FwmParams::default();
        let a = fwm_hertz(&SpacetimePoint::new(0.0, 0.3, 0.1, 0.5), &p).norm();
        let b = fwm_hertz(&SpacetimePoint::new(2.0, 0.3, 0.1, 2.5), &p).norm();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn wave_equation_and_maxwell_exact() {
        let f = Fwm::field(FwmParams::default()).unwrap();
        let q = SpacetimePoint::new(0.3, 0.4, -0.2, 0.1);
        assert!(f.wave_residual(&q).norm() < 1e-13);
        assert!(dirac_from_partials(&f.partials(&q).unwrap()).max_abs() < 1e-13);
    }
}
