use super::{HertzField, ScalarClosure, SpacetimePoint};
use crate::algebra::Multivector;
use crate::error::{arg, Result};
use crate::jet::Jet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Axicon angle η ∈ (0, π/2) and width a₀ > 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XWaveParams {
    pub eta: f64,
    pub a0: f64,
}

impl Default for XWaveParams {
    fn default() -> Self {
        Self { eta: std::f64::consts::FRAC_PI_4, a0: 1.0 }
    }
}

impl XWaveParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta < std::f64::consts::FRAC_PI_2) {
            return arg("xwave.eta must lie in (0, π/2)");
        }
        if !(self.a0 > 0.0 && self.a0.is_finite()) {
            return arg("xwave.a0 must be positive");
        }
        Ok(())
    }

    /// Peak speed 1/cos η.
    pub fn peak_speed(&self) -> f64 {
        1.0 / self.eta.cos()
    }
}

/// Φ_X = a₀/√((ρ sin η)² + [a₀ − i(z cos η − t)]²).
///
/// The radicand never touches the negative real axis, so the principal root
/// is continuous and equals a₀ on the peak locus z cos η = t, ρ = 0.
pub fn xwave_scalar(q: &SpacetimePoint, p: &XWaveParams) -> Complex64 {
    let (s, c) = p.eta.sin_cos();
    let rho2 = q.x * q.x + q.y * q.y;
    let w = Complex64::new(p.a0, -(q.z * c - q.t));
    p.a0 / (s * s * rho2 + w * w).sqrt()
}

#[derive(Clone, Copy, Debug)]
pub struct XWave {
    pub params: XWaveParams,
}

impl XWave {
    pub fn new(params: XWaveParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    /// ∂_tΦ_X, used as the second Cauchy datum.
    pub fn time_derivative(&self, q: &SpacetimePoint) -> Complex64 {
        let (s, c) = self.params.eta.sin_cos();
        let a0 = self.params.a0;
        let rho2 = q.x * q.x + q.y * q.y;
        let w = Complex64::new(a0, -(q.z * c - q.t));
        let d = s * s * rho2 + w * w;
        // ∂_t D = 2iw, ∂_tΦ = −½a₀D^{−3/2}∂_tD.
        -Complex64::i() * a0 * w / (d * d.sqrt())
    }
}

impl ScalarClosure for XWave {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        xwave_scalar(q, &self.params)
    }

    fn jet(&self, q: &SpacetimePoint) -> Option<Jet> {
        let (s, c) = self.params.eta.sin_cos();
        let a0 = self.params.a0;
        let [t, x, y, z] = Jet::coords(q.to_array());
        let w = (z * c - t) * Complex64::new(0.0, -1.0) + a0;
        let d = (x * x + y * y) * (s * s) + w * w;
        Some(d.powf(-0.5) * a0)
    }
}

/// F_X from Π = Φ_X γ¹².
pub fn xwave_field_f(p: XWaveParams) -> Result<HertzField<XWave>> {
    Ok(HertzField::new(XWave::new(p)?, Multivector::blade(0b0110)))
}
