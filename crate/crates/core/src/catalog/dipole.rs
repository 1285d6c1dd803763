use super::{FieldClosure, SpacetimePoint};
use crate::algebra::{Multivector, PauliSplit};
use crate::error::{arg, Error, Result};
use serde::{Deserialize, Serialize};

/// Charged conducting sphere of radius R carrying a magnetic dipole along +z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleParams {
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "R")]
    pub r: f64,
}

impl Default for DipoleParams {
    fn default() -> Self {
        Self { q: 1.0, c: 1.0, r: 1.0 }
    }
}

impl DipoleParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite() && self.q.is_finite() && self.c.is_finite()) {
            return arg("dipole.R must be positive and Q, C finite");
        }
        Ok(())
    }
}

/// E = (Q/r²)e_r, B = (C/r³)(2cos θ e_r + sin θ θ̂) in Cartesian components.
pub fn static_dipole_eb(q: &SpacetimePoint, p: &DipoleParams) -> Result<PauliSplit> {
    let r = q.r();
    if !(r > p.r) {
        return Err(Error::Domain(format!("dipole evaluated at r = {r} ≤ R = {}", p.r)));
    }
    Ok(eb_unchecked(q.spatial(), p))
}

fn eb_unchecked(x: [f64; 3], p: &DipoleParams) -> PauliSplit {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let er = x.map(|v| v / r);
    let cos_t = er[2];
    // 2cos θ e_r + sin θ θ̂ = 3cos θ e_r − ẑ.
    let e_vec = er.map(|v| p.q / (r * r) * v);
    let k = p.c / (r * r * r);
    let b_vec = [k * 3.0 * cos_t * er[0], k * 3.0 * cos_t * er[1], k * (3.0 * cos_t * er[2] - 1.0)];
    PauliSplit { e_vec, b_vec }
}

#[derive(Clone, Copy, Debug)]
pub struct Dipole {
    pub params: DipoleParams,
}

impl Dipole {
    pub fn new(params: DipoleParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    /// Poynting vector E×B; zero inside the conductor.
    pub fn poynting(&self, x: [f64; 3]) -> [f64; 3] {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if r <= self.params.r {
            return [0.0; 3];
        }
        eb_unchecked(x, &self.params).poynting()
    }

    /// ½(E² + B²); zero inside the conductor.
    pub fn energy_density(&self, x: [f64; 3]) -> f64 {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if r <= self.params.r {
            return 0.0;
        }
        eb_unchecked(x, &self.params).energy_density()
    }
}

impl FieldClosure for Dipole {
    /// The exterior field; the conductor interior is not modeled and reads as zero.
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        match static_dipole_eb(q, &self.params) {
            Ok(s) => s.to_bivector(),
            Err(_) => Multivector::ZERO,
        }
    }
}
