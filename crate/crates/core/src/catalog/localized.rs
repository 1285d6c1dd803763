use super::{HertzField, ScalarClosure, SpacetimePoint};
use crate::algebra::{lift_complex, Multivector};
use crate::error::{arg, Result};
use crate::jet::Jet;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::PI;

fn default_blade() -> Multivector {
    Multivector::blade(0b0110)
}

/// Localisation length l and the constant 2-form m.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalizedPhotonParams {
    pub l: f64,
    /// Written in text form, e.g. "1*g12".
    #[serde(default = "default_blade", with = "blade_text")]
    pub m_blade: Multivector,
}

impl Default for LocalizedPhotonParams {
    fn default() -> Self {
        Self { l: 1.0, m_blade: default_blade() }
    }
}

impl LocalizedPhotonParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.l > 0.0 && self.l.is_finite()) {
            return arg("localized_photon.l must be positive");
        }
        if !self.m_blade.is_grade(2, 1e-12) || self.m_blade.max_abs() == 0.0 {
            return arg("localized_photon.m_blade must be a nonzero bivector");
        }
        Ok(())
    }
}

mod blade_text {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Multivector, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&m.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Multivector, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Below this fraction of l the 1/r form is replaced by its series.
const SERIES_RADIUS: f64 = 1e-3;

/// Scalar amplitude h with H₊ = m·h:
/// h = (2π^{3/2}/(i r))·(E(t − r) − E(t + r)), E(u) = exp(−2√(1 + iu/l)).
#[derive(Clone, Debug)]
pub struct LocalizedPhoton {
    pub params: LocalizedPhotonParams,
}

fn prefactor() -> Complex64 {
    Complex64::new(0.0, -2.0 * PI.powf(1.5))
}

impl LocalizedPhoton {
    pub fn new(params: LocalizedPhotonParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    /// F₊ = −dδH₊.
    pub fn field(params: LocalizedPhotonParams) -> Result<HertzField<LocalizedPhoton>> {
        let blade = params.m_blade;
        Ok(HertzField::new(Self::new(params)?, blade))
    }

    fn shell(&self, u: f64) -> Complex64 {
        (-2.0 * Complex64::new(1.0, u / self.params.l).sqrt()).exp()
    }

    fn shell_jet(&self, u: Jet) -> Jet {
        let arg = u * Complex64::new(0.0, 1.0 / self.params.l) + 1.0;
        (arg.sqrt() * -2.0).exp()
    }

    /// Modulus of a single shell factor, |E(t − r)|.
    pub fn shell_envelope(&self, t: f64, r: f64) -> f64 {
        self.shell(t - r).norm()
    }

    /// The removable r → 0 limit, with the next term of the series.
    fn series(&self, t: f64, r2: f64) -> Complex64 {
        let e = self.shell_jet(Jet::var(t, 0));
        prefactor() * (-2.0 * e.d1[0] - r2 / 3.0 * e.d3[0][0][0])
    }
}

impl ScalarClosure for LocalizedPhoton {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        let r = q.r();
        if r < SERIES_RADIUS * self.params.l {
            return self.series(q.t, r * r);
        }
        prefactor() * (self.shell(q.t - r) - self.shell(q.t + r)) / r
    }

    fn jet(&self, q: &SpacetimePoint) -> Option<Jet> {
        if q.r() < SERIES_RADIUS * self.params.l {
            return None;
        }
        let [t, x, y, z] = Jet::coords(q.to_array());
        let r = (x * x + y * y + z * z).sqrt();
        let diff = self.shell_jet(t - r) - self.shell_jet(t + r);
        Some(diff / r * prefactor())
    }
}

/// H₊ = m·h at q.
pub fn localized_photon_hertz(q: &SpacetimePoint, p: &LocalizedPhotonParams) -> Result<Multivector> {
    let lp = LocalizedPhoton::new(p.clone())?;
    Ok(lift_complex(lp.eval(q), &p.m_blade))
}
