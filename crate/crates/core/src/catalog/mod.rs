//! Closed-form field configurations evaluatable at spacetime points.

mod dipole;
mod fwm;
mod hertz;
mod localized;
mod plane_wave;
mod window;
mod xwave;

pub use dipole::{static_dipole_eb, Dipole, DipoleParams};
pub use fwm::{fwm_hertz, Fwm, FwmParams};
pub use hertz::{HertzField, RealPart};
pub use localized::{localized_photon_hertz, LocalizedPhoton, LocalizedPhotonParams};
pub use plane_wave::{plane_wave_f, PlaneWave, PlaneWaveParams};
pub use window::{truncate, truncate_scalar, HalfSpaceCorrupted, Truncated, TruncatedScalar, WindowParams};
pub use xwave::{xwave_field_f, xwave_scalar, XWave, XWaveParams};

use crate::algebra::Multivector;
use crate::error::Result;
use crate::jet::Jet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point (t, x, y, z) in natural units.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpacetimePoint {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Distance from the z-axis.
    pub fn rho(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Distance from the spatial origin.
    pub fn r(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Shifted by `h` along coordinate `axis` (0 = t).
    pub fn shifted(&self, axis: usize, h: f64) -> Self {
        let mut a = self.to_array();
        a[axis] += h;
        Self::from_array(a)
    }

    /// The position 1-form x = x^μ γ_μ.
    pub fn position_vector(&self) -> Multivector {
        Multivector::vector([self.t, -self.x, -self.y, -self.z])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// A multivector-valued field over spacetime.
pub trait FieldClosure: Send + Sync {
    fn eval(&self, q: &SpacetimePoint) -> Multivector;

    /// Exact coordinate partials ∂_μF when the closure can supply them.
    fn partials(&self, _q: &SpacetimePoint) -> Option<[Multivector; 4]> {
        None
    }

    fn has_partials(&self) -> bool {
        false
    }
}

/// A complex scalar field over spacetime.
pub trait ScalarClosure: Send + Sync {
    fn eval(&self, q: &SpacetimePoint) -> Complex64;

    /// Value with all partials to third order when available.
    fn jet(&self, _q: &SpacetimePoint) -> Option<Jet> {
        None
    }
}

impl<T: FieldClosure + ?Sized> FieldClosure for Box<T> {
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        (**self).eval(q)
    }
    fn partials(&self, q: &SpacetimePoint) -> Option<[Multivector; 4]> {
        (**self).partials(q)
    }
    fn has_partials(&self) -> bool {
        (**self).has_partials()
    }
}

impl<T: FieldClosure + ?Sized> FieldClosure for &T {
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        (**self).eval(q)
    }
    fn partials(&self, q: &SpacetimePoint) -> Option<[Multivector; 4]> {
        (**self).partials(q)
    }
    fn has_partials(&self) -> bool {
        (**self).has_partials()
    }
}

impl<T: ScalarClosure + ?Sized> ScalarClosure for Box<T> {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        (**self).eval(q)
    }
    fn jet(&self, q: &SpacetimePoint) -> Option<Jet> {
        (**self).jet(q)
    }
}

impl<T: ScalarClosure + ?Sized> ScalarClosure for &T {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        (**self).eval(q)
    }
    fn jet(&self, q: &SpacetimePoint) -> Option<Jet> {
        (**self).jet(q)
    }
}

/// Wraps a plain function as a field without analytic partials.
pub struct FnField<F>(pub F);

impl<F: Fn(&SpacetimePoint) -> Multivector + Send + Sync> FieldClosure for FnField<F> {
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        (self.0)(q)
    }
}

/// Wraps a plain function as a complex scalar field.
pub struct FnScalar<F>(pub F);

impl<F: Fn(&SpacetimePoint) -> Complex64 + Send + Sync> ScalarClosure for FnScalar<F> {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        (self.0)(q)
    }
}

/// Catalog selection with parameters, as written in run configurations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    PlaneWave(PlaneWaveParams),
    Xwave(XWaveParams),
    Fwm(FwmParams),
    Dipole(DipoleParams),
    LocalizedPhoton(LocalizedPhotonParams),
}

impl FieldSpec {
    pub fn id(&self) -> &'static str {
        match self {
            FieldSpec::PlaneWave(_) => "plane_wave",
            FieldSpec::Xwave(_) => "xwave",
            FieldSpec::Fwm(_) => "fwm",
            FieldSpec::Dipole(_) => "dipole",
            FieldSpec::LocalizedPhoton(_) => "localized_photon",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::PlaneWave(p) => p.validate(),
            FieldSpec::Xwave(p) => p.validate(),
            FieldSpec::Fwm(p) => p.validate(),
            FieldSpec::Dipole(p) => p.validate(),
            FieldSpec::LocalizedPhoton(p) => p.validate(),
        }
    }

    /// The bivector field F for this entry.
    pub fn build(&self) -> Result<Box<dyn FieldClosure>> {
        self.validate()?;
        Ok(match self {
            FieldSpec::PlaneWave(p) => Box::new(PlaneWave::new(*p)?),
            FieldSpec::Xwave(p) => Box::new(xwave_field_f(*p)?),
            FieldSpec::Fwm(p) => Box::new(Fwm::field(*p)?),
            FieldSpec::Dipole(p) => Box::new(Dipole::new(*p)?),
            FieldSpec::LocalizedPhoton(p) => Box::new(LocalizedPhoton::field(p.clone())?),
        })
    }
}

/// One line of the catalog listing.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub summary: &'static str,
    pub example: FieldSpec,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "plane_wave",
            summary: "circularly polarised null plane wave",
            example: FieldSpec::PlaneWave(PlaneWaveParams::default()),
        },
        CatalogEntry {
            id: "xwave",
            summary: "X-wave from the Hertz potential Φ_X γ¹²",
            example: FieldSpec::Xwave(XWaveParams::default()),
        },
        CatalogEntry {
            id: "fwm",
            summary: "focus wave mode from the Hertz potential Φ_fwm γ²¹",
            example: FieldSpec::Fwm(FwmParams::default()),
        },
        CatalogEntry {
            id: "dipole",
            summary: "charged sphere with a magnetic dipole, exterior only",
            example: FieldSpec::Dipole(DipoleParams::default()),
        },
        CatalogEntry {
            id: "localized_photon",
            summary: "spherical-shell photon Hertz potential m·H₊",
            example: FieldSpec::LocalizedPhoton(LocalizedPhotonParams::default()),
        },
    ]
}

/// Central-difference partials of any field, step `h` on every axis.
pub fn fd_partials(f: &dyn FieldClosure, q: &SpacetimePoint, h: f64) -> [Multivector; 4] {
    std::array::from_fn(|mu| (f.eval(&q.shifted(mu, h)) - f.eval(&q.shifted(mu, -h))) * (0.5 / h))
}

/// Exact partials when available, central differences otherwise.
pub fn partials_or_fd(f: &dyn FieldClosure, q: &SpacetimePoint, h: f64) -> [Multivector; 4] {
    f.partials(q).unwrap_or_else(|| fd_partials(f, q, h))
}

/// ∂F = γ^μ ∂_μF from partials.
pub fn dirac_from_partials(p: &[Multivector; 4]) -> Multivector {
    (0..4).map(|mu| Multivector::gamma(mu) * p[mu]).sum()
}
