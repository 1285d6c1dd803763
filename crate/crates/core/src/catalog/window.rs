use super::{FieldClosure, ScalarClosure, SpacetimePoint};
use crate::algebra::{Multivector, PauliSplit};
use crate::error::{arg, Result};
use crate::jet::Jet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Cylinder {ρ ≤ b, |z| ≤ Δ} kept by truncation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowParams {
    pub b: f64,
    pub delta: f64,
}

impl WindowParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.delta > 0.0 && self.b.is_finite() && self.delta.is_finite()) {
            return arg("window.b and window.delta must be positive");
        }
        Ok(())
    }

    pub fn contains(&self, q: &SpacetimePoint) -> bool {
        q.rho() <= self.b && q.z.abs() <= self.delta
    }
}

/// A field multiplied by the window indicator.
pub struct Truncated<F> {
    pub inner: F,
    pub window: WindowParams,
}

pub fn truncate<F: FieldClosure>(field: F, w: WindowParams) -> Result<Truncated<F>> {
    w.validate()?;
    Ok(Truncated { inner: field, window: w })
}

impl<F: FieldClosure> FieldClosure for Truncated<F> {
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        if self.window.contains(q) {
            self.inner.eval(q)
        } else {
            Multivector::ZERO
        }
    }
}

/// A complex scalar multiplied by the window indicator.
pub struct TruncatedScalar<S> {
    pub inner: S,
    pub window: WindowParams,
}

pub fn truncate_scalar<S: ScalarClosure>(s: S, w: WindowParams) -> Result<TruncatedScalar<S>> {
    w.validate()?;
    Ok(TruncatedScalar { inner: s, window: w })
}

impl<S: ScalarClosure> ScalarClosure for TruncatedScalar<S> {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        if self.window.contains(q) {
            self.inner.eval(q)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn jet(&self, q: &SpacetimePoint) -> Option<Jet> {
        if self.window.contains(q) {
            self.inner.jet(q)
        } else {
            Some(Jet::real(0.0))
        }
    }
}

/// Negative control: the electric part is doubled on the half-space x > 0.
pub struct HalfSpaceCorrupted<F> {
    pub inner: F,
}

impl<F: FieldClosure> FieldClosure for HalfSpaceCorrupted<F> {
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        let f = self.inner.eval(q);
        if q.x <= 0.0 {
            return f;
        }
        let mut s = PauliSplit::from_bivector_unchecked(&f);
        s.e_vec = s.e_vec.map(|v| 2.0 * v);
        s.to_bivector() + (f - f.grade(2))
    }
}
