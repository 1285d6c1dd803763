//! Evolution of Cauchy and aperture data for the scalar wave equation, and
//! peak/front tracking of the resulting on-axis profiles.

mod aperture;
mod kinematics;
mod scenario;

pub use aperture::{rs_aperture_evolve, ApertureSpec};
pub use kinematics::{track_kinematics, KinematicsReport, Profile};
pub use scenario::{ApertureScenario, AxisRun, AxisScenario, DataKind};

use crate::catalog::{ScalarClosure, SpacetimePoint, WindowParams};
use crate::error::{arg, Result};
use crate::quadrature::{pairwise_sum, GaussLegendre, SphereRule};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Φ and ∂_tΦ at t = 0. Both closures are evaluated only at t = 0.
pub struct CauchyData<'a> {
    pub phi0: &'a dyn ScalarClosure,
    pub dphi0: &'a dyn ScalarClosure,
    pub compact_support: bool,
}

/// Sphere order and the time step used to difference t·M_t[Φ₀].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirchhoffOptions {
    pub n_theta: usize,
    pub ht: f64,
}

impl Default for KirchhoffOptions {
    fn default() -> Self {
        Self { n_theta: 24, ht: 2e-3 }
    }
}

impl KirchhoffOptions {
    fn validate(&self) -> Result<()> {
        if self.n_theta < 2 || !(self.ht > 0.0 && self.ht.is_finite()) {
            return arg("kirchhoff options need n_theta ≥ 2 and ht > 0");
        }
        Ok(())
    }
}

pub(crate) fn complex_sum(terms: &[Complex64]) -> Complex64 {
    let re: Vec<f64> = terms.iter().map(|c| c.re).collect();
    let im: Vec<f64> = terms.iter().map(|c| c.im).collect();
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
}

fn sphere_mean(f: &dyn ScalarClosure, c: [f64; 3], radius: f64, rule: &SphereRule) -> Complex64 {
    let terms: Vec<Complex64> = rule
        .directions
        .iter()
        .zip(&rule.weights)
        .map(|(d, w)| {
            let q = SpacetimePoint::new(0.0, c[0] + radius * d[0], c[1] + radius * d[1], c[2] + radius * d[2]);
            f.eval(&q) * *w
        })
        .collect();
    complex_sum(&terms)
}

/// Kirchhoff's formula Φ(t,x) = t·M_t[∂_tΦ₀] + ∂_t(t·M_t[Φ₀]), with M_t the
/// mean over the sphere |x′ − x| = t. The outer ∂_t is a centred difference
/// with step ht/2; s·M_|s| is odd in s, so the stencil may cross s = 0.
pub fn kirchhoff_evolve(data: &CauchyData, q: &SpacetimePoint, opts: &KirchhoffOptions) -> Result<Complex64> {
    opts.validate()?;
    if !(q.t > 0.0) {
        return arg(format!("kirchhoff_evolve needs t > 0, got {}", q.t));
    }
    let rule = SphereRule::new(opts.n_theta);
    let c = q.spatial();
    let g = |s: f64| sphere_mean(data.phi0, c, s.abs(), &rule) * s;
    let d = 0.5 * opts.ht;
    Ok(sphere_mean(data.dphi0, c, q.t, &rule) * q.t + (g(q.t + d) - g(q.t - d)) / (2.0 * d))
}

/// Sphere mean for data symmetric about the z axis, seen from the axis point
/// (0,0,z0): ½∫ f(ρ = s√(1−c²), z0 + s c) dc over c ∈ [−1, 1], split where the
/// sphere crosses the window edges.
fn axis_mean(f: &dyn ScalarClosure, z0: f64, s: f64, gl: &GaussLegendre, window: Option<&WindowParams>) -> Complex64 {
    if s == 0.0 {
        return f.eval(&SpacetimePoint::new(0.0, 0.0, 0.0, z0));
    }
    let mut breaks = vec![-1.0, 1.0];
    if let Some(w) = window {
        if s > w.b {
            let c = (1.0 - (w.b / s).powi(2)).sqrt();
            breaks.extend([-c, c]);
        }
        breaks.extend([(w.delta - z0) / s, (-w.delta - z0) / s]);
    }
    breaks.retain(|c| (-1.0..=1.0).contains(c));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut terms = Vec::with_capacity(gl.len() * breaks.len());
    for win in breaks.windows(2) {
        for (c, w) in gl.mapped(win[0], win[1]) {
            let rho = s * (1.0 - c * c).max(0.0).sqrt();
            terms.push(f.eval(&SpacetimePoint::new(0.0, rho, 0.0, z0 + s * c)) * (0.5 * w));
        }
    }
    complex_sum(&terms)
}

/// Gauss-Legendre order per piece and the outer time step for on-axis evolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisOptions {
    pub n_gl: usize,
    pub ht: f64,
}

impl Default for AxisOptions {
    fn default() -> Self {
        Self { n_gl: 48, ht: 2e-3 }
    }
}

/// Kirchhoff's formula at the axis point (t, 0, 0, z0) for axisymmetric data,
/// optionally truncated to `window` (whose edges become quadrature breakpoints).
pub fn kirchhoff_on_axis(
    data: &CauchyData,
    t: f64,
    z0: f64,
    opts: &AxisOptions,
    window: Option<&WindowParams>,
) -> Result<Complex64> {
    if opts.n_gl < 2 || !(opts.ht > 0.0) {
        return arg("axis options need n_gl ≥ 2 and ht > 0");
    }
    if !(t > 0.0) {
        return arg(format!("kirchhoff_on_axis needs t > 0, got {t}"));
    }
    let gl = GaussLegendre::new(opts.n_gl);
    let g = |s: f64| axis_mean(data.phi0, z0, s.abs(), &gl, window) * s;
    let d = 0.5 * opts.ht;
    Ok(axis_mean(data.dphi0, z0, t, &gl, window) * t + (g(t + d) - g(t - d)) / (2.0 * d))
}
