use crate::algebra::PauliSplit;
use crate::catalog::{Dipole, DipoleParams, FieldClosure, ScalarClosure, SpacetimePoint};
use crate::error::{arg, Error, Result};
use crate::quadrature::{pairwise_sum, GaussLegendre, SphereRule};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Closed sphere, or the half of it on the +axis side (an open surface).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Surface {
    Sphere { center: [f64; 3], radius: f64 },
    Hemisphere { center: [f64; 3], radius: f64, axis: [f64; 3] },
}

/// ∫ P·dS over `surface` with an n_theta × 2n_theta product rule. When `domain`
/// (per-axis [lo, hi]) is given, the surface must lie inside it.
pub fn surface_flux(
    p: &(dyn Fn([f64; 3]) -> [f64; 3] + Sync),
    surface: Surface,
    n_theta: usize,
    domain: Option<[[f64; 2]; 3]>,
) -> Result<f64> {
    let (center, radius, axis) = match surface {
        Surface::Sphere { center, radius } => (center, radius, None),
        Surface::Hemisphere { center, radius, axis } => {
            let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
            if n == 0.0 {
                return arg("hemisphere axis must be nonzero");
            }
            (center, radius, Some(axis.map(|a| a / n)))
        }
    };
    if !(radius > 0.0 && radius.is_finite()) {
        return arg("surface radius must be positive");
    }
    if let Some(dom) = domain {
        for k in 0..3 {
            if center[k] - radius < dom[k][0] || center[k] + radius > dom[k][1] {
                return arg("surface leaves the field domain");
            }
        }
    }
    let rule = SphereRule::new(n_theta.max(2));
    let mean = rule.mean(|d| {
        if let Some(ax) = axis {
            if d[0] * ax[0] + d[1] * ax[1] + d[2] * ax[2] < 0.0 {
                return 0.0;
            }
        }
        let x = [center[0] + radius * d[0], center[1] + radius * d[1], center[2] + radius * d[2]];
        let pv = p(x);
        pv[0] * d[0] + pv[1] * d[1] + pv[2] * d[2]
    });
    Ok(4.0 * PI * radius * radius * mean)
}

/// Volume rule for spherical shells: Gauss-Legendre in s with r = R(r_max/R)^s,
/// and the sphere product rule in angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShellQuadrature {
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for ShellQuadrature {
    fn default() -> Self {
        Self { n_r: 48, n_theta: 24 }
    }
}

/// ∫ x×P dv over R < r < r_max for the static dipole.
pub fn total_angular_momentum(p: &DipoleParams, r_max: f64, quad: ShellQuadrature) -> Result<[f64; 3]> {
    let d = Dipole::new(*p)?;
    if !(r_max > p.r) {
        return Err(Error::Argument(format!("r_max = {r_max} must exceed R = {}", p.r)));
    }
    let gl = GaussLegendre::new(quad.n_r);
    let rule = SphereRule::new(quad.n_theta);
    let log_ratio = (r_max / p.r).ln();
    let shells: Vec<[f64; 3]> = gl
        .mapped(0.0, 1.0)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(s, w)| {
            let r = p.r * (log_ratio * s).exp();
            // dv = 4π r² (dr/ds) ds · mean over directions
            let jac = 4.0 * PI * r * r * r * log_ratio * w;
            std::array::from_fn(|k| {
                jac * rule.mean(|u| {
                    let x = [r * u[0], r * u[1], r * u[2]];
                    crate::algebra::cross3(&x, &d.poynting(x))[k]
                })
            })
        })
        .collect();
    Ok(std::array::from_fn(|k| pairwise_sum(&shells.iter().map(|v| v[k]).collect::<Vec<_>>())))
}

/// P′ = P + ∇𝒳 for a static harmonic 𝒳.
pub struct ShiftedPoynting<'a> {
    pub field: &'a dyn FieldClosure,
    pub chi: &'a dyn ScalarClosure,
    pub h: f64,
}

impl ShiftedPoynting<'_> {
    fn grad_and_laplacian(&self, q: &SpacetimePoint) -> ([f64; 4], f64) {
        if let Some(j) = self.chi.jet(q) {
            let g = std::array::from_fn(|m| j.d1[m].re);
            return (g, j.d2[1][1].re + j.d2[2][2].re + j.d2[3][3].re);
        }
        let h = self.h;
        let c0 = self.chi.eval(q).re;
        let mut g = [0.0; 4];
        let mut lap = 0.0;
        for m in 0..4 {
            let a = self.chi.eval(&q.shifted(m, h)).re;
            let b = self.chi.eval(&q.shifted(m, -h)).re;
            g[m] = (a - b) / (2.0 * h);
            if m > 0 {
                lap += (a + b - 2.0 * c0) / (h * h);
            }
        }
        (g, lap)
    }

    /// ∇𝒳 at q.
    pub fn shift(&self, q: &SpacetimePoint) -> [f64; 3] {
        let (g, _) = self.grad_and_laplacian(q);
        [g[1], g[2], g[3]]
    }

    pub fn poynting(&self, q: &SpacetimePoint) -> [f64; 3] {
        let p = PauliSplit::from_bivector_unchecked(&self.field.eval(q)).poynting();
        let s = self.shift(q);
        [p[0] + s[0], p[1] + s[1], p[2] + s[2]]
    }

    /// (v_ε, v′_ε) at q; `None` where u vanishes.
    pub fn energy_velocities(&self, q: &SpacetimePoint) -> Option<(f64, f64)> {
        let split = PauliSplit::from_bivector_unchecked(&self.field.eval(q));
        let u = split.energy_density();
        if u <= 0.0 {
            return None;
        }
        let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        Some((norm(split.poynting()) / u, norm(self.poynting(q)) / u))
    }

    /// ∇·P′ − ∇·P = ∇²𝒳 at q.
    pub fn divergence_change(&self, q: &SpacetimePoint) -> f64 {
        self.grad_and_laplacian(q).1
    }
}

/// Builds P′ after checking at `checks` that 𝒳 is static and harmonic to `tol`.
pub fn gauge_shift_flux<'a>(
    field: &'a dyn FieldClosure,
    chi: &'a dyn ScalarClosure,
    checks: &[SpacetimePoint],
    h: f64,
    tol: f64,
) -> Result<ShiftedPoynting<'a>> {
    let sp = ShiftedPoynting { field, chi, h };
    let mut worst = (0.0f64, 0.0f64);
    for q in checks {
        let (g, lap) = sp.grad_and_laplacian(q);
        worst.0 = worst.0.max(lap.abs());
        worst.1 = worst.1.max(g[0].abs());
    }
    if worst.0 > tol || worst.1 > tol {
        return Err(Error::Diagnostic(format!(
            "gauge function is not static and harmonic: max |∇²𝒳| = {:.3e}, max |∂₀𝒳| = {:.3e}, tolerance {tol:.1e}",
            worst.0, worst.1
        )));
    }
    Ok(sp)
}

/// ∫ u dv over the cube of half-width `half` centred at `center`, with an
/// n-point Gauss-Legendre rule per axis.
pub fn energy_in_box(f: &dyn FieldClosure, center: &SpacetimePoint, half: f64, n: usize) -> f64 {
    let gl = GaussLegendre::new(n);
    let nodes: Vec<(f64, f64)> = gl.mapped(-half, half).collect();
    let terms: Vec<f64> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (a, b, c) = (nodes[idx / (n * n)], nodes[(idx / n) % n], nodes[idx % n]);
            let q = SpacetimePoint::new(center.t, center.x + a.0, center.y + b.0, center.z + c.0);
            a.1 * b.1 * c.1 * PauliSplit::from_bivector_unchecked(&f.eval(&q)).energy_density()
        })
        .collect();
    pairwise_sum(&terms)
}

/// Field energy in boxes of growing half-width; for a plane wave it grows like
/// the volume and has no finite limit.
pub fn energy_growth_study(f: &dyn FieldClosure, center: &SpacetimePoint, halves: &[f64], n: usize) -> Vec<(f64, f64)> {
    halves.iter().map(|&h| (h, energy_in_box(f, center, h, n))).collect()
}
