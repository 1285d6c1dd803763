use super::complex_sum;
use crate::catalog::{ScalarClosure, SpacetimePoint};
use crate::error::{arg, Result};
use crate::quadrature::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Radiating disk of radius `b` on z = 0, switched on for |t′| ≤ duration/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApertureSpec {
    pub b: f64,
    /// Gauss-Legendre points per radial piece; the azimuth uses 2× as many.
    pub density: usize,
    /// Emission interval T = 2Δ.
    pub duration: f64,
}

impl ApertureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.duration > 0.0 && self.b.is_finite() && self.duration.is_finite()) || self.density < 2 {
            return arg("aperture needs b > 0, duration > 0 and density ≥ 2");
        }
        Ok(())
    }
}

/// Step for differencing boundary data that carry no jet.
const FD_STEP: f64 = 1e-5;

fn value_and_rate(f: &dyn ScalarClosure, q: &SpacetimePoint) -> (Complex64, Complex64) {
    match f.jet(q) {
        Some(j) => (j.v, j.d1[0]),
        None => {
            let a = f.eval(&q.shifted(0, FD_STEP));
            let b = f.eval(&q.shifted(0, -FD_STEP));
            (f.eval(q), (a - b) / (2.0 * FD_STEP))
        }
    }
}

/// −(1/2π)∫_disk dS′ [(z/R²)∂_t′Φ + (1/R)Φ] at t′ = t − R, with Φ the boundary
/// field on z = 0 (zero outside the disk and the emission interval).
pub fn rs_aperture_evolve(ap: &ApertureSpec, boundary: &dyn ScalarClosure, q: &SpacetimePoint) -> Result<Complex64> {
    ap.validate()?;
    if !(q.z > 0.0) {
        return arg(format!("rs_aperture_evolve needs z > 0, got {}", q.z));
    }
    let half = 0.5 * ap.duration;
    let rho = q.rho();
    let phi0 = q.y.atan2(q.x);
    // Nearest disk point; nothing has arrived before t = R_min − T/2.
    let r_min = ((rho - ap.b).max(0.0).powi(2) + q.z * q.z).sqrt();
    if q.t + half < r_min {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let gl = GaussLegendre::new(ap.density);
    let n_phi = 2 * ap.density;
    let mut terms = Vec::new();
    for k in 0..n_phi {
        let ph = 2.0 * PI * (k as f64 + 0.5) / n_phi as f64;
        let c = (ph - phi0).cos();
        // R² = ρ′² − 2ρcρ′ + ρ² + z²; breakpoints where t − R = ±T/2.
        let mut breaks = vec![0.0, ap.b];
        for r0 in [q.t - half, q.t + half] {
            if r0 <= 0.0 {
                continue;
            }
            let disc = (rho * c).powi(2) - rho * rho - q.z * q.z + r0 * r0;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                breaks.extend([rho * c - sq, rho * c + sq]);
            }
        }
        breaks.retain(|r| (0.0..=ap.b).contains(r));
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        for win in breaks.windows(2) {
            for (rp, w) in gl.mapped(win[0], win[1]) {
                let (xp, yp) = (rp * ph.cos(), rp * ph.sin());
                let r = ((q.x - xp).powi(2) + (q.y - yp).powi(2) + q.z * q.z).sqrt();
                let tp = q.t - r;
                if tp.abs() > half {
                    continue;
                }
                let (v, dv) = value_and_rate(boundary, &SpacetimePoint::new(tp, xp, yp, 0.0));
                let area = w * rp * 2.0 * PI / n_phi as f64;
                terms.push((dv * (q.z / (r * r)) + v / r) * area);
            }
        }
    }
    Ok(complex_sum(&terms) * (-1.0 / (2.0 * PI)))
}
