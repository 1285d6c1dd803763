//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// J₀(x) = (1/π)∫₀^π cos(x sin θ) dθ by the trapezoid rule, which converges
/// geometrically for this periodic integrand once n exceeds ~x.
pub fn bessel_j0(x: f64) -> f64 {
    let n = 64 + 2 * x.abs().ceil() as usize;
    let h = PI / n as f64;
    let inner: f64 = (1..n).map(|k| (x * (k as f64 * h).sin()).cos()).sum();
    (inner + 1.0) * h / PI
}

fn simpson(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (fa + 4.0 * fm + fb) * ((b - a) / 6.0)
}

fn adaptive(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of a complex integrand on [a, b].
pub fn integrate(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    // Start from a few panels so oscillations cannot fool the first estimate.
    let panels = 16;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (x0, x1) = (a + h * i as f64, a + h * (i + 1) as f64);
            let (f0, fm, f1) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
            adaptive(f, x0, x1, f0, fm, f1, simpson(x0, x1, f0, fm, f1), tol / panels as f64, 40)
        })
        .sum()
}

/// a₀∫₀^∞ e^{−k a₀} J₀(kρ sin η) e^{ik(z cos η − t)} dk, cut where e^{−k a₀} < 1e−16.
pub fn xwave_bessel_integral(t: f64, rho: f64, z: f64, eta: f64, a0: f64) -> Complex64 {
    let (s, c) = eta.sin_cos();
    let k_max = 37.0 / a0;
    let f = |k: f64| Complex64::from_polar((-k * a0).exp() * bessel_j0(k * rho * s), k * (z * c - t));
    integrate(&f, 0.0, k_max, 1e-11) * a0
}

/// Monte-Carlo estimate of ∫ x × (E × B) d³x over R < r < r_max for a
/// charge Q and a dipole C ẑ, with r drawn from a 1/r² density and uniform
/// directions, so that the z-integrand weight depends on the angle only.
pub fn dipole_angular_momentum_mc(q: f64, c: f64, r_in: f64, r_max: f64, samples: usize, seed: u64) -> [f64; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u_lo, u_hi) = (1.0 / r_max, 1.0 / r_in);
    // p(r) = 1/(r²(u_hi − u_lo)) on [R, r_max]; p(Ω) = 1/4π.
    let mut acc = [0.0; 3];
    for _ in 0..samples {
        let r = 1.0 / rng.gen_range(u_lo..u_hi);
        let cos_t: f64 = rng.gen_range(-1.0..1.0);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let sin_t = (1.0 - cos_t * cos_t).sqrt();
        let n = [sin_t * phi.cos(), sin_t * phi.sin(), cos_t];
        let x = n.map(|v| r * v);
        let e = n.map(|v| q * v / (r * r));
        // B = (3(m·n)n − m)/r³, m = C ẑ
        let b = [3.0 * c * cos_t * n[0] / r.powi(3), 3.0 * c * cos_t * n[1] / r.powi(3), c * (3.0 * cos_t * n[2] - 1.0) / r.powi(3)];
        let p = cross(e, b);
        let l = cross(x, p);
        // d³x = r² dr dΩ; weight = r²/(p(r) p(Ω)).
        let w = r * r * r * r * (u_hi - u_lo) * 4.0 * PI;
        for k in 0..3 {
            acc[k] += l[k] * w;
        }
    }
    acc.map(|v| v / samples as f64)
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Least-squares slope of ln y against ln x.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    slope(&lx, &ly)
}

pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
