use super::{split_unit, C3, ZERO};
use crate::algebra::PauliSplit;
use crate::calculus::diff_axis;
use crate::catalog::{FieldClosure, SpacetimePoint};
use crate::error::{arg, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

/// RS field E + iB on a uniform spatial grid, row-major over (x, y, z).
#[derive(Clone, Debug, PartialEq)]
pub struct RsGrid {
    pub origin: [f64; 3],
    pub spacing: [f64; 3],
    pub dims: [usize; 3],
    pub values: Vec<C3>,
    /// Boundary layers holding no valid data.
    pub margin: usize,
}

#[derive(Serialize, Deserialize)]
struct RsSidecar {
    origin: [f64; 3],
    spacing: [f64; 3],
    dims: [usize; 3],
    margin: usize,
}

impl RsGrid {
    pub fn new(origin: [f64; 3], spacing: [f64; 3], dims: [usize; 3], values: Vec<C3>) -> Result<Self> {
        if spacing.iter().any(|h| !(*h > 0.0 && h.is_finite())) || dims.iter().any(|d| *d == 0) {
            return arg("RS grid needs positive spacing and dims");
        }
        if values.len() != dims.iter().product::<usize>() {
            return arg("RS grid value count does not match dims");
        }
        Ok(Self { origin, spacing, dims, values, margin: 0 })
    }

    /// Samples F at time t.
    pub fn sample(f: &dyn FieldClosure, t: f64, origin: [f64; 3], spacing: [f64; 3], dims: [usize; 3]) -> Result<Self> {
        let n: usize = dims.iter().product();
        let mut g = Self::new(origin, spacing, dims, vec![[ZERO; 3]; n])?;
        let vals: Vec<C3> = (0..n)
            .into_par_iter()
            .map(|i| {
                let x = g.point(i);
                PauliSplit::from_bivector_unchecked(&f.eval(&SpacetimePoint::new(t, x[0], x[1], x[2]))).rs()
            })
            .collect();
        g.values = vals;
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn unravel(&self, i: usize) -> [usize; 3] {
        let [_, ny, nz] = self.dims;
        [i / (ny * nz), (i / nz) % ny, i % nz]
    }

    pub fn point(&self, i: usize) -> [f64; 3] {
        let idx = self.unravel(i);
        std::array::from_fn(|a| self.origin[a] + self.spacing[a] * idx[a] as f64)
    }

    pub fn interior(&self) -> Vec<usize> {
        let m = self.margin;
        (0..self.len())
            .filter(|&i| {
                let idx = self.unravel(i);
                (0..3).all(|a| idx[a] >= m && idx[a] + m < self.dims[a])
            })
            .collect()
    }

    /// Σ|F|² over all points.
    pub fn norm_sq(&self) -> f64 {
        let terms: Vec<f64> = self.values.iter().map(|v| v.iter().map(|c| c.norm_sqr()).sum()).collect();
        crate::quadrature::pairwise_sum(&terms)
    }

    fn component(&self, c: usize, imag: bool) -> Vec<f64> {
        self.values.iter().map(|v| if imag { v[c].im } else { v[c].re }).collect()
    }

    /// CSV with x,y,z and Re/Im of the three components, plus a JSON sidecar.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["x", "y", "z", "re1", "im1", "re2", "im2", "re3", "im3"])?;
        for (i, v) in self.values.iter().enumerate() {
            let x = self.point(i);
            let row = [x[0], x[1], x[2], v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im];
            w.write_record(row.iter().map(|x| format!("{x:?}")))?;
        }
        w.flush()?;
        let side = RsSidecar { origin: self.origin, spacing: self.spacing, dims: self.dims, margin: self.margin };
        std::fs::write(crate::calculus::sidecar_path(path), serde_json::to_string_pretty(&side)?)?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let side: RsSidecar = serde_json::from_str(&std::fs::read_to_string(crate::calculus::sidecar_path(path))?)?;
        let mut r = csv::Reader::from_path(path)?;
        let mut values = Vec::new();
        for rec in r.deserialize() {
            let row: [f64; 9] = rec?;
            values.push(std::array::from_fn(|c| Complex64::new(row[3 + 2 * c], row[4 + 2 * c])));
        }
        let mut g = Self::new(side.origin, side.spacing, side.dims, values)?;
        g.margin = side.margin;
        Ok(g)
    }
}

fn curl(dims: &[usize; 3], h: &[f64; 3], v: &[Vec<f64>; 3]) -> [Vec<f64>; 3] {
    let d = |c: usize, a: usize| diff_axis(dims, h[a], &v[c], a);
    let (d12, d21, d20, d02, d01, d10) = (d(1, 2), d(2, 1), d(2, 0), d(0, 2), d(0, 1), d(1, 0));
    [
        d21.iter().zip(&d12).map(|(a, b)| a - b).collect(),
        d02.iter().zip(&d20).map(|(a, b)| a - b).collect(),
        d10.iter().zip(&d01).map(|(a, b)| a - b).collect(),
    ]
}

/// (∇×B, −∇×E) by central differences, from the real and imaginary parts.
pub fn curl_pair(f: &RsGrid) -> Result<([Vec<f64>; 3], [Vec<f64>; 3])> {
    if f.dims.iter().any(|d| *d < 3) {
        return arg("curl needs at least 3 points per axis");
    }
    let e = [f.component(0, false), f.component(1, false), f.component(2, false)];
    let b = [f.component(0, true), f.component(1, true), f.component(2, true)];
    let cb = curl(&f.dims, &f.spacing, &b);
    let ce = curl(&f.dims, &f.spacing, &e).map(|v| v.into_iter().map(|x| -x).collect());
    Ok((cb, ce))
}

/// −Σ̂·∇F = −Σ_p Σ̂^p ∂_pF, so that ∂_tF equals the result.
pub fn schrodinger_rhs(f: &RsGrid) -> Result<RsGrid> {
    if f.dims.iter().any(|d| *d < 3) {
        return arg("schrodinger_rhs needs at least 3 points per axis");
    }
    let sig = super::spin_matrices();
    let mut out = vec![[ZERO; 3]; f.len()];
    for p in 0..3 {
        let comps: [Vec<Complex64>; 3] =
            std::array::from_fn(|c| diff_axis(&f.dims, f.spacing[p], &f.values.iter().map(|v| v[c]).collect::<Vec<_>>(), p));
        out.par_iter_mut().enumerate().for_each(|(i, o)| {
            let dv = [comps[0][i], comps[1][i], comps[2][i]];
            let s = super::mat_vec(&sig[p], &dv);
            for c in 0..3 {
                o[c] -= s[c];
            }
        });
    }
    Ok(RsGrid { origin: f.origin, spacing: f.spacing, dims: f.dims, values: out, margin: f.margin + 1 })
}

#[derive(Clone, Debug)]
pub struct SpectralResult {
    pub field: RsGrid,
    /// ‖longitudinal part‖ / ‖F‖ of the input; Maxwell data have none.
    pub longitudinal_fraction: f64,
}

fn fft3(values: &mut [C3], dims: [usize; 3], inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    for axis in 0..3 {
        let n = dims[axis];
        let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
        let stride: usize = dims[axis + 1..].iter().product();
        let lines: Vec<usize> = (0..values.len()).filter(|i| (i / stride) % n == 0).collect();
        for c in 0..3 {
            let results: Vec<(usize, Vec<Complex64>)> = lines
                .par_iter()
                .map(|&start| {
                    let mut buf: Vec<Complex64> = (0..n).map(|k| values[start + k * stride][c]).collect();
                    fft.process(&mut buf);
                    (start, buf)
                })
                .collect();
            for (start, buf) in results {
                for (k, v) in buf.into_iter().enumerate() {
                    values[start + k * stride][c] = v;
                }
            }
        }
    }
}

/// Exact evolution on the periodic box spanned by the grid: each Fourier mode
/// is split by helicity, plus parts advance by e^{−i|k|t}, minus parts by
/// e^{+i|k|t}, and the longitudinal part is left unchanged.
pub fn spectral_propagate(f0: &RsGrid, t: f64) -> Result<SpectralResult> {
    if f0.dims.iter().any(|d| !d.is_power_of_two()) {
        return arg(format!("spectral_propagate needs power-of-two dims, got {:?}", f0.dims));
    }
    if !t.is_finite() {
        return arg("propagation time must be finite");
    }
    let dims = f0.dims;
    let mut spec = f0.values.clone();
    fft3(&mut spec, dims, false);
    let kvec = |i: usize| -> [f64; 3] {
        let idx = [i / (dims[1] * dims[2]), (i / dims[2]) % dims[1], i % dims[2]];
        std::array::from_fn(|a| {
            let n = dims[a] as i64;
            let m = idx[a] as i64;
            let m = if m >= n / 2 { m - n } else { m };
            2.0 * PI * m as f64 / (n as f64 * f0.spacing[a])
        })
    };
    let long: Vec<f64> = spec
        .par_iter_mut()
        .enumerate()
        .map(|(i, v)| {
            let k = kvec(i);
            let kn = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
            if kn == 0.0 {
                return 0.0;
            }
            let kh = k.map(|x| x / kn);
            let parts = split_unit(v, &kh);
            let (ep, em) = (Complex64::from_polar(1.0, -kn * t), Complex64::from_polar(1.0, kn * t));
            for c in 0..3 {
                v[c] = parts.plus[c] * ep + parts.minus[c] * em + parts.longitudinal[c];
            }
            parts.longitudinal.iter().map(|c| c.norm_sqr()).sum()
        })
        .collect();
    fft3(&mut spec, dims, true);
    let n = f0.len() as f64;
    for v in &mut spec {
        for c in v.iter_mut() {
            *c /= n;
        }
    }
    let total = f0.norm_sq() * n;
    let frac = if total > 0.0 { (crate::quadrature::pairwise_sum(&long) / total).sqrt() } else { 0.0 };
    Ok(SpectralResult {
        field: RsGrid { origin: f0.origin, spacing: f0.spacing, dims, values: spec, margin: 0 },
        longitudinal_fraction: frac,
    })
}
