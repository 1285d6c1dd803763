//! Discrete Dirac calculus on uniform spacetime grids.
//!
//! Derivatives are second-order central differences. Every differentiation
//! trims one more boundary layer; the number of trimmed layers is carried as
//! `SampledField::margin` and all reductions run over the remaining interior.

mod export;
mod hertz;
mod residuals;

pub use export::{read_sidecar, write_field_csv, GridSidecar};
pub(crate) use export::sidecar_path;
pub use hertz::{hertz_pipeline, hertz_pipeline_complex, HertzPipelineResult};
pub use residuals::{maxwell_residual, vector_form_split, VectorResiduals};

use crate::algebra::{grade_of, Multivector};
use crate::catalog::{FieldClosure, SpacetimePoint};
use crate::error::{arg, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::{Mul, Sub};

/// Uniform lattice over (t, x, y, z), row-major with t slowest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub origin: SpacetimePoint,
    pub spacing: [f64; 4],
    pub dims: [usize; 4],
}

impl Grid {
    pub fn new(origin: SpacetimePoint, spacing: [f64; 4], dims: [usize; 4]) -> Result<Self> {
        let g = Self { origin, spacing, dims };
        g.validate()?;
        Ok(g)
    }

    /// Grid of `n` points per axis with spacing `h`, centred on `center`.
    pub fn centered(center: SpacetimePoint, h: [f64; 4], n: [usize; 4]) -> Result<Self> {
        let c = center.to_array();
        let origin: [f64; 4] = std::array::from_fn(|a| c[a] - h[a] * (n[a] as f64 - 1.0) / 2.0);
        Self::new(SpacetimePoint::from_array(origin), h, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.spacing.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return arg("grid spacing must be positive");
        }
        if self.dims.iter().any(|d| *d == 0) {
            return arg("grid dims must be positive");
        }
        if !self.origin.is_finite() {
            return arg("grid origin must be finite");
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn strides(&self) -> [usize; 4] {
        let d = self.dims;
        [d[1] * d[2] * d[3], d[2] * d[3], d[3], 1]
    }

    pub fn index(&self, i: [usize; 4]) -> usize {
        let s = self.strides();
        i[0] * s[0] + i[1] * s[1] + i[2] * s[2] + i[3]
    }

    pub fn unravel(&self, mut idx: usize) -> [usize; 4] {
        let s = self.strides();
        let mut out = [0; 4];
        for a in 0..4 {
            out[a] = idx / s[a];
            idx %= s[a];
        }
        out
    }

    pub fn point(&self, i: [usize; 4]) -> SpacetimePoint {
        let o = self.origin.to_array();
        SpacetimePoint::from_array(std::array::from_fn(|a| o[a] + self.spacing[a] * i[a] as f64))
    }

    pub fn point_at(&self, idx: usize) -> SpacetimePoint {
        self.point(self.unravel(idx))
    }

    /// Errors unless every axis has at least `n` points.
    pub fn require_dims(&self, n: usize, what: &str) -> Result<()> {
        if self.dims.iter().any(|d| *d < n) {
            return arg(format!("grid too small for {what}: need ≥ {n} points per axis, got {:?}", self.dims));
        }
        Ok(())
    }

    /// Flat indices whose every coordinate lies at least `margin` from the boundary.
    pub fn interior(&self, margin: usize) -> Vec<usize> {
        let d = self.dims;
        if d.iter().any(|n| *n <= 2 * margin) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i0 in margin..d[0] - margin {
            for i1 in margin..d[1] - margin {
                for i2 in margin..d[2] - margin {
                    for i3 in margin..d[3] - margin {
                        out.push(self.index([i0, i1, i2, i3]));
                    }
                }
            }
        }
        out
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.dims == other.dims
            && self.spacing.iter().zip(other.spacing).all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs())
            && self
                .origin
                .to_array()
                .iter()
                .zip(other.origin.to_array())
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + a.abs()))
    }
}

/// Multivector samples on a grid.
#[derive(Clone, Debug)]
pub struct SampledField {
    pub grid: Grid,
    pub values: Vec<Multivector>,
    /// Boundary layers holding no valid data.
    pub margin: usize,
}

impl SampledField {
    pub fn sample(f: &dyn FieldClosure, grid: Grid) -> Self {
        let values = (0..grid.len()).into_par_iter().map(|i| f.eval(&grid.point_at(i))).collect();
        Self { grid, values, margin: 0 }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![Multivector::ZERO; grid.len()], margin: 0 }
    }

    pub fn from_values(grid: Grid, values: Vec<Multivector>) -> Result<Self> {
        if values.len() != grid.len() {
            return arg(format!("expected {} values, got {}", grid.len(), values.len()));
        }
        Ok(Self { grid, values, margin: 0 })
    }

    pub fn get(&self, i: [usize; 4]) -> Multivector {
        self.values[self.grid.index(i)]
    }

    pub fn interior(&self) -> Vec<usize> {
        self.grid.interior(self.margin)
    }

    /// Largest Euclidean coefficient norm over the valid interior.
    pub fn max_norm(&self) -> f64 {
        self.interior().iter().map(|&i| self.values[i].norm()).fold(0.0, f64::max)
    }

    /// Location and value of the largest interior norm.
    pub fn argmax_norm(&self) -> Option<(SpacetimePoint, f64)> {
        self.interior()
            .into_iter()
            .map(|i| (i, self.values[i].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, v)| (self.grid.point_at(i), v))
    }

    pub fn check_compatible(&self, other: &SampledField) -> Result<()> {
        if !self.grid.same_shape(&other.grid) {
            return arg("grid mismatch between sampled fields");
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&Multivector) -> Multivector + Sync + Send) -> Self {
        Self { grid: self.grid, values: self.values.par_iter().map(f).collect(), margin: self.margin }
    }

    pub fn grade(&self, k: usize) -> Self {
        self.map(|m| m.grade(k))
    }

    /// True when every valid value is homogeneous of grade k.
    pub fn is_homogeneous(&self, k: usize, tol: f64) -> bool {
        self.interior().par_iter().all(|&i| self.values[i].is_grade(k, tol))
    }
}

/// Central difference along `axis`; entries within one cell of that axis's
/// boundary are left at their default.
pub fn diff_axis<T>(dims: &[usize], spacing: f64, values: &[T], axis: usize) -> Vec<T>
where
    T: Copy + Default + Send + Sync + Sub<Output = T> + Mul<f64, Output = T>,
{
    let stride: usize = dims[axis + 1..].iter().product();
    let n = dims[axis];
    let inv = 0.5 / spacing;
    (0..values.len())
        .into_par_iter()
        .map(|i| {
            let k = (i / stride) % n;
            if k == 0 || k + 1 == n {
                T::default()
            } else {
                (values[i + stride] - values[i - stride]) * inv
            }
        })
        .collect()
}

/// Second central difference along `axis`.
pub fn diff2_axis(dims: &[usize], spacing: f64, values: &[Multivector], axis: usize) -> Vec<Multivector> {
    let stride: usize = dims[axis + 1..].iter().product();
    let n = dims[axis];
    let inv = 1.0 / (spacing * spacing);
    (0..values.len())
        .into_par_iter()
        .map(|i| {
            let k = (i / stride) % n;
            if k == 0 || k + 1 == n {
                Multivector::ZERO
            } else {
                (values[i + stride] + values[i - stride] - values[i] * 2.0) * inv
            }
        })
        .collect()
}

/// ∂f = γ^μ∂_μf by central differences.
pub fn dirac_operator(f: &SampledField) -> Result<SampledField> {
    f.grid.require_dims(3, "the Dirac operator")?;
    let mut out = vec![Multivector::ZERO; f.values.len()];
    for mu in 0..4 {
        let d = diff_axis(&f.grid.dims, f.grid.spacing[mu], &f.values, mu);
        let g = Multivector::gamma(mu);
        out.par_iter_mut().zip(d).for_each(|(o, v)| *o += g * v);
    }
    Ok(SampledField { grid: f.grid, values: out, margin: f.margin + 1 })
}

/// ∂f sampled from a closure: exact partials when advertised, otherwise
/// central differences of the closure with the grid spacing.
pub fn dirac_operator_closure(f: &dyn FieldClosure, grid: Grid) -> Result<SampledField> {
    grid.validate()?;
    let h = grid.spacing;
    let values = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let q = grid.point_at(i);
            let p = f.partials(&q).unwrap_or_else(|| {
                std::array::from_fn(|mu| {
                    (f.eval(&q.shifted(mu, h[mu])) - f.eval(&q.shifted(mu, -h[mu]))) * (0.5 / h[mu])
                })
            });
            (0..4).map(|mu| Multivector::gamma(mu) * p[mu]).sum()
        })
        .collect();
    Ok(SampledField { grid, values, margin: 0 })
}

/// (df, δf) for a homogeneous grade-k field: df = ⟨∂f⟩_{k+1}, δf = −⟨∂f⟩_{k−1}.
pub fn d_and_delta(f: &SampledField, k: usize) -> Result<(SampledField, SampledField)> {
    if k > 4 {
        return arg(format!("grade {k} outside 0..=4"));
    }
    if !f.is_homogeneous(k, 1e-10) {
        return arg(format!("d_and_delta expects a homogeneous grade-{k} field"));
    }
    let df = dirac_operator(f)?;
    let d = if k < 4 { df.grade(k + 1) } else { df.map(|_| Multivector::ZERO) };
    let delta = if k > 0 { df.map(|m| -m.grade(k - 1)) } else { df.map(|_| Multivector::ZERO) };
    Ok((d, delta))
}

/// Largest coefficient outside grades k±1 of ∂f, as a bookkeeping check.
pub fn off_grade_leak(df: &SampledField, k: usize) -> f64 {
    df.interior()
        .iter()
        .map(|&i| {
            let m = df.values[i];
            (0..16)
                .filter(|b| {
                    let g = grade_of(*b);
                    g + 1 != k && g != k + 1
                })
                .map(|b| m.coeff(b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
