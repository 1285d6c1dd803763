use super::{diff2_axis, dirac_operator, maxwell_residual, Grid, SampledField};
use crate::algebra::{Multivector, METRIC};
use crate::catalog::{FieldClosure, FnField, ScalarClosure};
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Output of the Hertz-potential pipeline Π → A = −δΠ → F = dA.
#[derive(Clone, Debug)]
pub struct HertzPipelineResult {
    pub a: SampledField,
    pub f: SampledField,
    /// max |δA| over the interior.
    pub lorenz_residual: f64,
    /// max |□Π| over the interior.
    pub wave_residual: f64,
    /// max |∂F| over the interior.
    pub maxwell_residual: f64,
}

fn wave_operator(pi: &SampledField) -> SampledField {
    let mut out = vec![Multivector::ZERO; pi.values.len()];
    for mu in 0..4 {
        let d2 = diff2_axis(&pi.grid.dims, pi.grid.spacing[mu], &pi.values, mu);
        out.par_iter_mut().zip(d2).for_each(|(o, v)| *o += v * METRIC[mu]);
    }
    SampledField { grid: pi.grid, values: out, margin: pi.margin + 1 }
}

/// Runs the pipeline on a sampled bivector Hertz potential. Fails with a
/// diagnostic naming the worst point when □Π exceeds `wave_tolerance`.
pub fn hertz_pipeline(pi: &dyn FieldClosure, grid: Grid, wave_tolerance: f64) -> Result<HertzPipelineResult> {
    grid.require_dims(7, "the Hertz pipeline")?;
    let pis = SampledField::sample(pi, grid);
    if !pis.is_homogeneous(2, 1e-10) {
        return Err(Error::Argument("Hertz potential must be a bivector field".into()));
    }
    let box_pi = wave_operator(&pis);
    let (where_max, wave_residual) = box_pi.argmax_norm().unwrap_or_default();
    if wave_residual > wave_tolerance {
        return Err(Error::Diagnostic(format!(
            "Hertz potential fails the wave equation: |□Π| = {wave_residual:.3e} > {wave_tolerance:.3e} near (t,x,y,z) = ({:.4}, {:.4}, {:.4}, {:.4})",
            where_max.t, where_max.x, where_max.y, where_max.z
        )));
    }
    let dpi = dirac_operator(&pis)?;
    let a = dpi.grade(1);
    let da = dirac_operator(&a)?;
    let f = da.grade(2);
    let lorenz_residual = da.grade(0).max_norm();
    let maxwell_residual = maxwell_residual(&f, None)?;
    Ok(HertzPipelineResult { a, f, lorenz_residual, wave_residual, maxwell_residual })
}

/// Pipeline for Π = Φ·B₀ with complex Φ: real and imaginary parts run
/// separately and recombine as X[Re] + 𝐢X[Im].
pub fn hertz_pipeline_complex(
    phi: &dyn ScalarClosure,
    blade: Multivector,
    grid: Grid,
    wave_tolerance: f64,
) -> Result<HertzPipelineResult> {
    let re = hertz_pipeline(&FnField(|q: &_| blade * phi.eval(q).re), grid, wave_tolerance)?;
    let im = hertz_pipeline(&FnField(|q: &_| blade * phi.eval(q).im), grid, wave_tolerance)?;
    let i = Multivector::unit_i();
    let join = |a: &SampledField, b: &SampledField| SampledField {
        grid: a.grid,
        values: a.values.iter().zip(&b.values).map(|(x, y)| *x + i * *y).collect(),
        margin: a.margin,
    };
    Ok(HertzPipelineResult {
        a: join(&re.a, &im.a),
        f: join(&re.f, &im.f),
        lorenz_residual: re.lorenz_residual.max(im.lorenz_residual),
        wave_residual: re.wave_residual.max(im.wave_residual),
        maxwell_residual: re.maxwell_residual.max(im.maxwell_residual),
    })
}
