use super::{kirchhoff_on_axis, rs_aperture_evolve, track_kinematics, ApertureSpec, AxisOptions, CauchyData, KinematicsReport, Profile};
use crate::catalog::{truncate_scalar, FnScalar, ScalarClosure, SpacetimePoint, WindowParams, XWave, XWaveParams};
use crate::error::{arg, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataKind {
    /// Φ_X and its exact time derivative at t = 0.
    #[default]
    Xwave,
    /// Identically zero data.
    Zero,
}

/// On-axis Kirchhoff run over a (t, z) lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisScenario {
    #[serde(default)]
    pub data: DataKind,
    #[serde(default)]
    pub xwave: XWaveParams,
    /// Truncation window; `None` propagates the untruncated data.
    #[serde(default)]
    pub window: Option<WindowParams>,
    pub times: Vec<f64>,
    pub z_min: f64,
    pub z_max: f64,
    pub nz: usize,
    #[serde(default)]
    pub options: AxisOptions,
    /// Absolute front threshold; 10⁻³ of the run maximum when absent.
    #[serde(default)]
    pub threshold: Option<f64>,
}

/// Profiles, tracking report and the front-speed discretisation allowance 2h/Δt.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisRun {
    pub profiles: Vec<Profile>,
    pub report: KinematicsReport,
    pub front_allowance: f64,
}

impl AxisScenario {
    /// The truncated X-wave used to demonstrate reshaping.
    pub fn reshaping_default() -> Self {
        Self {
            data: DataKind::Xwave,
            xwave: XWaveParams { eta: std::f64::consts::FRAC_PI_4, a0: 0.1 },
            window: Some(WindowParams { b: 8.0, delta: 2.0 }),
            times: (1..=12).map(|k| 0.5 * k as f64).collect(),
            z_min: -1.0,
            z_max: 9.0,
            nz: 1001,
            options: AxisOptions { n_gl: 64, ht: 2e-3 },
            threshold: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.xwave.validate()?;
        if let Some(w) = &self.window {
            w.validate()?;
        }
        check_lattice(&self.times, self.z_min, self.z_max, self.nz)?;
        Ok(())
    }

    pub fn z_grid(&self) -> Vec<f64> {
        lattice(self.z_min, self.z_max, self.nz)
    }

    /// Complex Φ on every (t, z) lattice point, t-major.
    pub fn evaluate(&self) -> Result<Vec<Vec<Complex64>>> {
        self.validate()?;
        let xw = XWave::new(self.xwave)?;
        let dxw = FnScalar(move |q: &SpacetimePoint| xw.time_derivative(q));
        let zero = FnScalar(|_: &SpacetimePoint| Complex64::new(0.0, 0.0));
        let (phi0, dphi0): (Box<dyn ScalarClosure>, Box<dyn ScalarClosure>) = match (self.data, self.window) {
            (DataKind::Zero, _) => (Box::new(zero), Box::new(FnScalar(|_: &SpacetimePoint| Complex64::new(0.0, 0.0)))),
            (DataKind::Xwave, None) => (Box::new(xw), Box::new(dxw)),
            (DataKind::Xwave, Some(w)) => (Box::new(truncate_scalar(xw, w)?), Box::new(truncate_scalar(dxw, w)?)),
        };
        let data = CauchyData { phi0: &*phi0, dphi0: &*dphi0, compact_support: self.window.is_some() };
        let zs = self.z_grid();
        self.times
            .iter()
            .map(|&t| {
                zs.par_iter()
                    .map(|&z| kirchhoff_on_axis(&data, t, z, &self.options, self.window.as_ref()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }

    pub fn run(&self) -> Result<AxisRun> {
        let values = self.evaluate()?;
        axis_run(&self.times, self.z_grid(), values, self.threshold)
    }
}

/// Profiles and kinematics from a set of complex samples on a (t, z) lattice.
fn axis_run(times: &[f64], zs: Vec<f64>, values: Vec<Vec<Complex64>>, threshold: Option<f64>) -> Result<AxisRun> {
    let profiles: Vec<Profile> = times
        .iter()
        .zip(values)
        .map(|(&t, v)| Profile { t, z: zs.clone(), amp: v.iter().map(|c| c.norm()).collect() })
        .collect();
    let report = track_kinematics(&profiles, threshold)?;
    let h = zs[1] - zs[0];
    let dt = times.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    Ok(AxisRun { profiles, report, front_allowance: 2.0 * h / dt })
}

fn check_lattice(times: &[f64], z_min: f64, z_max: f64, nz: usize) -> Result<()> {
    if times.len() < 3 || times.iter().any(|t| !(*t > 0.0)) {
        return arg("scenario needs at least 3 positive times");
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return arg("scenario times must increase");
    }
    if !(z_max > z_min) || nz < 3 {
        return arg("scenario needs z_max > z_min and nz ≥ 3");
    }
    Ok(())
}

fn lattice(z_min: f64, z_max: f64, nz: usize) -> Vec<f64> {
    let h = (z_max - z_min) / (nz - 1) as f64;
    (0..nz).map(|i| z_min + h * i as f64).collect()
}

/// On-axis field radiated by an X-wave-driven disk on z = 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApertureScenario {
    #[serde(default)]
    pub xwave: XWaveParams,
    pub aperture: ApertureSpec,
    pub times: Vec<f64>,
    pub z_min: f64,
    pub z_max: f64,
    pub nz: usize,
    #[serde(default)]
    pub threshold: Option<f64>,
}

impl ApertureScenario {
    pub fn validate(&self) -> Result<()> {
        self.xwave.validate()?;
        self.aperture.validate()?;
        check_lattice(&self.times, self.z_min, self.z_max, self.nz)?;
        if !(self.z_min > 0.0) {
            return arg("aperture scenario needs z_min > 0");
        }
        Ok(())
    }

    pub fn run(&self) -> Result<AxisRun> {
        self.validate()?;
        let xw = XWave::new(self.xwave)?;
        let zs = lattice(self.z_min, self.z_max, self.nz);
        let values = self
            .times
            .iter()
            .map(|&t| {
                zs.par_iter()
                    .map(|&z| rs_aperture_evolve(&self.aperture, &xw, &SpacetimePoint::new(t, 0.0, 0.0, z)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        axis_run(&self.times, zs, values, self.threshold)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn untruncated_peak_moves_at_x_wave_speed() {
        let s = AxisScenario {
            data: DataKind::Xwave,
            xwave: XWaveParams { eta: std::f64::consts::FRAC_PI_4, a0: 0.5 },
            window: None,
            times: vec![0.4, 0.6, 0.8],
            z_min: -1.0,
            z_max: 3.0,
            nz: 401,
            options: AxisOptions { n_gl: 64, ht: 2e-3 },
            threshold: None,
        };
        let run = s.run().unwrap();
        let v = run.report.peak_speeds[1].1;
        assert!((v * std::f64::consts::FRAC_PI_4.cos() - 1.0).abs() < 5e-3, "{v}");
    }

    #[test]
    fn zero_data_is_flat() {
        let s = AxisScenario { data: DataKind::Zero, nz: 11, options: AxisOptions { n_gl: 8, ht: 1e-2 }, ..AxisScenario::reshaping_default() };
        assert!(matches!(s.run(), Err(Error::Diagnostic(_))));
    }
}
