use super::config::{Format, PropagationSpec, Resolved};
use super::report::{write_json, SuiteReport};
use crate::algebra::{Multivector, PauliSplit};
use crate::calculus::{maxwell_residual, write_field_csv, SampledField};
use crate::catalog::{catalog_entries, FieldClosure, HalfSpaceCorrupted, SpacetimePoint};
use crate::error::{Error, Result};
use crate::extensor::{conservation_residual, extensor_report, extensor_t, poynting_theorem_residual, surface_flux, Surface};
use crate::photon::{action_from_t0, quantum_potential, trajectory, QuantumPotentialEval};
use crate::propagation::{AxisRun, DataKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::path::Path;

/// Everything a subcommand needs besides its configuration.
pub struct RunContext<'a> {
    pub config: &'a Resolved,
    pub out: &'a Path,
    pub format: Format,
    pub tolerance_scale: f64,
}

impl RunContext<'_> {
    fn tol(&self, name: &str) -> f64 {
        self.config.tolerances.scaled(self.tolerance_scale).get(name)
    }
}

fn build_field(cfg: &Resolved) -> Result<Box<dyn FieldClosure>> {
    let f = cfg.require_field()?.build()?;
    Ok(if cfg.corrupt { Box::new(HalfSpaceCorrupted { inner: f }) } else { f })
}

pub fn catalog(format: Format) -> Result<()> {
    let entries = catalog_entries();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&entries)?),
        Format::Csv => {
            for e in entries {
                println!("{:<18} {}", e.id, e.summary);
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleRecord {
    coords: [f64; 4],
    blades: [f64; 16],
}

pub fn sample(ctx: &RunContext) -> Result<SuiteReport> {
    let field = build_field(ctx.config)?;
    let sampled = SampledField::sample(&*field, ctx.config.require_grid()?);
    match ctx.format {
        Format::Csv => write_field_csv(&sampled, &ctx.out.join("field.csv"))?,
        Format::Json => {
            let records: Vec<SampleRecord> = (0..sampled.values.len())
                .map(|i| SampleRecord { coords: sampled.grid.point_at(i).to_array(), blades: *sampled.values[i].coeffs() })
                .collect();
            write_json(&ctx.out.join("field.json"), &records)?;
        }
    }
    Ok(SuiteReport::new("sample", &ctx.config.scenario))
}

fn mean_spacing(f: &SampledField) -> f64 {
    f.grid.spacing.iter().sum::<f64>() / 4.0
}

/// max over a point set of a per-point value, skipping points where it is undefined.
fn max_over<F: Fn(&SpacetimePoint) -> Option<f64> + Sync>(points: &[SpacetimePoint], f: F) -> f64 {
    points.par_iter().filter_map(|q| f(q)).reduce(|| 0.0, f64::max)
}

pub fn verify(ctx: &RunContext) -> Result<SuiteReport> {
    let cfg = ctx.config;
    let field = build_field(cfg)?;
    let grid = cfg.require_grid()?;
    let points: Vec<SpacetimePoint> = (0..grid.len()).map(|i| grid.point_at(i)).collect();
    let sampled = std::cell::OnceCell::new();
    let sampled_field = || -> &SampledField { sampled.get_or_init(|| SampledField::sample(&*field, grid)) };
    let mut report = SuiteReport::new("verify", &cfg.scenario);
    for name in &cfg.suites {
        let tol = ctx.tol(name);
        match name.as_str() {
            "maxwell" => {
                let s = sampled_field();
                report.check(name, tol, || Ok(maxwell_residual(s, None)? * mean_spacing(s) / s.max_norm().max(f64::MIN_POSITIVE)))?
            }
            "conservation" => {
                let s = sampled_field();
                report.check(name, tol, || {
                    Ok(conservation_residual(s, None)? * mean_spacing(s) / s.max_norm().powi(2).max(f64::MIN_POSITIVE))
                })?
            }
            "poynting_theorem" => {
                let s = sampled_field();
                report.check(name, tol, || {
                    Ok(poynting_theorem_residual(s, None)? * mean_spacing(s) / s.max_norm().powi(2).max(f64::MIN_POSITIVE))
                })?
            }
            "extensor_symmetry" => report.check(name, tol, || extensor_symmetry(&*field, &points, cfg.seed))?,
            "nullity" => report.check(name, tol, || {
                Ok(max_over(&points, |q| {
                    let f = field.eval(q);
                    let n2 = f.norm().powi(2);
                    (n2 > 0.0).then(|| (f * f).norm() / n2)
                }))
            })?,
            "energy_velocity" => report.check_with(name, Some(1.0 + tol), || {
                let v = max_over(&points, |q| crate::extensor::components_t(&field.eval(q)).ok().and_then(|e| e.v_energy));
                Ok((v, v <= 1.0 + tol))
            })?,
            "flux" => report.check(name, tol, || {
                let c = grid.point_at(0).to_array();
                let dims = grid.dims;
                let center: [f64; 3] =
                    std::array::from_fn(|k| c[k + 1] + grid.spacing[k + 1] * (dims[k + 1] as f64 - 1.0) / 2.0);
                let t = c[0] + grid.spacing[0] * (dims[0] as f64 - 1.0) / 2.0;
                let p = |x: [f64; 3]| PauliSplit::from_bivector_unchecked(&field.eval(&SpacetimePoint::new(t, x[0], x[1], x[2]))).poynting();
                Ok(surface_flux(&p, Surface::Sphere { center, radius: cfg.flux.radius }, cfg.flux.n_theta, None)?.abs())
            })?,
            other => return Err(Error::Config { path: "suites".into(), message: format!("unknown suite `{other}`") }),
        }
    }
    Ok(report)
}

/// Largest relative |T(n)·m − T(m)·n| over 10³ seeded draws of (q, n, m).
fn extensor_symmetry(field: &dyn FieldClosure, points: &[SpacetimePoint], seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let q = points[rng.gen_range(0..points.len())];
        let n = Multivector::vector(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        let m = Multivector::vector(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        let f = field.eval(&q);
        let scale = f.norm().powi(2) * n.norm() * m.norm();
        if scale == 0.0 {
            continue;
        }
        let a = extensor_t(&f, &n)?.scalar_product(&m);
        let b = extensor_t(&f, &m)?.scalar_product(&n);
        worst = worst.max((a - b).abs() / scale);
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub min: f64,
    pub max: f64,
    pub counts: Vec<usize>,
}

fn histogram(values: &[f64], bins: usize) -> Histogram {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0; bins];
    if values.is_empty() {
        return Histogram { min: 0.0, max: 0.0, counts };
    }
    let width = (max - min) / bins as f64;
    for v in values {
        let k = if width > 0.0 { (((v - min) / width) as usize).min(bins - 1) } else { 0 };
        counts[k] += 1;
    }
    Histogram { min, max, counts }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergySummary {
    pub points: usize,
    pub v_energy_defined: usize,
    pub v_energy_min: Option<f64>,
    pub v_energy_max: Option<f64>,
    pub u_max: f64,
    #[serde(rename = "I1_histogram")]
    pub i1_histogram: Histogram,
    #[serde(rename = "L_histogram")]
    pub l_histogram: Histogram,
}

pub fn energy(ctx: &RunContext) -> Result<SuiteReport> {
    let cfg = ctx.config;
    let field = build_field(cfg)?;
    let grid = cfg.require_grid()?;
    let points: Vec<SpacetimePoint> = (0..grid.len()).map(|i| grid.point_at(i)).collect();
    let records = extensor_report(&*field, &points)?;
    match ctx.format {
        Format::Json => write_json(&ctx.out.join("extensor.json"), &records)?,
        Format::Csv => {
            let mut w = csv::Writer::from_path(ctx.out.join("extensor.csv"))?;
            let mut header: Vec<String> =
                ["t", "x", "y", "z", "u", "Px", "Py", "Pz", "I1", "L", "t0_norm", "v_energy"].iter().map(|s| s.to_string()).collect();
            header.extend((0..4).flat_map(|m| (0..4).map(move |n| format!("T{m}{n}"))));
            w.write_record(&header)?;
            for r in &records {
                let e = &r.eval;
                let mut row: Vec<String> = r.coords.iter().map(f64::to_string).collect();
                row.push(e.u.to_string());
                row.extend(e.p_vec.iter().map(f64::to_string));
                row.extend([e.invariant_i1, e.invariant_l, e.t0_norm].iter().map(f64::to_string));
                row.push(e.v_energy.map(|v| v.to_string()).unwrap_or_default());
                row.extend(e.t_matrix.iter().flatten().map(f64::to_string));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    let v: Vec<f64> = records.iter().filter_map(|r| r.eval.v_energy).collect();
    let summary = EnergySummary {
        points: records.len(),
        v_energy_defined: v.len(),
        v_energy_min: v.iter().copied().reduce(f64::min),
        v_energy_max: v.iter().copied().reduce(f64::max),
        u_max: records.iter().map(|r| r.eval.u).fold(0.0, f64::max),
        i1_histogram: histogram(&records.iter().map(|r| r.eval.invariant_i1).collect::<Vec<_>>(), cfg.energy.bins),
        l_histogram: histogram(&records.iter().map(|r| r.eval.invariant_l).collect::<Vec<_>>(), cfg.energy.bins),
    };
    write_json(&ctx.out.join("energy_summary.json"), &summary)?;
    let tol = ctx.tol("energy_velocity");
    let mut report = SuiteReport::new("energy", &cfg.scenario);
    let vmax = summary.v_energy_max.unwrap_or(0.0);
    report.check_with("energy_velocity", Some(1.0 + tol), || Ok((vmax, vmax <= 1.0 + tol)))?;
    Ok(report)
}

fn write_profiles(ctx: &RunContext, run: &AxisRun) -> Result<()> {
    match ctx.format {
        Format::Json => write_json(&ctx.out.join("profiles.json"), &run.profiles),
        Format::Csv => {
            let mut w = csv::Writer::from_path(ctx.out.join("profiles.csv"))?;
            w.write_record(["t", "z", "amp"])?;
            for p in &run.profiles {
                for (z, a) in p.z.iter().zip(&p.amp) {
                    w.write_record([p.t.to_string(), z.to_string(), a.to_string()])?;
                }
            }
            w.flush()?;
            Ok(())
        }
    }
}

pub fn propagate(ctx: &RunContext) -> Result<SuiteReport> {
    let cfg = ctx.config;
    let Some(spec) = &cfg.propagation else {
        return Err(Error::Config { path: "propagation".into(), message: format!("scenario `{}` defines no propagation", cfg.scenario) });
    };
    let mut report = SuiteReport::new("propagate", &cfg.scenario);
    let outcome = match spec {
        PropagationSpec::Axis(a) => a.run(),
        PropagationSpec::Aperture(a) => a.run(),
    };
    let run = match outcome {
        Ok(run) => run,
        Err(e @ Error::Diagnostic(_)) => {
            report.check_with("kinematics", None, || Err(e))?;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    write_profiles(ctx, &run)?;
    write_json(&ctx.out.join("kinematics.json"), &run)?;
    let front_max = run.report.front_speeds.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let bound = 1.0 + run.front_allowance;
    match spec {
        PropagationSpec::Axis(a) if a.window.is_none() && a.data == DataKind::Xwave => {
            let expected = a.xwave.peak_speed();
            let speeds = &run.report.peak_speeds;
            // One-sided end differences are excluded.
            let inner = if speeds.len() > 2 { &speeds[1..speeds.len() - 1] } else { &speeds[..] };
            let mean = inner.iter().map(|s| s.1).sum::<f64>() / inner.len() as f64;
            report.check("peak_speed", ctx.tol("peak_speed"), || Ok((mean / expected - 1.0).abs()))?;
        }
        PropagationSpec::Axis(a) if a.window.is_some() => {
            report.check_with("front_speed", Some(bound), || Ok((front_max, front_max <= bound)))?;
            report.check_with("peak_reshaping", None, || {
                let k = run.report.peak_nonincreasing_from;
                let speeds = &run.report.peak_speeds;
                let ok = run.report.peak_superluminal_initially
                    && speeds[..=k.min(speeds.len() - 1)].iter().all(|s| s.1 > 1.0)
                    && k + 2 <= speeds.len();
                Ok((speeds[0].1, ok))
            })?;
        }
        _ => report.check_with("front_speed", Some(bound), || Ok((front_max, front_max <= bound)))?,
    }
    Ok(report)
}

#[derive(Serialize)]
struct ProbeRecord {
    coords: [f64; 4],
    action: f64,
    action_gradient: [f64; 4],
    #[serde(flatten)]
    eval: QuantumPotentialEval,
}

#[derive(Serialize)]
struct PhotonReport {
    exactness_residual: f64,
    probes: Vec<ProbeRecord>,
}

pub fn photon(ctx: &RunContext) -> Result<SuiteReport> {
    let cfg = ctx.config;
    let Some(spec) = &cfg.photon else {
        return Err(Error::Config { path: "photon".into(), message: format!("scenario `{}` defines no photon section", cfg.scenario) });
    };
    let field = build_field(cfg)?;
    let probes: Vec<SpacetimePoint> = spec.probes.iter().map(|p| SpacetimePoint::from_array(*p)).collect();
    let fact = action_from_t0(&*field, SpacetimePoint::from_array(spec.reference), &probes, spec.n_gl);
    let records: Vec<ProbeRecord> = probes
        .par_iter()
        .map(|q| ProbeRecord {
            coords: q.to_array(),
            action: fact.action(q),
            action_gradient: fact.action_gradient(q),
            eval: quantum_potential(&fact, q),
        })
        .collect();
    if let Some(t) = &spec.trajectory {
        let path = trajectory(&fact, SpacetimePoint::from_array(t.start), t.dtau, t.steps);
        match ctx.format {
            Format::Json => write_json(&ctx.out.join("trajectory.json"), &path)?,
            Format::Csv => {
                let mut w = csv::Writer::from_path(ctx.out.join("trajectory.csv"))?;
                w.write_record(["step", "t", "x", "y", "z"])?;
                for (i, p) in path.iter().enumerate() {
                    w.write_record([i.to_string(), p.t.to_string(), p.x.to_string(), p.y.to_string(), p.z.to_string()])?;
                }
                w.flush()?;
            }
        }
    }
    let mut report = SuiteReport::new("photon", &cfg.scenario);
    let undefined = |what: &str| Error::Diagnostic(format!("{what} undefined at a degenerate probe"));
    for name in &spec.checks {
        let tol = ctx.tol(name);
        match name.as_str() {
            "hje_identity" => report.check(name, tol, || {
                records.iter().try_fold(0.0f64, |m, r| Ok(m.max(r.eval.hje_residual.ok_or_else(|| undefined("Q_F"))?.abs())))
            })?,
            "constraints" => report.check(name, tol, || {
                records.iter().try_fold(0.0f64, |m, r| {
                    let c = r.eval.constraint_residuals.ok_or_else(|| undefined("the constraints"))?;
                    Ok(m.max(c[0]).max(c[1]))
                })
            })?,
            "null_action" => report.check(name, tol, || Ok(records.iter().map(|r| r.eval.ds_sq.abs()).fold(0.0, f64::max)))?,
            other => return Err(Error::Config { path: "photon.checks".into(), message: format!("unknown check `{other}`") }),
        }
    }
    write_json(&ctx.out.join("photon.json"), &PhotonReport { exactness_residual: fact.exactness_residual, probes: records })?;
    Ok(report)
}
