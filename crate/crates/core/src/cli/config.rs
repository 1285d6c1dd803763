use crate::calculus::Grid;
use crate::catalog::{
    DipoleParams, FieldSpec, FwmParams, LocalizedPhotonParams, PlaneWaveParams, SpacetimePoint, XWaveParams,
};
use crate::error::{Error, Result};
use crate::propagation::{ApertureScenario, ApertureSpec, AxisOptions, AxisScenario, DataKind};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;
use std::path::{Path, PathBuf};

/// Checks understood by `verify`.
pub const VERIFY_SUITES: &[&str] =
    &["maxwell", "conservation", "poynting_theorem", "extensor_symmetry", "nullity", "energy_velocity", "flux"];

/// Checks understood by `photon`.
pub const PHOTON_CHECKS: &[&str] = &["hje_identity", "constraints", "null_action"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Grid of `dims` points with `spacing`, centred on `center` (t, x, y, z).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub center: [f64; 4],
    pub spacing: [f64; 4],
    pub dims: [usize; 4],
}

impl GridSpec {
    pub fn grid(&self) -> Result<Grid> {
        Grid::centered(SpacetimePoint::from_array(self.center), self.spacing, self.dims)
    }

    fn uniform(h: f64, n: usize) -> Self {
        Self { center: [0.0; 4], spacing: [h; 4], dims: [n; 4] }
    }
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

/// Acceptance thresholds; every one is multiplied by `--tolerance-scale`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// max|∂F| relative to max|F|/h̄, h̄ the mean spacing.
    pub maxwell: f64,
    /// Conservation residual relative to max|F|²/h̄.
    pub conservation: f64,
    /// Poynting-theorem residual relative to max|F|²/h̄.
    pub poynting_theorem: f64,
    /// |T(n)·m − T(m)·n| relative to |F|²|n||m|.
    pub extensor_symmetry: f64,
    /// |F²| relative to |F|².
    pub nullity: f64,
    /// Allowed excess of |P|/u over 1.
    pub energy_velocity: f64,
    /// Absolute closed-surface flux of P.
    pub flux: f64,
    /// Relative deviation of the measured peak speed from 1/cos η.
    pub peak_speed: f64,
    pub hje_identity: f64,
    pub constraints: f64,
    pub null_action: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            maxwell: 1e-3,
            conservation: 1e-3,
            poynting_theorem: 1e-3,
            extensor_symmetry: 1e-12,
            nullity: 1e-12,
            energy_velocity: 1e-12,
            flux: 1e-10,
            peak_speed: 5e-3,
            hje_identity: 1e-8,
            constraints: 1e-12,
            null_action: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            maxwell: self.maxwell * s,
            conservation: self.conservation * s,
            poynting_theorem: self.poynting_theorem * s,
            extensor_symmetry: self.extensor_symmetry * s,
            nullity: self.nullity * s,
            energy_velocity: self.energy_velocity * s,
            flux: self.flux * s,
            peak_speed: self.peak_speed * s,
            hje_identity: self.hje_identity * s,
            constraints: self.constraints * s,
            null_action: self.null_action * s,
        }
    }

    pub fn get(&self, name: &str) -> f64 {
        match name {
            "maxwell" => self.maxwell,
            "conservation" => self.conservation,
            "poynting_theorem" => self.poynting_theorem,
            "extensor_symmetry" => self.extensor_symmetry,
            "nullity" => self.nullity,
            "energy_velocity" => self.energy_velocity,
            "flux" => self.flux,
            "peak_speed" => self.peak_speed,
            "hje_identity" => self.hje_identity,
            "constraints" => self.constraints,
            "null_action" => self.null_action,
            _ => f64::NAN,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluxSpec {
    pub radius: f64,
    #[serde(default = "default_flux_theta")]
    pub n_theta: usize,
}

fn default_flux_theta() -> usize {
    64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PropagationSpec {
    Axis(AxisScenario),
    Aperture(ApertureScenario),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectorySpec {
    pub start: [f64; 4],
    pub dtau: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhotonSpec {
    pub reference: [f64; 4],
    pub probes: Vec<[f64; 4]>,
    #[serde(default = "default_n_gl")]
    pub n_gl: usize,
    #[serde(default = "default_photon_checks")]
    pub checks: Vec<String>,
    #[serde(default)]
    pub trajectory: Option<TrajectorySpec>,
}

fn default_n_gl() -> usize {
    24
}

fn default_photon_checks() -> Vec<String> {
    vec!["hje_identity".into()]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergySpec {
    pub bins: usize,
}

impl Default for EnergySpec {
    fn default() -> Self {
        Self { bins: 20 }
    }
}

/// A run configuration as written by the user. Absent sections are taken
/// from the built-in scenario named by `scenario`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: String,
    #[serde(default)]
    pub field: Option<FieldSpec>,
    /// Negative control: double E on x > 0.
    #[serde(default)]
    pub corrupt: Option<bool>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub suites: Option<Vec<String>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
    #[serde(default)]
    pub flux: Option<FluxSpec>,
    #[serde(default)]
    pub energy: Option<EnergySpec>,
    #[serde(default)]
    pub propagation: Option<PropagationSpec>,
    #[serde(default)]
    pub photon: Option<PhotonSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

/// Fully resolved configuration, echoed into the run manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Resolved {
    pub scenario: String,
    pub field: Option<FieldSpec>,
    pub corrupt: bool,
    pub grid: Option<GridSpec>,
    pub suites: Vec<String>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub flux: FluxSpec,
    pub energy: EnergySpec,
    pub propagation: Option<PropagationSpec>,
    pub photon: Option<PhotonSpec>,
    pub output: OutputSpec,
}

fn cfg_err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Config { path: path.into(), message: message.into() })
}

fn suites(names: &[&str]) -> Option<Vec<String>> {
    Some(names.iter().map(|s| s.to_string()).collect())
}

/// Names of the built-in scenarios.
pub const SCENARIOS: &[&str] = &[
    "plane_wave",
    "xwave",
    "fwm",
    "dipole",
    "localized_photon",
    "corrupted_plane_wave",
    "reshaping",
    "xwave_kirchhoff",
    "zero_data",
    "aperture",
    "pws_photon",
    "fwm_photon",
];

pub fn preset(name: &str) -> Option<RunConfig> {
    let mut c = RunConfig { scenario: name.into(), ..RunConfig::default() };
    let field_suites = ["maxwell", "conservation", "poynting_theorem", "extensor_symmetry", "energy_velocity"];
    match name {
        "plane_wave" => {
            c.field = Some(FieldSpec::PlaneWave(PlaneWaveParams::default()));
            c.grid = Some(GridSpec::uniform(0.05, 9));
            c.suites = suites(&[&field_suites[..], &["nullity"]].concat());
        }
        "xwave" => {
            c.field = Some(FieldSpec::Xwave(XWaveParams::default()));
            c.grid = Some(GridSpec::uniform(0.02, 9));
            c.suites = suites(&field_suites);
        }
        "fwm" => {
            c.field = Some(FieldSpec::Fwm(FwmParams::default()));
            c.grid = Some(GridSpec::uniform(0.02, 9));
            c.suites = suites(&field_suites);
        }
        "localized_photon" => {
            c.field = Some(FieldSpec::LocalizedPhoton(LocalizedPhotonParams::default()));
            c.grid = Some(GridSpec { center: [0.0, 0.3, 0.2, 0.4], spacing: [0.02; 4], dims: [9; 4] });
            c.suites = suites(&field_suites);
        }
        "dipole" => {
            c.field = Some(FieldSpec::Dipole(DipoleParams::default()));
            c.grid = Some(GridSpec { center: [0.0; 4], spacing: [1.0, 0.3, 0.3, 0.3], dims: [1, 21, 21, 21] });
            c.suites = suites(&["flux", "extensor_symmetry", "energy_velocity"]);
            c.flux = Some(FluxSpec { radius: 2.0, n_theta: 64 });
        }
        "corrupted_plane_wave" => {
            c.field = Some(FieldSpec::PlaneWave(PlaneWaveParams::default()));
            c.corrupt = Some(true);
            c.grid = Some(GridSpec::uniform(0.05, 9));
            c.suites = suites(&["maxwell", "conservation"]);
        }
        "reshaping" => c.propagation = Some(PropagationSpec::Axis(AxisScenario::reshaping_default())),
        "xwave_kirchhoff" => {
            c.propagation = Some(PropagationSpec::Axis(AxisScenario {
                data: DataKind::Xwave,
                xwave: XWaveParams { eta: FRAC_PI_4, a0: 0.5 },
                window: None,
                times: vec![0.4, 0.6, 0.8],
                z_min: -1.0,
                z_max: 3.0,
                nz: 401,
                options: AxisOptions { n_gl: 64, ht: 2e-3 },
                threshold: None,
            }))
        }
        "zero_data" => {
            c.propagation = Some(PropagationSpec::Axis(AxisScenario {
                data: DataKind::Zero,
                nz: 11,
                options: AxisOptions { n_gl: 8, ht: 1e-2 },
                ..AxisScenario::reshaping_default()
            }))
        }
        "aperture" => {
            c.propagation = Some(PropagationSpec::Aperture(ApertureScenario {
                xwave: XWaveParams { eta: 0.16, a0: 0.02 },
                aperture: ApertureSpec { b: 1.0, density: 16, duration: 1.0 },
                times: vec![2.5, 3.0, 3.5, 4.0],
                z_min: 0.5,
                z_max: 6.0,
                nz: 221,
                threshold: None,
            }))
        }
        "pws_photon" => {
            c.field = Some(FieldSpec::PlaneWave(PlaneWaveParams { helicity: -1, ..PlaneWaveParams::default() }));
            c.photon = Some(PhotonSpec {
                reference: [0.0; 4],
                probes: vec![[0.4, -0.3, 0.2, 0.9], [1.0, 0.5, 0.5, -0.7], [-0.6, 0.0, 1.2, 0.3]],
                n_gl: 4,
                checks: ["hje_identity", "constraints", "null_action"].iter().map(|s| s.to_string()).collect(),
                trajectory: Some(TrajectorySpec { start: [0.0; 4], dtau: 0.1, steps: 20 }),
            });
        }
        "fwm_photon" => {
            c.field = Some(FieldSpec::Fwm(FwmParams::default()));
            c.photon = Some(PhotonSpec {
                reference: [0.0, 0.1, 0.1, 0.1],
                probes: vec![[0.3, 0.2, -0.1, 0.4], [0.1, -0.2, 0.3, 0.2]],
                n_gl: 24,
                checks: default_photon_checks(),
                trajectory: None,
            });
        }
        _ => return None,
    }
    Some(c)
}

/// Parses TOML, reporting the exact key path of any schema violation.
pub fn parse(text: &str) -> Result<RunConfig> {
    let de = toml::Deserializer::new(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if let Some(refined) = refine_tagged(text, &path) {
            return refined;
        }
        Error::Config { path, message: e.into_inner().message().trim().to_string() }
    })
}

fn variant_error<T: serde::de::DeserializeOwned>(v: toml::Value) -> Option<(String, String)> {
    serde_path_to_error::deserialize::<_, T>(v).err().map(|e| (e.path().to_string(), e.into_inner().message().trim().to_string()))
}

/// Tagged sections are buffered before dispatch, which drops the inner path;
/// deserialising the selected variant directly recovers it.
fn refine_tagged(text: &str, section: &str) -> Option<Error> {
    let doc: toml::Table = text.parse().ok()?;
    let mut table = doc.get(section)?.as_table()?.clone();
    let kind = table.remove("kind")?;
    let v = toml::Value::Table(table);
    let (inner, message) = match (section, kind.as_str()?) {
        ("field", "plane_wave") => variant_error::<PlaneWaveParams>(v),
        ("field", "xwave") => variant_error::<XWaveParams>(v),
        ("field", "fwm") => variant_error::<FwmParams>(v),
        ("field", "dipole") => variant_error::<DipoleParams>(v),
        ("field", "localized_photon") => variant_error::<LocalizedPhotonParams>(v),
        ("propagation", "axis") => variant_error::<AxisScenario>(v),
        ("propagation", "aperture") => variant_error::<ApertureScenario>(v),
        _ => None,
    }?;
    let path = if inner == "." { section.to_string() } else { format!("{section}.{inner}") };
    Some(Error::Config { path, message })
}

pub fn load(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config { path: path.display().to_string(), message: e.to_string() })?;
    parse(&text)
}

impl RunConfig {
    /// Merges onto the named built-in scenario and validates every section.
    pub fn resolve(self) -> Result<Resolved> {
        let Some(base) = preset(&self.scenario) else {
            return cfg_err("scenario", format!("unknown scenario `{}`; known: {}", self.scenario, SCENARIOS.join(", ")));
        };
        let r = Resolved {
            scenario: self.scenario,
            field: self.field.or(base.field),
            corrupt: self.corrupt.or(base.corrupt).unwrap_or(false),
            grid: self.grid.or(base.grid),
            suites: self.suites.or(base.suites).unwrap_or_default(),
            seed: self.seed.or(base.seed).unwrap_or(0),
            tolerances: self.tolerances.or(base.tolerances).unwrap_or_default(),
            flux: self.flux.or(base.flux).unwrap_or(FluxSpec { radius: 1.0, n_theta: default_flux_theta() }),
            energy: self.energy.or(base.energy).unwrap_or_default(),
            propagation: self.propagation.or(base.propagation),
            photon: self.photon.or(base.photon),
            output: OutputSpec { dir: self.output.dir.or(base.output.dir), format: self.output.format.or(base.output.format) },
        };
        r.validate()?;
        Ok(r)
    }
}

impl Resolved {
    fn validate(&self) -> Result<()> {
        let wrap = |path: &str, r: Result<()>| r.or_else(|e| cfg_err(path, e.to_string()));
        if let Some(f) = &self.field {
            wrap("field", f.validate())?;
        }
        for (i, s) in self.suites.iter().enumerate() {
            if !VERIFY_SUITES.contains(&s.as_str()) {
                return cfg_err(&format!("suites[{i}]"), format!("unknown suite `{s}`; known: {}", VERIFY_SUITES.join(", ")));
            }
        }
        if let Some(g) = &self.grid {
            wrap("grid", g.grid().map(|_| ()))?;
            let differentiating = ["maxwell", "conservation", "poynting_theorem"];
            if self.suites.iter().any(|s| differentiating.contains(&s.as_str())) && g.dims.iter().any(|d| *d < 3) {
                return cfg_err("grid.dims", "derivative suites need at least 3 points per axis");
            }
        }
        if !(self.flux.radius > 0.0) || self.flux.n_theta < 2 {
            return cfg_err("flux", "flux.radius must be positive and flux.n_theta ≥ 2");
        }
        if self.energy.bins == 0 {
            return cfg_err("energy.bins", "must be positive");
        }
        match &self.propagation {
            Some(PropagationSpec::Axis(a)) => wrap("propagation", a.validate())?,
            Some(PropagationSpec::Aperture(a)) => wrap("propagation", a.validate())?,
            None => {}
        }
        if let Some(p) = &self.photon {
            for (i, c) in p.checks.iter().enumerate() {
                if !PHOTON_CHECKS.contains(&c.as_str()) {
                    return cfg_err(&format!("photon.checks[{i}]"), format!("unknown check `{c}`; known: {}", PHOTON_CHECKS.join(", ")));
                }
            }
            if p.n_gl == 0 {
                return cfg_err("photon.n_gl", "must be positive");
            }
            if let Some(t) = &p.trajectory {
                if !(t.dtau.is_finite() && t.dtau != 0.0) {
                    return cfg_err("photon.trajectory.dtau", "must be finite and nonzero");
                }
            }
        }
        Ok(())
    }

    /// The resolved field section, or a configuration error naming it.
    pub fn require_field(&self) -> Result<&FieldSpec> {
        self.field.as_ref().map_or_else(|| cfg_err("field", format!("scenario `{}` defines no field", self.scenario)), Ok)
    }

    pub fn require_grid(&self) -> Result<Grid> {
        match &self.grid {
            Some(g) => g.grid(),
            None => cfg_err("grid", format!("scenario `{}` defines no grid", self.scenario)),
        }
    }
}
