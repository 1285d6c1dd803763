use super::{Grid, SampledField};
use crate::algebra::text::blade_name;
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Grid metadata written next to every exported CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSidecar {
    pub grid: Grid,
    pub margin: usize,
    pub columns: Vec<String>,
}

/// Writes `path` (columns t,x,y,z and the 16 coefficients) and `path.json`.
pub fn write_field_csv(field: &SampledField, path: &Path) -> Result<()> {
    let mut columns: Vec<String> = ["t", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
    columns.extend((0..16).map(blade_name));
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&columns)?;
    for (i, v) in field.values.iter().enumerate() {
        let q = field.grid.point_at(i).to_array();
        let row: Vec<String> = q.iter().chain(v.coeffs().iter()).map(|x| format!("{x:?}")).collect();
        w.write_record(&row)?;
    }
    w.flush()?;
    let side = GridSidecar { grid: field.grid, margin: field.margin, columns };
    std::fs::write(sidecar_path(path), serde_json::to_string_pretty(&side)?)?;
    Ok(())
}

pub fn read_sidecar(csv_path: &Path) -> Result<GridSidecar> {
    Ok(serde_json::from_str(&std::fs::read_to_string(sidecar_path(csv_path))?)?)
}

pub(crate) fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    s.into()
}
