use crate::error::{arg, Error, Result};
use serde::{Deserialize, Serialize};

/// On-axis amplitude |Φ| sampled on increasing z at time t.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub t: f64,
    pub z: Vec<f64>,
    pub amp: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinematicsReport {
    pub threshold: f64,
    /// (t, z_peak)
    pub peak_positions: Vec<(f64, f64)>,
    /// (t, dz/dt) by centred differences, one-sided at the ends.
    pub peak_speeds: Vec<(f64, f64)>,
    /// (t, z_front): largest z with |Φ| > threshold.
    pub front_positions: Vec<(f64, f64)>,
    pub front_speeds: Vec<(f64, f64)>,
    pub peak_superluminal_initially: bool,
    /// First index from which the peak speeds never increase.
    pub peak_nonincreasing_from: usize,
}

/// Vertex of the parabola through the argmax and its neighbours.
fn refined_peak(z: &[f64], a: &[f64]) -> f64 {
    let i = a.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).map(|p| p.0).unwrap_or(0);
    if i == 0 || i + 1 == a.len() {
        return z[i];
    }
    let (y0, y1, y2) = (a[i - 1], a[i], a[i + 1]);
    let denom = y0 - 2.0 * y1 + y2;
    if denom >= 0.0 {
        return z[i];
    }
    // Uniform spacing locally assumed.
    let h = 0.5 * (z[i + 1] - z[i - 1]);
    z[i] + 0.5 * h * (y0 - y2) / denom
}

fn front(z: &[f64], a: &[f64], tau: f64) -> Option<f64> {
    let i = a.iter().rposition(|v| *v > tau)?;
    if i + 1 == a.len() {
        return Some(z[i]);
    }
    // Linear crossing between the last sample above τ and the next one.
    let s = (a[i] - tau) / (a[i] - a[i + 1]);
    Some(z[i] + s * (z[i + 1] - z[i]))
}

fn speeds(pos: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let n = pos.len();
    (0..n)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
            (pos[i].0, (pos[b].1 - pos[a].1) / (pos[b].0 - pos[a].0))
        })
        .collect()
}

/// Peak and front tracking. `threshold` is absolute; `None` selects 10⁻³ of the
/// largest amplitude in the run.
pub fn track_kinematics(run: &[Profile], threshold: Option<f64>) -> Result<KinematicsReport> {
    if run.len() < 3 {
        return arg("track_kinematics needs at least 3 time samples");
    }
    for w in run.windows(2) {
        if !(w[1].t > w[0].t) {
            return arg("profiles must be ordered by increasing t");
        }
    }
    for p in run {
        if p.z.len() != p.amp.len() || p.z.len() < 3 {
            return arg("each profile needs matching z and amplitude samples (≥ 3)");
        }
    }
    let global = run.iter().flat_map(|p| p.amp.iter()).fold(0.0f64, |m, v| m.max(*v));
    let tau = threshold.unwrap_or(1e-3 * global);
    let mut peak_positions = Vec::new();
    let mut front_positions = Vec::new();
    for p in run {
        let Some(zf) = front(&p.z, &p.amp, tau) else {
            return Err(Error::Diagnostic(format!("flat profile at t = {}: every sample is below τ = {tau:.3e}", p.t)));
        };
        peak_positions.push((p.t, refined_peak(&p.z, &p.amp)));
        front_positions.push((p.t, zf));
    }
    let peak_speeds = speeds(&peak_positions);
    let front_speeds = speeds(&front_positions);
    let mut from = peak_speeds.len() - 1;
    while from > 0 && peak_speeds[from - 1].1 >= peak_speeds[from].1 {
        from -= 1;
    }
    Ok(KinematicsReport {
        threshold: tau,
        peak_superluminal_initially: peak_speeds[0].1 > 1.0,
        peak_positions,
        peak_speeds,
        front_positions,
        front_speeds,
        peak_nonincreasing_from: from,
    })
}
