use super::{diff_axis, dirac_operator, SampledField};
use crate::algebra::PauliSplit;
use crate::error::Result;
use serde::{Deserialize, Serialize};

/// max over the interior of |∂F − J|.
pub fn maxwell_residual(f: &SampledField, j: Option<&SampledField>) -> Result<f64> {
    if let Some(j) = j {
        f.check_compatible(j)?;
    }
    let df = dirac_operator(f)?;
    Ok(df
        .interior()
        .iter()
        .map(|&i| match j {
            Some(j) => (df.values[i] - j.values[i]).norm(),
            None => df.values[i].norm(),
        })
        .fold(0.0, f64::max))
}

/// Interior maxima of the four vector-form Maxwell residuals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorResiduals {
    /// ∇·E − ρ
    pub gauss_e: f64,
    /// ∇×B − ∂₀E − J
    pub ampere: f64,
    /// ∇×E + ∂₀B
    pub faraday: f64,
    /// ∇·B
    pub gauss_b: f64,
}

impl VectorResiduals {
    pub fn max(&self) -> f64 {
        self.gauss_e.max(self.ampere).max(self.faraday).max(self.gauss_b)
    }
}

/// Splits ∂F = J into its vector form through the Pauli split of F and
/// J = ργ₀ + J^kγ_k, and reports each residual separately.
pub fn vector_form_split(f: &SampledField, j: Option<&SampledField>) -> Result<VectorResiduals> {
    if let Some(j) = j {
        f.check_compatible(j)?;
    }
    f.grid.require_dims(3, "the vector split")?;
    let n = f.values.len();
    let splits: Vec<PauliSplit> = f.values.iter().map(PauliSplit::from_bivector_unchecked).collect();
    let comp = |g: &dyn Fn(&PauliSplit) -> f64| -> Vec<f64> { splits.iter().map(g).collect() };
    let e: [Vec<f64>; 3] = std::array::from_fn(|k| comp(&|s| s.e_vec[k]));
    let b: [Vec<f64>; 3] = std::array::from_fn(|k| comp(&|s| s.b_vec[k]));
    let dims = f.grid.dims;
    let h = f.grid.spacing;
    // d[c][a]: derivative of component c along axis a.
    let de: [[Vec<f64>; 4]; 3] = std::array::from_fn(|c| std::array::from_fn(|a| diff_axis(&dims, h[a], &e[c], a)));
    let db: [[Vec<f64>; 4]; 3] = std::array::from_fn(|c| std::array::from_fn(|a| diff_axis(&dims, h[a], &b[c], a)));
    let (mut ge, mut amp, mut far, mut gb) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in f.grid.interior(f.margin + 1) {
        let (rho, cur) = match j {
            Some(j) => {
                let v = j.values[i].vector_components();
                (v[0], [-v[1], -v[2], -v[3]])
            }
            None => (0.0, [0.0; 3]),
        };
        let div_e = de[0][1][i] + de[1][2][i] + de[2][3][i];
        let div_b = db[0][1][i] + db[1][2][i] + db[2][3][i];
        let curl = |d: &[[Vec<f64>; 4]; 3]| {
            [d[2][2][i] - d[1][3][i], d[0][3][i] - d[2][1][i], d[1][1][i] - d[0][2][i]]
        };
        let cb = curl(&db);
        let ce = curl(&de);
        let a = (0..3).map(|k| (cb[k] - de[k][0][i] - cur[k]).powi(2)).sum::<f64>().sqrt();
        let fa = (0..3).map(|k| (ce[k] + db[k][0][i]).powi(2)).sum::<f64>().sqrt();
        ge = ge.max((div_e - rho).abs());
        amp = amp.max(a);
        far = far.max(fa);
        gb = gb.max(div_b.abs());
    }
    let _ = n;
    Ok(VectorResiduals { gauss_e: ge, ampere: amp, faraday: far, gauss_b: gb })
}
