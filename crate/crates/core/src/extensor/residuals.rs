use super::t_matrix;
use crate::algebra::{Multivector, PauliSplit};
use crate::calculus::{diff_axis, SampledField};
use crate::catalog::{FieldClosure, SpacetimePoint};
use crate::error::{arg, Result};

fn margin_with(f: &SampledField, j: Option<&SampledField>) -> Result<usize> {
    f.grid.require_dims(3, "extensor residuals")?;
    match j {
        Some(j) => {
            f.check_compatible(j)?;
            Ok((f.margin + 1).max(j.margin))
        }
        None => Ok(f.margin + 1),
    }
}

/// max over the interior and over ν of |∂_μT^{μν} − (J⌟F)·γ^ν|.
pub fn conservation_residual(f: &SampledField, j: Option<&SampledField>) -> Result<f64> {
    let margin = margin_with(f, j)?;
    let dims = f.grid.dims;
    let mats: Vec<[[f64; 4]; 4]> = f.values.iter().map(t_matrix).collect();
    let mut div = vec![[0.0f64; 4]; f.values.len()];
    for mu in 0..4 {
        for nu in 0..4 {
            let col: Vec<f64> = mats.iter().map(|m| m[mu][nu]).collect();
            let d = diff_axis(&dims, f.grid.spacing[mu], &col, mu);
            for (acc, v) in div.iter_mut().zip(d) {
                acc[nu] += v;
            }
        }
    }
    let mut worst = 0.0f64;
    for i in f.grid.interior(margin) {
        let force = match j {
            Some(j) => j.values[i].left_contract(&f.values[i]),
            None => Multivector::ZERO,
        };
        for nu in 0..4 {
            let rhs = force.scalar_product(&Multivector::gamma(nu));
            worst = worst.max((div[i][nu] - rhs).abs());
        }
    }
    Ok(worst)
}

/// The same residual at one point from exact (or finite-difference) partials of F.
pub fn conservation_residual_at(f: &dyn FieldClosure, q: &SpacetimePoint, j: Option<Multivector>, h: f64) -> f64 {
    let fv = f.eval(q);
    let p = crate::catalog::partials_or_fd(f, q, h);
    // ∂_μT(γ^μ) = −½ Σ_μ (∂_μF γ^μ F + F γ^μ ∂_μF)
    let div: Multivector = (0..4)
        .map(|mu| {
            let g = Multivector::gamma(mu);
            (p[mu] * g * fv + fv * g * p[mu]) * -0.5
        })
        .sum();
    let force = j.map(|j| j.left_contract(&fv)).unwrap_or(Multivector::ZERO);
    (0..4)
        .map(|nu| {
            let g = Multivector::gamma(nu);
            (div.scalar_product(&g) - force.scalar_product(&g)).abs()
        })
        .fold(0.0, f64::max)
}

/// max |∂u/∂t + ∇·P + J·E| over the interior. J = ργ₀ + J^kγ_k.
pub fn poynting_theorem_residual(f: &SampledField, j: Option<&SampledField>) -> Result<f64> {
    let margin = margin_with(f, j)?;
    let dims = f.grid.dims;
    let h = f.grid.spacing;
    let splits: Vec<PauliSplit> = f.values.iter().map(PauliSplit::from_bivector_unchecked).collect();
    let u: Vec<f64> = splits.iter().map(|s| s.energy_density()).collect();
    let mut total = diff_axis(&dims, h[0], &u, 0);
    for k in 0..3 {
        let pk: Vec<f64> = splits.iter().map(|s| s.poynting()[k]).collect();
        for (t, v) in total.iter_mut().zip(diff_axis(&dims, h[k + 1], &pk, k + 1)) {
            *t += v;
        }
    }
    if let Some(j) = j {
        for (i, t) in total.iter_mut().enumerate() {
            let v = j.values[i].vector_components();
            let e = splits[i].e_vec;
            *t += -(v[1] * e[0] + v[2] * e[1] + v[3] * e[2]);
        }
    }
    let idx = f.grid.interior(margin);
    if idx.is_empty() {
        return arg("no interior points left for the Poynting residual");
    }
    Ok(idx.iter().map(|&i| total[i].abs()).fold(0.0, f64::max))
}
