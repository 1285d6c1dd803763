use crate::algebra::{Multivector, METRIC};
use crate::catalog::{partials_or_fd, FieldClosure, SpacetimePoint};
use crate::quadrature::GaussLegendre;
use serde::{Deserialize, Serialize};

/// Step for fields that do not supply exact partials.
const FD_STEP: f64 = 1e-4;

/// F = 𝓕e^{γ⁵S} with S = −∫T⁰ along the staircase t → x → y → z from `reference`.
pub struct HJFactorization<'a> {
    pub field: &'a dyn FieldClosure,
    pub reference: SpacetimePoint,
    /// max |⟨∂T⁰⟩₂| over the probe points; zero when T⁰ is closed.
    pub exactness_residual: f64,
    gl: GaussLegendre,
}

fn t0_of(f: &Multivector) -> Multivector {
    *f * Multivector::gamma(0) * *f * -0.5
}

impl<'a> HJFactorization<'a> {
    /// Covariant components of T⁰ = −½Fγ⁰F at q.
    pub fn t0(&self, q: &SpacetimePoint) -> [f64; 4] {
        t0_of(&self.field.eval(q)).vector_components()
    }

    /// d[ν][μ] = ∂_ν T⁰_μ.
    fn t0_partials(&self, q: &SpacetimePoint) -> [[f64; 4]; 4] {
        let f = self.field.eval(q);
        let p = partials_or_fd(self.field, q, FD_STEP);
        let g0 = Multivector::gamma(0);
        std::array::from_fn(|nu| ((p[nu] * g0 * f + f * g0 * p[nu]) * -0.5).vector_components())
    }

    fn path_point(&self, q: &SpacetimePoint, axis: usize, xi: f64) -> SpacetimePoint {
        let (r, e) = (self.reference.to_array(), q.to_array());
        SpacetimePoint::from_array(std::array::from_fn(|b| match b.cmp(&axis) {
            std::cmp::Ordering::Less => e[b],
            std::cmp::Ordering::Equal => xi,
            std::cmp::Ordering::Greater => r[b],
        }))
    }

    fn segment<F: Fn(&SpacetimePoint) -> f64>(&self, q: &SpacetimePoint, axis: usize, g: F) -> f64 {
        let (a, b) = (self.reference.to_array()[axis], q.to_array()[axis]);
        if a == b {
            return 0.0;
        }
        self.gl.mapped(a, b).map(|(xi, w)| w * g(&self.path_point(q, axis, xi))).sum()
    }

    /// S(q) = −Σ_a ∫ T⁰_a dx^a along the staircase.
    pub fn action(&self, q: &SpacetimePoint) -> f64 {
        -(0..4).map(|a| self.segment(q, a, |p| self.t0(p)[a])).sum::<f64>()
    }

    /// ∂_μS of the staircase action, differentiated under the integral.
    pub fn action_gradient(&self, q: &SpacetimePoint) -> [f64; 4] {
        std::array::from_fn(|mu| {
            let end = self.path_point(q, mu, q.to_array()[mu]);
            let later: f64 = (mu + 1..4).map(|a| self.segment(q, a, |p| self.t0_partials(p)[mu][a])).sum();
            -self.t0(&end)[mu] - later
        })
    }

    /// 𝓕 = F e^{−γ⁵S}.
    pub fn amplitude(&self, q: &SpacetimePoint) -> Multivector {
        self.field.eval(q) * Multivector::duality_exp(-self.action(q))
    }

    /// ∂_μ𝓕 = (∂_μF − Fγ⁵∂_μS) e^{−γ⁵S}.
    pub fn amplitude_partials(&self, q: &SpacetimePoint) -> [Multivector; 4] {
        let f = self.field.eval(q);
        let p = partials_or_fd(self.field, q, FD_STEP);
        let ds = self.action_gradient(q);
        let phase = Multivector::duality_exp(-self.action(q));
        let g5 = Multivector::gamma5();
        std::array::from_fn(|mu| (p[mu] - f * g5 * ds[mu]) * phase)
    }

    /// Largest |⟨∂T⁰⟩₂| over `points`.
    pub fn closedness(&self, points: &[SpacetimePoint]) -> f64 {
        points
            .iter()
            .map(|q| {
                let d = self.t0_partials(q);
                let v: Multivector = (0..4).map(|nu| Multivector::gamma(nu) * Multivector::vector(d[nu])).sum();
                v.grade(2).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Builds the factorisation and evaluates the closedness diagnostic at `probes`.
pub fn action_from_t0<'a>(
    field: &'a dyn FieldClosure,
    reference: SpacetimePoint,
    probes: &[SpacetimePoint],
    n_gl: usize,
) -> HJFactorization<'a> {
    let mut h = HJFactorization { field, reference, exactness_residual: 0.0, gl: GaussLegendre::new(n_gl.max(1)) };
    h.exactness_residual = h.closedness(probes);
    h
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumPotentialEval {
    /// ⟨γ⁵∂ln𝓕 ∂S⟩₀; `None` at a degenerate point where it is undefined.
    pub q_f: Option<f64>,
    /// ∂S·∂S.
    pub ds_sq: f64,
    /// ∂S·∂S + Q_F.
    pub hje_residual: Option<f64>,
    /// Norms of the grade-2 and grade-4 parts of γ⁵∂ln𝓕 ∂S.
    pub constraint_residuals: Option<[f64; 2]>,
    /// γ⁵∂ln𝓕 where ∂S is not null.
    pub linearized_q: Option<Multivector>,
    /// 𝓕 had no inverse at this point.
    pub degenerate: bool,
}

/// Relative size below which ∂𝓕 counts as zero, and ∂S·∂S as null.
const DEGENERATE_TOL: f64 = 1e-12;

pub fn quantum_potential(fact: &HJFactorization, q: &SpacetimePoint) -> QuantumPotentialEval {
    let amp = fact.amplitude(q);
    let dp = fact.amplitude_partials(q);
    let ds = fact.action_gradient(q);
    let ds_sq: f64 = (0..4).map(|m| METRIC[m] * ds[m] * ds[m]).sum();
    let ds_vec = Multivector::vector(ds);
    let d_amp: Multivector = (0..4).map(|m| Multivector::gamma(m) * dp[m]).sum();
    let scale = amp.norm().max(1.0) * ds.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    let log_d = match amp.inverse() {
        Some(inv) => Some(d_amp * inv),
        None if d_amp.max_abs() <= DEGENERATE_TOL * scale => Some(Multivector::ZERO),
        None => None,
    };
    let degenerate = amp.inverse().is_none();
    let ds_norm = ds.iter().map(|v| v * v).sum::<f64>();
    match log_d {
        Some(l) => {
            let g5l = Multivector::gamma5() * l;
            let x = g5l * ds_vec;
            let q_f = x.scalar_part();
            QuantumPotentialEval {
                q_f: Some(q_f),
                ds_sq,
                hje_residual: Some(ds_sq + q_f),
                constraint_residuals: Some([x.grade(2).norm(), x.grade(4).norm()]),
                linearized_q: (ds_sq.abs() > DEGENERATE_TOL * ds_norm.max(1.0)).then_some(g5l),
                degenerate,
            }
        }
        None => QuantumPotentialEval {
            q_f: None,
            ds_sq,
            hje_residual: None,
            constraint_residuals: None,
            linearized_q: None,
            degenerate,
        },
    }
}

/// RK4 integral curve of the vector field −∂S (indices raised), from `start`.
pub fn trajectory(fact: &HJFactorization, start: SpacetimePoint, dtau: f64, steps: usize) -> Vec<SpacetimePoint> {
    let vel = |p: &[f64; 4]| -> [f64; 4] {
        let g = fact.action_gradient(&SpacetimePoint::from_array(*p));
        std::array::from_fn(|m| -METRIC[m] * g[m])
    };
    let add = |a: &[f64; 4], b: &[f64; 4], s: f64| -> [f64; 4] { std::array::from_fn(|m| a[m] + s * b[m]) };
    let mut x = start.to_array();
    let mut out = vec![start];
    for _ in 0..steps {
        let k1 = vel(&x);
        let k2 = vel(&add(&x, &k1, 0.5 * dtau));
        let k3 = vel(&add(&x, &k2, 0.5 * dtau));
        let k4 = vel(&add(&x, &k3, dtau));
        x = std::array::from_fn(|m| x[m] + dtau / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]));
        out.push(SpacetimePoint::from_array(x));
    }
    out
}
