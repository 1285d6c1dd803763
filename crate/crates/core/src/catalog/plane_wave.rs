use super::{FieldClosure, SpacetimePoint};
use crate::algebra::{lift_complex, Multivector, PauliSplit};
use crate::error::{arg, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

fn default_amplitude() -> f64 {
    1.0
}

/// Circularly polarised plane wave.
///
/// `direction` is the unit spatial part d of the wave covector k_μ = ω(1, d);
/// energy flows along −d.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneWaveParams {
    pub omega: f64,
    pub direction: [f64; 3],
    pub helicity: i32,
    pub phase0: f64,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
}

impl Default for PlaneWaveParams {
    fn default() -> Self {
        Self { omega: 1.0, direction: [0.0, 0.0, 1.0], helicity: 1, phase0: 0.0, amplitude: 1.0 }
    }
}

impl PlaneWaveParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return arg("plane_wave.omega must be positive");
        }
        let n = self.direction.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !((n - 1.0).abs() <= 1e-9) {
            return arg("plane_wave.direction must be a unit vector");
        }
        if self.helicity != 1 && self.helicity != -1 {
            return arg("plane_wave.helicity must be +1 or -1");
        }
        if !self.phase0.is_finite() || !self.amplitude.is_finite() {
            return arg("plane_wave.phase0 and amplitude must be finite");
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct PlaneWave {
    pub params: PlaneWaveParams,
    /// Physical wave vector ω·n with n = −direction.
    pub k_phys: [f64; 3],
    /// Complex polarisation f = e_a + i e_b with n × f = −i f.
    pub polarization: [Complex64; 3],
    f_biv: Multivector,
}

impl PlaneWave {
    pub fn new(params: PlaneWaveParams) -> Result<Self> {
        params.validate()?;
        let d = params.direction;
        let n = [-d[0], -d[1], -d[2]];
        // e_a: the axis least aligned with n, orthogonalised; x̂ for n = ±ẑ.
        let axis = if n[0].abs() <= n[1].abs() && n[0].abs() <= n[2].abs() {
            [1.0, 0.0, 0.0]
        } else if n[1].abs() <= n[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let proj = axis[0] * n[0] + axis[1] * n[1] + axis[2] * n[2];
        let mut ea = [axis[0] - proj * n[0], axis[1] - proj * n[1], axis[2] - proj * n[2]];
        let len = (ea[0] * ea[0] + ea[1] * ea[1] + ea[2] * ea[2]).sqrt();
        ea.iter_mut().for_each(|v| *v /= len);
        let eb = [
            n[1] * ea[2] - n[2] * ea[1],
            n[2] * ea[0] - n[0] * ea[2],
            n[0] * ea[1] - n[1] * ea[0],
        ];
        let polarization = std::array::from_fn(|k| Complex64::new(ea[k], eb[k]));
        let f_biv = PauliSplit::new(ea, eb).to_bivector();
        let k_phys = n.map(|v| params.omega * v);
        Ok(Self { params, k_phys, polarization, f_biv })
    }

    /// θ = k·x − ωt + φ₀.
    pub fn phase(&self, q: &SpacetimePoint) -> f64 {
        let k = &self.k_phys;
        k[0] * q.x + k[1] * q.y + k[2] * q.z - self.params.omega * q.t + self.params.phase0
    }

    fn sign(&self) -> f64 {
        self.params.helicity as f64
    }

    /// ∂_μθ.
    fn phase_gradient(&self) -> [f64; 4] {
        [-self.params.omega, self.k_phys[0], self.k_phys[1], self.k_phys[2]]
    }

    /// Complex Riemann-Silberstein amplitude A·f·e^{±iθ}.
    pub fn rs(&self, q: &SpacetimePoint) -> [Complex64; 3] {
        let ph = Complex64::from_polar(self.params.amplitude, self.sign() * self.phase(q));
        self.polarization.map(|f| f * ph)
    }

    /// Radiation-gauge potential A = A_μγ^μ with A₀ = 0 and ∇·A = 0.
    pub fn potential(&self, q: &SpacetimePoint) -> Multivector {
        self.potential_at_phase(self.phase(q))
    }

    fn potential_at_phase(&self, theta: f64) -> Multivector {
        // Spatial vector potential Re(c·e^{isθ}) with c = −i s A f / ω, so E = −∂_t A.
        let s = self.sign();
        let c = Complex64::new(0.0, -s * self.params.amplitude / self.params.omega);
        let ph = Complex64::from_polar(1.0, s * theta);
        let av: [f64; 3] = std::array::from_fn(|k| (c * self.polarization[k] * ph).re);
        Multivector::vector([0.0, -av[0], -av[1], -av[2]])
    }

    /// ∂_μA in radiation gauge.
    pub fn potential_partials(&self, q: &SpacetimePoint) -> [Multivector; 4] {
        // A depends on θ only; dA/dθ equals A at θ + π/2 scaled by s.
        let theta = self.phase(q);
        let da = self.potential_at_phase(theta + self.sign() * std::f64::consts::FRAC_PI_2);
        let g = self.phase_gradient();
        std::array::from_fn(|mu| da * (g[mu] * self.sign()))
    }
}

impl FieldClosure for PlaneWave {
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        let ph = Complex64::from_polar(self.params.amplitude, self.sign() * self.phase(q));
        lift_complex(ph, &self.f_biv)
    }

    fn partials(&self, q: &SpacetimePoint) -> Option<[Multivector; 4]> {
        let s = self.sign();
        let ph = Complex64::from_polar(self.params.amplitude, s * self.phase(q));
        let g = self.phase_gradient();
        Some(std::array::from_fn(|mu| {
            lift_complex(Complex64::new(0.0, s * g[mu]) * ph, &self.f_biv)
        }))
    }

    fn has_partials(&self) -> bool {
        true
    }
}

/// The plane-wave field closure.
pub fn plane_wave_f(p: PlaneWaveParams) -> Result<PlaneWave> {
    PlaneWave::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dirac_from_partials, fd_partials};

    fn pw(helicity: i32) -> PlaneWave {
        PlaneWave::new(PlaneWaveParams { helicity, ..Default::default() }).unwrap()
    }

    #[test]
    fn reference_field_at_origin() {
        let f = pw(1).eval(&SpacetimePoint::default());
        let expect = Multivector::blade(0b0011) - Multivector::blade(0b1010);
        assert!((f - expect).max_abs() < 1e-15);
    }

    #[test]
    fn null_and_transverse_everywhere() {
        for h in [1, -1] {
            let w = PlaneWave::new(PlaneWaveParams {
                omega: 2.3,
                direction: [0.6, 0.0, 0.8],
                helicity: h,
                phase0: 0.4,
                amplitude: 1.7,
            })
            .unwrap();
            for i in 0..20 {
                let q = SpacetimePoint::new(0.1 * i as f64, -0.3 * i as f64, 0.7, 0.05 * i as f64);
                let f = w.eval(&q);
                assert!((f * f).max_abs() < 1e-12);
                let s = PauliSplit::from_bivector(&f).unwrap();
                let d = w.params.direction;
                let ke: f64 = (0..3).map(|k| d[k] * s.e_vec[k]).sum();
                let kb: f64 = (0..3).map(|k| d[k] * s.b_vec[k]).sum();
                assert!(ke.abs() < 1e-13 && kb.abs() < 1e-13);
                let dirac = dirac_from_partials(&w.partials(&q).unwrap());
                assert!(dirac.max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_partials_match_differences() {
        let w = pw(-1);
        let q = SpacetimePoint::new(0.3, 0.1, -0.2, 0.5);
        let exact = w.partials(&q).unwrap();
        let fd = fd_partials(&w, &q, 1e-5);
        for mu in 0..4 {
            assert!((exact[mu] - fd[mu]).max_abs() < 1e-9);
        }
    }

    #[test]
    fn radiation_gauge_potential_generates_field() {
        for h in [1, -1] {
            let w = pw(h);
            let q = SpacetimePoint::new(0.2, 0.4, -0.1, 0.9);
            let da = w.potential_partials(&q);
            let f: Multivector =
                (0..4).map(|mu| Multivector::gamma(mu).wedge(&da[mu])).sum();
            assert!((f - w.eval(&q)).max_abs() < 1e-14);
            let div: f64 = (0..4).map(|mu| Multivector::gamma(mu).scalar_product(&da[mu])).sum();
            assert!(div.abs() < 1e-14);
            assert_eq!(w.potential(&q).vector_components()[0], 0.0);
        }
    }
}
