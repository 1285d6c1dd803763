use super::extensor_t;
use crate::algebra::Multivector;
use crate::catalog::{dirac_from_partials, SpacetimePoint};
use crate::error::{arg, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance for accepting F = dA.
const DA_TOL: f64 = 1e-8;

/// Canonical and spin extensors at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalExtensorEval {
    /// Tc^{μν} = Tc(γ^μ)·γ^ν.
    pub tc: [[f64; 4]; 4],
    /// Tc(n) for the requested n.
    pub tc_n: Multivector,
    /// S(γ_μ) = (γ_μ⌟F)∧A.
    pub spin_s: [Multivector; 4],
    /// S(n).
    pub spin_n: Multivector,
    /// J(n) = Tc(n)∧x + S(n).
    pub total_j_n: Multivector,
}

/// Tc(n) = T(n) − ∂̇⟨(n⌟F)Ȧ⟩₀ and S(n) = (n⌟F)∧A, given A and its partials
/// ∂_νA. Fails when F differs from dA.
pub fn canonical_and_spin(
    f: &Multivector,
    a: &Multivector,
    da: &[Multivector; 4],
    n: &Multivector,
    x: &SpacetimePoint,
) -> Result<CanonicalExtensorEval> {
    let d_a = dirac_from_partials(da).grade(2);
    if (d_a - *f).max_abs() > DA_TOL * f.max_abs().max(1.0) {
        return arg(format!("F differs from dA by {:.3e}", (d_a - *f).max_abs()));
    }
    let tc_of = |n: &Multivector| -> Result<Multivector> {
        let nf = n.left_contract(f);
        let corr: Multivector = (0..4).map(|nu| Multivector::gamma(nu) * nf.scalar_product(&da[nu])).sum();
        Ok(extensor_t(f, n)? - corr)
    };
    let spin_of = |n: &Multivector| n.left_contract(f).wedge(a);
    let rows: [Multivector; 4] = [
        tc_of(&Multivector::gamma(0))?,
        tc_of(&Multivector::gamma(1))?,
        tc_of(&Multivector::gamma(2))?,
        tc_of(&Multivector::gamma(3))?,
    ];
    let tc = std::array::from_fn(|mu| std::array::from_fn(|nu| rows[mu].scalar_product(&Multivector::gamma(nu))));
    let tc_n = tc_of(n)?;
    let spin_n = spin_of(n);
    let xv = x.position_vector();
    Ok(CanonicalExtensorEval {
        tc,
        tc_n,
        spin_s: std::array::from_fn(|mu| spin_of(&Multivector::gamma_lower(mu))),
        spin_n,
        total_j_n: tc_n.wedge(&xv) + spin_n,
    })
}

/// Angular-momentum extensor M(γ_μ) = T(γ_μ)∧x at one point, with the volume
/// integral of x×P attached by the caller.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngularMomentumEval {
    pub m_forms: [Multivector; 4],
    pub total_j: [f64; 3],
}

pub fn angular_momentum_forms(f: &Multivector, x: &SpacetimePoint) -> Result<[Multivector; 4]> {
    let xv = x.position_vector();
    let mut out = [Multivector::ZERO; 4];
    for (mu, m) in out.iter_mut().enumerate() {
        *m = extensor_t(f, &Multivector::gamma_lower(mu))?.wedge(&xv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cross3, PauliSplit};
    use crate::catalog::{plane_wave_f, FieldClosure, PlaneWaveParams};

    fn pw_setup(q: &SpacetimePoint) -> (Multivector, Multivector, [Multivector; 4]) {
        let pw = plane_wave_f(PlaneWaveParams::default()).unwrap();
        (pw.eval(q), pw.potential(q), pw.potential_partials(q))
    }

    #[test]
    fn canonical_minus_symmetric_is_the_gradient_term() {
        let q = SpacetimePoint::new(0.3, 0.1, -0.2, 0.5);
        let (f, a, da) = pw_setup(&q);
        let n = Multivector::gamma(0);
        let c = canonical_and_spin(&f, &a, &da, &n, &q).unwrap();
        let t = extensor_t(&f, &n).unwrap();
        let nf = n.left_contract(&f);
        for nu in 0..4 {
            let g = Multivector::gamma(nu);
            let lhs = (c.tc_n - t).scalar_product(&g);
            assert!((lhs + crate::algebra::METRIC[nu] * nf.scalar_product(&da[nu])).abs() < 1e-14);
        }
        for mu in 0..4 {
            assert!((c.tc[0][mu] - c.tc_n.scalar_product(&Multivector::gamma(mu))).abs() < 1e-14);
        }
    }

    #[test]
    fn radiation_gauge_spin_is_nonzero_bivector() {
        let q = SpacetimePoint::new(0.0, 0.0, 0.0, 0.0);
        let (f, a, da) = pw_setup(&q);
        let c = canonical_and_spin(&f, &a, &da, &Multivector::gamma_lower(0), &q).unwrap();
        assert!(c.spin_n.is_grade(2, 1e-14));
        assert!(c.spin_n.max_abs() > 0.1);
    }

    #[test]
    fn spin_is_gauge_dependent_and_zero_n_vanishes() {
        let q = SpacetimePoint::new(0.2, 0.4, 0.0, -0.3);
        let (f, a, da) = pw_setup(&q);
        let n = Multivector::gamma(0);
        let s0 = canonical_and_spin(&f, &a, &da, &n, &q).unwrap().spin_n;
        // λ = 0.7x³: dλ is constant, so ∂A is unchanged and F = dA still holds.
        let shifted = a + Multivector::gamma(3) * 0.7;
        let s1 = canonical_and_spin(&f, &shifted, &da, &n, &q).unwrap().spin_n;
        assert!((s1 - s0).max_abs() > 0.1);
        let z = canonical_and_spin(&f, &a, &da, &Multivector::ZERO, &q).unwrap();
        assert_eq!(z.tc_n, Multivector::ZERO);
        assert_eq!(z.spin_n, Multivector::ZERO);
        assert_eq!(z.total_j_n, Multivector::ZERO);
    }

    #[test]
    fn inconsistent_potential_rejected() {
        let q = SpacetimePoint::new(0.0, 0.0, 0.0, 0.0);
        let (f, a, da) = pw_setup(&q);
        assert!(canonical_and_spin(&(f * 2.0), &a, &da, &Multivector::gamma(0), &q).is_err());
    }

    #[test]
    fn time_component_carries_orbital_density() {
        let f = PauliSplit::new([0.2, 0.9, -0.4], [0.6, -0.3, 0.8]).to_bivector();
        let x = SpacetimePoint::new(0.0, 1.5, -0.5, 2.0);
        let m = angular_momentum_forms(&f, &x).unwrap();
        let split = PauliSplit::from_bivector_unchecked(&m[0]);
        let s = PauliSplit::from_bivector_unchecked(&f);
        let (u, p) = (s.energy_density(), s.poynting());
        let xs = x.spatial();
        let l = cross3(&xs, &p);
        for k in 0..3 {
            assert!((split.e_vec[k] + u * xs[k]).abs() < 1e-14);
            assert!((split.b_vec[k] - l[k]).abs() < 1e-14);
        }
    }
}
