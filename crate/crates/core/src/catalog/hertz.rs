use super::{FieldClosure, ScalarClosure, SpacetimePoint};
use crate::algebra::{lift_complex, Multivector};
use crate::jet::Jet;
use num_complex::Complex64;

/// Field F = dA, A = −δΠ generated by the Hertz potential Π = Φ·B₀ with a
/// constant bivector B₀ and a scalar solution Φ of the wave equation.
///
/// Complex Φ is handled part by part: F = F[Re Φ] + 𝐢F[Im Φ].
pub struct HertzField<S> {
    pub scalar: S,
    pub blade: Multivector,
    /// `a_coef[μ]` = γ^μ ⌟ B₀, so A = Σ a_coef[μ] ∂_μΦ.
    a_coef: [Multivector; 4],
    /// `f_coef[ν][μ]` = γ^ν ∧ (γ^μ ⌟ B₀), so F = Σ f_coef[ν][μ] ∂_ν∂_μΦ.
    f_coef: [[Multivector; 4]; 4],
    /// 𝐢·f_coef, for the imaginary parts.
    f_coef_i: [[Multivector; 4]; 4],
}

impl<S: ScalarClosure> HertzField<S> {
    pub fn new(scalar: S, blade: Multivector) -> Self {
        let a_coef: [Multivector; 4] =
            std::array::from_fn(|mu| Multivector::gamma(mu).left_contract(&blade));
        let f_coef = std::array::from_fn(|nu| {
            std::array::from_fn(|mu| Multivector::gamma(nu).wedge(&a_coef[mu]))
        });
        let i = Multivector::unit_i();
        let f_coef_i = f_coef.map(|row: [Multivector; 4]| row.map(|c| i * c));
        Self { scalar, blade, a_coef, f_coef, f_coef_i }
    }

    fn jet_or_panic(&self, q: &SpacetimePoint) -> Jet {
        self.scalar.jet(q).expect("Hertz scalar must provide derivatives at this point")
    }

    fn assemble_second(&self, d2: &[[Complex64; 4]; 4]) -> Multivector {
        let mut out = Multivector::ZERO;
        for nu in 0..4 {
            for mu in 0..4 {
                let z = d2[nu][mu];
                out += self.f_coef[nu][mu] * z.re + self.f_coef_i[nu][mu] * z.im;
            }
        }
        out
    }

    /// The Hertz potential Π at q.
    pub fn hertz(&self, q: &SpacetimePoint) -> Multivector {
        lift_complex(self.scalar.eval(q), &self.blade)
    }

    /// A = −δΠ from the gradient of Φ.
    pub fn potential(&self, q: &SpacetimePoint) -> Multivector {
        let j = self.jet_or_panic(q);
        (0..4).map(|mu| lift_complex(j.d1[mu], &self.a_coef[mu])).sum()
    }

    /// ∂_νA.
    pub fn potential_partials(&self, q: &SpacetimePoint) -> [Multivector; 4] {
        let j = self.jet_or_panic(q);
        std::array::from_fn(|nu| (0..4).map(|mu| lift_complex(j.d2[nu][mu], &self.a_coef[mu])).sum())
    }

    /// Wave-equation residual □Φ = ∂_t²Φ − ∇²Φ.
    pub fn wave_residual(&self, q: &SpacetimePoint) -> Complex64 {
        let j = self.jet_or_panic(q);
        j.d2[0][0] - j.d2[1][1] - j.d2[2][2] - j.d2[3][3]
    }
}

impl<S: ScalarClosure> FieldClosure for HertzField<S> {
    fn eval(&self, q: &SpacetimePoint) -> Multivector {
        match self.scalar.jet(q) {
            Some(j) => self.assemble_second(&j.d2),
            None => self.assemble_second(&fd_hessian(&self.scalar, q, FALLBACK_STEP)),
        }
    }

    fn partials(&self, q: &SpacetimePoint) -> Option<[Multivector; 4]> {
        let j = self.scalar.jet(q)?;
        Some(std::array::from_fn(|l| {
            let slice: [[Complex64; 4]; 4] = std::array::from_fn(|a| std::array::from_fn(|b| j.d3[l][a][b]));
            self.assemble_second(&slice)
        }))
    }

    fn has_partials(&self) -> bool {
        true
    }
}

/// Step for the difference fallback at points where Φ has no jet.
const FALLBACK_STEP: f64 = 1e-3;

fn fd_hessian<S: ScalarClosure>(s: &S, q: &SpacetimePoint, h: f64) -> [[Complex64; 4]; 4] {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    let c = s.eval(q);
    for a in 0..4 {
        let p = s.eval(&q.shifted(a, h));
        let m = s.eval(&q.shifted(a, -h));
        out[a][a] = (p - 2.0 * c + m) / (h * h);
        for b in (a + 1)..4 {
            let pp = s.eval(&q.shifted(a, h).shifted(b, h));
            let pm = s.eval(&q.shifted(a, h).shifted(b, -h));
            let mp = s.eval(&q.shifted(a, -h).shifted(b, h));
            let mm = s.eval(&q.shifted(a, -h).shifted(b, -h));
            let v = (pp - pm - mp + mm) / (4.0 * h * h);
            out[a][b] = v;
            out[b][a] = v;
        }
    }
    out
}

/// The real part of a complex scalar solution.
pub struct RealPart<S>(pub S);

impl<S: ScalarClosure> ScalarClosure for RealPart<S> {
    fn eval(&self, q: &SpacetimePoint) -> Complex64 {
        Complex64::new(self.0.eval(q).re, 0.0)
    }

    fn jet(&self, q: &SpacetimePoint) -> Option<Jet> {
        let mut j = self.0.jet(q)?;
        j.v.im = 0.0;
        for i in 0..4 {
            j.d1[i].im = 0.0;
            for k in 0..4 {
                j.d2[i][k].im = 0.0;
                for l in 0..4 {
                    j.d3[i][k][l].im = 0.0;
                }
            }
        }
        Some(j)
    }
}
