//! Forward-mode complex Taylor jets: value plus all partial derivatives up to
//! third order in the four spacetime coordinates (t, x, y, z).
//!
//! Used to differentiate the closed-form scalar solutions exactly; the results
//! are symmetric tensors stored in full for easy indexing.

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

type C = Complex64;
const Z: C = C::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub v: C,
    pub d1: [C; 4],
    pub d2: [[C; 4]; 4],
    pub d3: [[[C; 4]; 4]; 4],
}

impl Jet {
    pub fn constant(v: C) -> Self {
        Self { v, d1: [Z; 4], d2: [[Z; 4]; 4], d3: [[[Z; 4]; 4]; 4] }
    }

    pub fn real(v: f64) -> Self {
        Self::constant(C::new(v, 0.0))
    }

    /// The coordinate with index `idx` (0 = t, 1 = x, 2 = y, 3 = z) at value `v`.
    pub fn var(v: f64, idx: usize) -> Self {
        let mut j = Self::real(v);
        j.d1[idx] = C::new(1.0, 0.0);
        j
    }

    /// The four coordinate jets at a point.
    pub fn coords(p: [f64; 4]) -> [Jet; 4] {
        std::array::from_fn(|i| Self::var(p[i], i))
    }

    fn mirror(mut self) -> Self {
        for i in 0..4 {
            for j in i..4 {
                self.d2[j][i] = self.d2[i][j];
                for k in j..4 {
                    let v = self.d3[i][j][k];
                    self.d3[i][k][j] = v;
                    self.d3[j][i][k] = v;
                    self.d3[j][k][i] = v;
                    self.d3[k][i][j] = v;
                    self.d3[k][j][i] = v;
                }
            }
        }
        self
    }

    /// φ(self) given φ and its first three derivatives at self.v.
    pub fn chain(&self, f0: C, f1: C, f2: C, f3: C) -> Self {
        let a = self;
        let mut h = Self::constant(f0);
        for i in 0..4 {
            h.d1[i] = f1 * a.d1[i];
            for j in i..4 {
                h.d2[i][j] = f1 * a.d2[i][j] + f2 * a.d1[i] * a.d1[j];
                for k in j..4 {
                    h.d3[i][j][k] = f1 * a.d3[i][j][k]
                        + f2 * (a.d2[i][j] * a.d1[k] + a.d2[i][k] * a.d1[j] + a.d2[j][k] * a.d1[i])
                        + f3 * a.d1[i] * a.d1[j] * a.d1[k];
                }
            }
        }
        h.mirror()
    }

    pub fn exp(&self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e, e)
    }

    /// Principal-branch square root.
    pub fn sqrt(&self) -> Self {
        let s = self.v.sqrt();
        let s3 = s * s * s;
        self.chain(s, 0.5 / s, -0.25 / s3, 0.375 / (s3 * s * s))
    }

    /// Principal-branch power v^p.
    pub fn powf(&self, p: f64) -> Self {
        let v = self.v;
        let f0 = v.powf(p);
        let f1 = f0 * p / v;
        let f2 = f1 * (p - 1.0) / v;
        let f3 = f2 * (p - 2.0) / v;
        self.chain(f0, f1, f2, f3)
    }

    pub fn recip(&self) -> Self {
        let r = 1.0 / self.v;
        let r2 = r * r;
        self.chain(r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2)
    }

    pub fn ln(&self) -> Self {
        let r = 1.0 / self.v;
        self.chain(self.v.ln(), r, -r * r, 2.0 * r * r * r)
    }

    pub fn scale(&self, s: C) -> Self {
        let mut h = *self;
        h.v *= s;
        for i in 0..4 {
            h.d1[i] *= s;
            for j in 0..4 {
                h.d2[i][j] *= s;
                for k in 0..4 {
                    h.d3[i][j][k] *= s;
                }
            }
        }
        h
    }

    fn zip(&self, o: &Self, f: impl Fn(C, C) -> C) -> Self {
        let mut h = *self;
        h.v = f(self.v, o.v);
        for i in 0..4 {
            h.d1[i] = f(self.d1[i], o.d1[i]);
            for j in 0..4 {
                h.d2[i][j] = f(self.d2[i][j], o.d2[i][j]);
                for k in 0..4 {
                    h.d3[i][j][k] = f(self.d3[i][j][k], o.d3[i][j][k]);
                }
            }
        }
        h
    }

    /// Gradient ∂_μ.
    pub fn grad(&self) -> [C; 4] {
        self.d1
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        self.zip(&o, |a, b| a + b)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self.zip(&o, |a, b| a - b)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(C::new(-1.0, 0.0))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, g: Jet) -> Jet {
        let f = &self;
        let mut h = Jet::constant(f.v * g.v);
        for i in 0..4 {
            h.d1[i] = f.d1[i] * g.v + f.v * g.d1[i];
            for j in i..4 {
                h.d2[i][j] =
                    f.d2[i][j] * g.v + f.d1[i] * g.d1[j] + f.d1[j] * g.d1[i] + f.v * g.d2[i][j];
                for k in j..4 {
                    h.d3[i][j][k] = f.d3[i][j][k] * g.v
                        + f.d2[i][j] * g.d1[k]
                        + f.d2[i][k] * g.d1[j]
                        + f.d2[j][k] * g.d1[i]
                        + f.d1[i] * g.d2[j][k]
                        + f.d1[j] * g.d2[i][k]
                        + f.d1[k] * g.d2[i][j]
                        + f.v * g.d3[i][j][k];
                }
            }
        }
        h.mirror()
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, g: Jet) -> Jet {
        self * g.recip()
    }
}

impl Mul<C> for Jet {
    type Output = Jet;
    fn mul(self, s: C) -> Jet {
        self.scale(s)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, s: f64) -> Jet {
        self.scale(C::new(s, 0.0))
    }
}

impl Add<C> for Jet {
    type Output = Jet;
    fn add(mut self, s: C) -> Jet {
        self.v += s;
        self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, s: f64) -> Jet {
        self.v += s;
        self
    }
}
