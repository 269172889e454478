//! Second-order forward-mode differentiation in two variables.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value together with first and second partials in `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Jet {
    pub fn constant(c: f64) -> Self {
        Self { v: c, ..Self::default() }
    }

    pub fn var_u(u: f64) -> Self {
        Self { v: u, du: 1.0, ..Self::default() }
    }

    pub fn var_v(v: f64) -> Self {
        Self { v, dv: 1.0, ..Self::default() }
    }

    /// A function of `u` alone with known derivatives.
    pub fn of_u(value: f64, d1: f64, d2: f64) -> Self {
        Self { v: value, du: d1, duu: d2, ..Self::default() }
    }

    /// A function of `v` alone with known derivatives.
    pub fn of_v(value: f64, d1: f64, d2: f64) -> Self {
        Self { v: value, dv: d1, dvv: d2, ..Self::default() }
    }

    /// Compose with a scalar function given `f(x), f'(x), f''(x)` at `x = self.v`.
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Self {
            v: f0,
            du: f1 * self.du,
            dv: f1 * self.dv,
            duu: f2 * self.du * self.du + f1 * self.duu,
            duv: f2 * self.du * self.dv + f1 * self.duv,
            dvv: f2 * self.dv * self.dv + f1 * self.dvv,
        }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn atan(self) -> Self {
        let d = 1.0 / (1.0 + self.v * self.v);
        self.chain(self.v.atan(), d, -2.0 * self.v * d * d)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn powi(self, n: i32) -> Self {
        let nf = n as f64;
        let f0 = self.v.powi(n);
        let f1 = if n == 0 { 0.0 } else { nf * self.v.powi(n - 1) };
        let f2 = if n == 0 || n == 1 { 0.0 } else { nf * (nf - 1.0) * self.v.powi(n - 2) };
        self.chain(f0, f1, f2)
    }

    pub fn scale(self, c: f64) -> Self {
        Self {
            v: c * self.v,
            du: c * self.du,
            dv: c * self.dv,
            duu: c * self.duu,
            duv: c * self.duv,
            dvv: c * self.dvv,
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            du: self.du + o.du,
            dv: self.dv + o.dv,
            duu: self.duu + o.duu,
            duv: self.duv + o.duv,
            dvv: self.dvv + o.dvv,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            du: self.du * o.v + self.v * o.du,
            dv: self.dv * o.v + self.v * o.dv,
            duu: self.duu * o.v + 2.0 * self.du * o.du + self.v * o.duu,
            duv: self.duv * o.v + self.du * o.dv + self.dv * o.du + self.v * o.duv,
            dvv: self.dvv * o.v + 2.0 * self.dv * o.dv + self.v * o.dvv,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, c: f64) -> Jet {
        self.v += c;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, c: f64) -> Jet {
        self.v -= c;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        self.scale(c)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, c: f64) -> Jet {
        self.scale(1.0 / c)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, j: Jet) -> Jet {
        j + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, j: Jet) -> Jet {
        (-j) + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j.scale(self)
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    fn div(self, j: Jet) -> Jet {
        j.recip().scale(self)
    }
}
