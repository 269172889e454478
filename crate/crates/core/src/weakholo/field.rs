//! Complex fields on a disc together with their `d/dzbar` derivative.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, Result};

pub type ComplexFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    ClosedForm,
    /// Centered Wirtinger difference with Richardson, base step `step`.
    FiniteDifference { step: f64 },
}

/// A field `h` with its derivative `h_zbar`.
#[derive(Clone)]
pub struct FieldOnDisc {
    pub label: String,
    h: ComplexFn,
    h_zbar: ComplexFn,
    pub provenance: Provenance,
}

impl fmt::Debug for FieldOnDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldOnDisc")
            .field("label", &self.label)
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// `(1/2)(d/du + i d/dv) h` by centered differences at steps `s` and `2s`,
/// combined by Richardson extrapolation.
pub fn wirtinger_dzbar(h: &dyn Fn(Complex64) -> Complex64, z: Complex64, step: f64) -> Complex64 {
    let d = |s: f64| {
        let du = (h(z + s) - h(z - s)) / (2.0 * s);
        let dv = (h(z + Complex64::new(0.0, s)) - h(z - Complex64::new(0.0, s))) / (2.0 * s);
        0.5 * (du + Complex64::i() * dv)
    };
    (4.0 * d(step) - d(2.0 * step)) / 3.0
}

impl FieldOnDisc {
    pub fn closed_form(
        label: impl Into<String>,
        h: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        h_zbar: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            h: Arc::new(h),
            h_zbar: Arc::new(h_zbar),
            provenance: Provenance::ClosedForm,
        }
    }

    /// Holomorphic field (`h_zbar = 0`).
    pub fn holomorphic(
        label: impl Into<String>,
        h: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self::closed_form(label, h, |_| Complex64::new(0.0, 0.0))
    }

    /// Derivative by finite differences with base step `step`.
    pub fn finite_difference(
        label: impl Into<String>,
        h: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        step: f64,
    ) -> Result<Self> {
        if !(step > 0.0) {
            return domain("finite-difference step must be positive");
        }
        let h: ComplexFn = Arc::new(h);
        let hh = h.clone();
        Ok(Self {
            label: label.into(),
            h,
            h_zbar: Arc::new(move |z| wirtinger_dzbar(&*hh, z, step)),
            provenance: Provenance::FiniteDifference { step },
        })
    }

    /// Parse a product expression such as `(z-0.2)^2*(3+z)` or `z*exp(zbar)`.
    pub fn parse(expr: &str) -> Result<Self> {
        let e = FieldExpr::parse(expr)?;
        let e2 = e.clone();
        let e3 = e.clone();
        Ok(Self::closed_form(expr.trim(), move |z| e2.eval(z).0, move |z| e3.eval(z).1))
    }

    pub fn h(&self, z: Complex64) -> Complex64 {
        (self.h)(z)
    }

    pub fn h_zbar(&self, z: Complex64) -> Complex64 {
        (self.h_zbar)(z)
    }

    /// Pointwise product, derivative by the product rule.
    pub fn times(&self, other: &FieldOnDisc) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let (a2, b2) = (self.clone(), other.clone());
        let provenance = match (self.provenance, other.provenance) {
            (Provenance::ClosedForm, Provenance::ClosedForm) => Provenance::ClosedForm,
            (Provenance::FiniteDifference { step }, _) | (_, Provenance::FiniteDifference { step }) => {
                Provenance::FiniteDifference { step }
            }
        };
        Self {
            label: format!("({})*({})", self.label, other.label),
            h: Arc::new(move |z| a.h(z) * b.h(z)),
            h_zbar: Arc::new(move |z| a2.h_zbar(z) * b2.h(z) + a2.h(z) * b2.h_zbar(z)),
            provenance,
        }
    }
}

/// One factor of a product expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Factor {
    /// `z - c`
    Shift(Complex64),
    /// `conj(z - c)`
    ConjShift(Complex64),
    /// `c + s z`
    Affine { c: Complex64, s: Complex64 },
    Exp,
    ExpBar,
    Const(Complex64),
}

impl Factor {
    /// Value and `d/dzbar`.
    fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match *self {
            Factor::Shift(c) => (z - c, zero),
            Factor::ConjShift(c) => ((z - c).conj(), one),
            Factor::Affine { c, s } => (c + s * z, zero),
            Factor::Exp => (z.exp(), zero),
            Factor::ExpBar => {
                let e = z.conj().exp();
                (e, e)
            }
            Factor::Const(c) => (c, zero),
        }
    }
}

/// Product of powered factors.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldExpr {
    pub factors: Vec<(Factor, u32)>,
}

impl FieldExpr {
    pub fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut val = Complex64::new(1.0, 0.0);
        let mut der = Complex64::new(0.0, 0.0);
        for &(f, k) in &self.factors {
            let (v, d) = f.eval(z);
            let vk = v.powu(k);
            let dk = if k == 0 { Complex64::new(0.0, 0.0) } else { k as f64 * v.powu(k - 1) * d };
            der = der * vk + val * dk;
            val *= vk;
        }
        (val, der)
    }

    pub fn parse(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return domain("empty field expression");
        }
        let mut factors = Vec::new();
        for part in split_top_level(&s)? {
            let (base, pow) = match part.rfind('^') {
                Some(i) if depth_at(part, i) == 0 => {
                    let p: u32 = part[i + 1..]
                        .parse()
                        .map_err(|_| bad(src, "exponent must be a nonnegative integer"))?;
                    (&part[..i], p)
                }
                _ => (part, 1),
            };
            factors.push((parse_atom(base).ok_or_else(|| bad(src, base))?, pow));
        }
        Ok(Self { factors })
    }
}

fn bad(src: &str, what: &str) -> crate::error::LabError {
    crate::error::LabError::Domain(format!("cannot parse field `{src}` near `{what}`"))
}

fn depth_at(s: &str, idx: usize) -> i32 {
    let mut d = 0;
    for c in s[..idx].chars() {
        match c {
            '(' => d += 1,
            ')' => d -= 1,
            _ => {}
        }
    }
    d
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return domain(format!("unbalanced parentheses in `{s}`"));
        }
    }
    if depth != 0 {
        return domain(format!("unbalanced parentheses in `{s}`"));
    }
    out.push(&s[start..]);
    if out.iter().any(|p| p.is_empty()) {
        return domain(format!("empty factor in `{s}`"));
    }
    Ok(out)
}

/// Parse `a`, `a+bi`, `bi`, `i`, `-2.5`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not the leading one or part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        let imag = |t: &str| -> Option<f64> {
            match t {
                "" | "+" => Some(1.0),
                "-" => Some(-1.0),
                _ => t.parse().ok(),
            }
        };
        return match split {
            Some(i) => Some(Complex64::new(body[..i].parse().ok()?, imag(&body[i..])?)),
            None => Some(Complex64::new(0.0, imag(body)?)),
        };
    }
    s.parse::<f64>().ok().map(|r| Complex64::new(r, 0.0))
}

fn parse_atom(a: &str) -> Option<Factor> {
    match a {
        "z" => return Some(Factor::Shift(Complex64::new(0.0, 0.0))),
        "zbar" | "conj(z)" => return Some(Factor::ConjShift(Complex64::new(0.0, 0.0))),
        "exp(z)" => return Some(Factor::Exp),
        "exp(zbar)" => return Some(Factor::ExpBar),
        _ => {}
    }
    if let Some(inner) = a.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        // (z - c), (z + c), (zbar - c), (c + z), (c - z)
        for (var, conj) in [("zbar", true), ("z", false)] {
            if let Some(rest) = inner.strip_prefix(var) {
                if rest.is_empty() {
                    return Some(if conj {
                        Factor::ConjShift(Complex64::new(0.0, 0.0))
                    } else {
                        Factor::Shift(Complex64::new(0.0, 0.0))
                    });
                }
                let c = parse_complex(rest)?; // carries its sign
                if !(rest.starts_with('+') || rest.starts_with('-')) {
                    return None;
                }
                return Some(if conj { Factor::ConjShift(-c.conj()) } else { Factor::Shift(-c) });
            }
        }
        if let Some(stripped) = inner.strip_suffix('z') {
            let (cst, sign) = if let Some(c) = stripped.strip_suffix('+') {
                (c, 1.0)
            } else if let Some(c) = stripped.strip_suffix('-') {
                (c, -1.0)
            } else {
                return None;
            };
            return Some(Factor::Affine {
                c: parse_complex(cst)?,
                s: Complex64::new(sign, 0.0),
            });
        }
        return parse_complex(inner).map(Factor::Const);
    }
    parse_complex(a).map(Factor::Const)
}
