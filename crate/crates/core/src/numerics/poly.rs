//! Univariate polynomials in `x` with exact or floating coefficients.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::{GaussianRational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Float,
}

/// Polynomial in `x`, coefficients lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyX {
    Exact(Vec<GaussianRational>),
    Float(Vec<Complex64>),
}

pub(crate) fn trim<S: Scalar>(mut c: Vec<S>) -> Vec<S> {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    c
}

pub(crate) fn poly_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

pub(crate) fn poly_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(out)
}

pub(crate) fn horner<S: Scalar>(c: &[S], x: &S) -> S {
    c.iter().rev().fold(S::zero(), |acc, v| acc.mul(x).add(v))
}

impl PolyX {
    pub fn exact(coeffs: Vec<GaussianRational>) -> Self {
        PolyX::Exact(trim(coeffs))
    }

    /// Floating polynomial; rejects NaN or infinite coefficients.
    pub fn float(coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(c.to_string()));
        }
        Ok(PolyX::Float(trim(coeffs)))
    }

    pub fn zero(kind: Kind) -> Self {
        match kind {
            Kind::Exact => PolyX::Exact(Vec::new()),
            Kind::Float => PolyX::Float(Vec::new()),
        }
    }

    pub fn constant_exact(c: GaussianRational) -> Self {
        PolyX::exact(vec![c])
    }

    /// Integer-coefficient shorthand: `from_ints(&[0, -1])` is `-x`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyX::exact(coeffs.iter().map(|&c| GaussianRational::from_integers(c, 0)).collect())
    }

    pub fn kind(&self) -> Kind {
        match self {
            PolyX::Exact(_) => Kind::Exact,
            PolyX::Float(_) => Kind::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PolyX::Exact(c) => c.len(),
            PolyX::Float(c) => c.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn to_float_coeffs(&self) -> Vec<Complex64> {
        match self {
            PolyX::Exact(c) => c.iter().map(|v| v.to_complex()).collect(),
            PolyX::Float(c) => c.clone(),
        }
    }

    pub fn to_float(&self) -> PolyX {
        PolyX::Float(trim(self.to_float_coeffs()))
    }

    /// Horner evaluation; exact coefficients are converted at this point.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        match self {
            PolyX::Exact(c) => c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * x + v.to_complex()),
            PolyX::Float(c) => horner(c, &x),
        }
    }

    pub fn derivative(&self) -> PolyX {
        match self {
            PolyX::Exact(c) => PolyX::exact(
                c.iter().enumerate().skip(1).map(|(k, v)| v * &GaussianRational::from_integers(k as i64, 0)).collect(),
            ),
            PolyX::Float(c) => PolyX::Float(trim(c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect())),
        }
    }

    pub fn add(&self, other: &PolyX) -> Result<PolyX> {
        match (self, other) {
            (PolyX::Exact(a), PolyX::Exact(b)) => Ok(PolyX::Exact(poly_add(a, b))),
            (PolyX::Float(a), PolyX::Float(b)) => Ok(PolyX::Float(poly_add(a, b))),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn mul(&self, other: &PolyX) -> Result<PolyX> {
        match (self, other) {
            (PolyX::Exact(a), PolyX::Exact(b)) => Ok(PolyX::Exact(poly_mul(a, b))),
            (PolyX::Float(a), PolyX::Float(b)) => Ok(PolyX::Float(poly_mul(a, b))),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn neg(&self) -> PolyX {
        match self {
            PolyX::Exact(c) => PolyX::Exact(c.iter().map(|v| -v).collect()),
            PolyX::Float(c) => PolyX::Float(c.iter().map(|v| -v).collect()),
        }
    }

    /// Substitutes `x ↦ x^k`.
    pub fn compose_power(&self, k: usize) -> PolyX {
        assert!(k >= 1);
        fn spread<S: Scalar>(c: &[S], k: usize) -> Vec<S> {
            if c.is_empty() {
                return Vec::new();
            }
            let mut out = vec![S::zero(); (c.len() - 1) * k + 1];
            for (i, v) in c.iter().enumerate() {
                out[i * k] = v.clone();
            }
            out
        }
        match self {
            PolyX::Exact(c) => PolyX::Exact(spread(c, k)),
            PolyX::Float(c) => PolyX::Float(spread(c, k)),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.to_float_coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Upper bound of `|p(x)|` over `|x − center| ≤ radius`, via the
    /// re-expansion around the center.
    pub fn sup_bound_on_disc(&self, center: Complex64, radius: f64) -> f64 {
        let c = self.to_float_coeffs();
        // Taylor coefficients at `center` by repeated synthetic division.
        let mut work = c.clone();
        let mut taylor = Vec::with_capacity(c.len());
        for _ in 0..c.len() {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut next = vec![Complex64::new(0.0, 0.0); work.len().saturating_sub(1)];
            for k in (0..work.len()).rev() {
                acc = acc * center + work[k];
                if k > 0 {
                    next[k - 1] = acc;
                }
            }
            taylor.push(acc);
            work = next;
        }
        taylor.iter().enumerate().map(|(k, t)| t.norm() * radius.powi(k as i32)).sum()
    }
}

/// Coefficient lists of an exact polynomial, if exact.
impl PolyX {
    pub fn as_exact(&self) -> Option<&[GaussianRational]> {
        match self {
            PolyX::Exact(c) => Some(c),
            PolyX::Float(_) => None,
        }
    }
}

pub(crate) fn fmt_float(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = match self {
            PolyX::Exact(c) => c
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| {
                    let s = v.to_string();
                    let wrapped = if v.re().is_zero() || v.im().is_zero() { s } else { format!("({})", s) };
                    monomial(&wrapped, k)
                })
                .collect(),
            PolyX::Float(c) => c
                .iter()
                .enumerate()
                .filter(|(_, v)| !Scalar::is_zero(*v))
                .map(|(k, v)| monomial(&fmt_float(*v), k))
                .collect(),
        };
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn monomial(coeff: &str, k: usize) -> String {
    match (coeff, k) {
        (c, 0) => c.to_string(),
        ("1", 1) => "x".into(),
        ("1", k) => format!("x^{}", k),
        ("-1", 1) => "-x".into(),
        ("-1", k) => format!("-x^{}", k),
        (c, 1) => format!("{}*x", c),
        (c, k) => format!("{}*x^{}", c, k),
    }
}

/// `poly_eval`: Horner evaluation of `p` at `x`.
pub fn poly_eval(p: &PolyX, x: Complex64) -> Complex64 {
    p.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let two = Complex64::new(2.0, 0.0);
        assert_eq!(poly_eval(&PolyX::from_ints(&[0, 0, 1]), two), Complex64::new(4.0, 0.0));
        assert_eq!(poly_eval(&PolyX::zero(Kind::Float), Complex64::new(3.0, 1.0)), Complex64::new(0.0, 0.0));
        let p = PolyX::exact(vec![GaussianRational::one(), GaussianRational::i()]);
        assert_eq!(poly_eval(&p, Complex64::new(0.0, 1.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = PolyX::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(PolyX::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(PolyX::float(vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn mixed_kinds_are_refused() {
        let a = PolyX::from_ints(&[1]);
        let b = a.to_float();
        assert_eq!(a.add(&b), Err(Error::KindMismatch));
    }

    #[test]
    fn sup_bound_is_an_upper_bound() {
        let p = PolyX::from_ints(&[1, -3, 0, 2]);
        let c = Complex64::new(0.5, -0.25);
        let bound = p.sup_bound_on_disc(c, 0.7);
        for k in 0..64 {
            let x = c + Complex64::from_polar(0.7, k as f64 * 0.1);
            assert!(p.eval(x).norm() <= bound + 1e-12);
        }
    }

    #[test]
    fn display() {
        assert_eq!(PolyX::from_ints(&[0, -1]).to_string(), "-x");
        assert_eq!(PolyX::from_ints(&[-1, 0, 2]).to_string(), "-1 + 2*x^2");
    }
}
