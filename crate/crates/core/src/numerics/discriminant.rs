//! Discriminant of a monic polynomial in `z` whose coefficients are
//! polynomials in `x`.
//!
//! The discriminant is a polynomial in `x` of degree at most
//! `(2n − 2)·max deg a_i`. It is computed by evaluating the numeric
//! discriminant `(−1)^{n(n−1)/2} Res(f, ∂f/∂z)` at enough nodes and
//! interpolating: integer nodes with Newton divided differences for exact
//! coefficients, roots of unity with an inverse DFT for floating ones.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::scalar::{determinant, Scalar};
use super::{poly::horner, poly::trim, GaussianRational, PolyX};

/// Discriminant of the monic polynomial `z^n + Σ c[i] z^i` (`c` lists
/// `a_0..a_{n−1}`), as a number.
pub fn numeric_discriminant<S: Scalar>(c: &[S]) -> S {
    let n = c.len();
    if n <= 1 {
        return S::one();
    }
    // f = z^n + c[n-1] z^{n-1} + ... ; coefficients highest first.
    let mut f_hi: Vec<S> = vec![S::one()];
    f_hi.extend(c.iter().rev().cloned());
    let df_hi: Vec<S> = (0..n)
        .map(|k| {
            let power = n - k;
            f_hi[k].mul(&S::from_i64(power as i64))
        })
        .collect();
    let size = 2 * n - 1;
    let mut syl = vec![vec![S::zero(); size]; size];
    for r in 0..n - 1 {
        for (k, v) in f_hi.iter().enumerate() {
            syl[r][r + k] = v.clone();
        }
    }
    for r in 0..n {
        for (k, v) in df_hi.iter().enumerate() {
            syl[n - 1 + r][r + k] = v.clone();
        }
    }
    let res = determinant(syl);
    if (n * (n - 1) / 2) % 2 == 1 {
        res.neg()
    } else {
        res
    }
}

fn degree_bound(coeffs: &[PolyX]) -> usize {
    let n = coeffs.len();
    let d = coeffs.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    (2 * n).saturating_sub(2) * d
}

/// `discriminant_of`: the discriminant of `f = z^n + Σ a_i(x) z^i` as a
/// polynomial in `x`. Exact when every coefficient is exact.
pub fn discriminant_of(coeffs: &[PolyX]) -> PolyX {
    let exact: Option<Vec<&[GaussianRational]>> = coeffs.iter().map(|p| p.as_exact()).collect();
    match exact {
        Some(ex) => PolyX::Exact(exact_discriminant(&ex, degree_bound(coeffs))),
        None => PolyX::Float(float_discriminant(coeffs, degree_bound(coeffs))),
    }
}

fn exact_discriminant(coeffs: &[&[GaussianRational]], bound: usize) -> Vec<GaussianRational> {
    let nodes: Vec<GaussianRational> = (0..=bound as i64).map(|k| GaussianRational::from_integers(k, 0)).collect();
    let values: Vec<GaussianRational> = nodes
        .iter()
        .map(|x| {
            let c: Vec<GaussianRational> = coeffs.iter().map(|p| horner(p, x)).collect();
            numeric_discriminant(&c)
        })
        .collect();
    newton_interpolate(&nodes, &values)
}

/// Interpolating polynomial through `(nodes[k], values[k])`, monomial basis.
pub fn newton_interpolate<S: Scalar>(nodes: &[S], values: &[S]) -> Vec<S> {
    let m = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        for k in (level..m).rev() {
            let num = dd[k].sub(&dd[k - 1]);
            let den = nodes[k].sub(&nodes[k - level]);
            dd[k] = num.mul(&den.inv().expect("distinct nodes"));
        }
    }
    // Expand the Newton form into monomials, innermost first.
    let mut out: Vec<S> = Vec::new();
    for k in (0..m).rev() {
        // out = out * (x - nodes[k]) + dd[k]
        let mut next = vec![S::zero(); out.len() + 1];
        for (i, v) in out.iter().enumerate() {
            next[i + 1] = next[i + 1].add(v);
            next[i] = next[i].sub(&v.mul(&nodes[k]));
        }
        next[0] = next[0].add(&dd[k]);
        out = next;
    }
    trim(out)
}

fn float_discriminant(coeffs: &[PolyX], bound: usize) -> Vec<Complex64> {
    let m = bound + 1;
    let float_coeffs: Vec<Vec<Complex64>> = coeffs.iter().map(|p| p.to_float_coeffs()).collect();
    let nodes: Vec<Complex64> = (0..m).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)).collect();
    let values: Vec<Complex64> = nodes
        .iter()
        .map(|x| {
            let c: Vec<Complex64> = float_coeffs.iter().map(|p| horner(p, x)).collect();
            numeric_discriminant(&c)
        })
        .collect();
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut out: Vec<Complex64> = (0..m)
        .map(|j| {
            let s: Complex64 = values
                .iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, -2.0 * PI * ((j * k) % m) as f64 / m as f64))
                .sum();
            s / m as f64
        })
        .collect();
    // Round-off from the transform is relative to the largest sampled value.
    for c in out.iter_mut() {
        if c.norm() <= 1e-13 * scale {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    trim(out)
}
