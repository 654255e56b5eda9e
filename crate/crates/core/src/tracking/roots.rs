//! Simultaneous root finding for monic complex polynomials.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `(p(z), p'(z))` for the monic polynomial `z^n + Σ c[i] z^i`.
pub fn eval_monic(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `Σ |c_i| |z|^i + |z|^n`, the scale against which residuals are measured.
pub fn magnitude_scale(c: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut s = 1.0;
    for a in c.iter().rev() {
        s = s * r + a.norm();
    }
    s.max(1.0)
}

/// Residual of `z` as a root, relative to the polynomial's magnitude there
/// (floored at 1, so it is absolute for moderate coefficients).
pub fn residual(c: &[Complex64], z: Complex64) -> f64 {
    eval_monic(c, z).0.norm() / magnitude_scale(c, z)
}

/// Newton iteration from `z`; returns the polished root and whether the
/// step size settled within `max_iter` iterations.
pub fn newton(c: &[Complex64], mut z: Complex64, max_iter: usize) -> (Complex64, bool) {
    for _ in 0..max_iter {
        let (p, dp) = eval_monic(c, z);
        if p.norm() == 0.0 {
            return (z, true);
        }
        if dp.norm() == 0.0 {
            return (z, false);
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1e-300) || step.norm() < 1e-300 {
            return (z, true);
        }
    }
    (z, residual(c, z) < 1e-13)
}

fn cauchy_radius(c: &[Complex64]) -> f64 {
    1.0 + c.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

/// Aberth–Ehrlich iteration. `start` may seed the iteration; otherwise the
/// roots start on a circle scaled to the coefficient size.
pub fn aberth(c: &[Complex64], start: Option<&[Complex64]>) -> Option<Vec<Complex64>> {
    let (z, ok) = aberth_iterate(c, start);
    ok.then_some(z)
}

/// Like [`aberth`], but returns the final iterates even without convergence.
pub fn aberth_best_effort(c: &[Complex64]) -> Vec<Complex64> {
    aberth_iterate(c, None).0
}

fn aberth_iterate(c: &[Complex64], start: Option<&[Complex64]>) -> (Vec<Complex64>, bool) {
    let n = c.len();
    if n == 0 {
        return (Vec::new(), true);
    }
    if n == 1 {
        return (vec![-c[0]], true);
    }
    let mut z: Vec<Complex64> = match start {
        Some(s) if s.len() == n => s.to_vec(),
        _ => {
            // Radius from the geometric mean of root moduli, bounded by Cauchy.
            let r = c[0].norm().powf(1.0 / n as f64).clamp(1e-3, cauchy_radius(c));
            let r = if r == 0.0 { 1.0 } else { r };
            (0..n)
                .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
                .collect()
        }
    };
    for _ in 0..500 {
        let mut max_rel = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_monic(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                // Nudge coincident iterates apart.
                let bump = Complex64::new(1e-3, 1e-3) * (1.0 + z[i].norm());
                z[i] += bump;
                max_rel = 1.0;
                continue;
            }
            z[i] -= w;
            max_rel = max_rel.max(w.norm() / (1.0 + z[i].norm()));
        }
        if max_rel < 1e-15 {
            return (z, true);
        }
    }
    let ok = z.iter().all(|&r| residual(c, r) < 1e-10);
    (z, ok)
}

/// Deterministic lexicographic order by `(re, im)`; real parts closer than a
/// scale-relative tolerance count as equal so that rounding noise cannot
/// reorder conjugate or mirrored roots.
pub fn sort_roots(roots: &mut [Complex64]) {
    let order = sorted_order(roots);
    let sorted: Vec<Complex64> = order.iter().map(|&i| roots[i]).collect();
    roots.copy_from_slice(&sorted);
}

/// Indices of `roots` in the order used by [`sort_roots`].
pub fn sorted_order(roots: &[Complex64]) -> Vec<usize> {
    let scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = 1e-9 * scale;
    let mut idx: Vec<usize> = (0..roots.len()).collect();
    idx.sort_by(|&a, &b| roots[a].re.total_cmp(&roots[b].re));
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && roots[idx[end]].re - roots[idx[end - 1]].re <= tol {
            end += 1;
        }
        idx[start..end].sort_by(|&a, &b| roots[a].im.total_cmp(&roots[b].im));
        start = end;
    }
    idx
}

pub fn min_separation(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}

/// All roots of `z^n + Σ c[i] z^i`, Newton-polished and sorted; fails on
/// collisions or non-convergence.
pub fn solve_monic(
    c: &[Complex64],
    x: Complex64,
    residual_tol: f64,
    collision: f64,
    max_newton: usize,
) -> Result<Vec<Complex64>> {
    let mut roots = aberth(c, None).ok_or(Error::NoConvergence { x })?;
    for r in roots.iter_mut() {
        *r = newton(c, *r, max_newton.max(4)).0;
    }
    if roots.iter().any(|&r| residual(c, r) >= residual_tol || !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::NoConvergence { x });
    }
    let sep = min_separation(&roots);
    if sep <= collision {
        return Err(Error::RootCollision { x, separation: sep });
    }
    sort_roots(&mut roots);
    Ok(roots)
}
