use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::domain::{generator_loop, Path};
use crate::error::{Error, Result};
use crate::numerics::{rationalize_value, PolyX};
use crate::perm::orbits_of;
use crate::tracking::{track_path, MonodromyData, RootFiber, TrackerOptions, WeierstrassSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct FactorOptions {
    /// Largest `x`-degree allowed for a factor coefficient; defaults to
    /// `deg_z f · deg_x f`.
    pub degree_bound: Option<usize>,
    /// Relative tolerance for fits, single-valuedness and the product check.
    pub tolerance: f64,
    /// Largest denominator tried when rationalizing exact factors.
    pub max_denominator: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { degree_bound: None, tolerance: 1e-8, max_denominator: 1_000_000 }
    }
}

/// Root fibers at many points, all labelled consistently with the base fiber.
struct Samples {
    points: Vec<Complex64>,
    fibers: Vec<Vec<Complex64>>,
    /// Fibers back at the basepoint after each lasso.
    returns: Vec<Vec<Complex64>>,
}

fn follow(f: &WeierstrassSpec, path: &Path, per_segment: usize, base: &RootFiber, opts: &TrackerOptions, out: &mut Samples) -> Result<Vec<Complex64>> {
    let mut current = base.clone();
    for piece in path.pieces(per_segment) {
        let step = track_path(f, &piece, &current, opts)?;
        let labelled: Vec<Complex64> = (0..current.roots.len()).map(|i| step.end.roots[step.correspondence.apply(i)]).collect();
        current = RootFiber { point: step.end.point, roots: labelled };
        out.points.push(current.point);
        out.fibers.push(current.roots.clone());
    }
    Ok(current.roots)
}

fn collect_samples(f: &WeierstrassSpec, m: &MonodromyData, per_segment: usize, opts: &TrackerOptions) -> Result<Samples> {
    let d = &f.domain;
    let mut s = Samples { points: vec![m.base.point], fibers: vec![m.base.roots.clone()], returns: Vec::new() };
    for j in 1..=d.num_holes() {
        let back = follow(f, &generator_loop(d, j)?, per_segment, &m.base, opts, &mut s)?;
        s.returns.push(back);
    }
    // Straight probes from the basepoint reach the rest of the domain.
    for p in d.sample_points(0, 6) {
        if d.clearance(p) >= d.margin && d.segment_clear(d.basepoint, p, None).is_ok() && (p - d.basepoint).norm() > d.margin {
            follow(f, &Path::segment(d.basepoint, p), per_segment / 4 + 1, &m.base, opts, &mut s)?;
        }
    }
    Ok(s)
}

/// Coefficients of `∏ (z − r)`, lowest first, leading 1 omitted.
fn monic_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= v * r;
        }
        c = next;
    }
    c.pop();
    c
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Least-squares polynomial of degree ≤ `bound` through `(x, y)` samples in
/// the scaled variable `(x − x0)/scale`; returns `x`-coefficients and the
/// relative fit residual.
fn fit(xs: &[Complex64], ys: &[Complex64], bound: usize, x0: Complex64, scale: f64) -> Option<(Vec<Complex64>, f64)> {
    let cols = bound + 1;
    let a = DMatrix::from_fn(xs.len(), cols, |i, k| ((xs[i] - x0) / scale).powu(k as u32));
    let b = DMatrix::from_fn(ys.len(), 1, |i, _| ys[i]);
    let beta = a.clone().svd(true, true).solve(&b, 1e-14).ok()?;
    let r = &a * &beta - &b;
    let ymax = ys.iter().map(|y| y.norm()).fold(1.0, f64::max);
    let resid = r.iter().map(|v| v.norm()).fold(0.0, f64::max) / ymax;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); cols];
    for k in 0..cols {
        let bk = beta[(k, 0)] / scale.powi(k as i32);
        for j in 0..=k {
            coeffs[j] += bk * binomial(k, j) * (-x0).powu((k - j) as u32);
        }
    }
    let cmax = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    for c in coeffs.iter_mut() {
        if c.re.abs() < 1e-10 * cmax {
            c.re = 0.0;
        }
        if c.im.abs() < 1e-10 * cmax {
            c.im = 0.0;
        }
    }
    Some((coeffs, resid))
}

fn coefficient_error(a: &WeierstrassSpec, b: &WeierstrassSpec) -> f64 {
    let mut err = 0.0f64;
    for (p, q) in a.coeffs.iter().zip(&b.coeffs) {
        let (p, q) = (p.to_float_coeffs(), q.to_float_coeffs());
        for k in 0..p.len().max(q.len()) {
            let u = p.get(k).copied().unwrap_or_default();
            let v = q.get(k).copied().unwrap_or_default();
            err = err.max((u - v).norm());
        }
    }
    err
}

/// `factor`: one monic factor per monodromy orbit, recovered from the
/// orbit's elementary symmetric functions.
pub fn factor(f: &WeierstrassSpec, m: &MonodromyData, opts: &TrackerOptions, fopts: &FactorOptions) -> Result<Vec<WeierstrassSpec>> {
    let n = f.degree();
    let orbits = orbits_of(n, &m.gens);
    if orbits.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let bound = fopts.degree_bound.unwrap_or(n * f.x_degree());
    let samples = collect_samples(f, m, 48.max(2 * (bound + 1)), opts)?;
    let x0 = f.domain.outer.center;
    let scale = f.domain.outer.radius;

    let mut float_factors = Vec::new();
    for (oi, orbit) in orbits.iter().enumerate() {
        let pick = |fib: &[Complex64]| monic_from_roots(&orbit.iter().map(|&i| fib[i]).collect::<Vec<_>>());
        let base_sym = pick(&m.base.roots);
        for back in &samples.returns {
            let moved = pick(back);
            let dev = base_sym.iter().zip(&moved).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let size = base_sym.iter().map(|a| a.norm()).fold(1.0, f64::max);
            if dev > fopts.tolerance * size {
                return Err(Error::InterpolationFailure { orbit: oi + 1, bound, residual: dev / size });
            }
        }
        let sym: Vec<Vec<Complex64>> = samples.fibers.iter().map(|fib| pick(fib)).collect();
        let mut coeffs = Vec::with_capacity(orbit.len());
        for l in 0..orbit.len() {
            let ys: Vec<Complex64> = sym.iter().map(|s| s[l]).collect();
            let (c, resid) = fit(&samples.points, &ys, bound, x0, scale)
                .ok_or(Error::InterpolationFailure { orbit: oi + 1, bound, residual: f64::INFINITY })?;
            if resid > fopts.tolerance {
                return Err(Error::InterpolationFailure { orbit: oi + 1, bound, residual: resid });
            }
            coeffs.push(PolyX::float(c)?);
        }
        float_factors.push(WeierstrassSpec::new(coeffs, f.domain.clone())?);
    }

    if f.is_exact() {
        let mut den = 1u64;
        while den <= fopts.max_denominator {
            let exact: Vec<WeierstrassSpec> = float_factors.iter().map(|g| rationalize_spec(g, den)).collect::<Result<_>>()?;
            if WeierstrassSpec::product(&exact)?.coeffs == f.coeffs {
                return Ok(exact);
            }
            den *= 10;
        }
    }
    let err = coefficient_error(&WeierstrassSpec::product(&float_factors)?, &f.to_float());
    if err > fopts.tolerance {
        return Err(Error::ResidualTooLarge(err));
    }
    Ok(float_factors)
}

fn rationalize_spec(g: &WeierstrassSpec, den: u64) -> Result<WeierstrassSpec> {
    let coeffs = g
        .coeffs
        .iter()
        .map(|p| Ok(PolyX::exact(p.to_float_coeffs().iter().map(|&c| rationalize_value(c, den)).collect())))
        .collect::<Result<Vec<_>>>()?;
    WeierstrassSpec::new(coeffs, g.domain.clone())
}
