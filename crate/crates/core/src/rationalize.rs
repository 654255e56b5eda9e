//! Replacing floating coefficients by Gaussian rationals while certifying
//! that the linear coefficient homotopy never leaves the Weierstrass locus
//! and that the monodromy group is unchanged.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{discriminant_of, rationalize_value, PolyX};
use crate::perm::{generate, identify, Permutation, DEFAULT_GROUP_CAP};
use crate::tracking::{check_disc_on, match_fibers, monodromy, roots_at, MonodromyData, TrackerOptions, WeierstrassSpec};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomotopyOptions {
    /// Number of steps in `t`.
    pub t_steps: usize,
    /// Denominator bounds are doubled up to this limit.
    pub max_den_bound: u64,
}

impl Default for HomotopyOptions {
    fn default() -> Self {
        HomotopyOptions { t_steps: 64, max_den_bound: 1 << 30 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyReport {
    /// Smallest sampled `|disc|` over all `(x, t)`.
    pub min_disc: f64,
    /// Sampled sup-norm of `ã_j − a_j` on the domain, one per coefficient.
    pub deviations: Vec<f64>,
    pub t_steps: usize,
    pub order_start: usize,
    pub order_end: usize,
    pub generators_start: Vec<String>,
    /// End generators relabelled onto the start fiber.
    pub generators_end: Vec<String>,
    /// `matching(i)`: start-fiber index of end-fiber root `i`.
    pub matching: Permutation,
    pub pass: bool,
}

/// Coefficients of `(1 − t)·a + t·ã`, as floats.
fn blend(f0: &WeierstrassSpec, f1: &WeierstrassSpec, t: f64) -> Result<WeierstrassSpec> {
    let coeffs = f0
        .coeffs
        .iter()
        .zip(&f1.coeffs)
        .map(|(a, b)| {
            let (a, b) = (a.to_float_coeffs(), b.to_float_coeffs());
            let c = (0..a.len().max(b.len()))
                .map(|k| a.get(k).copied().unwrap_or_default() * (1.0 - t) + b.get(k).copied().unwrap_or_default() * t)
                .collect();
            PolyX::float(c)
        })
        .collect::<Result<Vec<_>>>()?;
    WeierstrassSpec::new(coeffs, f0.domain.clone())
}

/// Lower bound for the coefficient-space distance from `a(x)` to polynomials
/// with a repeated root, minimized over sample points of the domain.
///
/// At each point, a circle of radius `s/3` around each root (`s` the root
/// separation) keeps exactly one root of every polynomial whose coefficients
/// move by less than `min|f| / Σ_k (|r| + s/3)^k` on it (Rouché). Moving every
/// `a_j` by less than a quarter of this, divided by `n`, therefore keeps the
/// fibers simple.
pub fn coefficient_margin(f: &WeierstrassSpec, opts: &TrackerOptions) -> Result<f64> {
    const CIRCLE: usize = 64;
    let n = f.degree();
    let eval = crate::tracking::Evaluator::new(f);
    let mut best = f64::INFINITY;
    for x in f.domain.sample_points(opts.sampling, opts.grid()) {
        let fiber = roots_at(f, x, opts)?;
        let c = eval.fiber_coeffs(x);
        let rho = if n > 1 { crate::tracking::min_separation(&fiber.roots) / 3.0 } else { 1.0 };
        for r in &fiber.roots {
            let m = (0..CIRCLE)
                .map(|k| {
                    let z = r + num_complex::Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / CIRCLE as f64);
                    (z.powu(n as u32) + crate::numerics::poly_eval_slice(&c, z)).norm()
                })
                .fold(f64::INFINITY, f64::min);
            let reach = r.norm() + rho;
            let weight: f64 = (0..n).map(|k| reach.powi(k as i32)).sum();
            best = best.min(m / weight);
        }
    }
    Ok(best)
}

/// Sampled `sup |ã_j − a_j|` on the domain.
pub fn coefficient_deviations(f0: &WeierstrassSpec, f1: &WeierstrassSpec, opts: &TrackerOptions) -> Vec<f64> {
    let pts = f0.domain.sample_points(opts.sampling, opts.grid());
    f0.coeffs
        .iter()
        .zip(&f1.coeffs)
        .map(|(a, b)| pts.iter().map(|&x| (a.eval(x) - b.eval(x)).norm()).fold(0.0, f64::max))
        .collect()
}

/// Labels of `f1`'s base fiber in terms of `f0`'s, by nearest neighbour or,
/// if that is ambiguous, by following the fiber over the basepoint in `t`.
fn match_base(f0: &WeierstrassSpec, f1: &WeierstrassSpec, m0: &MonodromyData, m1: &MonodromyData, hopts: &HomotopyOptions, opts: &TrackerOptions) -> Result<Permutation> {
    if let Some(images) = match_fibers(&m0.base.roots, &m1.base.roots) {
        return Permutation::from_images(images);
    }
    let b = f0.domain.basepoint;
    let mut current = m0.base.roots.clone();
    for k in 1..=hopts.t_steps {
        let t = k as f64 / hopts.t_steps as f64;
        let next = roots_at(&blend(f0, f1, t)?, b, opts)?.roots;
        let images = match_fibers(&next, &current).ok_or(Error::AmbiguousMatch { at: t })?;
        current = images.iter().map(|&j| next[j]).collect();
    }
    // current[i] continues start root i; find it in f1's base order.
    let to_end = match_fibers(&m1.base.roots, &current).ok_or(Error::AmbiguousMatch { at: 1.0 })?;
    Ok(Permutation::from_images(to_end)?.inverse())
}

/// Runs every check and reports, without failing on a mismatch.
pub fn homotopy_report(f0: &WeierstrassSpec, f1: &WeierstrassSpec, hopts: &HomotopyOptions, opts: &TrackerOptions) -> Result<HomotopyReport> {
    if f0.degree() != f1.degree() {
        return Err(Error::Input("homotopy ends have different degrees".into()));
    }
    if f0.domain != f1.domain {
        return Err(Error::Input("homotopy ends live on different domains".into()));
    }
    if hopts.t_steps == 0 {
        return Err(Error::Input("t_steps must be positive".into()));
    }
    let mut min_disc = f64::INFINITY;
    for k in 0..=hopts.t_steps {
        let t = k as f64 / hopts.t_steps as f64;
        let h = blend(f0, f1, t)?;
        let disc = discriminant_of(&h.coeffs);
        match check_disc_on(&disc, &h, opts) {
            Ok(v) => min_disc = min_disc.min(v),
            Err(Error::WeierstrassViolation { x, .. }) => return Err(Error::HomotopyLeavesB { t, x }),
            Err(e) => return Err(e),
        }
    }
    let (m0, m1) = rayon::join(|| monodromy(f0, opts), || monodromy(f1, opts));
    let (m0, m1) = (m0?, m1?);
    let matching = match_base(f0, f1, &m0, &m1, hopts, opts)?;
    let relabelled: Vec<Permutation> = m1.gens.iter().map(|g| matching.compose(g).compose(&matching.inverse())).collect();
    let n = f0.degree();
    let order_start = generate(n, &m0.gens, DEFAULT_GROUP_CAP)?.order();
    let order_end = generate(n, &m1.gens, DEFAULT_GROUP_CAP)?.order();
    let pass = relabelled == m0.gens;
    Ok(HomotopyReport {
        min_disc,
        deviations: coefficient_deviations(f0, f1, opts),
        t_steps: hopts.t_steps,
        order_start,
        order_end,
        generators_start: m0.gens.iter().map(|g| g.to_cycle_string()).collect(),
        generators_end: relabelled.iter().map(|g| g.to_cycle_string()).collect(),
        matching,
        pass,
    })
}

/// `verify_homotopy`: the linear homotopy from `f0` to `f1` stays
/// Weierstrass and both ends have the same monodromy after relabelling.
pub fn verify_homotopy(f0: &WeierstrassSpec, f1: &WeierstrassSpec, hopts: &HomotopyOptions, opts: &TrackerOptions) -> Result<HomotopyReport> {
    let report = homotopy_report(f0, f1, hopts, opts)?;
    if !report.pass {
        return Err(Error::GroupMismatch);
    }
    Ok(report)
}

/// Every coefficient rationalized with denominators at most `den_bound`.
pub fn rationalize_spec(f: &WeierstrassSpec, den_bound: u64) -> Result<WeierstrassSpec> {
    let coeffs = f
        .coeffs
        .iter()
        .map(|p| PolyX::exact(p.to_float_coeffs().iter().map(|&c| rationalize_value(c, den_bound)).collect()))
        .collect();
    WeierstrassSpec::new(coeffs, f.domain.clone())
}

/// `approximate_coeffs`: rationalizes `f`, doubling the denominator bound
/// until the homotopy check passes.
pub fn approximate_coeffs(f: &WeierstrassSpec, den_bound: u64, hopts: &HomotopyOptions, opts: &TrackerOptions) -> Result<(WeierstrassSpec, HomotopyReport)> {
    if den_bound == 0 {
        return Err(Error::Input("den_bound must be at least 1".into()));
    }
    if f.is_exact() {
        let report = verify_homotopy(f, f, hopts, opts)?;
        return Ok((f.clone(), report));
    }
    let mut bound = den_bound;
    loop {
        let candidate = rationalize_spec(f, bound)?;
        match verify_homotopy(f, &candidate, hopts, opts) {
            Ok(report) => return Ok((candidate, report)),
            Err(Error::HomotopyLeavesB { .. }) | Err(Error::GroupMismatch) => {}
            Err(e) => return Err(e),
        }
        if bound >= hopts.max_den_bound {
            return Err(Error::BoundExhausted(bound));
        }
        bound = bound.saturating_mul(2).min(hopts.max_den_bound);
    }
}

/// `emit_function_field_poly`: the polynomial over `Q(i)(x)` and its group.
pub fn emit_function_field_poly(f: &WeierstrassSpec, m: &MonodromyData) -> Result<String> {
    if !f.is_exact() {
        return Err(Error::Input("function-field output needs exact coefficients".into()));
    }
    let g = generate(f.degree(), &m.gens, DEFAULT_GROUP_CAP)?;
    let id = identify(&g);
    let gens: Vec<String> = m.gens.iter().map(|p| p.to_cycle_string()).collect();
    Ok(format!(
        "f = {}\n\
         coefficients in Q(i)[x]\n\
         Galois group of the splitting field of f over Q(i)(x): {} (order {})\n\
         generated by {}\n\
         assumed: T[alpha_1, ..., alpha_n] ∩ R = T (no computable test)\n",
        f.pretty(),
        id.label,
        id.order,
        if gens.is_empty() { "()".to_string() } else { gens.join(", ") }
    ))
}
