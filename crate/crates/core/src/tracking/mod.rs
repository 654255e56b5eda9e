//! Root fibers, the Weierstrass check, path continuation and monodromy.

mod roots;
mod spec;
mod tracker;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use roots::{aberth, aberth_best_effort, min_separation, newton, residual, solve_monic, sort_roots, sorted_order};
pub use spec::{Evaluator, TrackerOptions, WeierstrassSpec};
pub use tracker::{match_fibers, TrackOutcome, TrackStats};

use crate::domain::{generator_loop, loop_word, validate_spider, LoopWord, Path};
use crate::error::{Error, Result};
use crate::numerics::{discriminant_of, poly_eval, PolyX};
use crate::perm::Permutation;
use tracker::Tracker;

/// The roots of `f` over one point, in a fixed order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootFiber {
    #[serde(with = "crate::domain::complex_pair")]
    pub point: Complex64,
    #[serde(serialize_with = "serialize_roots")]
    pub roots: Vec<Complex64>,
}

fn serialize_roots<S: serde::Serializer>(roots: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(roots.len()))?;
    for r in roots {
        seq.serialize_element(&[r.re, r.im])?;
    }
    seq.end()
}

impl RootFiber {
    /// Largest residual of the stored roots for `f` at the fiber's point.
    pub fn max_residual(&self, f: &WeierstrassSpec) -> f64 {
        let c = Evaluator::new(f).fiber_coeffs(self.point);
        self.roots.iter().map(|&z| residual(&c, z)).fold(0.0, f64::max)
    }
}

/// `roots_at`: all roots of `f_x`, Newton-polished and sorted
/// lexicographically by `(re, im)`.
pub fn roots_at(f: &WeierstrassSpec, x: Complex64, opts: &TrackerOptions) -> Result<RootFiber> {
    let c = Evaluator::new(f).fiber_coeffs(x);
    let roots = solve_monic(&c, x, opts.residual_tol, opts.collision_threshold, opts.max_newton)?;
    Ok(RootFiber { point: x, roots })
}

/// `check_weierstrass`: verifies that `disc(x)` has no zero in the closed
/// domain and returns the smallest `|disc|` over the domain samples.
pub fn check_weierstrass(f: &WeierstrassSpec, opts: &TrackerOptions) -> Result<f64> {
    let disc = discriminant_of(&f.coeffs);
    check_disc_on(&disc, f, opts)
}

pub(crate) fn check_disc_on(disc: &PolyX, f: &WeierstrassSpec, opts: &TrackerOptions) -> Result<f64> {
    let d = &f.domain;
    if disc.is_zero() {
        return Err(Error::WeierstrassViolation { x: d.basepoint, value: 0.0 });
    }
    for r in disc_roots(disc) {
        if d.contains(r) {
            return Err(Error::WeierstrassViolation { x: r, value: poly_eval(disc, r).norm() });
        }
    }
    let mut best = (f64::INFINITY, d.basepoint);
    for x in d.sample_points(opts.sampling, opts.grid()) {
        let v = poly_eval(disc, x).norm();
        if v < best.0 {
            best = (v, x);
        }
    }
    if best.0 < opts.disc_threshold {
        return Err(Error::WeierstrassViolation { x: best.1, value: best.0 });
    }
    Ok(best.0)
}

/// Best-effort roots of a polynomial in `x`.
pub fn disc_roots(disc: &PolyX) -> Vec<Complex64> {
    let c = disc.to_float_coeffs();
    if c.len() < 2 {
        return Vec::new();
    }
    let lead = c[c.len() - 1];
    let monic: Vec<Complex64> = c[..c.len() - 1].iter().map(|a| a / lead).collect();
    aberth_best_effort(&monic)
        .into_iter()
        .map(|z| newton(&monic, z, 8).0)
        .filter(|z| z.re.is_finite() && z.im.is_finite())
        .collect()
}

/// `track_path`: continues `start` along `path`.
pub fn track_path(f: &WeierstrassSpec, path: &Path, start: &RootFiber, opts: &TrackerOptions) -> Result<TrackOutcome> {
    opts.validate()?;
    if (path.start() - start.point).norm() > 1e-9 * (1.0 + start.point.norm()) {
        return Err(Error::Input("start fiber does not lie over the path's initial point".into()));
    }
    let eval = Evaluator::new(f);
    Tracker { eval: &eval, opts }.track(path, start)
}

/// Monodromy permutation of a loop word at the basepoint fiber.
pub fn track_word(f: &WeierstrassSpec, base: &RootFiber, w: &LoopWord, opts: &TrackerOptions) -> Result<TrackOutcome> {
    let path = loop_word(&f.domain, w)?;
    track_path(f, &path, base, opts)
}

/// Numerical diagnostics collected while computing monodromy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Smallest sampled `|disc|` on the domain.
    pub weierstrass_margin: f64,
    pub base_residual: f64,
    pub base_separation: f64,
    pub per_generator: Vec<TrackStats>,
    pub total: TrackStats,
}

/// Base fiber plus one permutation per hole.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyData {
    pub base: RootFiber,
    pub gens: Vec<Permutation>,
    pub report: ResidualReport,
}

impl MonodromyData {
    pub fn degree(&self) -> usize {
        self.base.roots.len()
    }
}

/// `monodromy`: `gens[j](i)` is the index of the continuation of root `i`
/// around the counterclockwise lasso of hole `j + 1`.
pub fn monodromy(f: &WeierstrassSpec, opts: &TrackerOptions) -> Result<MonodromyData> {
    opts.validate()?;
    let margin = check_weierstrass(f, opts)?;
    if let Some(leg) = validate_spider(&f.domain).into_iter().find(|l| !l.clear) {
        return Err(Error::SpiderBlocked { hole: leg.hole, blocker: leg.blocked_by.unwrap_or(leg.hole) });
    }
    let base = roots_at(f, f.domain.basepoint, opts)?;
    let eval = Evaluator::new(f);
    let tracker = Tracker { eval: &eval, opts };
    let outcomes: Vec<TrackOutcome> = (1..=f.domain.num_holes())
        .into_par_iter()
        .map(|j| tracker.track(&generator_loop(&f.domain, j)?, &base))
        .collect::<Result<_>>()?;
    let mut total = TrackStats { smallest_step: f64::INFINITY, min_separation: f64::INFINITY, ..Default::default() };
    for o in &outcomes {
        total.merge(&o.stats);
    }
    if outcomes.is_empty() {
        total.smallest_step = 0.0;
        total.min_separation = min_separation(&base.roots);
    }
    let report = ResidualReport {
        weierstrass_margin: margin,
        base_residual: base.max_residual(f),
        base_separation: min_separation(&base.roots),
        per_generator: outcomes.iter().map(|o| o.stats.clone()).collect(),
        total,
    };
    Ok(MonodromyData { base, gens: outcomes.into_iter().map(|o| o.correspondence).collect(), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_domain, Disc, Domain};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn opts() -> TrackerOptions {
        TrackerOptions::default()
    }

    fn z_n_minus_x(n: usize) -> WeierstrassSpec {
        let mut rows: Vec<Vec<i64>> = vec![vec![]; n];
        rows[0] = vec![0, -1];
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        WeierstrassSpec::from_ints(&refs, Domain::annulus(0.5, 2.0).unwrap())
    }

    #[test]
    fn roots_at_examples() {
        let f = z_n_minus_x(2);
        let r = roots_at(&f, c(1.0, 0.0), &opts()).unwrap();
        assert!((r.roots[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((r.roots[1] - c(1.0, 0.0)).norm() < 1e-12);
        let cubic = WeierstrassSpec::from_ints(&[&[0, 2], &[-3], &[]], Domain::disc(c(0.0, 0.0), 3.0).unwrap());
        let r = roots_at(&cubic, c(0.0, 0.0), &opts()).unwrap();
        let s3 = 3f64.sqrt();
        for (got, want) in r.roots.iter().zip([-s3, 0.0, s3]) {
            assert!((got - c(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn weierstrass_examples() {
        let m = check_weierstrass(&z_n_minus_x(2), &opts()).unwrap();
        assert!((m - 2.0).abs() < 1e-9, "{}", m);
        let on_disc = z_n_minus_x(2).with_domain(Domain::disc(c(0.0, 0.0), 2.0).unwrap());
        match check_weierstrass(&on_disc, &opts()) {
            Err(Error::WeierstrassViolation { x, .. }) => assert!(x.norm() < 1e-6),
            other => panic!("{:?}", other),
        }
        let constant = WeierstrassSpec::from_ints(&[&[-1], &[]], Domain::disc(c(0.0, 0.0), 2.0).unwrap());
        assert!((check_weierstrass(&constant, &opts()).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn cyclic_monodromy() {
        for n in 2..=6 {
            let m = monodromy(&z_n_minus_x(n), &opts()).unwrap();
            assert_eq!(m.gens.len(), 1);
            assert_eq!(m.gens[0].cycle_type(), vec![n]);
        }
    }

    #[test]
    fn constant_coefficients_give_identity() {
        let d = build_domain(Disc::real(0.0, 3.0), vec![Disc::real(-1.0, 0.3), Disc::real(1.0, 0.3)], Some(c(0.0, -2.0))).unwrap();
        let f = WeierstrassSpec::from_ints(&[&[-1], &[]], d);
        let m = monodromy(&f, &opts()).unwrap();
        assert!(m.gens.iter().all(|g| g.is_identity()));
    }

    #[test]
    fn small_loop_around_branch_point_is_transposition() {
        // z³ − 3z + 2x has branch points at x = ±1; only x = 1 is enclosed.
        let d = build_domain(Disc::real(1.0, 1.0), vec![Disc::real(1.0, 0.25)], None).unwrap();
        let f = WeierstrassSpec::from_ints(&[&[0, 2], &[-3], &[]], d);
        let m = monodromy(&f, &opts()).unwrap();
        assert_eq!(m.gens[0].cycle_type(), vec![2, 1]);
    }

    #[test]
    fn loop_then_inverse_is_identity() {
        let f = z_n_minus_x(3);
        let base = roots_at(&f, f.domain.basepoint, &opts()).unwrap();
        let out = track_word(&f, &base, &LoopWord(vec![1, -1]), &opts()).unwrap();
        assert!(out.correspondence.is_identity());
        for (a, b) in out.end.roots.iter().zip(&base.roots) {
            assert!((a - b).norm() < 1e-8);
        }
    }
}
