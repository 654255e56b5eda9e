//! Predictor–corrector continuation of a root fiber along a path.

use num_complex::Complex64;
use serde::Serialize;

use super::roots::{eval_monic, min_separation, residual, sorted_order};
use super::{Evaluator, RootFiber, TrackerOptions};
use crate::domain::{Path, Segment};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Result of continuing a fiber along a path.
#[derive(Clone, Debug, Serialize)]
pub struct TrackOutcome {
    /// Fiber over the path's end point. For closed paths it is listed in the
    /// start fiber's order; otherwise in the deterministic sorted order.
    pub end: RootFiber,
    /// `correspondence(i)` is the index in `end` of the continuation of start
    /// root `i`.
    pub correspondence: Permutation,
    pub stats: TrackStats,
}

/// Step-control diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TrackStats {
    pub steps: usize,
    pub rejected: usize,
    /// Smallest accepted step, as a fraction of the path length.
    pub smallest_step: f64,
    pub max_residual: f64,
    /// Smallest pairwise root separation seen along the path.
    pub min_separation: f64,
}

impl TrackStats {
    fn new() -> Self {
        TrackStats { smallest_step: f64::INFINITY, min_separation: f64::INFINITY, ..Default::default() }
    }

    pub fn merge(&mut self, other: &TrackStats) {
        self.steps += other.steps;
        self.rejected += other.rejected;
        self.smallest_step = self.smallest_step.min(other.smallest_step);
        self.max_residual = self.max_residual.max(other.max_residual);
        self.min_separation = self.min_separation.min(other.min_separation);
    }
}

enum StepFailure {
    Newton,
    Gate,
}

pub(crate) struct Tracker<'a> {
    pub eval: &'a Evaluator,
    pub opts: &'a TrackerOptions,
}

impl Tracker<'_> {
    fn correct(&self, c: &[Complex64], mut z: Complex64) -> Option<Complex64> {
        for _ in 0..self.opts.max_newton {
            let (p, dp) = eval_monic(c, z);
            if dp.norm() == 0.0 {
                return None;
            }
            z -= p / dp;
            if !(z.re.is_finite() && z.im.is_finite()) {
                return None;
            }
            if residual(c, z) < self.opts.residual_tol {
                // One extra iteration costs little and tightens the root.
                let (p, dp) = eval_monic(c, z);
                let polished = z - p / dp;
                if residual(c, polished) <= residual(c, z) {
                    z = polished;
                }
                return Some(z);
            }
        }
        None
    }

    /// One predictor–corrector step from `x0` to `x1`.
    fn step(&self, roots: &[Complex64], x0: Complex64, x1: Complex64) -> std::result::Result<Vec<Complex64>, StepFailure> {
        let c0 = self.eval.fiber_coeffs(x0);
        let dc = self.eval.fiber_dx(x0);
        let c1 = self.eval.fiber_coeffs(x1);
        let dx = x1 - x0;
        let predicted: Vec<Complex64> = roots
            .iter()
            .map(|&z| {
                let (_, fz) = eval_monic(&c0, z);
                let fx = crate::numerics::poly_eval_slice(&dc, z);
                z - fx * dx / fz
            })
            .collect();
        let mut corrected = Vec::with_capacity(roots.len());
        for &p in &predicted {
            corrected.push(self.correct(&c1, p).ok_or(StepFailure::Newton)?);
        }
        let sep = min_separation(roots);
        for (i, &p) in predicted.iter().enumerate() {
            let mut nearest = (f64::INFINITY, usize::MAX);
            let mut second = f64::INFINITY;
            for (k, &w) in corrected.iter().enumerate() {
                let d = (w - p).norm();
                if d < nearest.0 {
                    second = nearest.0;
                    nearest = (d, k);
                } else if d < second {
                    second = d;
                }
            }
            // Roots may not travel half the separation in one step, so no
            // two of them can trade places unnoticed.
            let moved = (corrected[i] - roots[i]).norm();
            let gate = nearest.1 == i
                && nearest.0 < second / 3.0
                && (roots.len() == 1 || (nearest.0 < sep / 2.0 && moved < sep / 2.0));
            if !gate {
                return Err(StepFailure::Gate);
            }
        }
        if roots.len() > 1 && min_separation(&corrected) <= self.opts.collision_threshold {
            return Err(StepFailure::Gate);
        }
        Ok(corrected)
    }

    fn track_segment(
        &self,
        seg: &Segment,
        total: f64,
        roots: &mut Vec<Complex64>,
        h: &mut f64,
        travelled: &mut f64,
        stats: &mut TrackStats,
    ) -> Result<()> {
        let len = seg.length();
        if len == 0.0 {
            return Ok(());
        }
        // A step is only checked at its ends. On a line the chord is the
        // path, but on an arc a long chord can cut across the hole, so arcs
        // always get at least 1/initial_step steps.
        let cap = match seg {
            Segment::Arc { .. } => self.opts.initial_step,
            Segment::Line { .. } => 1.0,
        };
        let mut u = 0.0;
        let mut streak = 0;
        while u < 1.0 {
            let du = (*h * total / len).min(cap).min(1.0 - u);
            let x0 = seg.point(u);
            let x1 = if u + du >= 1.0 { seg.end() } else { seg.point(u + du) };
            match self.step(roots, x0, x1) {
                Ok(next) => {
                    *roots = next;
                    u = if u + du >= 1.0 { 1.0 } else { u + du };
                    stats.steps += 1;
                    stats.smallest_step = stats.smallest_step.min(du * len / total);
                    let c1 = self.eval.fiber_coeffs(x1);
                    for &z in roots.iter() {
                        stats.max_residual = stats.max_residual.max(residual(&c1, z));
                    }
                    stats.min_separation = stats.min_separation.min(min_separation(roots));
                    streak += 1;
                    if streak >= 2 {
                        *h = (*h * 2.0).min(self.opts.initial_step);
                        streak = 0;
                    }
                }
                Err(kind) => {
                    stats.rejected += 1;
                    streak = 0;
                    *h /= 2.0;
                    if *h < self.opts.min_step {
                        let at = (*travelled + u * len) / total;
                        let sep = min_separation(roots);
                        if roots.len() > 1 && sep <= self.opts.collision_threshold * 10.0 {
                            return Err(Error::RootCollision { x: x0, separation: sep });
                        }
                        return Err(match kind {
                            StepFailure::Gate => Error::AmbiguousMatch { at },
                            StepFailure::Newton => Error::StepUnderflow { at },
                        });
                    }
                }
            }
        }
        *travelled += len;
        Ok(())
    }

    pub fn track(&self, path: &Path, start: &RootFiber) -> Result<TrackOutcome> {
        let n = start.roots.len();
        let mut stats = TrackStats::new();
        let total = path.length();
        let mut roots = start.roots.clone();
        if total > 0.0 {
            let mut h = self.opts.initial_step;
            let mut travelled = 0.0;
            for seg in &path.segments {
                self.track_segment(seg, total, &mut roots, &mut h, &mut travelled, &mut stats)?;
            }
        }
        if stats.steps == 0 {
            stats.smallest_step = 0.0;
            stats.min_separation = min_separation(&roots);
        }
        let end_point = path.end();
        let (order, correspondence) = if path.is_closed() {
            let images = match_fibers(&start.roots, &roots).ok_or(Error::AmbiguousMatch { at: 1.0 })?;
            // end[images[i]] = roots[i]
            let mut order = vec![0; n];
            for (i, &j) in images.iter().enumerate() {
                order[j] = i;
            }
            (order, Permutation::from_images(images)?)
        } else {
            let order = sorted_order(&roots);
            let mut images = vec![0; n];
            for (pos, &i) in order.iter().enumerate() {
                images[i] = pos;
            }
            (order, Permutation::from_images(images)?)
        };
        let end = RootFiber { point: end_point, roots: order.iter().map(|&i| roots[i]).collect() };
        Ok(TrackOutcome { end, correspondence, stats })
    }
}

/// Nearest-neighbour bijection from `moved` onto `reference`:
/// `images[i]` is the reference index closest to `moved[i]`. Requires every
/// match to be unambiguous (nearest < ⅓ second nearest).
pub fn match_fibers(reference: &[Complex64], moved: &[Complex64]) -> Option<Vec<usize>> {
    let n = reference.len();
    if moved.len() != n {
        return None;
    }
    let mut used = vec![false; n];
    let mut images = Vec::with_capacity(n);
    for &m in moved {
        let mut dists: Vec<(f64, usize)> = reference.iter().enumerate().map(|(k, &r)| ((m - r).norm(), k)).collect();
        dists.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (d, k) = dists[0];
        if n > 1 && d >= dists[1].0 / 3.0 {
            return None;
        }
        if used[k] {
            return None;
        }
        used[k] = true;
        images.push(k);
    }
    Some(images)
}
