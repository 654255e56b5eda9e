//! Planar base spaces `X = D − ∪ D_j`, lasso generators of π₁ and paths.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::numerics::check_finite;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    #[serde(with = "complex_pair")]
    pub center: Complex64,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: Complex64, radius: f64) -> Result<Disc> {
        check_finite(center)?;
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Input(format!("disc radius must be positive, got {}", radius)));
        }
        Ok(Disc { center, radius })
    }

    /// Shorthand for a real-centred disc; panics on a non-positive radius.
    pub fn real(center: f64, radius: f64) -> Disc {
        Disc::new(Complex64::new(center, 0.0), radius).expect("valid disc")
    }

    pub fn contains(&self, p: Complex64) -> bool {
        (p - self.center).norm() < self.radius
    }
}

/// `[re, im]` serialization for complex numbers.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Outer disc minus pairwise disjoint holes, with a basepoint and a
/// clearance margin for emitted paths.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Domain {
    pub outer: Disc,
    pub holes: Vec<Disc>,
    #[serde(with = "complex_pair")]
    pub basepoint: Complex64,
    pub margin: f64,
}

#[derive(Deserialize)]
struct DomainJson {
    outer: Disc,
    #[serde(default)]
    holes: Vec<Disc>,
    #[serde(default, with = "opt_pair")]
    basepoint: Option<Complex64>,
    #[serde(default)]
    margin: Option<f64>,
}

mod opt_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Complex64>, D::Error> {
        Ok(<Option<[f64; 2]>>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DomainJson::deserialize(d)?;
        let outer = Disc::new(raw.outer.center, raw.outer.radius).map_err(serde::de::Error::custom)?;
        let mut dom = build_domain(outer, raw.holes, raw.basepoint).map_err(serde::de::Error::custom)?;
        if let Some(m) = raw.margin {
            dom = dom.with_margin(m).map_err(serde::de::Error::custom)?;
        }
        Ok(dom)
    }
}

fn default_margin(outer: &Disc, holes: &[Disc]) -> f64 {
    let smallest = holes.iter().map(|h| h.radius).fold(f64::INFINITY, f64::min);
    if smallest.is_finite() {
        0.1 * smallest
    } else {
        0.1 * outer.radius
    }
}

/// `build_domain`: validates the geometry and fills in a default basepoint
/// on the positive real side of the outer disc.
pub fn build_domain(outer: Disc, holes: Vec<Disc>, basepoint: Option<Complex64>) -> Result<Domain> {
    for (j, h) in holes.iter().enumerate() {
        Disc::new(h.center, h.radius)?;
        if (h.center - outer.center).norm() + h.radius >= outer.radius {
            return Err(Error::HoleOutsideOuter(j + 1));
        }
    }
    for a in 0..holes.len() {
        for b in a + 1..holes.len() {
            if (holes[a].center - holes[b].center).norm() <= holes[a].radius + holes[b].radius {
                return Err(Error::OverlappingHoles(a + 1, b + 1));
            }
        }
    }
    let margin = default_margin(&outer, &holes);
    let basepoint = match basepoint {
        Some(b) => check_finite(b)?,
        None => outer.center + Complex64::new(outer.radius - 2.0 * margin, 0.0),
    };
    if (basepoint - outer.center).norm() > outer.radius {
        return Err(Error::BasepointInHole(0));
    }
    if let Some(j) = holes.iter().position(|h| h.contains(basepoint)) {
        return Err(Error::BasepointInHole(j + 1));
    }
    Ok(Domain { outer, holes, basepoint, margin })
}

impl Domain {
    /// The annulus `inner ≤ |x| ≤ outer` centred at the origin, the model used
    /// for the circle.
    pub fn annulus(inner: f64, outer: f64) -> Result<Domain> {
        build_domain(
            Disc::new(Complex64::new(0.0, 0.0), outer)?,
            vec![Disc::new(Complex64::new(0.0, 0.0), inner)?],
            None,
        )
    }

    pub fn disc(center: Complex64, radius: f64) -> Result<Domain> {
        build_domain(Disc::new(center, radius)?, Vec::new(), None)
    }

    pub fn with_basepoint(&self, basepoint: Complex64) -> Result<Domain> {
        let d = build_domain(self.outer, self.holes.clone(), Some(basepoint))?;
        Ok(Domain { margin: self.margin, ..d })
    }

    pub fn with_margin(mut self, margin: f64) -> Result<Domain> {
        if !(margin.is_finite() && margin > 0.0) {
            return Err(Error::Input(format!("margin must be positive, got {}", margin)));
        }
        self.margin = margin;
        Ok(self)
    }

    pub fn num_holes(&self) -> usize {
        self.holes.len()
    }

    /// Whether `p` lies in the closure of `X`.
    pub fn contains(&self, p: Complex64) -> bool {
        (p - self.outer.center).norm() <= self.outer.radius && self.holes.iter().all(|h| (p - h.center).norm() >= h.radius)
    }

    /// Signed clearance of `p`: distance to the nearest boundary circle,
    /// negative outside `X`.
    pub fn clearance(&self, p: Complex64) -> f64 {
        let mut c = self.outer.radius - (p - self.outer.center).norm();
        for h in &self.holes {
            c = c.min((p - h.center).norm() - h.radius);
        }
        c
    }

    /// Radius of the lasso circle around hole `j` (0-based).
    pub fn lasso_radius(&self, j: usize) -> f64 {
        self.holes[j].radius + 2.0 * self.margin
    }

    /// Points covering the closed domain: every boundary circle at
    /// `boundary` points, plus the interior of a `grid × grid` lattice that
    /// falls in `X`.
    pub fn sample_points(&self, boundary: usize, grid: usize) -> Vec<Complex64> {
        let mut pts = Vec::new();
        let circle = |d: &Disc, pts: &mut Vec<Complex64>| {
            for k in 0..boundary {
                pts.push(d.center + Complex64::from_polar(d.radius, TAU * k as f64 / boundary as f64));
            }
        };
        circle(&self.outer, &mut pts);
        for h in &self.holes {
            circle(h, &mut pts);
        }
        let r = self.outer.radius;
        for a in 0..grid {
            for b in 0..grid {
                let u = -r + 2.0 * r * (a as f64 + 0.5) / grid as f64;
                let v = -r + 2.0 * r * (b as f64 + 0.5) / grid as f64;
                let p = self.outer.center + Complex64::new(u, v);
                if self.contains(p) {
                    pts.push(p);
                }
            }
        }
        pts
    }

    /// Whether the straight segment `a → b` keeps at least `margin` away from
    /// every hole other than `skip`, and stays inside the outer disc.
    pub fn segment_clear(&self, a: Complex64, b: Complex64, skip: Option<usize>) -> std::result::Result<(), usize> {
        for (k, h) in self.holes.iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            if segment_point_distance(a, b, h.center) < h.radius + self.margin {
                return Err(k);
            }
        }
        Ok(())
    }
}

/// Distance from `p` to the segment `a → b`.
pub fn segment_point_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (a + ab * t - p).norm()
}

/// A piece of a path in the `x`-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    /// `center + radius·e^{i(start + sweep·u)}` for `u ∈ [0, 1]`; positive
    /// sweep is counterclockwise.
    Arc { center: Complex64, radius: f64, start: f64, sweep: f64 },
}

impl Segment {
    pub fn point(&self, u: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * u,
            Segment::Arc { center, radius, start, sweep } => center + Complex64::from_polar(radius, start + sweep * u),
        }
    }

    /// `dx/du`.
    pub fn velocity(&self, u: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { radius, start, sweep, .. } => {
                Complex64::new(0.0, sweep) * Complex64::from_polar(radius, start + sweep * u)
            }
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    /// The piece of `self` between parameters `u0` and `u1`.
    pub fn sub(&self, u0: f64, u1: f64) -> Segment {
        match *self {
            Segment::Line { .. } => Segment::Line { from: self.point(u0), to: self.point(u1) },
            Segment::Arc { center, radius, start, sweep } => {
                Segment::Arc { center, radius, start: start + sweep * u0, sweep: sweep * (u1 - u0) }
            }
        }
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc { center, radius, start, sweep } => Segment::Arc { center, radius, start: start + sweep, sweep: -sweep },
        }
    }
}

/// A chain of segments sharing endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub segments: Vec<Segment>,
    pub origin: Complex64,
}

impl Path {
    pub fn constant(at: Complex64) -> Path {
        Path { segments: Vec::new(), origin: at }
    }

    pub fn from_segments(segments: Vec<Segment>) -> Path {
        let origin = segments.first().map(|s| s.start()).expect("non-empty path");
        Path { segments, origin }
    }

    pub fn segment(a: Complex64, b: Complex64) -> Path {
        Path::from_segments(vec![Segment::Line { from: a, to: b }])
    }

    pub fn start(&self) -> Complex64 {
        self.origin
    }

    pub fn end(&self) -> Complex64 {
        self.segments.last().map(|s| s.end()).unwrap_or(self.origin)
    }

    pub fn is_closed(&self) -> bool {
        (self.end() - self.start()).norm() <= 1e-12 * (1.0 + self.start().norm())
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(|s| s.length()).sum()
    }

    pub fn reversed(&self) -> Path {
        Path { segments: self.segments.iter().rev().map(|s| s.reversed()).collect(), origin: self.end() }
    }

    /// `self` followed by `other`; panics if the endpoints do not meet.
    pub fn then(&self, other: &Path) -> Path {
        let gap = (self.end() - other.start()).norm();
        assert!(gap <= 1e-9 * (1.0 + self.end().norm()), "paths do not meet (gap {})", gap);
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().copied());
        Path { segments, origin: self.origin }
    }

    /// Splits every segment into `per_segment` equal pieces, returned as
    /// consecutive single-segment paths.
    pub fn pieces(&self, per_segment: usize) -> Vec<Path> {
        let k = per_segment.max(1);
        self.segments
            .iter()
            .flat_map(|s| (0..k).map(move |i| Path::from_segments(vec![s.sub(i as f64 / k as f64, (i + 1) as f64 / k as f64)])))
            .collect()
    }

    /// `count` points per segment (endpoints included once).
    pub fn sample(&self, count: usize) -> Vec<Complex64> {
        let mut pts = vec![self.origin];
        for s in &self.segments {
            for k in 1..=count {
                pts.push(s.point(k as f64 / count as f64));
            }
        }
        pts
    }
}

/// Signed generator word in the free group π₁(X); entries are 1-based hole
/// indices, negative for inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopWord(pub Vec<i32>);

impl LoopWord {
    pub fn inverse(&self) -> LoopWord {
        LoopWord(self.0.iter().rev().map(|g| -g).collect())
    }
}

/// Per-hole result of [`validate_spider`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpiderLeg {
    pub hole: usize,
    pub clear: bool,
    pub blocked_by: Option<usize>,
}

/// `validate_spider`: whether each straight corridor from the basepoint
/// clears all other holes by the margin.
pub fn validate_spider(d: &Domain) -> Vec<SpiderLeg> {
    (0..d.holes.len())
        .map(|j| match spider_check(d, j) {
            Ok(()) => SpiderLeg { hole: j + 1, clear: true, blocked_by: None },
            Err(Error::SpiderBlocked { blocker, .. }) => SpiderLeg { hole: j + 1, clear: false, blocked_by: Some(blocker) },
            Err(_) => SpiderLeg { hole: j + 1, clear: false, blocked_by: None },
        })
        .collect()
}

fn spider_check(d: &Domain, j: usize) -> Result<()> {
    let h = d.holes[j];
    let rho = d.lasso_radius(j);
    let offset = d.basepoint - h.center;
    let blocked = |blocker: usize| Error::SpiderBlocked { hole: j + 1, blocker };
    // The lasso circle must clear the outer boundary and every other hole.
    if (h.center - d.outer.center).norm() + rho > d.outer.radius - d.margin {
        return Err(blocked(0));
    }
    for (k, other) in d.holes.iter().enumerate() {
        if k != j && (other.center - h.center).norm() < rho + other.radius + d.margin {
            return Err(blocked(k + 1));
        }
    }
    if offset.norm() < rho {
        // Basepoint sits inside the lasso circle: no corridor possible.
        return Err(blocked(j + 1));
    }
    let attach = h.center + offset / offset.norm() * rho;
    d.segment_clear(d.basepoint, attach, Some(j)).map_err(|k| blocked(k + 1))
}

/// `generator_loop`: the counterclockwise lasso around hole `j` (1-based).
pub fn generator_loop(d: &Domain, j: usize) -> Result<Path> {
    if j == 0 || j > d.holes.len() {
        return Err(Error::NoSuchHole(j));
    }
    let k = j - 1;
    spider_check(d, k)?;
    let h = d.holes[k];
    let rho = d.lasso_radius(k);
    let offset = d.basepoint - h.center;
    let angle = offset.arg();
    let attach = h.center + Complex64::from_polar(rho, angle);
    let mut segments = Vec::new();
    if (attach - d.basepoint).norm() > 0.0 {
        segments.push(Segment::Line { from: d.basepoint, to: attach });
    }
    segments.push(Segment::Arc { center: h.center, radius: rho, start: angle, sweep: TAU });
    if (attach - d.basepoint).norm() > 0.0 {
        segments.push(Segment::Line { from: attach, to: d.basepoint });
    }
    Ok(Path { segments, origin: d.basepoint })
}

/// `loop_word`: concatenation of lassos and their reversals in word order.
pub fn loop_word(d: &Domain, w: &LoopWord) -> Result<Path> {
    let mut path = Path::constant(d.basepoint);
    for &g in &w.0 {
        let lasso = generator_loop(d, g.unsigned_abs() as usize)?;
        let piece = if g < 0 { lasso.reversed() } else { lasso };
        path = path.then(&piece);
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn simply_connected_disc_is_valid() {
        let d = build_domain(Disc::real(0.0, 2.0), vec![], None).unwrap();
        assert_eq!(d.num_holes(), 0);
        assert!(d.contains(d.basepoint));
    }

    #[test]
    fn annulus_model() {
        let d = Domain::annulus(0.5, 2.0).unwrap();
        assert!((d.margin - 0.05).abs() < 1e-15);
        assert!((d.basepoint - c(1.9, 0.0)).norm() < 1e-12);
        let lasso = generator_loop(&d, 1).unwrap();
        assert!(lasso.is_closed());
        // Winding number around 0 by summing argument increments.
        let pts = lasso.sample(400);
        let wind: f64 = pts.windows(2).map(|w| (w[1] / w[0]).arg()).sum::<f64>() / TAU;
        assert!((wind - 1.0).abs() < 1e-9);
    }

    #[test]
    fn overlapping_holes_rejected() {
        let err = build_domain(Disc::real(0.0, 5.0), vec![Disc::real(0.0, 1.0), Disc::real(1.0, 1.0)], None);
        assert_eq!(err, Err(Error::OverlappingHoles(1, 2)));
        // tangent discs are rejected as well
        let err = build_domain(Disc::real(0.0, 5.0), vec![Disc::real(0.0, 1.0), Disc::real(2.0, 1.0)], None);
        assert_eq!(err, Err(Error::OverlappingHoles(1, 2)));
    }

    #[test]
    fn hole_outside_and_basepoint_in_hole() {
        assert_eq!(build_domain(Disc::real(0.0, 1.0), vec![Disc::real(0.8, 0.5)], None), Err(Error::HoleOutsideOuter(1)));
        assert_eq!(
            build_domain(Disc::real(0.0, 3.0), vec![Disc::real(0.0, 0.5)], Some(c(0.1, 0.0))),
            Err(Error::BasepointInHole(1))
        );
    }

    #[test]
    fn separated_lassos_meet_only_at_basepoint() {
        let d = build_domain(Disc::real(0.0, 4.0), vec![Disc::real(-1.5, 0.3), Disc::real(1.5, 0.3)], Some(c(0.0, -2.0)))
            .unwrap();
        let a = generator_loop(&d, 1).unwrap().sample(200);
        let b = generator_loop(&d, 2).unwrap().sample(200);
        // Points away from the basepoint keep their distance.
        let far = |p: &Complex64| (p - d.basepoint).norm() > 0.5;
        let min = a
            .iter()
            .filter(|p| far(p))
            .flat_map(|p| b.iter().filter(|q| far(q)).map(move |q| (p - q).norm()))
            .fold(f64::INFINITY, f64::min);
        assert!(min > 0.5);
    }

    #[test]
    fn collinear_far_hole_is_blocked() {
        let d = build_domain(Disc::real(0.0, 6.0), vec![Disc::real(1.0, 0.4), Disc::real(3.0, 0.4)], Some(c(-1.0, 0.0)))
            .unwrap();
        assert!(generator_loop(&d, 1).is_ok());
        assert_eq!(generator_loop(&d, 2), Err(Error::SpiderBlocked { hole: 2, blocker: 1 }));
        let report = validate_spider(&d);
        assert!(report[0].clear);
        assert_eq!(report[1].blocked_by, Some(1));
    }

    #[test]
    fn words() {
        let d = Domain::annulus(0.5, 2.0).unwrap();
        let empty = loop_word(&d, &LoopWord(vec![])).unwrap();
        assert_eq!(empty.length(), 0.0);
        let there_and_back = loop_word(&d, &LoopWord(vec![1, -1])).unwrap();
        assert!(there_and_back.is_closed());
        assert!((there_and_back.length() - 2.0 * generator_loop(&d, 1).unwrap().length()).abs() < 1e-12);
        assert_eq!(loop_word(&d, &LoopWord(vec![2])), Err(Error::NoSuchHole(2)));
    }

    #[test]
    fn emitted_paths_respect_margin() {
        let d = build_domain(
            Disc::real(0.0, 4.0),
            vec![Disc::real(-1.5, 0.3), Disc::real(1.5, 0.5), Disc::new(c(0.0, 1.5), 0.4).unwrap()],
            Some(c(0.0, -1.0)),
        )
        .unwrap();
        for j in 1..=3 {
            for p in generator_loop(&d, j).unwrap().sample(300) {
                for h in &d.holes {
                    assert!((p - h.center).norm() - h.radius >= d.margin - 1e-12);
                }
                assert!((p - d.outer.center).norm() <= d.outer.radius - d.margin);
            }
        }
    }

    #[test]
    fn json_round_trip_shape() {
        let d: Domain = serde_json::from_str(r#"{"outer":{"center":[0,0],"radius":2},"holes":[{"center":[0,0],"radius":0.5}],"basepoint":[1.5,0]}"#).unwrap();
        assert_eq!(d.basepoint, c(1.5, 0.0));
        let bad: std::result::Result<Domain, _> =
            serde_json::from_str(r#"{"outer":{"center":[0,0],"radius":2},"holes":[{"center":[0,0],"radius":0.5},{"center":[0.6,0],"radius":0.5}]}"#);
        assert!(bad.is_err());
    }
}
