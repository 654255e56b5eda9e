//! Constructing Weierstrass polynomials on punctured discs with a prescribed
//! monodromy group, each returned with a re-checkable certificate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::domain::{build_domain, validate_spider, Disc, Domain};
use crate::error::{Error, Result};
use crate::numerics::{discriminant_of, rationalize_value, GaussianRational, PolyX};
use crate::perm::{generate, identify, GroupLabel, Identification, PermGroup, Permutation, DEFAULT_GROUP_CAP, DEFAULT_LATTICE_CAP};
use crate::rationalize::{approximate_coeffs, HomotopyOptions, HomotopyReport};
use crate::tracking::{disc_roots, monodromy, MonodromyData, TrackerOptions, WeierstrassSpec};

/// Largest permutation degree accepted by [`realize_search`].
pub const MAX_SEARCH_DEGREE: usize = 8;

fn cycle_strings<S: Serializer>(gens: &[Permutation], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gens.iter().map(|g| g.to_cycle_string()))
}

/// The monodromy evidence behind a realization.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "cycle_strings")]
    pub generators: Vec<Permutation>,
    pub order: usize,
    pub identification: Identification,
    pub orbit_sizes: Vec<usize>,
    pub weierstrass_margin: f64,
}

/// How closely the achieved group is known to match the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchQuality {
    /// Both groups carry the same definite label.
    Identified,
    /// Order, element-order statistics and orbit sizes agree, but the label
    /// is not definite.
    OrderMatchedIsomorphismUnverified,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationSpec {
    pub target: String,
    #[serde(skip)]
    pub spec: WeierstrassSpec,
    pub polynomial: String,
    pub certificate: Certificate,
    pub quality: MatchQuality,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub candidates_tried: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homotopy: Option<HomotopyReport>,
}

impl RealizationSpec {
    fn new(target: String, spec: WeierstrassSpec, certificate: Certificate, quality: MatchQuality) -> Self {
        RealizationSpec {
            target,
            polynomial: spec.pretty(),
            spec,
            certificate,
            quality,
            seed: None,
            budget: None,
            candidates_tried: 1,
            homotopy: None,
        }
    }

    /// Recomputes monodromy from the stored spec and compares generators.
    pub fn reverify(&self, opts: &TrackerOptions) -> Result<()> {
        let m = monodromy(&self.spec, opts)?;
        if m.gens != self.certificate.generators {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn group(&self) -> Result<PermGroup> {
        generate(self.spec.degree(), &self.certificate.generators, DEFAULT_GROUP_CAP)
    }
}

fn certificate_from(m: &MonodromyData) -> Result<Certificate> {
    let g = generate(m.degree(), &m.gens, DEFAULT_GROUP_CAP)?;
    let mut orbit_sizes: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
    orbit_sizes.sort_unstable();
    Ok(Certificate {
        generators: m.gens.clone(),
        order: g.order(),
        identification: identify(&g),
        orbit_sizes,
        weierstrass_margin: m.report.weierstrass_margin,
    })
}

/// Monodromy certificate for `f`.
pub fn certify(f: &WeierstrassSpec, opts: &TrackerOptions) -> Result<Certificate> {
    certificate_from(&monodromy(f, opts)?)
}

/// `c` as a Gaussian rational when the conversion is lossless.
fn exact(c: Complex64) -> Option<GaussianRational> {
    let q = rationalize_value(c, 1 << 20);
    (q.to_complex() == c).then_some(q)
}

/// `λ·(x − c)` as a polynomial of the matching kind.
fn scaled_shift(lambda: Complex64, c: Complex64) -> Result<PolyX> {
    match (exact(lambda), exact(c)) {
        (Some(l), Some(c)) => Ok(PolyX::exact(vec![&(&l * &c) * &GaussianRational::from_integers(-1, 0), l])),
        _ => PolyX::float(vec![-lambda * c, lambda]),
    }
}

/// `z^n − p(x)`, lowest coefficients first.
fn pure_power(n: usize, p: PolyX) -> Vec<PolyX> {
    let kind = p.kind();
    let mut coeffs = vec![PolyX::zero(kind); n];
    coeffs[0] = p.neg();
    coeffs
}

/// `(z − s)^n − p(x)` for an integer shift `s`.
fn shifted_power(n: usize, s: i64, p: PolyX) -> Result<Vec<PolyX>> {
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        let c = binomial_i64(n, k) * (-s).pow((n - k) as u32);
        let c = PolyX::from_ints(&[c]);
        coeffs.push(if p.kind() == c.kind() { c } else { c.to_float() });
    }
    coeffs[0] = coeffs[0].add(&p.neg())?;
    Ok(coeffs)
}

fn binomial_i64(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `realize_cyclic`: `z^n − (x − c)` on a disc with one hole centred at `c`.
pub fn realize_cyclic(n: usize, hole: Disc, opts: &TrackerOptions) -> Result<RealizationSpec> {
    if n == 0 {
        return Err(Error::Input("degree must be at least 1".into()));
    }
    let outer = Disc::new(hole.center, 4.0 * hole.radius)?;
    let domain = build_domain(outer, vec![hole], None)?;
    let f = WeierstrassSpec::new(pure_power(n, scaled_shift(Complex64::new(1.0, 0.0), hole.center)?), domain)?;
    let cert = certify(&f, opts)?;
    Ok(RealizationSpec::new(format!("C{}", n), f, cert, MatchQuality::Identified))
}

/// Hole centres on a circle of radius 3 around the origin; corridors from
/// the origin are radial, so the spider is never blocked.
fn ring_domain(m: usize) -> Result<Domain> {
    let holes: Vec<Disc> = (0..m)
        .map(|j| {
            let angle = std::f64::consts::TAU * j as f64 / m as f64;
            let c = Complex64::from_polar(3.0, angle);
            // Snap to exact values where the angle makes it possible.
            let c = Complex64::new((c.re * 1e12).round() / 1e12, (c.im * 1e12).round() / 1e12);
            Disc::new(c, 0.5)
        })
        .collect::<Result<_>>()?;
    build_domain(Disc::real(0.0, 5.0), holes, Some(Complex64::new(0.0, 0.0)))
}

/// Spacing between the root clusters of different factors. Over the ring
/// domain `|x − c_j| ≤ 8`, so each factor's roots stay within 8 of its shift.
const SHIFT: i64 = 20;

/// `realize_abelian_product`: `∏_j ((z − s_j)^{n_j} − λ_j(x − c_j))` with one
/// hole per factor; the shifts `s_j` keep fibers of different factors apart,
/// and the `λ_j` are redrawn if the Weierstrass check still fails.
pub fn realize_abelian_product(orders: &[usize], seed: u64, opts: &TrackerOptions) -> Result<RealizationSpec> {
    const RETRIES: usize = 200;
    if orders.is_empty() || orders.contains(&0) {
        return Err(Error::Input("orders must be a non-empty list of positive integers".into()));
    }
    let domain = ring_domain(orders.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = None;
    for attempt in 0..RETRIES {
        let lambdas: Vec<Complex64> = if attempt == 0 {
            vec![Complex64::new(1.0, 0.0); orders.len()]
        } else {
            orders.iter().map(|_| Complex64::new(rng.gen_range(-4i32..=4) as f64, rng.gen_range(-4i32..=4) as f64) / 2.0).collect()
        };
        if lambdas.iter().any(|l| l.norm() == 0.0) {
            continue;
        }
        let factors = orders
            .iter()
            .zip(&lambdas)
            .zip(&domain.holes)
            .enumerate()
            .map(|(j, ((&n, &l), h))| WeierstrassSpec::new(shifted_power(n, SHIFT * j as i64, scaled_shift(l, h.center)?)?, domain.clone()))
            .collect::<Result<Vec<_>>>()?;
        let f = WeierstrassSpec::product(&factors)?;
        match certify(&f, opts) {
            Ok(cert) => {
                let mut r = RealizationSpec::new(
                    orders.iter().map(|n| format!("C{}", n)).collect::<Vec<_>>().join(" x "),
                    f,
                    cert,
                    MatchQuality::Identified,
                );
                r.seed = Some(seed);
                r.budget = Some(RETRIES);
                r.candidates_tried = attempt + 1;
                return Ok(r);
            }
            Err(e @ Error::WeierstrassViolation { .. }) | Err(e @ Error::RootCollision { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// `realize_symmetric`: `z^n − n z + (n − 1)x`, whose branch points are the
/// `(n − 1)`-th roots of unity, with a small hole around each.
pub fn realize_symmetric(n: usize, seed: u64, opts: &TrackerOptions) -> Result<RealizationSpec> {
    if n < 2 {
        return Err(Error::Input("symmetric realization needs n >= 2".into()));
    }
    if n == 2 {
        let mut r = realize_cyclic(2, Disc::real(0.0, 0.5), opts)?;
        r.target = "S2".into();
        return Ok(r);
    }
    let k = n - 1;
    let radius = (0.4 * (std::f64::consts::PI / k as f64).sin()).min(0.25);
    let holes: Vec<Disc> = (0..k)
        .map(|j| {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / k as f64);
            Disc::new(Complex64::new((w.re * 1e12).round() / 1e12, (w.im * 1e12).round() / 1e12), radius)
        })
        .collect::<Result<_>>()?;
    let domain = build_domain(Disc::real(0.0, 2.0), holes, Some(Complex64::new(0.0, 0.0)))?;
    let mut coeffs = vec![PolyX::from_ints(&[]); n];
    coeffs[0] = PolyX::from_ints(&[0, (n - 1) as i64]);
    coeffs[1] = PolyX::from_ints(&[-(n as i64)]);
    let f = WeierstrassSpec::new(coeffs, domain)?;
    let cert = certify(&f, opts)?;
    let factorial: usize = (1..=n).product();
    if cert.order == factorial && cert.orbit_sizes == vec![n] {
        return Ok(RealizationSpec::new(format!("S{}", n), f, cert, MatchQuality::Identified));
    }
    // Fall back to a randomized search for the same target.
    let gens = vec![
        Permutation::from_images((1..n).chain([0]).collect())?,
        Permutation::from_images([1, 0].into_iter().chain(2..n).collect())?,
    ];
    realize_search(&gens, 200, seed, opts)
}

/// Clusters points into exactly `m` groups by repeatedly merging the two
/// groups with the closest centroids.
fn cluster(points: &[Complex64], m: usize) -> Vec<Vec<Complex64>> {
    let mut groups: Vec<Vec<Complex64>> = points.iter().map(|&p| vec![p]).collect();
    let centroid = |g: &[Complex64]| g.iter().sum::<Complex64>() / g.len() as f64;
    while groups.len() > m {
        let mut best = (f64::INFINITY, 0, 1);
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                let d = (centroid(&groups[a]) - centroid(&groups[b])).norm();
                if d < best.0 {
                    best = (d, a, b);
                }
            }
        }
        let merged = groups.remove(best.2);
        groups[best.1].extend(merged);
    }
    groups
}

/// Holes around clustered discriminant roots, an outer disc around them and
/// a basepoint from which the spider is clear.
fn domain_around(roots: &[Complex64], m: usize) -> Option<Domain> {
    if roots.len() < m || m == 0 {
        return None;
    }
    let groups = cluster(roots, m);
    let centers: Vec<Complex64> = groups.iter().map(|g| g.iter().sum::<Complex64>() / g.len() as f64).collect();
    let mut gap = f64::INFINITY;
    for a in 0..m {
        for b in a + 1..m {
            gap = gap.min((centers[a] - centers[b]).norm());
        }
    }
    let pad = if gap.is_finite() { 0.15 * gap } else { 0.5 };
    let holes: Vec<Disc> = groups
        .iter()
        .zip(&centers)
        .map(|(g, &c)| {
            let spread = g.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
            Disc { center: c, radius: spread + pad.max(1e-3) }
        })
        .collect();
    let mid = centers.iter().sum::<Complex64>() / m as f64;
    let reach = holes.iter().map(|h| (h.center - mid).norm() + h.radius).fold(0.0, f64::max);
    let outer = Disc::new(mid, 1.5 * reach + 1.0).ok()?;
    let mut candidates = vec![None, Some(mid)];
    for k in 0..16 {
        for frac in [0.5, 0.8] {
            candidates.push(Some(mid + Complex64::from_polar(frac * outer.radius, std::f64::consts::TAU * k as f64 / 16.0 + 0.1)));
        }
    }
    candidates.into_iter().find_map(|b| {
        let d = build_domain(outer, holes.clone(), b).ok()?;
        (d.clearance(d.basepoint) >= d.margin && validate_spider(&d).iter().all(|l| l.clear)).then_some(d)
    })
}

fn random_gaussian(rng: &mut ChaCha8Rng, span: i64) -> GaussianRational {
    let re = rng.gen_range(-span..=span);
    let im = if rng.gen_bool(0.25) { rng.gen_range(-1..=1) } else { 0 };
    GaussianRational::from_integers(re, im)
}

/// One random candidate: constant `a_i` for `i ≥ 2`, affine `a_0`, `a_1`.
fn candidate(n: usize, m: usize, seed: u64, index: usize) -> Option<WeierstrassSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64));
    let mut coeffs: Vec<PolyX> = (0..n)
        .map(|i| {
            let mut c = vec![random_gaussian(&mut rng, 3)];
            if i < 2 {
                c.push(random_gaussian(&mut rng, 2));
            }
            PolyX::exact(c)
        })
        .collect();
    if coeffs.iter().all(|p| p.degree().unwrap_or(0) == 0) {
        coeffs[0] = coeffs[0].add(&PolyX::from_ints(&[0, 1])).ok()?;
    }
    let disc = discriminant_of(&coeffs);
    if disc.is_zero() {
        return None;
    }
    let roots = disc_roots(&disc);
    let domain = domain_around(&roots, m)?;
    WeierstrassSpec::new(coeffs, domain).ok()
}

fn orbit_signature(g: &PermGroup) -> Vec<usize> {
    let mut s: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
    s.sort_unstable();
    s
}

/// `realize_search`: random candidates until the achieved group matches the
/// target by label, order, element-order statistics and orbit sizes.
/// Candidates run in parallel batches; the lowest successful index wins.
pub fn realize_search(target: &[Permutation], budget: usize, seed: u64, opts: &TrackerOptions) -> Result<RealizationSpec> {
    let n = target.first().ok_or_else(|| Error::Input("target needs at least one generator".into()))?.degree();
    if n > MAX_SEARCH_DEGREE {
        return Err(Error::Input(format!("target degree {} exceeds {}", n, MAX_SEARCH_DEGREE)));
    }
    let t = generate(n, target, DEFAULT_LATTICE_CAP)?;
    let t_id = identify(&t);
    let t_orbits = orbit_signature(&t);
    let m = target.len();
    let batch = rayon::current_num_threads().max(1) * 2;
    let mut start = 0;
    while start < budget {
        let end = (start + batch).min(budget);
        let hits: Vec<Option<(usize, WeierstrassSpec, Certificate)>> = (start..end)
            .into_par_iter()
            .map(|k| {
                let f = candidate(n, m, seed, k)?;
                let cert = certify(&f, opts).ok()?;
                let ok = cert.order == t_id.order
                    && cert.identification.statistics_match(&t_id)
                    && cert.orbit_sizes == t_orbits;
                ok.then_some((k, f, cert))
            })
            .collect();
        if let Some((k, f, cert)) = hits.into_iter().flatten().next() {
            let definite = !matches!(t_id.label, GroupLabel::Unidentified(_));
            let quality = if definite && cert.identification.label == t_id.label {
                MatchQuality::Identified
            } else {
                MatchQuality::OrderMatchedIsomorphismUnverified
            };
            let mut r = RealizationSpec::new(t_id.label.to_string(), f, cert, quality);
            r.seed = Some(seed);
            r.budget = Some(budget);
            r.candidates_tried = k + 1;
            return Ok(r);
        }
        start = end;
    }
    Err(Error::SearchBudgetExhausted(budget))
}

/// `realize_rational`: moves a realization to `Q(i)[x]` coefficients and
/// re-certifies the group.
pub fn realize_rational(r: &RealizationSpec, den_bound: u64, opts: &TrackerOptions) -> Result<RealizationSpec> {
    let (g, report) = approximate_coeffs(&r.spec, den_bound, &HomotopyOptions::default(), opts)?;
    let cert = certify(&g, opts)?;
    if cert.order != r.certificate.order || cert.orbit_sizes != r.certificate.orbit_sizes {
        return Err(Error::GroupMismatch);
    }
    let mut out = RealizationSpec::new(r.target.clone(), g, cert, r.quality);
    out.seed = r.seed;
    out.budget = r.budget;
    out.candidates_tried = r.candidates_tried;
    out.homotopy = Some(report);
    Ok(out)
}
