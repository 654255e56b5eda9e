#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semigalois::domain::{build_domain, validate_spider, Disc, Domain};
use semigalois::numerics::{discriminant_of, GaussianRational, PolyX};
use semigalois::perm::Permutation;
use semigalois::tracking::{check_weierstrass, disc_roots, TrackerOptions, WeierstrassSpec};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `z^n − x` on `0.5 < |x| < 2`.
pub fn root_spec(n: usize) -> WeierstrassSpec {
    let mut coeffs = vec![PolyX::from_ints(&[]); n];
    coeffs[0] = PolyX::from_ints(&[0, -1]);
    WeierstrassSpec::new(coeffs, Domain::annulus(0.5, 2.0).unwrap()).unwrap()
}

pub fn random_root(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

/// `n` random roots with pairwise distance at least `gap`.
pub fn distinct_roots(rng: &mut ChaCha8Rng, n: usize, gap: f64) -> Vec<Complex64> {
    loop {
        let r: Vec<Complex64> = (0..n).map(|_| random_root(rng)).collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| (r[i] - r[j]).norm() >= gap));
        if ok {
            return r;
        }
    }
}

/// Relative error `|a − b| / |b|`.
pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

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

/// A random Weierstrass polynomial of degree 2..=4 with 1..=3 holes placed
/// around clustered discriminant roots, or `None` if this draw does not
/// give a usable domain.
pub fn random_spec(rng: &mut ChaCha8Rng, opts: &TrackerOptions) -> Option<WeierstrassSpec> {
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(1..=3);
    let coeffs: Vec<PolyX> = (0..n)
        .map(|i| {
            let mut v = vec![GaussianRational::from_integers(rng.gen_range(-3..=3), 0)];
            if i < 2 {
                v.push(GaussianRational::from_integers(rng.gen_range(-2..=2), rng.gen_range(-1..=1)));
            }
            PolyX::exact(v)
        })
        .collect();
    let disc = discriminant_of(&coeffs);
    if disc.degree().unwrap_or(0) == 0 {
        return None;
    }
    let roots = disc_roots(&disc);
    if roots.len() < m {
        return None;
    }
    let groups = cluster(&roots, m);
    let centers: Vec<Complex64> = groups.iter().map(|g| g.iter().sum::<Complex64>() / g.len() as f64).collect();
    let holes: Vec<Disc> = groups
        .iter()
        .zip(&centers)
        .map(|(g, &ctr)| Disc { center: ctr, radius: g.iter().map(|p| (p - ctr).norm()).fold(0.0, f64::max) + 0.2 })
        .collect();
    let mid = centers.iter().sum::<Complex64>() / m as f64;
    let reach = holes.iter().map(|h| (h.center - mid).norm() + h.radius).fold(0.0, f64::max);
    let outer = Disc::new(mid, reach + 1.5).ok()?;
    let mut candidates = vec![None, Some(mid)];
    for k in 0..12 {
        candidates.push(Some(mid + Complex64::from_polar(0.6 * outer.radius, 0.3 + std::f64::consts::TAU * k as f64 / 12.0)));
    }
    let domain = candidates.into_iter().find_map(|b| {
        let d = build_domain(outer, holes.clone(), b).ok()?;
        validate_spider(&d).iter().all(|l| l.clear).then_some(d)
    })?;
    let f = WeierstrassSpec::new(coeffs, domain).ok()?;
    check_weierstrass(&f, opts).ok()?;
    Some(f)
}

/// Some `p` with `p ∘ a_j ∘ p⁻¹ = b_j` for every `j`, by brute force.
pub fn common_conjugator(a: &[Permutation], b: &[Permutation]) -> Option<Permutation> {
    let n = a.first()?.degree();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        let p = Permutation::from_images(images.clone()).unwrap();
        if a.iter().zip(b).all(|(x, y)| p.compose(x).compose(&p.inverse()) == *y) {
            return Some(p);
        }
        if !next_permutation(&mut images) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
