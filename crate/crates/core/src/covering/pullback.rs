use num_complex::Complex64;
use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::perm::{generate, Permutation, DEFAULT_GROUP_CAP};
use crate::tracking::{monodromy, TrackerOptions, WeierstrassSpec};

/// Outcome of pulling `f` back along `y ↦ y^k`.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub k: u32,
    #[serde(skip)]
    pub pulled_back: WeierstrassSpec,
    pub original_generator: Permutation,
    pub pulled_generator: Permutation,
    pub original_order: usize,
    pub pulled_order: usize,
    /// The pulled-back generator equals the `k`-th power of the original
    /// one, so the new group sits inside the old.
    pub embeds: bool,
}

fn annulus_radii(d: &Domain) -> Result<(f64, f64)> {
    match d.holes.as_slice() {
        [h] if d.outer.center.norm() == 0.0 && h.center.norm() == 0.0 => Ok((h.radius, d.outer.radius)),
        _ => Err(Error::NotAnnulus),
    }
}

/// `pullback_power`: `f₂(y, z) = f(y^k, z)` on the `k`-th root annulus,
/// with both monodromy groups computed over the same fiber.
pub fn pullback_power(f: &WeierstrassSpec, k: u32, opts: &TrackerOptions) -> Result<PullbackReport> {
    if k == 0 {
        return Err(Error::Input("pullback exponent must be at least 1".into()));
    }
    let (inner, outer) = annulus_radii(&f.domain)?;
    let kf = k as f64;
    let d2 = Domain::annulus(inner.powf(1.0 / kf), outer.powf(1.0 / kf))?;
    let f2 = WeierstrassSpec::new(f.coeffs.iter().map(|p| p.compose_power(k as usize)).collect(), d2)?;
    let m2 = monodromy(&f2, opts)?;
    // Over y = b the fiber of f₂ is the fiber of f over x = b^k, so using
    // that point as the original basepoint makes the labels agree.
    let b1 = m2.base.point.powu(k);
    let f1 = f.with_domain(f.domain.with_basepoint(Complex64::new(b1.re, 0.0))?);
    let m1 = monodromy(&f1, opts)?;
    let g1 = m1.gens[0].clone();
    let g2 = m2.gens[0].clone();
    let n = f.degree();
    let original_order = generate(n, &[g1.clone()], DEFAULT_GROUP_CAP)?.order();
    let pulled_order = generate(n, &[g2.clone()], DEFAULT_GROUP_CAP)?.order();
    let embeds = g1.pow(k as i64) == g2;
    Ok(PullbackReport { k, pulled_back: f2, original_generator: g1, pulled_generator: g2, original_order, pulled_order, embeds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_spec() -> WeierstrassSpec {
        WeierstrassSpec::from_ints(&[&[0, -1], &[]], Domain::annulus(0.5, 2.0).unwrap())
    }

    #[test]
    fn square_root_examples() {
        let opts = TrackerOptions::default();
        let r2 = pullback_power(&sqrt_spec(), 2, &opts).unwrap();
        assert_eq!((r2.original_order, r2.pulled_order), (2, 1));
        assert!(r2.embeds);
        let r3 = pullback_power(&sqrt_spec(), 3, &opts).unwrap();
        assert_eq!((r3.original_order, r3.pulled_order), (2, 2));
        assert!(r3.embeds);
        let r1 = pullback_power(&sqrt_spec(), 1, &opts).unwrap();
        assert_eq!(r1.pulled_generator, r1.original_generator);
    }

    #[test]
    fn requires_annulus() {
        let f = sqrt_spec().with_domain(Domain::disc(Complex64::new(0.0, 0.0), 2.0).unwrap());
        assert_eq!(pullback_power(&f, 2, &TrackerOptions::default()).unwrap_err(), Error::NotAnnulus);
    }
}
