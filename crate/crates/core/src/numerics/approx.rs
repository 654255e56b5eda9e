//! Best rational approximation with bounded denominators.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::GaussianRational;

/// Closest fraction `p/q` to `x` with `1 ≤ q ≤ den_bound`.
///
/// Walks the continued-fraction convergents and, at the cut-off, compares
/// the last convergent with the best semiconvergent.
pub fn best_rational(x: f64, den_bound: u64) -> (i128, i128) {
    assert!(den_bound >= 1, "den_bound must be positive");
    assert!(x.is_finite(), "value must be finite");
    let bound = den_bound as i128;
    let floor = x.floor();
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (1, 0, floor as i128, 1);
    let mut frac = x - floor;
    loop {
        if frac.abs() < 1e-300 {
            return (p1, q1);
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = a as i128;
        let q2 = match a.checked_mul(q1).and_then(|v| v.checked_add(q0)) {
            Some(q) => q,
            None => return (p1, q1),
        };
        if q2 > bound {
            // Semiconvergent p0 + t·p1 over q0 + t·q1 with the largest admissible t.
            let t = (bound - q0) / q1;
            let (ps, qs) = (p0 + t * p1, q0 + t * q1);
            let err_conv = (x - p1 as f64 / q1 as f64).abs();
            let err_semi = (x - ps as f64 / qs as f64).abs();
            return if t > 0 && err_semi < err_conv { (ps, qs) } else { (p1, q1) };
        }
        let p2 = a * p1 + p0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        // Stop once the float itself is reproduced exactly.
        if p1 as f64 / q1 as f64 == x {
            return (p1, q1);
        }
    }
}

fn to_ratio((p, q): (i128, i128)) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `rationalize_value`: Gaussian rational nearest `c` componentwise with both
/// denominators at most `den_bound`.
pub fn rationalize_value(c: Complex64, den_bound: u64) -> GaussianRational {
    GaussianRational::new(to_ratio(best_rational(c.re, den_bound)), to_ratio(best_rational(c.im, den_bound)))
}
