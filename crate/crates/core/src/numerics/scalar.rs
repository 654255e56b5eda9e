use num_complex::Complex64;
use std::fmt::Debug;

use super::GaussianRational;

/// Field operations shared by the exact and floating coefficient kinds.
///
/// Generic elimination, interpolation and polynomial arithmetic are written
/// once against this trait and instantiated for both kinds.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
    /// Pivot preference for elimination: larger is better, zero means unusable.
    fn pivot_weight(&self) -> f64;
    /// Whether pivot selection should search the whole column.
    const FULL_PIVOT_SEARCH: bool;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
    const FULL_PIVOT_SEARCH: bool = true;
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn from_i64(v: i64) -> Self {
        GaussianRational::from_integers(v, 0)
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }
    fn to_complex(&self) -> Complex64 {
        GaussianRational::to_complex(self)
    }
    fn pivot_weight(&self) -> f64 {
        if GaussianRational::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    const FULL_PIVOT_SEARCH: bool = false;
}

/// Determinant by Gaussian elimination with row pivoting.
///
/// Floating entries use partial pivoting on magnitude; exact entries take the
/// first nonzero pivot.
pub fn determinant<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    let mut det = S::one();
    for col in 0..n {
        let mut best = col;
        let mut best_w = m[col][col].pivot_weight();
        if S::FULL_PIVOT_SEARCH || best_w == 0.0 {
            for (r, row) in m.iter().enumerate().skip(col + 1) {
                let w = row[col].pivot_weight();
                if w > best_w {
                    best = r;
                    best_w = w;
                    if !S::FULL_PIVOT_SEARCH {
                        break;
                    }
                }
            }
        }
        if best_w == 0.0 {
            return S::zero();
        }
        if best != col {
            m.swap(best, col);
            det = det.neg();
        }
        let pivot = m[col][col].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        let (top, bottom) = m.split_at_mut(col + 1);
        let prow = &top[col];
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].mul(&inv);
            for k in col..n {
                let t = factor.mul(&prow[k]);
                row[k] = row[k].sub(&t);
            }
        }
    }
    det
}

/// Solves `m · y = rhs`; `None` when the matrix is singular.
pub fn solve<S: Scalar>(mut m: Vec<Vec<S>>, mut rhs: Vec<S>) -> Option<Vec<S>> {
    let n = m.len();
    for col in 0..n {
        let mut best = col;
        let mut best_w = m[col][col].pivot_weight();
        for (r, row) in m.iter().enumerate().skip(col + 1) {
            let w = row[col].pivot_weight();
            if w > best_w {
                best = r;
                best_w = w;
                if !S::FULL_PIVOT_SEARCH {
                    break;
                }
            }
        }
        if best_w == 0.0 {
            return None;
        }
        m.swap(best, col);
        rhs.swap(best, col);
        let inv = m[col][col].inv()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for k in col..n {
                let t = factor.mul(&m[col][k]);
                m[r][k] = m[r][k].sub(&t);
            }
            let t = factor.mul(&rhs[col]);
            rhs[r] = rhs[r].sub(&t);
        }
    }
    let mut y = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for k in i + 1..n {
            acc = acc.sub(&m[i][k].mul(&y[k]));
        }
        y[i] = acc.mul(&m[i][i].inv()?);
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_integers(re, im)
    }

    #[test]
    fn exact_determinant_needs_row_swap() {
        let m = vec![vec![gi(0, 0), gi(1, 0)], vec![gi(1, 0), gi(0, 0)]];
        assert_eq!(determinant(m), gi(-1, 0));
    }

    #[test]
    fn float_solve_matches_hand_solution() {
        let c = |r: f64| Complex64::new(r, 0.0);
        let m = vec![vec![c(2.0), c(1.0)], vec![c(1.0), c(3.0)]];
        let y = solve(m, vec![c(3.0), c(5.0)]).unwrap();
        assert!((y[0] - c(0.8)).norm() < 1e-14);
        assert!((y[1] - c(1.4)).norm() < 1e-14);
    }

    #[test]
    fn singular_is_detected() {
        let m = vec![vec![gi(1, 1), gi(2, 2)], vec![gi(1, 0), gi(2, 0)]];
        assert!(determinant(m.clone()).is_zero());
        assert!(solve(m, vec![gi(1, 0), gi(0, 0)]).is_none());
    }
}
