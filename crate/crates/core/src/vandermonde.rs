//! The index order `≺`, the coset representatives `φ_i`, the `n!×n!` matrix
//! `V_n = (φ_i(x_j))`, its determinant `Δ`, and the Galois system `V y = e₁`.

use num_complex::Complex64;
use serde::Serialize;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numerics::{determinant, solve, GaussianRational, Scalar};
use crate::perm::{generate, Permutation};

/// Largest `n` handled without the explicit large flag.
pub const MAX_DEGREE: usize = 5;
/// Largest `n` handled at all (`720 × 720` entries).
pub const MAX_DEGREE_LARGE: usize = 6;

/// `(i_1, …, i_{n−1})` compared from the last coordinate backward.
fn precedes(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// `index_order`: all tuples with `0 ≤ i_k ≤ n − k`, sorted by `≺`.
pub fn index_order(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 1..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=n - k).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out.sort_by(|a, b| precedes(a, b));
    out
}

/// `σ_i = (i i+1 … n)` on `n` points (1-based `i`).
pub fn sigma(n: usize, i: usize) -> Permutation {
    let cycle: Vec<usize> = (i..=n).collect();
    Permutation::from_cycles(n, &[&cycle]).expect("valid cycle")
}

/// `sigma_enum`: `φ_j = σ_1^{i_1} ∘ σ_2^{i_2} ∘ ⋯ ∘ σ_{n−1}^{i_{n−1}}` for the
/// tuples of [`index_order`].
pub fn sigma_enum(n: usize) -> Vec<Permutation> {
    let sigmas: Vec<Permutation> = (1..n).map(|i| sigma(n, i)).collect();
    index_order(n)
        .iter()
        .map(|t| {
            t.iter()
                .zip(&sigmas)
                .fold(Permutation::identity(n), |acc, (&e, s)| acc.compose(&s.pow(e as i64)))
        })
        .collect()
}

/// `V_n` over an arbitrary field of roots.
#[derive(Clone, Debug)]
pub struct VMatrix<S> {
    pub n: usize,
    pub indices: Vec<Vec<usize>>,
    pub phis: Vec<Permutation>,
    /// `entries[i][j] = φ_i(x_j)`.
    pub entries: Vec<Vec<S>>,
}

fn check_degree(n: usize, allow_large: bool) -> Result<()> {
    let cap = if allow_large { MAX_DEGREE_LARGE } else { MAX_DEGREE };
    if n > cap {
        return Err(Error::DegreeTooLarge(n));
    }
    Ok(())
}

/// `∏_k α_{φ(k)}^{t_k}` using precomputed powers.
fn monomial<S: Scalar>(powers: &[Vec<S>], phi: &Permutation, t: &[usize]) -> S {
    t.iter().enumerate().fold(S::one(), |acc, (k, &e)| acc.mul(&powers[phi.apply(k)][e]))
}

fn build<S: Scalar>(alpha: &[S], allow_large: bool) -> Result<VMatrix<S>> {
    let n = alpha.len();
    check_degree(n, allow_large)?;
    for i in 0..n {
        for j in i + 1..n {
            if alpha[i].sub(&alpha[j]).is_zero() {
                return Err(Error::DuplicateRoots);
            }
        }
    }
    let powers: Vec<Vec<S>> = alpha
        .iter()
        .map(|a| {
            let mut p = vec![S::one()];
            for _ in 1..n.max(1) {
                let next = p.last().expect("non-empty").mul(a);
                p.push(next);
            }
            p
        })
        .collect();
    let indices = index_order(n);
    let phis = sigma_enum(n);
    let entries = phis.iter().map(|phi| indices.iter().map(|t| monomial(&powers, phi, t)).collect()).collect();
    Ok(VMatrix { n, indices, phis, entries })
}

/// `v_matrix` for floating roots (`n ≤ 5`).
pub fn v_matrix(alpha: &[Complex64]) -> Result<VMatrix<Complex64>> {
    build(alpha, false)
}

/// `v_matrix` allowing `n = 6`.
pub fn v_matrix_large(alpha: &[Complex64]) -> Result<VMatrix<Complex64>> {
    build(alpha, true)
}

pub fn v_matrix_exact(alpha: &[GaussianRational]) -> Result<VMatrix<GaussianRational>> {
    build(alpha, false)
}

/// `delta`: `det V_n` at floating roots.
pub fn delta(alpha: &[Complex64]) -> Result<Complex64> {
    Ok(determinant(v_matrix(alpha)?.entries))
}

pub fn delta_large(alpha: &[Complex64]) -> Result<Complex64> {
    Ok(determinant(v_matrix_large(alpha)?.entries))
}

pub fn delta_exact(alpha: &[GaussianRational]) -> Result<GaussianRational> {
    Ok(determinant(v_matrix_exact(alpha)?.entries))
}

/// Translates and scales roots so their centroid is 0 and the geometric
/// mean of pairwise distances is 1.
pub fn normalize_roots(alpha: &[Complex64]) -> Vec<Complex64> {
    let n = alpha.len();
    if n < 2 {
        return alpha.to_vec();
    }
    let centroid: Complex64 = alpha.iter().sum::<Complex64>() / n as f64;
    let mut log_sum = 0.0;
    let mut pairs = 0;
    for i in 0..n {
        for j in i + 1..n {
            log_sum += (alpha[i] - alpha[j]).norm().ln();
            pairs += 1;
        }
    }
    let scale = (log_sum / pairs as f64).exp();
    alpha.iter().map(|a| (a - centroid) / scale).collect()
}

/// `σ` applied to a root vector: the new `k`-th root is `α_{σ(k)}`.
pub fn permute_roots<T: Clone>(alpha: &[T], sigma: &Permutation) -> Vec<T> {
    (0..alpha.len()).map(|k| alpha[sigma.apply(k)].clone()).collect()
}

/// Sign of the row permutation `φ_i ↦ σ∘φ_i` that `σ` induces on `V_n`.
pub fn regular_sign(sigma: &Permutation) -> i32 {
    let n = sigma.degree();
    let phis = sigma_enum(n);
    let images: Vec<usize> = phis
        .iter()
        .map(|p| {
            let q = sigma.compose(p);
            phis.iter().position(|r| *r == q).expect("φ enumerates S_n")
        })
        .collect();
    Permutation::from_images(images).expect("bijection").sign()
}

/// Outcome of comparing `Δ(σα)` against `sign(σ)·Δ(α)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignReport {
    pub sigma: String,
    pub expected_sign: i32,
    /// Sign of the row permutation induced by `σ`, i.e. the sign `Δ`
    /// actually picks up.
    pub row_sign: i32,
    /// `Δ(σα) / Δ(α)`.
    pub ratio: [f64; 2],
    /// `|Δ(σα) − sign(σ)Δ(α)| / |Δ(α)|`.
    pub sign_deviation: f64,
    /// `|Δ(σα)² − Δ(α)²| / |Δ(α)²|`.
    pub square_deviation: f64,
    pub sign_ok: bool,
    pub square_ok: bool,
}

/// `check_sign`: tests `σ(Δ) = sign(σ)Δ` and `σ(Δ²) = Δ²` at relative
/// tolerance `tol`; errors if either fails.
pub fn check_sign(alpha: &[Complex64], sigma: &Permutation, tol: f64) -> Result<SignReport> {
    let report = sign_report(alpha, sigma, tol)?;
    if !report.square_ok {
        return Err(Error::ToleranceExceeded { what: "delta squared invariance".into(), deviation: report.square_deviation, tolerance: tol });
    }
    if !report.sign_ok {
        return Err(Error::ToleranceExceeded {
            what: format!("sign rule for {}", report.sigma),
            deviation: report.sign_deviation,
            tolerance: tol,
        });
    }
    Ok(report)
}

/// The measurements behind [`check_sign`], without failing.
pub fn sign_report(alpha: &[Complex64], sigma: &Permutation, tol: f64) -> Result<SignReport> {
    if sigma.degree() != alpha.len() {
        return Err(Error::DegreeMismatch(alpha.len(), sigma.degree()));
    }
    let d = delta(alpha)?;
    let ds = delta(&permute_roots(alpha, sigma))?;
    let s = sigma.sign() as f64;
    let sign_deviation = (ds - d * s).norm() / d.norm();
    let square_deviation = (ds * ds - d * d).norm() / (d * d).norm();
    let ratio = ds / d;
    Ok(SignReport {
        sigma: sigma.to_cycle_string(),
        expected_sign: sigma.sign(),
        row_sign: regular_sign(sigma),
        ratio: [ratio.re, ratio.im],
        sign_deviation,
        square_deviation,
        sign_ok: sign_deviation <= tol,
        square_ok: square_deviation <= tol,
    })
}

/// Exact counterpart: returns `(Δ(σα) = sign(σ)Δ(α), Δ(σα)² = Δ(α)²)`.
pub fn check_sign_exact(alpha: &[GaussianRational], sigma: &Permutation) -> Result<(bool, bool)> {
    let d = delta_exact(alpha)?;
    let ds = delta_exact(&permute_roots(alpha, sigma))?;
    let signed = if sigma.sign() == 1 { d.clone() } else { Scalar::neg(&d) };
    Ok((ds == signed, Scalar::mul(&ds, &ds) == Scalar::mul(&d, &d)))
}

/// Solution of `V y = e₁` and the check of `Σ_i σ(x_i) y_i = δ_{e,σ}`.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisSystem {
    #[serde(serialize_with = "complex_list")]
    pub y: Vec<Complex64>,
    /// Largest `|Σ_i σ(x_i) y_i − δ_{e,σ}|` over all of `S_n`.
    pub max_residual: f64,
    pub equations: usize,
}

fn complex_list<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&[c.re, c.im])?;
    }
    seq.end()
}

/// `galois_system`: solves `V y = (1, 0, …, 0)ᵀ` and verifies the Galois
/// identities for every permutation of the roots.
pub fn galois_system(alpha: &[Complex64], tol: f64) -> Result<GaloisSystem> {
    let v = v_matrix(alpha)?;
    let size = v.entries.len();
    let mut rhs = vec![Complex64::new(0.0, 0.0); size];
    rhs[0] = Complex64::new(1.0, 0.0);
    let y = solve(v.entries.clone(), rhs).ok_or(Error::SingularSystem)?;
    let n = alpha.len();
    // Enumerate S_n independently of the φ_i.
    let gens: Vec<Permutation> = (1..n).map(|i| Permutation::from_cycles(n, &[&[i, i + 1]]).expect("transposition")).collect();
    let sym = generate(n, &gens, usize::MAX)?;
    let powers: Vec<Vec<Complex64>> = alpha.iter().map(|a| (0..n.max(1)).map(|k| a.powu(k as u32)).collect()).collect();
    let mut max_residual = 0.0f64;
    for s in sym.elements() {
        let total: Complex64 = v.indices.iter().zip(&y).map(|(t, yj)| monomial(&powers, s, t) * yj).sum();
        let target = if s.is_identity() { 1.0 } else { 0.0 };
        max_residual = max_residual.max((total - target).norm());
    }
    if !max_residual.is_finite() {
        return Err(Error::SingularSystem);
    }
    if max_residual > tol {
        return Err(Error::ToleranceExceeded { what: "Galois system residual".into(), deviation: max_residual, tolerance: tol });
    }
    Ok(GaloisSystem { y, max_residual, equations: sym.order() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn index_order_examples() {
        assert_eq!(index_order(2), vec![vec![0], vec![1]]);
        assert_eq!(index_order(3), vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
        let four = index_order(4);
        assert_eq!(four.len(), 24);
        assert_eq!(four.last().unwrap(), &vec![3, 2, 1]);
        assert_eq!(index_order(1), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn sigma_enum_examples() {
        assert_eq!(sigma_enum(2), vec![Permutation::identity(2), p(2, "(1 2)")]);
        let three: Vec<String> = sigma_enum(3).iter().map(|s| s.to_cycle_string()).collect();
        assert_eq!(three, vec!["()", "(1 2 3)", "(1 3 2)", "(2 3)", "(1 2)", "(1 3)"]);
    }

    #[test]
    fn delta_examples() {
        assert!((delta(&[c(1.0, 0.0), c(3.0, 0.0)]).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
        assert!((delta(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]).unwrap() - c(-8.0, 0.0)).norm() < 1e-9);
        assert_eq!(delta(&[c(5.0, 0.0)]).unwrap(), c(1.0, 0.0));
        let ints: Vec<GaussianRational> = [0, 1, 2].iter().map(|&k| GaussianRational::from_integers(k, 0)).collect();
        assert_eq!(delta_exact(&ints).unwrap(), GaussianRational::from_integers(-8, 0));
    }

    #[test]
    fn duplicates_and_cap() {
        assert_eq!(delta(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap_err(), Error::DuplicateRoots);
        let six: Vec<Complex64> = (0..6).map(|k| c(k as f64, 0.0)).collect();
        assert_eq!(delta(&six).unwrap_err(), Error::DegreeTooLarge(6));
    }

    #[test]
    fn galois_system_examples() {
        let g = galois_system(&[c(0.0, 0.0), c(1.0, 0.0)], 1e-9).unwrap();
        assert!((g.y[0] - c(1.0, 0.0)).norm() < 1e-12 && (g.y[1] - c(-1.0, 0.0)).norm() < 1e-12);
        let one = galois_system(&[c(0.3, 0.0)], 1e-9).unwrap();
        assert_eq!(one.y, vec![c(1.0, 0.0)]);
    }

    #[test]
    fn sign_rule_holds_for_small_n() {
        let alpha = [c(0.2, 0.1), c(-0.7, 0.4), c(0.5, -0.9)];
        for s in sigma_enum(3) {
            check_sign(&alpha, &s, 1e-9).unwrap();
        }
    }

    #[test]
    fn row_sign_of_transposition() {
        // left multiplication by a transposition has n!/2 two-cycles
        assert_eq!(regular_sign(&p(2, "(1 2)")), -1);
        assert_eq!(regular_sign(&p(3, "(1 2)")), -1);
        assert_eq!(regular_sign(&p(4, "(1 2)")), 1);
    }
}
