use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::numerics::{Kind, PolyX};

/// Numerical knobs for root finding and continuation.
///
/// Step sizes are fractions of the total path length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrackerOptions {
    pub initial_step: f64,
    pub min_step: f64,
    pub residual_tol: f64,
    pub collision_threshold: f64,
    pub max_newton: usize,
    /// Points per boundary circle when sampling the domain; the interior
    /// grid uses a quarter of this per axis.
    pub sampling: usize,
    /// Smallest admissible `|disc|` on the sampled domain.
    pub disc_threshold: f64,
}

impl Default for TrackerOptions {
    fn default() -> Self {
        TrackerOptions {
            initial_step: 1.0 / 64.0,
            min_step: 1e-9,
            residual_tol: 1e-10,
            collision_threshold: 1e-8,
            max_newton: 8,
            sampling: 128,
            disc_threshold: 1e-9,
        }
    }
}

impl TrackerOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.initial_step, self.min_step, self.residual_tol, self.collision_threshold, self.disc_threshold];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) || self.max_newton == 0 || self.sampling == 0 {
            return Err(Error::Input("tracker options must be positive".into()));
        }
        if self.min_step > self.initial_step {
            return Err(Error::Input("min_step exceeds initial_step".into()));
        }
        Ok(())
    }

    pub(crate) fn grid(&self) -> usize {
        (self.sampling / 4).max(4)
    }
}

/// A monic polynomial `z^n + a_{n−1}(x) z^{n−1} + … + a_0(x)` over a domain.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassSpec {
    /// `a_0 .. a_{n−1}`.
    pub coeffs: Vec<PolyX>,
    pub domain: Domain,
}

impl WeierstrassSpec {
    /// Builds a spec; mixed kinds are promoted to floating coefficients.
    pub fn new(coeffs: Vec<PolyX>, domain: Domain) -> Result<WeierstrassSpec> {
        if coeffs.is_empty() {
            return Err(Error::Input("degree must be at least 1".into()));
        }
        let mixed = coeffs.iter().any(|p| p.kind() == Kind::Float) && coeffs.iter().any(|p| p.kind() == Kind::Exact);
        let coeffs = if mixed { coeffs.iter().map(|p| p.to_float()).collect() } else { coeffs };
        Ok(WeierstrassSpec { coeffs, domain })
    }

    /// Integer-coefficient shorthand; `rows[i]` lists `a_i` lowest degree first.
    pub fn from_ints(rows: &[&[i64]], domain: Domain) -> WeierstrassSpec {
        WeierstrassSpec::new(rows.iter().map(|r| PolyX::from_ints(r)).collect(), domain).expect("non-empty")
    }

    /// Product of monic factors given as coefficient lists over the same domain.
    pub fn product(factors: &[WeierstrassSpec]) -> Result<WeierstrassSpec> {
        let domain = factors.first().ok_or_else(|| Error::Input("empty product".into()))?.domain.clone();
        let mut acc = full_coeffs(&factors[0]);
        for f in &factors[1..] {
            let g = full_coeffs(f);
            let mut out = vec![PolyX::zero(acc[0].kind()); acc.len() + g.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in g.iter().enumerate() {
                    out[i + j] = out[i + j].add(&a.mul(b)?)?;
                }
            }
            acc = out;
        }
        acc.pop();
        WeierstrassSpec::new(acc, domain)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn kind(&self) -> Kind {
        self.coeffs[0].kind()
    }

    pub fn is_exact(&self) -> bool {
        self.kind() == Kind::Exact
    }

    pub fn with_domain(&self, domain: Domain) -> WeierstrassSpec {
        WeierstrassSpec { coeffs: self.coeffs.clone(), domain }
    }

    /// Largest degree in `x` among the coefficients.
    pub fn x_degree(&self) -> usize {
        self.coeffs.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn to_float(&self) -> WeierstrassSpec {
        WeierstrassSpec { coeffs: self.coeffs.iter().map(|p| p.to_float()).collect(), domain: self.domain.clone() }
    }

    /// Human-readable `z^n + (…)z^{n−1} + …`.
    pub fn pretty(&self) -> String {
        let n = self.degree();
        let mut terms = vec![zpow(n)];
        for i in (0..n).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let z = zpow(i);
            terms.push(match (i, body.as_str()) {
                (0, _) => format!("({})", body),
                (_, "1") => z,
                _ => format!("({})*{}", body, z),
            });
        }
        terms.join(" + ")
    }
}

fn zpow(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "z".into(),
        k => format!("z^{}", k),
    }
}

/// Coefficients including the leading 1, lowest first.
fn full_coeffs(f: &WeierstrassSpec) -> Vec<PolyX> {
    let mut c = f.coeffs.clone();
    c.push(match f.kind() {
        Kind::Exact => PolyX::from_ints(&[1]),
        Kind::Float => PolyX::Float(vec![Complex64::new(1.0, 0.0)]),
    });
    c
}

/// Floating evaluation tables for `f`, `∂f/∂z` and `∂f/∂x`.
#[derive(Clone, Debug)]
pub struct Evaluator {
    coeffs: Vec<Vec<Complex64>>,
    dcoeffs: Vec<Vec<Complex64>>,
}

impl Evaluator {
    pub fn new(f: &WeierstrassSpec) -> Evaluator {
        Evaluator {
            coeffs: f.coeffs.iter().map(|p| p.to_float_coeffs()).collect(),
            dcoeffs: f.coeffs.iter().map(|p| p.derivative().to_float_coeffs()).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Monic coefficients of `f_x` in `z`, lowest first, leading 1 omitted.
    pub fn fiber_coeffs(&self, x: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| crate::numerics::poly_eval_slice(c, x)).collect()
    }

    /// `∂a_i/∂x` at `x`.
    pub fn fiber_dx(&self, x: Complex64) -> Vec<Complex64> {
        self.dcoeffs.iter().map(|c| crate::numerics::poly_eval_slice(c, x)).collect()
    }
}
