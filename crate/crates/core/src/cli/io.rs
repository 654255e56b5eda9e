//! JSON problem files.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::numerics::{GaussianRational, PolyX};
use crate::perm::{DEFAULT_GROUP_CAP, DEFAULT_LATTICE_CAP};
use crate::tracking::{TrackerOptions, WeierstrassSpec};

/// One coefficient of some `a_i(x)`.
///
/// Strings (`"3"`, `"-1/2"`, `"1/3+2 i"`, `"0.25"`) and JSON integers are
/// exact; `[re, im]` pairs and non-integral JSON numbers are floating.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Text(String),
    Int(i64),
    Pair([f64; 2]),
    Real(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub degree: usize,
    /// `coefficients[i]` lists `a_i(x)` lowest `x`-degree first.
    pub coefficients: Vec<Vec<CoeffJson>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub group: usize,
    pub lattice: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { group: DEFAULT_GROUP_CAP, lattice: DEFAULT_LATTICE_CAP }
    }
}

/// Input file for every subcommand. `realize` and `rationalize` attach the
/// evidence for the emitted polynomial; `analyze` ignores it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub domain: Domain,
    pub polynomial: PolynomialJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tracker: Option<TrackerOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homotopy: Option<serde_json::Value>,
}

fn parse_coeff(c: &CoeffJson) -> Result<Coeff> {
    match c {
        CoeffJson::Text(s) => GaussianRational::from_str(s).map(Coeff::Exact),
        CoeffJson::Int(v) => Ok(Coeff::Exact(GaussianRational::from_integers(*v, 0))),
        CoeffJson::Pair([re, im]) => Ok(Coeff::Float(Complex64::new(*re, *im))),
        CoeffJson::Real(v) => Ok(Coeff::Float(Complex64::new(*v, 0.0))),
    }
}

enum Coeff {
    Exact(GaussianRational),
    Float(Complex64),
}

fn poly_from_json(cs: &[CoeffJson]) -> Result<PolyX> {
    let parsed = cs.iter().map(parse_coeff).collect::<Result<Vec<_>>>()?;
    if parsed.iter().all(|c| matches!(c, Coeff::Exact(_))) {
        Ok(PolyX::exact(parsed.into_iter().map(|c| match c {
            Coeff::Exact(q) => q,
            Coeff::Float(_) => unreachable!(),
        }).collect()))
    } else {
        PolyX::float(parsed.into_iter().map(|c| match c {
            Coeff::Exact(q) => q.to_complex(),
            Coeff::Float(z) => z,
        }).collect())
    }
}

fn poly_to_json(p: &PolyX) -> Vec<CoeffJson> {
    match p {
        PolyX::Exact(c) => c.iter().map(|q| CoeffJson::Text(q.to_string())).collect(),
        PolyX::Float(c) => c.iter().map(|z| CoeffJson::Pair([z.re, z.im])).collect(),
    }
}

impl ProblemSpec {
    pub fn from_spec(f: &WeierstrassSpec) -> ProblemSpec {
        ProblemSpec {
            domain: f.domain.clone(),
            polynomial: PolynomialJson { degree: f.degree(), coefficients: f.coeffs.iter().map(poly_to_json).collect() },
            tracker: None,
            caps: None,
            seed: None,
            certificate: None,
            homotopy: None,
        }
    }

    pub fn to_spec(&self) -> Result<WeierstrassSpec> {
        let p = &self.polynomial;
        if p.degree != p.coefficients.len() {
            return Err(Error::Input(format!(
                "degree is {} but {} coefficient polynomials were given",
                p.degree,
                p.coefficients.len()
            )));
        }
        let coeffs = p.coefficients.iter().map(|c| poly_from_json(c)).collect::<Result<Vec<_>>>()?;
        WeierstrassSpec::new(coeffs, self.domain.clone())
    }

    pub fn parse(text: &str) -> Result<ProblemSpec> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed problem spec: {}", e)))
    }

    pub fn caps(&self) -> Caps {
        self.caps.unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBIC: &str = r#"{
        "domain": {"outer": {"center": [0, 0], "radius": 2}, "holes": [{"center": [0, 0], "radius": 0.5}]},
        "polynomial": {"degree": 3, "coefficients": [["0", -1], [], []]}
    }"#;

    #[test]
    fn parses_exact_cubic() {
        let f = ProblemSpec::parse(CUBIC).unwrap().to_spec().unwrap();
        assert!(f.is_exact());
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeffs[0], PolyX::from_ints(&[0, -1]));
    }

    #[test]
    fn round_trips() {
        let f = ProblemSpec::parse(CUBIC).unwrap().to_spec().unwrap();
        let text = serde_json::to_string(&ProblemSpec::from_spec(&f)).unwrap();
        assert_eq!(ProblemSpec::parse(&text).unwrap().to_spec().unwrap(), f);
        let g = WeierstrassSpec::new(
            vec![PolyX::exact(vec![GaussianRational::from_fractions(1, 3, -2, 7)]), PolyX::from_ints(&[])],
            f.domain.clone(),
        )
        .unwrap();
        let text = serde_json::to_string(&ProblemSpec::from_spec(&g)).unwrap();
        assert_eq!(ProblemSpec::parse(&text).unwrap().to_spec().unwrap(), g);
        let h = g.to_float();
        let text = serde_json::to_string(&ProblemSpec::from_spec(&h)).unwrap();
        assert_eq!(ProblemSpec::parse(&text).unwrap().to_spec().unwrap(), h);
    }

    #[test]
    fn mixed_kinds_become_float() {
        let text = CUBIC.replace(r#"["0", -1]"#, r#"[0.5, -1]"#);
        assert!(!ProblemSpec::parse(&text).unwrap().to_spec().unwrap().is_exact());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(ProblemSpec::parse("{").unwrap_err(), Error::Input(_)));
        let text = CUBIC.replace(r#""degree": 3"#, r#""degree": 2"#);
        assert!(matches!(ProblemSpec::parse(&text).unwrap().to_spec().unwrap_err(), Error::Input(_)));
        let text = CUBIC.replace(r#""0""#, r#""x""#);
        assert!(ProblemSpec::parse(&text).unwrap().to_spec().is_err());
    }
}
