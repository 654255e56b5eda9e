//! Analysis reports and their plain-text rendering.

use serde::Serialize;
use std::fmt::Write as _;

use crate::covering::{correspondence, degree_tower, solution_cover, splitting_cover, CorrespondenceTable, DegreeTower, FiniteCover};
use crate::error::Result;
use crate::perm::{identify, Identification};
use crate::tracking::{monodromy, MonodromyData, ResidualReport, TrackerOptions, WeierstrassSpec};
use crate::vandermonde::{delta, galois_system, normalize_roots, sigma_enum, sign_report, MAX_DEGREE};

use super::io::Caps;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Relative tolerance for the determinant checks at the base fiber.
pub const DELTA_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub generators: Vec<String>,
    pub identification: Identification,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaChecks {
    pub degree: usize,
    /// `Δ` at the base fiber after normalizing the roots.
    pub delta: [f64; 2],
    pub permutations_checked: usize,
    pub sign_rule_holds: usize,
    pub square_invariant_holds: usize,
    /// Permutations for which `Δ(σα) ≠ sign(σ)Δ(α)`.
    pub sign_rule_failures: Vec<String>,
    pub galois_residual: Option<f64>,
    pub galois_error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub seed: Option<u64>,
    pub polynomial: String,
    pub degree: usize,
    pub group: GroupSummary,
    pub transitive: bool,
    /// 1-based root indices.
    pub orbits: Vec<Vec<usize>>,
    pub irreducible: bool,
    pub factor_degrees: Vec<usize>,
    pub solution_cover: FiniteCover,
    pub splitting_degree: usize,
    pub tower: DegreeTower,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correspondence: Option<CorrespondenceTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaChecks>,
    pub residuals: ResidualReport,
}

fn delta_checks(m: &MonodromyData) -> Result<Option<DeltaChecks>> {
    let n = m.degree();
    if n > MAX_DEGREE {
        return Ok(None);
    }
    let alpha = normalize_roots(&m.base.roots);
    let d = delta(&alpha)?;
    let mut checks = DeltaChecks {
        degree: n,
        delta: [d.re, d.im],
        permutations_checked: 0,
        sign_rule_holds: 0,
        square_invariant_holds: 0,
        sign_rule_failures: Vec::new(),
        galois_residual: None,
        galois_error: None,
    };
    for s in sigma_enum(n) {
        let r = sign_report(&alpha, &s, DELTA_TOL)?;
        checks.permutations_checked += 1;
        checks.sign_rule_holds += r.sign_ok as usize;
        checks.square_invariant_holds += r.square_ok as usize;
        if !r.sign_ok {
            checks.sign_rule_failures.push(r.sigma);
        }
    }
    checks.sign_rule_failures.sort();
    match galois_system(&alpha, DELTA_TOL) {
        Ok(g) => checks.galois_residual = Some(g.max_residual),
        Err(e) => checks.galois_error = Some(e.to_string()),
    }
    Ok(Some(checks))
}

/// Monodromy, group, orbits and covers for `f`, optionally with the
/// correspondence table and determinant checks.
pub fn analyze(f: &WeierstrassSpec, opts: &TrackerOptions, caps: Caps, with_correspondence: bool, with_delta: bool) -> Result<Report> {
    let m = monodromy(f, opts)?;
    analyze_monodromy(f, &m, caps, with_correspondence, with_delta)
}

pub fn analyze_monodromy(f: &WeierstrassSpec, m: &MonodromyData, caps: Caps, with_correspondence: bool, with_delta: bool) -> Result<Report> {
    let split = splitting_cover(m, caps.group)?;
    let sol = solution_cover(m);
    let orbits: Vec<Vec<usize>> = split.group.orbits().iter().map(|o| o.iter().map(|i| i + 1).collect()).collect();
    let tower = degree_tower(m, caps.group)?;
    let correspondence = if with_correspondence { Some(correspondence(m, caps.group, caps.lattice)?) } else { None };
    let delta = if with_delta { delta_checks(m)? } else { None };
    Ok(Report {
        version: VERSION,
        seed: None,
        polynomial: f.pretty(),
        degree: f.degree(),
        group: GroupSummary {
            order: split.group.order(),
            generators: m.gens.iter().map(|g| g.to_cycle_string()).collect(),
            identification: identify(&split.group),
        },
        transitive: orbits.len() == 1,
        irreducible: orbits.len() == 1,
        factor_degrees: orbits.iter().map(|o| o.len()).collect(),
        orbits,
        solution_cover: sol,
        splitting_degree: split.cover.degree,
        tower,
        correspondence,
        delta,
        residuals: m.report.clone(),
    })
}

pub fn render_report(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f = {}", r.polynomial);
    let _ = writeln!(s, "group: {} (order {})", r.group.identification.label, r.group.order);
    let _ = writeln!(s, "generators: {}", r.group.generators.join(", "));
    let orbits: Vec<String> = r.orbits.iter().map(|o| format!("{{{}}}", o.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "))).collect();
    let _ = writeln!(s, "orbits: {}", orbits.join(" "));
    let _ = writeln!(s, "irreducible: {}", if r.irreducible { "yes" } else { "no" });
    let _ = writeln!(s, "factor degrees: {:?}", r.factor_degrees);
    let _ = writeln!(
        s,
        "solution cover: degree {}, components {:?}",
        r.solution_cover.degree,
        r.solution_cover.component_sizes()
    );
    let _ = writeln!(s, "splitting cover degree: {}", r.splitting_degree);
    let _ = writeln!(s, "degree tower consistent: {}", r.tower.consistent);
    if let Some(t) = &r.correspondence {
        s.push_str(&render_correspondence(t));
    }
    if let Some(d) = &r.delta {
        let _ = writeln!(
            s,
            "delta: {:.6e}{:+.6e}i; sign rule {}/{}; square invariant {}/{}",
            d.delta[0], d.delta[1], d.sign_rule_holds, d.permutations_checked, d.square_invariant_holds, d.permutations_checked
        );
        match (&d.galois_residual, &d.galois_error) {
            (Some(res), _) => {
                let _ = writeln!(s, "Galois system residual: {:.3e}", res);
            }
            (None, Some(e)) => {
                let _ = writeln!(s, "Galois system: {}", e);
            }
            _ => {}
        }
    }
    let _ = writeln!(
        s,
        "residuals: margin {:.3e}, base residual {:.3e}, steps {}",
        r.residuals.weierstrass_margin, r.residuals.base_residual, r.residuals.total.steps
    );
    if let Some(seed) = r.seed {
        let _ = writeln!(s, "seed: {}", seed);
    }
    s
}

pub fn render_correspondence(t: &CorrespondenceTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "correspondence (group order {}):", t.group_order);
    for row in &t.rows {
        let _ = writeln!(
            s,
            "  H{:<3} order {:<4} {:<14} cover degree {:<4} components {:?}",
            row.subgroup,
            row.order,
            row.label.to_string(),
            row.degree,
            row.cover.component_sizes()
        );
    }
    let _ = writeln!(s, "  anti-monotone: {}, index identities: {}", t.anti_monotone, t.index_identities);
    s
}
