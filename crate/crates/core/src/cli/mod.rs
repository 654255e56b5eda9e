//! Command-line front end: `analyze`, `factor`, `correspond`, `realize` and
//! `rationalize`, all reading and writing JSON.

mod io;
mod report;

pub use io::{Caps, CoeffJson, PolynomialJson, ProblemSpec};
pub use report::{analyze, analyze_monodromy, render_correspondence, render_report, DeltaChecks, GroupSummary, Report, DELTA_TOL, VERSION};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::covering::{correspondence, factor, FactorOptions};
use crate::domain::Disc;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rationalize::{approximate_coeffs, HomotopyOptions, HomotopyReport};
use crate::realize::{realize_abelian_product, realize_cyclic, realize_rational, realize_search, realize_symmetric, RealizationSpec};
use crate::tracking::{monodromy, TrackerOptions};

#[derive(Debug, Parser)]
#[command(name = "semigalois", version, about = "Semi-topological Galois groups by numerical monodromy")]
pub struct Cli {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pub pretty: bool,
    /// JSON output (the default).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(flatten)]
    pub tracker: TrackerFlags,
    #[command(subcommand)]
    pub command: Command,
}

/// Overrides for tracker options given in the problem file.
#[derive(Debug, Default, Args)]
pub struct TrackerFlags {
    #[arg(long, global = true)]
    pub initial_step: Option<f64>,
    #[arg(long, global = true)]
    pub min_step: Option<f64>,
    #[arg(long, global = true)]
    pub residual_tol: Option<f64>,
    #[arg(long, global = true)]
    pub collision_threshold: Option<f64>,
    #[arg(long, global = true)]
    pub max_newton: Option<usize>,
    #[arg(long, global = true)]
    pub sampling: Option<usize>,
    #[arg(long, global = true)]
    pub disc_threshold: Option<f64>,
}

impl TrackerFlags {
    fn apply(&self, base: Option<&TrackerOptions>) -> Result<TrackerOptions> {
        let mut o = base.cloned().unwrap_or_default();
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { o.$f = v; } )* };
        }
        set!(initial_step, min_step, residual_tol, collision_threshold, max_newton, sampling, disc_threshold);
        o.validate()?;
        Ok(o)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monodromy group, orbits and covers of a Weierstrass polynomial.
    Analyze {
        /// Problem file, or `-` for standard input.
        spec: PathBuf,
        /// Add the subgroup / intermediate-cover table.
        #[arg(long)]
        correspond: bool,
        /// Add the determinant checks at the base fiber.
        #[arg(long)]
        delta: bool,
    },
    /// Splits a reducible polynomial into one factor per orbit.
    Factor {
        spec: PathBuf,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Subgroup lattice of the group with the matching covers.
    Correspond { spec: PathBuf },
    /// Builds a polynomial with a prescribed group.
    Realize(RealizeArgs),
    /// Replaces coefficients by nearby Gaussian rationals and checks the
    /// coefficient homotopy.
    Rationalize {
        spec: PathBuf,
        #[arg(long, default_value_t = 1024)]
        den_bound: u64,
    },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["cyclic", "abelian", "symmetric", "gens"])))]
pub struct RealizeArgs {
    /// Cyclic group of order n.
    #[arg(long)]
    pub cyclic: Option<usize>,
    /// Product of cyclic groups, e.g. `2,2`.
    #[arg(long, value_delimiter = ',')]
    pub abelian: Option<Vec<usize>>,
    /// Symmetric group on n letters.
    #[arg(long)]
    pub symmetric: Option<usize>,
    /// Generators in cycle notation separated by `;`, e.g. `(1 2);(1 2 3)`.
    #[arg(long)]
    pub gens: Option<String>,
    /// Degree for `--gens`; defaults to the largest point mentioned.
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Move the result to Gaussian-rational coefficients.
    #[arg(long)]
    pub rational: bool,
    #[arg(long, default_value_t = 1024)]
    pub den_bound: u64,
}

fn read_spec(path: &PathBuf) -> Result<ProblemSpec> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Input(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))?
    };
    ProblemSpec::parse(&text)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Error::Input(e.to_string()))
}

#[derive(Serialize)]
struct FactorJson {
    polynomial: PolynomialJson,
    pretty: String,
}

#[derive(Serialize)]
struct FactorOutput {
    version: &'static str,
    factors: Vec<FactorJson>,
}

#[derive(Serialize)]
struct CorrespondOutput {
    version: &'static str,
    table: crate::covering::CorrespondenceTable,
}

/// Parses `--gens`; points are 1-based.
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Vec<Permutation>> {
    let parts: Vec<&str> = text.split(';').map(str::trim).filter(|p| !p.is_empty()).collect();
    if parts.is_empty() {
        return Err(Error::Input("no generators given".into()));
    }
    let largest = text
        .split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(1);
    let n = degree.unwrap_or(largest);
    parts.iter().map(|p| Permutation::parse_cycles(n, p)).collect()
}

fn realization_spec(r: &RealizationSpec, opts: &TrackerOptions, homotopy: Option<&HomotopyReport>) -> Result<ProblemSpec> {
    let mut p = ProblemSpec::from_spec(&r.spec);
    if *opts != TrackerOptions::default() {
        p.tracker = Some(opts.clone());
    }
    p.seed = r.seed;
    p.certificate = Some(serde_json::to_value(r).map_err(|e| Error::Input(e.to_string()))?);
    if let Some(h) = homotopy {
        p.homotopy = Some(serde_json::to_value(h).map_err(|e| Error::Input(e.to_string()))?);
    }
    Ok(p)
}

fn render_realization(r: &RealizationSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "target: {}", r.target);
    let _ = writeln!(s, "f = {}", r.polynomial);
    let holes: Vec<String> = r.spec.domain.holes.iter().map(|h| format!("|x - ({})| < {}", fmt_c(h.center), h.radius)).collect();
    let _ = writeln!(s, "domain: |x - ({})| < {} minus {}", fmt_c(r.spec.domain.outer.center), r.spec.domain.outer.radius, holes.join(", "));
    let c = &r.certificate;
    let _ = writeln!(s, "achieved: {} (order {}), orbits {:?}", c.identification.label, c.order, c.orbit_sizes);
    let gens: Vec<String> = c.generators.iter().map(|g| g.to_cycle_string()).collect();
    let _ = writeln!(s, "generators: {}", gens.join(", "));
    let _ = writeln!(s, "match: {:?}, candidates tried: {}", r.quality, r.candidates_tried);
    if let Some(seed) = r.seed {
        let _ = writeln!(s, "seed: {}", seed);
    }
    s
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn run_realize(a: &RealizeArgs, opts: &TrackerOptions) -> Result<RealizationSpec> {
    let r = if let Some(n) = a.cyclic {
        realize_cyclic(n, Disc::real(0.0, 0.5), opts)?
    } else if let Some(orders) = &a.abelian {
        realize_abelian_product(orders, a.seed, opts)?
    } else if let Some(n) = a.symmetric {
        realize_symmetric(n, a.seed, opts)?
    } else if let Some(g) = &a.gens {
        realize_search(&parse_generators(g, a.degree)?, a.budget, a.seed, opts)?
    } else {
        return Err(Error::Input("no realization target given".into()));
    };
    if a.rational {
        realize_rational(&r, a.den_bound, opts)
    } else {
        Ok(r)
    }
}

/// Runs a parsed command line and returns the text for standard output.
pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Analyze { spec, correspond, delta } => {
            let p = read_spec(spec)?;
            let f = p.to_spec()?;
            let opts = cli.tracker.apply(p.tracker.as_ref())?;
            let mut r = analyze(&f, &opts, p.caps(), *correspond, *delta)?;
            r.seed = p.seed;
            if cli.pretty {
                Ok(render_report(&r))
            } else {
                to_json(&r)
            }
        }
        Command::Factor { spec, degree_bound } => {
            let p = read_spec(spec)?;
            let f = p.to_spec()?;
            let opts = cli.tracker.apply(p.tracker.as_ref())?;
            let m = monodromy(&f, &opts)?;
            let fopts = FactorOptions { degree_bound: *degree_bound, ..FactorOptions::default() };
            let fs = factor(&f, &m, &opts, &fopts)?;
            if cli.pretty {
                Ok(fs.iter().map(|g| format!("{}\n", g.pretty())).collect())
            } else {
                let factors = fs
                    .iter()
                    .map(|g| FactorJson { polynomial: ProblemSpec::from_spec(g).polynomial, pretty: g.pretty() })
                    .collect();
                to_json(&FactorOutput { version: VERSION, factors })
            }
        }
        Command::Correspond { spec } => {
            let p = read_spec(spec)?;
            let f = p.to_spec()?;
            let opts = cli.tracker.apply(p.tracker.as_ref())?;
            let m = monodromy(&f, &opts)?;
            let caps = p.caps();
            let table = correspondence(&m, caps.group, caps.lattice)?;
            if cli.pretty {
                Ok(render_correspondence(&table))
            } else {
                to_json(&CorrespondOutput { version: VERSION, table })
            }
        }
        Command::Realize(a) => {
            let opts = cli.tracker.apply(None)?;
            let r = run_realize(a, &opts)?;
            if cli.pretty {
                Ok(render_realization(&r))
            } else {
                to_json(&realization_spec(&r, &opts, r.homotopy.as_ref())?)
            }
        }
        Command::Rationalize { spec, den_bound } => {
            let p = read_spec(spec)?;
            let f = p.to_spec()?;
            let opts = cli.tracker.apply(p.tracker.as_ref())?;
            let (g, report) = approximate_coeffs(&f, *den_bound, &HomotopyOptions::default(), &opts)?;
            if cli.pretty {
                let mut s = String::new();
                let _ = writeln!(s, "f  = {}", f.pretty());
                let _ = writeln!(s, "f~ = {}", g.pretty());
                let dev = report.deviations.iter().cloned().fold(0.0, f64::max);
                let _ = writeln!(s, "max coefficient deviation: {:.3e}", dev);
                let _ = writeln!(s, "min |disc| along homotopy: {:.3e}", report.min_disc);
                let _ = writeln!(s, "group order: {} -> {}", report.order_start, report.order_end);
                let _ = writeln!(s, "homotopy check: {}", if report.pass { "pass" } else { "fail" });
                Ok(s)
            } else {
                let mut out = ProblemSpec::from_spec(&g);
                out.tracker = p.tracker.clone();
                out.caps = p.caps;
                out.seed = p.seed;
                out.homotopy = Some(serde_json::to_value(&report).map_err(|e| Error::Input(e.to_string()))?);
                to_json(&out)
            }
        }
    }
}

/// Parses `args`, runs the command and writes the outcome; returns the
/// process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out);
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_parsing() {
        let g = parse_generators("(1 2); (1 2 3)", None).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].degree(), 3);
        assert_eq!(parse_generators("(1 2)", Some(4)).unwrap()[0].degree(), 4);
        assert!(parse_generators("", None).is_err());
    }

    #[test]
    fn tracker_flags_override() {
        let flags = TrackerFlags { sampling: Some(64), ..TrackerFlags::default() };
        let o = flags.apply(None).unwrap();
        assert_eq!(o.sampling, 64);
        let bad = TrackerFlags { min_step: Some(1.0), ..TrackerFlags::default() };
        assert!(bad.apply(None).is_err());
    }

    #[test]
    fn clap_definition_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
