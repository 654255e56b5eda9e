//! Splitting `(z² − x)(z² − 2x)` along its monodromy orbits.

use semigalois::covering::{factor, solution_cover, FactorOptions};
use semigalois::domain::Domain;
use semigalois::tracking::{monodromy, TrackerOptions, WeierstrassSpec};

fn main() -> semigalois::Result<()> {
    let opts = TrackerOptions::default();
    let f = WeierstrassSpec::from_ints(&[&[0, 0, 2], &[], &[0, -3], &[]], Domain::annulus(0.5, 2.0)?);
    let m = monodromy(&f, &opts)?;
    let cover = solution_cover(&m);
    println!("f = {}", f.pretty());
    println!("generator {}, solution cover components {:?}", m.gens[0].to_cycle_string(), cover.component_sizes());
    for g in factor(&f, &m, &opts, &FactorOptions::default())? {
        println!("  factor {}", g.pretty());
    }
    Ok(())
}
