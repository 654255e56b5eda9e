//! Monodromy of `z^n − x` on the annulus `0.5 < |x| < 2`.

use semigalois::domain::Domain;
use semigalois::perm::{generate, identify, DEFAULT_GROUP_CAP};
use semigalois::tracking::{monodromy, TrackerOptions, WeierstrassSpec};

fn main() -> semigalois::Result<()> {
    let opts = TrackerOptions::default();
    for n in 2..=6 {
        let mut rows: Vec<Vec<i64>> = vec![vec![]; n];
        rows[0] = vec![0, -1];
        let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let f = WeierstrassSpec::from_ints(&rows, Domain::annulus(0.5, 2.0)?);
        let m = monodromy(&f, &opts)?;
        let g = generate(n, &m.gens, DEFAULT_GROUP_CAP)?;
        println!(
            "{:<12} generator {:<16} group {} (order {}), {} tracking steps",
            f.pretty(),
            m.gens[0].to_cycle_string(),
            identify(&g).label,
            g.order(),
            m.report.total.steps
        );
    }
    Ok(())
}
