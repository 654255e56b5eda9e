//! Subgroups of the group of `z⁴ − x` and the intermediate covers.

use semigalois::covering::{correspondence, degree_tower};
use semigalois::domain::Domain;
use semigalois::perm::{DEFAULT_GROUP_CAP, DEFAULT_LATTICE_CAP};
use semigalois::tracking::{monodromy, TrackerOptions, WeierstrassSpec};

fn main() -> semigalois::Result<()> {
    let f = WeierstrassSpec::from_ints(&[&[0, -1], &[], &[], &[]], Domain::annulus(0.5, 2.0)?);
    let m = monodromy(&f, &TrackerOptions::default())?;
    let table = correspondence(&m, DEFAULT_GROUP_CAP, DEFAULT_LATTICE_CAP)?;
    for row in &table.rows {
        println!("subgroup of order {} ({}): cover of degree {}", row.order, row.label, row.degree);
    }
    println!("anti-monotone: {}, index identities: {}", table.anti_monotone, table.index_identities);
    let tower = degree_tower(&m, DEFAULT_GROUP_CAP)?;
    println!("tower: {:?}", tower);
    Ok(())
}
