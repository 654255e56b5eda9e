//! Polynomials with prescribed groups, each re-verified from its spec.

use semigalois::domain::Disc;
use semigalois::perm::Permutation;
use semigalois::realize::{realize_abelian_product, realize_cyclic, realize_search, realize_symmetric, RealizationSpec};
use semigalois::tracking::TrackerOptions;

fn show(r: &RealizationSpec, opts: &TrackerOptions) -> semigalois::Result<()> {
    r.reverify(opts)?;
    println!(
        "{:<8} {} (order {}) via {}",
        r.target, r.certificate.identification.label, r.certificate.order, r.polynomial
    );
    Ok(())
}

fn main() -> semigalois::Result<()> {
    let opts = TrackerOptions::default();
    show(&realize_cyclic(5, Disc::real(0.0, 0.5), &opts)?, &opts)?;
    show(&realize_abelian_product(&[2, 2], 0, &opts)?, &opts)?;
    show(&realize_symmetric(3, 0, &opts)?, &opts)?;
    show(&realize_symmetric(4, 0, &opts)?, &opts)?;
    let gens = [Permutation::parse_cycles(3, "(1 2)")?, Permutation::parse_cycles(3, "(1 2 3)")?];
    let r = realize_search(&gens, 200, 7, &opts)?;
    println!("search hit after {} candidates", r.candidates_tried);
    show(&r, &opts)
}
