//! Pulling `z² − x` back along `y ↦ y^k`.

use semigalois::covering::pullback_power;
use semigalois::domain::Domain;
use semigalois::tracking::{TrackerOptions, WeierstrassSpec};

fn main() -> semigalois::Result<()> {
    let f = WeierstrassSpec::from_ints(&[&[0, -1], &[]], Domain::annulus(0.5, 2.0)?);
    for k in 1..=4 {
        let r = pullback_power(&f, k, &TrackerOptions::default())?;
        println!(
            "k = {}: {} -> {}, orders {} -> {}, embeds: {}",
            k, r.original_generator, r.pulled_generator, r.original_order, r.pulled_order, r.embeds
        );
    }
    Ok(())
}
