//! Replacing `π` by a nearby rational without changing the covering.

use num_complex::Complex64;
use semigalois::domain::Domain;
use semigalois::numerics::PolyX;
use semigalois::rationalize::{approximate_coeffs, emit_function_field_poly, HomotopyOptions};
use semigalois::tracking::{monodromy, TrackerOptions, WeierstrassSpec};

fn main() -> semigalois::Result<()> {
    let opts = TrackerOptions::default();
    let pi = Complex64::new(std::f64::consts::PI, 0.0);
    let f = WeierstrassSpec::new(
        vec![PolyX::float(vec![Complex64::new(0.0, 0.0), -pi])?, PolyX::float(vec![])?],
        Domain::annulus(0.5, 2.0)?,
    )?;
    let (g, report) = approximate_coeffs(&f, 200, &HomotopyOptions::default(), &opts)?;
    println!("{}  ->  {}", f.pretty(), g.pretty());
    println!("min |disc| along the homotopy {:.3}, groups {} -> {}", report.min_disc, report.order_start, report.order_end);
    let m = monodromy(&g, &opts)?;
    println!("{}", emit_function_field_poly(&g, &m)?);
    Ok(())
}
