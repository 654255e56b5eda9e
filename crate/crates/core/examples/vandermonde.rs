//! The `n!`-square matrix `V_n`, its determinant and the Galois system.

use num_complex::Complex64;
use semigalois::vandermonde::{delta, galois_system, normalize_roots, sigma_enum, sign_report, v_matrix};

fn main() -> semigalois::Result<()> {
    let alpha = [0.0, 1.0, 2.0].map(|r| Complex64::new(r, 0.0));
    let v = v_matrix(&alpha)?;
    println!("V_3 is {}x{}; det at (0, 1, 2) = {}", v.entries.len(), v.entries.len(), delta(&alpha)?);

    for n in 2..=4 {
        let roots: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(1.0 + 0.3 * k as f64, 0.7 * k as f64)).collect();
        let roots = normalize_roots(&roots);
        let reports = sigma_enum(n).iter().map(|s| sign_report(&roots, s, 1e-9)).collect::<Result<Vec<_>, _>>()?;
        let sign_ok = reports.iter().filter(|r| r.sign_ok).count();
        let square_ok = reports.iter().filter(|r| r.square_ok).count();
        let g = galois_system(&roots, 1e-9)?;
        println!(
            "n = {}: sign rule {}/{}, square invariant {}/{}, Galois residual {:.2e}",
            n,
            sign_ok,
            reports.len(),
            square_ok,
            reports.len(),
            g.max_residual
        );
    }
    Ok(())
}
